//! Ideal export as JSON, Macaulay2 and Singular input. All output is
//! deterministic: generators in ideal order, terms in graded-lex order.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::poly::Var;
use crate::variety::CramerIdeal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    M2,
    Singular,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "m2" => Ok(Format::M2),
            "singular" => Ok(Format::Singular),
            other => Err(format!("unknown format {other:?}; expected json, m2 or singular")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::M2 => "m2",
            Format::Singular => "singular",
        })
    }
}

#[derive(Serialize)]
struct TermOut {
    coeff: String,
    exponents: Vec<u32>,
}

#[derive(Serialize)]
struct GeneratorOut {
    label: String,
    terms: Vec<TermOut>,
}

#[derive(Serialize)]
struct IdealOut {
    r: usize,
    s: usize,
    omega_mode: String,
    variables: Vec<String>,
    generators: Vec<GeneratorOut>,
}

pub fn to_json(ideal: &CramerIdeal) -> String {
    let out = IdealOut {
        r: ideal.r(),
        s: ideal.s(),
        omega_mode: ideal.mode().to_string(),
        variables: ideal.table().vars().iter().map(ToString::to_string).collect(),
        generators: ideal
            .generators()
            .iter()
            .map(|g| GeneratorOut {
                label: g.label.to_string(),
                terms: g
                    .poly
                    .sorted_terms()
                    .into_iter()
                    .map(|(e, c)| TermOut { coeff: c.to_string(), exponents: e.clone() })
                    .collect(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&out).expect("ideal serializes");
    s.push('\n');
    s
}

fn m2_name(v: &Var) -> String {
    match v {
        Var::M(i, j) => format!("m_({i},{j})"),
        Var::N(i, j) => format!("n_({i},{j})"),
        Var::Omega => "w".into(),
        other => other.to_string(),
    }
}

fn singular_name(v: &Var) -> String {
    match v {
        Var::M(i, j) => format!("m({i})({j})"),
        Var::N(i, j) => format!("n({i})({j})"),
        Var::Omega => "w".into(),
        other => other.to_string(),
    }
}

fn header(ideal: &CramerIdeal, comment: &str) -> String {
    format!(
        "{comment} Cr({r},{t},{s}), {mode}, {n} generators\n",
        r = ideal.r(),
        t = ideal.t(),
        s = ideal.s(),
        mode = ideal.mode(),
        n = ideal.generators().len()
    )
}

/// `R = QQ[...]; I = ideal(...);` for Macaulay2.
pub fn to_m2(ideal: &CramerIdeal) -> String {
    let vars: Vec<String> = ideal.table().vars().iter().map(m2_name).collect();
    let gens: Vec<String> = ideal.polys().map(|p| format!("  {}", p.format_with(m2_name))).collect();
    format!("{}R = QQ[{}];\nI = ideal(\n{}\n);\n", header(ideal, "--"), vars.join(", "), gens.join(",\n"))
}

/// `ring R = 0, (...), dp; ideal I = ...;` for Singular.
pub fn to_singular(ideal: &CramerIdeal) -> String {
    let vars: Vec<String> = ideal.table().vars().iter().map(singular_name).collect();
    let gens: Vec<String> = ideal.polys().map(|p| format!("  {}", p.format_with(singular_name))).collect();
    format!("{}ring R = 0, ({}), dp;\nideal I =\n{};\n", header(ideal, "//"), vars.join(", "), gens.join(",\n"))
}

pub fn export(ideal: &CramerIdeal, format: Format) -> String {
    match format {
        Format::Json => to_json(ideal),
        Format::M2 => to_m2(ideal),
        Format::Singular => to_singular(ideal),
    }
}
