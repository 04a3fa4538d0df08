//! Torus weights, written additively as exponent vectors.
//!
//! A character of the maximal torus of `GL(r) × GL(t) × GL(s)` is stored as
//! integers over `(a_1..a_r, b_1..b_t, c_1..c_s)`; `a_1 − b_1` stands for the
//! character `a_1 / b_1`. The restricted torus has `B = diag(A, C)`, so its
//! characters live on `(a_1..a_r, c_1..c_s)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use serde::Serialize;

use crate::charts::chart_solve;
use crate::error::{Error, Result};
use crate::exact::{pow, Rational};
use crate::poly::Var;
use crate::variety::{check_params, subsets};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Character {
    #[serde(skip)]
    r: usize,
    #[serde(skip)]
    s: usize,
    exponents: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RestrictedCharacter {
    #[serde(skip)]
    r: usize,
    #[serde(skip)]
    s: usize,
    exponents: Vec<i64>,
}

impl Character {
    pub fn trivial(r: usize, s: usize) -> Self {
        Character { r, s, exponents: vec![0; 2 * (r + s)] }
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    fn a(&mut self, i: usize) -> &mut i64 {
        &mut self.exponents[i - 1]
    }

    fn b(&mut self, j: usize) -> &mut i64 {
        &mut self.exponents[self.r + j - 1]
    }

    fn c(&mut self, k: usize) -> &mut i64 {
        let off = 2 * self.r + self.s;
        &mut self.exponents[off + k - 1]
    }

    pub fn add(&self, other: &Character) -> Character {
        let exponents = self.exponents.iter().zip(&other.exponents).map(|(x, y)| x + y).collect();
        Character { r: self.r, s: self.s, exponents }
    }

    pub fn scale(&self, k: i64) -> Character {
        Character { r: self.r, s: self.s, exponents: self.exponents.iter().map(|x| x * k).collect() }
    }

    /// Image under `b_i ↦ a_i` (`i ≤ r`), `b_{r+j} ↦ c_j`.
    pub fn restrict(&self) -> RestrictedCharacter {
        let (r, s) = (self.r, self.s);
        let mut out = RestrictedCharacter::trivial(r, s);
        for i in 0..r {
            out.exponents[i] = self.exponents[i] + self.exponents[r + i];
        }
        for k in 0..s {
            out.exponents[r + k] = self.exponents[2 * r + k] + self.exponents[2 * r + s + k];
        }
        out
    }

    /// Value of the character at the diagonal torus element with the given entries.
    pub fn eval(&self, a: &[Rational], b: &[Rational], c: &[Rational]) -> Result<Rational> {
        let diag: Vec<&Rational> = a.iter().chain(b).chain(c).collect();
        if diag.len() != self.exponents.len() {
            return Err(Error::Dimension(format!(
                "{} torus entries for a character of length {}",
                diag.len(),
                self.exponents.len()
            )));
        }
        Ok(diag.iter().zip(&self.exponents).fold(Rational::one(), |acc, (x, &e)| acc * pow(x, e)))
    }
}

impl RestrictedCharacter {
    pub fn trivial(r: usize, s: usize) -> Self {
        RestrictedCharacter { r, s, exponents: vec![0; r + s] }
    }

    pub fn from_parts(a: &[i64], c: &[i64]) -> Self {
        RestrictedCharacter { r: a.len(), s: c.len(), exponents: a.iter().chain(c).copied().collect() }
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn add(&self, other: &RestrictedCharacter) -> RestrictedCharacter {
        let exponents = self.exponents.iter().zip(&other.exponents).map(|(x, y)| x + y).collect();
        RestrictedCharacter { r: self.r, s: self.s, exponents }
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(String, i64)]) -> fmt::Result {
    let mut first = true;
    for (name, e) in terms.iter().filter(|(_, e)| *e != 0) {
        let sign = if *e < 0 { "-" } else { "+" };
        if first {
            if *e < 0 {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        if e.abs() != 1 {
            write!(f, "{}*", e.abs())?;
        }
        write!(f, "{name}")?;
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.r + self.s;
        let names = (1..=self.r)
            .map(|i| format!("a{i}"))
            .chain((1..=t).map(|j| format!("b{j}")))
            .chain((1..=self.s).map(|k| format!("c{k}")));
        let terms: Vec<_> = names.zip(self.exponents.iter().copied()).collect();
        write_terms(f, &terms)
    }
}

impl fmt::Display for RestrictedCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = (1..=self.r).map(|i| format!("a{i}")).chain((1..=self.s).map(|k| format!("c{k}")));
        let terms: Vec<_> = names.zip(self.exponents.iter().copied()).collect();
        write_terms(f, &terms)
    }
}

/// Weight of a coordinate function: `m_ij ↦ a_i − b_j`, `n_ij ↦ b_i − c_j`,
/// `ω ↦ Σb − Σa − Σc`.
pub fn coordinate_weight(r: usize, s: usize, var: Var) -> Result<Character> {
    check_params(r, s)?;
    let t = r + s;
    let mut w = Character::trivial(r, s);
    match var {
        Var::M(i, j) if (1..=r).contains(&i) && (1..=t).contains(&j) => {
            *w.a(i) += 1;
            *w.b(j) -= 1;
        }
        Var::N(i, j) if (1..=t).contains(&i) && (1..=s).contains(&j) => {
            *w.b(i) += 1;
            *w.c(j) -= 1;
        }
        Var::Omega => {
            for i in 1..=r {
                *w.a(i) -= 1;
            }
            for j in 1..=t {
                *w.b(j) += 1;
            }
            for k in 1..=s {
                *w.c(k) -= 1;
            }
        }
        other => return Err(Error::UnknownVariable(format!("{other} for ({r},{s})"))),
    }
    Ok(w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Block {
    /// `a_i − a_j`
    SquareR,
    /// `a_i − c_j`
    TopRight,
    /// `c_i − c_j`
    SquareS,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockWeight {
    pub block: Block,
    pub weight: RestrictedCharacter,
}

fn root(r: usize, s: usize, plus: usize, minus: usize) -> RestrictedCharacter {
    let mut w = RestrictedCharacter::trivial(r, s);
    w.exponents[plus] += 1;
    w.exponents[minus] -= 1;
    w
}

/// Weights of `𝔤 = gl(r) ⊕ gl(t) ⊕ gl(s)` on the restricted torus, as a multiset.
fn g_weights(r: usize, s: usize) -> Vec<RestrictedCharacter> {
    let t = r + s;
    let mut out = Vec::with_capacity(r * r + t * t + s * s);
    for i in 0..r {
        for j in 0..r {
            out.push(root(r, s, i, j));
        }
    }
    // b_1..b_t restrict to a_1..a_r, c_1..c_s, which is the same index range
    for i in 0..t {
        for j in 0..t {
            out.push(root(r, s, i, j));
        }
    }
    for i in 0..s {
        for j in 0..s {
            out.push(root(r, s, r + i, r + j));
        }
    }
    out
}

/// Weights of `𝔥`: elements `(A, [[A, 0], [X, C]], C)`, i.e. one copy of
/// `gl(r)`, one of `gl(s)` and the lower-left `s × r` block `X`.
fn h_weights(r: usize, s: usize) -> Vec<RestrictedCharacter> {
    let mut out = Vec::with_capacity(r * r + s * s + r * s);
    for i in 0..r {
        for j in 0..r {
            out.push(root(r, s, i, j));
        }
    }
    for i in 0..s {
        for j in 0..s {
            out.push(root(r, s, r + i, r + j));
        }
    }
    for i in 0..s {
        for j in 0..r {
            out.push(root(r, s, r + i, j));
        }
    }
    out
}

/// The multiset of weights of `𝔤/𝔥` on the restricted torus, each tagged with
/// the block it belongs to.
pub fn g_mod_h_weights(r: usize, s: usize) -> Result<Vec<BlockWeight>> {
    check_params(r, s)?;
    let mut counts: BTreeMap<RestrictedCharacter, i64> = BTreeMap::new();
    for w in g_weights(r, s) {
        *counts.entry(w).or_default() += 1;
    }
    for w in h_weights(r, s) {
        let c = counts.entry(w.clone()).or_default();
        *c -= 1;
        if *c < 0 {
            return Err(Error::Parameter(format!("weight {w} of 𝔥 is not a weight of 𝔤")));
        }
    }
    let mut out = Vec::new();
    for (w, c) in counts {
        for k in 0..c as usize {
            // the t zero weights are the diagonals of the two square blocks
            let block = match classify_block(r, &w)? {
                None if k < r => Block::SquareR,
                None => Block::SquareS,
                Some(b) => b,
            };
            out.push(BlockWeight { block, weight: w.clone() });
        }
    }
    out.sort_by(|x, y| x.block.cmp(&y.block).then_with(|| x.weight.cmp(&y.weight)));
    Ok(out)
}

fn classify_block(r: usize, w: &RestrictedCharacter) -> Result<Option<Block>> {
    let e = w.exponents();
    let pos = e.iter().position(|&x| x > 0);
    let neg = e.iter().position(|&x| x < 0);
    match (pos, neg) {
        (None, None) => Ok(None),
        (Some(p), Some(n)) if p < r && n < r => Ok(Some(Block::SquareR)),
        (Some(p), Some(n)) if p < r && n >= r => Ok(Some(Block::TopRight)),
        (Some(p), Some(n)) if p >= r && n >= r => Ok(Some(Block::SquareS)),
        _ => Err(Error::Parameter(format!("weight {w} fits no block of 𝔤/𝔥"))),
    }
}

/// Sum of the weights in each block.
pub fn block_sums(r: usize, s: usize, ws: &[BlockWeight]) -> BTreeMap<Block, RestrictedCharacter> {
    let mut sums = BTreeMap::new();
    for b in [Block::SquareR, Block::TopRight, Block::SquareS] {
        sums.insert(b, RestrictedCharacter::trivial(r, s));
    }
    for bw in ws {
        let e = sums.get_mut(&bw.block).unwrap();
        *e = e.add(&bw.weight);
    }
    sums
}

pub fn block_counts(ws: &[BlockWeight]) -> BTreeMap<Block, usize> {
    let mut counts = BTreeMap::new();
    for bw in ws {
        *counts.entry(bw.block).or_default() += 1;
    }
    counts
}

pub fn weight_product<'a>(
    r: usize,
    s: usize,
    ws: impl IntoIterator<Item = &'a RestrictedCharacter>,
) -> RestrictedCharacter {
    ws.into_iter().fold(RestrictedCharacter::trivial(r, s), |acc, w| acc.add(w))
}

/// `(det 𝕋_A)^s / (det 𝕋_C)^r`.
pub fn det_character(r: usize, s: usize) -> RestrictedCharacter {
    RestrictedCharacter::from_parts(&vec![s as i64; r], &vec![-(r as i64); s])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaWeight {
    pub pivot: Vec<usize>,
    pub full: Character,
    pub restricted: RestrictedCharacter,
}

/// Weight of `σ_T = dξ_T / M_T^s`: the sum of the weights of the free chart
/// coordinates minus `s` times the weight of the pivot minor.
pub fn sigma_weight_at(r: usize, s: usize, pivot: &[usize]) -> Result<SigmaWeight> {
    let chart = chart_solve(r, s, pivot)?;
    let mut full = Character::trivial(r, s);
    for &v in chart.free() {
        full = full.add(&coordinate_weight(r, s, v)?);
    }
    let mut minor = Character::trivial(r, s);
    for (i, &j) in pivot.iter().enumerate() {
        minor = minor.add(&coordinate_weight(r, s, Var::M(i + 1, j))?);
    }
    let full = full.add(&minor.scale(-(s as i64)));
    let restricted = full.restrict();
    Ok(SigmaWeight { pivot: pivot.to_vec(), full, restricted })
}

/// The weight of σ computed on every chart; errors if the charts disagree.
pub fn sigma_weight(r: usize, s: usize) -> Result<SigmaWeight> {
    let mut all = subsets(r + s, r).into_iter().map(|t| sigma_weight_at(r, s, &t));
    let first = all.next().unwrap()?;
    for w in all {
        let w = w?;
        if w.full != first.full {
            return Err(Error::Parameter(format!(
                "σ weight on chart {:?} is {} but on {:?} it is {}",
                w.pivot, w.full, first.pivot, first.full
            )));
        }
    }
    Ok(first)
}

#[derive(Clone, Debug, Serialize)]
pub struct CoordinateWeightRow {
    pub var: String,
    pub full: Character,
    pub restricted: RestrictedCharacter,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightTable {
    pub r: usize,
    pub s: usize,
    pub coordinates: Vec<CoordinateWeightRow>,
    pub g_mod_h: Vec<BlockWeight>,
    pub product: RestrictedCharacter,
    pub det_character: RestrictedCharacter,
    pub sigma_full: Character,
    pub sigma_restricted: RestrictedCharacter,
}

pub fn weight_table(r: usize, s: usize) -> Result<WeightTable> {
    let table = crate::poly::VarTable::cramer(r, s, true, false);
    let coordinates = table
        .vars()
        .iter()
        .map(|&v| {
            let full = coordinate_weight(r, s, v)?;
            Ok(CoordinateWeightRow { var: v.to_string(), restricted: full.restrict(), full })
        })
        .collect::<Result<_>>()?;
    let g_mod_h = g_mod_h_weights(r, s)?;
    let product = weight_product(r, s, g_mod_h.iter().map(|b| &b.weight));
    let sigma = sigma_weight(r, s)?;
    Ok(WeightTable {
        r,
        s,
        coordinates,
        g_mod_h,
        product,
        det_character: det_character(r, s),
        sigma_full: sigma.full,
        sigma_restricted: sigma.restricted,
    })
}
