//! Verification suites producing machine-readable reports.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::charts::{all_charts, cartier_cover_report, PairStatus, Transition};
use crate::error::Result;
use crate::exact::{rat, Rational};
use crate::group::{act, base_point, one_param_limit, orbit_dimension, orbit_sample, random_elements, GroupElement};
use crate::point::ConfigurationPoint;
use crate::poly::Var;
use crate::variety::{generate_ideal, OmegaMode, Stratum};
use crate::weights::{
    block_counts, block_sums, coordinate_weight, det_character, g_mod_h_weights, sigma_weight, sigma_weight_at,
    weight_product, Block,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Orbit,
    Codim,
    Charts,
    Cartier,
    Weights,
    Limit,
    All,
}

impl Suite {
    const EACH: [Suite; 6] = [Suite::Orbit, Suite::Codim, Suite::Charts, Suite::Cartier, Suite::Weights, Suite::Limit];
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s {
            "orbit" => Suite::Orbit,
            "codim" => Suite::Codim,
            "charts" => Suite::Charts,
            "cartier" => Suite::Cartier,
            "weights" => Suite::Weights,
            "limit" => Suite::Limit,
            "all" => Suite::All,
            other => return Err(format!("unknown suite {other:?}")),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = serde_json::to_value(self).unwrap();
        f.write_str(v.as_str().unwrap())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    /// Informational; never fails a run.
    Info,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: Value,
}

impl Check {
    fn new(name: impl Into<String>, ok: bool, witness: Value) -> Self {
        Check { name: name.into(), status: if ok { Status::Pass } else { Status::Fail }, witness }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyConfig {
    pub r: usize,
    pub s: usize,
    pub omega_mode: OmegaMode,
    pub seed: u64,
    pub samples: usize,
    pub bound: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub config: VerifyConfig,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn point_json(p: &ConfigurationPoint) -> Value {
    serde_json::to_value(p).expect("point serializes")
}

pub fn run(suite: Suite, config: &VerifyConfig) -> Result<Report> {
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    let mut checks = Vec::new();
    for s in suites {
        let part = match s {
            Suite::Orbit => orbit_checks(config)?,
            Suite::Codim => codim_checks(config)?,
            Suite::Charts => chart_checks(config)?,
            Suite::Cartier => cartier_checks(config)?,
            Suite::Weights => weight_checks(config)?,
            Suite::Limit => limit_checks(config)?,
            Suite::All => unreachable!(),
        };
        checks.extend(part);
    }
    Ok(Report { suite, config: config.clone(), checks })
}

fn orbit_checks(c: &VerifyConfig) -> Result<Vec<Check>> {
    let ideal = generate_ideal(c.r, c.s, c.omega_mode)?;
    let v = base_point(c.r, c.s, c.omega_mode)?;
    let mut checks = vec![Check::new("base_point_on_variety", ideal.vanishes_at(&v)?, point_json(&v))];

    let elements = random_elements(c.r, c.s, c.seed, c.samples, c.bound)?;
    let results: Vec<(ConfigurationPoint, Option<String>)> = elements
        .par_iter()
        .map(|g| {
            let g = if c.omega_mode.has_omega() { g.clone() } else { g.normalized_lambda() };
            let p = act(&g, &v)?;
            let bad = ideal.first_nonzero(&p)?.map(ToString::to_string);
            Ok((p, bad))
        })
        .collect::<Result<_>>()?;
    let failure = results.iter().find(|(_, bad)| bad.is_some());
    checks.push(match failure {
        None => Check::new("orbit_vanishing", true, json!({ "points": results.len() })),
        Some((p, bad)) => Check::new("orbit_vanishing", false, json!({ "point": point_json(p), "generator": bad })),
    });

    // group action composes: act(g·h, p) = act(g, act(h, p))
    let pairs = random_elements(c.r, c.s, c.seed ^ 0x9e37_79b9_7f4a_7c15, 2 * c.samples.min(20), c.bound)?;
    let mut composition_ok = true;
    let mut witness = Value::Null;
    for gh in pairs.chunks(2) {
        let (g, h) = (&gh[0], &gh[1]);
        let lhs = act(&g.compose(h)?, &v)?;
        let rhs = act(g, &act(h, &v)?)?;
        if lhs != rhs {
            composition_ok = false;
            witness = point_json(&lhs);
            break;
        }
        if (g.compose(h)?.lambda()) != g.lambda() * h.lambda() {
            composition_ok = false;
            witness = json!("lambda is not multiplicative");
            break;
        }
    }
    checks.push(Check::new("action_composition", composition_ok, witness));
    Ok(checks)
}

fn codim_checks(c: &VerifyConfig) -> Result<Vec<Check>> {
    let ideal = generate_ideal(c.r, c.s, c.omega_mode)?;
    let jac = ideal.jacobian();
    let expected = ideal.expected_codim();
    let v = base_point(c.r, c.s, c.omega_mode)?;
    let mut points = vec![v];
    points.extend(orbit_sample(c.r, c.s, c.omega_mode, c.seed, c.samples, c.bound)?);
    let ranks: Vec<usize> = points.par_iter().map(|p| jac.rank_at_point(&ideal, p)).collect::<Result<_>>()?;
    let bad = ranks.iter().position(|&k| k != expected);
    let mut checks = vec![Check::new(
        "jacobian_rank",
        bad.is_none(),
        json!({
            "expected": expected,
            "ranks": ranks,
            "failing_point": bad.map(|k| point_json(&points[k])),
        }),
    )];
    // the ω-less variety is the closure of the λ = 1 orbit, one dimension less
    let orbit_dim = orbit_dimension(c.r, c.s) - usize::from(!c.omega_mode.has_omega());
    let dims: Vec<usize> = ranks.iter().map(|k| ideal.ambient_dim() - k).collect();
    checks.push(Check::new(
        "dimension_consistency",
        dims.iter().all(|&d| d == orbit_dim),
        json!({ "ambient": ideal.ambient_dim(), "orbit_dimension": orbit_dim, "ambient_minus_rank": dims[0] }),
    ));
    Ok(checks)
}

fn overlap_points(c: &VerifyConfig) -> Result<Vec<ConfigurationPoint>> {
    orbit_sample(c.r, c.s, OmegaMode::WithOmega, c.seed, c.samples, c.bound)
}

fn chart_checks(c: &VerifyConfig) -> Result<Vec<Check>> {
    let charts = all_charts(c.r, c.s)?;
    let pts = overlap_points(c)?;
    let mut checks = Vec::new();

    let bad: Vec<Vec<usize>> = charts
        .par_iter()
        .map(|ch| Ok((ch.pivot().to_vec(), ch.substitution_check()?)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(t, _)| t)
        .collect();
    checks.push(Check::new("chart_substitution", bad.is_empty(), json!({ "charts": charts.len(), "failing": bad })));

    let mut round_trip = Check::new("chart_round_trip", true, Value::Null);
    'outer: for ch in &charts {
        for p in &pts {
            if ch.pivot_at(p)?.is_zero() {
                continue;
            }
            if &ch.reconstruct(&ch.free_coordinates(p)?)? != p {
                round_trip =
                    Check::new("chart_round_trip", false, json!({ "pivot": ch.pivot(), "point": point_json(p) }));
                break 'outer;
            }
        }
    }
    checks.push(round_trip);

    struct PairResult {
        from: Vec<usize>,
        to: Vec<usize>,
        checked: usize,
        signed_fail: Option<ConfigurationPoint>,
        sigma_fail: Option<ConfigurationPoint>,
        unsigned_agree: usize,
        block: Option<bool>,
    }
    let pairs: Vec<(usize, usize)> = (0..charts.len()).flat_map(|a| (0..charts.len()).map(move |b| (a, b))).collect();
    let results: Vec<PairResult> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let (from, to) = (&charts[a], &charts[b]);
            let tr = Transition::new(from, to)?;
            let mut out = PairResult {
                from: from.pivot().to_vec(),
                to: to.pivot().to_vec(),
                checked: 0,
                signed_fail: None,
                sigma_fail: None,
                unsigned_agree: 0,
                block: None,
            };
            for p in &pts {
                if from.pivot_at(p)?.is_zero() || to.pivot_at(p)?.is_zero() {
                    continue;
                }
                out.checked += 1;
                let at = tr.evaluate(p)?;
                if at.det != at.signed_formula() && out.signed_fail.is_none() {
                    out.signed_fail = Some(p.clone());
                }
                if at.det == tr.unsigned_formula_at(p)? {
                    out.unsigned_agree += 1;
                }
                if !at.sigma_consistent() && out.sigma_fail.is_none() {
                    out.sigma_fail = Some(p.clone());
                }
                if let Some(ok) = tr.adjacent_block_check_with(&at)? {
                    out.block = Some(out.block.unwrap_or(true) && ok);
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;

    let unchecked: Vec<_> = results.iter().filter(|r| r.checked == 0).map(|r| json!([r.from, r.to])).collect();
    let signed_fail = results.iter().find(|r| r.signed_fail.is_some());
    checks.push(Check::new(
        "transition_determinant",
        signed_fail.is_none(),
        match signed_fail {
            None => json!({ "pairs": results.len(), "formula": "(eps(T2) M_T2 / eps(T1) M_T1)^s" }),
            Some(r) => json!({ "from": r.from, "to": r.to, "point": point_json(r.signed_fail.as_ref().unwrap()) }),
        },
    ));
    if !unchecked.is_empty() {
        checks.push(Check {
            name: "transition_overlap_coverage".into(),
            status: Status::Inconclusive,
            witness: json!({ "pairs_without_samples": unchecked }),
        });
    }
    let disagree: Vec<Value> =
        results.iter().filter(|r| r.unsigned_agree != r.checked).map(|r| json!([r.from, r.to])).collect();
    checks.push(Check {
        name: "transition_determinant_unsigned_minors".into(),
        status: Status::Info,
        witness: json!({
            "formula": "(M_T2 / M_T1)^s",
            "pairs_where_sign_differs": disagree.len(),
            "example": disagree.first(),
        }),
    });
    let sigma_fail = results.iter().find(|r| r.sigma_fail.is_some());
    checks.push(Check::new(
        "sigma_consistency",
        sigma_fail.is_none(),
        match sigma_fail {
            None => Value::Null,
            Some(r) => json!({ "from": r.from, "to": r.to, "point": point_json(r.sigma_fail.as_ref().unwrap()) }),
        },
    ));
    let adjacent: Vec<&PairResult> = results.iter().filter(|r| r.block.is_some()).collect();
    let block_bad = adjacent.iter().find(|r| r.block == Some(false));
    checks.push(Check::new(
        "adjacent_transition_block_shape",
        block_bad.is_none(),
        match block_bad {
            None => json!({ "adjacent_pairs": adjacent.len() }),
            Some(r) => json!({ "from": r.from, "to": r.to }),
        },
    ));
    Ok(checks)
}

fn cartier_checks(c: &VerifyConfig) -> Result<Vec<Check>> {
    let rep = cartier_cover_report(c.r, c.s, c.samples, c.seed, c.bound)?;
    Ok(rep
        .pairs
        .into_iter()
        .map(|p| {
            let name = format!("cartier {:?} -> {:?}", p.from, p.to);
            let status = match p.status {
                PairStatus::Pass => Status::Pass,
                PairStatus::Fail => Status::Fail,
                PairStatus::Inconclusive => Status::Inconclusive,
            };
            let witness = match p.status {
                PairStatus::Pass => json!({ "witnesses": p.witnesses, "transition": p.transition }),
                _ => json!({
                    "witnesses": p.witnesses,
                    "transition": p.transition,
                    "point": p.witness.as_ref().map(point_json),
                }),
            };
            Check { name, status, witness }
        })
        .collect())
}

fn weight_checks(c: &VerifyConfig) -> Result<Vec<Check>> {
    let (r, s) = (c.r, c.s);
    let ws = g_mod_h_weights(r, s)?;
    let counts = block_counts(&ws);
    let sums = block_sums(r, s, &ws);
    let product = weight_product(r, s, ws.iter().map(|b| &b.weight));
    let det = det_character(r, s);
    let mut checks = vec![
        Check::new(
            "g_mod_h_cardinality",
            ws.len() == orbit_dimension(r, s) && ws.len() == r * (r + s) + s * s,
            json!({ "count": ws.len(), "blocks": counts }),
        ),
        Check::new(
            "square_blocks_trivial",
            sums[&Block::SquareR].is_trivial() && sums[&Block::SquareS].is_trivial(),
            json!({ "sums": sums.iter().map(|(b, w)| (format!("{b:?}"), w.to_string())).collect::<Vec<_>>() }),
        ),
        Check::new(
            "weight_product",
            product == det,
            json!({ "product": product.to_string(), "expected": det.to_string() }),
        ),
    ];
    let per_chart: Vec<_> =
        crate::variety::subsets(r + s, r).iter().map(|t| sigma_weight_at(r, s, t)).collect::<Result<_>>()?;
    let independent = per_chart.windows(2).all(|w| w[0].full == w[1].full);
    checks.push(Check::new("sigma_weight_chart_independent", independent, json!({ "charts": per_chart.len() })));
    if independent {
        let sw = sigma_weight(r, s)?;
        checks.push(Check::new(
            "sigma_weight_restricted",
            sw.restricted == product,
            json!({ "full": sw.full.to_string(), "restricted": sw.restricted.to_string() }),
        ));
    }

    // equivariance under diagonal group elements
    let table = crate::poly::VarTable::cramer(r, s, true, false);
    let pts = overlap_points(c)?;
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let b = c.bound.max(1) as i64;
    let mut draw = |n: usize| -> Vec<Rational> {
        (0..n)
            .map(|_| {
                let v = rng.gen_range(1..=b);
                if rng.gen_bool(0.5) {
                    rat(v)
                } else {
                    rat(-v)
                }
            })
            .collect()
    };
    let mut eq_ok = true;
    let mut witness = json!({ "points": pts.len() });
    'pts: for p in &pts {
        let (a, bb, cc) = (draw(r), draw(r + s), draw(s));
        let g = GroupElement::diagonal(&a, &bb, &cc)?;
        let q = act(&g, p)?;
        for &v in table.vars() {
            let chi = coordinate_weight(r, s, v)?.eval(&a, &bb, &cc)?;
            if q.value(v)? != chi * p.value(v)? {
                eq_ok = false;
                witness = json!({ "coordinate": v.to_string(), "point": point_json(p) });
                break 'pts;
            }
        }
    }
    checks.push(Check::new("equivariance", eq_ok, witness));
    Ok(checks)
}

fn limit_checks(c: &VerifyConfig) -> Result<Vec<Check>> {
    let (r, s) = (c.r, c.s);
    let lim = one_param_limit(r, s)?;
    let ideal = generate_ideal(r, s, OmegaMode::WithOmega)?;
    let on_variety = lim.path.substitute_into(&ideal)?.iter().all(|p| p.is_zero());
    let param = crate::poly::MultiPoly::var(&crate::poly::VarTable::param_only(), Var::Param)?;
    let shape = *lim.path.n.get(r, 0) == param && lim.path.omega.as_ref() == Some(&param);
    Ok(vec![
        Check::new("path_on_variety", on_variety, Value::Null),
        Check::new(
            "path_shape",
            shape,
            json!({
                "n_entry": lim.path.n.get(r, 0).to_string(),
                "omega": lim.path.omega.as_ref().map(ToString::to_string),
            }),
        ),
        Check::new(
            "limit_stratum",
            lim.stratum == Stratum::DivisorV1,
            json!({ "stratum": lim.stratum, "limit": point_json(&lim.limit) }),
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(r: usize, s: usize, samples: usize) -> VerifyConfig {
        VerifyConfig { r, s, omega_mode: OmegaMode::WithOmega, seed: 1, samples, bound: 5 }
    }

    #[test]
    fn all_for_one_one() {
        let rep = run(Suite::All, &cfg(1, 1, 50)).unwrap();
        assert!(rep.passed(), "{}", rep.to_json());
        let unsigned = rep.checks.iter().find(|c| c.name == "transition_determinant_unsigned_minors").unwrap();
        assert_eq!(unsigned.witness["pairs_where_sign_differs"], 2);
    }

    #[test]
    fn codim_two_two() {
        let rep = run(Suite::Codim, &cfg(2, 2, 10)).unwrap();
        assert!(rep.passed());
        let ranks = rep.checks[0].witness["ranks"].as_array().unwrap();
        assert_eq!(ranks.len(), 11);
        assert!(ranks.iter().all(|k| k == 5));
    }

    #[test]
    fn limit_two_three() {
        let rep = run(Suite::Limit, &cfg(2, 3, 1)).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.checks[2].witness["stratum"], "DivisorV1");
    }

    #[test]
    fn report_is_deterministic() {
        let a = run(Suite::All, &cfg(1, 2, 10)).unwrap().to_json();
        let b = run(Suite::All, &cfg(1, 2, 10)).unwrap().to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn suite_names() {
        assert_eq!("cartier".parse::<Suite>().unwrap(), Suite::Cartier);
        assert_eq!(Suite::All.to_string(), "all");
        assert!("bogus".parse::<Suite>().is_err());
    }
}
