//! The spinor variety `OGr(5,10) ⊂ ℙ¹⁵` and its comparison with the ω-less
//! Cramer variety `Cr(2,4,2)`.
//!
//! Spinor coordinates are `x`, `x_ij` (`i < j ≤ 5`) and `y_i`. On the big cell
//! `x = 1`, `x_ij = Ξ_ij` for a skew 5×5 matrix Ξ and `y_i = ±Pf_i(Ξ)`, the
//! Pfaffian of Ξ with row and column `i` removed. The ideal is generated by
//! `x·y_i ∓ Pf_i(x_··)` and `Σ_j x_ij y_j` (with `x_ji = −x_ij`).

mod search;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{rat, RatMatrix, Rational};
use crate::group::orbit_sample;
use crate::poly::{MultiPoly, Var, VarTable};
use crate::variety::{generate_ideal, OmegaMode};

pub use search::{search_identification, search_identification_all, SearchOutcome};

/// Seed and budget that produced the committed map.
pub const COMMITTED_SEED: u64 = 2024;
pub const COMMITTED_BUDGET: u64 = 100_000;

/// The committed identification map and the log of the search that produced it.
pub const COMMITTED_MAP: &str = include_str!("../../data/ogr_coordmap.json");
pub const COMMITTED_SEARCH_LOG: &str = include_str!("../../data/ogr_coordmap.log");

fn skew(table: &Arc<VarTable>, i: usize, j: usize) -> MultiPoly {
    match i.cmp(&j) {
        std::cmp::Ordering::Less => MultiPoly::var(table, Var::SpinorSkew(i, j)).unwrap(),
        std::cmp::Ordering::Greater => -&MultiPoly::var(table, Var::SpinorSkew(j, i)).unwrap(),
        std::cmp::Ordering::Equal => MultiPoly::zero(table),
    }
}

/// 3-term Pfaffian of the skew 4×4 matrix on `{1..5} ∖ {i}`:
/// `x_pq x_uv − x_pu x_qv + x_pv x_qu` for `p < q < u < v`.
pub fn pfaffian_poly(table: &Arc<VarTable>, i: usize) -> MultiPoly {
    let idx: Vec<usize> = (1..=5).filter(|&k| k != i).collect();
    let (p, q, u, v) = (idx[0], idx[1], idx[2], idx[3]);
    let a = &skew(table, p, q) * &skew(table, u, v);
    let b = &skew(table, p, u) * &skew(table, q, v);
    let c = &skew(table, p, v) * &skew(table, q, u);
    &(&a - &b) + &c
}

/// Numeric Pfaffian of the 4×4 skew submatrix of `xi` avoiding index `i` (1-based).
pub fn pfaffian_value(xi: &RatMatrix, i: usize) -> Rational {
    let idx: Vec<usize> = (0..5).filter(|&k| k + 1 != i).collect();
    let e = |a: usize, b: usize| xi.get(idx[a], idx[b]).clone();
    e(0, 1) * e(2, 3) - e(0, 2) * e(1, 3) + e(0, 3) * e(1, 2)
}

/// Sign convention of the big-cell parametrization `y_i = sign · (−1)^{i+1} Pf_i(Ξ)`.
fn spinor_quadrics_with(global: i64) -> Vec<MultiPoly> {
    let table = VarTable::spinor();
    let x = MultiPoly::var(&table, Var::SpinorScalar).unwrap();
    let y = |i: usize| MultiPoly::var(&table, Var::SpinorVector(i)).unwrap();
    let mut out = Vec::with_capacity(10);
    for i in 1..=5 {
        let sign = rat(global * if i % 2 == 1 { 1 } else { -1 });
        out.push(&(&x * &y(i)) - &pfaffian_poly(&table, i).scale(&sign));
    }
    for i in 1..=5 {
        let mut q = MultiPoly::zero(&table);
        for j in (1..=5).filter(|&j| j != i) {
            q = &q + &(&skew(&table, i, j) * &y(j));
        }
        out.push(q);
    }
    out
}

/// Random skew 5×5 matrix with entries in `[-bound, bound]`.
pub fn random_skew<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> RatMatrix {
    let mut m = RatMatrix::zeros(5, 5);
    for i in 0..5 {
        for j in i + 1..5 {
            let v = rat(rng.gen_range(-bound..=bound));
            m.set(j, i, -v.clone());
            m.set(i, j, v);
        }
    }
    m
}

/// Big-cell point `(λ, λΞ, λ·sign(i)·Pf_i(Ξ))` in spinor-table order.
pub fn big_cell_point(xi: &RatMatrix, global: i64, scale: &Rational) -> Vec<Rational> {
    let mut out = vec![scale.clone()];
    for i in 0..5 {
        for j in i + 1..5 {
            out.push(scale * xi.get(i, j));
        }
    }
    for i in 1..=5 {
        let sign = rat(global * if i % 2 == 1 { 1 } else { -1 });
        out.push(scale * sign * pfaffian_value(xi, i));
    }
    out
}

fn parametrization_holds(qs: &[MultiPoly], global: i64, samples: usize, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zero = RatMatrix::zeros(5, 5);
    std::iter::once(zero).chain((0..samples).map(|_| random_skew(&mut rng, 5))).all(|xi| {
        let p = big_cell_point(&xi, global, &Rational::one());
        qs.iter().all(|q| q.eval(&p).unwrap().is_zero())
    })
}

/// Global sign of the parametrization for which the quadrics vanish on the big cell.
pub fn spinor_sign_convention() -> i64 {
    [1, -1]
        .into_iter()
        .find(|&g| parametrization_holds(&spinor_quadrics_with(g), g, 20, 0x5eed))
        .expect("one sign convention satisfies the parametrization")
}

/// The 10 spinor quadrics over the 16 spinor coordinates.
pub fn ogr_quadrics() -> Vec<MultiPoly> {
    spinor_quadrics_with(spinor_sign_convention())
}

/// The 10 generators of the ω-less ideal of `Cr(2,4,2)` over its 16 coordinates.
pub fn cramer_242_quadrics() -> Vec<MultiPoly> {
    generate_ideal(2, 2, OmegaMode::OmegaLess).expect("(2,2) is valid").polys().cloned().collect()
}

/// Canonical RREF of the coefficient matrix of a list of quadrics, columns
/// indexed by the 136 monomials `v_i v_j` (`i ≤ j`) in table order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricSpan {
    table: Arc<VarTable>,
    rref: RatMatrix,
    rank: usize,
}

fn monomial_columns(n: usize) -> BTreeMap<(usize, usize), usize> {
    let mut cols = BTreeMap::new();
    for i in 0..n {
        for j in i..n {
            let k = cols.len();
            cols.insert((i, j), k);
        }
    }
    cols
}

pub fn quadric_span(qs: &[MultiPoly]) -> Result<QuadricSpan> {
    let table = match qs.first() {
        Some(q) => Arc::clone(q.table()),
        None => return Err(Error::Dimension("empty quadric list".into())),
    };
    if table.len() != 16 {
        return Err(Error::Dimension(format!("{} variables, need 16", table.len())));
    }
    let cols = monomial_columns(16);
    let mut m = RatMatrix::zeros(qs.len(), cols.len());
    for (row, q) in qs.iter().enumerate() {
        if **q.table() != *table {
            return Err(Error::TableMismatch);
        }
        if !q.is_homogeneous(2) || q.is_zero() {
            return Err(Error::NotQuadratic);
        }
        for (e, c) in q.terms() {
            let vars: Vec<usize> =
                e.iter().enumerate().flat_map(|(k, &d)| std::iter::repeat_n(k, d as usize)).collect();
            m.set(row, cols[&(vars[0], vars[1])], c.clone());
        }
    }
    let (rref, pivots) = m.rref();
    Ok(QuadricSpan { table, rref, rank: pivots.len() })
}

impl QuadricSpan {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rref(&self) -> &RatMatrix {
        &self.rref
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapEntry {
    pub target: String,
    pub sign: i64,
}

/// A signed bijection from the spinor coordinates to the Cramer coordinates:
/// `v ↦ sign · target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordMap {
    entries: Vec<(Var, Var, i64)>,
}

impl CoordMap {
    pub fn new(entries: Vec<(Var, Var, i64)>) -> Result<Self> {
        let spinor = VarTable::spinor();
        let cramer = VarTable::cramer(2, 2, false, false);
        if entries.len() != 16 {
            return Err(Error::CoordMap(format!("{} entries, need 16", entries.len())));
        }
        let mut sources: Vec<Var> = entries.iter().map(|e| e.0).collect();
        let mut targets: Vec<Var> = entries.iter().map(|e| e.1).collect();
        sources.sort();
        sources.dedup();
        targets.sort();
        targets.dedup();
        if sources.len() != 16 || targets.len() != 16 {
            return Err(Error::CoordMap("not a bijection".into()));
        }
        for (s, t, sign) in &entries {
            if !spinor.contains(*s) {
                return Err(Error::CoordMap(format!("{s} is not a spinor coordinate")));
            }
            if !cramer.contains(*t) {
                return Err(Error::CoordMap(format!("{t} is not a coordinate of Cr(2,4,2)")));
            }
            if sign.abs() != 1 {
                return Err(Error::CoordMap(format!("sign {sign} for {s}")));
            }
        }
        let mut entries = entries;
        entries.sort_by_key(|e| spinor.position(e.0).unwrap());
        Ok(CoordMap { entries })
    }

    pub fn entries(&self) -> &[(Var, Var, i64)] {
        &self.entries
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: BTreeMap<String, MapEntry> = serde_json::from_str(text).map_err(|e| Error::CoordMap(e.to_string()))?;
        let entries = raw
            .into_iter()
            .map(|(k, e)| {
                let s = Var::parse(&k).ok_or_else(|| Error::UnknownVariable(k.clone()))?;
                let t = Var::parse(&e.target).ok_or_else(|| Error::UnknownVariable(e.target.clone()))?;
                Ok((s, t, e.sign))
            })
            .collect::<Result<_>>()?;
        Self::new(entries)
    }

    /// `{spinor_var: {target, sign}}`, keys sorted, one entry per line.
    pub fn to_json(&self) -> String {
        let raw: BTreeMap<String, MapEntry> = self
            .entries
            .iter()
            .map(|(s, t, sign)| (s.to_string(), MapEntry { target: t.to_string(), sign: *sign }))
            .collect();
        let mut out = serde_json::to_string_pretty(&raw).expect("map serializes");
        out.push('\n');
        out
    }

    pub fn committed() -> Result<Self> {
        Self::from_json(COMMITTED_MAP)
    }

    /// Rewrites spinor polynomials in Cramer coordinates.
    pub fn substitute(&self, qs: &[MultiPoly]) -> Result<Vec<MultiPoly>> {
        let spinor = VarTable::spinor();
        let cramer = VarTable::cramer(2, 2, false, false);
        let images: Vec<MultiPoly> = self
            .entries
            .iter()
            .map(|(_, t, sign)| Ok(MultiPoly::var(&cramer, *t)?.scale(&rat(*sign))))
            .collect::<Result<_>>()?;
        qs.iter()
            .map(|q| {
                if **q.table() != *spinor {
                    return Err(Error::TableMismatch);
                }
                q.compose(&images, &cramer)
            })
            .collect()
    }

    /// Spinor coordinates of the image of a Cramer point (table order).
    pub fn pull_point(&self, cramer_values: &[Rational]) -> Result<Vec<Rational>> {
        let cramer = VarTable::cramer(2, 2, false, false);
        self.entries.iter().map(|(_, t, sign)| Ok(rat(*sign) * &cramer_values[cramer.position(*t)?])).collect()
    }

    /// Cramer coordinates of a spinor point (table order).
    pub fn push_point(&self, spinor_values: &[Rational]) -> Result<Vec<Rational>> {
        let cramer = VarTable::cramer(2, 2, false, false);
        let mut out = vec![Rational::zero(); 16];
        for (k, (_, t, sign)) in self.entries.iter().enumerate() {
            out[cramer.position(*t)?] = rat(*sign) * &spinor_values[k];
        }
        Ok(out)
    }
}

/// True iff the substituted spinor quadrics span the same space as the Cramer quadrics.
pub fn verify_identification(map: &CoordMap) -> Result<bool> {
    let lhs = quadric_span(&map.substitute(&ogr_quadrics())?)?;
    let rhs = quadric_span(&cramer_242_quadrics())?;
    Ok(lhs == rhs)
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub cramer_points: usize,
    pub cramer_points_on_ogr: usize,
    pub spinor_points: usize,
    pub spinor_points_on_cramer: usize,
}

impl CrossCheck {
    pub fn passed(&self) -> bool {
        self.cramer_points_on_ogr == self.cramer_points && self.spinor_points_on_cramer == self.spinor_points
    }
}

/// Maps `samples` orbit points of `Cr(2,4,2)` to spinor space and `samples`
/// big-cell points of `OGr(5,10)` to Cramer space and checks the other side's
/// equations there.
pub fn cross_check(map: &CoordMap, samples: usize, seed: u64, bound: u32) -> Result<CrossCheck> {
    let ogr = ogr_quadrics();
    let cramer = cramer_242_quadrics();
    let table = VarTable::cramer(2, 2, false, false);
    let pts = orbit_sample(2, 2, OmegaMode::OmegaLess, seed, samples, bound)?;
    let mut on_ogr = 0;
    for p in &pts {
        let q = map.pull_point(&p.coordinates(&table)?)?;
        if ogr.iter().all(|f| f.eval(&q).map(|v| v.is_zero()).unwrap_or(false)) {
            on_ogr += 1;
        }
    }
    let global = spinor_sign_convention();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut on_cramer = 0;
    for _ in 0..samples {
        let xi = random_skew(&mut rng, bound as i64);
        let scale = rat(rng.gen_range(1..=bound as i64));
        let q = map.push_point(&big_cell_point(&xi, global, &scale))?;
        if cramer.iter().all(|f| f.eval(&q).map(|v| v.is_zero()).unwrap_or(false)) {
            on_cramer += 1;
        }
    }
    Ok(CrossCheck {
        cramer_points: pts.len(),
        cramer_points_on_ogr: on_ogr,
        spinor_points: samples,
        spinor_points_on_cramer: on_cramer,
    })
}
