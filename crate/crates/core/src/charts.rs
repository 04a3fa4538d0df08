//! Coordinate charts `U_T = {M_T ≠ 0}` of the open orbit.
//!
//! On `U_T` the rows of N indexed by `T` and ω are rational functions of the
//! remaining coordinates: all entries of M and the rows of N outside `T`
//! (`rt + s²` free coordinates). Writing `M_T` for the pivot minor and `N'`
//! for the free rows, `MN = 0` gives `N_T = −adj(M_T) · M_{T^c} · N' / M_T`
//! and the minor-matching generator for `T` gives `ω = ε(T) det N' / M_T`.
//!
//! The transition Jacobian between two charts has determinant
//! `(μ_{T₂} / μ_{T₁})^s`, where `μ_T = ε(T)·M_T` is the signed pivot minor,
//! so the local generators `σ_T = dξ_T / μ_T^s` of the canonical sheaf agree
//! on every overlap.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{RatMatrix, Rational};
use crate::group::orbit_sample;
use crate::point::ConfigurationPoint;
use crate::poly::{MultiPoly, PolyMatrix, ScaledPoint, Var, VarTable};
use crate::variety::{check_params, complement, generate_ideal, subset_sign, subsets, OmegaMode};

/// `num / den` with polynomial numerator and denominator over one table.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFn {
    pub num: MultiPoly,
    pub den: MultiPoly,
}

impl RationalFn {
    pub fn polynomial(p: MultiPoly) -> Self {
        let den = MultiPoly::one(p.table());
        RationalFn { num: p, den }
    }

    pub fn partial_index(&self, k: usize) -> RationalFn {
        let dn = self.num.partial_index(k);
        let dd = self.den.partial_index(k);
        RationalFn { num: &(&dn * &self.den) - &(&self.num * &dd), den: &self.den * &self.den }
    }

    pub fn eval(&self, values: &[Rational]) -> Result<Rational> {
        if values.len() != self.num.table().len() {
            return Err(Error::Dimension(format!("{} values for {} variables", values.len(), self.num.table().len())));
        }
        self.eval_scaled(&ScaledPoint::new(values))
    }

    pub fn eval_scaled(&self, point: &ScaledPoint) -> Result<Rational> {
        let d = self.den.eval_scaled(point);
        if d.is_zero() {
            return Err(Error::ChartDomain(self.den.to_string()));
        }
        Ok(self.num.eval_scaled(point) / d)
    }
}

#[derive(Clone, Debug)]
pub struct ChartMap {
    r: usize,
    s: usize,
    pivot: Vec<usize>,
    table: Arc<VarTable>,
    free: Vec<Var>,
    solved: Vec<(Var, RationalFn)>,
    pivot_minor: MultiPoly,
}

/// Builds the chart on `{M_T ≠ 0}` for the 1-based `r`-subset `T`.
pub fn chart_solve(r: usize, s: usize, pivot: &[usize]) -> Result<ChartMap> {
    check_params(r, s)?;
    let t = r + s;
    if pivot.len() != r || pivot.iter().any(|&c| c == 0 || c > t) || pivot.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parameter(format!("{pivot:?} is not an increasing {r}-subset of 1..{t}")));
    }
    let table = VarTable::cramer(r, s, true, false);
    let m = PolyMatrix::symbolic_m(&table, r, t)?;
    let n = PolyMatrix::symbolic_n(&table, t, s)?;
    let free_rows = complement(pivot, t);

    let m_pivot = PolyMatrix::from_fn(r, r, |i, j| m.get(i, pivot[j] - 1).clone());
    let all: Vec<usize> = (0..r).collect();
    let det = m_pivot.minor(&all, &all)?;
    let adj = adjugate(&m_pivot)?;
    let m_rest = PolyMatrix::from_fn(r, s, |i, j| m.get(i, free_rows[j] - 1).clone());
    let n_free = PolyMatrix::from_fn(s, s, |i, j| n.get(free_rows[i] - 1, j).clone());
    let x = adj.mul(&m_rest)?.mul(&n_free)?;

    let mut solved = Vec::with_capacity(r * s + 1);
    for (k, &row) in pivot.iter().enumerate() {
        for j in 0..s {
            solved.push((Var::N(row, j + 1), RationalFn { num: -x.get(k, j), den: det.clone() }));
        }
    }
    let all_s: Vec<usize> = (0..s).collect();
    let sign = Rational::from_integer(subset_sign(pivot).into());
    solved.push((Var::Omega, RationalFn { num: n_free.minor(&all_s, &all_s)?.scale(&sign), den: det.clone() }));

    let mut free = Vec::with_capacity(r * t + s * s);
    for i in 1..=r {
        for j in 1..=t {
            free.push(Var::M(i, j));
        }
    }
    for &row in &free_rows {
        for j in 1..=s {
            free.push(Var::N(row, j));
        }
    }

    Ok(ChartMap { r, s, pivot: pivot.to_vec(), table, free, solved, pivot_minor: det })
}

/// Classical adjoint: `adj[i][j] = (−1)^{i+j} det(A with row j and column i removed)`.
fn adjugate(a: &PolyMatrix) -> Result<PolyMatrix> {
    let n = a.rows();
    let table = Arc::clone(a.get(0, 0).table());
    if n == 1 {
        return Ok(PolyMatrix::from_fn(1, 1, |_, _| MultiPoly::one(&table)));
    }
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&k| k != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&k| k != i).collect();
            let minor = a.minor(&rows, &cols)?;
            entries.push(if (i + j) % 2 == 0 { minor } else { -&minor });
        }
    }
    let mut it = entries.into_iter();
    Ok(PolyMatrix::from_fn(n, n, |_, _| it.next().unwrap()))
}

impl ChartMap {
    pub fn pivot(&self) -> &[usize] {
        &self.pivot
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    /// Free coordinates: M row-major, then the rows of N outside `T` in increasing order.
    pub fn free(&self) -> &[Var] {
        &self.free
    }

    pub fn solved(&self) -> &[(Var, RationalFn)] {
        &self.solved
    }

    pub fn pivot_minor(&self) -> &MultiPoly {
        &self.pivot_minor
    }

    pub fn sign(&self) -> i64 {
        subset_sign(&self.pivot)
    }

    /// `ε(T)·M_T` evaluated at `p`.
    pub fn signed_pivot_at(&self, p: &ConfigurationPoint) -> Result<Rational> {
        let v = self.pivot_minor.eval(&p.coordinates(&self.table)?)?;
        Ok(v * Rational::from_integer(self.sign().into()))
    }

    pub fn pivot_at(&self, p: &ConfigurationPoint) -> Result<Rational> {
        self.pivot_minor.eval(&p.coordinates(&self.table)?)
    }

    pub fn solved_expr(&self, var: Var) -> Option<&RationalFn> {
        self.solved.iter().find(|(v, _)| *v == var).map(|(_, f)| f)
    }

    pub fn free_coordinates(&self, p: &ConfigurationPoint) -> Result<Vec<Rational>> {
        self.free.iter().map(|&v| p.value(v)).collect()
    }

    /// Rebuilds the point of the variety with the given free coordinates.
    pub fn reconstruct(&self, free_values: &[Rational]) -> Result<ConfigurationPoint> {
        if free_values.len() != self.free.len() {
            return Err(Error::Dimension(format!(
                "{} values for {} free coordinates",
                free_values.len(),
                self.free.len()
            )));
        }
        let mut values = vec![Rational::zero(); self.table.len()];
        for (v, x) in self.free.iter().zip(free_values) {
            values[self.table.position(*v)?] = x.clone();
        }
        let mut out = values.clone();
        for (v, f) in &self.solved {
            out[self.table.position(*v)?] = f.eval(&values)?;
        }
        ConfigurationPoint::from_coordinates(&self.table, self.r, self.s, &out)
    }

    /// `D^K · g(free, solved)` for the pivot minor `D` and the smallest `K`
    /// clearing denominators; zero iff the substitution annihilates `g`.
    pub fn cleared_substitution(&self, g: &MultiPoly) -> Result<MultiPoly> {
        let solved_idx: Vec<(usize, &MultiPoly)> =
            self.solved.iter().map(|(v, f)| Ok((self.table.position(*v)?, &f.num))).collect::<Result<_>>()?;
        let k_max = g.terms().map(|(e, _)| solved_idx.iter().map(|(k, _)| e[*k]).sum::<u32>()).max().unwrap_or(0);
        let mut den_powers = vec![MultiPoly::one(&self.table)];
        for _ in 0..k_max {
            let next = den_powers.last().unwrap() * &self.pivot_minor;
            den_powers.push(next);
        }
        let mut out = MultiPoly::zero(&self.table);
        for (e, c) in g.terms() {
            let mut free_part = e.clone();
            let mut term_deg = 0;
            let mut factor = MultiPoly::one(&self.table);
            for (k, num) in &solved_idx {
                let d = e[*k];
                free_part[*k] = 0;
                term_deg += d;
                for _ in 0..d {
                    factor = &factor * num;
                }
            }
            let mono = MultiPoly::monomial(&self.table, free_part, c.clone());
            let term = &(&mono * &factor) * &den_powers[(k_max - term_deg) as usize];
            out = &out + &term;
        }
        Ok(out)
    }

    /// True iff every generator of the with-ω ideal vanishes identically after substitution.
    pub fn substitution_check(&self) -> Result<bool> {
        let ideal = generate_ideal(self.r, self.s, OmegaMode::WithOmega)?;
        for g in ideal.polys() {
            if !self.cleared_substitution(g)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

enum Entry {
    Constant(Rational),
    Expr(RationalFn),
}

/// Symbolic Jacobian of the change of coordinates from one chart to another:
/// rows are the target's free coordinates, columns the source's.
pub struct Transition<'a> {
    from: &'a ChartMap,
    to: &'a ChartMap,
    entries: Vec<Vec<Entry>>,
}

impl<'a> Transition<'a> {
    pub fn new(from: &'a ChartMap, to: &'a ChartMap) -> Result<Self> {
        if from.r != to.r || from.s != to.s {
            return Err(Error::Dimension("charts for different (r,s)".into()));
        }
        let table = &from.table;
        let col_idx: Vec<usize> = from.free.iter().map(|&v| table.position(v)).collect::<Result<_>>()?;
        let mut entries = Vec::with_capacity(to.free.len());
        for &target in &to.free {
            let row = if let Some(pos) = from.free.iter().position(|&v| v == target) {
                (0..from.free.len())
                    .map(|b| Entry::Constant(if b == pos { Rational::one() } else { Rational::zero() }))
                    .collect()
            } else {
                let f = from
                    .solved_expr(target)
                    .ok_or_else(|| Error::UnknownVariable(format!("{target} in chart {:?}", from.pivot)))?;
                col_idx.iter().map(|&k| Entry::Expr(f.partial_index(k))).collect()
            };
            entries.push(row);
        }
        Ok(Transition { from, to, entries })
    }

    fn check_domain(&self, p: &ConfigurationPoint) -> Result<()> {
        for c in [self.from, self.to] {
            if c.pivot_at(p)?.is_zero() {
                return Err(Error::ChartDomain(format!("M_{:?}", c.pivot)));
            }
        }
        Ok(())
    }

    /// The Jacobian matrix at `p`.
    pub fn matrix_at(&self, p: &ConfigurationPoint) -> Result<RatMatrix> {
        self.check_domain(p)?;
        let point = ScaledPoint::new(&p.coordinates(&self.from.table)?);
        let n = self.entries.len();
        let mut out = Vec::with_capacity(n * n);
        for row in &self.entries {
            for e in row {
                out.push(match e {
                    Entry::Constant(c) => c.clone(),
                    Entry::Expr(f) => f.eval_scaled(&point)?,
                });
            }
        }
        RatMatrix::new(n, n, out)
    }

    pub fn det_at(&self, p: &ConfigurationPoint) -> Result<Rational> {
        self.matrix_at(p)?.det()
    }

    /// Jacobian, its determinant and the signed pivot minors at `p`, for
    /// running several checks off one evaluation.
    pub fn evaluate(&self, p: &ConfigurationPoint) -> Result<TransitionAt> {
        let matrix = self.matrix_at(p)?;
        let det = matrix.det()?;
        Ok(TransitionAt {
            matrix,
            det,
            mu_from: self.from.signed_pivot_at(p)?,
            mu_to: self.to.signed_pivot_at(p)?,
            s: self.from.s,
        })
    }

    /// `(μ_to / μ_from)^s` with signed pivot minors.
    pub fn signed_formula_at(&self, p: &ConfigurationPoint) -> Result<Rational> {
        self.check_domain(p)?;
        let ratio = self.to.signed_pivot_at(p)? / self.from.signed_pivot_at(p)?;
        Ok(crate::exact::pow(&ratio, self.from.s as i64))
    }

    /// `(M_to / M_from)^s` with unsigned pivot minors.
    pub fn unsigned_formula_at(&self, p: &ConfigurationPoint) -> Result<Rational> {
        self.check_domain(p)?;
        let ratio = self.to.pivot_at(p)? / self.from.pivot_at(p)?;
        Ok(crate::exact::pow(&ratio, self.from.s as i64))
    }

    /// See [`sigma_consistency`].
    pub fn sigma_consistent_at(&self, p: &ConfigurationPoint) -> Result<bool> {
        Ok(self.evaluate(p)?.sigma_consistent())
    }

    /// For pivots `S ∪ {a}` and `S ∪ {b}`: with shared coordinates listed
    /// first in a common order, the Jacobian is `[[I, 0], [*, c·I_s]]` with
    /// `c = (−1)^k μ_to / μ_from`, where `k` counts the rows of N strictly
    /// between `a` and `b` that are free in both charts. The sign is the
    /// parity of moving row `b` past those rows; it cancels against the
    /// reordering in the determinant. Returns `None` for non-adjacent pairs.
    pub fn adjacent_block_check(&self, p: &ConfigurationPoint) -> Result<Option<bool>> {
        self.adjacent_block_check_with(&self.evaluate(p)?)
    }

    pub fn adjacent_block_check_with(&self, at: &TransitionAt) -> Result<Option<bool>> {
        let shared = self.from.pivot.iter().filter(|x| self.to.pivot.contains(x)).count();
        if shared + 1 != self.from.r {
            return Ok(None);
        }
        let j = &at.matrix;
        let common: Vec<Var> = self.from.free.iter().copied().filter(|v| self.to.free.contains(v)).collect();
        let row_order: Vec<usize> = common
            .iter()
            .chain(self.to.free.iter().filter(|v| !common.contains(v)))
            .map(|v| self.to.free.iter().position(|w| w == v).unwrap())
            .collect();
        let col_order: Vec<usize> = common
            .iter()
            .chain(self.from.free.iter().filter(|v| !common.contains(v)))
            .map(|v| self.from.free.iter().position(|w| w == v).unwrap())
            .collect();
        let j = j.select(&row_order, &col_order)?;
        let k = common.len();
        let n = j.rows();
        let a = *self.from.pivot.iter().find(|x| !self.to.pivot.contains(x)).unwrap();
        let b = *self.to.pivot.iter().find(|x| !self.from.pivot.contains(x)).unwrap();
        let between =
            (a.min(b) + 1..a.max(b)).filter(|x| !self.from.pivot.contains(x) && !self.to.pivot.contains(x)).count();
        let mut c = at.mu_to.clone() / &at.mu_from;
        if between % 2 == 1 {
            c = -c;
        }
        let ok = (0..k)
            .all(|a| (0..n).all(|b| *j.get(a, b) == if a == b { Rational::one() } else { Rational::zero() }))
            && (k..n).all(|a| (k..n).all(|b| *j.get(a, b) == if a == b { c.clone() } else { Rational::zero() }));
        Ok(Some(ok))
    }
}

/// A transition evaluated at one point of the overlap.
#[derive(Clone, Debug)]
pub struct TransitionAt {
    pub matrix: RatMatrix,
    pub det: Rational,
    /// `ε(T)·M_T` for the source and target charts.
    pub mu_from: Rational,
    pub mu_to: Rational,
    s: usize,
}

impl TransitionAt {
    /// `(μ_to / μ_from)^s`.
    pub fn signed_formula(&self) -> Rational {
        crate::exact::pow(&(self.mu_to.clone() / &self.mu_from), self.s as i64)
    }

    /// `det J · μ_from^s / μ_to^s = 1`.
    pub fn sigma_consistent(&self) -> bool {
        let s = self.s as i64;
        (self.det.clone() * crate::exact::pow(&self.mu_from, s) / crate::exact::pow(&self.mu_to, s)).is_one()
    }
}

/// Chart-to-chart determinant at `p`.
pub fn transition_jacobian_det(from: &ChartMap, to: &ChartMap, p: &ConfigurationPoint) -> Result<Rational> {
    Transition::new(from, to)?.det_at(p)
}

/// Whether `σ_{T₁} = σ_{T₂}` at `p`, with `σ_T = dξ_T / μ_T^s`:
/// `det J · μ_{T₁}^s / μ_{T₂}^s = 1`.
pub fn sigma_consistency(from: &ChartMap, to: &ChartMap, p: &ConfigurationPoint) -> Result<bool> {
    Transition::new(from, to)?.sigma_consistent_at(p)
}

pub fn all_charts(r: usize, s: usize) -> Result<Vec<ChartMap>> {
    subsets(r + s, r).iter().map(|t| chart_solve(r, s, t)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairStatus {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub from: Vec<usize>,
    pub to: Vec<usize>,
    pub status: PairStatus,
    /// Overlap points at which the pair was checked.
    pub witnesses: usize,
    /// `(M_from / M_to)^s` at the first witness.
    pub transition: Option<String>,
    pub witness: Option<ConfigurationPoint>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CartierReport {
    pub r: usize,
    pub s: usize,
    pub pairs: Vec<PairReport>,
}

impl CartierReport {
    pub fn all_pass(&self) -> bool {
        self.pairs.iter().all(|p| p.status == PairStatus::Pass)
    }
}

/// Retry factor for finding overlap points: the pool holds `samples * OVERLAP_POOL_FACTOR` orbit points.
const OVERLAP_POOL_FACTOR: usize = 4;

/// For every ordered pair of pivot subsets, finds up to `samples` orbit
/// points in the overlap and checks there that the transition function
/// `(M_from / M_to)^s` is a nonzero value and that the Jacobian determinant
/// is `(μ_to / μ_from)^s`.
pub fn cartier_cover_report(r: usize, s: usize, samples: usize, seed: u64, bound: u32) -> Result<CartierReport> {
    if samples == 0 {
        return Err(Error::Parameter("need at least one sample".into()));
    }
    let charts = all_charts(r, s)?;
    let pool = orbit_sample(r, s, OmegaMode::WithOmega, seed, samples * OVERLAP_POOL_FACTOR, bound)?;
    let mut pairs = Vec::with_capacity(charts.len() * charts.len());
    for from in &charts {
        for to in &charts {
            let tr = Transition::new(from, to)?;
            let mut witnesses = 0;
            let mut status = PairStatus::Pass;
            let mut first: Option<(ConfigurationPoint, Rational)> = None;
            for p in &pool {
                if witnesses == samples {
                    break;
                }
                let (mf, mt) = (from.pivot_at(p)?, to.pivot_at(p)?);
                if mf.is_zero() || mt.is_zero() {
                    continue;
                }
                witnesses += 1;
                let transition = crate::exact::pow(&(mf / mt), s as i64);
                let at = tr.evaluate(p)?;
                let det_ok = at.det == at.signed_formula();
                if transition.is_zero() || !det_ok {
                    status = PairStatus::Fail;
                    first = Some((p.clone(), transition));
                    break;
                }
                if first.is_none() {
                    first = Some((p.clone(), transition));
                }
            }
            if witnesses == 0 {
                status = PairStatus::Inconclusive;
            }
            pairs.push(PairReport {
                from: from.pivot.clone(),
                to: to.pivot.clone(),
                status,
                witnesses,
                transition: first.as_ref().map(|(_, t)| t.to_string()),
                witness: first.map(|(p, _)| p),
            });
        }
    }
    Ok(CartierReport { r, s, pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn one_one_chart_expressions() {
        let c = chart_solve(1, 1, &[1]).unwrap();
        let n11 = c.solved_expr(Var::N(1, 1)).unwrap();
        assert_eq!(n11.num.to_string(), "-m_1_2*n_2_1");
        assert_eq!(n11.den.to_string(), "m_1_1");
        let omega = c.solved_expr(Var::Omega).unwrap();
        assert_eq!(omega.num.to_string(), "n_2_1");
        assert_eq!(omega.den.to_string(), "m_1_1");
    }

    #[test]
    fn free_coordinate_counts() {
        for (r, s) in [(1, 1), (1, 2), (2, 2), (2, 3)] {
            for c in all_charts(r, s).unwrap() {
                assert_eq!(c.free().len(), r * (r + s) + s * s);
            }
        }
    }

    #[test]
    fn substitution_annihilates_ideal() {
        for (r, s) in [(1, 1), (1, 2), (2, 2)] {
            for c in all_charts(r, s).unwrap() {
                assert!(c.substitution_check().unwrap(), "(r,s)=({r},{s}) T={:?}", c.pivot());
            }
        }
    }

    #[test]
    fn round_trip_through_chart() {
        let pts = orbit_sample(2, 2, OmegaMode::WithOmega, 5, 10, 5).unwrap();
        for c in all_charts(2, 2).unwrap() {
            for p in &pts {
                if c.pivot_at(p).unwrap().is_zero() {
                    continue;
                }
                let back = c.reconstruct(&c.free_coordinates(p).unwrap()).unwrap();
                assert_eq!(&back, p);
            }
        }
    }

    #[test]
    fn identity_transition() {
        let c = chart_solve(2, 2, &[1, 2]).unwrap();
        let p = &orbit_sample(2, 2, OmegaMode::WithOmega, 1, 1, 5).unwrap()[0];
        if !c.pivot_at(p).unwrap().is_zero() {
            assert_eq!(transition_jacobian_det(&c, &c, p).unwrap(), rat(1));
            assert!(sigma_consistency(&c, &c, p).unwrap());
        }
    }

    #[test]
    fn one_one_transition_carries_the_sign() {
        // n11 = -m12 n21 / m11 on U_{1}, so d n11 / d n21 = -m12/m11.
        let c1 = chart_solve(1, 1, &[1]).unwrap();
        let c2 = chart_solve(1, 1, &[2]).unwrap();
        for p in orbit_sample(1, 1, OmegaMode::WithOmega, 9, 20, 5).unwrap() {
            let (m11, m12) = (p.m().get(0, 0).clone(), p.m().get(0, 1).clone());
            if m11.is_zero() || m12.is_zero() {
                continue;
            }
            let det = transition_jacobian_det(&c1, &c2, &p).unwrap();
            assert_eq!(det, -(m12.clone() / m11.clone()));
            let tr = Transition::new(&c1, &c2).unwrap();
            assert_eq!(tr.signed_formula_at(&p).unwrap(), det);
            assert_eq!(tr.unsigned_formula_at(&p).unwrap(), -det);
            assert!(sigma_consistency(&c1, &c2, &p).unwrap());
        }
    }

    #[test]
    fn adjacent_pair_block_shape() {
        let c1 = chart_solve(2, 2, &[1, 2]).unwrap();
        let c2 = chart_solve(2, 2, &[2, 3]).unwrap();
        let tr = Transition::new(&c1, &c2).unwrap();
        let mut lower_left_nonzero = false;
        for p in orbit_sample(2, 2, OmegaMode::WithOmega, 2, 10, 5).unwrap() {
            if c1.pivot_at(&p).unwrap().is_zero() || c2.pivot_at(&p).unwrap().is_zero() {
                continue;
            }
            assert_eq!(tr.adjacent_block_check(&p).unwrap(), Some(true));
            let j = tr.matrix_at(&p).unwrap();
            // rows of N solved on U_{12} depend on the entries of M, so the
            // lower-left block is generally nonzero
            lower_left_nonzero |= (0..8).any(|b| !j.get(8, b).is_zero());
        }
        assert!(lower_left_nonzero);
        let far = chart_solve(2, 2, &[3, 4]).unwrap();
        let tr = Transition::new(&c1, &far).unwrap();
        let p = base_point_like(&c1, &far);
        assert_eq!(tr.adjacent_block_check(&p).unwrap(), None);
    }

    fn base_point_like(a: &ChartMap, b: &ChartMap) -> ConfigurationPoint {
        orbit_sample(2, 2, OmegaMode::WithOmega, 77, 20, 5)
            .unwrap()
            .into_iter()
            .find(|p| !a.pivot_at(p).unwrap().is_zero() && !b.pivot_at(p).unwrap().is_zero())
            .unwrap()
    }

    #[test]
    fn chart_domain_error() {
        let c1 = chart_solve(2, 2, &[1, 2]).unwrap();
        let c2 = chart_solve(2, 2, &[3, 4]).unwrap();
        let v = crate::group::base_point(2, 2, OmegaMode::WithOmega).unwrap();
        assert!(matches!(transition_jacobian_det(&c1, &c2, &v), Err(Error::ChartDomain(_))));
    }

    #[test]
    fn invalid_pivot_is_rejected() {
        assert!(chart_solve(2, 2, &[2, 1]).is_err());
        assert!(chart_solve(2, 2, &[1, 5]).is_err());
        assert!(chart_solve(2, 2, &[1]).is_err());
    }

    #[test]
    fn cartier_one_one() {
        let rep = cartier_cover_report(1, 1, 5, 3, 5).unwrap();
        assert_eq!(rep.pairs.len(), 4);
        assert!(rep.all_pass());
        let diag = rep.pairs.iter().find(|p| p.from == p.to).unwrap();
        assert_eq!(diag.transition.as_deref(), Some("1"));
    }
}
