//! Defining equations of `Cr(r, r+s, s)`, their evaluation and Jacobian rank,
//! and the stratification of points of the variety.
//!
//! The ideal has two families of generators:
//!
//! * `Bilinear(i, j)`: entry `(i, j)` of the symbolic product `MN`;
//! * `MinorMatch(T)` for each `r`-subset `T ⊆ {1..t}`:
//!   `ω·M_T − ε(T)·N_{T̂}`, where `M_T` is the maximal minor of M on columns
//!   `T`, `N_{T̂}` the maximal minor of N on the complementary rows, and
//!   `ε(T) = (−1)^{ΣT + r(r+1)/2}`.
//!
//! The sign `ε(T)` is the one for which the base point `(I | 0, 0 / I, 1)`
//! and its whole orbit satisfy every generator.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{RatMatrix, Rational};
use crate::point::ConfigurationPoint;
use crate::poly::{MinorCache, MultiPoly, PolyMatrix, VarTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OmegaMode {
    WithOmega,
    OmegaLess,
}

impl OmegaMode {
    pub fn has_omega(self) -> bool {
        self == OmegaMode::WithOmega
    }
}

impl fmt::Display for OmegaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OmegaMode::WithOmega => "with-omega",
            OmegaMode::OmegaLess => "omega-less",
        })
    }
}

pub fn check_params(r: usize, s: usize) -> Result<()> {
    if r == 0 {
        return Err(Error::Parameter("r must be at least 1".into()));
    }
    if r > s {
        return Err(Error::Parameter(format!("need r <= s, got r={r}, s={s}")));
    }
    Ok(())
}

/// All `k`-subsets of `{1..n}` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            if n - x + 1 < k - cur.len() {
                break;
            }
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

pub fn complement(subset: &[usize], n: usize) -> Vec<usize> {
    (1..=n).filter(|x| !subset.contains(x)).collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Exponent `ΣT + r(r+1)/2` of the minor-matching sign for the 1-based subset `T`.
pub fn sign_exponent(subset: &[usize]) -> usize {
    let r = subset.len();
    subset.iter().sum::<usize>() + r * (r + 1) / 2
}

/// `ε(T) = ±1`.
pub fn subset_sign(subset: &[usize]) -> i64 {
    if sign_exponent(subset).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorLabel {
    /// Entry `(row, col)` of `MN`, 1-based.
    Bilinear { row: usize, col: usize },
    /// Minor matching for the 1-based column subset of M.
    MinorMatch { subset: Vec<usize> },
}

impl fmt::Display for GeneratorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorLabel::Bilinear { row, col } => write!(f, "bilinear({row},{col})"),
            GeneratorLabel::MinorMatch { subset } => {
                let parts: Vec<String> = subset.iter().map(ToString::to_string).collect();
                write!(f, "minor_match{{{}}}", parts.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub label: GeneratorLabel,
    pub poly: MultiPoly,
    /// `ΣT + r(r+1)/2` for minor-matching generators.
    pub sign_exponent: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct CramerIdeal {
    r: usize,
    s: usize,
    mode: OmegaMode,
    table: Arc<VarTable>,
    generators: Vec<Generator>,
}

/// Generators of `Cr(r, r+s, s)`: `r·s` bilinear ones then `C(t, r)`
/// minor-matching ones, the latter in lexicographic order of `T`.
pub fn generate_ideal(r: usize, s: usize, mode: OmegaMode) -> Result<CramerIdeal> {
    check_params(r, s)?;
    let t = r + s;
    let table = VarTable::cramer(r, s, mode.has_omega(), false);
    let m = PolyMatrix::symbolic_m(&table, r, t)?;
    let n = PolyMatrix::symbolic_n(&table, t, s)?;
    let mn = m.mul(&n)?;

    let mut generators = Vec::with_capacity(r * s + binomial(t, r));
    for i in 0..r {
        for j in 0..s {
            generators.push(Generator {
                label: GeneratorLabel::Bilinear { row: i + 1, col: j + 1 },
                poly: mn.get(i, j).clone(),
                sign_exponent: None,
            });
        }
    }

    // N_{T̂} is a minor of the transpose on a fixed row set, so both families
    // go through one memoized cache each.
    let n_t = PolyMatrix::from_fn(s, t, |i, j| n.get(j, i).clone());
    let all_m_rows: Vec<usize> = (0..r).collect();
    let all_n_cols: Vec<usize> = (0..s).collect();
    let mut m_minors = MinorCache::new(&m, &all_m_rows)?;
    let mut n_minors = MinorCache::new(&n_t, &all_n_cols)?;
    let omega =
        if mode.has_omega() { MultiPoly::var(&table, crate::poly::Var::Omega)? } else { MultiPoly::one(&table) };

    for subset in subsets(t, r) {
        let cols: Vec<usize> = subset.iter().map(|c| c - 1).collect();
        let rows: Vec<usize> = complement(&subset, t).iter().map(|c| c - 1).collect();
        let m_minor = m_minors.minor(&cols)?;
        let n_minor = n_minors.minor(&rows)?;
        let sign = Rational::from_integer(subset_sign(&subset).into());
        let poly = &(&omega * &m_minor) - &n_minor.scale(&sign);
        generators.push(Generator {
            sign_exponent: Some(sign_exponent(&subset)),
            label: GeneratorLabel::MinorMatch { subset },
            poly,
        });
    }

    Ok(CramerIdeal { r, s, mode, table, generators })
}

impl CramerIdeal {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.r + self.s
    }

    pub fn mode(&self) -> OmegaMode {
        self.mode
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn polys(&self) -> impl Iterator<Item = &MultiPoly> {
        self.generators.iter().map(|g| &g.poly)
    }

    pub fn ambient_dim(&self) -> usize {
        self.table.len()
    }

    /// `ts + 1 − s² = rs + 1`, the codimension of the open orbit.
    pub fn expected_codim(&self) -> usize {
        self.r * self.s + 1
    }

    fn check_point(&self, p: &ConfigurationPoint) -> Result<Vec<Rational>> {
        if p.r() != self.r || p.s() != self.s {
            return Err(Error::Dimension(format!(
                "point is for (r,s)=({},{}), ideal for ({},{})",
                p.r(),
                p.s(),
                self.r,
                self.s
            )));
        }
        p.coordinates(&self.table)
    }

    /// Values of all generators at `p`, in generator order.
    pub fn evaluate(&self, p: &ConfigurationPoint) -> Result<Vec<Rational>> {
        let values = self.check_point(p)?;
        self.polys().map(|g| g.eval(&values)).collect()
    }

    pub fn vanishes_at(&self, p: &ConfigurationPoint) -> Result<bool> {
        Ok(self.evaluate(p)?.iter().all(Zero::is_zero))
    }

    /// First generator that does not vanish at `p`, if any.
    pub fn first_nonzero(&self, p: &ConfigurationPoint) -> Result<Option<&GeneratorLabel>> {
        let vals = self.evaluate(p)?;
        Ok(vals.iter().zip(&self.generators).find(|(v, _)| !v.is_zero()).map(|(_, g)| &g.label))
    }

    pub fn jacobian(&self) -> Jacobian {
        let partials = self.polys().map(|g| (0..self.table.len()).map(|k| g.partial_index(k)).collect()).collect();
        Jacobian { table: Arc::clone(&self.table), partials }
    }

    /// Exact rank of the Jacobian matrix at a point of the variety.
    pub fn jacobian_rank_at(&self, p: &ConfigurationPoint) -> Result<usize> {
        self.jacobian().rank_at_point(self, p)
    }
}

/// Matrix of formal partial derivatives (generators x variables).
#[derive(Clone, Debug)]
pub struct Jacobian {
    table: Arc<VarTable>,
    partials: Vec<Vec<MultiPoly>>,
}

impl Jacobian {
    pub fn eval(&self, values: &[Rational]) -> Result<RatMatrix> {
        let rows = self.partials.len();
        let cols = self.table.len();
        let mut entries = Vec::with_capacity(rows * cols);
        for row in &self.partials {
            for p in row {
                entries.push(p.eval(values)?);
            }
        }
        RatMatrix::new(rows, cols, entries)
    }

    /// Rank at `p` after checking that `p` lies on `ideal`.
    pub fn rank_at_point(&self, ideal: &CramerIdeal, p: &ConfigurationPoint) -> Result<usize> {
        if let Some(label) = ideal.first_nonzero(p)? {
            return Err(Error::NotOnVariety(label.to_string()));
        }
        Ok(self.eval(&p.coordinates(&self.table)?)?.rank())
    }
}

/// Position of a point relative to the orbit stratification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Stratum {
    /// rank M = r, rank N = s, ω ≠ 0.
    OpenOrbit,
    /// rank M = r, rank N = s − 1, ω = 0.
    DivisorV1,
    /// rank M = r, rank N ≤ s − 2, ω = 0.
    Case1HigherCodim,
    /// rank M < r, ω ≠ 0.
    Case2,
    /// rank M < r, ω = 0.
    Case3,
    OffVariety,
}

/// Stratum of `p`. Points of the ω-less ambient space count as `ω ≠ 0`.
pub fn classify(p: &ConfigurationPoint, ideal: &CramerIdeal) -> Result<Stratum> {
    if !ideal.vanishes_at(p)? {
        return Ok(Stratum::OffVariety);
    }
    let full_m = p.m().rank() == ideal.r;
    let rank_n = p.n().rank();
    let omega_zero = p.omega().is_some_and(Zero::is_zero);
    Ok(match (full_m, omega_zero) {
        (true, false) => {
            // some M_T is nonzero, so the matching N-minor is too
            debug_assert_eq!(rank_n, ideal.s);
            Stratum::OpenOrbit
        }
        (true, true) if rank_n + 1 == ideal.s => Stratum::DivisorV1,
        (true, true) => Stratum::Case1HigherCodim,
        (false, false) => Stratum::Case2,
        (false, true) => Stratum::Case3,
    })
}

/// The point `M = (I_r | 0)`, `N` zero except `I_{s−1}` in rows `r+2..t`,
/// columns `1..s−1`, and `ω = 0`.
pub fn divisor_representative(r: usize, s: usize) -> Result<ConfigurationPoint> {
    check_params(r, s)?;
    let t = r + s;
    let m = RatMatrix::from_fn(r, t, |i, j| if i == j { Rational::one() } else { Rational::zero() });
    let n = RatMatrix::from_fn(t, s, |i, j| if i > r && i - (r + 1) == j { Rational::one() } else { Rational::zero() });
    ConfigurationPoint::new(m, n, Some(Rational::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::group::base_point;

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 1), vec![vec![1], vec![2], vec![3]]);
        assert_eq!(subsets(5, 2)[0], vec![1, 2]);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(complement(&[2, 4], 5), vec![1, 3, 5]);
    }

    #[test]
    fn parameters_are_validated() {
        assert!(matches!(generate_ideal(3, 2, OmegaMode::WithOmega), Err(Error::Parameter(_))));
        assert!(matches!(generate_ideal(0, 2, OmegaMode::WithOmega), Err(Error::Parameter(_))));
    }

    #[test]
    fn ideal_for_one_one() {
        let ideal = generate_ideal(1, 1, OmegaMode::WithOmega).unwrap();
        let shown: Vec<String> = ideal.polys().map(ToString::to_string).collect();
        assert_eq!(shown, ["m_1_1*n_1_1 + m_1_2*n_2_1", "m_1_1*omega - n_2_1", "m_1_2*omega + n_1_1"]);
        let labels: Vec<String> = ideal.generators().iter().map(|g| g.label.to_string()).collect();
        assert_eq!(labels, ["bilinear(1,1)", "minor_match{1}", "minor_match{2}"]);
    }

    #[test]
    fn omega_less_two_two_structure() {
        let ideal = generate_ideal(2, 2, OmegaMode::OmegaLess).unwrap();
        assert_eq!(ideal.generators().len(), 10);
        assert_eq!(ideal.ambient_dim(), 16);
        assert!(ideal.polys().all(|g| g.num_terms() == 4 && g.is_homogeneous(2)));
    }

    #[test]
    fn generator_shapes() {
        for (r, s) in [(1, 1), (1, 2), (2, 2), (2, 3), (1, 3)] {
            let ideal = generate_ideal(r, s, OmegaMode::WithOmega).unwrap();
            assert_eq!(ideal.generators().len(), r * s + binomial(r + s, r));
            for g in ideal.generators() {
                match &g.label {
                    GeneratorLabel::Bilinear { .. } => {
                        assert_eq!(g.poly.num_terms(), r + s);
                        assert!(g.poly.is_homogeneous(2));
                    }
                    GeneratorLabel::MinorMatch { .. } => {
                        let fact = |n: usize| (1..=n).product::<usize>();
                        assert_eq!(g.poly.num_terms(), fact(r) + fact(s));
                        assert_eq!(g.poly.total_degree() as usize, (r + 1).max(s));
                    }
                }
            }
        }
    }

    #[test]
    fn base_point_and_divisor_lie_on_variety() {
        for (r, s) in [(1, 1), (1, 2), (2, 2), (2, 3)] {
            let ideal = generate_ideal(r, s, OmegaMode::WithOmega).unwrap();
            let v = base_point(r, s, OmegaMode::WithOmega).unwrap();
            assert!(ideal.vanishes_at(&v).unwrap());
            assert_eq!(classify(&v, &ideal).unwrap(), Stratum::OpenOrbit);
            let d = divisor_representative(r, s).unwrap();
            assert!(ideal.evaluate(&d).unwrap().iter().all(Zero::is_zero));
            assert_eq!(classify(&d, &ideal).unwrap(), Stratum::DivisorV1);
        }
    }

    #[test]
    fn divisor_representative_shapes() {
        let d = divisor_representative(1, 1).unwrap();
        assert_eq!(d.m(), &RatMatrix::from_i64(&[&[1, 0]]));
        assert!(d.n().is_zero());
        assert_eq!(d.omega(), Some(&rat(0)));
        let d = divisor_representative(2, 2).unwrap();
        assert_eq!(d.n(), &RatMatrix::from_i64(&[&[0, 0], &[0, 0], &[0, 0], &[1, 0]]));
    }

    #[test]
    fn off_variety_point_is_detected() {
        let ideal = generate_ideal(1, 1, OmegaMode::WithOmega).unwrap();
        let v = base_point(1, 1, OmegaMode::WithOmega).unwrap();
        let p = ConfigurationPoint::new(v.m().clone(), v.n().clone(), Some(rat(2))).unwrap();
        let vals = ideal.evaluate(&p).unwrap();
        assert_eq!(vals, vec![rat(0), rat(1), rat(0)]);
        assert_eq!(classify(&p, &ideal).unwrap(), Stratum::OffVariety);
        assert!(matches!(ideal.jacobian_rank_at(&p), Err(Error::NotOnVariety(_))));
    }

    #[test]
    fn boundary_cases() {
        let ideal = generate_ideal(2, 2, OmegaMode::WithOmega).unwrap();
        let zero = ConfigurationPoint::new(RatMatrix::zeros(2, 4), RatMatrix::zeros(4, 2), Some(rat(0))).unwrap();
        assert_eq!(classify(&zero, &ideal).unwrap(), Stratum::Case3);
        // rank M = 1, N = 0, ω = 3
        let m = RatMatrix::from_i64(&[&[1, 0, 0, 0], &[0, 0, 0, 0]]);
        let p = ConfigurationPoint::new(m, RatMatrix::zeros(4, 2), Some(rat(3))).unwrap();
        assert_eq!(classify(&p, &ideal).unwrap(), Stratum::Case2);
        // rank M = 2, N = 0, ω = 0
        let m = RatMatrix::from_i64(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let p = ConfigurationPoint::new(m, RatMatrix::zeros(4, 2), Some(rat(0))).unwrap();
        assert_eq!(classify(&p, &ideal).unwrap(), Stratum::Case1HigherCodim);
    }

    #[test]
    fn jacobian_rank_at_base_point() {
        let expected = [((1, 1), 2), ((1, 2), 3), ((2, 2), 5), ((2, 3), 7)];
        for ((r, s), rank) in expected {
            let ideal = generate_ideal(r, s, OmegaMode::WithOmega).unwrap();
            let v = base_point(r, s, OmegaMode::WithOmega).unwrap();
            assert_eq!(ideal.jacobian_rank_at(&v).unwrap(), rank, "(r,s)=({r},{s})");
            assert_eq!(ideal.ambient_dim() - rank, r * r + r * s + s * s);
        }
        let ideal = generate_ideal(2, 2, OmegaMode::OmegaLess).unwrap();
        let v = base_point(2, 2, OmegaMode::OmegaLess).unwrap();
        assert_eq!(ideal.jacobian_rank_at(&v).unwrap(), 5);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let ideal = generate_ideal(1, 1, OmegaMode::WithOmega).unwrap();
        let v = base_point(2, 2, OmegaMode::WithOmega).unwrap();
        assert!(matches!(ideal.evaluate(&v), Err(Error::Dimension(_))));
    }
}
