//! The action of `G = GL(r) × GL(t) × GL(s)` on `(M, N, ω)`:
//! `M ↦ A M B⁻¹`, `N ↦ B N C⁻¹`, `ω ↦ λ ω` with `λ = det B / (det A · det C)`.

use num_traits::{One, Zero};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{pow, random_invertible_with, RatMatrix, Rational};
use crate::point::ConfigurationPoint;
use crate::poly::{MultiPoly, PolyMatrix, Var, VarTable};
use crate::variety::{check_params, classify, generate_ideal, CramerIdeal, OmegaMode, Stratum};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    a: RatMatrix,
    b: RatMatrix,
    c: RatMatrix,
}

impl GroupElement {
    pub fn new(a: RatMatrix, b: RatMatrix, c: RatMatrix) -> Result<Self> {
        if b.rows() != a.rows() + c.rows() {
            return Err(Error::Dimension(format!(
                "B is {}x{} but r + s = {}",
                b.rows(),
                b.cols(),
                a.rows() + c.rows()
            )));
        }
        for m in [&a, &b, &c] {
            if m.det()?.is_zero() {
                return Err(Error::Singular);
            }
        }
        Ok(GroupElement { a, b, c })
    }

    pub fn identity(r: usize, s: usize) -> Self {
        GroupElement { a: RatMatrix::identity(r), b: RatMatrix::identity(r + s), c: RatMatrix::identity(s) }
    }

    /// Torus element `(diag(a), diag(b), diag(c))`.
    pub fn diagonal(a: &[Rational], b: &[Rational], c: &[Rational]) -> Result<Self> {
        Self::new(RatMatrix::diagonal(a), RatMatrix::diagonal(b), RatMatrix::diagonal(c))
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, r: usize, s: usize, bound: u32) -> Result<Self> {
        Ok(GroupElement {
            a: random_invertible_with(rng, r, bound)?,
            b: random_invertible_with(rng, r + s, bound)?,
            c: random_invertible_with(rng, s, bound)?,
        })
    }

    pub fn a(&self) -> &RatMatrix {
        &self.a
    }

    pub fn b(&self) -> &RatMatrix {
        &self.b
    }

    pub fn c(&self) -> &RatMatrix {
        &self.c
    }

    pub fn r(&self) -> usize {
        self.a.rows()
    }

    pub fn s(&self) -> usize {
        self.c.rows()
    }

    /// `λ = det B / (det A · det C)`, the scalar by which ω is multiplied.
    pub fn lambda(&self) -> Rational {
        let da = self.a.det().expect("square");
        let db = self.b.det().expect("square");
        let dc = self.c.det().expect("square");
        db / (da * dc)
    }

    /// Componentwise product `(AA', BB', CC')`.
    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement> {
        Ok(GroupElement { a: self.a.mul(&other.a)?, b: self.b.mul(&other.b)?, c: self.c.mul(&other.c)? })
    }

    /// Rescales the first row of A so that `λ = 1`; such elements preserve
    /// the ω-less variety.
    pub fn normalized_lambda(&self) -> GroupElement {
        let lambda = self.lambda();
        let mut a = self.a.clone();
        for j in 0..a.cols() {
            let v = a.get(0, j) * &lambda;
            a.set(0, j, v);
        }
        GroupElement { a, b: self.b.clone(), c: self.c.clone() }
    }
}

/// `g · p`. The ω coordinate, when present, is multiplied by `λ(g)`.
pub fn act(g: &GroupElement, p: &ConfigurationPoint) -> Result<ConfigurationPoint> {
    if g.r() != p.r() || g.s() != p.s() {
        return Err(Error::Dimension(format!(
            "group element for (r,s)=({},{}) acting on a point for ({},{})",
            g.r(),
            g.s(),
            p.r(),
            p.s()
        )));
    }
    let b_inv = g.b.inverse()?;
    let c_inv = g.c.inverse()?;
    let m = g.a.mul(p.m())?.mul(&b_inv)?;
    let n = g.b.mul(p.n())?.mul(&c_inv)?;
    let omega = p.omega().map(|w| w * g.lambda());
    ConfigurationPoint::new(m, n, omega)
}

/// `v = ((I_r | 0), (0 / I_s), 1)`; ω is omitted in the ω-less mode.
pub fn base_point(r: usize, s: usize, mode: OmegaMode) -> Result<ConfigurationPoint> {
    check_params(r, s)?;
    let t = r + s;
    let unit = |cond: bool| if cond { Rational::one() } else { Rational::zero() };
    let m = RatMatrix::from_fn(r, t, |i, j| unit(i == j));
    let n = RatMatrix::from_fn(t, s, |i, j| unit(i >= r && i - r == j));
    let omega = mode.has_omega().then(Rational::one);
    ConfigurationPoint::new(m, n, omega)
}

/// Block test: `B = [[A, 0], [*, C]]`.
pub fn stabilizer_structural(g: &GroupElement) -> bool {
    let (r, s) = (g.r(), g.s());
    let t = r + s;
    (0..r).all(|i| (0..r).all(|j| g.b.get(i, j) == g.a.get(i, j)) && (r..t).all(|j| g.b.get(i, j).is_zero()))
        && (0..s).all(|i| (0..s).all(|j| g.b.get(r + i, r + j) == g.c.get(i, j)))
}

/// Fixed-point test: `g · v = v`.
pub fn stabilizer_dynamic(g: &GroupElement) -> Result<bool> {
    let v = base_point(g.r(), g.s(), OmegaMode::WithOmega)?;
    Ok(act(g, &v)? == v)
}

/// Membership in `H = Stab(v)`; the structural and fixed-point tests must agree.
pub fn is_in_stabilizer(g: &GroupElement) -> Result<bool> {
    let dynamic = stabilizer_dynamic(g)?;
    debug_assert_eq!(dynamic, stabilizer_structural(g));
    Ok(dynamic)
}

/// Independent random group elements, one sub-seed per sample drawn from `seed`.
pub fn random_elements(r: usize, s: usize, seed: u64, count: usize, bound: u32) -> Result<Vec<GroupElement>> {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let seeds: Vec<u64> = (0..count).map(|_| master.next_u64()).collect();
    seeds.into_par_iter().map(|sub| GroupElement::random(&mut ChaCha8Rng::seed_from_u64(sub), r, s, bound)).collect()
}

/// `count` points `g_i · v` for seeded random `g_i`, each checked against the ideal.
/// In the ω-less mode the elements are normalized to `λ = 1`.
pub fn orbit_sample(
    r: usize,
    s: usize,
    mode: OmegaMode,
    seed: u64,
    count: usize,
    bound: u32,
) -> Result<Vec<ConfigurationPoint>> {
    if count == 0 {
        return Err(Error::Parameter("sample count must be at least 1".into()));
    }
    let ideal = generate_ideal(r, s, mode)?;
    let v = base_point(r, s, mode)?;
    let elements = random_elements(r, s, seed, count, bound)?;
    elements
        .into_par_iter()
        .map(|g| {
            let g = if mode.has_omega() { g } else { g.normalized_lambda() };
            let p = act(&g, &v)?;
            if let Some(label) = ideal.first_nonzero(&p)? {
                return Err(Error::NotOnVariety(label.to_string()));
            }
            Ok(p)
        })
        .collect()
}

/// `dim G − dim H = (r² + t² + s²) − (r² + rs + s²)`.
pub fn orbit_dimension(r: usize, s: usize) -> usize {
    let t = r + s;
    let dim_g = r * r + t * t + s * s;
    let dim_h = r * r + r * s + s * s;
    let d = dim_g - dim_h;
    assert_eq!(d, r * t + s * s);
    d
}

/// Diagonal one-parameter subgroup `t ↦ (diag t^α, diag t^β, diag t^γ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneParamSubgroup {
    pub a_exps: Vec<i64>,
    pub b_exps: Vec<i64>,
    pub c_exps: Vec<i64>,
}

impl OneParamSubgroup {
    /// `T_A = I`, `T_B = diag(1, …, 1, t, 1, …, 1)` with `t` in slot `r+1`, `T_C = I`.
    pub fn degenerating(r: usize, s: usize) -> Self {
        let mut b_exps = vec![0; r + s];
        b_exps[r] = 1;
        OneParamSubgroup { a_exps: vec![0; r], b_exps, c_exps: vec![0; s] }
    }

    /// The group element at a nonzero value of the parameter.
    pub fn at(&self, t: &Rational) -> Result<GroupElement> {
        let d = |e: &[i64]| e.iter().map(|&k| pow(t, k)).collect::<Vec<_>>();
        GroupElement::diagonal(&d(&self.a_exps), &d(&self.b_exps), &d(&self.c_exps))
    }
}

/// A point whose coordinates are polynomials in the deformation parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct OneParamPoint {
    pub m: PolyMatrix,
    pub n: PolyMatrix,
    pub omega: Option<MultiPoly>,
}

fn scaled_power(
    table: &std::sync::Arc<VarTable>,
    value: &Rational,
    exp: i64,
    name: impl FnOnce() -> String,
) -> Result<MultiPoly> {
    if value.is_zero() {
        return Ok(MultiPoly::zero(table));
    }
    if exp < 0 {
        return Err(Error::LimitDoesNotExist(name()));
    }
    let t = MultiPoly::var(table, Var::Param)?;
    Ok(t.pow(exp as u32).scale(value))
}

impl OneParamPoint {
    /// `P(t) · p`, coordinate by coordinate: `m_{ij}` picks up `t^{α_i − β_j}`,
    /// `n_{ij}` picks up `t^{β_i − γ_j}`, ω picks up `t^{Σβ − Σα − Σγ}`.
    pub fn new(ps: &OneParamSubgroup, p: &ConfigurationPoint) -> Result<Self> {
        let table = VarTable::param_only();
        let (r, s, t) = (p.r(), p.s(), p.t());
        if ps.a_exps.len() != r || ps.b_exps.len() != t || ps.c_exps.len() != s {
            return Err(Error::Dimension("one-parameter subgroup size".into()));
        }
        let mut m = Vec::with_capacity(r * t);
        for i in 0..r {
            for j in 0..t {
                let e = ps.a_exps[i] - ps.b_exps[j];
                m.push(scaled_power(&table, p.m().get(i, j), e, || Var::M(i + 1, j + 1).to_string())?);
            }
        }
        let mut n = Vec::with_capacity(t * s);
        for i in 0..t {
            for j in 0..s {
                let e = ps.b_exps[i] - ps.c_exps[j];
                n.push(scaled_power(&table, p.n().get(i, j), e, || Var::N(i + 1, j + 1).to_string())?);
            }
        }
        let omega_exp = ps.b_exps.iter().sum::<i64>() - ps.a_exps.iter().sum::<i64>() - ps.c_exps.iter().sum::<i64>();
        let omega = p.omega().map(|w| scaled_power(&table, w, omega_exp, || "omega".to_string())).transpose()?;
        let mut m_iter = m.into_iter();
        let mut n_iter = n.into_iter();
        Ok(OneParamPoint {
            m: PolyMatrix::from_fn(r, t, |_, _| m_iter.next().unwrap()),
            n: PolyMatrix::from_fn(t, s, |_, _| n_iter.next().unwrap()),
            omega,
        })
    }

    /// Specializes the parameter.
    pub fn at(&self, t: &Rational) -> Result<ConfigurationPoint> {
        let vals = [t.clone()];
        ConfigurationPoint::new(
            self.m.eval(&vals)?,
            self.n.eval(&vals)?,
            self.omega.as_ref().map(|w| w.eval(&vals)).transpose()?,
        )
    }

    pub fn limit(&self) -> Result<ConfigurationPoint> {
        self.at(&Rational::zero())
    }

    /// Substitutes the path into every generator; each result is a polynomial in t.
    pub fn substitute_into(&self, ideal: &CramerIdeal) -> Result<Vec<MultiPoly>> {
        let target = self.m.get(0, 0).table().clone();
        let images: Vec<MultiPoly> = ideal
            .table()
            .vars()
            .iter()
            .map(|&v| match v {
                Var::M(i, j) => Ok(self.m.get(i - 1, j - 1).clone()),
                Var::N(i, j) => Ok(self.n.get(i - 1, j - 1).clone()),
                Var::Omega => self.omega.clone().ok_or_else(|| Error::Dimension("path has no omega".into())),
                other => Err(Error::UnknownVariable(other.to_string())),
            })
            .collect::<Result<_>>()?;
        ideal.polys().map(|g| g.compose(&images, &target)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct OneParamLimit {
    pub path: OneParamPoint,
    pub limit: ConfigurationPoint,
    pub stratum: Stratum,
}

/// Degenerates `v` along [`OneParamSubgroup::degenerating`] and classifies the `t → 0` limit.
pub fn one_param_limit(r: usize, s: usize) -> Result<OneParamLimit> {
    let ideal = generate_ideal(r, s, OmegaMode::WithOmega)?;
    let v = base_point(r, s, OmegaMode::WithOmega)?;
    let path = OneParamPoint::new(&OneParamSubgroup::degenerating(r, s), &v)?;
    let limit = path.limit()?;
    let stratum = classify(&limit, &ideal)?;
    Ok(OneParamLimit { path, limit, stratum })
}

/// A permutation of `{0..n-1}` given by its images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::Parameter(format!("{images:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(a, b);
        Permutation(v)
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Self {
        let mut v: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            v.swap(i, j);
        }
        Permutation(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn sign(&self) -> i64 {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut sign = 1;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = self.0[k];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    /// The matrix sending `e_i` to `e_{σ(i)}`.
    pub fn matrix(&self) -> RatMatrix {
        RatMatrix::from_fn(
            self.len(),
            self.len(),
            |i, j| {
                if self.0[j] == i {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            },
        )
    }
}

/// Weyl group element `(σ_r, σ_t, σ_s)` of `S_r × S_t × S_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub rows_m: Permutation,
    pub middle: Permutation,
    pub cols_n: Permutation,
}

impl WeylElement {
    pub fn as_group_element(&self) -> Result<GroupElement> {
        GroupElement::new(self.rows_m.matrix(), self.middle.matrix(), self.cols_n.matrix())
    }
}

/// Permutes rows of M by `σ_r`, columns of M and rows of N by `σ_t`, columns
/// of N by `σ_s`, and multiplies ω by `sgn σ_t · sgn σ_r · sgn σ_s`.
pub fn weyl_act(w: &WeylElement, p: &ConfigurationPoint) -> Result<ConfigurationPoint> {
    let (r, s, t) = (p.r(), p.s(), p.t());
    if w.rows_m.len() != r || w.middle.len() != t || w.cols_n.len() != s {
        return Err(Error::Dimension(format!(
            "permutations of sizes ({}, {}, {}) for (r,t,s)=({r},{t},{s})",
            w.rows_m.len(),
            w.middle.len(),
            w.cols_n.len()
        )));
    }
    let mut m = RatMatrix::zeros(r, t);
    for i in 0..r {
        for j in 0..t {
            m.set(w.rows_m.image(i), w.middle.image(j), p.m().get(i, j).clone());
        }
    }
    let mut n = RatMatrix::zeros(t, s);
    for i in 0..t {
        for j in 0..s {
            n.set(w.middle.image(i), w.cols_n.image(j), p.n().get(i, j).clone());
        }
    }
    let sign = w.middle.sign() * w.rows_m.sign() * w.cols_n.sign();
    let omega = p.omega().map(|x| x * Rational::from_integer(sign.into()));
    ConfigurationPoint::new(m, n, omega)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_frac};

    #[test]
    fn base_points() {
        let v = base_point(1, 1, OmegaMode::WithOmega).unwrap();
        assert_eq!(v.m(), &RatMatrix::from_i64(&[&[1, 0]]));
        assert_eq!(v.n(), &RatMatrix::from_i64(&[&[0], &[1]]));
        assert_eq!(v.omega(), Some(&rat(1)));
        let v = base_point(2, 2, OmegaMode::WithOmega).unwrap();
        assert_eq!(v.m(), &RatMatrix::from_i64(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]));
        assert_eq!(v.n(), &RatMatrix::from_i64(&[&[0, 0], &[0, 0], &[1, 0], &[0, 1]]));
        assert_eq!(base_point(2, 2, OmegaMode::OmegaLess).unwrap().omega(), None);
    }

    #[test]
    fn identity_acts_trivially() {
        let v = base_point(2, 3, OmegaMode::WithOmega).unwrap();
        let e = GroupElement::identity(2, 3);
        assert_eq!(e.lambda(), rat(1));
        assert_eq!(act(&e, &v).unwrap(), v);
    }

    #[test]
    fn scalar_a_halves_omega_powers() {
        for r in 1..=2 {
            let s = 2;
            let v = base_point(r, s, OmegaMode::WithOmega).unwrap();
            let two = RatMatrix::identity(r).scale(&rat(2));
            let g = GroupElement::new(two, RatMatrix::identity(r + s), RatMatrix::identity(s)).unwrap();
            let p = act(&g, &v).unwrap();
            assert_eq!(p.m(), &v.m().scale(&rat(2)));
            assert_eq!(p.omega(), Some(&pow(&rat(2), -(r as i64))));
        }
    }

    #[test]
    fn singular_elements_are_rejected() {
        let z = RatMatrix::zeros(1, 1);
        assert_eq!(GroupElement::new(z, RatMatrix::identity(2), RatMatrix::identity(1)), Err(Error::Singular));
    }

    #[test]
    fn stabilizer_examples() {
        let (r, s) = (2, 2);
        assert!(is_in_stabilizer(&GroupElement::identity(r, s)).unwrap());
        let a = RatMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let c = RatMatrix::from_i64(&[&[1, 3], &[0, -1]]);
        let b = RatMatrix::from_i64(&[&[2, 1, 0, 0], &[1, 1, 0, 0], &[5, -2, 1, 3], &[7, 4, 0, -1]]);
        let g = GroupElement::new(a, b, c).unwrap();
        assert!(stabilizer_structural(&g));
        assert!(is_in_stabilizer(&g).unwrap());
        let swap = Permutation::transposition(4, 0, 3).matrix();
        let g = GroupElement::new(RatMatrix::identity(2), swap, RatMatrix::identity(2)).unwrap();
        assert!(!stabilizer_structural(&g));
        assert!(!is_in_stabilizer(&g).unwrap());
    }

    #[test]
    fn orbit_dimensions() {
        assert_eq!(orbit_dimension(1, 1), 3);
        assert_eq!(orbit_dimension(2, 2), 12);
        assert_eq!(orbit_dimension(2, 3), 19);
    }

    #[test]
    fn orbit_samples_are_deterministic_and_open() {
        let a = orbit_sample(2, 2, OmegaMode::WithOmega, 11, 5, 5).unwrap();
        let b = orbit_sample(2, 2, OmegaMode::WithOmega, 11, 5, 5).unwrap();
        assert_eq!(a, b);
        let ideal = generate_ideal(2, 2, OmegaMode::WithOmega).unwrap();
        for p in &a {
            assert_eq!(classify(p, &ideal).unwrap(), Stratum::OpenOrbit);
        }
        assert!(orbit_sample(1, 1, OmegaMode::WithOmega, 0, 0, 5).is_err());
    }

    #[test]
    fn omega_less_samples_stay_on_the_cone() {
        let pts = orbit_sample(2, 2, OmegaMode::OmegaLess, 3, 10, 5).unwrap();
        assert!(pts.iter().all(|p| p.omega().is_none()));
    }

    #[test]
    fn degeneration_two_two() {
        let lim = one_param_limit(2, 2).unwrap();
        let n = &lim.path.n;
        assert_eq!(n.get(2, 0).to_string(), "t");
        assert_eq!(n.get(3, 1).to_string(), "1");
        assert!(n.get(0, 0).is_zero());
        assert_eq!(lim.path.omega.as_ref().unwrap().to_string(), "t");
        assert_eq!(lim.stratum, Stratum::DivisorV1);
        // at a nonzero parameter value the path is the orbit point P(t)·v
        let v = base_point(2, 2, OmegaMode::WithOmega).unwrap();
        let t = rat_frac(3, 7);
        let direct = act(&OneParamSubgroup::degenerating(2, 2).at(&t).unwrap(), &v).unwrap();
        assert_eq!(lim.path.at(&t).unwrap(), direct);
    }

    #[test]
    fn degeneration_one_one() {
        let lim = one_param_limit(1, 1).unwrap();
        assert_eq!(lim.limit.m(), &RatMatrix::from_i64(&[&[1, 0]]));
        assert!(lim.limit.n().is_zero());
        assert_eq!(lim.limit.omega(), Some(&rat(0)));
    }

    #[test]
    fn path_satisfies_ideal_symbolically() {
        for (r, s) in [(1, 1), (1, 2), (2, 2), (2, 3)] {
            let ideal = generate_ideal(r, s, OmegaMode::WithOmega).unwrap();
            let lim = one_param_limit(r, s).unwrap();
            assert!(lim.path.substitute_into(&ideal).unwrap().iter().all(MultiPoly::is_zero));
        }
    }

    #[test]
    fn negative_powers_have_no_limit() {
        let v = base_point(1, 1, OmegaMode::WithOmega).unwrap();
        let ps = OneParamSubgroup { a_exps: vec![-1], b_exps: vec![0, 0], c_exps: vec![0] };
        assert!(matches!(OneParamPoint::new(&ps, &v), Err(Error::LimitDoesNotExist(_))));
    }

    #[test]
    fn permutation_basics() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert_eq!(Permutation::transposition(3, 0, 2).sign(), -1);
        assert_eq!(Permutation::new(vec![1, 2, 0]).unwrap().sign(), 1);
        assert_eq!(Permutation::new(vec![1, 2, 0]).unwrap().matrix().det().unwrap(), rat(1));
    }

    #[test]
    fn weyl_identity_and_size_check() {
        let v = base_point(2, 2, OmegaMode::WithOmega).unwrap();
        let id = WeylElement {
            rows_m: Permutation::identity(2),
            middle: Permutation::identity(4),
            cols_n: Permutation::identity(2),
        };
        assert_eq!(weyl_act(&id, &v).unwrap(), v);
        let bad = WeylElement { rows_m: Permutation::identity(3), ..id };
        assert!(matches!(weyl_act(&bad, &v), Err(Error::Dimension(_))));
    }

    #[test]
    fn weyl_transposition_keeps_point_on_variety() {
        let ideal = generate_ideal(2, 2, OmegaMode::WithOmega).unwrap();
        let v = base_point(2, 2, OmegaMode::WithOmega).unwrap();
        let w = WeylElement {
            rows_m: Permutation::identity(2),
            middle: Permutation::transposition(4, 1, 2),
            cols_n: Permutation::identity(2),
        };
        let p = weyl_act(&w, &v).unwrap();
        assert!(ideal.vanishes_at(&p).unwrap());
        assert_eq!(p, act(&w.as_group_element().unwrap(), &v).unwrap());
    }
}
