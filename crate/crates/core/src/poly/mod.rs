//! Sparse multivariate polynomials over the rationals.
//!
//! Every polynomial carries the [`VarTable`] it is written over; the exponent
//! vector of a monomial has one slot per table variable. Operations between
//! polynomials over different tables fail with [`Error::TableMismatch`].

mod matrix;

pub use matrix::{MinorCache, PolyMatrix};

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;

/// A coordinate of one of the ambient spaces. Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// Entry `m_{ij}` of the `r x t` matrix M.
    M(usize, usize),
    /// Entry `n_{ij}` of the `t x s` matrix N.
    N(usize, usize),
    Omega,
    /// Deformation parameter of a one-parameter subgroup.
    Param,
    /// Spinor coordinate `x`.
    SpinorScalar,
    /// Spinor coordinate `x_{ij}`, `i < j`.
    SpinorSkew(usize, usize),
    /// Spinor coordinate `y_i`.
    SpinorVector(usize),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::M(i, j) => write!(f, "m_{i}_{j}"),
            Var::N(i, j) => write!(f, "n_{i}_{j}"),
            Var::Omega => write!(f, "omega"),
            Var::Param => write!(f, "t"),
            Var::SpinorScalar => write!(f, "x"),
            Var::SpinorSkew(i, j) => write!(f, "x_{i}_{j}"),
            Var::SpinorVector(i) => write!(f, "y_{i}"),
        }
    }
}

impl Var {
    /// Inverse of the `Display` naming.
    pub fn parse(name: &str) -> Option<Var> {
        let parts: Vec<&str> = name.split('_').collect();
        let idx = |k: usize| parts.get(k).and_then(|p| p.parse::<usize>().ok());
        match (parts[0], parts.len()) {
            ("m", 3) => Some(Var::M(idx(1)?, idx(2)?)),
            ("n", 3) => Some(Var::N(idx(1)?, idx(2)?)),
            ("omega", 1) => Some(Var::Omega),
            ("t", 1) => Some(Var::Param),
            ("x", 1) => Some(Var::SpinorScalar),
            ("x", 3) => Some(Var::SpinorSkew(idx(1)?, idx(2)?)),
            ("y", 2) => Some(Var::SpinorVector(idx(1)?)),
            _ => None,
        }
    }
}

/// Ordered, duplicate-free list of variables.
#[derive(Debug)]
pub struct VarTable {
    vars: Vec<Var>,
    index: HashMap<Var, usize>,
}

impl PartialEq for VarTable {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars
    }
}

impl Eq for VarTable {}

impl VarTable {
    pub fn new(vars: Vec<Var>) -> Result<Arc<Self>> {
        let mut index = HashMap::with_capacity(vars.len());
        for (k, v) in vars.iter().enumerate() {
            if index.insert(*v, k).is_some() {
                return Err(Error::Parameter(format!("duplicate variable {v}")));
            }
        }
        Ok(Arc::new(VarTable { vars, index }))
    }

    /// M entries row-major, N entries row-major, then ω and t when requested.
    pub fn cramer(r: usize, s: usize, omega: bool, param: bool) -> Arc<Self> {
        let t = r + s;
        let mut vars = Vec::with_capacity(2 * r * t + 2);
        for i in 1..=r {
            for j in 1..=t {
                vars.push(Var::M(i, j));
            }
        }
        for i in 1..=t {
            for j in 1..=s {
                vars.push(Var::N(i, j));
            }
        }
        if omega {
            vars.push(Var::Omega);
        }
        if param {
            vars.push(Var::Param);
        }
        Self::new(vars).expect("cramer variables are distinct")
    }

    /// The 16 spinor coordinates `x, x_{12}, ..., x_{45}, y_1, ..., y_5`.
    pub fn spinor() -> Arc<Self> {
        let mut vars = vec![Var::SpinorScalar];
        for i in 1..=5 {
            for j in i + 1..=5 {
                vars.push(Var::SpinorSkew(i, j));
            }
        }
        vars.extend((1..=5).map(Var::SpinorVector));
        Self::new(vars).expect("spinor variables are distinct")
    }

    pub fn param_only() -> Arc<Self> {
        Self::new(vec![Var::Param]).expect("single variable")
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn index_of(&self, var: Var) -> Option<usize> {
        self.index.get(&var).copied()
    }

    pub fn position(&self, var: Var) -> Result<usize> {
        self.index_of(var).ok_or_else(|| Error::UnknownVariable(var.to_string()))
    }

    pub fn contains(&self, var: Var) -> bool {
        self.index.contains_key(&var)
    }
}

fn same_table(a: &Arc<VarTable>, b: &Arc<VarTable>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub type Exponents = Vec<u32>;

/// Sparse polynomial: exponent vector -> nonzero coefficient.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    table: Arc<VarTable>,
    terms: BTreeMap<Exponents, Rational>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.table, &other.table) && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(table: &Arc<VarTable>) -> Self {
        MultiPoly { table: Arc::clone(table), terms: BTreeMap::new() }
    }

    pub fn constant(table: &Arc<VarTable>, c: Rational) -> Self {
        let mut p = Self::zero(table);
        if !c.is_zero() {
            p.terms.insert(vec![0; table.len()], c);
        }
        p
    }

    pub fn one(table: &Arc<VarTable>) -> Self {
        Self::constant(table, Rational::one())
    }

    pub fn var(table: &Arc<VarTable>, var: Var) -> Result<Self> {
        let k = table.position(var)?;
        Ok(Self::monomial(table, unit_exponent(table.len(), k), Rational::one()))
    }

    pub fn monomial(table: &Arc<VarTable>, exps: Exponents, c: Rational) -> Self {
        assert_eq!(exps.len(), table.len(), "exponent vector length");
        let mut p = Self::zero(table);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// Sums like terms and drops zeros.
    pub fn from_terms(table: &Arc<VarTable>, terms: impl IntoIterator<Item = (Exponents, Rational)>) -> Result<Self> {
        let mut p = Self::zero(table);
        for (e, c) in terms {
            if e.len() != table.len() {
                return Err(Error::Dimension(format!(
                    "exponent vector of length {} over a table of {} variables",
                    e.len(),
                    table.len()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Maximum total degree; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self, degree: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == degree)
    }

    /// Maximum exponent of table variable `k` across terms.
    pub fn degree_in(&self, k: usize) -> u32 {
        self.terms.keys().map(|e| e[k]).max().unwrap_or(0)
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_table(&self, other: &MultiPoly) -> Result<()> {
        if same_table(&self.table, &other.table) {
            Ok(())
        } else {
            Err(Error::TableMismatch)
        }
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_table(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_table(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_table(other)?;
        let mut out = Self::zero(&self.table);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(&self.table);
        }
        MultiPoly {
            table: Arc::clone(&self.table),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut acc = Self::one(&self.table);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact substitution of `values[k]` for table variable `k`.
    pub fn eval(&self, values: &[Rational]) -> Result<Rational> {
        if values.len() != self.table.len() {
            return Err(Error::Dimension(format!("{} values for {} variables", values.len(), self.table.len())));
        }
        Ok(self.eval_scaled(&ScaledPoint::new(values)))
    }

    /// Evaluation at a point prepared by [`ScaledPoint::new`]; the only
    /// rational reductions happen once per total degree.
    pub fn eval_scaled(&self, point: &ScaledPoint) -> Rational {
        let mut by_degree: BTreeMap<u32, (BigInt, Rational)> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut prod = BigInt::one();
            let mut deg = 0;
            for (k, &p) in e.iter().enumerate() {
                for _ in 0..p {
                    prod *= &point.nums[k];
                }
                deg += p;
            }
            let slot = by_degree.entry(deg).or_insert_with(|| (BigInt::zero(), Rational::zero()));
            if c.is_integer() {
                slot.0 += c.numer() * prod;
            } else {
                slot.1 += c * Rational::from_integer(prod);
            }
        }
        let mut acc = Rational::zero();
        for (deg, (int_part, rat_part)) in by_degree {
            let scale = Rational::from_integer(num_traits::pow(point.denom.clone(), deg as usize));
            acc += (Rational::from_integer(int_part) + rat_part) / scale;
        }
        acc
    }

    pub fn partial(&self, var: Var) -> Result<MultiPoly> {
        let k = self.table.position(var)?;
        Ok(self.partial_index(k))
    }

    pub fn partial_index(&self, k: usize) -> MultiPoly {
        let mut out = Self::zero(&self.table);
        for (e, c) in &self.terms {
            if e[k] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[k] -= 1;
            out.add_term(d, c * Rational::from_integer(e[k].into()));
        }
        out
    }

    /// Replaces table variable `k` by `images[k]`; all images must share one table.
    pub fn compose(&self, images: &[MultiPoly], target: &Arc<VarTable>) -> Result<MultiPoly> {
        if images.len() != self.table.len() {
            return Err(Error::Dimension(format!("{} images for {} variables", images.len(), self.table.len())));
        }
        if images.iter().any(|p| !same_table(&p.table, target)) {
            return Err(Error::TableMismatch);
        }
        // Powers are cached per variable to avoid recomputing p^k for each term.
        let mut powers: Vec<Vec<MultiPoly>> = images.iter().map(|p| vec![Self::one(target), p.clone()]).collect();
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (k, &d) in e.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                while powers[k].len() <= d as usize {
                    let next = powers[k].last().unwrap() * &images[k];
                    powers[k].push(next);
                }
                term = &term * &powers[k][d as usize];
            }
            for (te, tc) in term.terms {
                out.add_term(te, tc);
            }
        }
        Ok(out)
    }

    /// Terms in graded-lexicographic order, largest first.
    pub fn sorted_terms(&self) -> Vec<(&Exponents, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| graded_lex(b.0, a.0));
        v
    }

    /// Renders with a caller-supplied variable naming; `*` and `^` operators.
    pub fn format_with(&self, name: impl Fn(&Var) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = c < &Rational::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (k, &d) in e.iter().enumerate() {
                match d {
                    0 => {}
                    1 => factors.push(name(&self.table.vars[k])),
                    _ => factors.push(format!("{}^{d}", name(&self.table.vars[k]))),
                }
            }
            if factors.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

fn unit_exponent(n: usize, k: usize) -> Exponents {
    let mut e = vec![0; n];
    e[k] = 1;
    e
}

/// A rational point written as integer numerators over one common denominator.
#[derive(Clone, Debug)]
pub struct ScaledPoint {
    denom: BigInt,
    nums: Vec<BigInt>,
}

impl ScaledPoint {
    pub fn new(values: &[Rational]) -> Self {
        let denom = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let nums = values.iter().map(|v| v.numer() * (&denom / v.denom())).collect();
        ScaledPoint { denom, nums }
    }

    pub fn len(&self) -> usize {
        self.nums.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nums.is_empty()
    }
}

/// Graded lexicographic comparison with the table order.
pub fn graded_lex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(|v| v.to_string()))
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("adding polynomials over different tables")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("subtracting polynomials over different tables")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("multiplying polynomials over different tables")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn table11() -> Arc<VarTable> {
        VarTable::cramer(1, 1, true, false)
    }

    #[test]
    fn table_order_is_fixed() {
        let tab = VarTable::cramer(1, 1, true, true);
        let names: Vec<String> = tab.vars().iter().map(|v| v.to_string()).collect();
        assert_eq!(names, ["m_1_1", "m_1_2", "n_1_1", "n_2_1", "omega", "t"]);
        assert_eq!(VarTable::spinor().len(), 16);
        assert!(VarTable::new(vec![Var::Omega, Var::Omega]).is_err());
    }

    #[test]
    fn var_names_parse_back() {
        for v in VarTable::cramer(2, 3, true, true).vars().iter().chain(VarTable::spinor().vars()) {
            assert_eq!(Var::parse(&v.to_string()), Some(*v));
        }
        assert_eq!(Var::parse("q_1"), None);
    }

    #[test]
    fn ring_operations() {
        let tab = table11();
        let m11 = MultiPoly::var(&tab, Var::M(1, 1)).unwrap();
        let m12 = MultiPoly::var(&tab, Var::M(1, 2)).unwrap();
        let n11 = MultiPoly::var(&tab, Var::N(1, 1)).unwrap();
        assert!((&m11 + &(-&m11)).is_zero());
        let prod = &m11 * &n11;
        assert_eq!(prod.num_terms(), 1);
        assert_eq!(prod.to_string(), "m_1_1*n_1_1");
        let sq = (&m11 + &m12).pow(2);
        assert_eq!(sq.to_string(), "m_1_1^2 + 2*m_1_1*m_1_2 + m_1_2^2");
    }

    #[test]
    fn mismatched_tables_are_rejected() {
        let a = MultiPoly::var(&table11(), Var::Omega).unwrap();
        let b = MultiPoly::var(&VarTable::cramer(1, 2, true, false), Var::Omega).unwrap();
        assert_eq!(a.checked_add(&b), Err(Error::TableMismatch));
        assert_eq!(a.checked_mul(&b), Err(Error::TableMismatch));
        // equal-by-value tables are compatible
        let c = MultiPoly::var(&table11(), Var::Omega).unwrap();
        assert!(a.checked_add(&c).is_ok());
    }

    #[test]
    fn evaluation() {
        let tab = table11();
        let m11 = MultiPoly::var(&tab, Var::M(1, 1)).unwrap();
        let m12 = MultiPoly::var(&tab, Var::M(1, 2)).unwrap();
        let n11 = MultiPoly::var(&tab, Var::N(1, 1)).unwrap();
        let n21 = MultiPoly::var(&tab, Var::N(2, 1)).unwrap();
        let v = [rat(1), rat(0), rat(0), rat(1), rat(1)];
        assert_eq!(MultiPoly::zero(&tab).eval(&v).unwrap(), rat(0));
        let omega = MultiPoly::var(&tab, Var::Omega).unwrap();
        assert_eq!(omega.eval(&v).unwrap(), rat(1));
        let bil = &(&m11 * &n11) + &(&m12 * &n21);
        assert_eq!(bil.eval(&v).unwrap(), rat(0));
        assert!(matches!(bil.eval(&v[..3]), Err(Error::Dimension(_))));
    }

    #[test]
    fn partial_derivatives() {
        let tab = table11();
        let m11 = MultiPoly::var(&tab, Var::M(1, 1)).unwrap();
        let n11 = MultiPoly::var(&tab, Var::N(1, 1)).unwrap();
        let n21 = MultiPoly::var(&tab, Var::N(2, 1)).unwrap();
        let omega = MultiPoly::var(&tab, Var::Omega).unwrap();
        assert_eq!((&m11 * &n11).partial(Var::M(1, 1)).unwrap(), n11);
        assert!(MultiPoly::constant(&tab, rat(7)).partial(Var::Omega).unwrap().is_zero());
        let g = &(&omega * &m11) - &n21;
        assert_eq!(g.partial(Var::Omega).unwrap(), m11);
        assert!(matches!(g.partial(Var::Param), Err(Error::UnknownVariable(_))));
        assert_eq!(m11.pow(3).partial(Var::M(1, 1)).unwrap(), m11.pow(2).scale(&rat(3)));
    }

    #[test]
    fn compose_substitutes() {
        let tab = table11();
        let target = VarTable::param_only();
        let t = MultiPoly::var(&target, Var::Param).unwrap();
        let m11 = MultiPoly::var(&tab, Var::M(1, 1)).unwrap();
        let omega = MultiPoly::var(&tab, Var::Omega).unwrap();
        let p = &(&omega * &m11) + &MultiPoly::constant(&tab, rat(2));
        let images = vec![
            MultiPoly::constant(&target, rat(3)),
            MultiPoly::zero(&target),
            MultiPoly::zero(&target),
            MultiPoly::zero(&target),
            &t + &t,
        ];
        let out = p.compose(&images, &target).unwrap();
        assert_eq!(out.to_string(), "6*t + 2");
    }
}
