use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Rational;
use crate::error::{Error, Result};

/// Default entry bound for random sampling.
pub const DEFAULT_BOUND: u32 = 5;

const MAX_DRAWS: usize = 64;

/// Dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        Ok(RatMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    pub fn diagonal(diag: &[Rational]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { diag[i].clone() } else { Rational::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, entries }
    }

    /// Builds a matrix from integer rows; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |i, j| super::rat(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|x| x * c).collect() }
    }

    /// Submatrix on the given (0-based) row and column index lists, in the order given.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Result<RatMatrix> {
        if let Some(&i) = rows.iter().find(|&&i| i >= self.rows) {
            return Err(Error::IndexOutOfRange(format!("row {i} of {}", self.rows)));
        }
        if let Some(&j) = cols.iter().find(|&&j| j >= self.cols) {
            return Err(Error::IndexOutOfRange(format!("column {j} of {}", self.cols)));
        }
        Ok(Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone()))
    }

    /// Exact determinant by Bareiss elimination.
    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let (mut a, scale) = self.integer_rows();
        let d = bareiss_det(&mut a);
        Ok(Rational::new(d, scale))
    }

    /// Exact rank by fraction-free row echelon form.
    pub fn rank(&self) -> usize {
        let (mut a, _) = self.integer_rows();
        bareiss_rank(&mut a, self.cols)
    }

    /// Exact inverse by fraction-free Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<RatMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("inverse of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut row_scales = Vec::with_capacity(n);
        let mut aug: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let (row, s) = integer_row(self.row(i));
                row_scales.push(s);
                let mut full = row;
                full.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
                full
            })
            .collect();

        let mut prev = BigInt::one();
        for k in 0..n {
            let pivot = (k..n).find(|&i| !aug[i][k].is_zero()).ok_or(Error::Singular)?;
            aug.swap(k, pivot);
            for i in 0..n {
                if i == k {
                    continue;
                }
                let factor = aug[i][k].clone();
                for j in 0..2 * n {
                    if j == k {
                        continue;
                    }
                    let num = &aug[k][k] * &aug[i][j] - &factor * &aug[k][j];
                    aug[i][j] = exact_div(num, &prev);
                }
                aug[i][k] = BigInt::zero();
            }
            prev = aug[k][k].clone();
        }

        // Left block is now prev * I; the right block is prev * (S A)^{-1}.
        // Undo the row scaling: A^{-1} = (S A)^{-1} S.
        Ok(Self::from_fn(n, n, |i, j| Rational::new(&aug[i][n + j] * &row_scales[j], prev.clone())))
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).recip();
            for j in col..m.cols {
                let v = m.get(row, j) * &inv;
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i == row || m.get(i, col).is_zero() {
                    continue;
                }
                let f = m.get(i, col).clone();
                for j in col..m.cols {
                    let v = m.get(i, j) - &f * m.get(row, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Rows scaled to integers, plus the product of the row scale factors.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut total = BigInt::one();
        let rows = (0..self.rows)
            .map(|i| {
                let (row, s) = integer_row(self.row(i));
                total *= s;
                row
            })
            .collect();
        (rows, total)
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

fn integer_row(row: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let scale = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints = row.iter().map(|x| x.numer() * (&scale / x.denom())).collect();
    (ints, scale)
}

fn exact_div(num: BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_rem(den);
    debug_assert!(r.is_zero(), "fraction-free step left a remainder");
    q
}

fn bareiss_det(a: &mut [Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = exact_div(num, &prev);
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

fn bareiss_rank(a: &mut [Vec<BigInt>], cols: usize) -> usize {
    let rows = a.len();
    let mut row = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        for i in row + 1..rows {
            for j in col + 1..cols {
                let num = &a[i][j] * &a[row][col] - &a[i][col] * &a[row][j];
                a[i][j] = exact_div(num, &prev);
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[row][col].clone();
        row += 1;
    }
    row
}

/// Random `n x n` integer matrix with entries in `[-bound, bound]` and nonzero
/// determinant, deterministic in `seed`.
pub fn random_invertible(n: usize, seed: u64, bound: u32) -> Result<RatMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_invertible_with(&mut rng, n, bound)
}

pub fn random_invertible_with<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: u32) -> Result<RatMatrix> {
    if n == 0 || bound == 0 {
        return Err(Error::Parameter(format!(
            "random_invertible needs n >= 1 and bound >= 1 (got n={n}, bound={bound})"
        )));
    }
    let b = i64::from(bound);
    for _ in 0..MAX_DRAWS {
        let m = RatMatrix::from_fn(n, n, |_, _| super::rat(rng.gen_range(-b..=b)));
        if !m.det()?.is_zero() {
            return Ok(m);
        }
    }
    Err(Error::Sampling { n, attempts: MAX_DRAWS })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_frac};

    #[test]
    fn det_examples() {
        assert_eq!(RatMatrix::identity(3).det().unwrap(), rat(1));
        assert_eq!(RatMatrix::from_i64(&[&[1, 2], &[2, 4]]).det().unwrap(), rat(0));
        assert_eq!(RatMatrix::from_i64(&[&[2, 1], &[1, 1]]).det().unwrap(), rat(1));
        assert_eq!(RatMatrix::zeros(0, 0).det().unwrap(), rat(1));
        // needs a row swap
        assert_eq!(RatMatrix::from_i64(&[&[0, 1], &[1, 0]]).det().unwrap(), rat(-1));
    }

    #[test]
    fn det_rejects_rectangular() {
        assert!(matches!(RatMatrix::zeros(2, 3).det(), Err(Error::Dimension(_))));
    }

    #[test]
    fn det_with_fractions() {
        let m = RatMatrix::new(2, 2, vec![rat_frac(1, 2), rat_frac(1, 3), rat(1), rat(4)]).unwrap();
        assert_eq!(m.det().unwrap(), rat_frac(5, 3));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RatMatrix::zeros(3, 2).rank(), 0);
        assert_eq!(RatMatrix::identity(4).rank(), 4);
        let m0 = RatMatrix::from_i64(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        assert_eq!(m0.rank(), 2);
        let skip = RatMatrix::from_i64(&[&[0, 1, 2], &[0, 2, 4], &[0, 0, 1]]);
        assert_eq!(skip.rank(), 2);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(RatMatrix::identity(3).inverse().unwrap(), RatMatrix::identity(3));
        let d = RatMatrix::diagonal(&[rat(2), rat(3)]);
        assert_eq!(d.inverse().unwrap(), RatMatrix::diagonal(&[rat_frac(1, 2), rat_frac(1, 3)]));
        let u = RatMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        assert_eq!(u.inverse().unwrap(), RatMatrix::from_i64(&[&[1, -1], &[0, 1]]));
        let s = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.inverse(), Err(Error::Singular));
    }

    #[test]
    fn inverse_with_pivoting_and_fractions() {
        let m = RatMatrix::new(
            3,
            3,
            vec![rat(0), rat_frac(1, 2), rat(3), rat(2), rat(-1), rat_frac(2, 3), rat(1), rat(0), rat(5)],
        )
        .unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RatMatrix::identity(3));
    }

    #[test]
    fn rref_is_canonical() {
        let m = RatMatrix::from_i64(&[&[2, 4, 0], &[1, 2, 1]]);
        let (r, piv) = m.rref();
        assert_eq!(r, RatMatrix::from_i64(&[&[1, 2, 0], &[0, 0, 1]]));
        assert_eq!(piv, vec![0, 2]);
    }

    #[test]
    fn random_invertible_contract() {
        for seed in 0..20 {
            let m = random_invertible(1, seed, 1).unwrap();
            let v = m.get(0, 0).clone();
            assert!(v == rat(1) || v == rat(-1));
        }
        assert_eq!(random_invertible(4, 99, 5).unwrap(), random_invertible(4, 99, 5).unwrap());
        let m = random_invertible(3, 7, 5).unwrap();
        assert!(!m.det().unwrap().is_zero());
        assert!(m.entries().iter().all(|x| num_traits::Signed::abs(x) <= rat(5)));
        assert!(matches!(random_invertible(0, 1, 5), Err(Error::Parameter(_))));
    }
}
