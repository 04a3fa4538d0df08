use std::collections::HashMap;
use std::sync::Arc;

use super::{MultiPoly, Var, VarTable};
use crate::error::{Error, Result};
use crate::exact::{RatMatrix, Rational};

/// Dense row-major matrix of polynomials over one table.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> MultiPoly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { rows, cols, entries }
    }

    /// The symbolic `r x t` matrix M over `table`.
    pub fn symbolic_m(table: &Arc<VarTable>, r: usize, t: usize) -> Result<Self> {
        let mut out = Vec::with_capacity(r * t);
        for i in 1..=r {
            for j in 1..=t {
                out.push(MultiPoly::var(table, Var::M(i, j))?);
            }
        }
        Ok(PolyMatrix { rows: r, cols: t, entries: out })
    }

    /// The symbolic `t x s` matrix N over `table`.
    pub fn symbolic_n(table: &Arc<VarTable>, t: usize, s: usize) -> Result<Self> {
        let mut out = Vec::with_capacity(t * s);
        for i in 1..=t {
            for j in 1..=s {
                out.push(MultiPoly::var(table, Var::N(i, j))?);
            }
        }
        Ok(PolyMatrix { rows: t, cols: s, entries: out })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[MultiPoly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(MultiPoly::is_zero)
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = MultiPoly::zero(self.get(i, 0).table());
                for k in 0..self.cols {
                    acc = acc.checked_add(&self.get(i, k).checked_mul(other.get(k, j))?)?;
                }
                entries.push(acc);
            }
        }
        Ok(PolyMatrix { rows: self.rows, cols: other.cols, entries })
    }

    pub fn eval(&self, values: &[Rational]) -> Result<RatMatrix> {
        let entries = self.entries.iter().map(|p| p.eval(values)).collect::<Result<Vec<_>>>()?;
        RatMatrix::new(self.rows, self.cols, entries)
    }

    /// Determinant of the submatrix on 0-based `rows` x `cols`, taken in the
    /// order given (reordering either list permutes the sign accordingly).
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<MultiPoly> {
        MinorCache::new(self, rows)?.minor(cols)
    }
}

/// Memoized Laplace expansion along a fixed ordered row list.
///
/// Sub-determinants are keyed by the column subset they use, so a whole
/// family of minors on the same rows shares its lower-order work.
pub struct MinorCache<'a> {
    matrix: &'a PolyMatrix,
    rows: Vec<usize>,
    memo: HashMap<u64, MultiPoly>,
}

impl<'a> MinorCache<'a> {
    pub fn new(matrix: &'a PolyMatrix, rows: &[usize]) -> Result<Self> {
        if let Some(&i) = rows.iter().find(|&&i| i >= matrix.rows) {
            return Err(Error::IndexOutOfRange(format!("row {i} of {}", matrix.rows)));
        }
        if rows.len() > matrix.cols || matrix.cols > 64 {
            return Err(Error::Dimension(format!("{} rows of a {}x{} matrix", rows.len(), matrix.rows, matrix.cols)));
        }
        Ok(MinorCache { matrix, rows: rows.to_vec(), memo: HashMap::new() })
    }

    pub fn minor(&mut self, cols: &[usize]) -> Result<MultiPoly> {
        let table = Arc::clone(self.matrix.entries[0].table());
        if cols.len() != self.rows.len() {
            return Err(Error::Dimension(format!("{} rows but {} columns", self.rows.len(), cols.len())));
        }
        if let Some(&j) = cols.iter().find(|&&j| j >= self.matrix.cols) {
            return Err(Error::IndexOutOfRange(format!("column {j} of {}", self.matrix.cols)));
        }
        let mut sorted = cols.to_vec();
        let negate = sort_parity(&mut sorted);
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Ok(MultiPoly::zero(&table));
        }
        let mask = sorted.iter().fold(0u64, |m, &j| m | (1 << j));
        let det = self.expand(mask, &table);
        Ok(if negate { -&det } else { det })
    }

    fn expand(&mut self, mask: u64, table: &Arc<VarTable>) -> MultiPoly {
        if mask == 0 {
            return MultiPoly::one(table);
        }
        if let Some(p) = self.memo.get(&mask) {
            return p.clone();
        }
        let depth = self.rows.len() - mask.count_ones() as usize;
        let row = self.rows[depth];
        let mut acc = MultiPoly::zero(table);
        let mut position = 0;
        for j in 0..self.matrix.cols {
            if mask & (1 << j) == 0 {
                continue;
            }
            let entry = self.matrix.get(row, j);
            if !entry.is_zero() {
                let sub = self.expand(mask & !(1 << j), table);
                let term = entry * &sub;
                acc = if position % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            position += 1;
        }
        self.memo.insert(mask, acc.clone());
        acc
    }
}

/// Sorts in place and reports whether the sorting permutation is odd.
fn sort_parity(v: &mut [usize]) -> bool {
    let mut odd = false;
    for i in 1..v.len() {
        let mut k = i;
        while k > 0 && v[k - 1] > v[k] {
            v.swap(k - 1, k);
            odd = !odd;
            k -= 1;
        }
    }
    odd
}
