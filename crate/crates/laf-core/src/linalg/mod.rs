//! Exact linear algebra over the rationals and the integers.
//!
//! Everything in here is arbitrary precision; floating point is banned
//! because a single rounding error can flip a consistency verdict.

mod elim;
mod hnf;
mod lp;

pub use elim::{eliminate, unique_solution, EliminationResult};
pub use hnf::{det, hnf, hnf_with_deadline, integer_consistent, matmul, HnfResult, IntegerConsistency};
pub use lp::box_lp_feasible;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: matrix has {rows} rows, rhs has {rhs} entries")]
    DimensionMismatch { rows: usize, rhs: usize },
    #[error("stage deadline exceeded")]
    Timeout,
}

/// Wall-clock budget for a single solver stage. `Deadline::none()` never fires.
#[derive(Debug, Clone, Copy)]
pub struct Deadline {
    expires: Option<std::time::Instant>,
}

impl Deadline {
    pub fn none() -> Self {
        Deadline { expires: None }
    }

    pub fn after_ms(ms: u64) -> Self {
        Deadline { expires: Some(std::time::Instant::now() + std::time::Duration::from_millis(ms)) }
    }

    pub fn check(&self) -> Result<(), LinalgError> {
        match self.expires {
            Some(t) if std::time::Instant::now() > t => Err(LinalgError::Timeout),
            _ => Ok(()),
        }
    }
}

/// Sparse matrix with arbitrary-precision rational entries.
/// Rows store only nonzero entries, sorted by column index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: Vec<Vec<(usize, BigRational)>>,
    num_cols: usize,
}

impl RationalMatrix {
    pub fn new(num_cols: usize) -> Self {
        RationalMatrix { rows: Vec::new(), num_cols }
    }

    /// Push a row given as (column, value) pairs; zero entries are dropped
    /// and duplicate columns are summed.
    pub fn push_row(&mut self, entries: Vec<(usize, BigRational)>) {
        self.rows.push(normalize_entries(entries, self.num_cols));
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.num_cols
    }

    pub fn rows(&self) -> &[Vec<(usize, BigRational)>] {
        &self.rows
    }

    pub fn row_dot(&self, row: usize, x: &[BigRational]) -> BigRational {
        self.rows[row].iter().map(|(c, v)| v * &x[*c]).sum()
    }

    /// y^T A as a dense vector of length num_cols.
    pub fn left_mul(&self, y: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.num_cols];
        for (r, row) in self.rows.iter().enumerate() {
            if y[r].is_zero() {
                continue;
            }
            for (c, v) in row {
                out[*c] += &y[r] * v;
            }
        }
        out
    }
}

impl From<&IntMatrix> for RationalMatrix {
    fn from(a: &IntMatrix) -> Self {
        let mut m = RationalMatrix::new(a.num_cols);
        for row in &a.rows {
            m.push_row(
                row.iter().map(|(c, v)| (*c, BigRational::from_integer(v.clone()))).collect(),
            );
        }
        m
    }
}

fn normalize_entries(
    mut entries: Vec<(usize, BigRational)>,
    num_cols: usize,
) -> Vec<(usize, BigRational)> {
    entries.sort_by_key(|(c, _)| *c);
    let mut out: Vec<(usize, BigRational)> = Vec::with_capacity(entries.len());
    for (c, v) in entries {
        assert!(c < num_cols, "column index {c} out of range (num_cols {num_cols})");
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// Sparse matrix with integer entries; the LT and ReL systems always fit here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: Vec<Vec<(usize, BigInt)>>,
    pub num_cols: usize,
}

impl IntMatrix {
    pub fn new(num_cols: usize) -> Self {
        IntMatrix { rows: Vec::new(), num_cols }
    }

    pub fn push_row(&mut self, entries: Vec<(usize, BigInt)>) {
        let mut entries = entries;
        entries.sort_by_key(|(c, _)| *c);
        let mut out: Vec<(usize, BigInt)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            assert!(c < self.num_cols, "column index {c} out of range");
            match out.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += v,
                _ => out.push((c, v)),
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        self.rows.push(out);
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn row_dot_int(&self, row: usize, x: &[BigInt]) -> BigInt {
        self.rows[row].iter().map(|(c, v)| v * &x[*c]).sum()
    }

    pub fn row_dot(&self, row: usize, x: &[BigRational]) -> BigRational {
        self.rows[row]
            .iter()
            .map(|(c, v)| BigRational::from_integer(v.clone()) * &x[*c])
            .sum()
    }

    /// y^T A as a dense rational vector.
    pub fn left_mul(&self, y: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.num_cols];
        for (r, row) in self.rows.iter().enumerate() {
            if y[r].is_zero() {
                continue;
            }
            for (c, v) in row {
                out[*c] += &y[r] * BigRational::from_integer(v.clone());
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.num_cols]; self.rows.len()];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                d[r][*c] = v.clone();
            }
        }
        d
    }

    pub fn from_dense(rows: &[Vec<BigInt>]) -> Self {
        let num_cols = rows.first().map_or(0, |r| r.len());
        let mut m = IntMatrix::new(num_cols);
        for row in rows {
            m.push_row(
                row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())).collect(),
            );
        }
        m
    }
}
