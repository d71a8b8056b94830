//! Sparse Gaussian elimination over the rationals with exact certificates.
//!
//! Rows are kept as gcd-normalized integer vectors (cross-multiplication
//! updates), which is much cheaper than per-entry rational arithmetic.
//! Pivots follow a least-fill heuristic: the sparsest active column first,
//! then the sparsest row in it, ties broken by lowest index so results are
//! bit-for-bit deterministic.

use super::{Deadline, LinalgError, RationalMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashSet;

#[derive(Debug, Clone)]
pub struct EliminationResult {
    pub consistent: bool,
    pub rank: usize,
    /// A solution with all free variables set to zero, when consistent.
    pub particular_solution: Option<Vec<BigRational>>,
    /// Farkas vector y with yA = 0 and yb != 0, when inconsistent.
    pub inconsistency_certificate: Option<Vec<BigRational>>,
    /// (original row index, pivot column) in elimination order. The original
    /// rows named here form a row basis of A.
    pub pivot_rows: Vec<(usize, usize)>,
}

struct WorkRow {
    cols: Vec<(usize, BigInt)>, // sorted by column, nonzero
    rhs: BigInt,
}

impl WorkRow {
    fn normalize(&mut self) {
        let mut g = self.rhs.abs();
        for (_, v) in &self.cols {
            g = g.gcd(v);
            if g.is_one() {
                return;
            }
        }
        if g.is_zero() || g.is_one() {
            return;
        }
        for (_, v) in &mut self.cols {
            *v = &*v / &g;
        }
        self.rhs = &self.rhs / &g;
    }
}

struct Eliminator {
    rows: Vec<Option<WorkRow>>,
    col_rows: Vec<HashSet<usize>>,
    pivots: Vec<(usize, usize)>,
    retired: Vec<Option<WorkRow>>, // indexed like rows; pivot rows move here
    inconsistent: bool,
}

impl Eliminator {
    fn new(a: &RationalMatrix, b: &[BigRational]) -> Self {
        let n = a.num_cols();
        let mut rows: Vec<Option<WorkRow>> = Vec::with_capacity(a.num_rows());
        let mut col_rows = vec![HashSet::new(); n];
        let mut inconsistent = false;
        for (r, row) in a.rows().iter().enumerate() {
            // clear denominators: multiply by lcm, then gcd-normalize
            let mut lcm = b[r].denom().clone();
            for (_, v) in row {
                lcm = lcm.lcm(v.denom());
            }
            let cols: Vec<(usize, BigInt)> = row
                .iter()
                .map(|(c, v)| (*c, v.numer() * (&lcm / v.denom())))
                .collect();
            let rhs = b[r].numer() * (&lcm / b[r].denom());
            let mut wr = WorkRow { cols, rhs };
            wr.normalize();
            if wr.cols.is_empty() {
                if !wr.rhs.is_zero() {
                    inconsistent = true;
                }
                rows.push(None);
                continue;
            }
            for (c, _) in &wr.cols {
                col_rows[*c].insert(r);
            }
            rows.push(Some(wr));
        }
        let retired = (0..a.num_rows()).map(|_| None).collect();
        Eliminator { rows, col_rows, pivots: Vec::new(), retired, inconsistent }
    }

    fn pick_pivot(&self) -> Option<(usize, usize)> {
        // propagation first: a singleton row pins its variable, substituting
        // it everywhere collapses LAF systems quickly
        for (r, row) in self.rows.iter().enumerate() {
            if let Some(wr) = row {
                if wr.cols.len() == 1 {
                    return Some((r, wr.cols[0].0));
                }
            }
        }
        // otherwise sparsest active column, lowest index on ties
        let mut best_col: Option<(usize, usize)> = None; // (count, col)
        for (c, set) in self.col_rows.iter().enumerate() {
            let cnt = set.len();
            if cnt == 0 {
                continue;
            }
            if best_col.map_or(true, |(bc, _)| cnt < bc) {
                best_col = Some((cnt, c));
                if cnt == 1 {
                    break;
                }
            }
        }
        let (_, col) = best_col?;
        // sparsest row containing it, lowest index on ties
        let row = self.col_rows[col]
            .iter()
            .map(|&r| (self.rows[r].as_ref().unwrap().cols.len(), r))
            .min()
            .map(|(_, r)| r)?;
        Some((row, col))
    }

    fn detach(&mut self, r: usize) -> WorkRow {
        let wr = self.rows[r].take().unwrap();
        for (c, _) in &wr.cols {
            self.col_rows[*c].remove(&r);
        }
        wr
    }

    fn attach(&mut self, r: usize, wr: WorkRow) {
        for (c, _) in &wr.cols {
            self.col_rows[*c].insert(r);
        }
        self.rows[r] = Some(wr);
    }

    fn run(&mut self, deadline: &Deadline) -> Result<(), LinalgError> {
        while let Some((p, j)) = self.pick_pivot() {
            deadline.check()?;
            let prow = self.detach(p);
            let pv = prow.cols.iter().find(|(c, _)| *c == j).unwrap().1.clone();
            let mut targets: Vec<usize> = self.col_rows[j].iter().copied().collect();
            targets.sort_unstable();
            for t in targets {
                let trow = self.detach(t);
                let tv = trow.cols.iter().find(|(c, _)| *c == j).unwrap().1.clone();
                let mut nrow = combine(&prow, &pv, &trow, &tv);
                nrow.normalize();
                if nrow.cols.is_empty() {
                    if !nrow.rhs.is_zero() {
                        self.inconsistent = true;
                    }
                    // row stays retired-empty
                } else {
                    self.attach(t, nrow);
                }
            }
            self.pivots.push((p, j));
            self.retired[p] = Some(prow);
        }
        Ok(())
    }

    /// Back-substitution with free variables set to zero.
    fn particular_solution(&self, n: usize) -> Vec<BigRational> {
        let mut x = vec![BigRational::zero(); n];
        for &(p, j) in self.pivots.iter().rev() {
            let row = self.retired[p].as_ref().unwrap();
            let mut sum = BigRational::from_integer(row.rhs.clone());
            let mut pv = BigInt::zero();
            for (c, v) in &row.cols {
                if *c == j {
                    pv = v.clone();
                } else {
                    sum -= BigRational::from_integer(v.clone()) * &x[*c];
                }
            }
            x[j] = sum / BigRational::from_integer(pv);
        }
        x
    }
}

/// nrow = pv * trow - tv * prow  (cancels column j), merging sorted rows.
fn combine(prow: &WorkRow, pv: &BigInt, trow: &WorkRow, tv: &BigInt) -> WorkRow {
    let mut cols = Vec::with_capacity(prow.cols.len() + trow.cols.len());
    let (mut i, mut k) = (0, 0);
    while i < trow.cols.len() || k < prow.cols.len() {
        let tc = trow.cols.get(i).map(|(c, _)| *c);
        let pc = prow.cols.get(k).map(|(c, _)| *c);
        match (tc, pc) {
            (Some(a), Some(b)) if a == b => {
                let v = pv * &trow.cols[i].1 - tv * &prow.cols[k].1;
                if !v.is_zero() {
                    cols.push((a, v));
                }
                i += 1;
                k += 1;
            }
            (Some(a), Some(b)) if a < b => {
                cols.push((a, pv * &trow.cols[i].1));
                i += 1;
            }
            (Some(_), Some(_)) | (None, Some(_)) => {
                cols.push((pc.unwrap(), -(tv * &prow.cols[k].1)));
                k += 1;
            }
            (Some(a), None) => {
                cols.push((a, pv * &trow.cols[i].1));
                i += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    let rhs = pv * &trow.rhs - tv * &prow.rhs;
    WorkRow { cols, rhs }
}

/// Decide consistency of `A x = b` over the rationals. When consistent,
/// returns rank and a particular solution; when inconsistent, a Farkas
/// certificate obtained from the dual system `A^T y = 0, b^T y = 1`.
pub fn eliminate(
    a: &RationalMatrix,
    b: &[BigRational],
    deadline: &Deadline,
) -> Result<EliminationResult, LinalgError> {
    if a.num_rows() != b.len() {
        return Err(LinalgError::DimensionMismatch { rows: a.num_rows(), rhs: b.len() });
    }
    let mut e = Eliminator::new(a, b);
    e.run(deadline)?;
    let rank = e.pivots.len();
    if e.inconsistent {
        let y = farkas_certificate(a, b, deadline)?;
        Ok(EliminationResult {
            consistent: false,
            rank,
            particular_solution: None,
            inconsistency_certificate: Some(y),
            pivot_rows: e.pivots.clone(),
        })
    } else {
        let x = e.particular_solution(a.num_cols());
        Ok(EliminationResult {
            consistent: true,
            rank,
            particular_solution: Some(x),
            inconsistency_certificate: None,
            pivot_rows: e.pivots.clone(),
        })
    }
}

/// Solve the dual system to exhibit y with yA = 0 and yb = 1. Only called
/// when the primal is inconsistent, where such y exists by the Fredholm
/// alternative.
fn farkas_certificate(
    a: &RationalMatrix,
    b: &[BigRational],
    deadline: &Deadline,
) -> Result<Vec<BigRational>, LinalgError> {
    let m = a.num_rows();
    let n = a.num_cols();
    // rows of the dual: one per column of A, plus the b row
    let mut dual_rows: Vec<Vec<(usize, BigRational)>> = vec![Vec::new(); n + 1];
    for (r, row) in a.rows().iter().enumerate() {
        for (c, v) in row {
            dual_rows[*c].push((r, v.clone()));
        }
    }
    for (r, v) in b.iter().enumerate() {
        if !v.is_zero() {
            dual_rows[n].push((r, v.clone()));
        }
    }
    let mut dual = RationalMatrix::new(m);
    for row in dual_rows {
        dual.push_row(row);
    }
    let mut rhs = vec![BigRational::zero(); n + 1];
    rhs[n] = BigRational::one();
    let mut e = Eliminator::new(&dual, &rhs);
    e.run(deadline)?;
    debug_assert!(!e.inconsistent, "dual of an inconsistent system must be solvable");
    Ok(e.particular_solution(m))
}

/// The unique rational solution of `A x = b`, if one exists
/// (consistent and rank equal to the column count).
pub fn unique_solution(
    a: &RationalMatrix,
    b: &[BigRational],
    deadline: &Deadline,
) -> Result<Option<Vec<BigRational>>, LinalgError> {
    let res = eliminate(a, b, deadline)?;
    if res.consistent && res.rank == a.num_cols() {
        Ok(res.particular_solution)
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn rat(n: i64) -> BigRational {
        BigRational::from_i64(n).unwrap()
    }

    fn mat(rows: &[&[i64]]) -> RationalMatrix {
        let n = rows[0].len();
        let mut m = RationalMatrix::new(n);
        for row in rows {
            m.push_row(
                row.iter().enumerate().filter(|(_, v)| **v != 0).map(|(c, v)| (c, rat(*v))).collect(),
            );
        }
        m
    }

    fn rv(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    fn verify(a: &RationalMatrix, b: &[BigRational], res: &EliminationResult) {
        if res.consistent {
            let x = res.particular_solution.as_ref().unwrap();
            assert!(res.inconsistency_certificate.is_none());
            for r in 0..a.num_rows() {
                assert_eq!(a.row_dot(r, x), b[r], "row {r} does not re-substitute");
            }
        } else {
            let y = res.inconsistency_certificate.as_ref().unwrap();
            assert!(res.particular_solution.is_none());
            assert!(a.left_mul(y).iter().all(|v| v.is_zero()), "yA != 0");
            let yb: BigRational = y.iter().zip(b).map(|(u, v)| u * v).sum();
            assert!(!yb.is_zero(), "yb == 0");
        }
    }

    #[test]
    fn duplicated_row_inconsistent() {
        let a = mat(&[&[1, 1], &[1, 1]]);
        let b = rv(&[1, 2]);
        let res = eliminate(&a, &b, &Deadline::none()).unwrap();
        assert!(!res.consistent);
        assert_eq!(res.rank, 1);
        verify(&a, &b, &res);
    }

    #[test]
    fn lt_system_of_toy_example_consistent_rank_3() {
        // X1+X2+X3=1, X2+X3+X4=1, X1+X4=1
        let a = mat(&[&[1, 1, 1, 0], &[0, 1, 1, 1], &[1, 0, 0, 1]]);
        let b = rv(&[1, 1, 1]);
        let res = eliminate(&a, &b, &Deadline::none()).unwrap();
        assert!(res.consistent);
        assert_eq!(res.rank, 3);
        verify(&a, &b, &res);
        // rank 3 < 4 columns: no unique solution
        assert!(unique_solution(&a, &b, &Deadline::none()).unwrap().is_none());
    }

    #[test]
    fn identity_unique_solution() {
        let a = mat(&[&[1, 0], &[0, 1]]);
        let b = rv(&[1, 0]);
        let x = unique_solution(&a, &b, &Deadline::none()).unwrap().unwrap();
        assert_eq!(x, rv(&[1, 0]));
    }

    #[test]
    fn rational_entries_and_rhs() {
        let mut a = RationalMatrix::new(2);
        a.push_row(vec![(0, BigRational::new(1.into(), 2.into())), (1, rat(1))]);
        a.push_row(vec![(0, rat(1))]);
        let b = vec![BigRational::new(3.into(), 4.into()), BigRational::new(1.into(), 2.into())];
        let res = eliminate(&a, &b, &Deadline::none()).unwrap();
        assert!(res.consistent);
        assert_eq!(res.rank, 2);
        verify(&a, &b, &res);
        let x = res.particular_solution.unwrap();
        assert_eq!(x[0], BigRational::new(1.into(), 2.into()));
        assert_eq!(x[1], BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn zero_rows_handled() {
        // 0 = 0 row is dropped, 0 = 1 row is inconsistent
        let a = mat(&[&[0, 0], &[1, 2]]);
        let res = eliminate(&a, &rv(&[0, 3]), &Deadline::none()).unwrap();
        assert!(res.consistent);
        assert_eq!(res.rank, 1);
        let res = eliminate(&a, &rv(&[1, 3]), &Deadline::none()).unwrap();
        assert!(!res.consistent);
        verify(&a, &rv(&[1, 3]), &res);
    }

    #[test]
    fn pivot_rows_form_row_basis() {
        let a = mat(&[&[1, 1, 0], &[2, 2, 0], &[0, 1, 1]]);
        let res = eliminate(&a, &rv(&[1, 2, 1]), &Deadline::none()).unwrap();
        assert!(res.consistent);
        assert_eq!(res.rank, 2);
        assert_eq!(res.pivot_rows.len(), 2);
        let named: Vec<usize> = res.pivot_rows.iter().map(|(r, _)| *r).collect();
        // row 1 is a multiple of row 0; the basis must not contain both
        assert!(!(named.contains(&0) && named.contains(&1)));
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let a = mat(&[&[1]]);
        assert_eq!(
            eliminate(&a, &rv(&[1, 2]), &Deadline::none()).unwrap_err(),
            LinalgError::DimensionMismatch { rows: 1, rhs: 2 }
        );
    }
}
