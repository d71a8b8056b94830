//! Exact rational feasibility of `A x = b, 0 <= x <= 1` via phase-1 simplex
//! with Bland's rule. Infeasibility of the box system is a sound certificate
//! that no Boolean solution exists; feasibility says nothing.

use super::{Deadline, LinalgError, RationalMatrix};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Phase-1 simplex on the standard form
///   A x = b,  x + s = 1,  x, s >= 0
/// with one artificial variable per `A` row. Returns whether the box
/// system is feasible.
pub fn box_lp_feasible(
    a: &RationalMatrix,
    b: &[BigRational],
    deadline: &Deadline,
) -> Result<bool, LinalgError> {
    let m = a.num_rows();
    let n = a.num_cols();
    if m != b.len() {
        return Err(LinalgError::DimensionMismatch { rows: m, rhs: b.len() });
    }
    let rows = m + n;
    let cols = 2 * n + m + 1; // x, s, artificials, rhs
    let rhs_col = cols - 1;
    let art0 = 2 * n;

    let mut t = vec![vec![BigRational::zero(); cols]; rows];
    let mut basis = vec![0usize; rows];

    for r in 0..m {
        let flip = b[r].is_negative();
        for (c, v) in &a.rows()[r] {
            t[r][*c] = if flip { -v.clone() } else { v.clone() };
        }
        t[r][rhs_col] = if flip { -b[r].clone() } else { b[r].clone() };
        t[r][art0 + r] = BigRational::one();
        basis[r] = art0 + r;
    }
    for i in 0..n {
        let r = m + i;
        t[r][i] = BigRational::one();
        t[r][n + i] = BigRational::one(); // slack for x_i <= 1
        t[r][rhs_col] = BigRational::one();
        basis[r] = n + i;
    }

    // objective: minimize the artificial sum; expressed in terms of the
    // non-basic columns this is the sum of the A-rows
    let mut obj = vec![BigRational::zero(); cols];
    for r in 0..m {
        for j in 0..cols {
            if !t[r][j].is_zero() {
                let v = t[r][j].clone();
                obj[j] += v;
            }
        }
    }
    for r in 0..m {
        obj[art0 + r] = BigRational::zero(); // basic columns stay canonical
    }

    loop {
        deadline.check()?;
        // Bland: lowest-index improving non-artificial column
        let entering = (0..2 * n).find(|&j| obj[j].is_positive());
        let Some(e) = entering else {
            return Ok(obj[rhs_col].is_zero());
        };
        // ratio test, ties by lowest basis variable index (Bland)
        let mut leave: Option<(BigRational, usize, usize)> = None; // (ratio, basis var, row)
        for r in 0..rows {
            if t[r][e].is_positive() {
                let ratio = &t[r][rhs_col] / &t[r][e];
                let cand = (ratio, basis[r], r);
                if leave.as_ref().map_or(true, |best| (&cand.0, cand.1) < (&best.0, best.1)) {
                    leave = Some(cand);
                }
            }
        }
        let Some((_, _, lr)) = leave else {
            // unbounded phase-1 cannot happen (objective bounded below by 0)
            return Ok(obj[rhs_col].is_zero());
        };
        // pivot on (lr, e)
        let pv = t[lr][e].clone();
        for j in 0..cols {
            if !t[lr][j].is_zero() {
                t[lr][j] = &t[lr][j] / &pv;
            }
        }
        for r in 0..rows {
            if r != lr && !t[r][e].is_zero() {
                let f = t[r][e].clone();
                for j in 0..cols {
                    if !t[lr][j].is_zero() {
                        let delta = &f * &t[lr][j];
                        t[r][j] -= delta;
                    }
                }
            }
        }
        if !obj[e].is_zero() {
            let f = obj[e].clone();
            for j in 0..cols {
                if !t[lr][j].is_zero() {
                    let delta = &f * &t[lr][j];
                    obj[j] -= delta;
                }
            }
        }
        basis[lr] = e;
    }
}
