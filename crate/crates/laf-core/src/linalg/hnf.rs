//! Column-style Hermite Normal Form and the HNF-based integer
//! solvability test for `A x = b`.
//!
//! Columns are kept sparse; the reduction is plain Euclidean column
//! elimination with left-of-pivot entries reduced modulo the pivot.

use super::{eliminate, Deadline, IntMatrix, LinalgError, RationalMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Sorted (row, value) pairs, nonzero values only.
type Col = Vec<(usize, BigInt)>;

fn col_get(col: &Col, row: usize) -> BigInt {
    match col.binary_search_by_key(&row, |(r, _)| *r) {
        Ok(i) => col[i].1.clone(),
        Err(_) => BigInt::zero(),
    }
}

/// col_j := col_j - q * col_p
fn col_axpy(col_j: &Col, q: &BigInt, col_p: &Col) -> Col {
    let mut out = Vec::with_capacity(col_j.len() + col_p.len());
    let (mut i, mut k) = (0, 0);
    while i < col_j.len() || k < col_p.len() {
        let a = col_j.get(i).map(|(r, _)| *r);
        let b = col_p.get(k).map(|(r, _)| *r);
        match (a, b) {
            (Some(ra), Some(rb)) if ra == rb => {
                let v = &col_j[i].1 - q * &col_p[k].1;
                if !v.is_zero() {
                    out.push((ra, v));
                }
                i += 1;
                k += 1;
            }
            (Some(ra), Some(rb)) if ra < rb => {
                out.push((ra, col_j[i].1.clone()));
                i += 1;
            }
            (Some(_), Some(rb)) => {
                out.push((rb, -(q * &col_p[k].1)));
                k += 1;
            }
            (Some(ra), None) => {
                out.push((ra, col_j[i].1.clone()));
                i += 1;
            }
            (None, Some(rb)) => {
                out.push((rb, -(q * &col_p[k].1)));
                k += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

struct ColHnf {
    h: Vec<Col>,
    u: Vec<Col>,
    pivots: Vec<(usize, usize)>,
}

fn hnf_cols(a: &IntMatrix, deadline: &Deadline) -> Result<ColHnf, LinalgError> {
    let s = a.num_rows();
    let t = a.num_cols;
    let mut h: Vec<Col> = vec![Vec::new(); t];
    for (r, row) in a.rows.iter().enumerate() {
        for (c, v) in row {
            h[*c].push((r, v.clone()));
        }
    }
    let mut u: Vec<Col> = (0..t).map(|j| vec![(j, BigInt::one())]).collect();
    let mut pivots = Vec::new();
    let mut pc = 0usize;

    for i in 0..s {
        if pc == t {
            break;
        }
        loop {
            deadline.check()?;
            // nonzero entries of row i among the remaining columns
            let mut nz: Vec<(usize, BigInt)> = Vec::new();
            for (j, col) in h.iter().enumerate().skip(pc) {
                let v = col_get(col, i);
                if !v.is_zero() {
                    nz.push((j, v));
                }
            }
            if nz.is_empty() {
                break; // no pivot in this row
            }
            // smallest magnitude entry becomes the pivot candidate
            let (jmin, _) = nz
                .iter()
                .min_by(|(ja, va), (jb, vb)| va.abs().cmp(&vb.abs()).then(ja.cmp(jb)))
                .map(|(j, v)| (*j, v.clone()))
                .unwrap();
            h.swap(jmin, pc);
            u.swap(jmin, pc);
            let pv = col_get(&h[pc], i);
            let mut remaining = false;
            for j in pc + 1..t {
                let v = col_get(&h[j], i);
                if v.is_zero() {
                    continue;
                }
                let q = &v / &pv; // truncated division shrinks the entry
                if !q.is_zero() {
                    h[j] = col_axpy(&h[j], &q, &h[pc]);
                    u[j] = col_axpy(&u[j], &q, &u[pc]);
                }
                if !col_get(&h[j], i).is_zero() {
                    remaining = true;
                }
            }
            if remaining {
                continue; // another Euclidean round on this row
            }
            if pv.is_negative() {
                for e in h[pc].iter_mut() {
                    e.1 = -e.1.clone();
                }
                for e in u[pc].iter_mut() {
                    e.1 = -e.1.clone();
                }
            }
            let pv = col_get(&h[pc], i);
            // reduce entries left of the pivot into [0, pivot)
            for j in 0..pc {
                let v = col_get(&h[j], i);
                if v.is_zero() {
                    continue;
                }
                let q = v.div_floor(&pv);
                if !q.is_zero() {
                    h[j] = col_axpy(&h[j], &q, &h[pc]);
                    u[j] = col_axpy(&u[j], &q, &u[pc]);
                }
            }
            pivots.push((i, pc));
            pc += 1;
            break;
        }
    }
    Ok(ColHnf { h, u, pivots })
}

fn cols_to_matrix(cols: &[Col], num_rows: usize) -> IntMatrix {
    let mut m = IntMatrix::new(cols.len());
    let mut rows: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); num_rows];
    for (j, col) in cols.iter().enumerate() {
        for (r, v) in col {
            rows[*r].push((j, v.clone()));
        }
    }
    for row in rows {
        m.push_row(row);
    }
    m
}

#[derive(Debug, Clone)]
pub struct HnfResult {
    /// Column-style Hermite Normal Form: `A · U = H`.
    pub h: IntMatrix,
    /// Unimodular transformation applied to the columns of `A`.
    pub u: IntMatrix,
    pub rank: usize,
    /// (row, column) positions of the HNF pivots.
    pub pivots: Vec<(usize, usize)>,
}

/// Column-style HNF by Euclidean column reduction. Deterministic.
pub fn hnf(a: &IntMatrix) -> HnfResult {
    hnf_with_deadline(a, &Deadline::none()).expect("no deadline set")
}

pub fn hnf_with_deadline(a: &IntMatrix, deadline: &Deadline) -> Result<HnfResult, LinalgError> {
    let res = hnf_cols(a, deadline)?;
    Ok(HnfResult {
        h: cols_to_matrix(&res.h, a.num_rows()),
        u: cols_to_matrix(&res.u, a.num_cols),
        rank: res.pivots.len(),
        pivots: res.pivots,
    })
}

#[derive(Debug, Clone)]
pub struct IntegerConsistency {
    pub solvable: bool,
    pub integer_solution: Option<Vec<BigInt>>,
    /// y with yA integral and yb non-integral, proving no integer solution.
    pub non_integrality_certificate: Option<Vec<BigRational>>,
}

/// Decide solvability of `A x = b` over the integers.
///
/// Runs a rational consistency check first (rational inconsistency already
/// refutes), then reduces a full-row-rank subsystem to HNF and solves the
/// triangular system; the solution is integral iff an integer solution
/// exists.
pub fn integer_consistent(
    a: &IntMatrix,
    b: &[BigInt],
    deadline: &Deadline,
) -> Result<IntegerConsistency, LinalgError> {
    if a.num_rows() != b.len() {
        return Err(LinalgError::DimensionMismatch { rows: a.num_rows(), rhs: b.len() });
    }
    let ra = RationalMatrix::from(a);
    let rb: Vec<BigRational> = b.iter().map(|v| BigRational::from_integer(v.clone())).collect();
    let elim = eliminate(&ra, &rb, deadline)?;
    if !elim.consistent {
        // scale the Farkas vector so yb = 1/2: then yA = 0 is integral and
        // yb is non-integral, which is the certificate shape we promise
        let y = elim.inconsistency_certificate.unwrap();
        let yb: BigRational = y.iter().zip(&rb).map(|(u, v)| u * v).sum();
        let scale = (BigRational::from_integer(2.into()) * yb).recip();
        let y = y.into_iter().map(|v| v * &scale).collect();
        return Ok(IntegerConsistency {
            solvable: false,
            integer_solution: None,
            non_integrality_certificate: Some(y),
        });
    }

    // full-row-rank consistent subsystem from the elimination's row basis
    let basis: Vec<usize> = elim.pivot_rows.iter().map(|(r, _)| *r).collect();
    let mut sub = IntMatrix::new(a.num_cols);
    let mut sub_b = Vec::with_capacity(basis.len());
    for &r in &basis {
        sub.rows.push(a.rows[r].clone());
        sub_b.push(b[r].clone());
    }
    let r = basis.len();
    if r == 0 {
        // A = 0 and b = 0: the zero vector solves it
        return Ok(IntegerConsistency {
            solvable: true,
            integer_solution: Some(vec![BigInt::zero(); a.num_cols]),
            non_integrality_certificate: None,
        });
    }

    let ColHnf { h, u, pivots } = hnf_cols(&sub, deadline)?;
    debug_assert_eq!(pivots.len(), r, "full row rank subsystem must pivot every row");
    debug_assert!(pivots.iter().enumerate().all(|(k, &(i, j))| i == k && j == k));

    // forward solve L z = b' (L = leading r x r lower triangle of H)
    let mut z = Vec::with_capacity(r);
    for i in 0..r {
        let mut sum = BigRational::from_integer(sub_b[i].clone());
        for (jb, zb) in z.iter().enumerate().take(i) {
            let l = col_get(&h[jb], i);
            if !l.is_zero() {
                sum -= BigRational::from_integer(l) * zb;
            }
        }
        let piv = col_get(&h[i], i);
        z.push(sum / BigRational::from_integer(piv));
    }

    if let Some(bad) = z.iter().position(|v| !v.is_integer()) {
        // back-solve w^T L = e_bad; then y = w (on the basis rows) has
        // yA = row `bad` of U^{-1} (integral) and yb = z_bad (non-integral)
        let mut w = vec![BigRational::zero(); r];
        for col in (0..r).rev() {
            let mut sum = if col == bad { BigRational::one() } else { BigRational::zero() };
            for (row, wv) in w.iter().enumerate().skip(col + 1) {
                let l = col_get(&h[col], row);
                if !l.is_zero() {
                    sum -= BigRational::from_integer(l) * wv;
                }
            }
            let piv = col_get(&h[col], col);
            w[col] = sum / BigRational::from_integer(piv);
        }
        let mut y = vec![BigRational::zero(); a.num_rows()];
        for (k, &row) in basis.iter().enumerate() {
            y[row] = w[k].clone();
        }
        return Ok(IntegerConsistency {
            solvable: false,
            integer_solution: None,
            non_integrality_certificate: Some(y),
        });
    }

    // x = U[:, 0..r] · z
    let mut x = vec![BigInt::zero(); a.num_cols];
    for (k, zk) in z.iter().enumerate() {
        let zk = zk.to_integer();
        if zk.is_zero() {
            continue;
        }
        for (row, v) in &u[k] {
            x[*row] += v * &zk;
        }
    }
    debug_assert!((0..a.num_rows()).all(|i| a.row_dot_int(i, &x) == b[i]));
    Ok(IntegerConsistency {
        solvable: true,
        integer_solution: Some(x),
        non_integrality_certificate: None,
    })
}

/// Exact determinant of a dense square integer matrix (Bareiss).
/// Used to re-verify unimodularity of HNF transforms.
pub fn det(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    assert!(a.iter().all(|r| r.len() == n), "matrix must be square");
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Sparse matrix product, used by tests to re-verify `A·U = H`.
pub fn matmul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut out = IntMatrix::new(b.num_cols);
    for row in &a.rows {
        let mut acc: Vec<BigInt> = vec![BigInt::zero(); b.num_cols];
        for (k, v) in row {
            for (c, w) in &b.rows[*k] {
                acc[*c] += v * w;
            }
        }
        out.push_row(
            acc.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect(),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[&[i64]]) -> IntMatrix {
        let n = rows[0].len();
        let mut m = IntMatrix::new(n);
        for row in rows {
            m.push_row(
                row.iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0)
                    .map(|(c, v)| (c, BigInt::from(*v)))
                    .collect(),
            );
        }
        m
    }

    fn iv(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check_hnf(a: &IntMatrix, res: &HnfResult) {
        assert_eq!(matmul(a, &res.u), res.h);
        let du = det(&res.u.to_dense());
        assert!(du.abs().is_one(), "U not unimodular: det {du}");
        for &(i, j) in &res.pivots {
            let dense = res.h.to_dense();
            assert!(dense[i][j] > BigInt::zero());
            for jj in j + 1..res.h.num_cols {
                assert!(dense[i][jj].is_zero(), "entry right of pivot nonzero");
            }
        }
    }

    #[test]
    fn already_hnf_diagonal() {
        let a = im(&[&[2, 0], &[0, 3]]);
        let res = hnf(&a);
        assert_eq!(res.h, a);
        assert_eq!(res.u, im(&[&[1, 0], &[0, 1]]));
        assert_eq!(res.rank, 2);
        check_hnf(&a, &res);
    }

    #[test]
    fn gcd_row() {
        let a = im(&[&[2, 4]]);
        let res = hnf(&a);
        let dense = res.h.to_dense();
        assert_eq!(dense[0][0], BigInt::from(2));
        assert!(dense[0][1].is_zero());
        check_hnf(&a, &res);
    }

    #[test]
    fn rank_deficient() {
        let a = im(&[&[1, 2, 3], &[2, 4, 6]]);
        let res = hnf(&a);
        assert_eq!(res.rank, 1);
        check_hnf(&a, &res);
    }

    #[test]
    fn parity_refutes_integers() {
        let a = im(&[&[2]]);
        let res = integer_consistent(&a, &iv(&[1]), &Deadline::none()).unwrap();
        assert!(!res.solvable);
        let y = res.non_integrality_certificate.unwrap();
        // yA integral, yb non-integral
        let ya = &y[0] * BigRational::from_integer(2.into());
        assert!(ya.is_integer());
        assert!(!y[0].is_integer());
    }

    #[test]
    fn simple_solvable() {
        let a = im(&[&[1, 1]]);
        let res = integer_consistent(&a, &iv(&[1]), &Deadline::none()).unwrap();
        assert!(res.solvable);
        let x = res.integer_solution.unwrap();
        assert_eq!(&x[0] + &x[1], BigInt::from(1));
    }

    #[test]
    fn rationally_inconsistent_is_integer_unsolvable() {
        let a = im(&[&[1, 1], &[1, 1]]);
        let res = integer_consistent(&a, &iv(&[1, 2]), &Deadline::none()).unwrap();
        assert!(!res.solvable);
        let y = res.non_integrality_certificate.unwrap();
        let ya = RationalMatrix::from(&a).left_mul(&y);
        assert!(ya.iter().all(|v| v.is_integer()));
        let yb: BigRational = y
            .iter()
            .zip(iv(&[1, 2]))
            .map(|(u, v)| u * BigRational::from_integer(v))
            .sum();
        assert!(!yb.is_integer());
    }

    #[test]
    fn forced_half_variable() {
        // x1 + x2 = 1, x1 - x2 = 0 forces x1 = 1/2: rationally consistent,
        // integer unsolvable
        let a = im(&[&[1, 1], &[1, -1]]);
        let res = integer_consistent(&a, &iv(&[1, 0]), &Deadline::none()).unwrap();
        assert!(!res.solvable);
        let y = res.non_integrality_certificate.unwrap();
        let ya = RationalMatrix::from(&a).left_mul(&y);
        assert!(ya.iter().all(|v| v.is_integer()));
        let yb: BigRational = y
            .iter()
            .zip(iv(&[1, 0]))
            .map(|(u, v)| u * BigRational::from_integer(v))
            .sum();
        assert!(!yb.is_integer());
    }

    #[test]
    fn det_small_cases() {
        assert_eq!(det(&im(&[&[1, 2], &[3, 4]]).to_dense()), BigInt::from(-2));
        assert_eq!(det(&im(&[&[2, 0], &[0, 3]]).to_dense()), BigInt::from(6));
        assert_eq!(det(&im(&[&[1, 2], &[2, 4]]).to_dense()), BigInt::zero());
    }
}
