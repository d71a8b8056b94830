//! Exhaustive ground truth for small instances. Deliberately the dumbest
//! possible implementations: these are the trust anchor for every
//! soundness test.

use crate::formula::{Assignment, CnfFormula};
use crate::linalg::IntMatrix;
use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

pub const DEFAULT_LIMIT: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance has {got} variables, enumeration limit is {limit}")]
    TooLarge { got: usize, limit: usize },
}

fn assignments(n: usize) -> impl Iterator<Item = Vec<bool>> {
    // lexicographic over tuples: variable 1 is the most significant bit
    (0u64..(1u64 << n)).map(move |k| (0..n).map(|i| (k >> (n - 1 - i)) & 1 == 1).collect())
}

/// All assignments under which every clause has exactly one true literal,
/// in lexicographic order.
pub fn enumerate_eos(f: &CnfFormula, limit: usize) -> Result<Vec<Assignment>, OracleError> {
    let n = f.num_vars();
    if n > limit {
        return Err(OracleError::TooLarge { got: n, limit });
    }
    Ok(assignments(n)
        .filter(|v| f.exactly_one_by(v))
        .map(Assignment::new)
        .collect())
}

/// All satisfying assignments, in lexicographic order.
pub fn enumerate_sat(f: &CnfFormula, limit: usize) -> Result<Vec<Assignment>, OracleError> {
    let n = f.num_vars();
    if n > limit {
        return Err(OracleError::TooLarge { got: n, limit });
    }
    Ok(assignments(n)
        .filter(|v| f.satisfied_by(v))
        .map(Assignment::new)
        .collect())
}

/// First Boolean solution of `A x = b` in lexicographic order, or None.
pub fn bos_search(
    a: &IntMatrix,
    b: &[BigInt],
    limit: usize,
) -> Result<Option<Vec<bool>>, OracleError> {
    let n = a.num_cols;
    if n > limit {
        return Err(OracleError::TooLarge { got: n, limit });
    }
    for v in assignments(n) {
        let ok = (0..a.num_rows()).all(|r| {
            let sum: BigInt = a.rows[r]
                .iter()
                .filter(|(c, _)| v[*c])
                .map(|(_, coef)| coef.clone())
                .sum::<BigInt>();
            sum - &b[r] == BigInt::zero()
        });
        if ok {
            return Ok(Some(v));
        }
    }
    Ok(None)
}
