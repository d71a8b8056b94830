//! The LAF core: linearizing transformation, quadratic propagation,
//! relinearization, and the kernel EOS/EOU test.
//!
//! A positive formula maps to the linear system "sum of each clause's
//! variables = 1"; Boolean solutions of that system are exactly the
//! exactly-one witnesses. The relinearized system works over one variable
//! Z_ij per unordered pair i <= j, with Z_uu standing in for X_u
//! (X_u = X_u^2 on Booleans), so the original system embeds as the
//! diagonal rows.

use crate::formula::{Assignment, CnfFormula};
use crate::linalg::{
    box_lp_feasible, eliminate, integer_consistent, Deadline, EliminationResult, IntMatrix,
    LinalgError, RationalMatrix,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::json;
use std::collections::BTreeMap;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LafError {
    #[error("formula is not positive; positivize before the kernel")]
    NotPositive,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("soundness bug: {0}")]
    SoundnessBug(String),
}

/// The LT system: one row per clause, unit coefficients on the clause's
/// variables, right-hand side all ones.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    pub matrix: IntMatrix,
    pub rhs: Vec<BigInt>,
    pub num_vars: usize,
}

impl LinearSystem {
    pub fn check_boolean(&self, x: &[bool]) -> bool {
        (0..self.matrix.num_rows()).all(|r| {
            let sum: BigInt = self.matrix.rows[r]
                .iter()
                .filter(|(c, _)| x[*c])
                .map(|(_, v)| v.clone())
                .sum();
            sum == self.rhs[r]
        })
    }
}

/// Build the LT system of a positive formula.
pub fn linear_transform(f: &CnfFormula) -> Result<LinearSystem, LafError> {
    if !f.is_positive() {
        return Err(LafError::NotPositive);
    }
    let n = f.num_vars();
    let mut matrix = IntMatrix::new(n);
    for c in f.clauses() {
        matrix.push_row(c.literals().iter().map(|l| (l.var - 1, BigInt::one())).collect());
    }
    let rhs = vec![BigInt::one(); f.num_clauses()];
    Ok(LinearSystem { matrix, rhs, num_vars: n })
}

/// Deterministic bijection between unordered pairs {i,j}, 0-based i <= j,
/// and the Z-columns 0..n(n+1)/2 (row-major over i <= j).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonomialIndex {
    n: usize,
}

impl MonomialIndex {
    pub fn new(n: usize) -> Self {
        MonomialIndex { n }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    /// Number of Z-variables, n(n+1)/2.
    pub fn v(&self) -> usize {
        self.n * (self.n + 1) / 2
    }

    /// Column of Z_{ij}; arguments in either order.
    pub fn index(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        debug_assert!(j < self.n);
        i * self.n - i * (i + 1) / 2 + j
    }

    /// Inverse of `index`.
    pub fn pair(&self, k: usize) -> (usize, usize) {
        let mut i = 0;
        let mut base = 0;
        loop {
            let row_len = self.n - i;
            if k < base + row_len {
                return (i, i + (k - base));
            }
            base += row_len;
            i += 1;
        }
    }
}

/// Provenance of a ReL row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowTag {
    /// Product of clause rows i and t (i <= t), rhs 1.
    Iqp { i: usize, t: usize },
    /// Variable u times clause row i, minus Z_uu, rhs 0.
    Cqp { u: usize, i: usize },
    /// Clause row i re-expressed on the diagonal, rhs 1.
    Diag { i: usize },
}

/// The relinearized system over the Z-variables.
#[derive(Debug, Clone)]
pub struct RelSystem {
    pub matrix: IntMatrix,
    pub rhs: Vec<BigInt>,
    pub index: MonomialIndex,
    pub tags: Vec<RowTag>,
}

impl RelSystem {
    pub fn check_int_solution(&self, z: &[BigInt]) -> bool {
        (0..self.matrix.num_rows()).all(|r| self.matrix.row_dot_int(r, z) == self.rhs[r])
    }
}

/// Z_{ij} = x_i * x_j for a Boolean vector x. By Theorem-1 style lifting,
/// this satisfies every ReL row whenever x solves the LT system.
pub fn outer_product_lift(x: &[bool], index: &MonomialIndex) -> Vec<BigInt> {
    let mut z = vec![BigInt::zero(); index.v()];
    for i in 0..x.len() {
        for j in i..x.len() {
            if x[i] && x[j] {
                z[index.index(i, j)] = BigInt::one();
            }
        }
    }
    z
}

/// Quadratic propagation plus relinearization.
///
/// IQP rows multiply clause sums pairwise (i <= t); on the diagonal the
/// square expands with coefficient 2 on cross terms. CQP rows multiply
/// every variable u against every clause row and use X_u = X_u^2, folded
/// as coefficients over Z with -Z_uu moved to the left side (rhs 0).
/// DIAG rows restate the LT rows over Z_uu.
pub fn relinearize(ls: &LinearSystem) -> RelSystem {
    let n = ls.num_vars;
    let m = ls.matrix.num_rows();
    let index = MonomialIndex::new(n);
    let mut matrix = IntMatrix::new(index.v());
    let mut rhs = Vec::new();
    let mut tags = Vec::new();

    let clause_vars: Vec<Vec<usize>> = ls
        .matrix
        .rows
        .iter()
        .map(|row| row.iter().map(|(c, _)| *c).collect())
        .collect();

    // IQP: (sum of C_i) * (sum of C_t) = 1 for i <= t
    for i in 0..m {
        for t in i..m {
            let mut coef: BTreeMap<usize, BigInt> = BTreeMap::new();
            for &u in &clause_vars[i] {
                for &w in &clause_vars[t] {
                    *coef.entry(index.index(u, w)).or_insert_with(BigInt::zero) += 1;
                }
            }
            matrix.push_row(coef.into_iter().collect());
            rhs.push(BigInt::one());
            tags.push(RowTag::Iqp { i, t });
        }
    }
    // CQP: X_u * (sum of C_i) = X_u^2 for every variable u and clause i
    for u in 0..n {
        for i in 0..m {
            let mut coef: BTreeMap<usize, BigInt> = BTreeMap::new();
            for &w in &clause_vars[i] {
                *coef.entry(index.index(u, w)).or_insert_with(BigInt::zero) += 1;
            }
            *coef.entry(index.index(u, u)).or_insert_with(BigInt::zero) -= 1;
            matrix.push_row(coef.into_iter().filter(|(_, v)| !v.is_zero()).collect());
            rhs.push(BigInt::zero());
            tags.push(RowTag::Cqp { u, i });
        }
    }
    // DIAG: sum of Z_uu over C_i = 1 (the LT system on the diagonal)
    for i in 0..m {
        let coef: Vec<(usize, BigInt)> =
            clause_vars[i].iter().map(|&u| (index.index(u, u), BigInt::one())).collect();
        matrix.push_row(coef);
        rhs.push(BigInt::one());
        tags.push(RowTag::Diag { i });
    }

    RelSystem { matrix, rhs, index, tags }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Answer {
    #[serde(rename = "EOS")]
    Eos,
    #[serde(rename = "EOU")]
    Eou,
    #[serde(rename = "Unk")]
    Unk,
}

/// Which test produced the EOU certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    LtRational,
    LtInteger,
    UniqueNonBoolean,
    RelRational,
    RelInteger,
    RelBox,
}

impl Stage {
    pub fn name(&self) -> &'static str {
        match self {
            Stage::LtRational => "LT-R",
            Stage::LtInteger => "LT-Z",
            Stage::UniqueNonBoolean => "unique-non-Boolean",
            Stage::RelRational => "ReL-R",
            Stage::RelInteger => "ReL-Z",
            Stage::RelBox => "ReL-box",
        }
    }
}

/// An independently re-verifiable refutation.
#[derive(Debug, Clone)]
pub enum CertificateData {
    /// Farkas vector (yA = 0, yb != 0) or non-integrality vector
    /// (yA integral, yb non-integral) against the tagged system.
    Vector(Vec<BigRational>),
    /// The unique rational LT solution, which is not Boolean.
    Solution(Vec<BigRational>),
    /// Box-LP infeasibility carries no compact certificate here.
    BoxInfeasible,
}

#[derive(Debug, Clone)]
pub struct Certificate {
    pub stage: Stage,
    pub data: CertificateData,
}

#[derive(Debug, Clone, Default)]
pub struct KernelStats {
    pub n: usize,
    pub m: usize,
    pub v: usize,
    pub rel_rows: usize,
    pub lt_rank: Option<usize>,
    pub rel_rank: Option<usize>,
    pub elapsed_ms: BTreeMap<&'static str, u128>,
    pub timed_out_stages: Vec<&'static str>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct KernelVerdict {
    pub answer: Answer,
    pub witness: Option<Assignment>,
    pub certificate: Option<Certificate>,
    pub stats: KernelStats,
}

fn rat_str(v: &BigRational) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

impl KernelVerdict {
    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = json!({
            "schema_version": 1,
            "answer": self.answer,
            "stats": {
                "n": self.stats.n,
                "m": self.stats.m,
                "v": self.stats.v,
                "rel_rows": self.stats.rel_rows,
                "lt_rank": self.stats.lt_rank,
                "rel_rank": self.stats.rel_rank,
                "elapsed_ms": self.stats.elapsed_ms,
                "timed_out_stages": self.stats.timed_out_stages,
                "warnings": self.stats.warnings,
            },
        });
        if let Some(w) = &self.witness {
            obj["witness"] =
                json!(w.values.iter().map(|&b| if b { 1 } else { 0 }).collect::<Vec<u8>>());
        }
        if let Some(c) = &self.certificate {
            let mut cert = json!({ "stage": c.stage.name() });
            match &c.data {
                CertificateData::Vector(v) => {
                    cert["vector"] = json!(v.iter().map(rat_str).collect::<Vec<_>>());
                }
                CertificateData::Solution(v) => {
                    cert["solution"] = json!(v.iter().map(rat_str).collect::<Vec<_>>());
                }
                CertificateData::BoxInfeasible => {
                    cert["note"] = json!("box LP infeasible");
                }
            }
            obj["certificate"] = cert;
        }
        obj
    }
}

#[derive(Debug, Clone, Copy)]
pub struct KernelOptions {
    /// Run the HNF-based integer solvability test after each rational check.
    pub use_integer_check: bool,
    /// Also try exact LP feasibility of the unit-box relaxation of ReL.
    pub use_box_lp: bool,
    /// Per-stage wall clock budget; None means unbounded.
    pub stage_timeout_ms: Option<u64>,
}

impl Default for KernelOptions {
    fn default() -> Self {
        KernelOptions { use_integer_check: true, use_box_lp: false, stage_timeout_ms: None }
    }
}

impl KernelOptions {
    fn deadline(&self) -> Deadline {
        match self.stage_timeout_ms {
            Some(ms) => Deadline::after_ms(ms),
            None => Deadline::none(),
        }
    }
}

fn is_boolean(x: &[BigRational]) -> Option<Vec<bool>> {
    let mut out = Vec::with_capacity(x.len());
    for v in x {
        if v.is_zero() {
            out.push(false);
        } else if v.is_one() {
            out.push(true);
        } else {
            return None;
        }
    }
    Some(out)
}

struct Timed<T> {
    value: Result<T, LinalgError>,
    ms: u128,
}

fn timed<T>(f: impl FnOnce() -> Result<T, LinalgError>) -> Timed<T> {
    let t0 = Instant::now();
    let value = f();
    Timed { value, ms: t0.elapsed().as_millis() }
}

/// Algorithm-1 style kernel: decide EOS/EOU of a positive formula via
/// exact consistency tests on the LT and ReL systems.
pub fn kernel_check(f: &CnfFormula, opts: &KernelOptions) -> Result<KernelVerdict, LafError> {
    let ls = linear_transform(f)?;
    let n = ls.num_vars;
    let m = ls.matrix.num_rows();
    let mut stats = KernelStats {
        n,
        m,
        v: n * (n + 1) / 2,
        ..Default::default()
    };
    if f.flags().max_width > 3 {
        stats
            .warnings
            .push(format!("clause width {} exceeds 3; the math still applies", f.flags().max_width));
    }
    let eos = |witness: Vec<bool>, stats: KernelStats| -> Result<KernelVerdict, LafError> {
        let a = Assignment::new(witness);
        if !f.exactly_one_by(&a.values) {
            return Err(LafError::SoundnessBug(
                "EOS witness fails exactly-one verification".into(),
            ));
        }
        Ok(KernelVerdict { answer: Answer::Eos, witness: Some(a), certificate: None, stats })
    };
    let eou = |stage: Stage, data: CertificateData, stats: KernelStats| KernelVerdict {
        answer: Answer::Eou,
        witness: None,
        certificate: Some(Certificate { stage, data }),
        stats,
    };
    let unk = |stats: KernelStats| KernelVerdict {
        answer: Answer::Unk,
        witness: None,
        certificate: None,
        stats,
    };

    // (a) LT consistency over Q, then over Z
    let lt_rat = RationalMatrix::from(&ls.matrix);
    let lt_rhs: Vec<BigRational> =
        ls.rhs.iter().map(|v| BigRational::from_integer(v.clone())).collect();
    let t = timed(|| eliminate(&lt_rat, &lt_rhs, &opts.deadline()));
    stats.elapsed_ms.insert("lt_eliminate", t.ms);
    let lt_elim: EliminationResult = match t.value {
        Ok(r) => r,
        Err(LinalgError::Timeout) => {
            stats.timed_out_stages.push("lt_eliminate");
            return Ok(unk(stats));
        }
        Err(e) => return Err(e.into()),
    };
    stats.lt_rank = Some(lt_elim.rank);
    if !lt_elim.consistent {
        let y = lt_elim.inconsistency_certificate.unwrap();
        return Ok(eou(Stage::LtRational, CertificateData::Vector(y), stats));
    }
    if opts.use_integer_check {
        let t = timed(|| integer_consistent(&ls.matrix, &ls.rhs, &opts.deadline()));
        stats.elapsed_ms.insert("lt_integer", t.ms);
        match t.value {
            Ok(ic) if !ic.solvable => {
                let y = ic.non_integrality_certificate.unwrap();
                return Ok(eou(Stage::LtInteger, CertificateData::Vector(y), stats));
            }
            Ok(_) => {}
            Err(LinalgError::Timeout) => stats.timed_out_stages.push("lt_integer"),
            Err(e) => return Err(e.into()),
        }
    }

    // (b) unique rational LT solution: Boolean -> EOS, otherwise EOU
    if lt_elim.rank == n {
        let x = lt_elim.particular_solution.unwrap();
        match is_boolean(&x) {
            Some(w) => return eos(w, stats),
            None => {
                return Ok(eou(Stage::UniqueNonBoolean, CertificateData::Solution(x), stats))
            }
        }
    }

    // (c) relinearize, then Q / Z / box checks
    let t0 = Instant::now();
    let rel = relinearize(&ls);
    stats.elapsed_ms.insert("rel_build", t0.elapsed().as_millis());
    stats.rel_rows = rel.matrix.num_rows();
    let rel_rat = RationalMatrix::from(&rel.matrix);
    let rel_rhs: Vec<BigRational> =
        rel.rhs.iter().map(|v| BigRational::from_integer(v.clone())).collect();
    let t = timed(|| eliminate(&rel_rat, &rel_rhs, &opts.deadline()));
    stats.elapsed_ms.insert("rel_eliminate", t.ms);
    let rel_elim = match t.value {
        Ok(r) => r,
        Err(LinalgError::Timeout) => {
            stats.timed_out_stages.push("rel_eliminate");
            return Ok(unk(stats));
        }
        Err(e) => return Err(e.into()),
    };
    stats.rel_rank = Some(rel_elim.rank);
    if !rel_elim.consistent {
        let y = rel_elim.inconsistency_certificate.unwrap();
        return Ok(eou(Stage::RelRational, CertificateData::Vector(y), stats));
    }
    if opts.use_integer_check {
        let t = timed(|| integer_consistent(&rel.matrix, &rel.rhs, &opts.deadline()));
        stats.elapsed_ms.insert("rel_integer", t.ms);
        match t.value {
            Ok(ic) if !ic.solvable => {
                let y = ic.non_integrality_certificate.unwrap();
                return Ok(eou(Stage::RelInteger, CertificateData::Vector(y), stats));
            }
            Ok(_) => {}
            Err(LinalgError::Timeout) => stats.timed_out_stages.push("rel_integer"),
            Err(e) => return Err(e.into()),
        }
    }
    if opts.use_box_lp {
        let t = timed(|| box_lp_feasible(&rel_rat, &rel_rhs, &opts.deadline()));
        stats.elapsed_ms.insert("rel_box", t.ms);
        match t.value {
            Ok(false) => {
                return Ok(eou(Stage::RelBox, CertificateData::BoxInfeasible, stats));
            }
            Ok(true) => {}
            Err(LinalgError::Timeout) => stats.timed_out_stages.push("rel_box"),
            Err(e) => return Err(e.into()),
        }
    }

    // (d) unique rational ReL solution with a coherent Boolean diagonal
    if rel_elim.rank == rel.index.v() {
        let z = rel_elim.particular_solution.as_ref().unwrap();
        let diag: Vec<BigRational> =
            (0..n).map(|u| z[rel.index.index(u, u)].clone()).collect();
        if let Some(w) = is_boolean(&diag) {
            let coherent = (0..n).all(|i| {
                (i..n).all(|j| {
                    let expect = w[i] && w[j];
                    let got = &z[rel.index.index(i, j)];
                    (expect && got.is_one()) || (!expect && got.is_zero())
                })
            });
            if coherent {
                return eos(w, stats);
            }
        }
    }
    Ok(unk(stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::bos_search;

    fn codes(num_vars: usize, cl: &[&[i64]]) -> CnfFormula {
        CnfFormula::from_codes(num_vars, cl).unwrap()
    }

    fn toy() -> CnfFormula {
        codes(4, &[&[1, 2, 3], &[2, 3, 4], &[1, 4]])
    }

    fn example2() -> CnfFormula {
        codes(6, &[&[1, 2, 3], &[2, 4, 5], &[2, 6], &[3, 4, 6]])
    }

    #[test]
    fn lt_of_toy_formula() {
        let ls = linear_transform(&toy()).unwrap();
        assert_eq!(ls.matrix.num_rows(), 3);
        assert_eq!(ls.num_vars, 4);
        let dense = ls.matrix.to_dense();
        let want: Vec<Vec<BigInt>> = [[1, 1, 1, 0], [0, 1, 1, 1], [1, 0, 0, 1]]
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        assert_eq!(dense, want);
    }

    #[test]
    fn lt_single_clause() {
        let ls = linear_transform(&codes(1, &[&[1]])).unwrap();
        assert_eq!(ls.matrix.to_dense(), vec![vec![BigInt::one()]]);
        assert_eq!(ls.rhs, vec![BigInt::one()]);
    }

    #[test]
    fn lt_rejects_non_positive() {
        assert!(matches!(
            linear_transform(&codes(1, &[&[-1]])),
            Err(LafError::NotPositive)
        ));
    }

    #[test]
    fn monomial_index_bijection() {
        for n in 1..=8 {
            let idx = MonomialIndex::new(n);
            let mut seen = vec![false; idx.v()];
            for i in 0..n {
                for j in i..n {
                    let k = idx.index(i, j);
                    assert!(!seen[k]);
                    seen[k] = true;
                    assert_eq!(idx.pair(k), (i, j));
                    assert_eq!(idx.index(j, i), k);
                }
            }
            assert!(seen.into_iter().all(|b| b));
        }
    }

    #[test]
    fn rel_row_counts() {
        let ls = linear_transform(&example2()).unwrap();
        let rel = relinearize(&ls);
        let (n, m) = (6, 4);
        assert_eq!(rel.matrix.num_rows(), m * (m + 1) / 2 + m * n + m);
        assert_eq!(rel.matrix.num_cols, n * (n + 1) / 2);
    }

    #[test]
    fn rel_single_clause_consistent() {
        let ls = linear_transform(&codes(1, &[&[1]])).unwrap();
        let rel = relinearize(&ls);
        // IQP Z11 = 1, CQP degenerates to 0 = 0, DIAG Z11 = 1
        assert!(rel.check_int_solution(&[BigInt::one()]));
        let v = kernel_check(&codes(1, &[&[1]]), &KernelOptions::default()).unwrap();
        assert_eq!(v.answer, Answer::Eos);
        assert_eq!(v.witness.unwrap().values, vec![true]);
    }

    #[test]
    fn iqp_diagonal_has_cross_coefficient_2() {
        let ls = linear_transform(&codes(3, &[&[1, 2, 3]])).unwrap();
        let rel = relinearize(&ls);
        let idx = rel.index;
        // first row is IQP(0,0): (x1+x2+x3)^2
        assert_eq!(rel.tags[0], RowTag::Iqp { i: 0, t: 0 });
        let row = &rel.matrix.rows[0];
        let get = |i: usize, j: usize| {
            row.iter().find(|(c, _)| *c == idx.index(i, j)).map(|(_, v)| v.clone())
        };
        assert_eq!(get(0, 0), Some(BigInt::one()));
        assert_eq!(get(0, 1), Some(BigInt::from(2)));
        assert_eq!(get(1, 2), Some(BigInt::from(2)));
    }

    #[test]
    fn toy_rel_is_rationally_inconsistent() {
        let ls = linear_transform(&toy()).unwrap();
        let rel = relinearize(&ls);
        let a = RationalMatrix::from(&rel.matrix);
        let b: Vec<BigRational> =
            rel.rhs.iter().map(|v| BigRational::from_integer(v.clone())).collect();
        let res = eliminate(&a, &b, &Deadline::none()).unwrap();
        assert!(!res.consistent);
    }

    #[test]
    fn kernel_on_toy_formula_is_eou() {
        let v = kernel_check(&toy(), &KernelOptions::default()).unwrap();
        assert_eq!(v.answer, Answer::Eou);
        // the LT system already has no integer solution (X1 = X4 = 1/2 is
        // forced), so the default pipeline stops at the LT integer stage
        assert_eq!(v.certificate.unwrap().stage, Stage::LtInteger);

        // with the integer check disabled the refutation comes from the
        // relinearized system's rational inconsistency
        let opts = KernelOptions { use_integer_check: false, ..Default::default() };
        let v = kernel_check(&toy(), &opts).unwrap();
        assert_eq!(v.answer, Answer::Eou);
        assert_eq!(v.certificate.unwrap().stage, Stage::RelRational);
    }

    #[test]
    fn kernel_on_example2_is_eos_with_paper_witness() {
        let v = kernel_check(&example2(), &KernelOptions::default()).unwrap();
        assert_eq!(v.answer, Answer::Eos);
        assert_eq!(
            v.witness.unwrap().values,
            vec![true, false, false, false, true, true]
        );
    }

    #[test]
    fn example2_rel_unique_solution_matches_paper() {
        let ls = linear_transform(&example2()).unwrap();
        let rel = relinearize(&ls);
        let a = RationalMatrix::from(&rel.matrix);
        let b: Vec<BigRational> =
            rel.rhs.iter().map(|v| BigRational::from_integer(v.clone())).collect();
        let z = crate::linalg::unique_solution(&a, &b, &Deadline::none())
            .unwrap()
            .expect("unique over Q");
        let idx = rel.index;
        let ones = [(0, 0), (0, 4), (0, 5), (4, 4), (4, 5), (5, 5)];
        for i in 0..6 {
            for j in i..6 {
                let want = ones.contains(&(i, j));
                let got = &z[idx.index(i, j)];
                assert_eq!(got.is_one(), want, "Z_{}{}", i + 1, j + 1);
                assert_eq!(got.is_zero(), !want, "Z_{}{}", i + 1, j + 1);
            }
        }
    }

    #[test]
    fn outer_lift_satisfies_rel_for_lt_solutions() {
        let f = example2();
        let ls = linear_transform(&f).unwrap();
        let rel = relinearize(&ls);
        let x = bos_search(&ls.matrix, &ls.rhs, 24).unwrap().expect("BoS exists");
        let z = outer_product_lift(&x, &rel.index);
        assert!(rel.check_int_solution(&z));
    }

    #[test]
    fn verdict_json_shape() {
        let v = kernel_check(&toy(), &KernelOptions::default()).unwrap();
        let js = v.to_json();
        assert_eq!(js["schema_version"], 1);
        assert_eq!(js["answer"], "EOU");
        assert!(js["certificate"]["stage"].is_string());
        assert!(js["stats"]["n"].is_u64());
    }
}
