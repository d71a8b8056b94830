//! Full SAT/UNSAT front-end: reduce CNF satisfiability to exactly-one
//! satisfiability, run the kernel, and lift witnesses back.

use crate::formula::{Assignment, CnfFormula};
use crate::laf::{kernel_check, Answer, KernelOptions, KernelVerdict, LafError};
use crate::reduce::{lift_witness, reduce_sat_to_eos, ReduceError, ReductionTrace};
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error(transparent)]
    Laf(#[from] LafError),
    #[error("soundness bug: lifted witness does not satisfy the original formula")]
    WitnessVerificationFailed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum SatAnswer {
    #[serde(rename = "SAT")]
    Sat,
    #[serde(rename = "UNSAT")]
    Unsat,
    #[serde(rename = "Unk")]
    Unk,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct ReductionStats {
    pub original_vars: usize,
    pub original_clauses: usize,
    pub reduced_vars: usize,
    pub reduced_clauses: usize,
}

#[derive(Debug)]
pub struct SatVerdict {
    pub answer: SatAnswer,
    /// Witness over the original variables, verified before return.
    pub witness: Option<Assignment>,
    pub kernel_report: Option<KernelVerdict>,
    pub reduction_stats: ReductionStats,
    pub trace: ReductionTrace,
    pub note: Option<String>,
}

impl SatVerdict {
    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = json!({
            "schema_version": 1,
            "answer": self.answer,
            "reduction_stats": self.reduction_stats,
        });
        if let Some(w) = &self.witness {
            obj["witness"] =
                json!(w.values.iter().map(|&b| if b { 1 } else { 0 }).collect::<Vec<u8>>());
        }
        if let Some(k) = &self.kernel_report {
            obj["kernel_report"] = k.to_json();
        }
        if let Some(n) = &self.note {
            obj["note"] = json!(n);
        }
        obj
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PipelineOptions {
    pub kernel: KernelOptions,
    /// Reduced formulas with more variables than this are not attempted;
    /// the ReL system grows quadratically in the variable count.
    pub size_cap: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { kernel: KernelOptions::default(), size_cap: 2000 }
    }
}

/// Algorithm-2 style SAT test: reduce to a positive 3-CNF exactly-one
/// instance, run the kernel, map EOS to SAT (with verified witness),
/// EOU to UNSAT, Unk to Unk.
pub fn laf_sat_check(f: &CnfFormula, opts: &PipelineOptions) -> Result<SatVerdict, PipelineError> {
    let (reduced, trace) = reduce_sat_to_eos(f)?;
    let stats = ReductionStats {
        original_vars: f.num_vars(),
        original_clauses: f.num_clauses(),
        reduced_vars: reduced.num_vars(),
        reduced_clauses: reduced.num_clauses(),
    };
    if reduced.num_vars() > opts.size_cap {
        return Ok(SatVerdict {
            answer: SatAnswer::Unk,
            witness: None,
            kernel_report: None,
            reduction_stats: stats,
            trace,
            note: Some(format!(
                "size-capped: reduced instance has {} variables (cap {})",
                reduced.num_vars(),
                opts.size_cap
            )),
        });
    }
    let kernel = kernel_check(&reduced, &opts.kernel)?;
    let (answer, witness) = match kernel.answer {
        Answer::Eos => {
            let w = kernel.witness.clone().expect("EOS carries a witness");
            let lifted = lift_witness(&trace, &w)?;
            if !f.satisfied_by(&lifted.values) {
                return Err(PipelineError::WitnessVerificationFailed);
            }
            (SatAnswer::Sat, Some(lifted))
        }
        Answer::Eou => (SatAnswer::Unsat, None),
        Answer::Unk => (SatAnswer::Unk, None),
    };
    Ok(SatVerdict {
        answer,
        witness,
        kernel_report: Some(kernel),
        reduction_stats: stats,
        trace,
        note: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::enumerate_sat;

    fn codes(num_vars: usize, cl: &[&[i64]]) -> CnfFormula {
        CnfFormula::from_codes(num_vars, cl).unwrap()
    }

    #[test]
    fn contradiction_is_unsat() {
        let f = codes(1, &[&[1], &[-1]]);
        let v = laf_sat_check(&f, &PipelineOptions::default()).unwrap();
        assert_eq!(v.answer, SatAnswer::Unsat);
        assert_eq!(v.kernel_report.as_ref().unwrap().answer, Answer::Eou);
    }

    #[test]
    fn satisfiable_clause_never_unsat() {
        let f = codes(2, &[&[1, 2]]);
        let v = laf_sat_check(&f, &PipelineOptions::default()).unwrap();
        assert_ne!(v.answer, SatAnswer::Unsat);
        if v.answer == SatAnswer::Sat {
            assert!(f.satisfied_by(&v.witness.unwrap().values));
        }
    }

    #[test]
    fn mixed_polarity_instance_agrees_with_oracle() {
        let f = codes(3, &[&[1, -2], &[2, -3], &[3, -1], &[1, 2, 3]]);
        let sat = !enumerate_sat(&f, 12).unwrap().is_empty();
        let v = laf_sat_check(&f, &PipelineOptions::default()).unwrap();
        match v.answer {
            SatAnswer::Sat => assert!(sat),
            SatAnswer::Unsat => assert!(!sat),
            SatAnswer::Unk => {}
        }
    }

    #[test]
    fn size_cap_returns_unk_with_note() {
        let f = codes(2, &[&[1, 2]]);
        let opts = PipelineOptions { size_cap: 3, ..Default::default() };
        let v = laf_sat_check(&f, &opts).unwrap();
        assert_eq!(v.answer, SatAnswer::Unk);
        assert!(v.note.unwrap().starts_with("size-capped"));
        assert!(v.kernel_report.is_none());
    }

    #[test]
    fn verdict_json_includes_reduction_stats() {
        let f = codes(1, &[&[1], &[-1]]);
        let v = laf_sat_check(&f, &PipelineOptions::default()).unwrap();
        let js = v.to_json();
        assert_eq!(js["schema_version"], 1);
        assert_eq!(js["answer"], "UNSAT");
        assert_eq!(js["reduction_stats"]["original_vars"], 1);
        assert!(js["kernel_report"]["answer"].is_string());
    }
}
