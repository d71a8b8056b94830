//! Equi-satisfiability and equi-EOS reductions: positivization, clause
//! splitting to 3-CNF, the SAT-to-1-in-3 gadget, and witness lift-back.
//!
//! Fresh variables are always appended after the existing ones, in
//! deterministic clause order, so traces and golden tests are stable.

use crate::formula::{Assignment, Clause, CnfFormula, FormulaError, Literal};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReduceError {
    #[error("clause {index} has width {width}, expected at most 3")]
    ClauseTooWide { index: usize, width: usize },
    #[error("assignment has {got} values, output formula has {expected} variables")]
    WitnessLengthMismatch { got: usize, expected: usize },
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

/// Why a fresh variable exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FreshVar {
    /// `Y_u`, standing for the negation of variable `u`.
    NegationOf { var: usize },
    /// Splitter variable introduced while breaking up clause `clause`.
    Splitter { clause: usize },
    /// One of the four gadget variables (`slot` in 0..4) of clause `clause`.
    Gadget { clause: usize, slot: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    Positivize,
    Split3,
    Gadget,
}

/// One reduction step: the fresh variables it introduced, keyed by the
/// variable index in the step's output formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub kind: StepKind,
    pub input_num_vars: usize,
    pub output_num_vars: usize,
    pub fresh: Vec<(usize, FreshVar)>,
}

/// Variable provenance across reduction steps; original variables keep the
/// indices `1..=original_num_vars` throughout, so witnesses lift back by
/// projection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub schema_version: u32,
    pub original_num_vars: usize,
    pub output_num_vars: usize,
    pub steps: Vec<Step>,
}

impl ReductionTrace {
    pub fn identity(num_vars: usize) -> Self {
        ReductionTrace {
            schema_version: 1,
            original_num_vars: num_vars,
            output_num_vars: num_vars,
            steps: Vec::new(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.steps.is_empty()
    }

    /// Append `next` (whose input must be this trace's output).
    pub fn compose(mut self, next: ReductionTrace) -> Self {
        debug_assert_eq!(self.output_num_vars, next.original_num_vars);
        self.output_num_vars = next.output_num_vars;
        self.steps.extend(next.steps);
        self
    }
}

/// Replace every negative literal `!X_u` by a fresh variable `Y_u` and add
/// the clause `(X_u | Y_u)`; the result is positive and equi-EOS with the
/// input. Positive inputs pass through unchanged.
pub fn positivize(f: &CnfFormula) -> (CnfFormula, ReductionTrace) {
    if f.is_positive() {
        return (f.clone(), ReductionTrace::identity(f.num_vars()));
    }
    let n = f.num_vars();
    // Y_u only for variables with at least one negative occurrence
    let mut has_neg = vec![false; n + 1];
    for c in f.clauses() {
        for l in c.literals() {
            if !l.positive {
                has_neg[l.var] = true;
            }
        }
    }
    let mut y_of = vec![0usize; n + 1];
    let mut fresh = Vec::new();
    let mut next = n + 1;
    for u in 1..=n {
        if has_neg[u] {
            y_of[u] = next;
            fresh.push((next, FreshVar::NegationOf { var: u }));
            next += 1;
        }
    }
    let out_vars = next - 1;

    let mut clauses: Vec<Clause> = f
        .clauses()
        .iter()
        .map(|c| {
            let lits = c
                .literals()
                .iter()
                .map(|l| if l.positive { *l } else { Literal::pos(y_of[l.var]) })
                .collect();
            Clause::new(lits).expect("substitution preserves clause invariants")
        })
        .collect();
    for u in 1..=n {
        if has_neg[u] {
            clauses
                .push(Clause::new(vec![Literal::pos(u), Literal::pos(y_of[u])]).unwrap());
        }
    }
    let out = CnfFormula::new(out_vars, clauses).expect("positivization output is valid");
    let trace = ReductionTrace {
        schema_version: 1,
        original_num_vars: n,
        output_num_vars: out_vars,
        steps: vec![Step {
            kind: StepKind::Positivize,
            input_num_vars: n,
            output_num_vars: out_vars,
            fresh,
        }],
    };
    (out, trace)
}

/// Split clauses wider than 3 with a fresh chain variable per cut:
/// `(l1|...|lk)` becomes `(l1|l2|s1) & (!s1|l3|s2) & ... & (!s_{k-3}|l_{k-1}|lk)`.
pub fn to_three_cnf(f: &CnfFormula) -> (CnfFormula, ReductionTrace) {
    if f.flags().max_width <= 3 {
        return (f.clone(), ReductionTrace::identity(f.num_vars()));
    }
    let n = f.num_vars();
    let mut next = n + 1;
    let mut fresh = Vec::new();
    let mut clauses = Vec::new();
    for (i, c) in f.clauses().iter().enumerate() {
        let lits = c.literals();
        let k = lits.len();
        if k <= 3 {
            clauses.push(c.clone());
            continue;
        }
        let cuts = k - 3;
        let splitters: Vec<usize> = (0..cuts)
            .map(|_| {
                let s = next;
                fresh.push((s, FreshVar::Splitter { clause: i }));
                next += 1;
                s
            })
            .collect();
        let mut first = vec![lits[0], lits[1], Literal::pos(splitters[0])];
        clauses.push(Clause::new(std::mem::take(&mut first)).unwrap());
        for (t, &s) in splitters.iter().enumerate() {
            let last = t + 1 == splitters.len();
            let mut mid = vec![Literal::neg(s), lits[t + 2]];
            if last {
                mid.push(lits[k - 1]);
            } else {
                mid.push(Literal::pos(splitters[t + 1]));
            }
            clauses.push(Clause::new(mid).unwrap());
        }
    }
    let out_vars = next - 1;
    let out = CnfFormula::new(out_vars, clauses).expect("split output is valid");
    let trace = ReductionTrace {
        schema_version: 1,
        original_num_vars: n,
        output_num_vars: out_vars,
        steps: vec![Step {
            kind: StepKind::Split3,
            input_num_vars: n,
            output_num_vars: out_vars,
            fresh,
        }],
    };
    (out, trace)
}

/// Schaefer-style gadget: clause `(x|y|z)` is satisfiable iff the three
/// exactly-one clauses `(!x|a|b)`, `(y|b|c)`, `(!z|c|d)` admit an
/// exactly-one assignment, with `a,b,c,d` fresh per clause. Width-2 clauses
/// reuse `y` for `z`, unit clauses reuse `x` for both.
///
/// The output may contain negative literals; positivize afterwards.
pub fn to_one_in_three(f: &CnfFormula) -> Result<(CnfFormula, ReductionTrace), ReduceError> {
    let n = f.num_vars();
    let mut next = n + 1;
    let mut fresh = Vec::new();
    let mut clauses = Vec::new();
    for (i, c) in f.clauses().iter().enumerate() {
        let lits = c.literals();
        let (x, y, z) = match lits.len() {
            1 => (lits[0], lits[0], lits[0]),
            2 => (lits[0], lits[1], lits[1]),
            3 => (lits[0], lits[1], lits[2]),
            w => return Err(ReduceError::ClauseTooWide { index: i, width: w }),
        };
        let mut slot = |s: usize| {
            let v = next;
            fresh.push((v, FreshVar::Gadget { clause: i, slot: s }));
            next += 1;
            v
        };
        let (a, b, cc, d) = (slot(0), slot(1), slot(2), slot(3));
        clauses.push(Clause::new(vec![x.negated(), Literal::pos(a), Literal::pos(b)]).unwrap());
        clauses.push(Clause::new(vec![y, Literal::pos(b), Literal::pos(cc)]).unwrap());
        clauses.push(Clause::new(vec![z.negated(), Literal::pos(cc), Literal::pos(d)]).unwrap());
    }
    let out_vars = next - 1;
    let out = CnfFormula::new(out_vars, clauses)?;
    let trace = ReductionTrace {
        schema_version: 1,
        original_num_vars: n,
        output_num_vars: out_vars,
        steps: vec![Step {
            kind: StepKind::Gadget,
            input_num_vars: n,
            output_num_vars: out_vars,
            fresh,
        }],
    };
    Ok((out, trace))
}

/// Full SAT-to-EOS reduction: split to 3-CNF, apply the 1-in-3 gadget,
/// then positivize. The input is satisfiable iff the output is EOS.
pub fn reduce_sat_to_eos(f: &CnfFormula) -> Result<(CnfFormula, ReductionTrace), ReduceError> {
    let (f3, t1) = to_three_cnf(f);
    let (g, t2) = to_one_in_three(&f3)?;
    let (p, t3) = positivize(&g);
    Ok((p, t1.compose(t2).compose(t3)))
}

/// Project an assignment over the output variables back onto the original
/// ones. All reductions only append fresh variables, so this is truncation.
pub fn lift_witness(trace: &ReductionTrace, a: &Assignment) -> Result<Assignment, ReduceError> {
    if a.len() != trace.output_num_vars {
        return Err(ReduceError::WitnessLengthMismatch {
            got: a.len(),
            expected: trace.output_num_vars,
        });
    }
    Ok(Assignment::new(a.values[..trace.original_num_vars].to_vec()))
}
