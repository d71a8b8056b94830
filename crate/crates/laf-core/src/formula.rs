//! CNF formula representation, DIMACS parsing/emission and structural
//! classification (positivity, pure polarity, clause width).

use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use thiserror::Error;

/// A signed occurrence of a variable. Variable indices are 1-based,
/// matching the DIMACS convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, positive: false }
    }

    /// DIMACS encoding: `var` for positive, `-var` for negative.
    pub fn code(&self) -> i64 {
        let v = self.var as i64;
        if self.positive {
            v
        } else {
            -v
        }
    }

    pub fn negated(&self) -> Self {
        Literal { var: self.var, positive: !self.positive }
    }
}

/// A disjunction of literals. Nonempty, and no variable appears twice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    pub fn new(literals: Vec<Literal>) -> Result<Self, FormulaError> {
        if literals.is_empty() {
            return Err(FormulaError::EmptyClause);
        }
        let mut vars: Vec<usize> = literals.iter().map(|l| l.var).collect();
        vars.sort_unstable();
        for w in vars.windows(2) {
            if w[0] == w[1] {
                return Err(FormulaError::DuplicateVariable { var: w[0] });
            }
        }
        for l in &literals {
            if l.var == 0 {
                return Err(FormulaError::ZeroVariable);
            }
        }
        Ok(Clause { literals })
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        false // invariant: length >= 1
    }

    /// True under `values` (0-based indexing into the assignment).
    pub fn satisfied_by(&self, values: &[bool]) -> bool {
        self.literals.iter().any(|l| values[l.var - 1] == l.positive)
    }

    /// Exactly one literal true under `values`.
    pub fn exactly_one_by(&self, values: &[bool]) -> bool {
        self.literals
            .iter()
            .filter(|l| values[l.var - 1] == l.positive)
            .count()
            == 1
    }
}

/// Structural classification flags, recomputable from the clauses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub positive: bool,
    pub pure_polarity: bool,
    pub max_width: usize,
}

/// A CNF formula over variables `1..=num_vars`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Clause>,
    flags: Flags,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("empty clause")]
    EmptyClause,
    #[error("variable index 0 is not allowed")]
    ZeroVariable,
    #[error("duplicate variable {var} in clause")]
    DuplicateVariable { var: usize },
    #[error("literal references variable {var} but formula declares {num_vars} variables")]
    VariableOutOfRange { var: usize, num_vars: usize },
    #[error("malformed DIMACS header: {0}")]
    BadHeader(String),
    #[error("clause count mismatch: header declares {declared}, found {found}")]
    ClauseCountMismatch { declared: usize, found: usize },
    #[error("malformed DIMACS body: {0}")]
    BadBody(String),
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Clause>) -> Result<Self, FormulaError> {
        for c in &clauses {
            for l in c.literals() {
                if l.var > num_vars {
                    return Err(FormulaError::VariableOutOfRange { var: l.var, num_vars });
                }
            }
        }
        let flags = classify_clauses(&clauses);
        Ok(CnfFormula { num_vars, clauses, flags })
    }

    /// Convenience constructor from signed 1-based literal codes.
    pub fn from_codes(num_vars: usize, clauses: &[&[i64]]) -> Result<Self, FormulaError> {
        let mut out = Vec::with_capacity(clauses.len());
        for codes in clauses {
            let lits = codes
                .iter()
                .map(|&c| {
                    if c > 0 {
                        Literal::pos(c as usize)
                    } else {
                        Literal::neg((-c) as usize)
                    }
                })
                .collect();
            out.push(Clause::new(lits)?);
        }
        CnfFormula::new(num_vars, out)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    pub fn is_positive(&self) -> bool {
        self.flags.positive
    }

    pub fn satisfied_by(&self, values: &[bool]) -> bool {
        values.len() == self.num_vars && self.clauses.iter().all(|c| c.satisfied_by(values))
    }

    /// Every clause has exactly one true literal under `values`.
    pub fn exactly_one_by(&self, values: &[bool]) -> bool {
        values.len() == self.num_vars && self.clauses.iter().all(|c| c.exactly_one_by(values))
    }
}

/// A total truth assignment, indexed 0-based (variable u lives at `values[u-1]`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// SAT-competition style witness line body: signed 1-based literals.
    pub fn witness_codes(&self) -> Vec<i64> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &v)| if v { (i + 1) as i64 } else { -((i + 1) as i64) })
            .collect()
    }
}

fn classify_clauses(clauses: &[Clause]) -> Flags {
    let mut pos_seen = std::collections::HashSet::new();
    let mut neg_seen = std::collections::HashSet::new();
    let mut max_width = 0;
    for c in clauses {
        max_width = max_width.max(c.len());
        for l in c.literals() {
            if l.positive {
                pos_seen.insert(l.var);
            } else {
                neg_seen.insert(l.var);
            }
        }
    }
    let positive = neg_seen.is_empty();
    let pure_polarity = pos_seen.is_disjoint(&neg_seen);
    Flags { positive, pure_polarity, max_width }
}

/// Recompute classification flags; always consistent with the stored ones.
pub fn classify(f: &CnfFormula) -> Flags {
    classify_clauses(f.clauses())
}

/// Parse DIMACS CNF text ("p cnf n m" header, 0-terminated clauses,
/// "c" comment lines). Duplicate variables within one clause are rejected.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, FormulaError> {
    let mut header: Option<(usize, usize)> = None;
    let mut tokens: Vec<i64> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(FormulaError::BadHeader("repeated header".into()));
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[0] != "p" || parts[1] != "cnf" {
                return Err(FormulaError::BadHeader(line.into()));
            }
            let n = parts[2]
                .parse::<usize>()
                .map_err(|_| FormulaError::BadHeader(line.into()))?;
            let m = parts[3]
                .parse::<usize>()
                .map_err(|_| FormulaError::BadHeader(line.into()))?;
            header = Some((n, m));
            continue;
        }
        if header.is_none() {
            return Err(FormulaError::BadHeader("clause data before header".into()));
        }
        for tok in line.split_whitespace() {
            let v = tok
                .parse::<i64>()
                .map_err(|_| FormulaError::BadBody(format!("bad token {tok:?}")))?;
            tokens.push(v);
        }
    }
    let (num_vars, num_clauses) =
        header.ok_or_else(|| FormulaError::BadHeader("missing header".into()))?;

    let mut clauses = Vec::with_capacity(num_clauses);
    let mut current: Vec<Literal> = Vec::new();
    for v in tokens {
        if v == 0 {
            clauses.push(Clause::new(std::mem::take(&mut current))?);
        } else {
            let var = v.unsigned_abs() as usize;
            if var > num_vars {
                return Err(FormulaError::VariableOutOfRange { var, num_vars });
            }
            current.push(Literal { var, positive: v > 0 });
        }
    }
    if !current.is_empty() {
        return Err(FormulaError::BadBody("trailing clause without terminating 0".into()));
    }
    if clauses.len() != num_clauses {
        return Err(FormulaError::ClauseCountMismatch {
            declared: num_clauses,
            found: clauses.len(),
        });
    }
    CnfFormula::new(num_vars, clauses)
}

/// Emit DIMACS text. `parse_dimacs(emit_dimacs(f))` structurally equals `f`.
pub fn emit_dimacs(f: &CnfFormula) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p cnf {} {}", f.num_vars(), f.num_clauses());
    for c in f.clauses() {
        for l in c.literals() {
            let _ = write!(out, "{} ", l.code());
        }
        let _ = writeln!(out, "0");
    }
    out
}
