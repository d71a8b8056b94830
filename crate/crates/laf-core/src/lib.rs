//! Exact-arithmetic satisfiability and 1-in-3 (exactly-one) satisfiability
//! testing via a linear algebra formulation.
//!
//! The pipeline reduces CNF satisfiability to exactly-one satisfiability of
//! a positive 3-CNF formula, encodes that as Boolean solvability of a
//! linear system, extends the system by quadratic propagation and
//! relinearization, and certifies unsatisfiability through exact
//! consistency tests over the rationals and the integers. The method is
//! sound but incomplete: `Unk` is a possible answer.

pub mod bench;
pub mod formula;
pub mod laf;
pub mod linalg;
pub mod oracle;
pub mod pipeline;
pub mod reduce;

pub use formula::{parse_dimacs, emit_dimacs, Assignment, Clause, CnfFormula, Literal};
pub use laf::{kernel_check, Answer, KernelOptions, KernelVerdict};
pub use pipeline::{laf_sat_check, PipelineOptions, SatAnswer, SatVerdict};
