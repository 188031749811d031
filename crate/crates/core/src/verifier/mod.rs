//! Evaluation, certificate verification and approximation experiments.

pub mod direct;
pub mod phi;
pub mod random;
pub mod report;
pub mod search;
pub mod verify;

pub use direct::{eval_direct, eval_term, Assignment};
pub use phi::{closedness_demo, phi_experiment, PhiSystem};
pub use random::{random_formula, random_formula_equivalence};
pub use report::Report;
pub use search::{search, SearchBudget, SearchOutcome, Verdict};
pub use verify::{eval_formula, truth_set_exhaustive, verify_cert, CheckConfig};
