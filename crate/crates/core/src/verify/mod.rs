//! Theorem checkers, the question scanner and the catalog runner.

mod catalog;
mod params;
mod questions;
mod report;
mod theorems;

pub use catalog::{default_theorems, run_catalog, CatalogReport, CatalogRun, InvariantCheck};
pub use params::{Params, SubgroupRef};
pub use questions::{scan_group, scan_questions, QuestionCheck, QuestionScan, QuestionStatus};
pub use report::{invariants_name, ConclusionCheck, HypothesisCheck, Status, VerificationReport};
pub use theorems::{check, THEOREM_IDS};
