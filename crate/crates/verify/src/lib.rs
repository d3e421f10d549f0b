//! Reference oracles and the acceptance criteria for `digitop`.

pub mod criteria;
pub mod oracle;

pub use criteria::{criteria, run, CriterionResult, Hooks};
