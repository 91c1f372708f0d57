pub mod concurrence;
pub mod error;
pub mod invariants;
pub mod linalg;
pub mod qstate;
pub mod slocc;
pub mod suites;

pub use error::{Error, Result};
