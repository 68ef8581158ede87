//! Scenario runner and CSV emission for `platelab`.

pub mod commands;
pub mod error;
pub mod scenario;

pub use error::{LabError, LabResult};
