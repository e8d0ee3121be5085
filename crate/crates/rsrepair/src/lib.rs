//! File formats, verification suites, table reproduction and repair
//! simulation on top of `rsrepair-core`.

pub mod config;
pub mod error;
pub mod format;
pub mod metrics;
pub mod reference;
pub mod simulate;
pub mod tables;
pub mod verify;

pub use error::{AppError, AppResult};
