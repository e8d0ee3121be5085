//! Linear repair schemes for Reed–Solomon codes over subspace evaluation sets.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod basis;
pub mod bounds;
pub mod constructions;
pub mod error;
pub mod expsum;
pub mod gf;
pub mod linalg;
pub mod poly;
pub mod rs;
pub mod scheme;
pub mod subspace;

pub use error::{Error, Result};
pub use basis::BasisPair;
pub use gf::{Element, FieldTower};
pub use poly::Poly;
pub use rs::RsCode;
pub use scheme::{MetricsReport, Method, NormalForm, RepairScheme};
pub use subspace::{Subspace, VectorSubspace};
