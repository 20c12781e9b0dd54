//! Exact cyclotomic computations for Z/m actions on closed surfaces and the
//! first Chern classes of the Hodge eigenbundles of (S, G)-bundles.

pub mod action;
pub mod apps;
pub mod arithgroup;
pub mod certify;
pub mod circulant;
pub mod cyclo;
pub mod error;
pub mod indexcore;
pub mod linalg;
pub mod pipeline;
pub mod registry;
pub mod report;
pub mod reptheory;
pub mod sweep;

pub use error::{Error, Result};
