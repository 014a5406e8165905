//! Exact affine symmetry groups of orbit polytopes.

pub mod elab2;
pub mod error;
pub mod exactmath;
pub mod grpalg;
pub mod orbit;
pub mod perm;
pub mod symcore;

pub use error::{Error, Result};
