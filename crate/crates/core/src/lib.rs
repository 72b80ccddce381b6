//! Exact enumeration of ancestries, count tables and CW complexes for the sets
//! `BL_z` of unipotent lower triangular matrices, with a numeric stratum classifier.

pub mod ancestry;
pub mod clifford;
pub mod cw;
pub mod error;
pub mod matrix_lab;
pub mod order;
pub mod perm;
pub mod render;
pub mod subgroups;
pub mod util;

pub use error::{Error, Result};
