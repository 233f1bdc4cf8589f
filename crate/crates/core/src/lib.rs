//! Generalized Specht modules for Weyl groups, computed exactly.
//!
//! Root systems are built from simple systems, Weyl groups are enumerated as
//! permutation groups on roots, and Specht modules are spanned by
//! polytabloids in the permutation module on cosets of a reflection subgroup.

#![no_std]

extern crate alloc;

pub mod chartab;
pub mod error;
pub mod exact;
pub mod roots;
pub mod specht;
pub mod subsys;
pub mod weyl;

pub use error::{Error, Result};
