//! Two-term silting theory for finite-dimensional bound quiver algebras over
//! prime fields: exact linear algebra, representations, two-term complexes,
//! support tau-tilting mutation, exchange-quiver exploration, and the
//! torsion-class assembly for the hereditary and Auslander order families.
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! ```
//! use silt_core::exactmat::PrimeField;
//! use silt_core::explorer::{explore, hasse_check, Limits};
//! use silt_core::orders::Family;
//!
//! let alg = Family::Hereditary(3).build(PrimeField::default())?;
//! let eq = explore(&alg, Limits::default())?;
//! assert_eq!(eq.node_count(), 20);
//! assert!(hasse_check(&alg, &eq)?);
//! # Ok::<(), silt_core::Error>(())
//! ```

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod error;
pub mod explorer;
pub mod exactmat;
pub mod orders;
mod poly;
pub mod repmod;
pub mod silting;
pub mod twoterm;

pub use error::{Error, Result};
