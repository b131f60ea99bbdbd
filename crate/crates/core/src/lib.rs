//! Bounded-height algebraic numbers, exact multiplicative dependence, and
//! rank-stratified counting of dependent tuples.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, the command line,
//! and thread-level sharding live in the `multdep` companion crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algnum;
pub mod arith;
pub mod asymptotics;
pub mod counting;
pub mod enumerate;
pub mod error;
pub mod fields;
pub mod lattice;
pub mod multdep;
pub mod poly;
pub mod quadratic;
pub mod real;
pub mod zeta;
pub mod roots;
pub mod special;
pub mod tuples;

pub use error::{Error, Result};
pub use algnum::AlgebraicNumber;
pub use poly::IntPolynomial;
pub use real::{CertifiedValue, Real};
