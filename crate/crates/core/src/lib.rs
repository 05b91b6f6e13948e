//! Exact arithmetic for homological matrices.
//!
//! The crate models hom-spaces of a finitely presented graded category,
//! the algebra `HG(c,d)` of block matrices with entries in those
//! hom-spaces, its graded symmetric powers (Schur algebras) together with
//! their modules, the embedding of one-dimensional cobordism elements,
//! and the non-symmetric operad of little intervals. All scalars are exact
//! rationals.

#![allow(clippy::needless_range_loop, clippy::result_large_err)]

pub mod category;
pub mod cli;
pub mod complex;
pub mod error;
pub mod format;
pub mod graded;
pub mod homatrix;
pub mod laws;
pub mod linalg;
pub mod operad;
pub mod perm;
pub mod random;
pub mod rational;
pub mod representation;
pub mod sympower;

pub use error::{Error, Result};
pub use rational::Rational;
