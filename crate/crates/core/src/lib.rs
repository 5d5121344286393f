//! Exact and numeric verification toolkit for the continuous q-Hermite,
//! `B_n` and Al-Salam-Chihara polynomial families.
//!
//! Symbolic identities are checked as exact polynomial identities over the
//! rationals ([`poly::MultiPoly`]); densities and kernels are evaluated in
//! double precision and validated by quadrature; the discrete `q > 1`
//! solutions use an arbitrary-precision float backend.

// `!(x < y)` guards double as NaN rejection.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod cli;
pub mod complex;
pub mod discrete;
pub mod error;
pub mod families;
pub mod genfun;
pub mod hankel;
pub mod identities;
pub mod measures;
pub mod poly;
pub mod qcore;
pub mod report;
pub mod suites;

pub use complex::ComplexF;
pub use error::{Error, Result};
pub use poly::{Assignment, Monomial, MultiPoly, Rational, Var};
