//! Exact verification of q-supercongruences for truncated convolution sums.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`] exact rings: rationals, dense and Laurent polynomials, fractions
//!   and quotient-ring residues, all generic over a coefficient [`arith::Ring`];
//! * [`qkit`] q-integers, q-shifted factorials, cyclotomic polynomials and
//!   the factored term representation used by the engine;
//! * [`congruence`] the checker, with an exact and a quotient-ring pipeline;
//! * [`catalog`] the registry of congruences and identities;
//! * [`padic`] the integer-side checks and the p-adic Gamma function.

pub mod arith;
pub mod catalog;
pub mod congruence;
pub mod error;
pub mod padic;
pub mod qkit;

pub use error::{Error, Result};

use arith::{Frac, Laurent, Poly};

pub type Int = num_bigint::BigInt;
pub type Rat = num_rational::BigRational;

pub type QPoly = Poly<Rat>;
pub type ZPoly = Poly<Int>;
pub type QLaurent = Laurent<Rat>;
pub type ZLaurent = Laurent<Int>;

/// Laurent polynomial in `a` with [`QLaurent`] coefficients.
pub type BiPoly = Laurent<QLaurent>;

pub type QRat = Frac<QLaurent>;
pub type ARat = Frac<BiPoly>;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
