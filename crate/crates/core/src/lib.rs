//! Gröbner-basis computations over GF(2) for the characteristic subalgebras
//! `W_{n,k} = F2[w2, ..., wk] / I_{n,k}` of oriented Grassmannians.
//!
//! The crate is organised bottom-up:
//!
//! - [`f2poly`]: packed monomials and polynomials over GF(2) with pure lex orders.
//! - [`groebner`]: normal forms, Buchberger's algorithm, standard monomials.
//! - [`grassmann`]: the `g`-polynomials, the ideals `I_{n,k}`, their listed
//!   Gröbner bases and the identity checks.
//! - [`quotient`]: `W_{n,k}` as a graded algebra; heights and cup-length.
//! - [`zcltensor`]: the tensor square, zero-divisors and zero-divisor cup-length.
//! - [`cli`]: the command-line front end.

pub mod cli;
pub mod f2poly;
pub mod grassmann;
pub mod groebner;
pub mod quotient;
pub mod zcltensor;

/// Engine version, part of every cache key.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
