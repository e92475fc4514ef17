//! Multivariate polynomials over GF(2) in the weighted variables `w2, ..., wk`.

mod monomial;
mod polynomial;
mod text;

pub use monomial::{Monomial, MonomialOrder, PolyRing, VariableSet, MAX_K, MAX_VARS};
pub use polynomial::{random_in, Polynomial};
pub use text::{parse, parse_monomial};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("operands live in different polynomial rings")]
    RingMismatch,
    #[error("exponent exceeds the 16-bit representation bound")]
    ExponentOverflow,
    #[error("leading monomial of the zero polynomial")]
    ZeroPolynomial,
    #[error("binomial index out of range: C({m}, {j})")]
    BinomialRange { m: i64, j: i64 },
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable w{var}{}", pos.map(|p| format!(" at byte {p}")).unwrap_or_default())]
    UnknownVariable { var: u8, pos: Option<usize> },
    #[error("number of variables out of range: k = {0}")]
    InvalidVariableCount(u8),
    #[error("invalid monomial order {0}")]
    InvalidOrder(String),
}

/// `C(m, j) mod 2`, by Lucas: odd iff `j` and `m - j` share no binary digit.
pub fn binom_parity(m: i64, j: i64) -> Result<bool, PolyError> {
    if j < 0 || j > m {
        return Err(PolyError::BinomialRange { m, j });
    }
    Ok((j & (m - j)) == 0)
}
