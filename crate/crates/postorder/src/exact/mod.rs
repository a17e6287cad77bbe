//! Exact numeric kernel: reduced big rationals, Gaussian rationals, dense
//! exact matrices, a rational-pivot feasibility solver with Farkas
//! certificates, and exact / floating-point positive-semidefiniteness tests.
//!
//! Everything downstream (measurement comparison, guessing probabilities,
//! poset monotones) reduces to these primitives, so every result returned
//! from this module is re-verified against its defining property before it
//! escapes: feasible points are substituted back into the constraints,
//! Farkas certificates are re-checked componentwise.

mod gaussian;
mod lp;
mod matrix;
mod psd;
mod tracenorm;

pub use gaussian::GaussianRational;
pub use lp::{lp_feasible, FarkasCertificate, LpOutcome, LpProblem};
pub use matrix::{GaussianMatrix, RationalMatrix};
pub use psd::{char_poly_coeffs, psd_exact};
pub use tracenorm::{trace_norm_float, HERMITIAN_TOL};
pub(crate) use tracenorm::{hermitian_eigenvalues, symmetrize_checked};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always stored reduced with a positive
/// denominator (the canonical zero is 0/1). `num_rational::BigRational`
/// maintains exactly that invariant through every arithmetic operation.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error)]
pub enum ExactError {
    #[error("cannot parse {input:?} as a rational; expected `p` or `p/q` with a nonzero integer q")]
    ParseRational { input: String },
    #[error("matrix data has {found} entries, expected {rows}x{cols} = {expected}")]
    DataLength {
        rows: usize,
        cols: usize,
        expected: usize,
        found: usize,
    },
    #[error("shape mismatch: left is {left_rows}x{left_cols}, right is {right_rows}x{right_cols}")]
    ShapeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("matrix is {rows}x{cols} but a square matrix is required")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian: entry ({row},{col}) is not the conjugate of ({col},{row})")]
    NotHermitian { row: usize, col: usize },
    #[error("constraint matrix has {rows} rows but the right-hand side has {rhs} entries")]
    RhsLength { rows: usize, rhs: usize },
    #[error("float matrix is not Hermitian within {tol:e}: max deviation {deviation:e}")]
    NotHermitianFloat { tol: f64, deviation: f64 },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Rational from an integer numerator/denominator pair. Panics on d = 0;
/// intended for literals in code and tests.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Canonical string form `p/q` (reduced, q > 0, sign on p), e.g. `-3/7`,
/// `0/1`, `5/1`. This is the serialization used in every JSON surface.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer `p`. Unreduced input is accepted and
/// normalized; a zero denominator is rejected.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let err = || ExactError::ParseRational {
        input: s.to_string(),
    };
    let s = s.trim();
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().map_err(|_| err())?;
            Ok(Rational::from_integer(n))
        }
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| err())?;
            let q: BigInt = q.trim().parse().map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Exact dot product of two rational vectors of equal length.
pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// |r| as a rational.
pub fn rational_abs(r: &Rational) -> Rational {
    if r.is_negative() {
        -r.clone()
    } else {
        r.clone()
    }
}

pub(crate) fn rational_one() -> Rational {
    Rational::one()
}

/// Nearest-f64 conversion that stays finite when both numerator and
/// denominator overflow f64 (where the naive conversion yields NaN):
/// dropping the same number of low bits from each preserves the ratio to
/// about 2⁻⁸⁰ relative error and brings the operands back into range.
pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    if let Some(v) = r.to_f64() {
        if !v.is_nan() {
            return v;
        }
    }
    let bits = r.numer().bits().min(r.denom().bits());
    let shift = bits.saturating_sub(80);
    Rational::new(r.numer() >> shift, r.denom() >> shift)
        .to_f64()
        .unwrap_or(f64::NAN)
}
