//! Exact and arbitrary-precision computation of the cotangent sum
//! `c(h/k) = −Σ_{a=1}^{k−1} (a/k) cot(πha/k)`, the Taylor coefficients `g_n`
//! of its reciprocity function, and the asymptotic expansion of `g_n − 1/n`.
//!
//! Numeric code is generic over [`precision::Real`]; `f64` gives quick
//! double-precision answers and [`BigReal`] runs at any number of digits.
//! Exact objects live in ℚ[π²] ([`PiPolynomial`]) or ℚ[z] ([`ZPolynomial`]).

pub mod asym;
pub mod cotangent;
pub mod error;
pub mod exact;
pub mod gn;
pub mod oracle;
pub mod precision;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{PiPolynomial, ZPolynomial};
pub use precision::{make_context, PrecisionContext, Real};

/// Arbitrary-precision real scalar (MPFR-backed).
pub type BigReal = precision::MpFloat;
/// Arbitrary-precision complex scalar.
pub type BigComplex = num_complex::Complex<BigReal>;
/// Exact rational.
pub type BigRational = num_rational::BigRational;
/// Exact `C̃_l` together with its index.
pub type CTilde = asym::CTilde;
