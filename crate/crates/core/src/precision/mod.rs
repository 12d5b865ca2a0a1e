//! Numeric substrate: precision contexts, the [`Real`] scalar abstraction and
//! its two implementations (`f64` and the MPFR-backed [`MpFloat`]).
//!
//! Everything above this module is written against [`Real`], so the same
//! code runs in double precision for quick checks and at tens of thousands of
//! digits for the cancellation-heavy paths.

mod mpfloat;

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{NumAssign, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::exact::PiPolynomial;

pub(crate) use mpfloat::from_rug_integer;
pub use mpfloat::MpFloat;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Decimal working precision. Rounding is always to nearest, ties to even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrecisionContext {
    digits: u32,
}

impl PrecisionContext {
    pub fn new(digits: u32) -> Result<Self> {
        if digits == 0 {
            return Err(Error::InvalidArgument(
                "precision must be at least one decimal digit".into(),
            ));
        }
        Ok(PrecisionContext { digits })
    }

    /// Significant decimal digits requested by the caller.
    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Binary precision used internally: the decimal request plus 32 guard bits.
    pub fn bits(&self) -> u32 {
        (self.digits as f64 * LOG2_10).ceil() as u32 + 32
    }

    pub fn with_extra_digits(&self, extra: u32) -> Self {
        PrecisionContext {
            digits: self.digits + extra,
        }
    }

    /// Fails with `InsufficientPrecision` unless this context carries at least
    /// `required` digits.
    pub fn require(&self, required: u64) -> Result<()> {
        if (self.digits as u64) < required {
            Err(Error::InsufficientPrecision {
                required,
                available: self.digits as u64,
            })
        } else {
            Ok(())
        }
    }
}

pub fn make_context(digits: u32) -> Result<PrecisionContext> {
    PrecisionContext::new(digits)
}

/// Real scalar usable by every numeric routine in the crate.
///
/// Values built from integers or `f64` are exact. Anything irrational or
/// rounded is produced at the precision of a [`PrecisionContext`]; binary
/// operations on mixed-precision operands round to the larger precision.
pub trait Real: Clone + Debug + PartialOrd + Send + Sync + NumAssign + Signed {
    fn from_i64(v: i64) -> Self;
    fn from_f64(v: f64) -> Self;
    fn from_bigint(v: &BigInt, ctx: &PrecisionContext) -> Self;
    fn from_rational(q: &BigRational, ctx: &PrecisionContext) -> Self;
    /// Re-rounds `self` to the precision of `ctx`.
    fn at(&self, ctx: &PrecisionContext) -> Self;

    fn pi(ctx: &PrecisionContext) -> Self;
    /// `10^(-digits)`.
    fn epsilon(ctx: &PrecisionContext) -> Self;

    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn sin_cos(&self) -> (Self, Self) {
        (self.sin(), self.cos())
    }
    fn atan2(&self, x: &Self) -> Self;
    fn powi(&self, n: i32) -> Self;
    fn powf(&self, e: &Self) -> Self;
    /// Euler gamma function; callers guarantee a positive argument.
    fn gamma(&self) -> Self;

    fn to_f64(&self) -> f64;
    fn is_finite(&self) -> bool;
    fn precision_bits(&self) -> u32;
}

impl Real for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_f64(v: f64) -> Self {
        v
    }
    fn from_bigint(v: &BigInt, _: &PrecisionContext) -> Self {
        v.to_f64().unwrap_or(f64::NAN)
    }
    fn from_rational(q: &BigRational, _: &PrecisionContext) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }
    fn at(&self, _: &PrecisionContext) -> Self {
        *self
    }
    fn pi(_: &PrecisionContext) -> Self {
        std::f64::consts::PI
    }
    fn epsilon(ctx: &PrecisionContext) -> Self {
        10f64
            .powi(-(ctx.digits().min(300) as i32))
            .max(f64::EPSILON)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn sin_cos(&self) -> (Self, Self) {
        f64::sin_cos(*self)
    }
    fn atan2(&self, x: &Self) -> Self {
        f64::atan2(*self, *x)
    }
    fn powi(&self, n: i32) -> Self {
        f64::powi(*self, n)
    }
    fn powf(&self, e: &Self) -> Self {
        f64::powf(*self, *e)
    }
    fn gamma(&self) -> Self {
        if *self <= 0.0 {
            return f64::NAN;
        }
        ln_gamma_f64(*self).exp()
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
    fn precision_bits(&self) -> u32 {
        53
    }
}

/// `ln Γ(x)` for `x > 0` in double precision (Stirling series after an
/// upward shift to `x ≥ 15`).
pub fn ln_gamma_f64(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    // B_{2k} / (2k (2k-1)) for k = 1..8
    const STIRLING: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360360.0,
        1.0 / 156.0,
        -3617.0 / 122400.0,
    ];
    let mut shift = 0.0;
    let mut y = x;
    while y < 15.0 {
        shift += y.ln();
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut p = inv;
    for c in STIRLING {
        series += c * p;
        p *= inv2;
    }
    (y - 0.5) * y.ln() - y + 0.5 * (2.0 * std::f64::consts::PI).ln() + series - shift
}

/// π at the precision of `ctx`.
pub fn pi_value(ctx: &PrecisionContext) -> MpFloat {
    MpFloat::pi(ctx)
}

/// `Γ(x)` for real `x > 0`, evaluated at the precision of `ctx`.
pub fn gamma_real<R: Real>(x: &R, ctx: &PrecisionContext) -> Result<R> {
    if x.partial_cmp(&R::zero()) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::Domain(format!(
            "gamma_real needs x > 0, got {}",
            x.to_f64()
        )));
    }
    let g = x.at(ctx).gamma();
    if !g.is_finite() {
        return Err(Error::NonFinite("gamma_real"));
    }
    Ok(g)
}

/// Evaluates `Σ c_m π^{2m}`. Each rational coefficient is rounded once, after
/// all exact arithmetic is done.
pub fn eval_pi_poly<R: Real>(p: &PiPolynomial, ctx: &PrecisionContext) -> R {
    let pi2 = {
        let pi = R::pi(ctx);
        pi.clone() * pi
    };
    let mut sum = R::zero();
    let mut power = R::one();
    let mut power_exp = 0u32;
    for (m, c) in p.terms() {
        while power_exp < m {
            power *= pi2.clone();
            power_exp += 1;
        }
        sum += R::from_rational(c, ctx) * power.clone();
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_digits_rejected() {
        assert!(matches!(make_context(0), Err(Error::InvalidArgument(_))));
        assert_eq!(make_context(50).unwrap().digits(), 50);
    }

    #[test]
    fn bits_overprovision() {
        let ctx = make_context(30000).unwrap();
        assert!(ctx.bits() as f64 >= 30000.0 * LOG2_10 + 32.0);
    }

    #[test]
    fn ln_gamma_small_and_large() {
        assert!((ln_gamma_f64(5.0) - 24f64.ln()).abs() < 1e-14);
        assert!((ln_gamma_f64(0.5) - std::f64::consts::PI.sqrt().ln()).abs() < 1e-14);
        // ln(100!) = 363.73937555556347...
        assert!((ln_gamma_f64(101.0) - 363.739_375_555_563_47).abs() < 1e-11);
    }

    #[test]
    fn gamma_domain() {
        let ctx = make_context(30).unwrap();
        assert!(gamma_real(&0.0f64, &ctx).is_err());
        assert!(gamma_real(&-1.5f64, &ctx).is_err());
        assert!((gamma_real(&5.0f64, &ctx).unwrap() - 24.0).abs() < 1e-12);
    }
}
