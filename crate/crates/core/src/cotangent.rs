//! The cotangent sum `c(h/k)` and the reciprocity function `g` at rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::precision::{PrecisionContext, Real};

/// A positive rational `h/k` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ReducedFraction {
    h: u64,
    k: u64,
}

impl ReducedFraction {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        reduce_fraction(p, q)
    }

    pub fn numer(&self) -> u64 {
        self.h
    }

    /// The denominator, `Den(h/k)`.
    pub fn denom(&self) -> u64 {
        self.k
    }

    pub fn recip(&self) -> Self {
        ReducedFraction {
            h: self.k,
            k: self.h,
        }
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(self.h), BigInt::from(self.k))
    }

    /// `h/k + 1`.
    pub fn add_one(&self) -> Self {
        ReducedFraction {
            h: self.h + self.k,
            k: self.k,
        }
    }
}

impl fmt::Display for ReducedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.h, self.k)
    }
}

impl std::str::FromStr for ReducedFraction {
    type Err = Error;

    /// Accepts `p/q` or a bare positive integer.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("expected a positive fraction p/q, got {s:?}"));
        let (p, q) = match s.trim().split_once('/') {
            Some((p, q)) => (
                p.trim().parse().map_err(|_| bad())?,
                q.trim().parse().map_err(|_| bad())?,
            ),
            None => (s.trim().parse().map_err(|_| bad())?, 1),
        };
        reduce_fraction(p, q)
    }
}

pub fn reduce_fraction(p: u64, q: u64) -> Result<ReducedFraction> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidArgument(format!(
            "fraction {p}/{q} must have positive numerator and denominator"
        )));
    }
    let g = p.gcd(&q);
    Ok(ReducedFraction { h: p / g, k: q / g })
}

/// `c(h/k) = −Σ_{a=1}^{k−1} (a/k) cot(π h a / k)`.
///
/// Each angle is reduced as `(h a mod k)/k` in integers, so the cotangent is
/// always taken strictly inside `(0, π)`.
pub fn cotangent_sum<R: Real>(f: &ReducedFraction, ctx: &PrecisionContext) -> R {
    let k = f.k;
    if k == 1 {
        return R::zero();
    }
    let pi_over_k = R::pi(ctx) / R::from_i64(k as i64);
    let h = f.h % k;
    let mut acc = R::zero();
    for a in 1..k {
        let r = ((h as u128 * a as u128) % k as u128) as i64;
        let (s, c) = (pi_over_k.clone() * R::from_i64(r)).sin_cos();
        acc += R::from_i64(a as i64) * c / s;
    }
    -(acc / R::from_i64(k as i64))
}

/// `g(x) = x c(x) + c(1/x) − 1/(π Den(x))` at `x = h/k`.
pub fn g_direct<R: Real>(f: &ReducedFraction, ctx: &PrecisionContext) -> R {
    let x = R::from_i64(f.h as i64).at(ctx) / R::from_i64(f.k as i64);
    let cx: R = cotangent_sum(f, ctx);
    let c_inv: R = cotangent_sum(&f.recip(), ctx);
    let pi = R::pi(ctx);
    x * cx + c_inv - R::one() / (pi * R::from_i64(f.k as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::MpFloat;
    use num_traits::{One, Signed};
    use proptest::prelude::*;

    fn ctx(d: u32) -> PrecisionContext {
        PrecisionContext::new(d).unwrap()
    }

    #[test]
    fn reduction() {
        assert_eq!(
            reduce_fraction(4, 6).unwrap(),
            ReducedFraction { h: 2, k: 3 }
        );
        assert_eq!(reduce_fraction(7, 1).unwrap().denom(), 1);
        assert_eq!(
            reduce_fraction(10, 5).unwrap(),
            ReducedFraction { h: 2, k: 1 }
        );
        assert!(reduce_fraction(0, 3).is_err());
        assert!(reduce_fraction(3, 0).is_err());
        assert_eq!("6/4".parse::<ReducedFraction>().unwrap().to_string(), "3/2");
        assert_eq!("5".parse::<ReducedFraction>().unwrap().to_string(), "5/1");
        assert!("a/b".parse::<ReducedFraction>().is_err());
    }

    #[test]
    fn small_values() {
        let c = ctx(40);
        let eps = MpFloat::parse("1e-38", &c).unwrap();
        let third = 1.0 / (3.0 * 3f64.sqrt());
        assert_eq!(
            cotangent_sum::<f64>(&reduce_fraction(1, 1).unwrap(), &c),
            0.0
        );
        assert!(cotangent_sum::<MpFloat>(&reduce_fraction(1, 2).unwrap(), &c).abs() < eps);
        let v: MpFloat = cotangent_sum(&reduce_fraction(1, 3).unwrap(), &c);
        let expect = MpFloat::one() / (MpFloat::from_i64(3) * MpFloat::from_i64(3).at(&c).sqrt());
        assert!((v.clone() - expect).abs() < eps);
        assert!((v.to_f64() - third).abs() < 1e-15);
        let w: f64 = cotangent_sum(&reduce_fraction(2, 3).unwrap(), &c);
        assert!((w + third).abs() < 1e-15);
    }

    #[test]
    fn g_direct_integers() {
        let c = ctx(40);
        let eps = MpFloat::parse("1e-38", &c).unwrap();
        let inv_pi = MpFloat::one() / MpFloat::pi(&c);
        for x in [(1, 1), (2, 1)] {
            let g: MpFloat = g_direct(&reduce_fraction(x.0, x.1).unwrap(), &c);
            assert!((g + inv_pi.clone()).abs() < eps);
        }
    }

    #[test]
    fn g_direct_non_integer_full_precision() {
        let c = ctx(60);
        let g: MpFloat = g_direct(&reduce_fraction(4, 3).unwrap(), &c);
        let want = MpFloat::parse(
            "-0.349503175754763217397411939803028483290705652151359020934623",
            &c,
        )
        .unwrap();
        assert!((g - want).abs() < MpFloat::parse("1e-57", &c).unwrap());
    }

    proptest! {
        #[test]
        fn periodic_and_odd(k in 2u64..50, h in 1u64..200) {
            prop_assume!(h.gcd(&k) == 1);
            let c = ctx(30);
            let f = reduce_fraction(h, k).unwrap();
            let base: MpFloat = cotangent_sum(&f, &c);
            let shifted: MpFloat = cotangent_sum(&f.add_one(), &c);
            let tol = MpFloat::parse("1e-27", &c).unwrap();
            prop_assert!((base.clone() - shifted).abs() < tol.clone());
            let hm = h % k;
            let mirrored: MpFloat = cotangent_sum(&reduce_fraction(k - hm, k).unwrap(), &c);
            prop_assert!((base + mirrored).abs() < tol);
        }
    }
}
