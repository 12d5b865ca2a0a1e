use std::cmp::Ordering;
use std::fmt;
use std::ops::{
    Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, RemAssign, Sub, SubAssign,
};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};
use rug::float::{Constant, Round};
use rug::integer::Order;
use rug::{Float, Integer};

use super::{PrecisionContext, Real};

/// Precision of values created without a context (exact small integers).
const EXACT_BITS: u32 = 64;

/// Arbitrary-precision binary float (MPFR), rounding to nearest.
///
/// Each value carries its own precision; arithmetic between two values
/// rounds to the larger of the two, so exact low-precision constants such as
/// `1` or `2` never degrade a high-precision operand.
#[derive(Clone, PartialEq)]
pub struct MpFloat(pub(crate) Float);

impl MpFloat {
    pub fn from_float(f: Float) -> Self {
        MpFloat(f)
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn into_float(self) -> Float {
        self.0
    }

    pub fn from_integer(v: &Integer, ctx: &PrecisionContext) -> Self {
        MpFloat(Float::with_val(ctx.bits(), v))
    }

    /// Parses a decimal string at the precision of `ctx`.
    pub fn parse(s: &str, ctx: &PrecisionContext) -> Option<Self> {
        let parsed = Float::parse(s.trim()).ok()?;
        Some(MpFloat(Float::with_val(ctx.bits(), parsed)))
    }

    /// Scientific notation with `digits` significant decimal digits, e.g.
    /// `7.149842180e-1`.
    pub fn to_sci_string(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.0.is_zero() {
            return format!("{:.*}e0", digits - 1, 0.0);
        }
        let (neg, mantissa, exp) =
            self.0
                .to_sign_string_exp_round(10, Some(digits), Round::Nearest);
        // mantissa is d1 d2 ... dn with value 0.d1d2..dn * 10^exp
        let exp = exp.unwrap_or(0) - 1;
        let mut out = String::with_capacity(digits + 8);
        if neg {
            out.push('-');
        }
        let mut chars = mantissa.chars();
        if let Some(first) = chars.next() {
            out.push(first);
        }
        let rest: String = chars.collect();
        if !rest.is_empty() {
            out.push('.');
            out.push_str(&rest);
        }
        out.push('e');
        out.push_str(&exp.to_string());
        out
    }

    /// Decimal exponent `e` with `10^e ≤ |self| < 10^(e+1)`; `None` for zero.
    pub fn decimal_exponent(&self) -> Option<i64> {
        if self.0.is_zero() || !self.0.is_finite() {
            return None;
        }
        let (_, _, exp) = self.0.to_sign_string_exp_round(10, Some(2), Round::Zero);
        exp.map(|e| e as i64 - 1)
    }

    fn prec(&self) -> u32 {
        self.0.prec()
    }
}

fn bigint_to_integer(v: &BigInt) -> Integer {
    let (sign, digits) = v.to_u64_digits();
    let mag = Integer::from_digits(&digits, Order::Lsf);
    if sign == Sign::Minus {
        -mag
    } else {
        mag
    }
}

pub(crate) fn from_rug_integer(v: &Integer) -> BigInt {
    let digits = v.to_digits::<u64>(Order::Lsf);
    let mut out = BigInt::from_slice(Sign::Plus, &[]);
    if !digits.is_empty() {
        let mag = num_bigint::BigUint::from_slice(
            &digits
                .iter()
                .flat_map(|d| [*d as u32, (*d >> 32) as u32])
                .collect::<Vec<u32>>(),
        );
        out = BigInt::from_biguint(Sign::Plus, mag);
    }
    if v.is_negative() {
        -out
    } else {
        out
    }
}

impl fmt::Debug for MpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MpFloat({}, prec={})",
            self.to_sci_string(25),
            self.prec()
        )
    }
}

impl fmt::Display for MpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f
            .precision()
            .unwrap_or(((self.prec() as f64) / std::f64::consts::LOG2_10).floor() as usize);
        f.write_str(&self.to_sci_string(digits))
    }
}

impl PartialOrd for MpFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

macro_rules! binop {
    ($Trait:ident, $method:ident, $AssignTrait:ident, $assign:ident, $op:tt) => {
        impl $Trait<&MpFloat> for &MpFloat {
            type Output = MpFloat;
            fn $method(self, rhs: &MpFloat) -> MpFloat {
                let p = self.prec().max(rhs.prec());
                MpFloat(Float::with_val(p, &self.0 $op &rhs.0))
            }
        }
        impl $Trait<MpFloat> for MpFloat {
            type Output = MpFloat;
            fn $method(mut self, rhs: MpFloat) -> MpFloat {
                self.$assign(&rhs);
                self
            }
        }
        impl $Trait<&MpFloat> for MpFloat {
            type Output = MpFloat;
            fn $method(mut self, rhs: &MpFloat) -> MpFloat {
                self.$assign(rhs);
                self
            }
        }
        impl $AssignTrait<&MpFloat> for MpFloat {
            fn $assign(&mut self, rhs: &MpFloat) {
                if rhs.prec() > self.prec() {
                    self.0 = Float::with_val(rhs.prec(), &self.0 $op &rhs.0);
                } else {
                    self.0.$assign(&rhs.0);
                }
            }
        }
        impl $AssignTrait<MpFloat> for MpFloat {
            fn $assign(&mut self, rhs: MpFloat) {
                self.$assign(&rhs);
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign, +);
binop!(Sub, sub, SubAssign, sub_assign, -);
binop!(Mul, mul, MulAssign, mul_assign, *);
binop!(Div, div, DivAssign, div_assign, /);
binop!(Rem, rem, RemAssign, rem_assign, %);

impl Neg for MpFloat {
    type Output = MpFloat;
    fn neg(self) -> MpFloat {
        MpFloat(-self.0)
    }
}

impl Neg for &MpFloat {
    type Output = MpFloat;
    fn neg(self) -> MpFloat {
        MpFloat(Float::with_val(self.prec(), -&self.0))
    }
}

impl Zero for MpFloat {
    fn zero() -> Self {
        MpFloat(Float::new(EXACT_BITS))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for MpFloat {
    fn one() -> Self {
        MpFloat(Float::with_val(EXACT_BITS, 1))
    }
}

impl Num for MpFloat {
    type FromStrRadixErr = rug::float::ParseFloatError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        let parsed = Float::parse_radix(s, radix as i32)?;
        let bits = ((s.len() as f64) * (radix as f64).log2()).ceil() as u32 + EXACT_BITS;
        Ok(MpFloat(Float::with_val(bits, parsed)))
    }
}

impl Signed for MpFloat {
    fn abs(&self) -> Self {
        MpFloat(Float::with_val(self.prec(), self.0.abs_ref()))
    }
    fn abs_sub(&self, other: &Self) -> Self {
        if self <= other {
            MpFloat::zero()
        } else {
            self - other
        }
    }
    fn signum(&self) -> Self {
        if self.0.is_zero() {
            MpFloat::zero()
        } else if self.0.is_sign_negative() {
            -MpFloat::one()
        } else {
            MpFloat::one()
        }
    }
    fn is_positive(&self) -> bool {
        self.0.is_sign_positive() && !self.0.is_zero()
    }
    fn is_negative(&self) -> bool {
        self.0.is_sign_negative() && !self.0.is_zero()
    }
}

impl Real for MpFloat {
    fn from_i64(v: i64) -> Self {
        MpFloat(Float::with_val(EXACT_BITS, v))
    }
    fn from_f64(v: f64) -> Self {
        MpFloat(Float::with_val(53, v))
    }
    fn from_bigint(v: &BigInt, ctx: &PrecisionContext) -> Self {
        MpFloat(Float::with_val(ctx.bits(), bigint_to_integer(v)))
    }
    fn from_rational(q: &BigRational, ctx: &PrecisionContext) -> Self {
        let num = bigint_to_integer(q.numer());
        let den = bigint_to_integer(q.denom());
        let r = rug::Rational::from((num, den));
        MpFloat(Float::with_val(ctx.bits(), &r))
    }
    fn at(&self, ctx: &PrecisionContext) -> Self {
        MpFloat(Float::with_val(ctx.bits(), &self.0))
    }
    fn pi(ctx: &PrecisionContext) -> Self {
        MpFloat(Float::with_val(ctx.bits(), Constant::Pi))
    }
    fn epsilon(ctx: &PrecisionContext) -> Self {
        let ten_pow = Float::with_val(ctx.bits(), Float::u_pow_u(10, ctx.digits()));
        MpFloat(ten_pow.recip())
    }
    fn sqrt(&self) -> Self {
        MpFloat(Float::with_val(self.prec(), self.0.sqrt_ref()))
    }
    fn exp(&self) -> Self {
        MpFloat(Float::with_val(self.prec(), self.0.exp_ref()))
    }
    fn ln(&self) -> Self {
        MpFloat(Float::with_val(self.prec(), self.0.ln_ref()))
    }
    fn sin(&self) -> Self {
        MpFloat(Float::with_val(self.prec(), self.0.sin_ref()))
    }
    fn cos(&self) -> Self {
        MpFloat(Float::with_val(self.prec(), self.0.cos_ref()))
    }
    fn sin_cos(&self) -> (Self, Self) {
        let (s, c) = self.0.clone().sin_cos(Float::new(self.prec()));
        (MpFloat(s), MpFloat(c))
    }
    fn atan2(&self, x: &Self) -> Self {
        let p = self.prec().max(x.prec());
        MpFloat(Float::with_val(p, self.0.atan2_ref(&x.0)))
    }
    fn powi(&self, n: i32) -> Self {
        MpFloat(Float::with_val(self.prec(), rug::ops::Pow::pow(&self.0, n)))
    }
    fn powf(&self, e: &Self) -> Self {
        let p = self.prec().max(e.prec());
        MpFloat(Float::with_val(p, rug::ops::Pow::pow(&self.0, &e.0)))
    }
    fn gamma(&self) -> Self {
        MpFloat(Float::with_val(self.prec(), self.0.gamma_ref()))
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
    fn is_finite(&self) -> bool {
        self.0.is_finite()
    }
    fn precision_bits(&self) -> u32 {
        self.prec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(d: u32) -> PrecisionContext {
        PrecisionContext::new(d).unwrap()
    }

    #[test]
    fn mixed_precision_rounds_to_larger() {
        let c = ctx(100);
        let third = MpFloat::from_i64(1) / MpFloat::from_i64(3).at(&c);
        assert!(third.precision_bits() >= c.bits());
        let back = third * MpFloat::from_i64(3);
        let err = (back - MpFloat::one()).abs();
        assert!(err < MpFloat::epsilon(&c));
    }

    #[test]
    fn sci_string_format() {
        let c = ctx(30);
        let x = MpFloat::from_rational(&BigRational::new(1.into(), 8.into()), &c);
        assert_eq!(x.to_sci_string(4), "1.250e-1");
        let y = MpFloat::from_i64(-31415);
        assert_eq!(y.to_sci_string(3), "-3.14e4");
        assert_eq!(MpFloat::zero().to_sci_string(3), "0.00e0");
        assert_eq!(y.decimal_exponent(), Some(4));
    }

    #[test]
    fn bigint_round_trip() {
        let v: BigInt = "-123456789012345678901234567890123456789".parse().unwrap();
        assert_eq!(from_rug_integer(&bigint_to_integer(&v)), v);
        let z = BigInt::from(0);
        assert_eq!(from_rug_integer(&bigint_to_integer(&z)), z);
    }
}
