//! Taylor coefficients `g_n` of the reciprocity function at `x = 1`.
//!
//! `g_n = 1/(n(n+1)) + 2 b_n + 2 Σ_{j=0}^{n-2} C(n-1, j) b_{j+2}` for `n ≥ 2`.
//! The sum cancels massively, so numeric evaluation needs roughly
//! `log10 G1(n)` extra digits (see [`guard`]).

pub mod guard;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rug::{Float, Integer};

use crate::error::{Error, Result};
use crate::exact::{b_coeff, tangent_numbers, PiPolynomial};
use crate::precision::{eval_pi_poly, MpFloat, PrecisionContext, Real};

pub use guard::{
    guard_g1, guard_ginf, guard_report, mantissa_exponent, recommend_digits, GuardReport,
    GuardTable,
};

/// Above this index `g_numeric` sums in floating point instead of expanding
/// the exact polynomial first.
pub const EXACT_PATH_MAX_N: u64 = 500;

/// Extra bits carried by the floating-point summation beyond the context.
const SUM_GUARD_BITS: u32 = 64;

/// Exact `g_n` in ℚ[π²].
pub fn g_exact(n: u64) -> PiPolynomial {
    match n {
        0 => return PiPolynomial::constant(-BigRational::one()),
        1 => return PiPolynomial::constant(BigRational::new(1.into(), 2.into())),
        _ => {}
    }
    let nn = BigInt::from(n);
    let mut g = PiPolynomial::constant(BigRational::new(BigInt::one(), &nn * (&nn + 1u32)));
    let two = BigRational::from_integer(2.into());
    if n.is_multiple_of(2) {
        g = g + b_coeff(n as u32).expect("n >= 2").scale(&two);
    }
    let mut binom = BigInt::one(); // C(n-1, j)
    for j in 0..=n - 2 {
        if j % 2 == 0 {
            let b = b_coeff(j as u32 + 2).expect("j + 2 >= 2");
            g = g + b.scale(&(BigRational::from_integer(&binom * 2u32)));
        }
        binom = binom * (n - 1 - j) / (j + 1);
    }
    g
}

/// A numeric value of `g_n` together with its exact form when available.
#[derive(Debug, Clone)]
pub struct GnValue<R> {
    pub n: u64,
    pub exact: Option<PiPolynomial>,
    pub numeric: R,
}

fn check_precision(n: u64, ctx: &PrecisionContext) -> Result<()> {
    ctx.require(recommend_digits(n, 10))
}

/// Floating-point evaluator for `g_n`, `n ≤ max_n`, at a fixed precision.
///
/// Builds `b_{2l}` for `2l ≤ max_n` once (from exact tangent numbers) and
/// reuses the table for every `n`.
#[derive(Debug, Clone)]
pub struct GnEvaluator {
    ctx: PrecisionContext,
    bits: u32,
    /// `b[l] = b_{2l}`, signed; `b[0]` unused.
    b: Vec<Float>,
    max_n: u64,
}

impl GnEvaluator {
    pub fn new(max_n: u64, ctx: &PrecisionContext) -> Self {
        let bits = ctx.bits() + SUM_GUARD_BITS;
        let max_l = (max_n / 2) as usize;
        let tangent = tangent_numbers(max_l.max(1));
        let pi2 = {
            let pi = Float::with_val(bits, rug::float::Constant::Pi);
            Float::with_val(bits, pi.square_ref())
        };
        let mut b = Vec::with_capacity(max_l + 1);
        b.push(Float::new(bits));
        let mut fact = Integer::from(1); // (2l)!
        let mut pi_pow = Float::with_val(bits, 1);
        for l in 1..=max_l {
            let lu = l as u64;
            fact *= (2 * lu - 1) * (2 * lu);
            pi_pow *= &pi2;
            // |b_{2l}| = l T_l² π^{2l} / (4^l (4^l - 1)² (2l)!)
            let four_l = Integer::from(1) << (2 * l as u32);
            let m = Integer::from(&four_l - 1u32);
            let den = four_l * Integer::from(m.square_ref()) * &fact;
            let num = Integer::from(tangent[l].square_ref()) * lu;
            let mut v = Float::with_val(bits, &num);
            v /= &den;
            v *= &pi_pow;
            if l % 2 == 0 {
                v = -v;
            }
            b.push(v);
        }
        GnEvaluator {
            ctx: *ctx,
            bits,
            b,
            max_n,
        }
    }

    pub fn context(&self) -> &PrecisionContext {
        &self.ctx
    }

    pub fn max_n(&self) -> u64 {
        self.max_n
    }

    /// `g_n` rounded to the evaluator's context.
    pub fn g(&self, n: u64) -> Result<MpFloat> {
        if n > self.max_n {
            return Err(Error::InvalidArgument(format!(
                "evaluator built for n <= {}, asked for {n}",
                self.max_n
            )));
        }
        check_precision(n, &self.ctx)?;
        let bits = self.bits;
        let out = match n {
            0 => Float::with_val(bits, -1),
            1 => Float::with_val(bits, 0.5),
            _ => {
                let mut sum = Float::new(bits);
                let mut binom = Integer::from(1);
                for j in 0..=n - 2 {
                    if j % 2 == 0 {
                        sum += Float::with_val(bits, &self.b[(j as usize + 2) / 2] * &binom);
                    }
                    binom *= n - 1 - j;
                    binom.div_exact_u_mut((j + 1) as u32);
                }
                if n.is_multiple_of(2) {
                    sum += &self.b[n as usize / 2];
                }
                sum *= 2u32;
                let tail = Float::with_val(bits, 1) / Float::with_val(bits, n * (n + 1));
                sum += tail;
                sum
            }
        };
        if !out.is_finite() {
            return Err(Error::NonFinite("g_numeric"));
        }
        Ok(MpFloat::from_float(Float::with_val(self.ctx.bits(), &out)))
    }
}

/// `g_n` at the precision of `ctx`.
///
/// Requires `ctx.digits() ≥ recommend_digits(n, 10)`; the result is then
/// accurate to at least `ctx.digits() − log10 G1(n) − 5` digits after the
/// decimal point.
pub fn g_numeric(n: u64, ctx: &PrecisionContext) -> Result<MpFloat> {
    check_precision(n, ctx)?;
    if n <= EXACT_PATH_MAX_N {
        Ok(eval_pi_poly(&g_exact(n), ctx))
    } else {
        GnEvaluator::new(n, ctx).g(n)
    }
}

pub fn g_value(n: u64, ctx: &PrecisionContext) -> Result<GnValue<MpFloat>> {
    let numeric = g_numeric(n, ctx)?;
    let exact = (n <= EXACT_PATH_MAX_N).then(|| g_exact(n));
    Ok(GnValue { n, exact, numeric })
}

/// Partial sum `(1/π) Σ_{n=0}^{order} (-1)^n g_n (x-1)^n` of the Taylor
/// series of `g` at 1, for `|x − 1| < 1`.
pub fn g_taylor_eval(x: &BigRational, order: u64, ctx: &PrecisionContext) -> Result<MpFloat> {
    let t = x - BigRational::one();
    if t.abs() >= BigRational::one() {
        return Err(Error::Domain(format!(
            "Taylor series at 1 needs |x - 1| < 1, got x = {x}"
        )));
    }
    check_precision(order, ctx)?;
    let evaluator = (order > EXACT_PATH_MAX_N).then(|| GnEvaluator::new(order, ctx));
    let neg_t = MpFloat::from_rational(&-t, ctx);
    let mut power = MpFloat::one();
    let mut sum = MpFloat::zero();
    for n in 0..=order {
        let g = match (&evaluator, n <= EXACT_PATH_MAX_N) {
            (_, true) => eval_pi_poly::<MpFloat>(&g_exact(n), ctx),
            (Some(e), false) => e.g(n)?,
            (None, false) => unreachable!(),
        };
        sum += g * power.clone();
        power *= neg_t.clone();
        if power.is_zero() {
            break;
        }
    }
    Ok(sum / MpFloat::pi(ctx))
}
