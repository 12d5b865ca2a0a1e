//! Numeric evaluation of the truncated expansion
//!
//! `S_L(n) = 2^{9/4} π^{3/4} e^{−2√(πn)} Σ_{l=0}^{L} (2π)^{−l/2} C̃_l n^{−l/2−3/4} sin(2√(πn) + πl/4 + 3π/8)`
//!
//! and of its comparisons against `g_n − 1/n`.

use num_traits::{One, Signed};

use crate::error::Result;
use crate::gn::{recommend_digits, GnEvaluator};
use crate::precision::{eval_pi_poly, MpFloat, PrecisionContext, Real};

use super::coeffs::c_tilde;

/// Order of the last term removed in the figure quantity.
pub const FIGURE_ORDER: u32 = 4;

#[derive(Debug, Clone)]
pub struct ExpansionResult<R> {
    pub n: u64,
    pub order: u32,
    pub sum: R,
    /// `terms[l]` is the `l`-th summand, prefactor included.
    pub terms: Vec<R>,
}

/// Shared pieces of every term at a fixed `n`.
struct Frame<R> {
    pi: R,
    root: R,
    sqrt_n: R,
}

impl<R: Real> Frame<R> {
    fn new(n: u64, ctx: &PrecisionContext) -> Self {
        let pi = R::pi(ctx);
        let nn = R::from_i64(n as i64).at(ctx);
        let root = (pi.clone() * nn.clone()).sqrt();
        let sqrt_n = nn.sqrt();
        Frame { pi, root, sqrt_n }
    }

    /// `2√(πn) + πl/4 + 3π/8`.
    fn phase(&self, l: u32) -> R {
        let two = R::from_i64(2);
        two * self.root.clone() + self.pi.clone() * R::from_i64(2 * l as i64 + 3) / R::from_i64(8)
    }

    /// `(2π n)^{−l/2} C̃_l sin(phase_l)`.
    fn unit_term(&self, l: u32, ctx: &PrecisionContext) -> R {
        let c: R = eval_pi_poly(&c_tilde(l).value, ctx);
        let scale = (R::from_i64(2) * self.pi.clone() * self.sqrt_n.clone() * self.sqrt_n.clone())
            .sqrt()
            .powi(l as i32);
        c * self.phase(l).sin() / scale
    }

    /// `2^{9/4} π^{3/4} n^{−3/4} e^{−2√(πn)}`.
    fn envelope(&self, ctx: &PrecisionContext) -> R {
        let q = R::from_f64(0.75);
        let two = R::from_i64(2).at(ctx);
        two.powf(&R::from_f64(2.25))
            * (self.pi.clone() / self.sqrt_n.clone().powi(2)).powf(&q)
            * (-(R::from_i64(2) * self.root.clone())).exp()
    }
}

/// `S_L(n)` with its individual terms.
pub fn expansion_sum<R: Real>(n: u64, order: u32, ctx: &PrecisionContext) -> ExpansionResult<R> {
    assert!(n >= 1, "expansion_sum needs n >= 1");
    let frame = Frame::<R>::new(n, ctx);
    let env = frame.envelope(ctx);
    let terms: Vec<R> = (0..=order)
        .map(|l| env.clone() * frame.unit_term(l, ctx))
        .collect();
    let sum = terms.iter().fold(R::zero(), |acc, t| acc + t.clone());
    ExpansionResult {
        n,
        order,
        sum,
        terms,
    }
}

/// The same terms written as `C_k n^{−k/4} sin(2√(πn) + D_k) e^{−2√(πn)}` with
/// `k = 2l + 3`, `C_k = 2^{9/4} π^{3/4} (2π)^{−(k−3)/4} C̃_{(k−3)/2}` and
/// `D_k = πk/8`.
pub fn odd_power_terms<R: Real>(n: u64, order: u32, ctx: &PrecisionContext) -> Vec<R> {
    let pi = R::pi(ctx);
    let nn = R::from_i64(n as i64).at(ctx);
    let root = (pi.clone() * nn.clone()).sqrt();
    let decay = (-(R::from_i64(2) * root.clone())).exp();
    (0..=order)
        .map(|l| {
            let k = 2 * l as i64 + 3;
            let quarter = |v: i64| R::from_f64(v as f64 / 4.0);
            let c_k = R::from_i64(2).at(ctx).powf(&quarter(9))
                * pi.powf(&quarter(3))
                * (R::from_i64(2) * pi.clone()).powf(&quarter(-(k - 3)))
                * eval_pi_poly::<R>(&c_tilde(l).value, ctx);
            let d_k = pi.clone() * R::from_i64(k) / R::from_i64(8);
            c_k * nn.powf(&quarter(-k))
                * (R::from_i64(2) * root.clone() + d_k).sin()
                * decay.clone()
        })
        .collect()
}

/// Digits needed so that `g_n − 1/n − S_L(n)`, scaled by
/// `n^{L/2+5/4} e^{2√(πn)}`, still carries `out_digits` significant digits.
///
/// On top of [`recommend_digits`] this adds the decimal size of the scaling
/// factor, since `g_n − 1/n` itself is of order `e^{−2√(πn)}`.
pub fn residual_digits(n: u64, order: u32, out_digits: u32) -> u64 {
    let nf = n.max(1) as f64;
    let decay = 2.0 * (std::f64::consts::PI * nf).sqrt() / std::f64::consts::LN_10;
    let power = (order as f64 / 2.0 + 1.25) * nf.log10();
    recommend_digits(n, out_digits) + (decay + power).ceil() as u64
}

/// Digits needed by [`figure_quantity`] at `n`.
pub fn figure_digits(n: u64, out_digits: u32) -> u64 {
    residual_digits(n, FIGURE_ORDER, out_digits)
}

fn g_minus_reciprocal(ev: &GnEvaluator, n: u64) -> Result<MpFloat> {
    let g = ev.g(n)?;
    Ok(g - MpFloat::one() / MpFloat::from_i64(n as i64).at(ev.context()))
}

/// `g_n − 1/n − S_L(n)`. Requires `ctx.digits() ≥ residual_digits(n, L, 10)`.
pub fn residual(n: u64, order: u32, ctx: &PrecisionContext) -> Result<MpFloat> {
    ctx.require(residual_digits(n, order, 10))?;
    let ev = GnEvaluator::new(n, ctx);
    residual_with(&ev, n, order)
}

/// [`residual`] reusing a prebuilt evaluator (built for at least `n`).
pub fn residual_with(ev: &GnEvaluator, n: u64, order: u32) -> Result<MpFloat> {
    let ctx = ev.context();
    ctx.require(residual_digits(n, order, 10))?;
    let diff = g_minus_reciprocal(ev, n)?;
    Ok(diff - expansion_sum::<MpFloat>(n, order, ctx).sum)
}

/// `|residual| · n^{L/2+5/4} · e^{2√(πn)}`, the quantity that the error term
/// says stays bounded.
pub fn scaled_residual(ev: &GnEvaluator, n: u64, order: u32) -> Result<MpFloat> {
    let ctx = ev.context();
    let r = residual_with(ev, n, order)?;
    let nn = MpFloat::from_i64(n as i64).at(ctx);
    let root = (MpFloat::pi(ctx) * nn.clone()).sqrt();
    let power = nn.powf(&MpFloat::from_f64(order as f64 / 2.0 + 1.25));
    Ok(r.abs() * power * (MpFloat::from_i64(2) * root).exp())
}

/// One sample of the figure quantity.
#[derive(Debug, Clone)]
pub struct FigureRow {
    pub n: u64,
    pub value: MpFloat,
    /// `(2π)^{−5/2} C̃_5 sin(2√(πn) + 13π/8)`.
    pub predicted: MpFloat,
}

/// `n^{5/2} ( 2^{−9/4} π^{−3/4} n^{3/4} e^{2√(πn)} (g_n − 1/n)
///   − Σ_{l=0}^{4} (2π)^{−l/2} C̃_l n^{−l/2} sin(2√(πn) + πl/4 + 3π/8) )`.
pub fn figure_quantity(n: u64, ctx: &PrecisionContext) -> Result<MpFloat> {
    ctx.require(figure_digits(n, 10))?;
    let ev = GnEvaluator::new(n, ctx);
    figure_quantity_with(&ev, n)
}

pub fn figure_quantity_with(ev: &GnEvaluator, n: u64) -> Result<MpFloat> {
    let ctx = ev.context();
    ctx.require(figure_digits(n, 10))?;
    let diff = g_minus_reciprocal(ev, n)?;
    let frame = Frame::<MpFloat>::new(n, ctx);
    let normalized = diff / frame.envelope(ctx);
    let mut rest = normalized;
    for l in 0..=FIGURE_ORDER {
        rest -= frame.unit_term(l, ctx);
    }
    let n52 = MpFloat::from_i64(n as i64)
        .at(ctx)
        .powf(&MpFloat::from_f64(2.5));
    Ok(rest * n52)
}

/// `(2π)^{−5/2} C̃_5 sin(2√(πn) + 13π/8)`.
pub fn figure_prediction<R: Real>(n: u64, ctx: &PrecisionContext) -> R {
    let frame = Frame::<R>::new(n, ctx);
    let c5: R = eval_pi_poly(&c_tilde(FIGURE_ORDER + 1).value, ctx);
    let amp = c5 / (R::from_i64(2) * frame.pi.clone()).powf(&R::from_f64(2.5));
    amp * frame.phase(FIGURE_ORDER + 1).sin()
}

/// Figure rows for `n = start, start + step, …, ≤ end`, all at `ctx` (which
/// must satisfy [`figure_digits`] at `end`).
pub fn figure_dataset(
    start: u64,
    end: u64,
    step: u64,
    ctx: &PrecisionContext,
) -> Result<Vec<FigureRow>> {
    if start < 2 || start > end || step == 0 {
        return Err(crate::error::Error::InvalidArgument(format!(
            "figure range needs 2 <= start <= end and step >= 1, got {start}..{end} step {step}"
        )));
    }
    ctx.require(figure_digits(end, 10))?;
    let ev = GnEvaluator::new(end, ctx);
    (start..=end)
        .step_by(step as usize)
        .map(|n| {
            Ok(FigureRow {
                n,
                value: figure_quantity_with(&ev, n)?,
                predicted: figure_prediction(n, ctx),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn ctx(d: u64) -> PrecisionContext {
        PrecisionContext::new(d as u32).unwrap()
    }

    #[test]
    fn order_zero_is_main_term() {
        let c = ctx(40);
        for n in [1u64, 10, 1000] {
            let r = expansion_sum::<MpFloat>(n, 0, &c);
            let nf = n as f64;
            let pi = std::f64::consts::PI;
            let root = (pi * nf).sqrt();
            let expect = 2f64.powf(2.25)
                * pi.powf(0.75)
                * nf.powf(-0.75)
                * (-2.0 * root).exp()
                * (2.0 * root + 3.0 * pi / 8.0).sin();
            assert!(
                (r.sum.to_f64() - expect).abs() <= 1e-12 * expect.abs(),
                "n={n}"
            );
        }
        let s1 = expansion_sum::<f64>(1, 0, &c).sum;
        assert!(
            s1.abs()
                <= 2f64.powf(2.25)
                    * std::f64::consts::PI.powf(0.75)
                    * (-2.0 * std::f64::consts::PI.sqrt()).exp()
        );
    }

    #[test]
    fn sum_matches_terms_and_odd_power_form() {
        let c = ctx(50);
        let r = expansion_sum::<MpFloat>(400, 5, &c);
        let total = r.terms.iter().fold(MpFloat::zero(), |a, t| a + t.clone());
        assert_eq!(total, r.sum);
        let alt = odd_power_terms::<MpFloat>(400, 5, &c);
        for (a, b) in r.terms.iter().zip(&alt) {
            let tol = a.abs() * MpFloat::parse("1e-40", &c).unwrap()
                + MpFloat::parse("1e-200", &c).unwrap();
            assert!((a.clone() - b.clone()).abs() <= tol);
        }
    }

    #[test]
    fn envelopes_decrease() {
        let c = ctx(30);
        for n in [100u64, 1000] {
            let mut prev = f64::INFINITY;
            for l in 0..=5 {
                let cl: f64 = eval_pi_poly(&c_tilde(l).value, &c);
                let env = cl / (2.0 * std::f64::consts::PI * n as f64).powf(l as f64 / 2.0);
                assert!(env < prev, "n={n} l={l}");
                prev = env;
            }
        }
    }

    #[test]
    fn residual_small_n() {
        let c = ctx(residual_digits(300, 3, 10));
        let r = residual(300, 3, &c).unwrap();
        let nf = 300f64;
        let bound = 50.0 * nf.powf(-11.0 / 4.0) * (-2.0 * (std::f64::consts::PI * nf).sqrt()).exp();
        assert!(r.to_f64().abs() <= bound);
        assert!(residual(300, 3, &ctx(100)).is_err());
    }

    #[test]
    fn prediction_amplitude() {
        let c = ctx(30);
        let amp: f64 =
            eval_pi_poly::<f64>(&c_tilde(5).value, &c) / (2.0 * std::f64::consts::PI).powf(2.5);
        assert!((amp - 1.49962).abs() < 1e-5);
        for n in 8000..8020 {
            assert!(figure_prediction::<f64>(n, &c).abs() <= 1.49963);
        }
    }
}
