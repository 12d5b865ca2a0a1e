//! Double-exponential quadrature on `(0, ∞)`.
//!
//! With `x = s·exp((π/2) sinh t)` the integrand of an analytic function that
//! decays at both ends turns into a doubly-exponentially decaying function of
//! `t`, and the plain trapezoidal rule converges exponentially in the number
//! of nodes. Each level halves the step and only evaluates the new nodes.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::precision::{PrecisionContext, Real};

/// Knobs for the double-exponential rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Stop once two successive levels differ by at most this much.
    pub target_abs_error: f64,
    /// Number of step halvings before giving up.
    pub max_levels: u32,
    /// Angle (radians) of the ray used for the confluent hypergeometric integral.
    pub ray_angle: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            target_abs_error: 1e-20,
            max_levels: 10,
            ray_angle: -std::f64::consts::FRAC_PI_4,
        }
    }
}

impl QuadratureConfig {
    pub fn new(target_abs_error: f64, max_levels: u32) -> Result<Self> {
        let cfg = QuadratureConfig {
            target_abs_error,
            max_levels,
            ..Default::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.target_abs_error.is_finite() || self.target_abs_error <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "target_abs_error must be positive, got {}",
                self.target_abs_error
            )));
        }
        if self.max_levels == 0 {
            return Err(Error::InvalidArgument(
                "max_levels must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Values that can be integrated: real scalars and complex numbers over them.
pub trait QuadValue<R>:
    Clone + Zero + Add<Output = Self> + Sub<Output = Self> + Mul<R, Output = Self>
{
    /// Rough absolute value, for tolerances and tail truncation only.
    fn magnitude(&self) -> f64;
}

impl<R: Real> QuadValue<R> for R {
    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
}

impl<R: Real> QuadValue<R> for Complex<R> {
    fn magnitude(&self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }
}

#[derive(Debug, Clone)]
pub struct Quadrature<V> {
    pub value: V,
    /// Difference between the last two levels.
    pub error_estimate: f64,
    pub levels: u32,
    pub evaluations: usize,
}

/// Initial step in `t`.
const H0: f64 = 0.5;
/// Hard cap on `|t|`; beyond it `x` leaves every useful range.
const T_MAX: f64 = 7.0;
/// Consecutive negligible terms required before a tail is cut.
const QUIET_RUN: u32 = 3;

struct Rule<'a, R, V, F> {
    f: &'a F,
    ctx: &'a PrecisionContext,
    scale: R,
    half_pi: R,
    tail: f64,
    unit_noise: f64,
    evaluations: usize,
    /// Running `Σ |term|`, which bounds the rounding noise of the sum.
    abs_sum: f64,
    _v: std::marker::PhantomData<V>,
}

impl<R: Real, V: QuadValue<R>, F: Fn(&R) -> V> Rule<'_, R, V, F> {
    /// Weighted integrand at `t`, or `None` once the node is numerically
    /// useless (zero or non-finite abscissa or value).
    fn term(&mut self, t: &R) -> Option<V> {
        let sh = (t.exp() - (-t.clone()).exp()) / R::from_i64(2);
        let ch = (t.exp() + (-t.clone()).exp()) / R::from_i64(2);
        let e = (self.half_pi.clone() * sh).exp();
        let x = self.scale.clone() * e;
        if !x.is_finite() || x.is_zero() {
            return None;
        }
        let w = x.clone() * self.half_pi.clone() * ch;
        self.evaluations += 1;
        let v = (self.f)(&x) * w;
        let m = v.magnitude();
        if !m.is_finite() {
            return None;
        }
        self.abs_sum += m;
        Some(v)
    }

    /// Sum of `term(t0 + k·step)` for `k = 0, 1, …` (direction given by the
    /// sign of `step`) until the tail is negligible.
    fn sweep(&mut self, t0: f64, step: f64) -> V {
        let mut acc = V::zero();
        let mut quiet = 0;
        let mut prev = f64::INFINITY;
        let mut k = 0i64;
        loop {
            let tf = t0 + step * k as f64;
            if tf.abs() > T_MAX {
                break;
            }
            let t = R::from_f64(tf).at(self.ctx);
            match self.term(&t) {
                None => break,
                Some(v) => {
                    let m = v.magnitude();
                    // Only a shrinking term can mark the start of a tail; a
                    // tiny but growing one means the bulk is still ahead.
                    let noise = self.unit_noise * self.abs_sum * step.abs();
                    let small = (m <= self.tail || m <= noise) && m <= prev;
                    prev = m;
                    acc = acc + v;
                    quiet = if small { quiet + 1 } else { 0 };
                    if quiet >= QUIET_RUN {
                        break;
                    }
                }
            }
            k += 1;
        }
        acc
    }
}

/// `∫_0^∞ f(x) dx` with nodes concentrated around `x ≈ scale`.
///
/// Converged once two levels agree to `cfg.target_abs_error`, or to the
/// rounding noise of `ctx` if that is larger.
pub fn integrate_half_line<R, V, F>(
    f: F,
    scale: &R,
    cfg: &QuadratureConfig,
    ctx: &PrecisionContext,
) -> Result<Quadrature<V>>
where
    R: Real,
    V: QuadValue<R>,
    F: Fn(&R) -> V,
{
    cfg.validate()?;
    let mut rule = Rule {
        f: &f,
        ctx,
        scale: scale.clone(),
        half_pi: R::pi(ctx) / R::from_i64(2),
        tail: cfg.target_abs_error * 1e-3,
        unit_noise: 1024.0 * R::epsilon(ctx).to_f64(),
        evaluations: 0,
        abs_sum: 0.0,
        _v: std::marker::PhantomData,
    };
    // Level 0: all multiples of H0.
    let mut sum = rule.sweep(0.0, H0) + rule.sweep(-H0, -H0);
    let mut estimate = sum.clone() * R::from_f64(H0);
    let mut h = H0;
    let mut last_diff = f64::INFINITY;
    for level in 1..=cfg.max_levels {
        h /= 2.0;
        // New nodes are the odd multiples of the halved step.
        let fresh = rule.sweep(h, 2.0 * h) + rule.sweep(-h, -2.0 * h);
        sum = sum + fresh;
        let next = sum.clone() * R::from_f64(h);
        let diff = (next.clone() - estimate).magnitude();
        estimate = next;
        last_diff = diff;
        // Successive levels cannot agree better than the rounding noise of
        // the working precision.
        let floor = rule.unit_noise * rule.abs_sum * h;
        if level >= 2 && diff <= cfg.target_abs_error.max(floor) {
            return Ok(Quadrature {
                value: estimate,
                error_estimate: diff,
                levels: level,
                evaluations: rule.evaluations,
            });
        }
        if !diff.is_finite() {
            return Err(Error::NonFinite("double-exponential quadrature"));
        }
    }
    Err(Error::Convergence(format!(
        "no agreement to {:e} after {} levels (last change {:e})",
        cfg.target_abs_error, cfg.max_levels, last_diff
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::MpFloat;
    use num_traits::Signed;

    fn cfg(tol: f64) -> QuadratureConfig {
        QuadratureConfig::new(tol, 12).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(QuadratureConfig::new(0.0, 3).is_err());
        assert!(QuadratureConfig::new(1e-10, 0).is_err());
        assert!(QuadratureConfig::new(f64::NAN, 3).is_err());
    }

    #[test]
    fn elementary_integrals_f64() {
        let c = PrecisionContext::new(15).unwrap();
        // ∫ e^{-x} = 1, ∫ 1/(1+x²) = π/2, ∫ x^{-1/2} e^{-x} = √π
        let a = integrate_half_line(|x: &f64| (-x).exp(), &1.0, &cfg(1e-13), &c).unwrap();
        assert!((a.value - 1.0).abs() < 1e-13);
        let b = integrate_half_line(|x: &f64| 1.0 / (1.0 + x * x), &1.0, &cfg(1e-12), &c).unwrap();
        assert!((b.value - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        let g =
            integrate_half_line(|x: &f64| (-x).exp() / x.sqrt(), &1.0, &cfg(1e-12), &c).unwrap();
        assert!((g.value - std::f64::consts::PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn gamma_at_high_precision() {
        // ∫ x^4 e^{-x} dx = 24 to 40 digits
        let c = PrecisionContext::new(45).unwrap();
        let q = integrate_half_line(
            |x: &MpFloat| x.powi(4) * (-x.clone()).exp(),
            &MpFloat::from_i64(4),
            &cfg(1e-40),
            &c,
        )
        .unwrap();
        assert!((q.value - MpFloat::from_i64(24)).abs() < MpFloat::parse("1e-38", &c).unwrap());
    }

    #[test]
    fn complex_oscillatory() {
        // ∫ e^{-(1-i)x} dx = 1/(1-i) = (1+i)/2
        let c = PrecisionContext::new(15).unwrap();
        let q = integrate_half_line(
            |x: &f64| {
                let m = (-x).exp();
                Complex::new(m * x.cos(), m * x.sin())
            },
            &1.0,
            &cfg(1e-12),
            &c,
        )
        .unwrap();
        assert!((q.value - Complex::new(0.5, 0.5)).norm() < 1e-12);
    }

    #[test]
    fn non_convergence_reported() {
        let c = PrecisionContext::new(15).unwrap();
        let r = integrate_half_line(
            |x: &f64| x.sin() / x,
            &1.0,
            &QuadratureConfig::new(1e-14, 2).unwrap(),
            &c,
        );
        assert!(matches!(r, Err(Error::Convergence(_))));
    }
}
