//! Quadrature oracles for `g_n − 1/n` that share no code with the Bernoulli
//! sums: the Bessel function `K_1`, the confluent hypergeometric function
//! `U(α; 0; z)`, the two integral forms of `I_n(x)` and the divisor-sum
//! reconstruction `g_n − 1/n = −(4/n!) Σ d(m) I_n(m)`.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::factorial;
use crate::precision::{gamma_real, PrecisionContext, Real};

use super::quadrature::{integrate_half_line, QuadratureConfig};

/// Number of positive divisors of `m`.
pub fn divisor_count(m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidArgument("d(m) needs m >= 1".into()));
    }
    let mut count = 0;
    let mut d = 1u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            count += if d * d == m { 1 } else { 2 };
        }
        d += 1;
    }
    Ok(count)
}

pub fn cexp<R: Real>(z: &Complex<R>) -> Complex<R> {
    let m = z.re.exp();
    let (s, c) = z.im.sin_cos();
    Complex::new(m.clone() * c, m * s)
}

/// Principal square root.
pub fn csqrt<R: Real>(z: &Complex<R>) -> Complex<R> {
    let r = (z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone()).sqrt();
    let two = R::from_i64(2);
    let re = ((r.clone() + z.re.clone()) / two.clone()).sqrt();
    let im = ((r - z.re.clone()) / two).sqrt();
    if z.im.is_negative() {
        Complex::new(re, -im)
    } else {
        Complex::new(re, im)
    }
}

/// `z^k` by repeated squaring; negative `k` inverts at the end.
pub fn cpowi<R: Real>(z: &Complex<R>, k: i64) -> Complex<R> {
    let mut base = z.clone();
    let mut e = k.unsigned_abs();
    let mut acc = Complex::new(R::one(), R::zero());
    while e > 0 {
        if e & 1 == 1 {
            acc *= base.clone();
        }
        base = base.clone() * base;
        e >>= 1;
    }
    if k < 0 {
        Complex::new(R::one(), R::zero()) / acc
    } else {
        acc
    }
}

fn polar<R: Real>(r: &R, theta: &R) -> Complex<R> {
    let (s, c) = theta.sin_cos();
    Complex::new(r.clone() * c, r.clone() * s)
}

/// `K_1(r e^{iθ})` for `|θ| ≤ π/4`.
///
/// Starts from `K_1(z) = (1/z) ∫_0^∞ exp(−u − z²/(4u)) du` and turns the
/// path to `u = w e^{iθ}`, which gives
/// `K_1(z) = (1/r) ∫_0^∞ exp(−e^{iθ}(w + r²/(4w))) dw`.
/// On the new path the integrand decays at both ends with rate `cos θ ≥ 1/√2`.
fn k1_polar<R: Real>(
    r: &R,
    theta: &R,
    ctx: &PrecisionContext,
    q: &QuadratureConfig,
) -> Result<Complex<R>> {
    let rot = polar(&R::one(), theta);
    let quarter_r2 = r.clone() * r.clone() / R::from_i64(4);
    let scale = r.clone() / R::from_i64(2);
    // The integral is divided by r afterwards.
    let inner_cfg = QuadratureConfig {
        target_abs_error: (q.target_abs_error * r.to_f64().clamp(1e-300, 1.0))
            .max(f64::MIN_POSITIVE),
        ..*q
    };
    let integral = integrate_half_line(
        |w: &R| {
            let s = w.clone() + quarter_r2.clone() / w.clone();
            cexp(&(-(rot.clone() * s)))
        },
        &scale,
        &inner_cfg,
        ctx,
    )?;
    Ok(integral.value / r.clone())
}

/// Inner integrals of nested quadratures run to the working precision, so
/// that their error never depends on the size of the outer weight.
fn nested(q: &QuadratureConfig) -> QuadratureConfig {
    QuadratureConfig {
        target_abs_error: f64::MIN_POSITIVE,
        ..*q
    }
}

fn check_sector<R: Real>(theta: &R, ctx: &PrecisionContext) -> Result<()> {
    let limit = R::pi(ctx) / R::from_i64(4);
    let slack = limit.clone() * R::from_f64(1e-12);
    if theta.abs() > limit + slack {
        return Err(Error::Domain(format!(
            "K_1 integral needs |arg z| <= pi/4, got arg z = {}",
            theta.to_f64()
        )));
    }
    Ok(())
}

/// Modified Bessel function `K_1(z)` for `z ≠ 0`, `|arg z| ≤ π/4`.
pub fn k_bessel_1<R: Real>(
    z: &Complex<R>,
    ctx: &PrecisionContext,
    q: &QuadratureConfig,
) -> Result<Complex<R>> {
    if z.re.is_zero() && z.im.is_zero() {
        return Err(Error::Domain("K_1 is singular at 0".into()));
    }
    let r = (z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone()).sqrt();
    let theta = z.im.atan2(&z.re);
    check_sector(&theta, ctx)?;
    k1_polar(&r, &theta, ctx, q)
}

/// Both sides of `∫_0^∞ K_1(u) u^{s−1} du = 2^{s−2} Γ((s+1)/2) Γ((s−1)/2)`.
pub fn mellin_check<R: Real>(
    s: &R,
    ctx: &PrecisionContext,
    q: &QuadratureConfig,
) -> Result<(R, R)> {
    if *s <= R::one() {
        return Err(Error::Domain(format!(
            "Mellin integral of K_1 diverges for s <= 1, got {}",
            s.to_f64()
        )));
    }
    let zero = R::zero();
    let inner = nested(q);
    let exponent = s.clone() - R::one();
    let lhs = integrate_half_line(
        |u: &R| {
            let k = k1_polar(u, &zero, ctx, &inner)
                .map(|v| v.re)
                .unwrap_or_else(|_| R::zero());
            k * u.powf(&exponent)
        },
        s,
        q,
        ctx,
    )?
    .value;
    let two = R::from_i64(2).at(ctx);
    let rhs = two.powf(&(s.clone() - two.clone()))
        * gamma_real(&((s.clone() + R::one()) / two.clone()), ctx)?
        * gamma_real(&((s.clone() - R::one()) / two), ctx)?;
    Ok((lhs, rhs))
}

/// `Γ(α) U(α; 0; z) = ∫_0^∞ e^{−zt} t^{α−1} (1+t)^{−α−1} dt`, integrated
/// along the ray `t = τ e^{iφ}`. The ray must make `Re(z e^{iφ}) > 0`.
pub fn u_chf_scaled<R: Real>(
    alpha: u32,
    z: &Complex<R>,
    phi: &R,
    ctx: &PrecisionContext,
    q: &QuadratureConfig,
) -> Result<Complex<R>> {
    if alpha == 0 {
        return Err(Error::Domain("U(alpha; 0; z) needs alpha >= 1".into()));
    }
    let dir = polar(&R::one(), phi);
    let zd = z.clone() * dir.clone();
    if !zd.re.is_positive() {
        return Err(Error::Domain(
            "integration ray does not give a decaying exponential".into(),
        ));
    }
    let a = alpha as i64;
    // Peak of |integrand| sits near τ = sqrt(α / Re(z e^{iφ})).
    let scale = (R::from_i64(a) / zd.re.clone()).sqrt();
    let one = Complex::new(R::one(), R::zero());
    let integral = integrate_half_line(
        |tau: &R| {
            let t = dir.clone() * tau.clone();
            let body = cpowi(&t, a - 1) * cpowi(&(one.clone() + t.clone()), -a - 1);
            cexp(&(-(z.clone() * t))) * body
        },
        &scale,
        q,
        ctx,
    )?;
    Ok(integral.value * dir)
}

/// `U(α; 0; 2πix)` on the ray of angle `q.ray_angle`.
pub fn u_chf<R: Real>(
    alpha: u32,
    x: &R,
    ctx: &PrecisionContext,
    q: &QuadratureConfig,
) -> Result<Complex<R>> {
    if !x.is_positive() {
        return Err(Error::Domain("u_chf needs x > 0".into()));
    }
    let z = Complex::new(R::zero(), R::from_i64(2) * R::pi(ctx) * x.clone());
    let scaled = u_chf_scaled(alpha, &z, &R::from_f64(q.ray_angle).at(ctx), ctx, q)?;
    let g = R::from_bigint(&factorial(alpha as u64 - 1), ctx);
    Ok(scaled / g)
}

/// Both sides of `∫_0^∞ e^{−u} √(zu) K_1(2√(zu)) u^{α−1} du = ½ Γ(α) Γ(α+1) U(α; 0; z)`
/// for real `z > 0`.
pub fn bessel_chf_identity<R: Real>(
    alpha: u32,
    z: &R,
    ctx: &PrecisionContext,
    q: &QuadratureConfig,
) -> Result<(R, R)> {
    if alpha == 0 || !z.is_positive() {
        return Err(Error::Domain("identity needs alpha >= 1 and z > 0".into()));
    }
    let zero = R::zero();
    let inner = nested(q);
    let a = alpha as i32;
    let lhs = integrate_half_line(
        |u: &R| {
            let root = (z.clone() * u.clone()).sqrt();
            let k = k1_polar(&(R::from_i64(2) * root.clone()), &zero, ctx, &inner)
                .map(|v| v.re)
                .unwrap_or_else(|_| R::zero());
            (-u.clone()).exp() * root * k * u.powi(a - 1)
        },
        &R::from_i64(alpha as i64),
        q,
        ctx,
    )?
    .value;
    let scaled = u_chf_scaled(alpha, &Complex::new(z.clone(), R::zero()), &zero, ctx, q)?;
    // ½ Γ(α) Γ(α+1) U = ½ α! · (Γ(α) U)
    let rhs = scaled.re * R::from_bigint(&factorial(alpha as u64), ctx) / R::from_i64(2);
    Ok((lhs, rhs))
}

/// `I_n(x) = (n−1)! n! Re U(n; 0; 2πix)`.
pub fn i_n_via_chf<R: Real>(
    n: u32,
    x: &R,
    ctx: &PrecisionContext,
    q: &QuadratureConfig,
) -> Result<R> {
    check_n(n)?;
    if !x.is_positive() {
        return Err(Error::Domain("I_n(x) needs x > 0".into()));
    }
    let z = Complex::new(R::zero(), R::from_i64(2) * R::pi(ctx) * x.clone());
    let n_fact = R::from_bigint(&factorial(n as u64), ctx);
    // The integral is multiplied by n! afterwards.
    let inner = QuadratureConfig {
        target_abs_error: (q.target_abs_error / n_fact.to_f64()).max(f64::MIN_POSITIVE),
        ..*q
    };
    let scaled = u_chf_scaled(n, &z, &R::from_f64(q.ray_angle).at(ctx), ctx, &inner)?;
    Ok(scaled.re * n_fact)
}

/// `I_n(x) = 2 x^{−n} Re(√(2πi) ∫_0^∞ e^{−u/x} K_1(2√(2πiu)) u^{n−1/2} du)`
/// with `√(2πi) = √π (1+i)`.
pub fn i_n_via_bessel<R: Real>(
    n: u32,
    x: &R,
    ctx: &PrecisionContext,
    q: &QuadratureConfig,
) -> Result<R> {
    check_n(n)?;
    if !x.is_positive() {
        return Err(Error::Domain("I_n(x) needs x > 0".into()));
    }
    let pi = R::pi(ctx);
    let quarter = pi.clone() / R::from_i64(4);
    let two_pi = R::from_i64(2) * pi.clone();
    let expo = R::from_i64(n as i64) - R::from_f64(0.5);
    let inner = nested(q);
    let integral = integrate_half_line(
        |u: &R| {
            // 2√(2πiu) = 2√(2πu) e^{iπ/4}
            let r = R::from_i64(2) * (two_pi.clone() * u.clone()).sqrt();
            let k = k1_polar(&r, &quarter, ctx, &inner).unwrap_or_else(|_| Complex::zero());
            k * ((-(u.clone() / x.clone())).exp() * u.powf(&expo))
        },
        &(R::from_i64(n as i64) * x.clone()),
        q,
        ctx,
    )?;
    let root = Complex::new(pi.sqrt(), pi.sqrt());
    let val = (root * integral.value).re;
    Ok(R::from_i64(2) * val / x.powi(n as i32))
}

fn check_n(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("I_n needs n >= 2, got {n}")));
    }
    Ok(())
}

/// `g_n − 1/n = −(4/n!) Σ_{m=1}^{M} d(m) I_n(m)`, stopping early once a term
/// drops below `q.target_abs_error / 10`.
pub fn gn_oracle<R: Real>(
    n: u32,
    terms: u64,
    ctx: &PrecisionContext,
    q: &QuadratureConfig,
) -> Result<R> {
    check_n(n)?;
    if terms == 0 {
        return Err(Error::InvalidArgument(
            "gn_oracle needs at least one term".into(),
        ));
    }
    let z_unit = R::from_i64(2) * R::pi(ctx);
    let phi = R::from_f64(q.ray_angle).at(ctx);
    let mut acc = R::zero();
    for m in 1..=terms {
        let z = Complex::new(R::zero(), z_unit.clone() * R::from_i64(m as i64));
        // (4/n!) I_n(m) = 4 (n−1)! Re U = 4 Re(Γ(n) U)
        let weight = R::from_i64(4 * divisor_count(m)? as i64);
        let j = u_chf_scaled(n, &z, &phi, ctx, q)?;
        // The real part alone can vanish by accident; the modulus cannot.
        let small =
            (j.re.to_f64().hypot(j.im.to_f64()) * weight.to_f64()) < q.target_abs_error / 10.0;
        acc -= j.re * weight;
        if small {
            break;
        }
    }
    Ok(acc)
}
