//! Loss-of-significance guards for the alternating sum defining `g_n`.
//!
//! `G1(n)` is the ℓ¹ size of the terms, `Ginf(n)` the largest term. Both are
//! astronomically large (10^376761 at n = 100001) so everything here lives in
//! log space, in double precision, with `|b_{2l}|` taken from
//! `(2l)! ζ(2l)² / (l (2π)^{2l})`.

use std::f64::consts::{LN_10, PI};

use crate::error::{Error, Result};
use crate::precision::ln_gamma_f64;

/// `ζ(2l)` in double precision: a short Euler–Maclaurin sum.
pub(crate) fn zeta_even_f64(l: u64) -> f64 {
    let s = 2.0 * l as f64;
    if l >= 30 {
        // 2^{-60} is already below an ulp of 1
        let mut acc = 1.0;
        for k in 2..6 {
            acc += (k as f64).powf(-s);
        }
        return acc;
    }
    const K: f64 = 20.0;
    // B_{2j} / (2j)!
    const COEF: [f64; 6] = [
        1.0 / 12.0,
        -1.0 / 720.0,
        1.0 / 30240.0,
        -1.0 / 1209600.0,
        1.0 / 47900160.0,
        -691.0 / 1307674368000.0,
    ];
    let mut acc: f64 = (1..20).map(|k| (k as f64).powf(-s)).sum();
    acc += K.powf(1.0 - s) / (s - 1.0) + 0.5 * K.powf(-s);
    // rising factorial s (s+1) ... (s+2j-2)
    let mut rising = s;
    let mut kpow = K.powf(-s - 1.0);
    for (j, c) in COEF.iter().enumerate() {
        acc += c * rising * kpow;
        let m = 2.0 * j as f64;
        rising *= (s + m + 1.0) * (s + m + 2.0);
        kpow /= K * K;
    }
    acc
}

/// Natural log of `|b_{2l}|`.
pub(crate) fn ln_abs_b_even(l: u64, ln_fact_2l: f64) -> f64 {
    let lf = l as f64;
    ln_fact_2l + 2.0 * zeta_even_f64(l).ln() - lf.ln() - 2.0 * lf * (2.0 * PI).ln()
}

/// Precomputed `ln k!` and `ln |b_{2l}|` for every index a guard up to
/// `max_n` touches.
#[derive(Debug, Clone)]
pub struct GuardTable {
    ln_fact: Vec<f64>,
    ln_b: Vec<f64>,
}

impl GuardTable {
    pub fn new(max_n: u64) -> Self {
        let max_n = max_n.max(2) as usize;
        let ln_fact: Vec<f64> = (0..=max_n)
            .map(|k| {
                if k < 2 {
                    0.0
                } else {
                    ln_gamma_f64(k as f64 + 1.0)
                }
            })
            .collect();
        let ln_b = (0..=max_n / 2)
            .map(|l| {
                if l == 0 {
                    f64::NEG_INFINITY
                } else {
                    ln_abs_b_even(l as u64, ln_fact[2 * l])
                }
            })
            .collect();
        GuardTable { ln_fact, ln_b }
    }

    pub fn max_n(&self) -> u64 {
        (self.ln_fact.len() - 1) as u64
    }

    fn ln_binom(&self, n: usize, k: usize) -> f64 {
        self.ln_fact[n] - self.ln_fact[k] - self.ln_fact[n - k]
    }

    /// `ln(2 C(n-1, j) |b_{j+2}|)` for even `j`.
    fn ln_term(&self, n: usize, j: usize) -> f64 {
        LN_2 + self.ln_binom(n - 1, j) + self.ln_b[(j + 2) / 2]
    }

    fn check(&self, n: u64) -> Result<usize> {
        if n < 2 {
            return Err(Error::InvalidArgument("guards need n >= 2".into()));
        }
        if n > self.max_n() {
            return Err(Error::InvalidArgument(format!(
                "guard table built for n <= {}, asked for {n}",
                self.max_n()
            )));
        }
        Ok(n as usize)
    }

    /// `log10 G1(n)`.
    pub fn log10_g1(&self, n: u64) -> Result<f64> {
        let n = self.check(n)?;
        let mut logs: Vec<f64> = Vec::with_capacity(n / 2 + 2);
        logs.push(-((n as f64) * (n as f64 + 1.0)).ln());
        if n % 2 == 0 {
            logs.push(LN_2 + self.ln_b[n / 2]);
        }
        logs.extend((0..=n - 2).step_by(2).map(|j| self.ln_term(n, j)));
        Ok(log_sum_exp(&logs) / LN_10)
    }

    /// `log10 Ginf(n)`.
    pub fn log10_ginf(&self, n: u64) -> Result<f64> {
        let n = self.check(n)?;
        let max = (0..=n - 2)
            .step_by(2)
            .map(|j| self.ln_term(n, j))
            .fold(f64::NEG_INFINITY, f64::max);
        Ok(max / LN_10)
    }
}

const LN_2: f64 = std::f64::consts::LN_2;

fn log_sum_exp(logs: &[f64]) -> f64 {
    let max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = logs.iter().map(|v| (v - max).exp()).sum();
    max + sum.ln()
}

/// `log10 G1(n)` for `n ≥ 2`.
pub fn guard_g1(n: u64) -> Result<f64> {
    GuardTable::new(n).log10_g1(n)
}

/// `log10 Ginf(n)` for `n ≥ 2`.
pub fn guard_ginf(n: u64) -> Result<f64> {
    GuardTable::new(n).log10_ginf(n)
}

/// Splits `10^x` into `(mantissa, exponent)` with `1 ≤ mantissa < 10`.
pub fn mantissa_exponent(log10_value: f64) -> (f64, i64) {
    let e = log10_value.floor();
    (10f64.powf(log10_value - e), e as i64)
}

/// Working digits for computing `g_n` to `out_digits` correct digits after
/// the decimal point: the digit count of `G1(n)` plus `out_digits` plus 10.
pub fn recommend_digits(n: u64, out_digits: u32) -> u64 {
    let base = out_digits as u64 + 10;
    if n < 2 {
        return base;
    }
    let g = guard_g1(n).expect("n >= 2");
    g.ceil().max(0.0) as u64 + base
}

#[derive(Debug, Clone, PartialEq)]
pub struct GuardReport {
    pub n: u64,
    pub log10_g1: f64,
    pub log10_ginf: f64,
    pub recommended_digits: u64,
}

pub fn guard_report(n: u64, out_digits: u32) -> Result<GuardReport> {
    let table = GuardTable::new(n);
    let log10_g1 = table.log10_g1(n)?;
    Ok(GuardReport {
        n,
        log10_g1,
        log10_ginf: table.log10_ginf(n)?,
        recommended_digits: log10_g1.ceil().max(0.0) as u64 + out_digits as u64 + 10,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_f64_values() {
        let z2 = PI * PI / 6.0;
        assert!((zeta_even_f64(1) - z2).abs() < 1e-15);
        assert!((zeta_even_f64(2) - PI.powi(4) / 90.0).abs() < 1e-15);
        assert!((zeta_even_f64(40) - 1.0).abs() < 1e-20);
        for l in 1..80 {
            let z = zeta_even_f64(l);
            assert!(z > 1.0 - 1e-16 && z <= 1.65, "l={l} z={z}");
        }
    }

    #[test]
    fn small_n_by_hand() {
        // G1(2) = 1/6 + 4 b_2 = 1/6 + π²/18
        let g = 1.0 / 6.0 + PI * PI / 18.0;
        assert!((guard_g1(2).unwrap() - g.log10()).abs() < 1e-14);
        // Ginf(2) = 2 b_2 = π²/36
        assert!((guard_ginf(2).unwrap() - (PI * PI / 36.0).log10()).abs() < 1e-14);
        assert!(guard_g1(1).is_err());
        assert!(guard_ginf(0).is_err());
    }

    #[test]
    fn recommend_small() {
        assert_eq!(recommend_digits(2, 20), 30);
        assert_eq!(recommend_digits(0, 20), 30);
        assert_eq!(recommend_digits(1, 5), 15);
    }

    #[test]
    fn mantissa_split() {
        let (m, e) = mantissa_exponent(27.656);
        assert_eq!(e, 27);
        assert!((m - 4.5290).abs() < 1e-3);
    }
}
