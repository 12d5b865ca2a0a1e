//! Exact coefficients of the asymptotic expansion: Hankel symbols, the
//! series `λ(u) = Σ B_{k+1}/(k+1)! u^k`, the polynomials `P_k(z)` defined by
//! `exp(−z λ(u)) = Σ P_k(z) u^k`, and the weights `C̃_l ∈ ℚ[π²]`.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{bernoulli, factorial, Pi, PiPolynomial, Poly, ZPolynomial};

/// Largest `k` accepted by [`p_poly_composition`]; the composition sum has
/// `2^(k-1)` terms.
pub const COMPOSITION_MAX_K: u32 = 10;

/// An asymptotic weight `C̃_l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CTilde {
    pub l: u32,
    pub value: PiPolynomial,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Hankel symbol `(ν, k) = Π_{a=1}^{k} (4ν² − (2a−1)²) / (2^{2k} k!)`.
pub fn hankel(nu: &BigRational, k: u32) -> BigRational {
    let four_nu2 = nu * nu * BigRational::from_integer(4.into());
    let mut num = BigRational::one();
    for a in 1..=k as i64 {
        num *= &four_nu2 - BigRational::from_integer(((2 * a - 1) * (2 * a - 1)).into());
        if num.is_zero() {
            return num;
        }
    }
    let den = (BigInt::one() << (2 * k as usize)) * factorial(k as u64);
    num / BigRational::from_integer(den)
}

/// `B_{k+1}/(k+1)!`, the coefficient of `u^k` in `λ(u)`.
pub fn lambda_coeff(k: u32) -> Result<BigRational> {
    if k == 0 {
        return Err(Error::InvalidArgument("λ(u) has no constant term".into()));
    }
    Ok(bernoulli(k as u64 + 1) / BigRational::from_integer(factorial(k as u64 + 1)))
}

fn p_cache() -> &'static Mutex<Vec<ZPolynomial>> {
    static CACHE: OnceLock<Mutex<Vec<ZPolynomial>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![ZPolynomial::one()]))
}

/// `P_k(z)` from `k P_k = −z Σ_{j=1}^{k} j λ_j P_{k−j}` (memoized).
pub fn p_poly(k: u32) -> ZPolynomial {
    let mut cache = p_cache().lock().unwrap_or_else(|e| e.into_inner());
    while cache.len() <= k as usize {
        let kk = cache.len();
        let mut acc = ZPolynomial::zero();
        for j in 1..=kk {
            let lam = lambda_coeff(j as u32).expect("j >= 1");
            if lam.is_zero() {
                continue;
            }
            let w = lam * BigRational::from_integer(BigInt::from(j));
            acc = acc + cache[kk - j].scale(&w);
        }
        let next = acc.shift(1).scale(&-rat(1, kk as i64));
        cache.push(next);
    }
    cache[k as usize].clone()
}

/// `P_k(z)` from the explicit sum over compositions of `k`. Only for small
/// `k`; used as an independent check of [`p_poly`].
pub fn p_poly_composition(k: u32) -> Result<ZPolynomial> {
    if !(1..=COMPOSITION_MAX_K).contains(&k) {
        return Err(Error::InvalidArgument(format!(
            "composition sum supports 1 <= k <= {COMPOSITION_MAX_K}, got {k}"
        )));
    }
    let lambdas: Vec<BigRational> = std::iter::once(BigRational::zero())
        .chain((1..=k).map(|j| lambda_coeff(j).expect("j >= 1")))
        .collect();
    // by_parts[l] = Σ over compositions of k into l parts of Π λ_{k_i}
    let mut by_parts = vec![BigRational::zero(); k as usize + 1];
    // Bit i of `mask` set means a cut after position i+1.
    for mask in 0u32..(1 << (k - 1)) {
        let mut prod = BigRational::one();
        let mut parts = 0;
        let mut start = 0;
        for pos in 1..=k {
            if pos == k || mask & (1 << (pos - 1)) != 0 {
                prod *= &lambdas[(pos - start) as usize];
                parts += 1;
                start = pos;
            }
        }
        by_parts[parts] += prod;
    }
    let mut p = ZPolynomial::zero();
    for (l, s) in by_parts.into_iter().enumerate().skip(1) {
        let sign = if l % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        p.add_term(l as u32, s * BigRational::new(sign, factorial(l as u64)));
    }
    Ok(p)
}

fn c_cache() -> &'static Mutex<Vec<Option<PiPolynomial>>> {
    static CACHE: OnceLock<Mutex<Vec<Option<PiPolynomial>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(Vec::new()))
}

/// `(2πi)^k P_k(2πi)` as an element of ℚ[π²].
///
/// The monomial `p z^m` contributes `p (2i)^{k+m} π^{k+m}`, and `k + m` is
/// always even, so `(2i)^{k+m} = (−1)^{(k+m)/2} 2^{k+m}`.
fn twisted_p(k: u32) -> PiPolynomial {
    let mut out = PiPolynomial::zero();
    for (m, c) in p_poly(k).terms() {
        let w = k + m;
        debug_assert!(w.is_multiple_of(2));
        let mut v = c * BigRational::from_integer(BigInt::one() << w as usize);
        if (w / 2) % 2 == 1 {
            v = -v;
        }
        out.add_term(w / 2, v);
    }
    out
}

/// `C̃_l = Σ_{j+k=l} (k+1, j) (2πi)^k P_k(2πi) 2^{−2j}` (memoized).
pub fn c_tilde(l: u32) -> CTilde {
    let mut cache = c_cache().lock().unwrap_or_else(|e| e.into_inner());
    if cache.len() <= l as usize {
        cache.resize(l as usize + 1, None);
    }
    if let Some(v) = &cache[l as usize] {
        return CTilde {
            l,
            value: v.clone(),
        };
    }
    let mut acc = PiPolynomial::zero();
    for k in 0..=l {
        let j = l - k;
        let h = hankel(&BigRational::from_integer((k + 1).into()), j);
        if h.is_zero() {
            continue;
        }
        let w = h / BigRational::from_integer(BigInt::one() << (2 * j as usize));
        acc = acc + twisted_p(k).scale(&w);
    }
    cache[l as usize] = Some(acc.clone());
    CTilde { l, value: acc }
}

/// Gaussian-rational polynomial in π.
pub type ComplexPiPolynomial = Poly<Complex<BigRational>, Pi>;

/// `C̃_l` assembled without the parity shortcut: `z = 2πi` is substituted
/// as a polynomial in π with Gaussian-rational coefficients.
pub fn c_tilde_complex(l: u32) -> ComplexPiPolynomial {
    let z = ComplexPiPolynomial::monomial(1, Complex::new(BigRational::zero(), rat(2, 1)));
    let mut acc = ComplexPiPolynomial::zero();
    for k in 0..=l {
        let j = l - k;
        let h = hankel(&BigRational::from_integer((k + 1).into()), j)
            / BigRational::from_integer(BigInt::one() << (2 * j as usize));
        if h.is_zero() {
            continue;
        }
        let mut z_pow = ComplexPiPolynomial::one();
        for _ in 0..k {
            z_pow = &z_pow * &z;
        }
        let mut p_at_z = ComplexPiPolynomial::zero();
        let mut zm = ComplexPiPolynomial::one();
        let p = p_poly(k);
        let top = p.degree().unwrap_or(0);
        for m in 0..=top {
            let c = p.coeff(m);
            if !c.is_zero() {
                p_at_z = p_at_z + zm.scale(&Complex::new(c, BigRational::zero()));
            }
            zm = &zm * &z;
        }
        acc = acc + (&z_pow * &p_at_z).scale(&Complex::new(h, BigRational::zero()));
    }
    acc
}

/// Converts a real, even polynomial in π to ℚ[π²]; `None` if any imaginary
/// part or odd power survives.
pub fn complex_to_pi_squared(p: &ComplexPiPolynomial) -> Option<PiPolynomial> {
    let mut out = PiPolynomial::zero();
    for (d, c) in p.terms() {
        if !c.im.is_zero() || d % 2 == 1 {
            return None;
        }
        out.add_term(d / 2, c.re.clone());
    }
    Some(out)
}

/// Expected leading coefficient of `P_k`: `(−1)^k / (k! 12^k)`.
pub fn p_leading_law(k: u32) -> BigRational {
    let den = factorial(k as u64) * BigInt::from(12).pow(k);
    let v = BigRational::new(BigInt::one(), den);
    if k % 2 == 1 {
        -v
    } else {
        v
    }
}

/// Whether every nonzero degree `m` of `P_k` satisfies `m ≡ k (mod 2)` and
/// `1 ≤ m ≤ k` (for `k ≥ 1`), with degree exactly `k`.
pub fn p_parity_holds(k: u32) -> bool {
    let p = p_poly(k);
    if k == 0 {
        return p == ZPolynomial::one();
    }
    p.degree() == Some(k) && p.terms().all(|(m, _)| m % 2 == k % 2 && m >= 1 && m <= k)
}

/// Expected π⁰ coefficient of `C̃_l`: `(1, l) 2^{−2l}`.
pub fn c_tilde_constant_law(l: u32) -> BigRational {
    hankel(&BigRational::one(), l) / BigRational::from_integer(BigInt::one() << (2 * l as usize))
}

/// Expected top coefficient (of `π^{2l}`) of `C̃_l`: `1 / (l! 3^l)`.
pub fn c_tilde_top_law(l: u32) -> BigRational {
    BigRational::new(BigInt::one(), factorial(l as u64) * BigInt::from(3).pow(l))
}

/// Whether `C̃_l` lies in `span{π^{2m} : m ≤ l}` and is nonzero.
pub fn c_tilde_in_span(c: &CTilde) -> bool {
    !c.value.is_zero() && c.value.degree().is_some_and(|d| d <= c.l)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(terms: &[(u32, i64, i64)]) -> ZPolynomial {
        ZPolynomial::from_terms(terms.iter().map(|&(d, n, m)| (d, rat(n, m))))
    }

    #[test]
    fn hankel_values() {
        assert_eq!(hankel(&rat(7, 3), 0), BigRational::one());
        assert_eq!(hankel(&rat(1, 1), 1), rat(3, 4));
        assert_eq!(hankel(&rat(2, 1), 1), rat(15, 4));
        for k in 1..6 {
            assert!(hankel(&rat(1, 2), k).is_zero());
        }
        // (1,2) = (4-1)(4-9)/(16*2)
        assert_eq!(hankel(&rat(1, 1), 2), rat(-15, 32));
    }

    #[test]
    fn lambda_values() {
        assert_eq!(lambda_coeff(1).unwrap(), rat(1, 12));
        assert!(lambda_coeff(2).unwrap().is_zero());
        assert_eq!(lambda_coeff(3).unwrap(), rat(-1, 720));
        assert!(lambda_coeff(0).is_err());
    }

    #[test]
    fn first_polynomials() {
        assert_eq!(p_poly(0), ZPolynomial::one());
        assert_eq!(p_poly(1), z(&[(1, -1, 12)]));
        assert_eq!(p_poly(2), z(&[(2, 1, 288)]));
        // P_3 = -z^3/(6*12^3) + z/720
        assert_eq!(p_poly(3), z(&[(1, 1, 720), (3, -1, 10368)]));
        assert_eq!(p_poly_composition(1).unwrap(), z(&[(1, -1, 12)]));
        assert_eq!(p_poly_composition(2).unwrap(), z(&[(2, 1, 288)]));
        assert!(p_poly_composition(0).is_err());
        assert!(p_poly_composition(11).is_err());
    }

    #[test]
    fn generating_function_oracle() {
        // Series of exp(-z λ(u)) at z = 3 via the power-series exponential
        // recurrence, compared with Σ_k P_k(3) u^k.
        let n = 12usize;
        let zval = rat(3, 1);
        let f: Vec<BigRational> = (0..=n)
            .map(|k| {
                if k == 0 {
                    BigRational::zero()
                } else {
                    -&zval * lambda_coeff(k as u32).unwrap()
                }
            })
            .collect();
        let mut e = vec![BigRational::one()];
        for k in 1..=n {
            let mut s = BigRational::zero();
            for j in 1..=k {
                s += BigRational::from_integer(j.into()) * &f[j] * &e[k - j];
            }
            e.push(s / BigRational::from_integer(k.into()));
        }
        for (k, ek) in e.iter().enumerate() {
            let p = p_poly(k as u32);
            let v = p.terms().fold(BigRational::zero(), |acc, (m, c)| {
                acc + c * zval.pow(m as i32)
            });
            assert_eq!(&v, ek, "k={k}");
        }
    }

    #[test]
    fn first_weights() {
        assert_eq!(c_tilde(0).value, PiPolynomial::one());
        assert_eq!(c_tilde(1).value, "3/16 + 1/3*pi^2".parse().unwrap());
        assert_eq!(
            c_tilde(2).value,
            "-15/512 + 5/16*pi^2 + 1/18*pi^4".parse().unwrap()
        );
    }

    #[test]
    fn complex_path_is_real() {
        for l in 0..=12 {
            let c = complex_to_pi_squared(&c_tilde_complex(l)).expect("real");
            assert_eq!(c, c_tilde(l).value, "l={l}");
        }
    }

    #[test]
    fn structural_laws_small() {
        for l in 0..=15 {
            let c = c_tilde(l);
            assert!(c_tilde_in_span(&c));
            assert_eq!(c.value.coeff(0), c_tilde_constant_law(l));
            assert_eq!(c.value.coeff(l), c_tilde_top_law(l));
        }
        for k in 0..=15 {
            assert!(p_parity_holds(k));
            if k > 0 {
                assert_eq!(p_poly(k).coeff(k), p_leading_law(k));
            }
        }
    }
}
