use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{bernoulli, factorial, PiPolynomial};
use crate::error::{Error, Result};

/// `ζ(2l) = (-1)^{l-1} 2^{2l-1} B_{2l} π^{2l} / (2l)!` as a monomial in ℚ[π²].
pub fn zeta_even(l: u32) -> Result<PiPolynomial> {
    if l == 0 {
        return Err(Error::InvalidArgument("zeta_even needs l >= 1".into()));
    }
    let two_pow = BigInt::one() << (2 * l as usize - 1);
    let c = bernoulli(2 * l as u64) * BigRational::from_integer(two_pow)
        / BigRational::from_integer(factorial(2 * l as u64));
    let c = if l % 2 == 1 { c } else { -c };
    Ok(PiPolynomial::monomial(l, c))
}

/// `b_k = B_k ζ(k) / k`; the zero polynomial for odd `k`.
pub fn b_coeff(k: u32) -> Result<PiPolynomial> {
    if k < 2 {
        return Err(Error::InvalidArgument("b_coeff needs k >= 2".into()));
    }
    if k % 2 == 1 {
        return Ok(PiPolynomial::zero());
    }
    let zeta = zeta_even(k / 2)?;
    let s = bernoulli(k as u64) / BigRational::from_integer(BigInt::from(k));
    Ok(zeta.scale(&s))
}

/// `b_{2l} = (-1)^{l-1} 2^{2l-1} π^{2l} B_{2l}² / (2l · (2l)!)`.
pub fn b_even_closed_form(l: u32) -> Result<PiPolynomial> {
    if l == 0 {
        return Err(Error::InvalidArgument(
            "b_even_closed_form needs l >= 1".into(),
        ));
    }
    let b = bernoulli(2 * l as u64);
    let two_pow = BigInt::one() << (2 * l as usize - 1);
    let den = BigInt::from(2 * l) * factorial(2 * l as u64);
    let c = &b * &b * BigRational::new(two_pow, den);
    let c = if l % 2 == 1 { c } else { -c };
    Ok(PiPolynomial::monomial(l, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn zeta_small() {
        assert_eq!(zeta_even(1).unwrap(), PiPolynomial::monomial(1, q(1, 6)));
        assert_eq!(zeta_even(2).unwrap(), PiPolynomial::monomial(2, q(1, 90)));
        assert!(zeta_even(0).is_err());
    }

    #[test]
    fn b_small() {
        assert_eq!(b_coeff(2).unwrap(), PiPolynomial::monomial(1, q(1, 72)));
        assert!(b_coeff(3).unwrap().is_zero());
        assert_eq!(b_coeff(4).unwrap(), PiPolynomial::monomial(2, q(-1, 10800)));
        assert!(b_coeff(1).is_err());
        assert!(b_coeff(0).is_err());
    }

    #[test]
    fn definition_matches_closed_form_and_sign() {
        for l in 1..=200u32 {
            let def = b_coeff(2 * l).unwrap();
            assert_eq!(def, b_even_closed_form(l).unwrap(), "l = {l}");
            let c = def.coeff(l);
            assert_eq!(c.is_positive(), l % 2 == 1, "sign at l = {l}");
        }
        for k in (3..60).step_by(2) {
            assert!(b_coeff(k).unwrap().is_zero());
        }
    }
}
