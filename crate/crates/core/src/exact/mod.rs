//! Exact arithmetic: binomials, Bernoulli numbers, even zeta values, the
//! `b_k` weights and sparse polynomials over ℚ (in π², or in a formal
//! variable).

mod bernoulli;
mod poly;
mod zeta;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

pub use bernoulli::{
    bernoulli, bernoulli_table_snapshot, load_bernoulli_cache, save_bernoulli_cache,
    seed_bernoulli_table, tangent_numbers, BernoulliCache,
};
pub use poly::{Indeterminate, Pi, PiSquared, Poly, Variable};
pub use zeta::{b_coeff, b_even_closed_form, zeta_even};

/// Polynomial in π² with rational coefficients, i.e. an element of ℚ[π²].
pub type PiPolynomial = Poly<num_rational::BigRational, PiSquared>;

/// Polynomial in a formal variable `z` with rational coefficients.
pub type ZPolynomial = Poly<num_rational::BigRational, Indeterminate>;

/// Exact `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> Result<BigInt> {
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "binomial({n}, {k}) needs k <= n"
        )));
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    Ok(acc)
}

/// Exact `n!`.
pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pascal_row(n: usize) -> Vec<BigInt> {
        let mut row = vec![BigInt::one()];
        for _ in 0..n {
            let mut next = vec![BigInt::one(); row.len() + 1];
            for i in 1..row.len() {
                next[i] = &row[i - 1] + &row[i];
            }
            row = next;
        }
        row
    }

    #[test]
    fn binomial_small() {
        assert_eq!(binomial(5, 2).unwrap(), BigInt::from(10));
        assert_eq!(binomial(17, 0).unwrap(), BigInt::one());
        assert_eq!(binomial(0, 0).unwrap(), BigInt::one());
        assert!(binomial(3, 4).is_err());
    }

    #[test]
    fn binomial_matches_pascal() {
        let row = pascal_row(100);
        for (k, v) in row.iter().enumerate() {
            assert_eq!(&binomial(100, k as u64).unwrap(), v);
        }
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(10), BigInt::from(3_628_800));
    }
}
