use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Names the variable a [`Poly`] is written in.
pub trait Variable {
    /// Symbol used when printing.
    const SYMBOL: &'static str;
    /// Printed exponent per unit of stored degree (2 for π²).
    const EXPONENT_STEP: u32;
}

/// Stored degree `m` means `π^{2m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PiSquared;

/// Stored degree `m` means `π^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Pi;

/// A formal variable `z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Indeterminate;

impl Variable for PiSquared {
    const SYMBOL: &'static str = "pi";
    const EXPONENT_STEP: u32 = 2;
}

impl Variable for Pi {
    const SYMBOL: &'static str = "pi";
    const EXPONENT_STEP: u32 = 1;
}

impl Variable for Indeterminate {
    const SYMBOL: &'static str = "z";
    const EXPONENT_STEP: u32 = 1;
}

/// Sparse univariate polynomial with coefficients in `T`. Zero coefficients
/// are never stored, so structural equality is value equality.
pub struct Poly<T, V> {
    coeffs: BTreeMap<u32, T>,
    _var: PhantomData<V>,
}

impl<T: Clone, V> Clone for Poly<T, V> {
    fn clone(&self) -> Self {
        Poly {
            coeffs: self.coeffs.clone(),
            _var: PhantomData,
        }
    }
}

impl<T: PartialEq, V> PartialEq for Poly<T, V> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<T: Eq, V> Eq for Poly<T, V> {}

impl<T: fmt::Debug, V: Variable> fmt::Debug for Poly<T, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(
                self.coeffs
                    .iter()
                    .map(|(m, c)| (format!("{}^{}", V::SYMBOL, m * V::EXPONENT_STEP), c)),
            )
            .finish()
    }
}

impl<T, V> Default for Poly<T, V> {
    fn default() -> Self {
        Poly {
            coeffs: BTreeMap::new(),
            _var: PhantomData,
        }
    }
}

impl<T: Clone + Zero, V> Poly<T, V> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(degree: u32, c: T) -> Self {
        let mut p = Self::default();
        p.add_term(degree, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, T)>) -> Self {
        let mut p = Self::default();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest stored degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, degree: u32) -> T {
        self.coeffs.get(&degree).cloned().unwrap_or_else(T::zero)
    }

    /// Nonzero terms in increasing degree.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &T)> + '_ {
        self.coeffs.iter().map(|(m, c)| (*m, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Adds `c · var^degree` in place.
    pub fn add_term(&mut self, degree: u32, c: T) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.remove(&degree) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.coeffs.insert(degree, s);
                }
            }
            None => {
                self.coeffs.insert(degree, c);
            }
        }
    }

    pub fn map_coeffs<U: Clone + Zero, W>(&self, f: impl Fn(&T) -> U) -> Poly<U, W> {
        Poly::from_terms(self.coeffs.iter().map(|(m, c)| (*m, f(c))))
    }
}

impl<T: Clone + Zero + Mul<Output = T>, V> Poly<T, V> {
    pub fn scale(&self, s: &T) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(m, c)| (*m, c.clone() * s.clone())))
    }

    /// Multiplies by `var^k`.
    pub fn shift(&self, k: u32) -> Self {
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(m, c)| (m + k, c.clone()))
                .collect(),
            _var: PhantomData,
        }
    }
}

impl<T: Clone + Zero, V> Add for &Poly<T, V> {
    type Output = Poly<T, V>;
    fn add(self, rhs: &Poly<T, V>) -> Poly<T, V> {
        let mut out = self.clone();
        for (m, c) in &rhs.coeffs {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<T: Clone + Zero, V> Add for Poly<T, V> {
    type Output = Poly<T, V>;
    fn add(mut self, rhs: Poly<T, V>) -> Poly<T, V> {
        for (m, c) in rhs.coeffs {
            self.add_term(m, c);
        }
        self
    }
}

impl<T: Clone + Zero + Neg<Output = T>, V> Neg for &Poly<T, V> {
    type Output = Poly<T, V>;
    fn neg(self) -> Poly<T, V> {
        Poly {
            coeffs: self.coeffs.iter().map(|(m, c)| (*m, -c.clone())).collect(),
            _var: PhantomData,
        }
    }
}

impl<T: Clone + Zero + Neg<Output = T>, V> Neg for Poly<T, V> {
    type Output = Poly<T, V>;
    fn neg(self) -> Poly<T, V> {
        -&self
    }
}

impl<T: Clone + Zero + Neg<Output = T>, V> Sub for &Poly<T, V> {
    type Output = Poly<T, V>;
    fn sub(self, rhs: &Poly<T, V>) -> Poly<T, V> {
        let mut out = self.clone();
        for (m, c) in &rhs.coeffs {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<T: Clone + Zero + Neg<Output = T>, V> Sub for Poly<T, V> {
    type Output = Poly<T, V>;
    fn sub(self, rhs: Poly<T, V>) -> Poly<T, V> {
        &self - &rhs
    }
}

impl<T: Clone + Zero + Mul<Output = T>, V> Mul for &Poly<T, V> {
    type Output = Poly<T, V>;
    fn mul(self, rhs: &Poly<T, V>) -> Poly<T, V> {
        let mut out = Poly::default();
        for (a, ca) in &self.coeffs {
            for (b, cb) in &rhs.coeffs {
                out.add_term(a + b, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<T: Clone + Zero + Mul<Output = T>, V> Mul for Poly<T, V> {
    type Output = Poly<T, V>;
    fn mul(self, rhs: Poly<T, V>) -> Poly<T, V> {
        &self * &rhs
    }
}

impl<T: Clone + Zero + One, V> Poly<T, V> {
    pub fn one() -> Self {
        Self::constant(T::one())
    }
}

/// Prints as `a0 + a1*pi^2 + a2*pi^4` (or in `z`), lowest degree first.
impl<T: fmt::Display, V: Variable> fmt::Display for Poly<T, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let e = m * V::EXPONENT_STEP;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*{}", V::SYMBOL)?,
                _ => write!(f, "{c}*{}^{e}", V::SYMBOL)?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsePolyError(pub String);

impl fmt::Display for ParsePolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot parse polynomial: {}", self.0)
    }
}

impl std::error::Error for ParsePolyError {}

fn parse_rational(s: &str) -> Result<BigRational, ParsePolyError> {
    let s = s.trim();
    let bad = || ParsePolyError(format!("bad coefficient {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Inverse of the `Display` form for rational coefficients.
impl<V: Variable> FromStr for Poly<BigRational, V> {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(Poly::zero());
        }
        let mut out = Poly::zero();
        for term in s.split(" + ") {
            let (coef, power) = match term.split_once('*') {
                None => (term, 0),
                Some((c, v)) => {
                    let v = v.trim();
                    let rest = v
                        .strip_prefix(V::SYMBOL)
                        .ok_or_else(|| ParsePolyError(format!("unknown variable in {term:?}")))?;
                    let e: u32 = match rest.strip_prefix('^') {
                        None if rest.is_empty() => 1,
                        Some(e) => e
                            .parse()
                            .map_err(|_| ParsePolyError(format!("bad exponent in {term:?}")))?,
                        None => return Err(ParsePolyError(format!("bad term {term:?}"))),
                    };
                    (c, e)
                }
            };
            if power % V::EXPONENT_STEP != 0 {
                return Err(ParsePolyError(format!("exponent not allowed in {term:?}")));
            }
            out.add_term(power / V::EXPONENT_STEP, parse_rational(coef)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{PiPolynomial, ZPolynomial};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut p = PiPolynomial::monomial(1, q(1, 6));
        p.add_term(1, q(-1, 6));
        assert!(p.is_zero());
        assert_eq!(PiPolynomial::monomial(3, q(0, 1)).len(), 0);
    }

    #[test]
    fn display_and_parse() {
        let c2 = PiPolynomial::from_terms([(0, q(-15, 512)), (1, q(5, 16)), (2, q(1, 18))]);
        let s = c2.to_string();
        assert_eq!(s, "-15/512 + 5/16*pi^2 + 1/18*pi^4");
        assert_eq!(s.parse::<PiPolynomial>().unwrap(), c2);
        let z = ZPolynomial::from_terms([(1, q(-1, 12)), (3, q(1, 2))]);
        assert_eq!(z.to_string(), "-1/12*z + 1/2*z^3");
        assert_eq!(z.to_string().parse::<ZPolynomial>().unwrap(), z);
        assert!("1*pi^3".parse::<PiPolynomial>().is_err());
        assert_eq!("0".parse::<PiPolynomial>().unwrap(), PiPolynomial::zero());
    }

    #[test]
    fn ring_operations() {
        let a = ZPolynomial::from_terms([(0, q(1, 1)), (1, q(1, 1))]);
        let sq = &a * &a;
        assert_eq!(
            sq,
            ZPolynomial::from_terms([(0, q(1, 1)), (1, q(2, 1)), (2, q(1, 1))])
        );
        assert!((&sq - &sq).is_zero());
        assert_eq!(a.shift(2).degree(), Some(3));
    }
}
