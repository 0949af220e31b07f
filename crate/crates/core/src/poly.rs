//! Dense univariate polynomials with exact integer coefficients.
//!
//! Coefficients are stored constant term first. The zero polynomial is the
//! single coefficient `0` and has degree [`Degree::NegInfinity`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("divisor is not monic")]
    NonMonicDivisor,
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error(
        "cannot parse polynomial {0:?}: expected comma-separated integers, constant term first"
    )]
    Parse(String),
}

/// Degree of a polynomial. The zero polynomial has degree `NegInfinity`,
/// which orders below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<T = BigInt> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    /// Builds a polynomial from coefficients, constant term first. Trailing
    /// zeros are dropped; an empty vector yields the zero polynomial.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(T::zero());
        }
        Poly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        Poly {
            coeffs: vec![T::zero()],
        }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `X^d`.
    pub fn monomial(d: usize) -> Self {
        let mut coeffs = vec![T::zero(); d + 1];
        coeffs[d] = T::one();
        Poly { coeffs }
    }

    /// `X^d + c`.
    pub fn x_pow_plus(d: usize, c: T) -> Self {
        let mut coeffs = vec![T::zero(); d + 1];
        coeffs[d] = T::one();
        coeffs[0] = coeffs[0].clone() + c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `X^i`; zero past the leading term.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn degree(&self) -> Degree {
        if self.is_zero() {
            Degree::NegInfinity
        } else {
            Degree::Finite(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> &T {
        self.coeffs
            .last()
            .expect("coefficient vector is never empty")
    }

    pub fn constant_term(&self) -> &T {
        &self.coeffs[0]
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    /// Evaluates at an integer point by Horner's rule.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * T::from_digit(i as u32))
            .collect();
        Self::new(coeffs)
    }

    /// `p(X^k)`.
    pub fn compose_x_pow(&self, k: usize) -> Self {
        assert!(k >= 1, "exponent must be positive");
        let mut coeffs = vec![T::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Self::new(coeffs)
    }

    fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    /// Greatest common divisor of the coefficients, nonnegative.
    pub fn content(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |g, c| g.gcd(c))
    }

    /// Division with remainder by a monic divisor: `self = q * divisor + r`
    /// with `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::ZeroDivisor);
        }
        if !divisor.is_monic() {
            return Err(PolyError::NonMonicDivisor);
        }
        let db = divisor.coeffs.len() - 1;
        if self.is_zero() || self.coeffs.len() - 1 < db {
            return Ok((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![T::zero(); rem.len() - db];
        for shift in (0..quot.len()).rev() {
            let lead = rem[shift + db].clone();
            if lead.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] = rem[shift + j].clone() - lead.clone() * b.clone();
            }
            quot[shift] = lead;
        }
        rem.truncate(db.max(1));
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Remainder of `self` modulo a nonzero divisor, up to a nonzero constant
    /// factor. Stays over the integers for non-monic divisors.
    fn pseudo_rem(&self, divisor: &Self) -> Self {
        let db = divisor.coeffs.len() - 1;
        let lb = divisor.leading().clone();
        let mut r = self.clone();
        while let Degree::Finite(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading().clone();
            let shifted = divisor.scale(&lr).shift(dr - db);
            r = &r.scale(&lb) - &shifted;
        }
        r
    }

    fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|x| x.clone() / c.clone()).collect())
    }

    /// Greatest common divisor over the rationals, returned as a primitive
    /// integer polynomial (sign unnormalized). Uses the primitive
    /// pseudo-remainder sequence, so every intermediate stays integral.
    pub fn rational_gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// True iff the polynomial has no repeated complex root, i.e.
    /// `gcd(p, p')` over the rationals is a nonzero constant.
    pub fn has_simple_roots(&self) -> bool {
        match self.degree() {
            Degree::NegInfinity => false,
            Degree::Finite(0) => true,
            Degree::Finite(_) => {
                self.rational_gcd(&self.derivative()).degree() == Degree::Finite(0)
            }
        }
    }

    /// True iff `self` divides `X^d + c` exactly. `self` must be monic.
    pub fn divides_x_pow_plus(&self, d: usize, c: &T) -> Result<bool, PolyError> {
        let (_, r) = Self::x_pow_plus(d, c.clone()).divrem(self)?;
        Ok(r.is_zero())
    }
}

impl<T: Scalar> fmt::Display for Poly<T> {
    /// Comma-separated coefficients, constant term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl<T: Scalar> FromStr for Poly<T> {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let coeffs = s
            .split(',')
            .map(|part| {
                T::from_str_radix(part.trim(), 10).map_err(|_| PolyError::Parse(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(coeffs))
    }
}

impl<T: Scalar> Serialize for Poly<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for Poly<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn zip_with<T: Scalar>(a: &Poly<T>, b: &Poly<T>, op: impl Fn(T, T) -> T) -> Poly<T> {
    let n = a.coeffs.len().max(b.coeffs.len());
    Poly::new((0..n).map(|i| op(a.coeff(i), b.coeff(i))).collect())
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Self) -> Poly<T> {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Self) -> Poly<T> {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Self) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(coeffs)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, rhs: Self) -> Poly<T> {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type P = Poly<i64>;

    fn p(c: &[i64]) -> P {
        P::from_i64s(c)
    }

    #[test]
    fn eval_examples() {
        let base = p(&[2, 2, 1]);
        assert_eq!(base.eval(&0), 2);
        assert_eq!(base.eval(&-2), 2);
        assert_eq!(p(&[4, 0, 0, 0, 1]).eval(&2), 20);
    }

    #[test]
    fn products_from_the_conjugate_factorisations() {
        assert_eq!(&p(&[2, -2, 1]) * &p(&[2, 2, 1]), p(&[4, 0, 0, 0, 1]));
        assert_eq!(&p(&[8, -4, 1]) * &p(&[8, 4, 1]), p(&[64, 0, 0, 0, 1]));
        assert_eq!(&P::one() * &p(&[2, 2, 1]), p(&[2, 2, 1]));
        assert_eq!(&P::zero() * &p(&[2, 2, 1]), P::zero());
    }

    #[test]
    fn divrem_examples() {
        let (q, r) = p(&[4, 0, 0, 0, 1]).divrem(&p(&[2, 2, 1])).unwrap();
        assert_eq!(q, p(&[2, -2, 1]));
        assert!(r.is_zero());

        let (q, r) = p(&[1, 0, 1, 1]).divrem(&p(&[2, 2, 1])).unwrap();
        // (X - 1)(X^2 + 2X + 2) = X^3 + X^2 - 2
        assert_eq!(q, p(&[-1, 1]));
        assert_eq!(r, p(&[3]));

        let (q, r) = P::zero().divrem(&p(&[2, 2, 1])).unwrap();
        assert!(q.is_zero() && r.is_zero());
    }

    #[test]
    fn divrem_rejects_non_monic_and_zero() {
        assert_eq!(
            p(&[1, 1]).divrem(&p(&[1, 2])),
            Err(PolyError::NonMonicDivisor)
        );
        assert_eq!(p(&[1, 1]).divrem(&P::zero()), Err(PolyError::ZeroDivisor));
    }

    #[test]
    fn divisibility_of_x_pow_plus_c() {
        assert!(p(&[2, 2, 1]).divides_x_pow_plus(4, &4).unwrap());
        assert!(p(&[8, 4, 1]).divides_x_pow_plus(4, &64).unwrap());
        assert!(!p(&[2, 2, 1]).divides_x_pow_plus(3, &4).unwrap());
    }

    #[test]
    fn simple_roots() {
        assert!(p(&[2, 2, 1]).has_simple_roots());
        assert!(!p(&[1, 2, 1]).has_simple_roots());
        assert!(p(&[2, 0, 2, 0, 1]).has_simple_roots());
        // (X^2+2X+2)^2 (X-3)
        let sq = &p(&[2, 2, 1]) * &p(&[2, 2, 1]);
        assert!(!(&sq * &p(&[-3, 1])).has_simple_roots());
        // X^2 + 2X + 2 evaluated at X^k never acquires a double root
        assert!(p(&[2, 2, 1]).compose_x_pow(3).has_simple_roots());
    }

    #[test]
    fn zero_polynomial_degree_is_sentinel() {
        assert_eq!(P::zero().degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert_eq!(P::new(vec![0, 0, 0]), P::zero());
        assert_eq!(P::constant(5).degree(), Degree::Finite(0));
    }

    #[test]
    fn text_format() {
        let q: P = "2,2,1".parse().unwrap();
        assert_eq!(q, p(&[2, 2, 1]));
        assert_eq!(q.to_string(), "2,2,1");
        assert_eq!(" 8, 4 ,1".parse::<P>().unwrap(), p(&[8, 4, 1]));
        assert!("2,x,1".parse::<P>().is_err());
        assert!("".parse::<P>().is_err());
        let big: Poly<BigInt> = "-123456789012345678901234567890,0,1".parse().unwrap();
        assert_eq!(big.to_string(), "-123456789012345678901234567890,0,1");
    }

    #[test]
    fn compose_and_derivative() {
        assert_eq!(p(&[2, 2, 1]).compose_x_pow(2), p(&[2, 0, 2, 0, 1]));
        assert_eq!(p(&[2, 2, 1]).derivative(), p(&[2, 2]));
        assert_eq!(P::constant(7).derivative(), P::zero());
    }

    fn small_poly(max_deg: usize) -> impl Strategy<Value = P> {
        prop::collection::vec(-50i64..=50, 1..=max_deg + 1).prop_map(P::new)
    }

    fn monic_poly() -> impl Strategy<Value = P> {
        prop::collection::vec(-50i64..=50, 0..=4).prop_map(|mut c| {
            c.push(1);
            P::new(c)
        })
    }

    proptest! {
        #[test]
        fn divrem_roundtrip(a in small_poly(8), b in monic_poly()) {
            let (q, r) = a.divrem(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree() < b.degree());
        }

        #[test]
        fn eval_is_multiplicative(a in small_poly(4), b in small_poly(4), x in -6i64..=6) {
            prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        }

        #[test]
        fn squares_never_have_simple_roots(a in monic_poly()) {
            prop_assume!(a.degree() >= Degree::Finite(1));
            // pseudo-remainders outgrow i64 here
            let big = Poly::<BigInt>::new(a.coeffs().iter().map(|&c| BigInt::from(c)).collect());
            prop_assert!(!(&big * &big).has_simple_roots());
        }
    }
}
