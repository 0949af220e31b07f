//! Expansions over `P = p(X^k)` and the length sets of the trinomials
//! `X^(2m) + 2X^m + 2`.
//!
//! If `g(X)` is the `p`-expansion of `z` then `g(X^k)` is its `P`-expansion:
//! the digits are spread out with `k - 1` zeros between neighbours, so
//! `len_P(z) = k (len_p(z) - 1) + 1`.

use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::poly::Poly;
use crate::repr::{Base, DigitError, Representation};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("lift factor must be at least 2, got {0}")]
    FactorTooSmall(usize),
    #[error(transparent)]
    Digit(#[from] DigitError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("b({n}): radicand {radicand} is not a perfect square")]
    NotSquare { n: u64, radicand: BigInt },
    #[error("c(n) is defined for n >= 1")]
    IndexOutOfRange,
    #[error("unknown sequence {0:?}; expected a, b or c")]
    UnknownName(String),
}

/// `X^(2m) + 2X^m + 2`.
pub fn trinomial<T: Scalar>(m: usize) -> Poly<T> {
    Poly::from_i64s(&[2, 2, 1]).compose_x_pow(m)
}

/// Spreads a `p`-expansion into the `p(X^k)`-expansion of the same integer:
/// digit `u_j` moves to position `j k`.
pub fn lift_representation<T: Scalar>(
    rep: &Representation<T>,
    k: usize,
) -> Result<Representation<T>, LiftError> {
    if k < 2 {
        return Err(LiftError::FactorTooSmall(k));
    }
    let Base::Cns(p) = rep.base() else {
        return Err(DigitError::WrongBase.into());
    };
    let src = rep.digits();
    let mut digits = vec![0; k * (src.len() - 1) + 1];
    for (j, &u) in src.iter().enumerate() {
        digits[j * k] = u;
    }
    Ok(Representation::new_unchecked(
        Base::Cns(p.compose_x_pow(k)),
        digits,
    ))
}

/// `a(0) = 0`, `a(n) = a(n-1) + (-1)^n + 2`: the nonnegative integers
/// congruent to 0 or 1 modulo 4, in increasing order.
pub fn seq_a<T: Scalar>(n: u64) -> T {
    let mut a = T::zero();
    for i in 1..=n {
        let step = if i % 2 == 0 { 3 } else { 1 };
        a = a + T::from_digit(step);
    }
    a
}

/// `c(n) = (4n^2 + (-1)^n (2n - 1) - 4n + 3) / 2` for `n >= 1`.
pub fn seq_c<T: Scalar>(n: u64) -> Result<T, SequenceError> {
    if n == 0 {
        return Err(SequenceError::IndexOutOfRange);
    }
    let n_t = T::from_int(n as i64);
    let two = T::from_digit(2);
    let four = T::from_digit(4);
    let alt = two.clone() * n_t.clone() - T::one();
    let signed = if n.is_multiple_of(2) { alt } else { -alt };
    let twice = four.clone() * n_t.clone() * n_t.clone() + signed - four * n_t + T::from_digit(3);
    let (c, rem) = twice.div_rem(&two);
    debug_assert!(rem.is_zero(), "numerator of c({n}) is even");
    Ok(c)
}

/// `b(n) = sqrt(8 (c(n+1) - 1) + 1)`, checked to be an exact square.
pub fn seq_b<T: Scalar>(n: u64) -> Result<T, SequenceError> {
    let c = seq_c::<T>(n + 1)?;
    let radicand = T::from_digit(8) * (c - T::one()) + T::one();
    radicand
        .exact_sqrt()
        .ok_or_else(|| SequenceError::NotSquare {
            n,
            radicand: radicand
                .to_string()
                .parse()
                .expect("integer renders in decimal"),
        })
}

/// First `count` elements of `{ m (a(n) - 1) + 1 : n >= 1 }`, increasing.
pub fn trinomial_length_set<T: Scalar>(m: u64, count: usize) -> Vec<T> {
    let m_t = T::from_int(m as i64);
    (1..=count as u64)
        .map(|n| m_t.clone() * (seq_a::<T>(n) - T::one()) + T::one())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceId {
    /// Nonnegative integers congruent to 0 or 1 mod 4, from `n = 0`.
    A,
    /// Positive integers congruent to 1 or 7 mod 8, from `n = 0`.
    B,
    /// The closed form feeding `b`, from `n = 1`.
    C,
}

impl SequenceId {
    pub fn first_index(self) -> u64 {
        match self {
            SequenceId::A | SequenceId::B => 0,
            SequenceId::C => 1,
        }
    }

    /// The first `count` terms, starting at [`first_index`](Self::first_index).
    pub fn prefix<T: Scalar>(self, count: usize) -> Result<Vec<T>, SequenceError> {
        let start = self.first_index();
        (start..start + count as u64)
            .map(|n| match self {
                SequenceId::A => Ok(seq_a(n)),
                SequenceId::B => seq_b(n),
                SequenceId::C => seq_c(n),
            })
            .collect()
    }
}

impl FromStr for SequenceId {
    type Err = SequenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "a" | "A" => Ok(SequenceId::A),
            "b" | "B" => Ok(SequenceId::B),
            "c" | "C" => Ok(SequenceId::C),
            other => Err(SequenceError::UnknownName(other.to_string())),
        }
    }
}
