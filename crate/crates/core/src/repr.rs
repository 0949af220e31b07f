//! Digit strings over a base: negative integer bases `-b` and polynomial
//! (canonical number system) bases `p`.
//!
//! Digits are held least significant first. The text form is most
//! significant first: digits are concatenated when every digit is at most 9
//! (`"1101"`) and joined by `.` otherwise (`"13.0.7"`). A single digit above
//! 9 carries a trailing dot (`"13."`) so it does not read as two digits.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::poly::Poly;
use crate::scalar::{radix_of, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DigitError {
    #[error("digit {digit} outside the digit set {{0, ..., {}}}", radix - 1)]
    OutOfRange { digit: u32, radix: u32 },
    #[error("most significant digit is zero")]
    LeadingZero,
    #[error("empty digit string")]
    Empty,
    #[error("cannot parse digit string {0:?}")]
    Parse(String),
    #[error("representation has the wrong kind of base")]
    WrongBase,
    #[error("base does not define a digit set (radix must be in 2..=u32::MAX)")]
    InvalidRadix,
}

/// The base a digit string is written in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Base<T = BigInt> {
    /// Base `-b` with digit set `{0, ..., b-1}`.
    NegaBase(u32),
    /// Canonical number system base given by a monic polynomial `p`, digit
    /// set `{0, ..., |p(0)|-1}`.
    Cns(Poly<T>),
}

impl<T: Scalar> Base<T> {
    /// Size of the digit set.
    pub fn radix(&self) -> Result<u32, DigitError> {
        let r = match self {
            Base::NegaBase(b) => Some(*b),
            Base::Cns(p) => radix_of(p.constant_term()),
        };
        r.filter(|&r| r >= 2).ok_or(DigitError::InvalidRadix)
    }
}

/// A canonical digit string: nonempty, every digit in the digit set, and a
/// nonzero most significant digit unless the string is the single digit `0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Representation<T = BigInt> {
    base: Base<T>,
    digits: Vec<u32>,
}

impl<T: Scalar> Representation<T> {
    /// Validates `digits` (least significant first) against `base`.
    pub fn new(base: Base<T>, digits: Vec<u32>) -> Result<Self, DigitError> {
        let radix = base.radix()?;
        check_digits(&digits, radix)?;
        match digits.last() {
            None => return Err(DigitError::Empty),
            Some(0) if digits.len() > 1 => return Err(DigitError::LeadingZero),
            _ => {}
        }
        Ok(Representation { base, digits })
    }

    /// Parses a most-significant-first digit string.
    pub fn parse(base: Base<T>, text: &str) -> Result<Self, DigitError> {
        Self::new(base, parse_digits(text)?)
    }

    pub(crate) fn new_unchecked(base: Base<T>, digits: Vec<u32>) -> Self {
        debug_assert!(Self::new(base.clone(), digits.clone()).is_ok());
        Representation { base, digits }
    }

    pub fn base(&self) -> &Base<T> {
        &self.base
    }

    /// Digits, least significant first.
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn into_digits(self) -> Vec<u32> {
        self.digits
    }

    /// Number of digits (the length of the expansion).
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn leading_digit(&self) -> u32 {
        *self.digits.last().expect("representation is never empty")
    }

    pub fn digit_sum(&self) -> u64 {
        self.digits.iter().map(|&d| d as u64).sum()
    }

    /// `(1101)_p` or `(130)_-4`.
    pub fn pretty(&self) -> String {
        match &self.base {
            Base::NegaBase(b) => format!("({self})_-{b}"),
            Base::Cns(_) => format!("({self})_p"),
        }
    }
}

impl<T: Scalar> fmt::Display for Representation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_digits(&self.digits))
    }
}

pub(crate) fn check_digits(digits: &[u32], radix: u32) -> Result<(), DigitError> {
    match digits.iter().find(|&&d| d >= radix) {
        Some(&digit) => Err(DigitError::OutOfRange { digit, radix }),
        None => Ok(()),
    }
}

/// Renders least-significant-first digits in the shared most-significant-first
/// text form. Leading zeros are kept, so padded blocks render as written.
pub fn format_digits(digits: &[u32]) -> String {
    if digits.iter().all(|&d| d <= 9) {
        digits
            .iter()
            .rev()
            .map(|&d| char::from(b'0' + d as u8))
            .collect()
    } else {
        let mut out = digits
            .iter()
            .rev()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(".");
        if digits.len() == 1 {
            out.push('.');
        }
        out
    }
}

/// Parses the shared text form into least-significant-first digits. Accepts
/// an optional surrounding `( )` and a trailing subscript such as `_p` or
/// `_-4`. Leading zeros are preserved.
pub fn parse_digits(text: &str) -> Result<Vec<u32>, DigitError> {
    let mut s = text.trim();
    if let Some(idx) = s.rfind(")_") {
        s = &s[..=idx];
    }
    if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        s = inner;
    }
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(DigitError::Empty);
    }
    let bad = || DigitError::Parse(text.to_string());
    let mut digits = if s.contains('.') {
        s.strip_suffix('.')
            .unwrap_or(&s)
            .split('.')
            .map(|part| part.parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        s.chars()
            .map(|c| c.to_digit(10).ok_or_else(bad))
            .collect::<Result<Vec<_>, _>>()?
    };
    digits.reverse();
    Ok(digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn nega4() -> Base<i64> {
        Base::NegaBase(4)
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_digits("130").unwrap(), vec![0, 3, 1]);
        assert_eq!(parse_digits("(1101)_p").unwrap(), vec![1, 0, 1, 1]);
        assert_eq!(parse_digits("(130)_-4").unwrap(), vec![0, 3, 1]);
        assert_eq!(parse_digits("13.0.7").unwrap(), vec![7, 0, 13]);
        assert_eq!(format_digits(&[7, 0, 13]), "13.0.7");
        assert_eq!(format_digits(&[13]), "13.");
        assert_eq!(parse_digits("13.").unwrap(), vec![13]);
        assert_eq!(parse_digits("13").unwrap(), vec![3, 1]);
        assert_eq!(format_digits(&[0, 0, 1, 1]), "1100");
        assert_eq!(format_digits(&[0, 0, 0, 0]), "0000");
        assert!(parse_digits("1a").is_err());
        assert!(parse_digits("1..2").is_err());
        assert_eq!(parse_digits("  "), Err(DigitError::Empty));
    }

    #[test]
    fn canonical_form_is_enforced() {
        assert!(Representation::new(nega4(), vec![0]).is_ok());
        assert_eq!(
            Representation::new(nega4(), vec![1, 0]),
            Err(DigitError::LeadingZero)
        );
        assert_eq!(Representation::new(nega4(), vec![]), Err(DigitError::Empty));
        assert_eq!(
            Representation::new(nega4(), vec![4]),
            Err(DigitError::OutOfRange { digit: 4, radix: 4 })
        );
        let cns = Base::Cns(Poly::<i64>::from_i64s(&[2, 2, 1]));
        assert_eq!(
            Representation::parse(cns.clone(), "1102"),
            Err(DigitError::OutOfRange { digit: 2, radix: 2 })
        );
        let r = Representation::parse(cns, "1101").unwrap();
        assert_eq!(r.pretty(), "(1101)_p");
        assert_eq!(r.digit_sum(), 3);
        assert_eq!(r.leading_digit(), 1);
    }

    #[test]
    fn radix_must_be_at_least_two() {
        assert_eq!(
            Base::<i64>::NegaBase(1).radix(),
            Err(DigitError::InvalidRadix)
        );
        let unit = Base::Cns(Poly::<i64>::from_i64s(&[-1, 0, 1]));
        assert_eq!(unit.radix(), Err(DigitError::InvalidRadix));
        let neg = Base::Cns(Poly::<i64>::from_i64s(&[-3, 1]));
        assert_eq!(neg.radix(), Ok(3));
    }

    proptest! {
        #[test]
        fn text_roundtrip(digits in prop::collection::vec(0u32..40, 1..12)) {
            prop_assert_eq!(parse_digits(&format_digits(&digits)).unwrap(), digits);
        }
    }
}
