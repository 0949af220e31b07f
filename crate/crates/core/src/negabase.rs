//! Negative-base expansions: every integer `z` has exactly one expansion
//! `z = sum v_i (-b)^i` with digits `v_i` in `{0, ..., b-1}`.
//!
//! Positive integers have an odd number of digits and negative integers an
//! even number. Zero is written as the single digit `0` and has length 1.

use crate::repr::{Base, DigitError, Representation};
use crate::scalar::{to_digit, Scalar};

/// Base `-b` expansion of `z`. Fails only for `b < 2`.
pub fn encode<T: Scalar>(z: &T, b: u32) -> Result<Representation<T>, DigitError> {
    Ok(Representation::new_unchecked(
        Base::NegaBase(b),
        encode_digits(z, b)?,
    ))
}

/// Least-significant-first digits of the base `-b` expansion of `z`.
pub fn encode_digits<T: Scalar>(z: &T, b: u32) -> Result<Vec<u32>, DigitError> {
    if b < 2 {
        return Err(DigitError::InvalidRadix);
    }
    if z.is_zero() {
        return Ok(vec![0]);
    }
    let radix = T::from_digit(b);
    let neg_radix = -radix.clone();
    let mut rest = z.clone();
    let mut digits = Vec::new();
    while !rest.is_zero() {
        let r = rest.mod_floor(&radix);
        rest = (rest - r.clone()) / neg_radix.clone();
        digits.push(to_digit(&r).expect("floored remainder lies in 0..b"));
    }
    Ok(digits)
}

/// Value of a base `-b` representation.
pub fn decode<T: Scalar>(rep: &Representation<T>) -> Result<T, DigitError> {
    match rep.base() {
        Base::NegaBase(b) => Ok(decode_digits(rep.digits(), *b)),
        Base::Cns(_) => Err(DigitError::WrongBase),
    }
}

/// `sum digits[i] (-b)^i` for least-significant-first `digits`.
pub fn decode_digits<T: Scalar>(digits: &[u32], b: u32) -> T {
    let neg_radix = -T::from_digit(b);
    digits.iter().rev().fold(T::zero(), |acc, &d| {
        acc * neg_radix.clone() + T::from_digit(d)
    })
}

/// Number of digits of the base `-b` expansion of `z`.
pub fn length<T: Scalar>(z: &T, b: u32) -> Result<usize, DigitError> {
    if b < 2 {
        return Err(DigitError::InvalidRadix);
    }
    let radix = T::from_digit(b);
    let neg_radix = -radix.clone();
    let mut rest = z.clone();
    let mut len = 0;
    while !rest.is_zero() {
        let r = rest.mod_floor(&radix);
        rest = (rest - r) / neg_radix.clone();
        len += 1;
    }
    Ok(len.max(1))
}

/// Least and largest integer (both inclusive) whose base `-b` expansion has
/// exactly `len` digits, ignoring zero.
///
/// Odd lengths `2k+1` hold exactly the positive integers in
/// `[b (b^(2k-1) + 1) / (b+1), (b^(2k+2) - 1) / (b+1)]` (lower end `1` for
/// `k = 0`). Even lengths `2k` hold exactly the negative integers in
/// `[-b (b^(2k) - 1) / (b+1), -(b^(2k-1) + 1) / (b+1)]`.
pub fn extremal_of_length<T: Scalar>(b: u32, len: usize) -> Result<(T, T), DigitError> {
    if b < 2 {
        return Err(DigitError::InvalidRadix);
    }
    assert!(len >= 1, "expansions have at least one digit");
    let radix = T::from_digit(b);
    let denom = radix.clone() + T::one();
    let pow = |e: usize| radix.pow_u32(e as u32);
    if len % 2 == 1 {
        let k = (len - 1) / 2;
        let max = (pow(2 * k + 2) - T::one()) / denom.clone();
        let min = if k == 0 {
            T::one()
        } else {
            radix.clone() * (pow(2 * k - 1) + T::one()) / denom
        };
        Ok((min, max))
    } else {
        let k = len / 2;
        let min = -(radix.clone() * (pow(2 * k) - T::one()) / denom.clone());
        let max = -((pow(2 * k - 1) + T::one()) / denom);
        Ok((min, max))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;
    use std::collections::BTreeMap;

    fn enc(z: i64, b: u32) -> String {
        encode(&z, b).unwrap().to_string()
    }

    #[test]
    fn encode_examples() {
        assert_eq!(enc(4, 4), "130");
        assert_eq!(enc(820, 4), "1303030");
        assert_eq!(enc(0, 4), "0");
        assert_eq!(enc(-1, 4), "13");
        assert_eq!(enc(5, 4), "131");
        assert_eq!(enc(2, 4), "2");
        assert_eq!(enc(410, 4), "22222");
        assert_eq!(encode(&3i64, 1), Err(DigitError::InvalidRadix));
    }

    #[test]
    fn decode_examples() {
        let d =
            |s: &str| decode(&Representation::<i64>::parse(Base::NegaBase(4), s).unwrap()).unwrap();
        assert_eq!(d("230"), 20);
        assert_eq!(d("22222"), 410);
        assert_eq!(d("0"), 0);
        let cns = Representation::<i64>::parse(Base::Cns("2,2,1".parse().unwrap()), "1").unwrap();
        assert_eq!(decode(&cns), Err(DigitError::WrongBase));
    }

    #[test]
    fn length_examples() {
        assert_eq!(length(&4i64, 4), Ok(3));
        assert_eq!(length(&-1i64, 4), Ok(2));
        assert_eq!(length(&3i64, 4), Ok(1));
        assert_eq!(length(&0i64, 4), Ok(1));
    }

    fn scan_extremes(b: u32, bound: i64) -> BTreeMap<usize, (i64, i64)> {
        let mut out: BTreeMap<usize, (i64, i64)> = BTreeMap::new();
        for z in (-bound..=bound).filter(|&z| z != 0) {
            let l = length(&z, b).unwrap();
            let e = out.entry(l).or_insert((z, z));
            e.0 = e.0.min(z);
            e.1 = e.1.max(z);
        }
        out
    }

    #[test]
    fn extremal_matches_exhaustive_scan() {
        for b in [2u32, 3, 4] {
            // every length up to 6 is complete inside this window
            let bound = (b as i64).pow(7);
            let scanned = scan_extremes(b, bound);
            for len in 1..=6 {
                assert_eq!(
                    extremal_of_length::<i64>(b, len).unwrap(),
                    scanned[&len],
                    "b = {b}, len = {len}"
                );
            }
        }
    }

    #[test]
    fn extremal_examples() {
        assert_eq!(extremal_of_length::<i64>(4, 1).unwrap(), (1, 3));
        assert_eq!(extremal_of_length::<i64>(4, 3).unwrap(), (4, 51));
        assert_eq!(extremal_of_length::<i64>(4, 2).unwrap(), (-12, -1));
        assert_eq!(extremal_of_length::<i64>(4, 4).unwrap(), (-204, -13));
        let (min, max) = extremal_of_length::<BigInt>(4, 41).unwrap();
        assert_eq!(length(&min, 4), Ok(41));
        assert_eq!(length(&max, 4), Ok(41));
        assert_eq!(length(&(max + 1), 4), Ok(43));
        assert_eq!(length(&(min - 1), 4), Ok(39));
    }

    #[test]
    fn parity_and_monotone_steps() {
        for b in [2u32, 3, 4, 10] {
            let mut prev_pos = 1;
            let mut prev_neg = 0;
            for n in 1..=20_000i64 {
                let lp = length(&n, b).unwrap();
                let ln = length(&-n, b).unwrap();
                assert_eq!(lp % 2, 1, "b = {b}, n = {n}");
                assert_eq!(ln % 2, 0, "b = {b}, n = -{n}");
                assert!(lp == prev_pos || lp == prev_pos + 2);
                if n > 1 {
                    assert!(ln == prev_neg || ln == prev_neg + 2);
                }
                prev_pos = lp;
                prev_neg = ln;
            }
        }
    }

    #[test]
    fn sum_of_two_single_digit_values_can_gain_two_digits() {
        // 1 and 3 are single digits, 4 = (130)_-4.
        assert_eq!(length(&1i64, 4), Ok(1));
        assert_eq!(length(&3i64, 4), Ok(1));
        assert_eq!(length(&4i64, 4), Ok(3));
    }

    proptest! {
        #[test]
        fn roundtrip(z in -1_000_000i64..=1_000_000, b in 2u32..=16) {
            let rep = encode(&z, b).unwrap();
            prop_assert_eq!(decode(&rep).unwrap(), z);
            prop_assert_eq!(rep.len(), length(&z, b).unwrap());
        }

        #[test]
        fn roundtrip_big(z in -(1i128 << 120)..(1i128 << 120), b in 2u32..=100) {
            let big = BigInt::from(z);
            let rep = encode(&big, b).unwrap();
            prop_assert_eq!(decode(&rep).unwrap(), big);
            prop_assert_eq!(encode(&z, b).unwrap().into_digits(), rep.into_digits());
        }

        #[test]
        fn product_offset(x in -30_000i64..=30_000, y in -30_000i64..=30_000) {
            prop_assume!(x != 0 && y != 0);
            let e = length(&(x * y), 4).unwrap() as i64
                - length(&x, 4).unwrap() as i64
                - length(&y, 4).unwrap() as i64;
            prop_assert!([-3, -1, 1].contains(&e), "e = {}", e);
        }
    }
}
