//! Integer scalar abstraction.
//!
//! Every algorithm in this crate is written once against [`Scalar`] and runs
//! on machine integers (`i64`, `i128`) for fast sweeps or on [`BigInt`](num_bigint::BigInt) when
//! the values can grow without bound. Machine integers panic on overflow in
//! builds with overflow checks; nothing here wraps silently.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::{Integer, Roots};
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact signed integer usable as a polynomial coefficient or digit value.
pub trait Scalar:
    Integer
    + Signed
    + Roots
    + Clone
    + Hash
    + Debug
    + Display
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    fn from_digit(v: u32) -> Self {
        <Self as FromPrimitive>::from_u32(v).expect("every scalar holds a u32")
    }

    fn from_int(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("every scalar holds an i64")
    }

    /// `self^exp` by repeated squaring.
    fn pow_u32(&self, exp: u32) -> Self {
        num_traits::pow(self.clone(), exp as usize)
    }

    /// Exact square root, or `None` when `self` is negative or not a perfect square.
    fn exact_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let r = self.sqrt();
        if r.clone() * r.clone() == *self {
            Some(r)
        } else {
            None
        }
    }
}

impl<T> Scalar for T where
    T: Integer
        + Signed
        + Roots
        + Clone
        + Hash
        + Debug
        + Display
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Converts a scalar that is known to be a small nonnegative value into a digit.
pub(crate) fn to_digit<T: Scalar>(v: &T) -> Option<u32> {
    v.to_u32()
}

/// Radix of a digit set, as a `u32`; `None` when it does not fit.
pub(crate) fn radix_of<T: Scalar>(v: &T) -> Option<u32> {
    v.abs().to_u32()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn exact_sqrt_rejects_non_squares() {
        assert_eq!(49i64.exact_sqrt(), Some(7));
        assert_eq!(48i64.exact_sqrt(), None);
        assert_eq!((-4i64).exact_sqrt(), None);
        let big_sq = BigInt::from(10).pow(40);
        assert_eq!(big_sq.exact_sqrt(), Some(BigInt::from(10).pow(20)));
    }

    #[test]
    fn pow_matches_machine_integers() {
        assert_eq!(Scalar::pow_u32(&(-4i64), 3), -64);
        assert_eq!(Scalar::pow_u32(&BigInt::from(4), 9), BigInt::from(262_144));
        assert_eq!(Scalar::pow_u32(&7i128, 0), 1);
    }
}
