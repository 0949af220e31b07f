//! Canonical number system expansions of rational integers.
//!
//! For a monic `p` with `|p(0)| > 1`, an integer `z` is representable when
//! `z ≡ sum u_j X^j (mod p)` with every `u_j` in `D_p = {0, ..., |p(0)|-1}`.
//! Such an expansion is unique when it exists.
//!
//! The encoder runs backward division on the residue of `z` in `Z[X]/(p)`:
//! peel off the digit congruent to the constant coefficient, divide out `X`,
//! and repeat until the residue is zero. A revisited residue proves that `z`
//! has no expansion.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::poly::{Degree, Poly};
use crate::repr::{check_digits, Base, DigitError, Representation};
use crate::scalar::{radix_of, to_digit, Scalar};

pub const DEFAULT_MAX_STEPS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnsError {
    #[error("base polynomial is not monic")]
    NotMonic,
    #[error("base polynomial has degree 0")]
    ConstantBase,
    #[error("base polynomial needs |p(0)| > 1")]
    ConstantTermTooSmall,
    #[error("|p(0)| does not fit a digit")]
    RadixTooLarge,
    #[error("not representable: residue {witness} repeats")]
    NotRepresentable { witness: String },
    #[error("no expansion within {steps} steps")]
    Exhausted { steps: usize },
    #[error(transparent)]
    Digit(#[from] DigitError),
}

/// Element of `Z[X]/(p)` written with exactly `deg p` coefficients, constant
/// term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Residue<T = BigInt> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Residue<T> {
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The integer this residue equals, if it is a constant.
    pub fn as_constant(&self) -> Option<&T> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }
}

impl<T: Scalar> fmt::Display for Residue<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CnsOutcome<T = BigInt> {
    Digits(Representation<T>),
    NotRepresentable(Residue<T>),
    Exhausted(usize),
}

impl<T: Scalar> CnsOutcome<T> {
    pub fn into_result(self) -> Result<Representation<T>, CnsError> {
        match self {
            CnsOutcome::Digits(r) => Ok(r),
            CnsOutcome::NotRepresentable(w) => Err(CnsError::NotRepresentable {
                witness: w.to_string(),
            }),
            CnsOutcome::Exhausted(steps) => Err(CnsError::Exhausted { steps }),
        }
    }
}

enum RawOutcome<T> {
    Digits(Vec<u32>),
    Cycle(Residue<T>),
    Exhausted,
}

/// A validated canonical-number-system base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnsBase<T = BigInt> {
    poly: Poly<T>,
    degree: usize,
    radix: u32,
}

impl<T: Scalar> CnsBase<T> {
    pub fn new(poly: Poly<T>) -> Result<Self, CnsError> {
        if !poly.is_monic() {
            return Err(CnsError::NotMonic);
        }
        let degree = match poly.degree() {
            Degree::Finite(d) if d >= 1 => d,
            _ => return Err(CnsError::ConstantBase),
        };
        if poly.constant_term().abs() <= T::one() {
            return Err(CnsError::ConstantTermTooSmall);
        }
        let radix = radix_of(poly.constant_term()).ok_or(CnsError::RadixTooLarge)?;
        Ok(CnsBase {
            poly,
            degree,
            radix,
        })
    }

    pub fn poly(&self) -> &Poly<T> {
        &self.poly
    }

    /// Size of the digit set `D_p`.
    pub fn radix(&self) -> u32 {
        self.radix
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn base(&self) -> Base<T> {
        Base::Cns(self.poly.clone())
    }

    fn encode_raw(&self, z: &T, max_steps: usize) -> RawOutcome<T> {
        if z.is_zero() {
            return RawOutcome::Digits(vec![0]);
        }
        let n = self.degree;
        let p = self.poly.coeffs();
        let p0 = &p[0];
        let radix = p0.abs();
        let mut state = vec![T::zero(); n];
        state[0] = z.clone();
        let mut seen: HashSet<Vec<T>> = HashSet::new();
        let mut digits = Vec::new();
        while !state.iter().all(|c| c.is_zero()) {
            if digits.len() >= max_steps {
                return RawOutcome::Exhausted;
            }
            if !seen.insert(state.clone()) {
                return RawOutcome::Cycle(Residue { coeffs: state });
            }
            // state - u = q p + X state'
            let u = state[0].mod_floor(&radix);
            let q = (state[0].clone() - u.clone()) / p0.clone();
            for i in 0..n {
                let next = if i + 1 < n {
                    state[i + 1].clone()
                } else {
                    T::zero()
                };
                state[i] = next - q.clone() * p[i + 1].clone();
            }
            digits.push(to_digit(&u).expect("digit lies in D_p"));
        }
        RawOutcome::Digits(digits)
    }

    /// Expansion of `z`, or a proof that none exists, or `Exhausted` after
    /// `max_steps` digits.
    pub fn encode(&self, z: &T, max_steps: usize) -> CnsOutcome<T> {
        match self.encode_raw(z, max_steps) {
            RawOutcome::Digits(d) => {
                CnsOutcome::Digits(Representation::new_unchecked(self.base(), d))
            }
            RawOutcome::Cycle(w) => CnsOutcome::NotRepresentable(w),
            RawOutcome::Exhausted => CnsOutcome::Exhausted(max_steps),
        }
    }

    /// Least-significant-first digits of the expansion of `z`.
    pub fn encode_digits(&self, z: &T, max_steps: usize) -> Result<Vec<u32>, CnsError> {
        match self.encode_raw(z, max_steps) {
            RawOutcome::Digits(d) => Ok(d),
            RawOutcome::Cycle(w) => Err(CnsError::NotRepresentable {
                witness: w.to_string(),
            }),
            RawOutcome::Exhausted => Err(CnsError::Exhausted { steps: max_steps }),
        }
    }

    pub fn length(&self, z: &T, max_steps: usize) -> Result<usize, CnsError> {
        self.encode_digits(z, max_steps).map(|d| d.len())
    }

    /// Reduces `sum digits[j] X^j` modulo `p` by exact polynomial division.
    pub fn decode_digits(&self, digits: &[u32]) -> Result<Residue<T>, CnsError> {
        check_digits(digits, self.radix)?;
        let g = Poly::new(digits.iter().map(|&d| T::from_digit(d)).collect());
        let (_, r) = g.divrem(&self.poly).expect("base polynomial is monic");
        let mut coeffs = r.coeffs().to_vec();
        coeffs.resize(self.degree, T::zero());
        Ok(Residue { coeffs })
    }

    /// Exhaustive search over all canonical digit strings of length at most
    /// `max_len`, evaluated by forward Horner steps in `Z[X]/(p)`. Panics if
    /// two distinct strings represent `z`.
    pub fn brute_force(&self, z: &T, max_len: usize) -> Option<Representation<T>> {
        let mut found: Vec<Vec<u32>> = Vec::new();
        self.enumerate(max_len, |state, msd_first| {
            if state[0] == *z && state[1..].iter().all(|c| c.is_zero()) {
                found.push(msd_first.to_vec());
            }
        });
        assert!(
            found.len() <= 1,
            "distinct canonical expansions of {z}: {found:?}"
        );
        found.pop().map(|d| self.rep_from_msd_first(d))
    }

    /// Every integer with an expansion of at most `max_len` digits, found by
    /// the same exhaustive search as [`brute_force`](Self::brute_force) in a
    /// single pass. Panics if some integer is reached twice.
    pub fn brute_force_table(&self, max_len: usize) -> BTreeMap<T, Representation<T>>
    where
        T: Ord,
    {
        let mut table = BTreeMap::new();
        self.enumerate(max_len, |state, msd_first| {
            if state[1..].iter().all(|c| c.is_zero()) {
                let clash = table.insert(
                    state[0].clone(),
                    self.rep_from_msd_first(msd_first.to_vec()),
                );
                assert!(clash.is_none(), "two canonical expansions of {}", state[0]);
            }
        });
        table
    }

    fn rep_from_msd_first(&self, mut digits: Vec<u32>) -> Representation<T> {
        digits.reverse();
        Representation::new_unchecked(self.base(), digits)
    }

    /// Depth-first walk over `0` and every digit string with nonzero leading
    /// digit of length at most `max_len`, passing the residue of each string.
    fn enumerate(&self, max_len: usize, mut visit: impl FnMut(&[T], &[u32])) {
        let n = self.degree;
        visit(&vec![T::zero(); n], &[0]);
        if max_len == 0 {
            return;
        }
        // states[k] is the residue of the first k+1 digits
        let mut states = vec![vec![T::zero(); n]; max_len];
        let mut prefix: Vec<u32> = vec![1];
        self.horner_step(&vec![T::zero(); n], 1, &mut states[0]);
        loop {
            let depth = prefix.len() - 1;
            visit(&states[depth], &prefix);
            if prefix.len() < max_len {
                let (done, rest) = states.split_at_mut(depth + 1);
                self.horner_step(&done[depth], 0, &mut rest[0]);
                prefix.push(0);
                continue;
            }
            // advance to the next string in lexicographic order
            loop {
                let depth = prefix.len() - 1;
                let last = prefix[depth] + 1;
                if last < self.radix {
                    prefix[depth] = last;
                    let (done, rest) = states.split_at_mut(depth);
                    let parent = if depth == 0 {
                        None
                    } else {
                        Some(&done[depth - 1])
                    };
                    let zero = vec![T::zero(); n];
                    self.horner_step(parent.unwrap_or(&zero), last, &mut rest[0]);
                    break;
                }
                prefix.pop();
                if prefix.is_empty() {
                    return;
                }
            }
        }
    }

    /// `out = X * state + u` reduced modulo `p`.
    fn horner_step(&self, state: &[T], u: u32, out: &mut [T]) {
        let n = self.degree;
        let p = self.poly.coeffs();
        let top = state[n - 1].clone();
        for i in 0..n {
            let shifted = if i == 0 {
                T::from_digit(u)
            } else {
                state[i - 1].clone()
            };
            out[i] = shifted - top.clone() * p[i].clone();
        }
    }
}

/// Expansion of `z` over `p`.
pub fn cns_encode<T: Scalar>(
    z: &T,
    p: &Poly<T>,
    max_steps: usize,
) -> Result<CnsOutcome<T>, CnsError> {
    Ok(CnsBase::new(p.clone())?.encode(z, max_steps))
}

/// Residue of a representation's digit polynomial modulo its base.
pub fn cns_decode<T: Scalar>(rep: &Representation<T>) -> Result<Residue<T>, CnsError> {
    match rep.base() {
        Base::Cns(p) => CnsBase::new(p.clone())?.decode_digits(rep.digits()),
        Base::NegaBase(_) => Err(DigitError::WrongBase.into()),
    }
}

/// Number of digits of the expansion of `z` over `p`.
pub fn cns_length<T: Scalar>(z: &T, p: &Poly<T>, max_steps: usize) -> Result<usize, CnsError> {
    CnsBase::new(p.clone())?.length(z, max_steps)
}

/// Independent exhaustive search for the expansion of `z` with at most
/// `max_len` digits.
pub fn brute_force_oracle<T: Scalar>(
    z: &T,
    p: &Poly<T>,
    max_len: usize,
) -> Result<Option<Representation<T>>, CnsError> {
    Ok(CnsBase::new(p.clone())?.brute_force(z, max_len))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(c: &[i64]) -> CnsBase<i64> {
        CnsBase::new(Poly::from_i64s(c)).unwrap()
    }

    fn enc(z: i64, c: &[i64]) -> String {
        match base(c).encode(&z, DEFAULT_MAX_STEPS) {
            CnsOutcome::Digits(r) => r.to_string(),
            other => panic!("{z}: {other:?}"),
        }
    }

    #[test]
    fn small_digit_table() {
        let p = [2, 2, 1];
        assert_eq!(enc(0, &p), "0");
        assert_eq!(enc(1, &p), "1");
        assert_eq!(enc(2, &p), "1100");
        assert_eq!(enc(3, &p), "1101");
        assert_eq!(enc(-1, &p), "11101");
    }

    #[test]
    fn wider_base_expansions() {
        let p = [8, 4, 1];
        assert_eq!(enc(8, &p), "1340");
        assert_eq!(enc(56, &p), "1470140");
        assert_eq!(enc(0, &p), "0");
    }

    #[test]
    fn lengths() {
        let p = Poly::<i64>::from_i64s(&[2, 2, 1]);
        assert_eq!(cns_length(&3, &p, DEFAULT_MAX_STEPS), Ok(4));
        assert_eq!(cns_length(&-1, &p, DEFAULT_MAX_STEPS), Ok(5));
        assert_eq!(cns_length(&0, &p, DEFAULT_MAX_STEPS), Ok(1));
        let q = Poly::<i64>::from_i64s(&[8, 4, 1]);
        assert_eq!(cns_length(&56, &q, DEFAULT_MAX_STEPS), Ok(7));
    }

    #[test]
    fn decode_examples() {
        let p: Poly<i64> = "2,2,1".parse().unwrap();
        let dec = |s: &str| {
            let r = Representation::parse(Base::Cns(p.clone()), s).unwrap();
            cns_decode(&r).unwrap()
        };
        assert_eq!(dec("1100").as_constant(), Some(&2));
        assert_eq!(dec("1").as_constant(), Some(&1));
        assert_eq!(dec("11101").as_constant(), Some(&-1));
        assert_eq!(dec("10").as_constant(), None);
        assert_eq!(dec("10").coeffs(), &[0, 1]);
        let nb = Representation::<i64>::parse(Base::NegaBase(4), "13").unwrap();
        assert_eq!(cns_decode(&nb), Err(CnsError::Digit(DigitError::WrongBase)));
    }

    #[test]
    fn invalid_bases() {
        let mk = |c: &[i64]| CnsBase::new(Poly::<i64>::from_i64s(c)).unwrap_err();
        assert_eq!(mk(&[2, 2, 2]), CnsError::NotMonic);
        assert_eq!(mk(&[1, 1]), CnsError::ConstantTermTooSmall);
        assert_eq!(mk(&[-1, 3, 1]), CnsError::ConstantTermTooSmall);
        assert_eq!(mk(&[1]), CnsError::ConstantBase);
    }

    #[test]
    fn negative_constant_term() {
        // X - 3: expansions are ordinary base-3 for nonnegative integers
        let b = base(&[-3, 1]);
        assert_eq!(b.radix(), 3);
        let r = b.encode(&5, 100).into_result().unwrap();
        assert_eq!(r.to_string(), "12");
        // negative integers have no expansion in base 3 with digits 0..2
        assert!(matches!(
            b.encode(&-1, 100),
            CnsOutcome::NotRepresentable(_)
        ));
    }

    #[test]
    fn cycle_is_detected() {
        // X^2 - 2X + 2 has the root 1 + i and is not a number system
        let b = base(&[2, -2, 1]);
        let outcome = b.encode(&-1, DEFAULT_MAX_STEPS);
        assert!(
            matches!(outcome, CnsOutcome::NotRepresentable(_)),
            "{outcome:?}"
        );
    }

    #[test]
    fn step_budget() {
        let b = base(&[2, 2, 1]);
        assert_eq!(b.encode(&4, 8), CnsOutcome::Exhausted(8));
        assert!(matches!(b.encode(&4, 9), CnsOutcome::Digits(_)));
        assert_eq!(b.length(&4, 3), Err(CnsError::Exhausted { steps: 3 }));
    }

    #[test]
    fn oracle_examples() {
        let b = base(&[2, 2, 1]);
        assert_eq!(b.brute_force(&2, 6).unwrap().to_string(), "1100");
        assert_eq!(b.brute_force(&0, 1).unwrap().to_string(), "0");
        assert!(b.brute_force(&7, 3).is_none());
        // 7 needs nine digits
        assert!(b.brute_force(&7, 8).is_none());
        assert_eq!(b.brute_force(&7, 9).unwrap().to_string(), "111011101");
    }

    #[test]
    fn table_matches_single_searches() {
        let b = base(&[2, 2, 1]);
        let table = b.brute_force_table(10);
        for z in -40..=40i64 {
            assert_eq!(table.get(&z).cloned(), b.brute_force(&z, 10), "z = {z}");
        }
        let b = base(&[3, 1]);
        let table = b.brute_force_table(4);
        assert_eq!(table[&0].to_string(), "0");
        assert_eq!(table.len(), 81);
    }

    #[test]
    fn encoder_agrees_with_oracle() {
        let b = base(&[2, 2, 1]);
        // |z| <= 200 needs at most 17 digits
        let table = b.brute_force_table(18);
        for z in -200..=200i64 {
            let oracle = table
                .get(&z)
                .cloned()
                .expect("every small integer has a short expansion");
            let fast = b.encode(&z, DEFAULT_MAX_STEPS).into_result().unwrap();
            assert_eq!(fast, oracle, "z = {z}");
            let back = cns_decode(&fast).unwrap();
            assert_eq!(back.as_constant(), Some(&z));
        }
    }

    #[test]
    fn big_integers_match_machine_integers() {
        let small = base(&[2, 2, 1]);
        let big = CnsBase::new(Poly::<BigInt>::from_i64s(&[2, 2, 1])).unwrap();
        for z in [-12345i64, -1, 0, 1, 99991] {
            let a = small.encode_digits(&z, DEFAULT_MAX_STEPS).unwrap();
            let b = big
                .encode_digits(&BigInt::from(z), DEFAULT_MAX_STEPS)
                .unwrap();
            assert_eq!(a, b);
        }
        let huge = BigInt::from(10).pow(60) + 7;
        let digits = big.encode_digits(&huge, DEFAULT_MAX_STEPS).unwrap();
        assert_eq!(
            big.decode_digits(&digits).unwrap().as_constant(),
            Some(&huge)
        );
    }
}
