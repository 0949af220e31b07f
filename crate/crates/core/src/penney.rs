//! Block-substitution conversion from base `-c` expansions to canonical
//! expansions over `p`.
//!
//! When `p` divides `X^d + c` every root of `p` satisfies `ρ^d = -c`. If each
//! digit `i < c` has a `p`-expansion `h_i` of at most `d` digits, then
//! replacing every base `-c` digit `v_i` of `z` by the `d`-digit block
//! `h_{v_i}` yields the `p`-expansion of `z`, and
//!
//! ```text
//! len_p(z) = d * (len_{-c}(z) - 1) + len_p(v_top)
//! ```
//!
//! where `v_top` is the most significant base `-c` digit. The last term is
//! [`PenneyScheme::lambda`].

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cns::{CnsBase, CnsError};
use crate::negabase;
use crate::poly::{Degree, Poly};
use crate::repr::{format_digits, parse_digits, Base, Representation};
use crate::scalar::Scalar;

/// The first hypothesis a candidate `(p, c, d)` fails, with its witness.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum SchemeViolation {
    #[error("p is not monic")]
    NotMonic,
    #[error("|p(0)| must exceed 1")]
    ConstantTermTooSmall,
    #[error("p has a repeated root")]
    RepeatedRoots,
    #[error("p does not divide X^d + c")]
    NoDivisibility,
    #[error("d must exceed deg p")]
    DTooSmallForDegree,
    #[error("digit {0} has no p-expansion")]
    DigitNotRepresentable(u32),
    #[error("digit {0} has p-expansion of length {1}, longer than d")]
    BlockTooLong(u32, usize),
}

/// Validated `(p, c, d)` with the zero-padded block table `h_0, ..., h_{c-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PenneyScheme<T = BigInt> {
    base: CnsBase<T>,
    c: u32,
    d: usize,
    /// `blocks[i]` holds `h_i`, least significant digit first, exactly `d` digits.
    blocks: Vec<Vec<u32>>,
    block_lengths: Vec<usize>,
}

impl<T: Scalar> PenneyScheme<T> {
    /// Checks every hypothesis in a fixed order (monic, constant term, simple
    /// roots, divisibility, `d > deg p`, then the blocks for `i = 0, 1, ...`)
    /// and reports the first failure.
    pub fn build(p: Poly<T>, c: u32, d: usize, max_steps: usize) -> Result<Self, SchemeViolation> {
        if !p.is_monic() {
            return Err(SchemeViolation::NotMonic);
        }
        if p.constant_term().abs() <= T::one() {
            return Err(SchemeViolation::ConstantTermTooSmall);
        }
        if !p.has_simple_roots() {
            return Err(SchemeViolation::RepeatedRoots);
        }
        let divides = p
            .divides_x_pow_plus(d, &T::from_digit(c))
            .expect("p is monic");
        if !divides {
            return Err(SchemeViolation::NoDivisibility);
        }
        if Degree::Finite(d) <= p.degree() {
            return Err(SchemeViolation::DTooSmallForDegree);
        }
        let base = CnsBase::new(p).expect("monic with |p(0)| dividing c");
        debug_assert!(c > base.radix());

        let mut blocks = Vec::with_capacity(c as usize);
        let mut block_lengths = Vec::with_capacity(c as usize);
        for i in 0..c {
            let mut digits = match base.encode_digits(&T::from_digit(i), max_steps) {
                Ok(digits) => digits,
                Err(CnsError::NotRepresentable { .. } | CnsError::Exhausted { .. }) => {
                    return Err(SchemeViolation::DigitNotRepresentable(i))
                }
                Err(e) => unreachable!("base already validated: {e}"),
            };
            if digits.len() > d {
                return Err(SchemeViolation::BlockTooLong(i, digits.len()));
            }
            block_lengths.push(digits.len());
            digits.resize(d, 0);
            blocks.push(digits);
        }
        Ok(PenneyScheme {
            base,
            c,
            d,
            blocks,
            block_lengths,
        })
    }

    /// `p = X^2 + 2X + 2` with `c = d = 4`.
    pub fn standard() -> Self {
        Self::build(
            Poly::from_i64s(&[2, 2, 1]),
            4,
            4,
            crate::cns::DEFAULT_MAX_STEPS,
        )
        .expect("X^2 + 2X + 2 divides X^4 + 4 and 0..3 have short expansions")
    }

    pub fn poly(&self) -> &Poly<T> {
        self.base.poly()
    }

    pub fn cns_base(&self) -> &CnsBase<T> {
        &self.base
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Block `h_i`, least significant digit first, padded to `d` digits.
    pub fn block(&self, i: u32) -> &[u32] {
        &self.blocks[i as usize]
    }

    /// `len_p(i)` for every digit `i < c`.
    pub fn block_lengths(&self) -> &[usize] {
        &self.block_lengths
    }

    /// Least-significant-first `p`-digits of `z`, built by block substitution.
    pub fn convert_digits(&self, z: &T) -> Vec<u32> {
        let nega = negabase::encode_digits(z, self.c).expect("c > |p(0)| >= 2");
        let top = *nega.last().expect("expansions are nonempty");
        let mut out = Vec::with_capacity(nega.len() * self.d);
        for &v in &nega {
            out.extend_from_slice(&self.blocks[v as usize]);
        }
        while out.len() > 1 && out.last() == Some(&0) {
            out.pop();
        }
        debug_assert_eq!(
            out.len(),
            self.d * (nega.len() - 1) + self.block_lengths[top as usize]
        );
        out
    }

    /// The `p`-expansion of `z`.
    pub fn convert(&self, z: &T) -> Representation<T> {
        let digits = self.convert_digits(z);
        debug_assert_eq!(
            self.base
                .decode_digits(&digits)
                .ok()
                .as_ref()
                .and_then(|r| r.as_constant()),
            Some(z)
        );
        Representation::new_unchecked(Base::Cns(self.poly().clone()), digits)
    }

    /// `len_p` of the most significant base `-c` digit of `z`.
    pub fn lambda(&self, z: &T) -> usize {
        let nega = negabase::encode_digits(z, self.c).expect("c >= 2");
        self.block_lengths[*nega.last().expect("nonempty") as usize]
    }

    /// `d * (len_{-c}(z) - 1) + lambda(z)`.
    pub fn predicted_length(&self, z: &T) -> usize {
        let nega = negabase::encode_digits(z, self.c).expect("c >= 2");
        self.d * (nega.len() - 1) + self.block_lengths[*nega.last().expect("nonempty") as usize]
    }

    pub fn to_document(&self) -> SchemeDocument {
        SchemeDocument {
            poly: self.poly().to_string(),
            c: self.c,
            d: self.d,
            blocks: self.blocks.iter().map(|b| format_digits(b)).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("plain data serializes")
    }

    /// Rebuilds the scheme from `(poly, c, d)` and checks that the stored
    /// blocks match the recomputed ones.
    pub fn from_document(doc: &SchemeDocument, max_steps: usize) -> Result<Self, SchemeLoadError> {
        let poly: Poly<T> = doc
            .poly
            .parse()
            .map_err(|e| SchemeLoadError::Malformed(format!("{e}")))?;
        let scheme = Self::build(poly, doc.c, doc.d, max_steps)?;
        if doc.blocks.len() != scheme.blocks.len() {
            return Err(SchemeLoadError::BlockMismatch(
                doc.blocks.len().min(scheme.blocks.len()),
            ));
        }
        for (i, (text, block)) in doc.blocks.iter().zip(&scheme.blocks).enumerate() {
            let parsed =
                parse_digits(text).map_err(|e| SchemeLoadError::Malformed(format!("{e}")))?;
            if &parsed != block {
                return Err(SchemeLoadError::BlockMismatch(i));
            }
        }
        Ok(scheme)
    }

    pub fn from_json(json: &str, max_steps: usize) -> Result<Self, SchemeLoadError> {
        let doc: SchemeDocument =
            serde_json::from_str(json).map_err(|e| SchemeLoadError::Malformed(e.to_string()))?;
        Self::from_document(&doc, max_steps)
    }
}

/// Serialized scheme: `{"poly": "2,2,1", "c": 4, "d": 4, "blocks": ["0000", ...]}`
/// with blocks most significant digit first, padded to `d` digits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeDocument {
    pub poly: String,
    pub c: u32,
    pub d: usize,
    pub blocks: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeLoadError {
    #[error("malformed scheme document: {0}")]
    Malformed(String),
    #[error(transparent)]
    Violation(#[from] SchemeViolation),
    #[error("stored block {0} does not match the recomputed block")]
    BlockMismatch(usize),
}

/// All `(c, d)` with `1 <= c <= c_max`, `1 <= d <= d_max` and `p | X^d + c`.
/// Uses `X^d mod p`: the pair qualifies exactly when that residue is the
/// constant `-c`.
pub fn find_schemes<T: Scalar>(p: &Poly<T>, c_max: u32, d_max: usize) -> Vec<(u32, usize)> {
    if !p.is_monic() || p.degree() < Degree::Finite(1) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut power = Poly::<T>::one();
    let x = Poly::<T>::monomial(1);
    for d in 1..=d_max {
        power = (&power * &x).divrem(p).expect("monic").1;
        if power.degree() <= Degree::Finite(0) {
            let neg = -power.constant_term().clone();
            if let Some(c) = neg.to_u32() {
                if c >= 1 && c <= c_max {
                    out.push((c, d));
                }
            }
        }
    }
    out
}
