//! Canonical number system expansions of rational integers.
//!
//! A monic integer polynomial `p` with `|p(0)| > 1` defines digits
//! `D_p = {0, ..., |p(0)|-1}`; an integer `z` is written as
//! `z ≡ sum u_j X^j (mod p)`. This crate computes such expansions exactly,
//! converts base `-c` expansions into them by block substitution when
//! `p | X^d + c`, and checks the length identities of `p = X^2 + 2X + 2`
//! (the minimal polynomial of `-1 + i`) and its trinomial lifts
//! `X^(2m) + 2X^m + 2`.
//!
//! Everything is generic over an exact integer type implementing
//! [`Scalar`]; the aliases below fix it to [`BigInt`] or `i64`.
//!
//! ```
//! use penney_cns::{IntPoly, PenneyScheme, cns::cns_encode};
//!
//! let p: IntPoly = "2,2,1".parse().unwrap();
//! let three = cns_encode(&3.into(), &p, 10_000).unwrap().into_result().unwrap();
//! assert_eq!(three.to_string(), "1101");
//!
//! let scheme = PenneyScheme::<i64>::standard();
//! assert_eq!(scheme.convert(&4).to_string(), "111010000");
//! ```

pub mod cli;
pub mod cns;
pub mod negabase;
pub mod penney;
pub mod poly;
pub mod repr;
pub mod scalar;
pub mod trinomial;
pub mod verify;

pub use num_bigint::BigInt;
pub use num_rational::Ratio;

pub use cns::{CnsBase, CnsError, CnsOutcome, Residue};
pub use penney::{PenneyScheme, SchemeViolation};
pub use poly::{Degree, Poly, PolyError};
pub use repr::{Base, DigitError, Representation};
pub use scalar::Scalar;

/// Polynomial with arbitrary-precision coefficients.
pub type IntPoly = Poly<BigInt>;
/// Polynomial with machine-word coefficients, for sweeps.
pub type IntPoly64 = Poly<i64>;
/// Exact rational number, always in lowest terms with positive denominator.
pub type Rational = Ratio<BigInt>;
pub type Rational64 = Ratio<i64>;
pub type IntRepresentation = Representation<BigInt>;
pub type IntScheme = PenneyScheme<BigInt>;
