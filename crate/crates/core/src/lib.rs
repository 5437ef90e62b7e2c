//! Exact ramification invariants of rational maps on the Berkovich
//! projective line over `Q_p` and `F_p(t)`.
//!
//! All valuations and logarithmic radii are exact rationals in "ord units":
//! `ord(p) = 1` (resp. `ord(t) = 1`), and the point `ζ_{a,s}` is the closed
//! disk of center `a` and radius `q^{-s}`.

pub mod apps;
pub mod auxram;
pub mod berk;
pub mod error;
pub mod fixtures;
pub mod hull;
pub mod json;
pub mod newton;
pub mod poly;
pub mod valfield;

pub type Rational = num_rational::BigRational;

pub use error::{Error, Result};
pub use valfield::{Domain, DomainKind, ExtVal, FieldElem};

/// Shorthand for the rational `n/d`; panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
