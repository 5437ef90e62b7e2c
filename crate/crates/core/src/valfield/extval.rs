use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::Rational;

/// A valuation: an exact rational or `+inf` (the valuation of zero).
///
/// The derived order puts every finite value below `Infinity`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtVal {
    Finite(Rational),
    Infinity,
}

impl ExtVal {
    pub fn zero() -> Self {
        ExtVal::Finite(Rational::zero())
    }

    pub fn from_int(v: i64) -> Self {
        ExtVal::Finite(Rational::from_integer(v.into()))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtVal::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtVal::Infinity)
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtVal::Finite(v) => Some(v),
            ExtVal::Infinity => None,
        }
    }

    /// Unwrap a finite value; panics on `Infinity`.
    pub fn expect_finite(&self) -> &Rational {
        self.finite().expect("valuation is +inf")
    }

    pub fn cmp_rational(&self, other: &Rational) -> Ordering {
        match self {
            ExtVal::Finite(v) => v.cmp(other),
            ExtVal::Infinity => Ordering::Greater,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "inf" || s == "+inf" {
            return Ok(ExtVal::Infinity);
        }
        crate::valfield::parse_rational(s).map(ExtVal::Finite)
    }
}

impl From<Rational> for ExtVal {
    fn from(v: Rational) -> Self {
        ExtVal::Finite(v)
    }
}

impl Add for &ExtVal {
    type Output = ExtVal;

    fn add(self, rhs: &ExtVal) -> ExtVal {
        match (self, rhs) {
            (ExtVal::Finite(a), ExtVal::Finite(b)) => ExtVal::Finite(a + b),
            _ => ExtVal::Infinity,
        }
    }
}

impl Add for ExtVal {
    type Output = ExtVal;

    fn add(self, rhs: ExtVal) -> ExtVal {
        &self + &rhs
    }
}

impl Add<&Rational> for &ExtVal {
    type Output = ExtVal;

    fn add(self, rhs: &Rational) -> ExtVal {
        match self {
            ExtVal::Finite(a) => ExtVal::Finite(a + rhs),
            ExtVal::Infinity => ExtVal::Infinity,
        }
    }
}

impl fmt::Display for ExtVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtVal::Finite(v) => write!(f, "{v}"),
            ExtVal::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for ExtVal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl std::str::FromStr for ExtVal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExtVal::parse(s)
    }
}
