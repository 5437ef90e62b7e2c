//! Points `ζ_{a,s}` of the Berkovich line with base-field centers.
//!
//! `ζ_{a,s}` is the closed disk `ord(z - a) >= s`; `s = +inf` is the
//! classical point `a`. Two descriptions name the same point exactly when
//! the radii agree and `ord(a - b) >= s`.

use std::cmp::Ordering;

use num_traits::Zero;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::valfield::{Domain, ExtVal, FieldElem};
use crate::Rational;

#[derive(Clone, Debug)]
pub struct BerkPoint {
    center: FieldElem,
    s: ExtVal,
}

impl BerkPoint {
    pub fn new(center: FieldElem, s: ExtVal) -> Self {
        BerkPoint { center, s }
    }

    pub fn at(center: FieldElem, s: Rational) -> Self {
        BerkPoint { center, s: ExtVal::Finite(s) }
    }

    pub fn classical(a: FieldElem) -> Self {
        BerkPoint { center: a, s: ExtVal::Infinity }
    }

    /// `ζ_{0,1}`.
    pub fn gauss(domain: Domain) -> Self {
        Self::at(FieldElem::zero(domain), Rational::zero())
    }

    pub fn center(&self) -> &FieldElem {
        &self.center
    }

    pub fn s(&self) -> &ExtVal {
        &self.s
    }

    pub fn domain(&self) -> Domain {
        self.center.domain()
    }

    /// Finite log-radius, or `InfiniteDistance` for a classical point.
    pub fn finite_s(&self) -> Result<&Rational> {
        self.s.finite().ok_or(Error::InfiniteDistance)
    }

    /// The log-radius `s`: the diameter is `q^{-s}`.
    pub fn diam(&self) -> ExtVal {
        self.s.clone()
    }

    pub fn is_classical(&self) -> bool {
        self.s.is_infinite()
    }

    /// Type II when the radius lies in the value group `Z` of the base field
    /// (so the point can be moved to the Gauss point over the base field).
    pub fn is_type_ii(&self) -> bool {
        self.s.finite().is_some_and(|s| s.is_integer())
    }

    /// Contains `y` in its closed disk.
    pub fn contains(&self, y: &FieldElem) -> bool {
        (&self.center - y).ord() >= self.s
    }

    /// Image under `z ↦ 1/(z - c)`.
    pub fn invert_about(&self, c: &FieldElem) -> Result<BerkPoint> {
        let b = &self.center - c;
        let vb = b.ord();
        let d = self.domain();
        if vb < self.s {
            let v = vb.expect_finite();
            let s = match &self.s {
                ExtVal::Finite(s) => ExtVal::Finite(s - v - v),
                ExtVal::Infinity => ExtVal::Infinity,
            };
            return Ok(BerkPoint { center: b.inverse()?, s });
        }
        match &self.s {
            ExtVal::Finite(s) => Ok(BerkPoint::at(FieldElem::zero(d), -s)),
            ExtVal::Infinity => Err(Error::InvalidArgument("the point maps to infinity".into())),
        }
    }
}

impl PartialEq for BerkPoint {
    fn eq(&self, other: &Self) -> bool {
        self.s == other.s && (&self.center - &other.center).ord() >= self.s
    }
}

impl Eq for BerkPoint {}

/// Partial order by disk containment: `x <= y` iff the disk of `x` lies in that of `y`.
impl PartialOrd for BerkPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let gap = (&self.center - &other.center).ord();
        match self.s.cmp(&other.s) {
            Ordering::Equal => (gap >= self.s).then_some(Ordering::Equal),
            Ordering::Greater => (gap >= other.s).then_some(Ordering::Less),
            Ordering::Less => (gap >= self.s).then_some(Ordering::Greater),
        }
    }
}

/// Smallest point above both: `ζ_{a_x, min(s_x, s_y, ord(a_x - a_y))}`.
pub fn join(x: &BerkPoint, y: &BerkPoint) -> BerkPoint {
    let gap = (&x.center - &y.center).ord();
    let s = x.s.clone().min(y.s.clone()).min(gap);
    BerkPoint { center: x.center.clone(), s }
}

/// Hyperbolic distance between points of finite radius.
pub fn rho(x: &BerkPoint, y: &BerkPoint) -> Result<Rational> {
    let sx = x.finite_s()?;
    let sy = y.finite_s()?;
    let j = join(x, y);
    let sj = j.finite_s()?;
    Ok((sx - sj) + (sy - sj))
}

/// `-log |P|(x)` in ord units: `min_i ord(q_i) + i·s` with `q = P(z + a)`.
pub fn seminorm_ord(p: &Poly, x: &BerkPoint) -> ExtVal {
    let q = p.taylor_shift(&x.center);
    match &x.s {
        ExtVal::Infinity => q.coeff(0).ord(),
        ExtVal::Finite(s) => q
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| &c.ord() + &(s * Rational::from_integer((i as i64).into())))
            .min()
            .unwrap_or(ExtVal::Infinity),
    }
}

impl Serialize for BerkPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("center", &self.center)?;
        map.serialize_entry("s", &self.s)?;
        map.end()
    }
}
