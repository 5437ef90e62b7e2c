//! Newton polygons over exact rational valuations.
//!
//! A face of slope `μ` and horizontal length `L` accounts for `L` roots of
//! valuation `-μ`; the order of vanishing at zero accounts for roots at `+inf`.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::valfield::{ExtVal, FieldElem};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub slope: Rational,
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub vertices: Vec<(usize, Rational)>,
    pub faces: Vec<Face>,
    pub start_index: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiskMode {
    Closed,
    Open,
}

fn cross(o: &(usize, Rational), a: &(usize, Rational), b: &(usize, Rational)) -> Rational {
    let ax = Rational::from_integer((a.0 as i64 - o.0 as i64).into());
    let bx = Rational::from_integer((b.0 as i64 - o.0 as i64).into());
    ax * (&b.1 - &o.1) - (&a.1 - &o.1) * bx
}

/// Lower convex hull of points with strictly increasing abscissae.
pub fn polygon_from_points(points: &[(usize, Rational)]) -> NewtonPolygon {
    let mut hull: Vec<(usize, Rational)> = Vec::with_capacity(points.len());
    for pt in points {
        while hull.len() >= 2
            && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], pt) <= Rational::from_integer(0.into())
        {
            hull.pop();
        }
        hull.push(pt.clone());
    }
    let faces = hull
        .windows(2)
        .map(|w| {
            let len = w[1].0 - w[0].0;
            Face { slope: (&w[1].1 - &w[0].1) / Rational::from_integer((len as i64).into()), length: len }
        })
        .collect();
    NewtonPolygon { start_index: hull.first().map_or(0, |v| v.0), vertices: hull, faces }
}

pub fn newton_polygon(p: &Poly) -> Result<NewtonPolygon> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let points: Vec<(usize, Rational)> =
        p.coeffs().iter().enumerate().filter_map(|(i, c)| c.ord().finite().map(|v| (i, v.clone()))).collect();
    Ok(polygon_from_points(&points))
}

impl NewtonPolygon {
    pub fn degree(&self) -> usize {
        self.vertices.last().map_or(0, |v| v.0)
    }

    /// Multiset of root valuations, `+inf` first, then in decreasing order.
    pub fn root_valuations(&self) -> Vec<(ExtVal, usize)> {
        let mut out = Vec::new();
        if self.start_index > 0 {
            out.push((ExtVal::Infinity, self.start_index));
        }
        out.extend(self.faces.iter().map(|f| (ExtVal::Finite(-&f.slope), f.length)));
        out
    }

    /// Number of roots `x` with `ord x >= s` (closed) or `> s` (open).
    pub fn count(&self, s: &Rational, mode: DiskMode) -> usize {
        self.start_index
            + self
                .faces
                .iter()
                .filter(|f| {
                    let v = -&f.slope;
                    match mode {
                        DiskMode::Closed => &v >= s,
                        DiskMode::Open => &v > s,
                    }
                })
                .map(|f| f.length)
                .sum::<usize>()
    }

    /// Largest finite root valuation (`-` the first slope), if any finite root exists.
    pub fn max_finite_root_val(&self) -> Option<Rational> {
        self.faces.first().map(|f| -&f.slope)
    }

    /// Largest root valuation overall.
    pub fn max_root_val(&self) -> Option<ExtVal> {
        if self.start_index > 0 {
            return Some(ExtVal::Infinity);
        }
        self.max_finite_root_val().map(ExtVal::Finite)
    }
}

/// Roots of `P` (with multiplicity, over an algebraic closure) in the disk
/// of center `a` and log-radius `s`.
pub fn count_roots(p: &Poly, a: &FieldElem, s: &Rational, mode: DiskMode) -> Result<usize> {
    let shifted = p.checked_taylor_shift(a)?;
    Ok(newton_polygon(&shifted)?.count(s, mode))
}

/// Roots at `a` itself (the type I case `s = +inf`) or in a finite disk.
pub fn count_roots_ext(p: &Poly, a: &FieldElem, s: &ExtVal, mode: DiskMode) -> Result<usize> {
    match s {
        ExtVal::Finite(s) => count_roots(p, a, s, mode),
        ExtVal::Infinity => {
            if p.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
            let shifted = p.checked_taylor_shift(a)?;
            Ok(match mode {
                DiskMode::Closed => shifted.trailing_zeros().unwrap_or(0),
                DiskMode::Open => 0,
            })
        }
    }
}

impl Serialize for NewtonPolygon {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let vertices: Vec<(usize, String)> = self.vertices.iter().map(|(i, v)| (*i, v.to_string())).collect();
        let faces: Vec<(String, usize)> = self.faces.iter().map(|f| (f.slope.to_string(), f.length)).collect();
        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("faces", &faces)?;
        map.serialize_entry("startIndex", &self.start_index)?;
        map.serialize_entry("vertices", &vertices)?;
        map.end()
    }
}
