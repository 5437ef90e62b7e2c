//! The hull of critical points: distance, tubes, uniform tube radii and the
//! limiting behaviour of `τ` at a critical point.

mod critical;
mod fuzz;

pub use critical::{critical_set, rational_roots, CriticalPoint, CriticalSet};
pub use fuzz::{binomial_val_min, fuzz_analyze, FuzzCase, FuzzReport};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::auxram::{classical_multiplicity, is_ramified, profile_segment, tau, Which};
use crate::berk::BerkPoint;
use crate::error::{Error, Result};
use crate::newton::newton_polygon;
use crate::poly::{normalize_map, wronskian, RationalMap};
use crate::valfield::{Domain, ExtVal, FieldElem};
use crate::Rational;

/// `φ` conjugated by `M(z) = c + 1/z`, which sends `∞` to `c`.
pub fn conjugate_to_infinity(phi: &RationalMap, c: &FieldElem) -> Result<RationalMap> {
    phi.domain().check(&c.domain())?;
    let d = phi.degree();
    let fs = phi.f().taylor_shift(c).reversed(d);
    let gs = phi.g().taylor_shift(c).reversed(d);
    normalize_map(&gs, &fs.sub(&gs.scale(c)))
}

/// `ρ(x, Hull(Crit φ ∪ {∞}))`: `max(0, s - v_max(a))`, where `v_max(a)` is
/// the largest root valuation of the Wronskian shifted to `a`.
///
/// This is the hull that governs the sign of `𝔱`; it agrees with
/// [`dist_to_hull`] when `∞` is critical.
pub fn dist_to_hull_and_infinity(phi: &RationalMap, x: &BerkPoint) -> Result<Rational> {
    phi.domain().check(&x.domain())?;
    let s = x.finite_s()?;
    let w = wronskian(phi);
    if w.is_constant() {
        return Err(Error::InfiniteDistance);
    }
    let np = newton_polygon(&w.taylor_shift(x.center()))?;
    Ok(match np.max_root_val() {
        Some(ExtVal::Finite(v)) => (s - v).max(Rational::zero()),
        _ => Rational::zero(),
    })
}

/// `ρ(x, Hull(Crit φ))` for a point of finite radius.
///
/// With `∞` critical this is [`dist_to_hull_and_infinity`]; otherwise a
/// base-field critical point is moved to `∞` first.
pub fn dist_to_hull(phi: &RationalMap, x: &BerkPoint) -> Result<Rational> {
    phi.domain().check(&x.domain())?;
    x.finite_s()?;
    if classical_multiplicity(phi, None)? > 1 {
        return dist_to_hull_and_infinity(phi, x);
    }
    let (roots, _) = rational_roots(&wronskian(phi));
    let c0 = roots.first().ok_or(Error::ConventionUnsatisfiable)?;
    let psi = conjugate_to_infinity(phi, c0)?;
    dist_to_hull_and_infinity(&psi, &x.invert_about(c0)?)
}

pub fn in_tube(phi: &RationalMap, x: &BerkPoint, r: &Rational) -> Result<bool> {
    if r < &Rational::zero() {
        return Err(Error::InvalidArgument(format!("tube radius {r} is negative")));
    }
    Ok(&dist_to_hull(phi, x)? <= r)
}

/// Uniform tube radius in characteristic zero: `0` when `p = 0` or `p > d`,
/// else `1/(p-1)`.
pub fn theorem_d_radius(p: u64, d: usize, char0: bool) -> Result<Rational> {
    if !char0 {
        return Err(Error::CharacteristicP);
    }
    if p == 0 || p as usize > d {
        return Ok(Rational::zero());
    }
    Ok(Rational::new(1.into(), (p - 1).into()))
}

#[derive(Clone, Debug, Serialize)]
pub struct TubeViolation {
    pub point: BerkPoint,
    #[serde(serialize_with = "crate::json::ser::rational")]
    pub dist: Rational,
    #[serde(serialize_with = "crate::json::ser::rational")]
    pub radius: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct SkippedSample {
    pub point: BerkPoint,
    pub reason: String,
}

#[derive(Clone, Debug, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TheoremDReport {
    pub passed: bool,
    pub checked: usize,
    pub ramified: usize,
    #[serde(serialize_with = "crate::json::ser::opt_rational")]
    pub max_dist: Option<Rational>,
    pub violations: Vec<TubeViolation>,
    pub skipped: Vec<SkippedSample>,
}

/// Check that every ramified sample lies within the uniform tube radius.
pub fn check_theorem_d(phi: &RationalMap, samples: &[BerkPoint]) -> Result<TheoremDReport> {
    let dom = phi.domain();
    if !dom.is_char_zero() {
        return Err(Error::CharacteristicP);
    }
    let radius = theorem_d_radius(dom.p(), phi.degree(), true)?;
    let mut rep = TheoremDReport::default();
    for x in samples {
        dom.check(&x.domain())?;
        let skip = |rep: &mut TheoremDReport, e: Error| {
            rep.skipped.push(SkippedSample { point: x.clone(), reason: e.to_string() })
        };
        match is_ramified(phi, x) {
            Ok(false) => rep.checked += 1,
            Ok(true) => match dist_to_hull(phi, x) {
                Ok(dist) => {
                    rep.checked += 1;
                    rep.ramified += 1;
                    if rep.max_dist.as_ref().is_none_or(|m| &dist > m) {
                        rep.max_dist = Some(dist.clone());
                    }
                    if dist > radius {
                        rep.violations.push(TubeViolation { point: x.clone(), dist, radius: radius.clone() });
                    }
                }
                Err(e) => skip(&mut rep, e),
            },
            Err(e) => skip(&mut rep, e),
        }
    }
    rep.passed = rep.violations.is_empty();
    Ok(rep)
}

/// Exact maximum of `τ` over segments `s ↦ ζ_{a,s}`, `s ∈ [s0, s1]`.
pub fn tubular_radius_on_subgraph(phi: &RationalMap, segments: &[(FieldElem, Rational, Rational)]) -> Result<Rational> {
    let mut best = Rational::zero();
    for (a, s0, s1) in segments {
        best = best.max(profile_segment(phi, a, s0, s1, Which::Tau)?.max());
    }
    Ok(best)
}

/// `lim τ(ζ_{c,s})` as the disk shrinks to a critical point `c` (`None`
/// for `∞`): `0` if `p ∤ m`, `1/(p-1)` in characteristic zero with `p | m`,
/// and `+inf` in characteristic `p` with `p | m`.
pub fn tau_limit_at_critical(phi: &RationalMap, c: Option<&FieldElem>) -> Result<ExtVal> {
    let m = classical_multiplicity(phi, c)?;
    if m <= 1 {
        let at = c.map_or_else(|| "inf".to_string(), |c| c.to_string());
        return Err(Error::NotCritical(format!("multiplicity {m} at {at}")));
    }
    let dom: Domain = phi.domain();
    let p = dom.p();
    if !(m as u64).is_multiple_of(p) {
        return Ok(ExtVal::zero());
    }
    if dom.is_char_zero() {
        Ok(ExtVal::Finite(Rational::one() / Rational::from_integer((p - 1).into())))
    } else {
        Ok(ExtVal::Infinity)
    }
}

/// `τ` sampled along the segment approaching `c` (`s` large), for checking the limit.
pub fn tau_near_critical(phi: &RationalMap, c: &FieldElem, s: &Rational) -> Result<Rational> {
    tau(phi, &BerkPoint::at(c.clone(), s.clone()))
}
