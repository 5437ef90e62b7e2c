//! Rolle's theorem for rational maps, disks whose image is the whole line,
//! and the injectivity radius of power series.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::newton::{count_roots, newton_polygon, DiskMode};
use crate::poly::{wronskian, RationalMap};
use crate::valfield::{Domain, ExtVal, FieldElem};
use crate::Rational;

/// Ord-shift of the enlargement factor: `0` if `p = 0` or `p > d`, else `1/(p-1)`.
pub fn gamma_shift(p: u64, d: usize) -> Rational {
    if p == 0 || p as usize > d {
        Rational::zero()
    } else {
        Rational::new(BigInt::one(), BigInt::from(p - 1))
    }
}

/// `ord r_p = 1/(p-1)`: power series `z + Σ a_i z^i` with integral `a_i` are
/// injective on the open disk of that radius.
pub fn robert_injectivity_radius(p: u64) -> Result<Rational> {
    Domain::padic(p)?;
    Ok(gamma_shift(p, p as usize))
}

/// Largest root valuation of the Wronskian shifted to `a`: the ord of the
/// closest finite critical point. `None` when there is none.
fn nearest_critical_ord(phi: &RationalMap, a: &FieldElem) -> Result<Option<ExtVal>> {
    let w = wronskian(phi);
    if w.is_constant() {
        return Ok(None);
    }
    Ok(newton_polygon(&w.taylor_shift(a))?.max_root_val())
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RolleReport {
    pub zeros_in_disk: usize,
    #[serde(serialize_with = "crate::json::ser::rational")]
    pub shift: Rational,
    #[serde(serialize_with = "crate::json::ser::rational")]
    pub critical_disk_radius_ord: Rational,
    pub critical_found_at_ord: Option<ExtVal>,
    pub applicable: bool,
    pub verdict: bool,
}

/// If `φ` has two distinct zeros in `D(a, q^{-s})`, look for a critical
/// point in the enlarged disk of ord `s - shift` (default shift `γ`).
pub fn rolle_check(phi: &RationalMap, a: &FieldElem, s: &Rational, shift: Option<Rational>) -> Result<RolleReport> {
    let dom = phi.domain();
    dom.check(&a.domain())?;
    if !dom.is_char_zero() {
        return Err(Error::CharacteristicP);
    }
    let zeros_in_disk = count_roots(&phi.f().square_free_part(), a, s, DiskMode::Closed)?;
    let shift = shift.unwrap_or_else(|| gamma_shift(dom.p(), phi.degree()));
    let critical_disk_radius_ord = s - &shift;
    let critical_found_at_ord = nearest_critical_ord(phi, a)?;
    let found = critical_found_at_ord.as_ref().is_some_and(|v| v.cmp_rational(&critical_disk_radius_ord).is_ge());
    let applicable = zeros_in_disk >= 2;
    Ok(RolleReport {
        zeros_in_disk,
        shift,
        critical_disk_radius_ord,
        critical_found_at_ord,
        applicable,
        verdict: !applicable || found,
    })
}

/// A target `c` with `ord(c - anchor) = k` and generic residue, i.e. every
/// other center `y` satisfies `ord(c - y) = min(k, ord(anchor - y))`.
#[derive(Clone, Debug, Serialize)]
pub struct MissedTarget {
    pub anchor: FieldElem,
    pub k: ExtVal,
    /// A base-field element realizing the miss, when one was found.
    pub value: Option<FieldElem>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SurjectivityReport {
    pub surjective: bool,
    pub poles_in_disk: usize,
    pub candidates_checked: usize,
    pub missed: Option<MissedTarget>,
}

/// `L_i` as a minimum of affine functions `const + slope·k` of `k = ord(c - anchor)`.
struct Term {
    pieces: Vec<(Rational, u8)>,
}

impl Term {
    fn eval(&self, k: &ExtVal) -> ExtVal {
        self.pieces
            .iter()
            .map(|(c, slope)| match (slope, k) {
                (0, _) => ExtVal::Finite(c.clone()),
                (_, ExtVal::Finite(k)) => ExtVal::Finite(c + k),
                (_, ExtVal::Infinity) => ExtVal::Infinity,
            })
            .min()
            .unwrap_or(ExtVal::Infinity)
    }
}

fn misses(terms: &[Term], k: &ExtVal) -> bool {
    let l0 = terms[0].eval(k);
    terms[1..].iter().all(|t| l0 < t.eval(k))
}

/// Whether `φ(D(a, q^{-s}))` is all of `P^1(C_k)`.
///
/// `c` is missed exactly when the constant term of `(f - c·g)(a + z)`
/// strictly dominates on the disk: `L_0(c) < L_i(c)` for all `i ≥ 1`, with
/// `L_i(c) = ord(f̂_i - c ĝ_i) + i·s`. Each `L_i` depends on `c` only through
/// `ord(c - c_i)` for the centers `c_i = f̂_i/ĝ_i`. With the anchor chosen as
/// the center closest to `c`, these are `min(k, ord(anchor - c_i))` for
/// `k = ord(c - anchor)`, so it is enough to scan `k` over breakpoints,
/// crossings and the gaps between them.
pub fn surjectivity_check(phi: &RationalMap, a: &FieldElem, s: &Rational) -> Result<SurjectivityReport> {
    let dom = phi.domain();
    dom.check(&a.domain())?;
    let poles_in_disk = count_roots(phi.g(), a, s, DiskMode::Closed)?;
    if poles_in_disk == 0 {
        return Ok(SurjectivityReport { surjective: false, poles_in_disk, candidates_checked: 0, missed: None });
    }
    let fh = phi.f().taylor_shift(a);
    let gh = phi.g().taylor_shift(a);
    let n = phi.degree() + 1;
    let is = |i: usize| s * Rational::from_integer(BigInt::from(i));
    let mut centers: Vec<FieldElem> = vec![FieldElem::zero(dom)];
    for i in 0..n {
        let gi = gh.coeff(i);
        if !gi.is_zero() {
            let c = fh.coeff(i).checked_div(&gi)?;
            if !centers.contains(&c) {
                centers.push(c);
            }
        }
    }

    let mut checked = 0;
    for anchor in &centers {
        let terms: Vec<Term> = (0..n)
            .map(|i| {
                let gi = gh.coeff(i);
                let pieces = if gi.is_zero() {
                    match fh.coeff(i).ord() {
                        ExtVal::Finite(v) => vec![(v + is(i), 0)],
                        ExtVal::Infinity => vec![],
                    }
                } else {
                    let base = gi.ord().expect_finite() + is(i);
                    let ci = fh.coeff(i).checked_div(&gi).expect("nonzero");
                    match (anchor - &ci).ord() {
                        ExtVal::Finite(b) => vec![(&base + b, 0), (base, 1)],
                        ExtVal::Infinity => vec![(base, 1)],
                    }
                };
                Term { pieces }
            })
            .collect();
        let mut ks: Vec<Rational> = Vec::new();
        for t in &terms {
            for (c, sl) in &t.pieces {
                if *sl == 0 {
                    ks.push(c.clone());
                }
            }
        }
        // crossings of slope-1 pieces with constants
        let consts = ks.clone();
        for t in &terms {
            for (c1, sl) in &t.pieces {
                if *sl == 1 {
                    ks.extend(consts.iter().map(|c| c - c1));
                }
            }
        }
        ks.push(Rational::zero());
        ks.sort();
        ks.dedup();
        let mut probes: Vec<ExtVal> = vec![ExtVal::Infinity];
        let one = Rational::one();
        probes.push(ExtVal::Finite(ks.first().expect("nonempty") - &one));
        probes.push(ExtVal::Finite(ks.last().expect("nonempty") + &one));
        for w in ks.windows(2) {
            probes.push(ExtVal::Finite((&w[0] + &w[1]) / Rational::from_integer(2.into())));
        }
        probes.extend(ks.iter().cloned().map(ExtVal::Finite));
        for k in probes {
            checked += 1;
            if misses(&terms, &k) {
                let value = realize(phi, a, s, anchor, &k);
                return Ok(SurjectivityReport {
                    surjective: false,
                    poles_in_disk,
                    candidates_checked: checked,
                    missed: Some(MissedTarget { anchor: anchor.clone(), k, value }),
                });
            }
        }
    }
    Ok(SurjectivityReport { surjective: true, poles_in_disk, candidates_checked: checked, missed: None })
}

/// Try to find a base-field `c` with `ord(c - anchor) = k` and no solution of `φ = c` in the disk.
fn realize(phi: &RationalMap, a: &FieldElem, s: &Rational, anchor: &FieldElem, k: &ExtVal) -> Option<FieldElem> {
    let dom = phi.domain();
    let trial = |c: FieldElem| -> Option<FieldElem> {
        (count_roots(&phi.minus_value(&c), a, s, DiskMode::Closed).ok()? == 0).then_some(c)
    };
    match k {
        ExtVal::Infinity => trial(anchor.clone()),
        ExtVal::Finite(k) if k.is_integer() => {
            let k: i64 = k.to_integer().try_into().ok()?;
            let pk = FieldElem::uniformizer_pow(dom, k);
            (1..dom.p().min(8)).find_map(|u| trial(anchor + &(&pk * &FieldElem::from_int(dom, u as i64))))
        }
        ExtVal::Finite(_) => None,
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct App2Report {
    pub applicable: bool,
    pub surjectivity: SurjectivityReport,
    #[serde(serialize_with = "crate::json::ser::rational")]
    pub critical_disk_radius_ord: Rational,
    pub critical_found_at_ord: Option<ExtVal>,
    pub passed: bool,
}

/// If the disk maps onto the whole line, a critical point lies in the
/// `γ`-enlarged disk.
pub fn app2_check(phi: &RationalMap, a: &FieldElem, s: &Rational) -> Result<App2Report> {
    let dom = phi.domain();
    if !dom.is_char_zero() {
        return Err(Error::CharacteristicP);
    }
    let surjectivity = surjectivity_check(phi, a, s)?;
    let critical_disk_radius_ord = s - gamma_shift(dom.p(), phi.degree());
    let critical_found_at_ord = nearest_critical_ord(phi, a)?;
    let found = critical_found_at_ord.as_ref().is_some_and(|v| v.cmp_rational(&critical_disk_radius_ord).is_ge());
    let applicable = surjectivity.surjective;
    Ok(App2Report {
        applicable,
        surjectivity,
        critical_disk_radius_ord,
        critical_found_at_ord,
        passed: !applicable || found,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::poly::Poly;
    use crate::rat;

    fn polynomial_map(domain: Domain, coeffs: &[i64]) -> Result<RationalMap> {
        RationalMap::polynomial(Poly::from_ints(domain, coeffs))
    }

    #[test]
    fn gamma_and_injectivity() {
        assert_eq!(gamma_shift(3, 2), rat(0, 1));
        assert_eq!(gamma_shift(3, 3), rat(1, 2));
        assert_eq!(gamma_shift(2, 7), rat(1, 1));
        assert_eq!(gamma_shift(0, 7), rat(0, 1));
        assert_eq!(robert_injectivity_radius(3).unwrap(), rat(1, 2));
        assert_eq!(robert_injectivity_radius(7).unwrap(), rat(1, 6));
        assert!(robert_injectivity_radius(6).is_err());
    }

    #[test]
    fn rolle_on_example_six_one() {
        let phi = fixtures::ex61(3).unwrap();
        let zero = FieldElem::zero(phi.domain());
        let r = rolle_check(&phi, &zero, &rat(0, 1), None).unwrap();
        assert_eq!(r.zeros_in_disk, 3);
        assert_eq!(r.critical_found_at_ord, Some(ExtVal::Finite(rat(-1, 2))));
        assert!(r.applicable && r.verdict);
        let sharp = rolle_check(&phi, &zero, &rat(0, 1), Some(rat(0, 1))).unwrap();
        assert!(sharp.applicable && !sharp.verdict);
    }

    #[test]
    fn rolle_tame() {
        let d = Domain::padic(5).unwrap();
        let phi = polynomial_map(d, &[-25, 0, 1]).unwrap();
        let r = rolle_check(&phi, &FieldElem::zero(d), &rat(0, 1), None).unwrap();
        assert_eq!(r.zeros_in_disk, 2);
        assert_eq!(r.shift, rat(0, 1));
        assert_eq!(r.critical_found_at_ord, Some(ExtVal::Infinity));
        assert!(r.verdict);
    }

    #[test]
    fn surjectivity_examples() {
        let phi = fixtures::ex63(3).unwrap();
        let d = phi.domain();
        let zero = FieldElem::zero(d);
        let r = surjectivity_check(&phi, &zero, &rat(0, 1)).unwrap();
        assert!(r.surjective);
        let app = app2_check(&phi, &zero, &rat(0, 1)).unwrap();
        assert!(app.applicable && app.passed);

        let sq = polynomial_map(d, &[0, 0, 1]).unwrap();
        let r = surjectivity_check(&sq, &zero, &rat(0, 1)).unwrap();
        assert!(!r.surjective && r.poles_in_disk == 0);
        let app = app2_check(&sq, &zero, &rat(0, 1)).unwrap();
        assert!(!app.applicable && app.passed);

        let phi = RationalMap::new(Poly::from_ints(d, &[1, 0, 3]), Poly::from_ints(d, &[0, 1])).unwrap();
        let r = surjectivity_check(&phi, &zero, &rat(0, 1)).unwrap();
        assert!(!r.surjective);
        let c = r.missed.unwrap().value.unwrap();
        assert_eq!(count_roots(&phi.minus_value(&c), &zero, &rat(0, 1), DiskMode::Closed).unwrap(), 0);
    }
}
