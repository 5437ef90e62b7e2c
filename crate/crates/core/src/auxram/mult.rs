//! Multiplicities `m_φ(x)` at classical and Berkovich points.

use num_bigint::BigInt;
use num_traits::Zero;

use super::aux_coeffs;
use crate::berk::{seminorm_ord, BerkPoint};
use crate::error::{Error, Result};
use crate::hull::dist_to_hull_and_infinity;
use crate::newton::{count_roots, DiskMode};
use crate::poly::{Poly, RationalMap};
use crate::valfield::{ExtVal, FieldElem, FpPoly};
use crate::Rational;

/// Local degree at a classical point `c`, or at `∞` when `c` is `None`.
pub fn classical_multiplicity(phi: &RationalMap, c: Option<&FieldElem>) -> Result<usize> {
    let (f, g) = match c {
        Some(c) => {
            phi.domain().check(&c.domain())?;
            (phi.f().taylor_shift(c), phi.g().taylor_shift(c))
        }
        None => (phi.f().reversed(phi.degree()), phi.g().reversed(phi.degree())),
    };
    let g0 = g.coeff(0);
    if g0.is_zero() {
        return Ok(g.trailing_zeros().expect("denominator is nonzero"));
    }
    let value = f.coeff(0).checked_div(&g0)?;
    let h = f.sub(&g.scale(&value));
    Ok(h.trailing_zeros().expect("nonconstant map"))
}

/// `m_φ(ζ_{a,s})` as the number of solutions of `φ = φ(a)` in the closed
/// disk, valid when the disk holds no pole.
pub fn multiplicity_zero_count(phi: &RationalMap, a: &FieldElem, s: &Rational) -> Result<usize> {
    phi.domain().check(&a.domain())?;
    if count_roots(phi.g(), a, s, DiskMode::Closed)? > 0 {
        return Err(Error::PoleInDisk);
    }
    let value = phi.eval(a).ok_or(Error::PoleInDisk)?;
    count_roots(&phi.minus_value(&value), a, s, DiskMode::Closed)
}

/// Reduction of a pair `(F, G)` at `ζ_{a,s}` after scaling `G` by an element
/// of valuation `shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub num: FpPoly,
    pub den: FpPoly,
}

impl Reduction {
    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }
}

/// Residues of `F(a + π^s Z)` and `c·G(a + π^s Z)` with `ord c = shift`,
/// normalized by their joint minimum valuation.
///
/// `π^s` lives in a totally ramified extension, so the residue field stays
/// `F_p` and a coefficient `q_i π^{is}` of minimal valuation reduces to the
/// unit residue of `q_i`.
fn reduce_pair(f: &Poly, g: &Poly, a: &FieldElem, s: &Rational, shift: &Rational) -> Reduction {
    let p = f.domain().p();
    let vals = |q: &Poly, extra: &Rational| -> Vec<(ExtVal, Option<u64>)> {
        q.taylor_shift(a)
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let v = &c.ord() + &(s * Rational::from_integer(BigInt::from(i)) + extra);
                (v, c.unit_residue())
            })
            .collect()
    };
    let fv = vals(f, &Rational::zero());
    let gv = vals(g, shift);
    let mu = fv.iter().chain(&gv).map(|x| x.0.clone()).min().unwrap_or(ExtVal::Infinity);
    let residues = |v: &[(ExtVal, Option<u64>)]| -> FpPoly {
        FpPoly::from_coeffs(p, v.iter().map(|(val, r)| if *val == mu { r.unwrap_or(0) } else { 0 }).collect())
    };
    let (num, den) = (residues(&fv), residues(&gv));
    let h = num.gcd(&den);
    if h.is_zero() {
        return Reduction { num, den };
    }
    Reduction { num: num.div_rem(&h).0, den: den.div_rem(&h).0 }
}

/// Target centers worth trying: the image of `ζ_{a,s}` is `ζ_{b,s'}` for any
/// base-field `b` that is the image of a generic point of the disk.
fn target_candidates(phi: &RationalMap, a: &FieldElem, s: &Rational) -> Vec<Option<FieldElem>> {
    let d = phi.domain();
    let mut out = vec![Some(FieldElem::zero(d)), None];
    out.extend(phi.eval(a).map(Some));
    let k0 = s.ceil().to_integer();
    let k0: i64 = k0.try_into().unwrap_or(0);
    let units = d.p().min(5);
    for k in [k0, k0 + 1] {
        let pk = FieldElem::uniformizer_pow(d, k);
        for u in 1..units {
            let y = a + &(&pk * &FieldElem::from_int(d, u as i64));
            if let Some(v) = phi.eval(&y) {
                out.push(Some(v));
            }
        }
    }
    out
}

/// Degree of the reduction of `φ` at `ζ_{a,s}`, after a target change
/// `w ↦ (w - b)/c` that moves the image to the Gauss point.
///
/// Works for any rational `s`: the conjugation `z = a + π^s Z` is done over
/// a ramified extension using valuations and unit residues only. Reports
/// `Undecidable` when no base-field target center moves the image.
pub fn multiplicity_reduction(phi: &RationalMap, x: &BerkPoint) -> Result<usize> {
    phi.domain().check(&x.domain())?;
    let s = x.finite_s()?;
    let a = x.center();
    for b in target_candidates(phi, a, s) {
        let (num, den) = match &b {
            Some(b) => (phi.minus_value(b), phi.g().clone()),
            None => (phi.g().clone(), phi.f().clone()),
        };
        let shift = (seminorm_ord(&num, x) + neg(&seminorm_ord(&den, x))).expect_finite().clone();
        let red = reduce_pair(&num, &den, a, s, &shift);
        if red.degree() >= 1 {
            return Ok(red.degree());
        }
    }
    Err(Error::Undecidable(format!("no base-field target coordinate reduces φ at ζ_({a}, {s})")))
}

fn neg(v: &ExtVal) -> ExtVal {
    ExtVal::Finite(-v.expect_finite())
}

/// `m_φ(x)` by whichever exact method applies.
pub fn multiplicity(phi: &RationalMap, x: &BerkPoint) -> Result<usize> {
    match x.s() {
        ExtVal::Infinity => classical_multiplicity(phi, Some(x.center())),
        ExtVal::Finite(s) => match multiplicity_zero_count(phi, x.center(), s) {
            Err(Error::PoleInDisk) => multiplicity_reduction(phi, x),
            other => other,
        },
    }
}

/// Whether `x` lies in the ramification locus, decided by the sign of `𝔱`
/// with the hull and multiplicity breaking the tie at `𝔱 = 0`.
///
/// The sign of `𝔱` sees the hull of `Crit(φ) ∪ {∞}`, not of `Crit(φ)`:
/// above every critical point with `∞` unramified, `𝔱 = 0` on the ray to `∞`.
pub fn is_ramified(phi: &RationalMap, x: &BerkPoint) -> Result<bool> {
    phi.domain().check(&x.domain())?;
    x.finite_s()?;
    let Some(t) = aux_coeffs(phi).t_frak_at(x)? else {
        return Ok(false);
    };
    if t < Rational::zero() {
        return Ok(false);
    }
    if t > Rational::zero() {
        return Ok(true);
    }
    match dist_to_hull_and_infinity(phi, x) {
        Ok(d) if d > Rational::zero() => return Ok(true),
        Ok(_) | Err(Error::InfiniteDistance) => {}
        Err(e) => return Err(e),
    }
    match multiplicity(phi, x) {
        Ok(m) => Ok(m > 1),
        Err(Error::Undecidable(msg)) => Err(Error::Undecidable(msg)),
        Err(e) => Err(Error::Undecidable(e.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rat;
    use crate::valfield::Domain;

    #[test]
    fn zero_counts_for_example_six_one() {
        let phi = fixtures::ex61(3).unwrap();
        let zero = FieldElem::zero(phi.domain());
        assert_eq!(multiplicity_zero_count(&phi, &zero, &rat(0, 1)).unwrap(), 3);
        assert_eq!(multiplicity_zero_count(&phi, &zero, &rat(1, 2)).unwrap(), 1);
        let d = Domain::padic(7).unwrap();
        let sq = RationalMap::polynomial(Poly::from_ints(d, &[0, 0, 1])).unwrap();
        for s in [rat(-3, 1), rat(0, 1), rat(5, 2)] {
            assert_eq!(multiplicity_zero_count(&sq, &FieldElem::zero(d), &s).unwrap(), 2);
        }
    }

    #[test]
    fn pole_in_disk_is_reported() {
        let phi = fixtures::ex63(3).unwrap();
        let zero = FieldElem::zero(phi.domain());
        assert_eq!(multiplicity_zero_count(&phi, &zero, &rat(0, 1)), Err(Error::PoleInDisk));
    }

    #[test]
    fn reduction_degrees() {
        let phi = fixtures::ex61(3).unwrap();
        assert_eq!(multiplicity_reduction(&phi, &BerkPoint::gauss(phi.domain())).unwrap(), 3);
        let phi = fixtures::ex63(3).unwrap();
        assert_eq!(multiplicity_reduction(&phi, &BerkPoint::gauss(phi.domain())).unwrap(), 3);
        let d = Domain::padic(3).unwrap();
        let iso = RationalMap::polynomial(Poly::from_ints(d, &[0, 1, 3])).unwrap();
        assert_eq!(multiplicity_reduction(&iso, &BerkPoint::gauss(d)).unwrap(), 1);
    }

    #[test]
    fn reduction_matches_zero_count_off_integers() {
        let phi = fixtures::ex61(3).unwrap();
        let d = phi.domain();
        for s in [rat(-2, 1), rat(-1, 2), rat(-1, 3), rat(0, 1), rat(1, 4), rat(3, 2)] {
            for a in [0, 1, 2, 5] {
                let x = BerkPoint::at(FieldElem::from_int(d, a), s.clone());
                let by_count = multiplicity_zero_count(&phi, x.center(), &s).unwrap();
                assert_eq!(multiplicity_reduction(&phi, &x).unwrap(), by_count, "a={a} s={s}");
            }
        }
    }

    #[test]
    fn classical_multiplicities() {
        let phi = fixtures::ex63(3).unwrap();
        let d = phi.domain();
        assert_eq!(classical_multiplicity(&phi, None).unwrap(), 3);
        assert_eq!(classical_multiplicity(&phi, Some(&FieldElem::one(d))).unwrap(), 2);
        assert_eq!(classical_multiplicity(&phi, Some(&FieldElem::zero(d))).unwrap(), 1);
        assert_eq!(classical_multiplicity(&phi, Some(&FieldElem::from_int(d, 2))).unwrap(), 1);
    }

    #[test]
    fn ramification_on_examples() {
        let phi = fixtures::ex63(3).unwrap();
        let d = phi.domain();
        let at = |s| BerkPoint::at(FieldElem::zero(d), s);
        assert!(is_ramified(&phi, &at(rat(1, 4))).unwrap());
        assert!(!is_ramified(&phi, &at(rat(1, 1))).unwrap());
        assert!(is_ramified(&phi, &at(rat(0, 1))).unwrap());
        let phi = fixtures::ex61(3).unwrap();
        assert!(is_ramified(&phi, &BerkPoint::gauss(phi.domain())).unwrap());
    }
}
