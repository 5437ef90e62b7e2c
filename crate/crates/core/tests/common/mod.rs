//! Random maps, points and field elements for property tests and sweeps.
#![allow(dead_code)]

use berkram_core::berk::BerkPoint;
use berkram_core::poly::{Poly, RationalMap};
use berkram_core::valfield::{DomainKind, FpPoly};
use berkram_core::{Domain, FieldElem, Rational};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// `u·π^k` with a small nonzero `u` prime to `p` and `k` in `[kmin, kmax]`.
pub fn elem_with_ord(rng: &mut StdRng, d: Domain, k: i64) -> FieldElem {
    let p = d.p() as i64;
    let unit = match d.kind() {
        DomainKind::PAdic => loop {
            let u = rng.gen_range(-9i64..=9);
            if u % p != 0 {
                break FieldElem::from_int(d, u);
            }
        },
        DomainKind::TAdic => {
            let deg = rng.gen_range(0..=2usize);
            let mut c: Vec<u64> = (0..=deg).map(|_| rng.gen_range(0..d.p())).collect();
            c[0] = rng.gen_range(1..d.p());
            FieldElem::from_fp_fraction(d, FpPoly::from_coeffs(d.p(), c), FpPoly::one(d.p())).unwrap()
        }
    };
    &unit * &FieldElem::uniformizer_pow(d, k)
}

pub fn elem(rng: &mut StdRng, d: Domain, kmin: i64, kmax: i64) -> FieldElem {
    let k = rng.gen_range(kmin..=kmax);
    elem_with_ord(rng, d, k)
}

/// A coefficient that is zero about a quarter of the time.
pub fn sparse_elem(rng: &mut StdRng, d: Domain) -> FieldElem {
    if rng.gen_bool(0.25) {
        FieldElem::zero(d)
    } else {
        elem(rng, d, -2, 2)
    }
}

pub fn poly(rng: &mut StdRng, d: Domain, deg: usize, monic: bool) -> Poly {
    let mut c: Vec<FieldElem> = (0..deg).map(|_| sparse_elem(rng, d)).collect();
    c.push(if monic { FieldElem::one(d) } else { elem(rng, d, -2, 2) });
    Poly::new(d, c).unwrap()
}

/// Any separable map of degree `2..=max_deg`.
pub fn rational_map(rng: &mut StdRng, d: Domain, max_deg: usize) -> RationalMap {
    loop {
        let df = rng.gen_range(0..=max_deg);
        let dg = if df < 2 { rng.gen_range(2..=max_deg) } else { rng.gen_range(0..=max_deg) };
        let f = poly(rng, d, df, false);
        let g = poly(rng, d, dg, true);
        if let Ok(phi) = RationalMap::new(f, g) {
            if phi.degree() >= 2 {
                return phi;
            }
        }
    }
}

/// A separable map with `∞` critical: a polynomial, or `deg f >= deg g + 2`.
pub fn map_infinity_critical(rng: &mut StdRng, d: Domain, max_deg: usize) -> RationalMap {
    loop {
        let df = rng.gen_range(2..=max_deg);
        let dg = if rng.gen_bool(0.5) { 0 } else { rng.gen_range(0..=df - 2) };
        let f = poly(rng, d, df, false);
        let g = poly(rng, d, dg, true);
        if let Ok(phi) = RationalMap::new(f, g) {
            if phi.degree() >= 2 && phi.f().deg() >= phi.g().deg() + 2 {
                return phi;
            }
        }
    }
}

/// A rational with denominator in `1..=4` in `[lo, hi]`.
pub fn small_rational(rng: &mut StdRng, lo: i64, hi: i64) -> Rational {
    let den = rng.gen_range(1..=4i64);
    let num = rng.gen_range(lo * den..=hi * den);
    Rational::new(num.into(), den.into())
}

/// `ζ_{a,s}` with `ord a ∈ [-3, 3]` (or `a = 0`) and `s ∈ [-3, 3]`.
pub fn point(rng: &mut StdRng, d: Domain) -> BerkPoint {
    let a = if rng.gen_bool(0.2) { FieldElem::zero(d) } else { elem(rng, d, -3, 3) };
    BerkPoint::at(a, small_rational(rng, -3, 3))
}
