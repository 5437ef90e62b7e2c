//! Critical points: exact base-field roots of the Wronskian, Hensel-located
//! roots in `Z_p`, and the valuation multiset of everything else.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::auxram::classical_multiplicity;
use crate::error::Result;
use crate::newton::newton_polygon;
use crate::poly::{wronskian, Poly, RationalMap};
use crate::valfield::{hensel_lift, DomainKind, ExtVal, FieldElem, FpPoly, PAdicApprox};
use crate::Rational;

const MAX_FACTOR: u64 = 1_000_000_000_000;
const MAX_CANDIDATES: usize = 50_000;
const HENSEL_PRECISION: i64 = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalPoint {
    pub point: FieldElem,
    pub multiplicity: usize,
    /// Order of vanishing of the Wronskian at the point.
    pub weight: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CriticalSet {
    pub has_infinity: bool,
    pub infinity_multiplicity: usize,
    #[serde(serialize_with = "ser_vals")]
    pub finite_data: Vec<(ExtVal, usize)>,
    pub rational_roots: Vec<CriticalPoint>,
    #[serde(serialize_with = "ser_hensel")]
    pub hensel_roots: Vec<PAdicApprox>,
    /// Whether the base-field root search was exhaustive.
    pub search_complete: bool,
}

fn ser_vals<S: serde::Serializer>(v: &[(ExtVal, usize)], s: S) -> std::result::Result<S::Ok, S::Error> {
    v.iter().map(|(a, n)| (a.to_string(), *n)).collect::<Vec<_>>().serialize(s)
}

fn ser_hensel<S: serde::Serializer>(v: &[PAdicApprox], s: S) -> std::result::Result<S::Ok, S::Error> {
    v.iter().map(|r| (r.to_integer().to_string(), r.abs_precision())).collect::<Vec<_>>().serialize(s)
}

impl CriticalSet {
    pub fn total_weight(&self) -> usize {
        self.finite_data.iter().map(|(_, n)| n).sum()
    }
}

fn small_divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64().filter(|&n| n <= MAX_FACTOR)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Integer coefficients proportional to a polynomial over `Q`.
pub(crate) fn integer_coeffs(p: &Poly) -> Vec<BigInt> {
    let rats: Vec<Rational> =
        p.coeffs().iter().map(|c| c.as_rational().expect("p-adic coefficients").clone()).collect();
    let lcm = rats.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

fn rational_roots_q(p: &Poly) -> (Vec<FieldElem>, bool) {
    let dom = p.domain();
    let mut roots = Vec::new();
    let k = p.trailing_zeros().unwrap_or(0);
    if k > 0 {
        roots.push(FieldElem::zero(dom));
    }
    let ints = integer_coeffs(p);
    let (Some(us), Some(vs)) = (small_divisors(&ints[k]), small_divisors(ints.last().expect("nonzero"))) else {
        return (roots, false);
    };
    if us.len() * vs.len() > MAX_CANDIDATES {
        return (roots, false);
    }
    let mut seen = Vec::new();
    for u in &us {
        for v in &vs {
            if u.gcd(v) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let q = Rational::new(BigInt::from(*u) * sign, BigInt::from(*v));
                if seen.contains(&q) {
                    continue;
                }
                seen.push(q.clone());
                let c = FieldElem::from_rational(dom, &q).expect("p-adic");
                if p.eval(&c).is_zero() {
                    roots.push(c);
                }
            }
        }
    }
    (roots, true)
}

fn monic_divisors(h: &FpPoly) -> Option<Vec<FpPoly>> {
    let p = h.p();
    let deg = h.degree().expect("nonzero");
    let mut total = 0usize;
    let mut out = Vec::new();
    for e in 0..=deg {
        let count = (p as usize).checked_pow(e as u32)?;
        total += count;
        if total > MAX_CANDIDATES {
            return None;
        }
        for idx in 0..count {
            let mut coeffs = Vec::with_capacity(e + 1);
            let mut r = idx as u64;
            for _ in 0..e {
                coeffs.push(r % p);
                r /= p;
            }
            coeffs.push(1);
            let cand = FpPoly::from_coeffs(p, coeffs);
            if h.div_rem(&cand).1.is_zero() {
                out.push(cand);
            }
        }
    }
    Some(out)
}

fn rational_roots_fpt(p: &Poly) -> (Vec<FieldElem>, bool) {
    let dom = p.domain();
    let q = dom.p();
    let mut roots = Vec::new();
    let k = p.trailing_zeros().unwrap_or(0);
    if k > 0 {
        roots.push(FieldElem::zero(dom));
    }
    let fracs: Vec<(&FpPoly, &FpPoly)> =
        p.coeffs().iter().map(|c| c.as_fp_fraction().expect("t-adic coefficients")).collect();
    let lcm = fracs.iter().fold(FpPoly::one(q), |acc, (_, d)| {
        let g = acc.gcd(d);
        acc.mul(d).div_rem(&g).0
    });
    let polys: Vec<FpPoly> = fracs.iter().map(|(n, d)| n.mul(&lcm.div_rem(d).0)).collect();
    let (Some(us), Some(vs)) = (monic_divisors(&polys[k]), monic_divisors(polys.last().expect("nonzero"))) else {
        return (roots, false);
    };
    for u in &us {
        for v in &vs {
            if !u.gcd(v).is_one() {
                continue;
            }
            for lam in 1..q {
                let c = FieldElem::from_fp_fraction(dom, u.scale(lam), v.clone()).expect("nonzero denominator");
                if p.eval(&c).is_zero() {
                    roots.push(c);
                }
            }
        }
    }
    (roots, true)
}

/// Base-field roots of a nonzero polynomial, and whether the search was exhaustive.
pub fn rational_roots(p: &Poly) -> (Vec<FieldElem>, bool) {
    if p.is_constant() {
        return (Vec::new(), true);
    }
    match p.domain().kind() {
        DomainKind::PAdic => rational_roots_q(p),
        DomainKind::TAdic => rational_roots_fpt(p),
    }
}

fn residue_mod_power(q: &Rational, p: u64, n: i64) -> Option<BigInt> {
    let modulus = BigInt::from(p).pow(n as u32);
    let inv = q.denom().modinv(&modulus)?;
    Some((q.numer() * inv).mod_floor(&modulus))
}

fn hensel_roots(w: &Poly, exact: &[FieldElem]) -> Vec<PAdicApprox> {
    let p = w.domain().p();
    let ints = integer_coeffs(w);
    let pb = BigInt::from(p);
    let content = ints.iter().filter(|c| !c.is_zero()).map(|c| crate::valfield::ord_int(c, p)).min().unwrap_or(0);
    let scale = pb.clone().pow(content as u32);
    let prim: Vec<BigInt> = ints.iter().map(|c| c / &scale).collect();
    let signed: Vec<i64> = prim.iter().map(|c| c.mod_floor(&pb).to_i64().expect("residue fits")).collect();
    let red = FpPoly::from_signed(p, &signed);
    let dred = red.derivative();
    let rats: Vec<Rational> = prim.iter().map(|c| Rational::from_integer(c.clone())).collect();
    let exact_res: Vec<BigInt> =
        exact.iter().filter_map(|c| residue_mod_power(c.as_rational()?, p, HENSEL_PRECISION)).collect();
    let mut out = Vec::new();
    for r in 0..p {
        if red.is_zero() || red.eval(r) != 0 || dred.eval(r) == 0 {
            continue;
        }
        let x0 = PAdicApprox::from_integer(p, &BigInt::from(r), 1);
        if let Ok(root) = hensel_lift(p, &rats, &x0, HENSEL_PRECISION) {
            let v = root.to_integer();
            if !exact_res.contains(&v) {
                out.push(root);
            }
        }
    }
    out
}

/// Critical points of `φ`.
pub fn critical_set(phi: &RationalMap) -> Result<CriticalSet> {
    let w = wronskian(phi);
    let infinity_multiplicity = classical_multiplicity(phi, None)?;
    let finite_data = if w.is_constant() { Vec::new() } else { newton_polygon(&w)?.root_valuations() };
    let (roots, search_complete) = rational_roots(&w);
    let mut rational_roots = Vec::new();
    for c in &roots {
        rational_roots.push(CriticalPoint {
            point: c.clone(),
            multiplicity: classical_multiplicity(phi, Some(c))?,
            weight: w.ord_at(c).unwrap_or(0),
        });
    }
    let hensel = match phi.domain().kind() {
        DomainKind::PAdic if !w.is_constant() => hensel_roots(&w, &roots),
        _ => Vec::new(),
    };
    Ok(CriticalSet {
        has_infinity: infinity_multiplicity > 1,
        infinity_multiplicity,
        finite_data,
        rational_roots,
        hensel_roots: hensel,
        search_complete,
    })
}
