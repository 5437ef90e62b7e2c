//! The auxiliary polynomial `A_φ(z,w) = [f(z+w)g(w) - f(w)g(z+w)]/z` and the
//! visible ramification it controls.
//!
//! Writing `A_φ = Σ_ℓ A_ℓ(w) z^ℓ`, the signed quantity
//! `𝔱(ζ_{a,s}) = -s + max_{ℓ≥1} (v_0 - v_ℓ)/ℓ` (with `v_ℓ` the seminorm
//! valuation of `A_ℓ`) is computed exactly, and `τ = max(𝔱, 0)`.

mod mult;
mod profile;

pub use mult::{
    classical_multiplicity, is_ramified, multiplicity, multiplicity_reduction, multiplicity_zero_count, Reduction,
};
pub use profile::{profile_segment, Piece, Profile, Which};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::berk::{seminorm_ord, BerkPoint};
use crate::error::{Error, Result};
use crate::newton::{count_roots, newton_polygon, DiskMode};
use crate::poly::{wronskian, Poly, RationalMap};
use crate::valfield::{binomial, ExtVal, FieldElem};
use crate::Rational;

/// `A_0, ..., A_{d-1}` as polynomials in `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxPolynomial {
    pub coeffs: Vec<Poly>,
}

impl AuxPolynomial {
    pub fn a(&self, l: usize) -> &Poly {
        &self.coeffs[l]
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `z ↦ A_φ(z, y)`.
    pub fn specialize(&self, y: &FieldElem) -> Poly {
        let d = y.domain();
        Poly::new(d, self.coeffs.iter().map(|a| a.eval(y)).collect()).expect("same domain")
    }

    /// `𝔱` at a point of finite radius; `None` when there is no `A_ℓ` with `ℓ ≥ 1`.
    pub fn t_frak_at(&self, x: &BerkPoint) -> Result<Option<Rational>> {
        let s = x.finite_s()?;
        let v0 = seminorm_ord(&self.coeffs[0], x);
        let v0 = v0.finite().ok_or(Error::ZeroPolynomial)?;
        let best = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, a)| !a.is_zero())
            .map(|(l, a)| {
                let vl = seminorm_ord(a, x);
                (v0 - vl.expect_finite()) / Rational::from_integer(BigInt::from(l))
            })
            .max();
        Ok(best.map(|b| b - s))
    }
}

impl Serialize for AuxPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

/// `A_ℓ` by the closed binomial formula.
pub fn aux_coeffs(phi: &RationalMap) -> AuxPolynomial {
    let dom = phi.domain();
    let d = phi.degree();
    let (f, g) = (phi.f(), phi.g());
    let coeffs = (0..d)
        .map(|l| {
            let mut out = vec![FieldElem::zero(dom); 2 * d + 1];
            let k = (l + 1) as u64;
            for (i, a) in f.coeffs().iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in g.coeffs().iter().enumerate() {
                    if b.is_zero() {
                        continue;
                    }
                    let c: BigInt = binomial(i as u64, k) - binomial(j as u64, k);
                    if c.is_zero() {
                        continue;
                    }
                    // a nonzero bracket forces max(i, j) > l, so the exponent is >= 0
                    let e = i + j - l - 1;
                    let term = &FieldElem::from_bigint(dom, &c) * &(a * b);
                    out[e] = &out[e] + &term;
                }
            }
            Poly::new(dom, out).expect("same domain")
        })
        .collect();
    AuxPolynomial { coeffs }
}

/// Polynomials in `z` with coefficients in `k[w]`, index = power of `z`.
type Bivariate = Vec<Poly>;

fn bi_mul(a: &[Poly], b: &[Poly], zero: &Poly) -> Bivariate {
    let mut out = vec![zero.clone(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

fn bi_add(a: &[Poly], b: &[Poly], zero: &Poly) -> Bivariate {
    let n = a.len().max(b.len());
    (0..n).map(|i| a.get(i).unwrap_or(zero).add(b.get(i).unwrap_or(zero))).collect()
}

/// `P(z + w)` as a bivariate polynomial, by repeated multiplication.
fn compose_sum(p: &Poly) -> Bivariate {
    let dom = p.domain();
    let zero = Poly::zero(dom);
    let z_plus_w: Bivariate = vec![Poly::x(dom), Poly::one(dom)];
    let mut power: Bivariate = vec![Poly::one(dom)];
    let mut acc: Bivariate = vec![zero.clone()];
    for c in p.coeffs() {
        let term: Bivariate = power.iter().map(|q| q.scale(c)).collect();
        acc = bi_add(&acc, &term, &zero);
        power = bi_mul(&power, &z_plus_w, &zero);
    }
    acc
}

/// `A_φ` by expanding `f(z+w)g(w) - f(w)g(z+w)` and dividing by `z`.
pub fn aux_direct(phi: &RationalMap) -> AuxPolynomial {
    let dom = phi.domain();
    let zero = Poly::zero(dom);
    let (f, g) = (phi.f(), phi.g());
    let left = bi_mul(&compose_sum(f), std::slice::from_ref(g), &zero);
    let right = bi_mul(std::slice::from_ref(f), &compose_sum(g), &zero);
    let diff: Bivariate = bi_add(&left, &right.iter().map(Poly::neg).collect::<Vec<_>>(), &zero);
    assert!(diff[0].is_zero(), "A_φ numerator must vanish at z = 0");
    let mut coeffs: Vec<Poly> = diff.into_iter().skip(1).collect();
    coeffs.resize(phi.degree(), zero);
    assert!(coeffs.len() == phi.degree(), "z-degree exceeds d - 1");
    AuxPolynomial { coeffs }
}

/// The signed visible ramification `𝔱_φ(x)` for a point of finite radius.
///
/// Degree-one maps have no `A_ℓ` with `ℓ ≥ 1`; they are rejected here and
/// have `τ = 0`.
pub fn t_frak(phi: &RationalMap, x: &BerkPoint) -> Result<Rational> {
    phi.domain().check(&x.domain())?;
    aux_coeffs(phi).t_frak_at(x)?.ok_or_else(|| Error::InvalidArgument("degree-one map: 𝔱 is -inf".into()))
}

/// `τ_φ(x) = max(𝔱_φ(x), 0)`.
pub fn tau(phi: &RationalMap, x: &BerkPoint) -> Result<Rational> {
    phi.domain().check(&x.domain())?;
    let t = aux_coeffs(phi).t_frak_at(x)?;
    Ok(t.map_or_else(Rational::zero, |t| t.max(Rational::zero())))
}

/// Largest valuation of a root of `z ↦ A_φ(z, y)`; `None` when that
/// polynomial is constant (no roots, `r'_y = +inf`).
pub fn min_root_radius(phi: &RationalMap, y: &FieldElem) -> Result<Option<ExtVal>> {
    phi.domain().check(&y.domain())?;
    let a = aux_coeffs(phi).specialize(y);
    if a.is_constant() {
        return Ok(None);
    }
    Ok(newton_polygon(&a)?.max_root_val())
}

/// Tangent direction at `x` containing the probe `y`, by exceptional type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DirectionClass {
    Generic,
    ExceptionalAux,
    ExceptionalCrit,
}

/// Classify the direction at `x = ζ_{a,s}` toward `y` (the open disk
/// `ord(z - y) > s`). Poles never matter here: `∞` lies only in the upward
/// direction, which no probe in the disk represents.
pub fn classify_direction(phi: &RationalMap, x: &BerkPoint, y: &FieldElem) -> Result<DirectionClass> {
    phi.domain().check(&x.domain())?;
    let s = x.finite_s()?;
    if !x.contains(y) {
        return Err(Error::ProbeNotInBall);
    }
    let aux = aux_coeffs(phi);
    let hits = |p: &Poly| -> Result<bool> { Ok(!p.is_zero() && count_roots(p, y, s, DiskMode::Open)? > 0) };
    if hits(&wronskian(phi))? {
        return Ok(DirectionClass::ExceptionalCrit);
    }
    for a in aux.coeffs.iter().skip(1) {
        if hits(a)? {
            return Ok(DirectionClass::ExceptionalAux);
        }
    }
    Ok(DirectionClass::Generic)
}
