//! Ramification just off a critical point: for `f = z^m(1 + ε(z))` and a
//! small `δ`, the Newton polygon of `F(z) = f(z + δ) - f(δ)` locates the
//! ramified disk around `δ`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::newton::{newton_polygon, DiskMode, NewtonPolygon};
use crate::poly::Poly;
use crate::valfield::{binomial, ord_int, ExtVal, FieldElem};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FuzzCase {
    TameAnyChar,
    WildCharZero,
    WildCharP,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FuzzReport {
    pub case: FuzzCase,
    pub m: usize,
    /// `m'`: one more than the order of vanishing of `f'` at 0.
    pub m_prime: usize,
    pub delta: FieldElem,
    #[serde(serialize_with = "crate::json::ser::rational")]
    pub ord_delta: Rational,
    /// `ord r₀ = max_{1≤ℓ<m} ord C(m,ℓ)`, characteristic zero only.
    #[serde(serialize_with = "crate::json::ser::opt_rational")]
    pub r0_ord: Option<Rational>,
    /// Limit of the tube radius at the critical point: `0`, `1/(p-1)` or `+inf`.
    pub predicted_radius: ExtVal,
    #[serde(serialize_with = "crate::json::ser::rational")]
    pub measured_local_radius: Rational,
    #[serde(serialize_with = "crate::json::ser::rational")]
    pub predicted_local_radius: Rational,
    pub closed_count: usize,
    pub open_count: usize,
    /// Measured radius equals the prediction; in the wild characteristic-`p`
    /// case with `m` not a power of `p` the prediction is only a lower bound
    /// on `ord` and `agrees` checks that bound.
    pub agrees: bool,
    pub polygon: NewtonPolygon,
}

fn int(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn is_power_of(mut m: u64, p: u64) -> bool {
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

fn violated(msg: impl Into<String>) -> Error {
    Error::NormalizationViolated(msg.into())
}

/// Analyze `F(z) = f(z+δ) - f(δ)` for `f` normalized as `z^m(1 + ε(z))`
/// with `|ε_i| < 1` and `0 < |δ| < 1` (and `|δ| < r₀` in characteristic 0).
pub fn fuzz_analyze(f: &Poly, delta: &FieldElem) -> Result<FuzzReport> {
    let dom = f.domain();
    dom.check(&delta.domain())?;
    let p = dom.p();
    let m = f.trailing_zeros().ok_or(Error::ZeroPolynomial)?;
    if m < 2 {
        return Err(violated(format!("0 has multiplicity {m}; a critical point needs m >= 2")));
    }
    if !f.coeff(m).is_one() {
        return Err(violated(format!("leading coefficient of z^{m} is {}, not 1", f.coeff(m))));
    }
    for i in m + 1..=f.deg() {
        if f.coeff(i).ord() <= ExtVal::zero() {
            return Err(violated(format!("coefficient of z^{i} is not small: ε_{} has ord <= 0", i - m)));
        }
    }
    let ord_delta = match delta.ord() {
        ExtVal::Finite(v) if v > Rational::zero() => v,
        _ => return Err(violated("need 0 < |δ| < 1")),
    };

    let df = f.derivative();
    let m_prime = df.trailing_zeros().ok_or(Error::InseparableMap)? + 1;
    let wild = (m as u64).is_multiple_of(p);
    let char0 = dom.is_char_zero();
    let case = match (wild, char0) {
        (false, _) => FuzzCase::TameAnyChar,
        (true, true) => FuzzCase::WildCharZero,
        (true, false) => FuzzCase::WildCharP,
    };

    let mut r0_ord = None;
    if char0 {
        let r0 = (1..m)
            .map(|l| Rational::from_integer(ord_int(&binomial(m as u64, l as u64), p).into()))
            .max()
            .expect("m >= 2");
        if ord_delta <= r0 {
            return Err(violated(format!("need |δ| < r₀: ord δ = {ord_delta} <= {r0}")));
        }
        r0_ord = Some(r0);
    }

    let pm1 = || int(p as usize - 1);
    let (predicted_radius, predicted_local_radius) = match case {
        FuzzCase::TameAnyChar => (ExtVal::zero(), ord_delta.clone()),
        FuzzCase::WildCharZero => (ExtVal::Finite(Rational::one() / pm1()), &ord_delta + Rational::one() / pm1()),
        FuzzCase::WildCharP => {
            // f'/z^{m'-1} must be dominated by its constant term on the unit disk
            let lead = df.coeff(m_prime - 1).ord();
            for j in m_prime..=df.deg() {
                if df.coeff(j).ord() <= lead {
                    return Err(violated(format!("z^{j} term of f' is not dominated by the z^{} term", m_prime - 1)));
                }
            }
            let eps = f.coeff(m_prime).ord();
            let eps = eps.finite().expect("f' has a z^(m'-1) term");
            (ExtVal::Infinity, (int(m_prime - 1) * &ord_delta + eps) / int(m - 1))
        }
    };

    let fd = f.eval(delta);
    let big_f = f.taylor_shift(delta).sub(&Poly::constant(fd));
    let polygon = newton_polygon(&big_f)?;
    let first = polygon.faces.first().expect("deg F >= m >= 2");
    let measured_local_radius = -first.slope.clone();
    let closed_count = polygon.count(&predicted_local_radius, DiskMode::Closed);
    let open_count = polygon.count(&predicted_local_radius, DiskMode::Open);
    let agrees = match case {
        FuzzCase::WildCharP if !is_power_of(m as u64, p) => measured_local_radius >= predicted_local_radius,
        _ => measured_local_radius == predicted_local_radius,
    };

    Ok(FuzzReport {
        case,
        m,
        m_prime,
        delta: delta.clone(),
        ord_delta,
        r0_ord,
        predicted_radius,
        measured_local_radius,
        predicted_local_radius,
        closed_count,
        open_count,
        agrees,
        polygon,
    })
}

/// `min_{2≤s≤m} ord_p(C(m,s)/m)/(s-1)` and the largest `s` attaining it.
///
/// The minimum is `0` (attained at `s = m`) when `p ∤ m`, and `-1/(p-1)`
/// (attained only at `s = p`) when `p | m`.
pub fn binomial_val_min(m: u64, p: u64) -> Result<(Rational, u64)> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("m = {m} must be at least 2")));
    }
    crate::valfield::Domain::padic(p)?;
    let om = ord_int(&BigInt::from(m), p);
    let mut best: Option<(Rational, u64)> = None;
    for s in 2..=m {
        let v = Rational::new((ord_int(&binomial(m, s), p) - om).into(), ((s - 1) as i64).into());
        if best.as_ref().is_none_or(|(b, _)| &v <= b) {
            best = Some((v, s));
        }
    }
    Ok(best.expect("m >= 2"))
}
