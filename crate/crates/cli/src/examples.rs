//! The worked examples as executable checks: each prints its expected and
//! computed values, and the process fails if any disagree.

use berkram_core::auxram::{aux_coeffs, is_ramified, multiplicity, profile_segment, tau, Piece, Which};
use berkram_core::berk::BerkPoint;
use berkram_core::hull::dist_to_hull;
use berkram_core::newton::{count_roots, DiskMode};
use berkram_core::poly::Poly;
use berkram_core::valfield::binomial;
use berkram_core::{fixtures, json, rat, Error, FieldElem, Rational, Result};
use serde_json::{json, Value};

use crate::commands::Output;
use crate::Opts;

struct Checks(Vec<Value>);

impl Checks {
    fn add(&mut self, name: impl Into<String>, expected: impl ToString, actual: impl ToString) {
        let (e, a) = (expected.to_string(), actual.to_string());
        self.0.push(json!({ "name": name.into(), "expected": e, "actual": a, "pass": e == a }));
    }

    fn passed(&self) -> bool {
        self.0.iter().all(|c| c["pass"] == Value::Bool(true))
    }
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn run(which: &str, o: &Opts) -> Result<Output> {
    let mut checks = Checks(Vec::new());
    let mut body = json!({ "example": which, "p": o.p });
    match which {
        "6.1" => power_plus_z(o.p, &mut checks)?,
        "6.2" => {
            body["n"] = json!(o.n);
            wild_tube(o.p, o.deg, o.n, &mut checks)?
        }
        "6.3" => cubic_over_z(o.p, &mut checks)?,
        other => return Err(Error::Schema(format!("unknown example {other:?}; expected 6.1, 6.2 or 6.3"))),
    }
    let passed = checks.passed();
    body["checks"] = Value::Array(checks.0);
    body["passed"] = json!(passed);
    Ok(Output { stdout: json::report(&body)?, success: passed })
}

/// `z^p + z`: the Gauss point is ramified at distance `1/(p-1)` from the hull.
fn power_plus_z(p: u64, c: &mut Checks) -> Result<()> {
    let phi = fixtures::ex61(p)?;
    let zero = FieldElem::zero(phi.domain());
    let gauss = BerkPoint::at(zero.clone(), int(0));
    c.add("dist(hull, ζ(0, s=0))", rat(1, p as i64 - 1), dist_to_hull(&phi, &gauss)?);
    c.add("m(ζ(0, s=0))", p, multiplicity(&phi, &gauss)?);
    for s in [rat(1, 2), int(1), int(2)] {
        let x = BerkPoint::at(zero.clone(), s.clone());
        c.add(format!("m(ζ(0, s={s}))"), 1, multiplicity(&phi, &x)?);
    }
    Ok(())
}

/// `z^d + t^{-n} z^p + z` over `F_p(t)`: the ramified points escape the hull
/// linearly in `n`.
fn wild_tube(p: u64, d: usize, n: i64, c: &mut Checks) -> Result<()> {
    if p != 3 || d != 5 {
        return Err(Error::InvalidArgument("this example is stated for p = 3, d = 5".into()));
    }
    if n < 1 {
        return Err(Error::InvalidArgument(format!("n = {n} must be positive")));
    }
    let phi = fixtures::ex62(p, d, n)?;
    let zero = FieldElem::zero(phi.domain());
    let s = rat(n, 2);
    c.add(format!("zeros with ord >= {s}"), p, count_roots(phi.f(), &zero, &s, DiskMode::Closed)?);
    c.add(format!("zeros with ord > {s}"), 1, count_roots(phi.f(), &zero, &s, DiskMode::Open)?);
    let x = BerkPoint::at(zero, s.clone());
    c.add(format!("dist(hull, ζ(0, s={s}))"), &s, dist_to_hull(&phi, &x)?);
    c.add(format!("ramified(ζ(0, s={s}))"), true, is_ramified(&phi, &x)?);
    Ok(())
}

/// `(z^{p+1} + p)/z`: explicit auxiliary polynomial, `τ` at the Gauss point,
/// its profile along the segment to 0, and the ramified part of that segment.
fn cubic_over_z(p: u64, c: &mut Checks) -> Result<()> {
    let pi = p as i64;
    let phi = fixtures::ex63(p)?;
    let d = phi.domain();
    let zero = FieldElem::zero(d);
    let aux = aux_coeffs(&phi);
    let mut a0 = vec![0i64; p as usize + 2];
    a0[0] = -pi;
    a0[p as usize + 1] = pi;
    c.add("A_0", Poly::from_ints(d, &a0), aux.a(0));
    for l in 1..=p as usize {
        let mut m = vec![0i64; p as usize + 2 - l];
        m[p as usize + 1 - l] = 1;
        let expect = Poly::from_ints(d, &m).scale(&FieldElem::from_bigint(d, &binomial(p + 1, l as u64 + 1)));
        c.add(format!("A_{l}"), expect, aux.a(l));
    }
    let t = tau(&phi, &BerkPoint::at(zero.clone(), int(0)))?;
    c.add("τ(ζ(0, s=0))", rat(1, pi - 1), &t);

    let b = rat(1, pi + 1);
    let prof = profile_segment(&phi, &zero, &int(0), &int(1), Which::TFrak)?;
    let expect = [
        Piece { s0: int(0), s1: b.clone(), alpha: rat(1, pi - 1), beta: rat(-(pi + 1), pi - 1) },
        Piece { s0: b.clone(), s1: int(1), alpha: rat(1, pi), beta: rat(-(pi + 1), pi) },
    ];
    let show = |ps: &[Piece]| {
        ps.iter().map(|q| format!("[{}, {}]: {} + ({})s", q.s0, q.s1, q.alpha, q.beta)).collect::<Vec<_>>().join("; ")
    };
    c.add("𝔱 profile on [0, 1]", show(&expect), show(&prof.pieces));

    let mut last_ramified = None;
    let steps = 24 * (pi + 1);
    for k in 0..=steps {
        let s = rat(k, steps);
        if is_ramified(&phi, &BerkPoint::at(zero.clone(), s.clone()))? {
            last_ramified = Some(s);
        }
    }
    c.add(
        "ramified part of s ∈ [0, 1] along center 0 (sampled)",
        format!("s ≤ {b}"),
        last_ramified.map_or("none".to_string(), |s| format!("s ≤ {s}")),
    );
    Ok(())
}
