//! JSON input for maps and points, and canonical (sorted-key, exact)
//! report output.

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::berk::BerkPoint;
use crate::error::{Error, Result};
use crate::poly::{Poly, RationalMap};
use crate::valfield::{parse_rational, Domain, DomainKind, ExtVal, FieldElem, FpPoly};

pub const SCHEMA_VERSION: u64 = 1;

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

/// `{"tag": "Qp" | "Fpt", "p": n}`; tags are case-insensitive.
pub fn parse_domain(v: &Value) -> Result<Domain> {
    let tag = v.get("tag").and_then(Value::as_str).ok_or_else(|| schema("domain.tag missing"))?;
    let p = v.get("p").and_then(Value::as_u64).ok_or_else(|| schema("domain.p missing"))?;
    domain_from_tag(tag, p)
}

pub fn domain_from_tag(tag: &str, p: u64) -> Result<Domain> {
    match tag.to_ascii_lowercase().as_str() {
        "qp" | "padic" => Domain::padic(p),
        "fpt" | "tadic" => Domain::tadic(p),
        other => Err(schema(format!("unknown domain tag {other:?}"))),
    }
}

fn coeff_list(v: &Value, p: u64) -> Result<FpPoly> {
    let arr = v.as_array().ok_or_else(|| schema("t-polynomial must be an array"))?;
    let c = arr
        .iter()
        .map(|x| x.as_i64().ok_or_else(|| schema(format!("bad F_p coefficient {x}"))))
        .collect::<Result<Vec<i64>>>()?;
    Ok(FpPoly::from_signed(p, &c))
}

/// One monomial `c`, `t`, `t^k`, `c*t` or `c*t^k` (`k` may be negative).
fn parse_monomial(d: Domain, s: &str) -> Result<FieldElem> {
    let bad = || schema(format!("malformed t-adic term {s:?}"));
    let (coef, tpart) = match s.find('t') {
        None => (s, None),
        Some(i) => (s[..i].trim_end_matches('*'), Some(&s[i + 1..])),
    };
    let c = match coef {
        "" | "+" => FieldElem::one(d),
        "-" => FieldElem::from_int(d, -1),
        c => FieldElem::from_rational(d, &parse_rational(c)?).map_err(|_| bad())?,
    };
    let k = match tpart {
        None => 0,
        Some("") => 1,
        Some(e) => {
            e.strip_prefix('^').ok_or_else(bad)?.trim_matches(|c| c == '(' || c == ')').parse().map_err(|_| bad())?
        }
    };
    Ok(&c * &FieldElem::uniformizer_pow(d, k))
}

/// A sum of monomials in `t`, or `(A)/(B)`.
pub fn parse_t_expr(d: Domain, s: &str) -> Result<FieldElem> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(schema("empty t-adic expression"));
    }
    if let Some(rest) = s.strip_prefix('(') {
        if let Some((a, b)) = rest.split_once(")/(") {
            let b = b.strip_suffix(')').ok_or_else(|| schema(format!("unbalanced {s:?}")))?;
            return parse_t_expr(d, a)?.checked_div(&parse_t_expr(d, b)?).map_err(|_| schema("division by zero"));
        }
    }
    let mut acc = FieldElem::zero(d);
    let mut start = 0;
    let bytes = s.as_bytes();
    for i in 1..=bytes.len() {
        let split = i == bytes.len()
            || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' && bytes[i - 1] != b'(');
        if split {
            acc = &acc + &parse_monomial(d, &s[start..i])?;
            start = i;
        }
    }
    Ok(acc)
}

/// A field element from a JSON string, integer, or (t-adic) `{"num": [...], "den": [...]}`.
pub fn parse_elem(d: Domain, v: &Value) -> Result<FieldElem> {
    match v {
        Value::Number(n) => {
            let n = n.as_i64().ok_or_else(|| schema(format!("non-integer number {n}; use a string")))?;
            Ok(FieldElem::from_int(d, n))
        }
        Value::String(s) => match d.kind() {
            DomainKind::PAdic => FieldElem::from_rational(d, &parse_rational(s)?),
            DomainKind::TAdic => parse_t_expr(d, s),
        },
        Value::Object(o) if d.kind() == DomainKind::TAdic => {
            let num = coeff_list(o.get("num").ok_or_else(|| schema("missing num"))?, d.p())?;
            let den = match o.get("den") {
                Some(v) => coeff_list(v, d.p())?,
                None => FpPoly::one(d.p()),
            };
            if den.is_zero() {
                return Err(schema("zero denominator"));
            }
            FieldElem::from_fp_fraction(d, num, den)
        }
        other => Err(schema(format!("bad coefficient {other}"))),
    }
}

pub fn parse_poly(d: Domain, v: &Value) -> Result<Poly> {
    let arr = v.as_array().ok_or_else(|| schema("polynomial must be an array of coefficients"))?;
    let coeffs = arr.iter().map(|c| parse_elem(d, c)).collect::<Result<Vec<_>>>()?;
    Poly::new(d, coeffs)
}

/// `{"f": [...], "g": [...], "domain": {...}}`; `g` defaults to `[1]`.
pub fn parse_map(v: &Value) -> Result<RationalMap> {
    let d = parse_domain(v.get("domain").ok_or_else(|| schema("map.domain missing"))?)?;
    parse_map_in(d, v)
}

/// Like [`parse_map`], with the domain supplied separately when absent.
pub fn parse_map_in(d: Domain, v: &Value) -> Result<RationalMap> {
    let d = match v.get("domain") {
        Some(dv) => parse_domain(dv)?,
        None => d,
    };
    let f = parse_poly(d, v.get("f").ok_or_else(|| schema("map.f missing"))?)?;
    let g = match v.get("g") {
        Some(g) => parse_poly(d, g)?,
        None => Poly::one(d),
    };
    RationalMap::new(f, g)
}

/// `"a,s"`: center and log-radius, split at the last comma; `s` may be `inf`.
pub fn parse_point(d: Domain, text: &str) -> Result<BerkPoint> {
    let (a, s) = text.rsplit_once(',').ok_or_else(|| schema(format!("point {text:?} is not \"a,s\"")))?;
    let a = parse_elem(d, &Value::String(a.trim().to_string()))?;
    Ok(BerkPoint::new(a, ExtVal::parse(s.trim())?))
}

/// Round-trip through `serde_json::Value`, whose maps are ordered by key.
pub fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| schema(e.to_string()))
}

/// A report object with `schemaVersion` added, pretty-printed with sorted keys.
pub fn report<T: Serialize>(body: &T) -> Result<String> {
    let mut obj = match to_value(body)? {
        Value::Object(o) => o,
        other => {
            let mut o = Map::new();
            o.insert("result".into(), other);
            o
        }
    };
    obj.insert("schemaVersion".into(), Value::from(SCHEMA_VERSION));
    let mut s = serde_json::to_string_pretty(&Value::Object(obj)).map_err(|e| schema(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// `{"error": {"kind": ..., "message": ...}}`.
pub fn error_report(e: &Error) -> String {
    let v = serde_json::json!({"error": {"kind": e.kind(), "message": e.to_string()}});
    let mut s = serde_json::to_string_pretty(&v).expect("plain JSON");
    s.push('\n');
    s
}

/// Parse an integer given as a JSON number or string.
pub fn parse_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| schema(format!("bad integer {n}"))),
        Value::String(s) => s.trim().parse().map_err(|_| schema(format!("bad integer {s:?}"))),
        other => Err(schema(format!("bad integer {other}"))),
    }
}

/// Serde helpers that print rationals as strings (`"3"`, `"-1/2"`).
pub mod ser {
    use serde::Serializer;

    use crate::Rational;

    pub fn rational<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(q)
    }

    pub fn opt_rational<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.collect_str(q),
            None => s.serialize_none(),
        }
    }
}
