use std::fs;
use std::io::Read;

use berkram_core::apps::{app2_check, rolle_check, surjectivity_check};
use berkram_core::auxram::{
    aux_coeffs, classical_multiplicity, is_ramified, multiplicity, profile_segment, t_frak, tau, Which,
};
use berkram_core::berk::BerkPoint;
use berkram_core::hull::{
    binomial_val_min, check_theorem_d, critical_set, dist_to_hull, fuzz_analyze, in_tube, rational_roots,
};
use berkram_core::json::{self, domain_from_tag, parse_elem, parse_map_in, parse_point, parse_poly};
use berkram_core::newton::newton_polygon;
use berkram_core::poly::{wronskian, RationalMap};
use berkram_core::valfield::parse_rational;
use berkram_core::{fixtures, Domain, Error, ExtVal, FieldElem, Rational, Result};
use clap::Parser;
use serde_json::{json, Value};

use crate::{examples, plot, Cli, Command, Opts};

pub struct Output {
    pub stdout: String,
    pub success: bool,
}

impl Output {
    fn report(body: &Value) -> Result<Output> {
        Ok(Output { stdout: json::report(body)?, success: true })
    }
}

fn missing(flag: &str) -> Error {
    Error::Schema(format!("--{flag} is required"))
}

fn io(path: &str, e: std::io::Error) -> Error {
    Error::Io(format!("{path}: {e}"))
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| io("stdin", e))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| io(path, e))
    }
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Schema(format!("invalid JSON: {e}")))
}

fn domain(o: &Opts) -> Result<Domain> {
    domain_from_tag(&o.domain, o.p)
}

pub fn load_map(o: &Opts) -> Result<RationalMap> {
    let spec = o.map.as_deref().ok_or_else(|| missing("map"))?;
    match spec {
        "ex61" => fixtures::ex61(o.p),
        "ex62" => fixtures::ex62(o.p, o.deg, o.n),
        "ex63" => fixtures::ex63(o.p),
        s if s.trim_start().starts_with('{') => parse_map_in(domain(o)?, &parse_json(s)?),
        path => parse_map_in(domain(o)?, &parse_json(&read_input(path)?)?),
    }
}

fn rational(text: &str) -> Result<Rational> {
    parse_rational(text.trim())
}

fn elem(d: Domain, text: &str) -> Result<FieldElem> {
    parse_elem(d, &Value::String(text.trim().to_string()))
}

fn point(o: &Opts, d: Domain) -> Result<BerkPoint> {
    parse_point(d, o.point.as_deref().ok_or_else(|| missing("point"))?)
}

/// `--center` and `--s0`, falling back to `--point`.
fn disk(o: &Opts, d: Domain) -> Result<(FieldElem, Rational)> {
    if let Some(c) = &o.center {
        let s = o.s0.as_deref().ok_or_else(|| missing("s0"))?;
        return Ok((elem(d, c)?, rational(s)?));
    }
    let x = point(o, d)?;
    let s = x.finite_s()?.clone();
    Ok((x.center().clone(), s))
}

fn is_infinity(text: &str) -> bool {
    matches!(text.trim(), "inf" | "infinity" | "∞")
}

fn s(v: &Rational) -> Value {
    Value::String(v.to_string())
}

pub fn execute(cli: &Cli) -> Result<Output> {
    let o = &cli.opts;
    match &cli.command {
        Command::Example { which } => return examples::run(which, o),
        Command::Run { spec } => return run_spec(&read_input(spec)?),
        Command::Binomlemma { m } => {
            let (v, arg) = binomial_val_min(*m, o.p)?;
            let closed = if m % o.p == 0 {
                Rational::new((-1).into(), (o.p as i64 - 1).into())
            } else {
                Rational::from_integer(0.into())
            };
            return Output::report(&json!({
                "m": m, "p": o.p, "min": s(&v), "argmin": arg, "closedForm": s(&closed), "matchesClosedForm": v == closed,
            }));
        }
        Command::Fuzz { poly, delta } => {
            let d = domain(o)?;
            let f = parse_poly(d, &parse_json(poly)?)?;
            let rep = fuzz_analyze(&f, &elem(d, delta)?)?;
            return Output::report(&json::to_value(&rep)?);
        }
        Command::Newton { poly: Some(text) } if o.map.is_none() => {
            let p = parse_poly(domain(o)?, &parse_json(text)?)?;
            return newton_report(p, o);
        }
        _ => {}
    }

    let phi = load_map(o)?;
    let d = phi.domain();
    let body = match &cli.command {
        Command::Aux => json!({
            "map": json::to_value(&phi)?, "degree": phi.degree(), "aux": json::to_value(&aux_coeffs(&phi))?,
        }),
        Command::Wronskian => json!({ "map": json::to_value(&phi)?, "wronskian": json::to_value(&wronskian(&phi))? }),
        Command::Newton { poly } => {
            let p = match poly {
                Some(text) => parse_poly(d, &parse_json(text)?)?,
                None => wronskian(&phi),
            };
            return newton_report(p, o);
        }
        Command::Tau => json!({ "tau": s(&tau(&phi, &point(o, d)?)?) }),
        Command::Tfrak => json!({ "tfrak": s(&t_frak(&phi, &point(o, d)?)?) }),
        Command::Profile { which } => return profile(&phi, which, o),
        Command::Mult => match o.point.as_deref() {
            Some(t) if is_infinity(t) => json!({ "multiplicity": classical_multiplicity(&phi, None)? }),
            _ => json!({ "multiplicity": multiplicity(&phi, &point(o, d)?)? }),
        },
        Command::Ramified => json!({ "ramified": is_ramified(&phi, &point(o, d)?)? }),
        Command::Hulldist => json!({ "dist": s(&dist_to_hull(&phi, &point(o, d)?)?) }),
        Command::Tube { radius } => {
            let x = point(o, d)?;
            let r = rational(radius)?;
            json!({ "inTube": in_tube(&phi, &x, &r)?, "dist": s(&dist_to_hull(&phi, &x)?), "radius": s(&r) })
        }
        Command::Critical => json::to_value(&critical_set(&phi)?)?,
        Command::ThmD { points } => {
            let samples = match points {
                Some(list) => list
                    .split(';')
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| parse_point(d, t))
                    .collect::<Result<Vec<_>>>()?,
                None => default_grid(&phi),
            };
            let rep = check_theorem_d(&phi, &samples)?;
            let passed = rep.passed;
            let out = json::report(&rep)?;
            return Ok(Output { stdout: out, success: passed });
        }
        Command::Rolle { shift } => {
            let (a, s0) = disk(o, d)?;
            let shift = shift.as_deref().map(rational).transpose()?;
            json::to_value(&rolle_check(&phi, &a, &s0, shift)?)?
        }
        Command::Surjective => {
            let (a, s0) = disk(o, d)?;
            let mut body = json!({ "surjectivity": json::to_value(&surjectivity_check(&phi, &a, &s0)?)? });
            if d.is_char_zero() {
                body["criticalPoint"] = json::to_value(&app2_check(&phi, &a, &s0)?)?;
            }
            body
        }
        Command::Example { .. } | Command::Run { .. } | Command::Binomlemma { .. } | Command::Fuzz { .. } => {
            unreachable!("handled above")
        }
    };
    Output::report(&body)
}

fn newton_report(p: berkram_core::poly::Poly, o: &Opts) -> Result<Output> {
    let p = match &o.center {
        Some(c) => p.checked_taylor_shift(&elem(p.domain(), c)?)?,
        None => p,
    };
    let np = newton_polygon(&p)?;
    let vals: Vec<Value> = np.root_valuations().iter().map(|(v, k)| json!([v.to_string(), k])).collect();
    Output::report(&json!({ "polygon": json::to_value(&np)?, "rootValuations": vals }))
}

fn profile(phi: &RationalMap, which: &str, o: &Opts) -> Result<Output> {
    let d = phi.domain();
    let which = match which {
        "tau" => Which::Tau,
        "tfrak" => Which::TFrak,
        other => return Err(Error::Schema(format!("--which must be tau or tfrak, not {other:?}"))),
    };
    let a = elem(d, o.center.as_deref().ok_or_else(|| missing("center"))?)?;
    let s0 = rational(o.s0.as_deref().ok_or_else(|| missing("s0"))?)?;
    let s1 = rational(o.s1.as_deref().ok_or_else(|| missing("s1"))?)?;
    let prof = profile_segment(phi, &a, &s0, &s1, which)?;
    if let Some(path) = &o.plot {
        fs::write(path, plot::svg(&prof, which)).map_err(|e| io(path, e))?;
    }
    let mut out = String::new();
    if o.csv {
        out.push_str(&plot::csv(&prof));
    }
    if !o.csv || o.json {
        out.push_str(&json::report(&json!({ "profile": json::to_value(&prof)?, "max": s(&prof.max()) }))?);
    }
    Ok(Output { stdout: out, success: true })
}

/// Centers at small integers, `1/p` and the base-field critical points;
/// radii from `-2` to `3` in steps of `1/4`.
fn default_grid(phi: &RationalMap) -> Vec<BerkPoint> {
    let d = phi.domain();
    let p = d.p() as i64;
    let mut centers: Vec<FieldElem> = [0, 1, -1, 2, p].iter().map(|&a| FieldElem::from_int(d, a)).collect();
    centers.push(FieldElem::uniformizer_pow(d, -1));
    centers.extend(rational_roots(&wronskian(phi)).0);
    let mut out = Vec::new();
    for a in &centers {
        for k in -8..=12 {
            out.push(BerkPoint::new(a.clone(), ExtVal::Finite(Rational::new(k.into(), 4.into()))));
        }
    }
    out
}

const COMMANDS: &[&str] = &[
    "aux",
    "wronskian",
    "newton",
    "tau",
    "tfrak",
    "profile",
    "mult",
    "ramified",
    "hulldist",
    "tube",
    "critical",
    "thmD",
    "fuzz",
    "binomlemma",
    "rolle",
    "surjective",
    "example",
];

/// `{"command": ..., "domain": {"tag", "p"}, "map": {...} | "ex61", "params": {...}, "output": {...}}`.
///
/// The spec is turned into command-line arguments and parsed like any
/// other invocation, so both paths validate identically.
pub fn run_spec(text: &str) -> Result<Output> {
    let v = parse_json(text)?;
    let obj = v.as_object().ok_or_else(|| Error::Schema("job spec must be an object".into()))?;
    let command = obj
        .get("command")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Schema("job spec needs a string \"command\"".into()))?;
    if !COMMANDS.contains(&command) {
        return Err(Error::Schema(format!("unknown command {command:?}")));
    }
    let mut argv: Vec<String> = vec!["berkram".into(), command.into()];
    let params = obj.get("params").cloned().unwrap_or(json!({}));
    if command == "example" {
        let which = params.get("which").ok_or_else(|| Error::Schema("example needs params.which".into()))?;
        argv.push(scalar(which)?);
    }
    if let Some(dom) = obj.get("domain") {
        let tag = dom.get("tag").and_then(Value::as_str).ok_or_else(|| Error::Schema("domain.tag missing".into()))?;
        let p = dom.get("p").and_then(Value::as_u64).ok_or_else(|| Error::Schema("domain.p missing".into()))?;
        argv.extend(["--domain".into(), tag.into(), "--p".into(), p.to_string()]);
    }
    match obj.get("map") {
        Some(Value::String(name)) => argv.extend(["--map".into(), name.clone()]),
        Some(m @ Value::Object(_)) => argv.extend(["--map".into(), m.to_string()]),
        Some(other) => return Err(Error::Schema(format!("bad map {other}"))),
        None => {}
    }
    let push_flags = |section: &Value, argv: &mut Vec<String>| -> Result<()> {
        let Some(map) = section.as_object() else {
            return Err(Error::Schema("params and output must be objects".into()));
        };
        for (k, val) in map {
            if command == "example" && k == "which" {
                continue;
            }
            match val {
                Value::Bool(true) => argv.push(format!("--{k}")),
                Value::Bool(false) | Value::Null => {}
                other => argv.extend([format!("--{k}"), scalar(other)?]),
            }
        }
        Ok(())
    };
    push_flags(&params, &mut argv)?;
    if let Some(out) = obj.get("output") {
        push_flags(out, &mut argv)?;
    }
    let cli = Cli::try_parse_from(&argv).map_err(|e| crate::usage_error(&e))?;
    execute(&cli)
}

fn scalar(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        Value::Array(_) | Value::Object(_) => Ok(v.to_string()),
        other => Err(Error::Schema(format!("bad parameter {other}"))),
    }
}
