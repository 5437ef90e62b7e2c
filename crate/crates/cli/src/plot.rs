//! CSV and SVG renderings of a profile. Values stay exact in CSV; the SVG
//! converts to floating point only to place vertices.

use std::fmt::Write;

use berkram_core::auxram::{Profile, Which};
use berkram_core::Rational;
use num_traits::ToPrimitive;

/// `s,value` at every breakpoint and both endpoints.
pub fn csv(prof: &Profile) -> String {
    let mut out = String::from("s,value\n");
    for s in prof.breakpoints() {
        let v = prof.eval(&s).expect("breakpoints lie in the segment");
        let _ = writeln!(out, "{s},{v}");
    }
    out
}

fn f(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(0.0)
}

const W: f64 = 480.0;
const H: f64 = 320.0;
const M: f64 = 48.0;

pub fn svg(prof: &Profile, which: Which) -> String {
    let pts: Vec<(Rational, Rational)> = prof
        .breakpoints()
        .into_iter()
        .map(|s| {
            let v = prof.eval(&s).expect("breakpoints lie in the segment");
            (s, v)
        })
        .collect();
    let (s_lo, s_hi) = (f(&pts[0].0), f(&pts[pts.len() - 1].0));
    let v_lo = pts.iter().map(|p| f(&p.1)).fold(0.0f64, f64::min);
    let v_hi = pts.iter().map(|p| f(&p.1)).fold(0.0f64, f64::max);
    let span = |lo: f64, hi: f64| if hi > lo { hi - lo } else { 1.0 };
    let x = |s: f64| M + (s - s_lo) / span(s_lo, s_hi) * (W - 2.0 * M);
    let y = |v: f64| H - M - (v - v_lo) / span(v_lo, v_hi) * (H - 2.0 * M);
    let name = match which {
        Which::Tau => "τ",
        Which::TFrak => "𝔱",
    };

    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#);
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<line x1="{M}" y1="{0:.2}" x2="{1}" y2="{0:.2}" stroke="gray" stroke-dasharray="4 3"/>"#,
        y(0.0),
        W - M
    );
    let _ = writeln!(out, r#"<line x1="{M}" y1="{M}" x2="{M}" y2="{}" stroke="black"/>"#, H - M);
    let _ = writeln!(out, r#"<line x1="{M}" y1="{0}" x2="{1}" y2="{0}" stroke="black"/>"#, H - M, W - M);
    let poly: Vec<String> = pts.iter().map(|(s, v)| format!("{:.2},{:.2}", x(f(s)), y(f(v)))).collect();
    let _ = writeln!(out, r#"<polyline points="{}" fill="none" stroke="steelblue" stroke-width="2"/>"#, poly.join(" "));
    for (s, v) in &pts {
        let (px, py) = (x(f(s)), y(f(v)));
        let _ = writeln!(
            out,
            r#"<circle cx="{px:.2}" cy="{py:.2}" r="3" fill="steelblue"><title>s = {s}, {name} = {v}</title></circle>"#
        );
    }
    let _ = writeln!(out, r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">s</text>"#, W / 2.0, H - 12.0);
    let _ = writeln!(out, r#"<text x="14" y="{}" font-size="12">{name}</text>"#, H / 2.0);
    let _ =
        writeln!(out, r#"<text x="{M}" y="{}" font-size="10" text-anchor="middle">{}</text>"#, H - M + 14.0, pts[0].0);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="10" text-anchor="middle">{}</text>"#,
        W - M,
        H - M + 14.0,
        pts[pts.len() - 1].0
    );
    out.push_str("</svg>\n");
    out
}
