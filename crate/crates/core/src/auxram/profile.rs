//! Exact piecewise-affine profiles of `𝔱` and `τ` along `s ↦ ζ_{a,s}`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{aux_coeffs, AuxPolynomial};
use crate::berk::BerkPoint;
use crate::error::{Error, Result};
use crate::poly::RationalMap;
use crate::valfield::FieldElem;
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Tau,
    TFrak,
}

/// `alpha + beta·s` on `[s0, s1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub s0: Rational,
    pub s1: Rational,
    pub alpha: Rational,
    pub beta: Rational,
}

impl Piece {
    pub fn eval(&self, s: &Rational) -> Rational {
        &self.alpha + &self.beta * s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    pub center: FieldElem,
    pub pieces: Vec<Piece>,
}

impl Profile {
    /// Value at `s`; `None` outside the covered interval.
    pub fn eval(&self, s: &Rational) -> Option<Rational> {
        self.pieces.iter().find(|p| &p.s0 <= s && s <= &p.s1).map(|p| p.eval(s))
    }

    /// Maximum over the whole segment; attained at a breakpoint or an endpoint.
    pub fn max(&self) -> Rational {
        self.pieces.iter().flat_map(|p| [p.eval(&p.s0), p.eval(&p.s1)]).max().expect("profiles have at least one piece")
    }

    pub fn breakpoints(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = self.pieces.iter().map(|p| p.s0.clone()).collect();
        if let Some(last) = self.pieces.last() {
            out.push(last.s1.clone());
        }
        out
    }
}

#[derive(Serialize)]
struct PieceJson {
    s0: String,
    s1: String,
    alpha: String,
    beta: String,
}

impl Serialize for Profile {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<PieceJson> = self
            .pieces
            .iter()
            .map(|p| PieceJson {
                s0: p.s0.to_string(),
                s1: p.s1.to_string(),
                alpha: p.alpha.to_string(),
                beta: p.beta.to_string(),
            })
            .collect();
        rows.serialize(serializer)
    }
}

fn int(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `(ord q_i, i)` lines whose lower envelope is `s ↦ seminorm_ord(A, ζ_{a,s})`.
fn lines(aux: &AuxPolynomial, center: &FieldElem) -> Vec<Vec<(Rational, Rational)>> {
    aux.coeffs
        .iter()
        .map(|a| {
            a.taylor_shift(center)
                .coeffs()
                .iter()
                .enumerate()
                .filter_map(|(i, c)| c.ord().finite().map(|v| (v.clone(), int(i))))
                .collect()
        })
        .collect()
}

/// Active line of a lower envelope at `s` (strictly inside an envelope piece).
fn active(ls: &[(Rational, Rational)], s: &Rational) -> (Rational, Rational) {
    ls.iter().min_by(|x, y| (&x.0 + &x.1 * s).cmp(&(&y.0 + &y.1 * s))).cloned().expect("nonzero polynomial")
}

fn crossings(ls: &[(Rational, Rational)], lo: &Rational, hi: &Rational, out: &mut Vec<Rational>) {
    for (i, a) in ls.iter().enumerate() {
        for b in &ls[i + 1..] {
            if a.1 != b.1 {
                let s = (&b.0 - &a.0) / (&a.1 - &b.1);
                if lo < &s && &s < hi {
                    out.push(s);
                }
            }
        }
    }
}

fn sorted_cuts(mut cuts: Vec<Rational>, lo: &Rational, hi: &Rational) -> Vec<Rational> {
    cuts.push(lo.clone());
    cuts.push(hi.clone());
    cuts.sort();
    cuts.dedup();
    cuts
}

/// Piecewise-affine description of `s ↦ 𝔱(ζ_{a,s})` (or `τ`) on `[s0, s1]`.
///
/// Each `seminorm_ord(A_ℓ, ·)` is a lower envelope of lines; between
/// consecutive envelope breakpoints every candidate `(v_0 - v_ℓ)/ℓ - s` is
/// affine, and the upper envelope of those candidates is split again at
/// their pairwise crossings. Adjacent pieces with the same affine function
/// are merged.
pub fn profile_segment(
    phi: &RationalMap,
    a: &FieldElem,
    s0: &Rational,
    s1: &Rational,
    which: Which,
) -> Result<Profile> {
    phi.domain().check(&a.domain())?;
    if s0 > s1 {
        return Err(Error::InvalidArgument(format!("empty segment [{s0}, {s1}]")));
    }
    let aux = aux_coeffs(phi);
    if s0 == s1 {
        let x = BerkPoint::at(a.clone(), s0.clone());
        let t = aux.t_frak_at(&x)?;
        let v = match (which, t) {
            (Which::Tau, t) => t.unwrap_or_else(Rational::zero).max(Rational::zero()),
            (Which::TFrak, Some(t)) => t,
            (Which::TFrak, None) => return Err(Error::InvalidArgument("degree-one map: 𝔱 is -inf".into())),
        };
        return Ok(Profile {
            center: a.clone(),
            pieces: vec![Piece { s0: s0.clone(), s1: s1.clone(), alpha: v, beta: Rational::zero() }],
        });
    }
    if aux.len() < 2 {
        return match which {
            Which::Tau => Ok(Profile {
                center: a.clone(),
                pieces: vec![Piece { s0: s0.clone(), s1: s1.clone(), alpha: Rational::zero(), beta: Rational::zero() }],
            }),
            Which::TFrak => Err(Error::InvalidArgument("degree-one map: 𝔱 is -inf".into())),
        };
    }

    let env = lines(&aux, a);
    let mut cuts = Vec::new();
    for ls in &env {
        crossings(ls, s0, s1, &mut cuts);
    }
    let cuts = sorted_cuts(cuts, s0, s1);
    let two = int(2);

    let mut pieces: Vec<Piece> = Vec::new();
    for w in cuts.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        let mid = (lo + hi) / &two;
        let (c0, i0) = active(&env[0], &mid);
        // candidate affine functions alpha + beta·s
        let mut cands: Vec<(Rational, Rational)> = env
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, ls)| !ls.is_empty())
            .map(|(l, ls)| {
                let (cl, il) = active(ls, &mid);
                let l = int(l);
                ((&c0 - cl) / &l, (&i0 - il) / &l - Rational::one())
            })
            .collect();
        if which == Which::Tau {
            cands.push((Rational::zero(), Rational::zero()));
        }
        let mut sub = Vec::new();
        crossings(&cands, lo, hi, &mut sub);
        let sub = sorted_cuts(sub, lo, hi);
        for v in sub.windows(2) {
            let m = (&v[0] + &v[1]) / &two;
            let (alpha, beta) = cands
                .iter()
                .max_by(|x, y| (&x.0 + &x.1 * &m).cmp(&(&y.0 + &y.1 * &m)))
                .cloned()
                .expect("at least one candidate");
            match pieces.last_mut() {
                Some(last) if last.alpha == alpha && last.beta == beta => last.s1 = v[1].clone(),
                _ => pieces.push(Piece { s0: v[0].clone(), s1: v[1].clone(), alpha, beta }),
            }
        }
    }
    Ok(Profile { center: a.clone(), pieces })
}
