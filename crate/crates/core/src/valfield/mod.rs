//! Exact coefficient fields with their valuations.
//!
//! Two ground fields are supported: the rationals with the `p`-adic
//! valuation (a dense subfield of `Q_p`), and rational functions in `t`
//! over `F_p` with the `t`-adic valuation (a dense subfield of `F_p((t))`).
//! Valuations are normalized so that `ord(p) = 1`, resp. `ord(t) = 1`;
//! every logarithmic radius elsewhere in the crate is measured in these
//! units.

mod extval;
pub mod fpoly;
mod hensel;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

pub use extval::ExtVal;
pub use fpoly::FpPoly;
pub use hensel::{hensel_lift, PAdicApprox};

use crate::error::{Error, Result};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DomainKind {
    /// Rationals with the p-adic valuation; characteristic zero.
    PAdic,
    /// `F_p(t)` with the t-adic valuation; characteristic p.
    TAdic,
}

/// A ground field together with its residue characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Domain {
    kind: DomainKind,
    p: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Domain {
    pub fn new(kind: DomainKind, p: u64) -> Result<Self> {
        // products of two residues must fit in a u64
        if !is_prime(p) || p >= 1 << 31 {
            return Err(Error::NotPrime(p));
        }
        Ok(Domain { kind, p })
    }

    pub fn padic(p: u64) -> Result<Self> {
        Self::new(DomainKind::PAdic, p)
    }

    pub fn tadic(p: u64) -> Result<Self> {
        Self::new(DomainKind::TAdic, p)
    }

    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    /// Residue characteristic.
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Characteristic of the field itself: 0 for p-adic, p for t-adic.
    pub fn characteristic(&self) -> u64 {
        match self.kind {
            DomainKind::PAdic => 0,
            DomainKind::TAdic => self.p,
        }
    }

    pub fn is_char_zero(&self) -> bool {
        self.kind == DomainKind::PAdic
    }

    pub fn tag(&self) -> &'static str {
        match self.kind {
            DomainKind::PAdic => "Qp",
            DomainKind::TAdic => "Fpt",
        }
    }

    pub fn check(&self, other: &Domain) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::DomainMismatch(*self, *other))
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.tag(), self.p)
    }
}

impl Serialize for Domain {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("p", &self.p)?;
        map.serialize_entry("tag", self.tag())?;
        map.end()
    }
}

/// Parse `"a"` or `"a/b"` into a canonical rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Schema(format!("malformed rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Schema(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// p-adic valuation of a nonzero integer.
pub(crate) fn ord_int(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

fn strip_p(n: &BigInt, p: u64) -> BigInt {
    let pb = BigInt::from(p);
    let mut n = n.clone();
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return n;
        }
        n = q;
    }
}

fn bigint_mod_p(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64")
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Rat(Rational),
    /// Reduced fraction with monic denominator.
    Fn {
        num: FpPoly,
        den: FpPoly,
    },
}

/// An exact element of one of the two supported ground fields.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    domain: Domain,
    repr: Repr,
}

impl FieldElem {
    pub fn zero(domain: Domain) -> Self {
        match domain.kind {
            DomainKind::PAdic => FieldElem { domain, repr: Repr::Rat(Rational::zero()) },
            DomainKind::TAdic => {
                FieldElem { domain, repr: Repr::Fn { num: FpPoly::zero(domain.p), den: FpPoly::one(domain.p) } }
            }
        }
    }

    pub fn one(domain: Domain) -> Self {
        Self::from_int(domain, 1)
    }

    pub fn from_int(domain: Domain, n: i64) -> Self {
        Self::from_bigint(domain, &BigInt::from(n))
    }

    /// Image of an integer under the canonical map `Z -> k`.
    pub fn from_bigint(domain: Domain, n: &BigInt) -> Self {
        match domain.kind {
            DomainKind::PAdic => FieldElem { domain, repr: Repr::Rat(Rational::from_integer(n.clone())) },
            DomainKind::TAdic => FieldElem {
                domain,
                repr: Repr::Fn {
                    num: FpPoly::constant(domain.p, bigint_mod_p(n, domain.p)),
                    den: FpPoly::one(domain.p),
                },
            },
        }
    }

    /// Image of a rational; in the t-adic domain the denominator must be prime to p.
    pub fn from_rational(domain: Domain, q: &Rational) -> Result<Self> {
        match domain.kind {
            DomainKind::PAdic => Ok(FieldElem { domain, repr: Repr::Rat(q.clone()) }),
            DomainKind::TAdic => {
                let n = Self::from_bigint(domain, q.numer());
                let d = Self::from_bigint(domain, q.denom());
                n.checked_div(&d)
            }
        }
    }

    /// `num / den` in `F_p(t)`.
    pub fn from_fp_fraction(domain: Domain, num: FpPoly, den: FpPoly) -> Result<Self> {
        if domain.kind != DomainKind::TAdic {
            return Err(Error::InvalidArgument(format!("polynomial fraction in {domain}")));
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = FpPoly::from_coeffs(domain.p, num.coeffs().to_vec());
        let den = FpPoly::from_coeffs(domain.p, den.coeffs().to_vec());
        Ok(Self::canonical_fn(domain, num, den))
    }

    fn canonical_fn(domain: Domain, num: FpPoly, den: FpPoly) -> Self {
        let p = domain.p;
        if num.is_zero() {
            return Self::zero(domain);
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num.div_rem(&g).0, den.div_rem(&g).0);
        let lead = den.leading();
        if lead != 1 {
            let inv = fpoly::mod_inv(lead, p);
            num = num.scale(inv);
            den = den.scale(inv);
        }
        FieldElem { domain, repr: Repr::Fn { num, den } }
    }

    /// The uniformizer: `p` in the p-adic domain, `t` in the t-adic one.
    pub fn uniformizer(domain: Domain) -> Self {
        match domain.kind {
            DomainKind::PAdic => Self::from_int(domain, domain.p as i64),
            DomainKind::TAdic => FieldElem {
                domain,
                repr: Repr::Fn { num: FpPoly::monomial(domain.p, 1, 1), den: FpPoly::one(domain.p) },
            },
        }
    }

    /// `uniformizer^k` for any integer k.
    pub fn uniformizer_pow(domain: Domain, k: i64) -> Self {
        let pi = Self::uniformizer(domain);
        let pos = pi.pow_u(k.unsigned_abs());
        if k >= 0 {
            pos
        } else {
            Self::one(domain).checked_div(&pos).expect("uniformizer is nonzero")
        }
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rat(q) => q.is_zero(),
            Repr::Fn { num, .. } => num.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Rat(q) => q.is_one(),
            Repr::Fn { num, den } => num.is_one() && den.is_one(),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match &self.repr {
            Repr::Rat(q) => Some(q),
            Repr::Fn { .. } => None,
        }
    }

    pub fn as_fp_fraction(&self) -> Option<(&FpPoly, &FpPoly)> {
        match &self.repr {
            Repr::Fn { num, den } => Some((num, den)),
            Repr::Rat(_) => None,
        }
    }

    /// The valuation; `ord(0) = +inf`.
    pub fn ord(&self) -> ExtVal {
        if self.is_zero() {
            return ExtVal::Infinity;
        }
        ExtVal::from_int(self.ord_i64())
    }

    /// Integer valuation of a nonzero element.
    fn ord_i64(&self) -> i64 {
        match &self.repr {
            Repr::Rat(q) => ord_int(q.numer(), self.domain.p) - ord_int(q.denom(), self.domain.p),
            Repr::Fn { num, den } => {
                num.trailing_zeros().expect("nonzero") as i64
                    - den.trailing_zeros().expect("nonzero denominator") as i64
            }
        }
    }

    /// Residue in `F_p^x` of `x / uniformizer^ord(x)`; `None` for zero.
    pub fn unit_residue(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let p = self.domain.p;
        Some(match &self.repr {
            Repr::Rat(q) => {
                let n = bigint_mod_p(&strip_p(q.numer(), p), p);
                let d = bigint_mod_p(&strip_p(q.denom(), p), p);
                n * fpoly::mod_inv(d, p) % p
            }
            Repr::Fn { num, den } => {
                let n = num.coeffs()[num.trailing_zeros().expect("nonzero")];
                let d = den.coeffs()[den.trailing_zeros().expect("nonzero")];
                n * fpoly::mod_inv(d, p) % p
            }
        })
    }

    /// Residue class of an integral element; `None` when `ord < 0`.
    pub fn residue(&self) -> Option<u64> {
        match self.ord() {
            ExtVal::Infinity => Some(0),
            ExtVal::Finite(v) if v.is_positive() => Some(0),
            ExtVal::Finite(v) if v.is_zero() => self.unit_residue(),
            ExtVal::Finite(_) => None,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.domain.check(&other.domain)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.domain.check(&other.domain)?;
        Ok(self.add_unchecked(&other.neg_ref()))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.domain.check(&other.domain)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.domain.check(&other.domain)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.mul_unchecked(&other.inverse_unchecked()))
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inverse_unchecked())
    }

    fn inverse_unchecked(&self) -> Self {
        match &self.repr {
            Repr::Rat(q) => FieldElem { domain: self.domain, repr: Repr::Rat(q.recip()) },
            Repr::Fn { num, den } => Self::canonical_fn(self.domain, den.clone(), num.clone()),
        }
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        match (&self.repr, &other.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => FieldElem { domain: self.domain, repr: Repr::Rat(a + b) },
            (Repr::Fn { num: a, den: b }, Repr::Fn { num: c, den: d }) => {
                if b == d {
                    return Self::canonical_fn(self.domain, a.add(c), b.clone());
                }
                Self::canonical_fn(self.domain, a.mul(d).add(&c.mul(b)), b.mul(d))
            }
            _ => unreachable!("representation does not match domain"),
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        match (&self.repr, &other.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => FieldElem { domain: self.domain, repr: Repr::Rat(a * b) },
            (Repr::Fn { num: a, den: b }, Repr::Fn { num: c, den: d }) => {
                Self::canonical_fn(self.domain, a.mul(c), b.mul(d))
            }
            _ => unreachable!("representation does not match domain"),
        }
    }

    fn neg_ref(&self) -> Self {
        match &self.repr {
            Repr::Rat(q) => FieldElem { domain: self.domain, repr: Repr::Rat(-q) },
            Repr::Fn { num, den } => {
                FieldElem { domain: self.domain, repr: Repr::Fn { num: num.neg(), den: den.clone() } }
            }
        }
    }

    pub fn pow_u(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.domain);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let pos = self.pow_u(e.unsigned_abs());
        if e >= 0 {
            Ok(pos)
        } else {
            pos.inverse()
        }
    }

    /// Text form: a rational for p-adic elements, `num/den` in `t` otherwise.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

/// One of the four field operations, for [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked field arithmetic.
pub fn arith(x: &FieldElem, y: &FieldElem, op: ArithOp) -> Result<FieldElem> {
    match op {
        ArithOp::Add => x.checked_add(y),
        ArithOp::Sub => x.checked_sub(y),
        ArithOp::Mul => x.checked_mul(y),
        ArithOp::Div => x.checked_div(y),
    }
}

// Operator impls panic on mismatched domains; use the `checked_*` methods
// where the inputs come from outside the crate.
impl Add for &FieldElem {
    type Output = FieldElem;

    fn add(self, rhs: &FieldElem) -> FieldElem {
        assert_eq!(self.domain, rhs.domain, "field elements from different domains");
        self.add_unchecked(rhs)
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;

    fn sub(self, rhs: &FieldElem) -> FieldElem {
        assert_eq!(self.domain, rhs.domain, "field elements from different domains");
        self.add_unchecked(&rhs.neg_ref())
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;

    fn mul(self, rhs: &FieldElem) -> FieldElem {
        assert_eq!(self.domain, rhs.domain, "field elements from different domains");
        self.mul_unchecked(rhs)
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;

    fn neg(self) -> FieldElem {
        self.neg_ref()
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rat(q) => write!(f, "{q}"),
            Repr::Fn { num, den } if den.is_one() => write!(f, "{num}"),
            Repr::Fn { num, den } => write!(f, "({num})/({den})"),
        }
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self, self.domain)
    }
}

impl Serialize for FieldElem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match &self.repr {
            Repr::Rat(q) => serializer.collect_str(q),
            Repr::Fn { num, den } => {
                let mut map = serializer.serialize_map(Some(2))?;
                map.serialize_entry("den", den.coeffs())?;
                map.serialize_entry("num", num.coeffs())?;
                map.end()
            }
        }
    }
}

/// Binomial coefficient as an exact integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
