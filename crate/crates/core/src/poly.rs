//! Dense univariate polynomials and rational maps over a [`Domain`].

use std::fmt;

use num_bigint::BigInt;
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::valfield::{binomial, Domain, ExtVal, FieldElem};
use crate::Rational;

/// Polynomial with coefficients indexed by exponent; never has a trailing zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    domain: Domain,
    coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn zero(domain: Domain) -> Self {
        Poly { domain, coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElem) -> Self {
        let domain = c.domain();
        Self::from_vec(domain, vec![c])
    }

    pub fn one(domain: Domain) -> Self {
        Self::constant(FieldElem::one(domain))
    }

    /// The polynomial `z`.
    pub fn x(domain: Domain) -> Self {
        Self::monomial(FieldElem::one(domain), 1)
    }

    pub fn monomial(c: FieldElem, k: usize) -> Self {
        let domain = c.domain();
        let mut coeffs = vec![FieldElem::zero(domain); k];
        coeffs.push(c);
        Self::from_vec(domain, coeffs)
    }

    /// Build from coefficients, checking that they all live in `domain`.
    pub fn new(domain: Domain, coeffs: Vec<FieldElem>) -> Result<Self> {
        for c in &coeffs {
            domain.check(&c.domain())?;
        }
        Ok(Self::from_vec(domain, coeffs))
    }

    fn from_vec(domain: Domain, mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(FieldElem::is_zero) {
            coeffs.pop();
        }
        Poly { domain, coeffs }
    }

    pub fn from_ints(domain: Domain, coeffs: &[i64]) -> Self {
        Self::from_vec(domain, coeffs.iter().map(|&c| FieldElem::from_int(domain, c)).collect())
    }

    pub fn from_rationals(domain: Domain, coeffs: &[Rational]) -> Result<Self> {
        let coeffs = coeffs.iter().map(|c| FieldElem::from_rational(domain, c)).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_vec(domain, coeffs))
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    /// Coefficient of `z^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| FieldElem::zero(self.domain))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `deg 0 = 0`; convenient when the zero case is harmless.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> FieldElem {
        self.coeffs.last().cloned().unwrap_or_else(|| FieldElem::zero(self.domain))
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Order of vanishing at `z = 0`; `None` for the zero polynomial.
    pub fn trailing_zeros(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Order of vanishing at `z = c`.
    pub fn ord_at(&self, c: &FieldElem) -> Option<usize> {
        self.taylor_shift(c).trailing_zeros()
    }

    /// Minimum coefficient valuation (the Gauss norm in ord units).
    pub fn content_ord(&self) -> ExtVal {
        self.coeffs.iter().map(FieldElem::ord).min().unwrap_or(ExtVal::Infinity)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.domain.check(&other.domain)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Self::from_vec(self.domain, (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect()))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.domain.check(&other.domain)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.domain));
        }
        let mut out = vec![FieldElem::zero(self.domain); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Ok(Self::from_vec(self.domain, out))
    }

    /// Panicking variants for internal use where domains are known to agree.
    pub fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("polynomials from the same domain")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.checked_sub(other).expect("polynomials from the same domain")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("polynomials from the same domain")
    }

    pub fn neg(&self) -> Self {
        Poly { domain: self.domain, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        Self::from_vec(self.domain, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `z^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![FieldElem::zero(self.domain); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { domain: self.domain, coeffs }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(self.domain);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &FieldElem) -> FieldElem {
        assert_eq!(self.domain, x.domain(), "evaluation point from another domain");
        self.coeffs.iter().rev().fold(FieldElem::zero(self.domain), |acc, c| &(&acc * x) + c)
    }

    /// Formal derivative; in characteristic p the factor `i` is reduced mod p.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| &FieldElem::from_int(self.domain, i as i64) * c)
            .collect();
        Self::from_vec(self.domain, coeffs)
    }

    /// `P(z + a)` by binomial expansion.
    pub fn taylor_shift(&self, a: &FieldElem) -> Self {
        assert_eq!(self.domain, a.domain(), "shift from another domain");
        if a.is_zero() || self.is_zero() {
            return self.clone();
        }
        let n = self.coeffs.len();
        let powers: Vec<FieldElem> =
            std::iter::successors(Some(FieldElem::one(self.domain)), |x| Some(x * a)).take(n).collect();
        let mut out = vec![FieldElem::zero(self.domain); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, slot) in out.iter_mut().enumerate().take(i + 1) {
                let b = FieldElem::from_bigint(self.domain, &binomial(i as u64, k as u64));
                *slot = &*slot + &(&(&b * c) * &powers[i - k]);
            }
        }
        Self::from_vec(self.domain, out)
    }

    pub fn checked_taylor_shift(&self, a: &FieldElem) -> Result<Self> {
        self.domain.check(&a.domain())?;
        Ok(self.taylor_shift(a))
    }

    /// `z^d P(1/z)`; `d` must be at least the degree.
    pub fn reversed(&self, d: usize) -> Self {
        assert!(self.deg() <= d || self.is_zero());
        let mut coeffs = vec![FieldElem::zero(self.domain); d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[d - i] = c.clone();
        }
        Self::from_vec(self.domain, coeffs)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.deg();
        let lead_inv = divisor.leading().inverse().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(self.domain), self.clone());
        }
        let mut quot = vec![FieldElem::zero(self.domain); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = &rem[k + j] - &(&c * b);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::from_vec(self.domain, quot), Self::from_vec(self.domain, rem))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().inverse().expect("nonzero"))
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `P / gcd(P, P')`: same roots, all simple (in characteristic 0).
    pub fn square_free_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.is_zero() {
            return self.clone();
        }
        self.div_rem(&g).0
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "z")?,
                1 => write!(f, "({c})*z")?,
                _ if c.is_one() => write!(f, "z^{i}")?,
                _ => write!(f, "({c})*z^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [{}]", self.domain)
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

/// A separable nonconstant rational map `f/g` with `gcd(f, g) = 1` and monic `g`.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMap {
    f: Poly,
    g: Poly,
    d: usize,
}

/// Divide out `gcd(f, g)` and check the map is nonconstant and separable.
pub fn normalize_map(f: &Poly, g: &Poly) -> Result<RationalMap> {
    f.domain.check(&g.domain)?;
    if g.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let h = f.gcd(g);
    let (mut f, mut g) = (f.div_rem(&h).0, g.div_rem(&h).0);
    let lead = g.leading().inverse().expect("nonzero denominator");
    f = f.scale(&lead);
    g = g.scale(&lead);
    let d = f.deg().max(g.deg());
    if d == 0 || f.is_zero() {
        return Err(Error::ConstantMap);
    }
    let map = RationalMap { f, g, d };
    if wronskian(&map).is_zero() {
        return Err(Error::InseparableMap);
    }
    Ok(map)
}

impl RationalMap {
    pub fn new(f: Poly, g: Poly) -> Result<Self> {
        normalize_map(&f, &g)
    }

    pub fn polynomial(f: Poly) -> Result<Self> {
        let one = Poly::one(f.domain);
        normalize_map(&f, &one)
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn g(&self) -> &Poly {
        &self.g
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn domain(&self) -> Domain {
        self.f.domain
    }

    pub fn is_polynomial(&self) -> bool {
        self.g.is_constant()
    }

    /// `φ(x)`, or `None` if `x` is a pole.
    pub fn eval(&self, x: &FieldElem) -> Option<FieldElem> {
        let den = self.g.eval(x);
        if den.is_zero() {
            return None;
        }
        Some(self.f.eval(x).checked_div(&den).expect("nonzero denominator"))
    }

    /// The map `z ↦ φ(z + a)`.
    pub fn translate_source(&self, a: &FieldElem) -> RationalMap {
        RationalMap { f: self.f.taylor_shift(a), g: self.g.taylor_shift(a), d: self.d }
    }

    /// Numerator of `φ - c`: `f - c·g`.
    pub fn minus_value(&self, c: &FieldElem) -> Poly {
        self.f.sub(&self.g.scale(c))
    }
}

impl fmt::Debug for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({}) [{}]", self.f, self.g, self.f.domain)
    }
}

impl Serialize for RationalMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("domain", &self.domain())?;
        map.serialize_entry("f", &self.f)?;
        map.serialize_entry("g", &self.g)?;
        map.end()
    }
}

/// `f'g - fg'`; its roots are the finite critical points.
pub fn wronskian(phi: &RationalMap) -> Poly {
    phi.f.derivative().mul(&phi.g).sub(&phi.f.mul(&phi.g.derivative()))
}

/// The integer `n` as a constant polynomial.
pub fn int_poly(domain: Domain, n: &BigInt) -> Poly {
    Poly::constant(FieldElem::from_bigint(domain, n))
}
