//! Finite-precision p-adic approximations and Newton-Hensel lifting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use super::ord_int;
use crate::error::{Error, Result};
use crate::Rational;

/// `p^v * u` known modulo `p^(v + n)`.
///
/// `u` is a unit except for the approximation of zero, which has `u = 0`,
/// `n = 0` and `v` equal to the absolute precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAdicApprox {
    pub p: u64,
    pub v: i64,
    pub u: BigInt,
    pub n: u32,
}

impl PAdicApprox {
    /// Approximation of the integer `x` to absolute precision `abs_prec`.
    pub fn from_integer(p: u64, x: &BigInt, abs_prec: i64) -> Self {
        let modulus = BigInt::from(p).pow(abs_prec.max(0) as u32);
        let x = x.mod_floor(&modulus);
        if x.is_zero() {
            return PAdicApprox { p, v: abs_prec, u: BigInt::zero(), n: 0 };
        }
        let v = ord_int(&x, p);
        let u = x / BigInt::from(p).pow(v as u32);
        PAdicApprox { p, v, u, n: (abs_prec - v) as u32 }
    }

    pub fn abs_precision(&self) -> i64 {
        self.v + self.n as i64
    }

    /// The representative `p^v * u` (requires `v >= 0`).
    pub fn to_integer(&self) -> BigInt {
        &self.u * BigInt::from(self.p).pow(self.v.max(0) as u32)
    }

    pub fn residue(&self) -> u64 {
        use num_traits::ToPrimitive;
        self.to_integer().mod_floor(&BigInt::from(self.p)).to_u64().expect("residue fits")
    }
}

fn eval(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn ord_or_inf(n: &BigInt, p: u64) -> Option<i64> {
    (!n.is_zero()).then(|| ord_int(n, p))
}

/// Lift an approximate simple root of `P` (rational coefficients) to
/// absolute precision `target_n`.
///
/// Requires `x0` integral and `ord P(x0) > 2 ord P'(x0)`; the returned
/// approximation `r` then satisfies `ord P(r) >= target_n` and is congruent
/// to the unique nearby root modulo `p^target_n`.
pub fn hensel_lift(p: u64, coeffs: &[Rational], x0: &PAdicApprox, target_n: i64) -> Result<PAdicApprox> {
    if x0.v < 0 {
        return Err(Error::NotIntegral(format!("starting point of valuation {}", x0.v)));
    }
    // clear denominators; roots are unchanged
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let dints: Vec<BigInt> = ints.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();

    let mut x = x0.to_integer();
    let px = eval(&ints, &x);
    let Some(k) = ord_or_inf(&eval(&dints, &x), p) else {
        return Err(Error::HenselConditionFailed("derivative vanishes at the start".into()));
    };
    if k >= x0.abs_precision() {
        return Err(Error::HenselConditionFailed("derivative valuation not determined at the given precision".into()));
    }
    if let Some(v0) = ord_or_inf(&px, p) {
        if v0 <= 2 * k {
            return Err(Error::HenselConditionFailed(format!(
                "ord P(x0) = {v0} is not above 2 ord P'(x0) = {}",
                2 * k
            )));
        }
    }

    let pb = BigInt::from(p);
    let work = pb.clone().pow((target_n.max(0) + 2 * k + 2) as u32);
    loop {
        let px = eval(&ints, &x);
        let done = match ord_or_inf(&px, p) {
            None => true,
            Some(v) => v >= target_n + k,
        };
        if done {
            break;
        }
        let dpx = eval(&dints, &x);
        // ord P'(x) stays equal to k along the iteration
        let pk = pb.clone().pow(k as u32);
        let unit = (&dpx / &pk).mod_floor(&work);
        let inv =
            unit.modinv(&work).ok_or_else(|| Error::HenselConditionFailed("derivative lost its unit part".into()))?;
        let step = (&px / &pk) * inv;
        x = (x - step).mod_floor(&work);
    }
    Ok(PAdicApprox::from_integer(p, &x, target_n))
}
