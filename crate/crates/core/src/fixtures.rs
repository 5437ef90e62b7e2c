//! The worked example maps.

use crate::error::Result;
use crate::poly::{Poly, RationalMap};
use crate::valfield::{Domain, FieldElem};

/// `z^n + z`.
pub fn power_plus_z(domain: Domain, n: usize) -> Result<RationalMap> {
    let mut c = vec![0i64; n + 1];
    c[1] += 1;
    c[n] += 1;
    RationalMap::polynomial(Poly::from_ints(domain, &c))
}

/// `z^p + z` over `Q_p`: the Gauss point is ramified at distance `1/(p-1)`
/// from the hull of critical points.
pub fn ex61(p: u64) -> Result<RationalMap> {
    power_plus_z(Domain::padic(p)?, p as usize)
}

/// `z^d + t^{-n} z^p + z` over `F_p(t)`: ramified points at distance `n/2`
/// (for `p = 3`) from the hull.
pub fn ex62(p: u64, d: usize, n: i64) -> Result<RationalMap> {
    let dom = Domain::tadic(p)?;
    let pu = p as usize;
    let mut c = vec![FieldElem::zero(dom); d.max(pu) + 1];
    c[1] = &c[1] + &FieldElem::one(dom);
    c[pu] = &c[pu] + &FieldElem::uniformizer_pow(dom, -n);
    c[d] = &c[d] + &FieldElem::one(dom);
    RationalMap::polynomial(Poly::new(dom, c)?)
}

/// `(z^{p+1} + p)/z` over `Q_p`.
pub fn ex63(p: u64) -> Result<RationalMap> {
    let dom = Domain::padic(p)?;
    let pu = p as usize;
    let mut f = vec![0i64; pu + 2];
    f[0] = p as i64;
    f[pu + 1] = 1;
    RationalMap::new(Poly::from_ints(dom, &f), Poly::from_ints(dom, &[0, 1]))
}
