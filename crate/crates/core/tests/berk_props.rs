mod common;

use berkram_core::berk::{join, rho, seminorm_ord, BerkPoint};
use berkram_core::{rat, Domain, FieldElem};
use num_traits::Zero;
use rand::Rng;

fn domains() -> [Domain; 3] {
    [Domain::padic(3).unwrap(), Domain::padic(2).unwrap(), Domain::tadic(5).unwrap()]
}

#[test]
fn rho_is_a_metric() {
    let mut rng = common::rng(20);
    for d in domains() {
        for _ in 0..300 {
            let (x, y, z) = (common::point(&mut rng, d), common::point(&mut rng, d), common::point(&mut rng, d));
            let xy = rho(&x, &y).unwrap();
            assert_eq!(xy, rho(&y, &x).unwrap());
            assert!(xy >= rat(0, 1));
            assert_eq!(xy.is_zero(), x == y, "{x:?} {y:?}");
            assert!(xy <= rho(&x, &z).unwrap() + rho(&z, &y).unwrap());
        }
    }
}

#[test]
fn join_lies_above_both_points() {
    let mut rng = common::rng(21);
    for d in domains() {
        for _ in 0..300 {
            let (x, y) = (common::point(&mut rng, d), common::point(&mut rng, d));
            let j = join(&x, &y);
            assert!(j.contains(x.center()) && j.contains(y.center()));
            assert!(j.s() <= x.s() && j.s() <= y.s());
            assert_eq!(join(&y, &x), j);
            let j_s = j.finite_s().unwrap().clone();
            assert_eq!(rho(&x, &y).unwrap(), rho(&x, &j).unwrap() + rho(&j, &y).unwrap(), "join at {j_s}");
        }
    }
}

#[test]
fn seminorm_is_center_independent_and_multiplicative() {
    let mut rng = common::rng(22);
    for d in domains() {
        for _ in 0..200 {
            let x = common::point(&mut rng, d);
            let s = x.finite_s().unwrap().clone();
            // another center of the same disk
            let k = s.ceil().to_integer().try_into().unwrap_or(0i64).max(-3) + rng.gen_range(0..3);
            let shift = if rng.gen_bool(0.2) { FieldElem::zero(d) } else { common::elem_with_ord(&mut rng, d, k) };
            let y = BerkPoint::at(x.center() + &shift, s);
            assert_eq!(x, y);
            let n1 = rng.gen_range(0..5);
            let n2 = rng.gen_range(0..5);
            let p = common::poly(&mut rng, d, n1, false);
            let q = common::poly(&mut rng, d, n2, false);
            assert_eq!(seminorm_ord(&p, &x), seminorm_ord(&p, &y));
            assert_eq!(seminorm_ord(&p.mul(&q), &x), &seminorm_ord(&p, &x) + &seminorm_ord(&q, &x));
            // the seminorm is a lower bound for values on the disk
            let w = &shift + x.center();
            assert!(p.eval(&w).ord() >= seminorm_ord(&p, &x));
        }
    }
}

#[test]
fn inversion_is_an_isometric_involution() {
    let mut rng = common::rng(23);
    for d in domains() {
        let zero = FieldElem::zero(d);
        for _ in 0..200 {
            let (x, x2) = (common::point(&mut rng, d), common::point(&mut rng, d));
            let c = if rng.gen_bool(0.5) { zero.clone() } else { common::elem(&mut rng, d, -2, 2) };
            let y = x.invert_about(&c).unwrap();
            // 1/(1/(z - c)) = z - c
            let back = y.invert_about(&zero).unwrap();
            assert_eq!(back, BerkPoint::at(x.center() - &c, x.finite_s().unwrap().clone()));
            let y2 = x2.invert_about(&c).unwrap();
            assert_eq!(rho(&y, &y2).unwrap(), rho(&x, &x2).unwrap());
        }
    }
}
