//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::process::ExitCode;

use berkram_core::apps::rolle_check;
use berkram_core::auxram::{
    aux_coeffs, aux_direct, is_ramified, multiplicity, profile_segment, t_frak, tau, Piece, Which,
};
use berkram_core::berk::BerkPoint;
use berkram_core::fixtures;
use berkram_core::hull::{
    binomial_val_min, dist_to_hull, fuzz_analyze, tau_limit_at_critical, theorem_d_radius, FuzzCase,
};
use berkram_core::newton::{count_roots, DiskMode};
use berkram_core::poly::{wronskian, Poly, RationalMap};
use berkram_core::valfield::binomial;
use berkram_core::{rat, Domain, Error, ExtVal, FieldElem, Rational};
use num_traits::Zero;
use rand::Rng;

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(format!($($fmt)*));
        }
    };
}

fn ok<T>(r: berkram_core::Result<T>, what: &str) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn example_six_one() -> Check {
    for p in [2u64, 3, 5, 7] {
        let phi = ok(fixtures::ex61(p), "ex61")?;
        let zero = FieldElem::zero(phi.domain());
        let gauss = BerkPoint::at(zero.clone(), r(0));
        let dist = ok(dist_to_hull(&phi, &gauss), "dist")?;
        ensure!(dist == rat(1, p as i64 - 1), "p={p}: dist = {dist}");
        let m = ok(multiplicity(&phi, &gauss), "mult")?;
        ensure!(m == p as usize, "p={p}: m(Gauss) = {m}");
        for s in [rat(1, 2), r(1), r(2)] {
            let m = ok(multiplicity(&phi, &BerkPoint::at(zero.clone(), s.clone())), "mult")?;
            ensure!(m == 1, "p={p}: m(ζ_0,{s}) = {m}");
        }
    }
    Ok("p in {2,3,5,7}: dist = 1/(p-1), m = p at the Gauss point, m = 1 below".into())
}

fn example_six_three() -> Check {
    for p in [2u64, 3, 5] {
        let pi = p as i64;
        let phi = ok(fixtures::ex63(p), "ex63")?;
        let d = phi.domain();
        let zero = FieldElem::zero(d);
        let aux = aux_coeffs(&phi);
        let mut a0 = vec![0i64; p as usize + 2];
        a0[0] = -pi;
        a0[p as usize + 1] = pi;
        ensure!(aux.a(0) == &Poly::from_ints(d, &a0), "p={p}: A_0 = {}", aux.a(0));
        ensure!(aux.len() == p as usize + 1, "p={p}: {} coefficients", aux.len());
        for l in 1..=p as usize {
            let mut c = vec![0i64; p as usize + 2 - l];
            c[p as usize + 1 - l] = 1;
            let expect = Poly::from_ints(d, &c).scale(&FieldElem::from_bigint(d, &binomial(p + 1, l as u64 + 1)));
            ensure!(aux.a(l) == &expect, "p={p}: A_{l} = {}", aux.a(l));
        }
        let gauss = BerkPoint::at(zero.clone(), r(0));
        let t = ok(tau(&phi, &gauss), "tau")?;
        ensure!(t == rat(1, pi - 1), "p={p}: τ(Gauss) = {t}");

        let b = rat(1, pi + 1);
        let prof = ok(profile_segment(&phi, &zero, &r(0), &r(1), Which::TFrak), "profile")?;
        let expect = vec![
            Piece { s0: r(0), s1: b.clone(), alpha: rat(1, pi - 1), beta: rat(-(pi + 1), pi - 1) },
            Piece { s0: b.clone(), s1: r(1), alpha: rat(1, pi), beta: rat(-(pi + 1), pi) },
        ];
        ensure!(prof.pieces == expect, "p={p}: profile {:?}", prof.pieces);

        let mut max_dist = Rational::zero();
        for k in 0..=24 * (pi + 1) {
            let s = rat(k, 24 * (pi + 1));
            let x = BerkPoint::at(zero.clone(), s.clone());
            let ram = ok(is_ramified(&phi, &x), "ramified")?;
            ensure!(ram == (s <= b), "p={p}: ramified({s}) = {ram}");
            if ram {
                max_dist = max_dist.max(s);
            }
        }
        ensure!(max_dist == b && max_dist < t, "p={p}: max distance {max_dist} vs τ {t}");
    }
    Ok("p in {2,3,5}: A_ℓ exact, τ(Gauss) = 1/(p-1), two-piece profile, Ram along 0 is [0, 1/(p+1)]".into())
}

fn aux_oracle() -> Check {
    let mut rng = common::rng(3);
    let mut n = 0;
    for i in 0..200 {
        let p = [2u64, 3, 5, 7][i % 4];
        let d = if i % 2 == 0 { Domain::padic(p) } else { Domain::tadic(p) };
        let phi = common::rational_map(&mut rng, d.unwrap(), 8);
        let aux = aux_coeffs(&phi);
        ensure!(aux == aux_direct(&phi), "map {phi:?}: closed form differs from direct expansion");
        ensure!(aux.a(0) == &wronskian(&phi), "map {phi:?}: A_0 is not the Wronskian");
        ensure!(aux.len() == phi.degree() && !aux.a(phi.degree() - 1).is_zero(), "map {phi:?}: z-degree");
        n += 1;
    }
    Ok(format!("{n} random maps, degree <= 8, both domains"))
}

/// `ord_p C(m, s)` by Kummer: carries when adding `s` and `m - s` in base `p`.
fn kummer(m: u64, s: u64, p: u64) -> i64 {
    let digit_sum = |mut n: u64| {
        let mut t = 0;
        while n > 0 {
            t += n % p;
            n /= p;
        }
        t as i64
    };
    (digit_sum(s) + digit_sum(m - s) - digit_sum(m)) / (p as i64 - 1)
}

fn binomial_lemma() -> Check {
    for p in [2u64, 3, 5, 7] {
        for m in 2..=200u64 {
            let ord_m = {
                let (mut k, mut n) = (0, m);
                while n % p == 0 {
                    n /= p;
                    k += 1;
                }
                k
            };
            let vals: Vec<Rational> = (2..=m).map(|s| rat(kummer(m, s, p) - ord_m, s as i64 - 1)).collect();
            let min = vals.iter().min().unwrap().clone();
            let argmax_min = (2..=m).filter(|&s| vals[(s - 2) as usize] == min).max().unwrap();
            let stated = if m % p == 0 { p } else { m };
            let expect_min = if m % p == 0 { rat(-1, p as i64 - 1) } else { r(0) };
            let got = ok(binomial_val_min(m, p), "binomial")?;
            ensure!(got == (min.clone(), argmax_min), "m={m} p={p}: {got:?} vs enumeration ({min}, {argmax_min})");
            ensure!(got == (expect_min, stated), "m={m} p={p}: {got:?} vs closed form");
        }
    }
    Ok("2 <= m <= 200, p in {2,3,5,7}: value and argmin match enumeration and closed form".into())
}

fn theorem_d_sweep() -> Check {
    let mut rng = common::rng(5);
    let (mut ramified, mut on_hull, mut skipped, mut total) = (0, 0, 0, 0);
    for i in 0..50 {
        let p = [2u64, 3, 5][i % 3];
        let d = Domain::padic(p).unwrap();
        let phi = common::map_infinity_critical(&mut rng, d, 6);
        let radius = ok(theorem_d_radius(p, phi.degree(), true), "radius")?;
        for _ in 0..20 {
            total += 1;
            let x = common::point(&mut rng, d);
            let dist = ok(dist_to_hull(&phi, &x), "dist")?;
            let t = ok(tau(&phi, &x), "tau")?;
            if dist.is_zero() {
                on_hull += 1;
                if p as usize <= phi.degree() {
                    ensure!(t <= rat(1, p as i64 - 1), "{phi:?} at {x:?}: on-hull τ = {t}");
                } else {
                    ensure!(t.is_zero(), "{phi:?} at {x:?}: tame on-hull τ = {t}");
                }
            }
            match is_ramified(&phi, &x) {
                Ok(true) => {
                    ramified += 1;
                    ensure!(dist <= radius, "{phi:?}: ramified {x:?} at distance {dist} > {radius}");
                }
                Ok(false) => {}
                Err(Error::Undecidable(_)) => skipped += 1,
                Err(e) => return Err(format!("{phi:?} at {x:?}: {e}")),
            }
        }
    }
    ensure!(skipped * 20 <= total, "{skipped} of {total} samples undecidable");
    Ok(format!("{total} samples over 50 maps: {ramified} ramified, {on_hull} on the hull, {skipped} undecidable, no violations"))
}

fn local_fuzz() -> Check {
    let mut rng = common::rng(6);
    let (mut wild, mut tame) = (0, 0);
    while wild < 100 || tame < 100 {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let d = Domain::padic(p).unwrap();
        let want_wild = wild < 100 && (tame >= 100 || rng.gen_bool(0.5));
        let m = loop {
            let m = rng.gen_range(2..=10u64);
            if (m % p == 0) == want_wild {
                break m as usize;
            }
        };
        let mut c = vec![FieldElem::zero(d); m];
        c.push(FieldElem::one(d));
        for _ in 0..rng.gen_range(0..=3) {
            let e = common::elem(&mut rng, d, 1, 3);
            c.push(e);
        }
        let f = ok(Poly::new(d, c), "poly")?;
        let r0 = (1..m as u64).map(|l| kummer(m as u64, l, p)).max().unwrap();
        let delta = common::elem(&mut rng, d, r0 + 1, r0 + 3);
        let rep = ok(fuzz_analyze(&f, &delta), "fuzz")?;
        ensure!(
            rep.agrees,
            "f = {f}, δ = {delta}: measured {} vs {}",
            rep.measured_local_radius,
            rep.predicted_local_radius
        );
        if want_wild {
            ensure!(rep.case == FuzzCase::WildCharZero, "case {:?}", rep.case);
            ensure!(
                (rep.closed_count, rep.open_count) == (p as usize, 1),
                "f = {f}, δ = {delta}: counts {} / {}",
                rep.closed_count,
                rep.open_count
            );
            wild += 1;
        } else {
            ensure!(rep.case == FuzzCase::TameAnyChar, "case {:?}", rep.case);
            ensure!(
                (rep.closed_count, rep.open_count) == (m, 1),
                "f = {f}, δ = {delta}: counts {} / {}",
                rep.closed_count,
                rep.open_count
            );
            tame += 1;
        }
    }
    let d = Domain::padic(3).unwrap();
    let rep = ok(fuzz_analyze(&Poly::from_ints(d, &[0, 0, 0, 1, 3]), &FieldElem::from_int(d, 9)), "fuzz")?;
    ensure!(rep.polygon.vertices[..2] == [(1, r(5)), (3, r(0))], "worked instance vertices {:?}", rep.polygon.vertices);
    Ok("100 wild (p roots closed, 1 open) and 100 tame (m closed, 1 open) series; z^3+3z^4, δ=9 gives (1,5),(3,0)"
        .into())
}

fn example_six_two() -> Check {
    for n in 1..=6i64 {
        let phi = ok(fixtures::ex62(3, 5, n), "ex62")?;
        let zero = FieldElem::zero(phi.domain());
        let s = rat(n, 2);
        let closed = ok(count_roots(phi.f(), &zero, &s, DiskMode::Closed), "count")?;
        let open = ok(count_roots(phi.f(), &zero, &s, DiskMode::Open), "count")?;
        ensure!((closed, open) == (3, 1), "n={n}: counts {closed} / {open}");
        let dist = ok(dist_to_hull(&phi, &BerkPoint::at(zero, s.clone())), "dist")?;
        ensure!(dist == s, "n={n}: dist {dist}");
    }
    Ok("n = 1..6: 3 zeros at ord >= n/2, 1 inside, dist = n/2".into())
}

fn trichotomy() -> Check {
    let mut counts = [0usize; 4];
    let mut maps = Vec::new();
    for p in [2, 3, 5] {
        maps.push(ok(fixtures::ex61(p), "ex61")?);
        maps.push(ok(fixtures::ex63(p), "ex63")?);
    }
    let n_examples = maps.len();
    let mut rng = common::rng(8);
    for i in 0..12 {
        maps.push(common::map_infinity_critical(&mut rng, Domain::padic([2, 3][i % 2]).unwrap(), 4));
    }
    let mut example_counts = counts;
    for (j, phi) in maps.iter().enumerate() {
        if j == n_examples {
            example_counts = counts;
        }
        let d = phi.domain();
        let p = d.p() as i64;
        let centers = [0, 1, -1, 2, p, p + 1].map(|a| FieldElem::from_int(d, a));
        for a in centers.iter().chain([FieldElem::from_rational(d, &rat(1, p)).unwrap()].iter()) {
            for k in -24..=24 {
                let x = BerkPoint::at(a.clone(), rat(k, 12));
                let t = ok(t_frak(phi, &x), "t_frak")?;
                let on_hull = ok(dist_to_hull(phi, &x), "dist")?.is_zero();
                let m = match multiplicity(phi, &x) {
                    Ok(m) => m,
                    Err(Error::Undecidable(_)) => {
                        counts[3] += 1;
                        continue;
                    }
                    Err(e) => return Err(format!("{phi:?} at {x:?}: {e}")),
                };
                if m > 1 {
                    ensure!(t >= Rational::zero(), "{phi:?}: ramified {x:?} has 𝔱 = {t}");
                    counts[0] += 1;
                } else if on_hull {
                    ensure!(t.is_zero(), "{phi:?}: on-hull unramified {x:?} has 𝔱 = {t}");
                    counts[1] += 1;
                } else {
                    ensure!(t < Rational::zero(), "{phi:?}: off-hull unramified {x:?} has 𝔱 = {t}");
                    counts[2] += 1;
                }
            }
        }
    }
    ensure!(example_counts[0] > 0 && example_counts[2] > 0, "examples missed a class: {example_counts:?}");
    Ok(format!(
        "examples: {} ramified, {} on-hull unramified, {} off-hull unramified; with 12 random maps critical at ∞: {} / {} / {}, {} undecidable",
        example_counts[0], example_counts[1], example_counts[2], counts[0], counts[1], counts[2], counts[3]
    ))
}

fn rolle_sharpness() -> Check {
    let phi = ok(fixtures::ex61(3), "ex61")?;
    let zero = FieldElem::zero(phi.domain());
    let rep = ok(rolle_check(&phi, &zero, &r(0), None), "rolle")?;
    ensure!(rep.zeros_in_disk >= 2, "zeros {}", rep.zeros_in_disk);
    ensure!(rep.shift == rat(1, 2) && rep.verdict, "γ-enlarged check failed: {rep:?}");
    let probe = ok(rolle_check(&phi, &zero, &r(0), Some(r(0))), "rolle")?;
    ensure!(probe.applicable && !probe.verdict, "shift 0 found a critical point: {probe:?}");
    Ok(format!("{} zeros in D(0,1); critical point at ord -1/2 needs shift 1/2", rep.zeros_in_disk))
}

fn tau_bounded() -> Check {
    let d = Domain::padic(3).unwrap();
    let zero = FieldElem::zero(d);
    let sq = ok(RationalMap::polynomial(Poly::from_ints(d, &[0, 0, 1])), "map")?;
    let v = ok(tau_limit_at_critical(&sq, Some(&zero)), "limit")?;
    ensure!(v == ExtVal::zero(), "z^2: {v}");
    let cube = ok(RationalMap::polynomial(Poly::from_ints(d, &[0, 0, 0, 1])), "map")?;
    let v = ok(tau_limit_at_critical(&cube, Some(&zero)), "limit")?;
    ensure!(v == ExtVal::Finite(rat(1, 2)), "z^3: {v}");

    let t = Domain::tadic(3).unwrap();
    let tz = FieldElem::zero(t);
    let coeffs = vec![tz.clone(), tz.clone(), tz.clone(), FieldElem::one(t), FieldElem::uniformizer(t)];
    let wild = ok(RationalMap::polynomial(ok(Poly::new(t, coeffs), "poly")?), "map")?;
    let v = ok(tau_limit_at_critical(&wild, Some(&tz)), "limit")?;
    ensure!(v == ExtVal::Infinity, "z^3 + t z^4: {v}");
    // radius of the ramified disk around δ minus ord δ: ((m'-1)s + ord ε_1)/(m-1) - s = (s+1)/2
    let prof = ok(profile_segment(&wild, &tz, &r(0), &r(8), Which::Tau), "profile")?;
    let mut vals = Vec::new();
    for s in [2, 4, 8] {
        let v = prof.eval(&r(s)).ok_or("profile does not cover s")?;
        ensure!(v == rat(s + 1, 2), "τ(ζ_0,{s}) = {v}, expected {}", rat(s + 1, 2));
        vals.push(v.to_string());
    }
    Ok(format!("0, 1/2, inf; wild τ at s = 2, 4, 8 is {}", vals.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("z^p + z: distances and multiplicities", example_six_one),
        ("(z^(p+1) + p)/z: auxiliary polynomial, τ, profile, locus", example_six_three),
        ("auxiliary polynomial oracle equivalence", aux_oracle),
        ("binomial valuation lemma", binomial_lemma),
        ("uniform tube sweep in characteristic 0", theorem_d_sweep),
        ("local fuzz near a critical point", local_fuzz),
        ("characteristic p: unbounded wild tube", example_six_two),
        ("sign trichotomy of 𝔱", trichotomy),
        ("Rolle sharpness", rolle_sharpness),
        ("limits of τ at critical points", tau_bounded),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
