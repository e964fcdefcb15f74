mod common;

use num_complex::Complex64;
use supercrossed::crossed::{self, mul_compose, mul_group, mul_lie, mul_lie_element, mul_star, xp_multiply, xp_star, Multiplier};
use supercrossed::enveloping::UEElement;
use supercrossed::function::Function;
use supercrossed::group::{GroupData, GroupPoint, Pair};

use common::*;

const LINE_TOL: f64 = 1e-8;

fn points(pair: &Pair) -> Vec<GroupPoint> {
    match pair.group() {
        GroupData::Finite(_) => pair.group().points(),
        GroupData::Line(_) => vec![
            GroupPoint::line(0.0, true),
            GroupPoint::line(0.7, false),
            GroupPoint::line(-0.3, true),
        ],
    }
}

fn multipliers(pair: &Pair) -> Vec<(String, Multiplier)> {
    let mut out = Vec::new();
    for g in points(pair) {
        out.push((format!("group {g:?}"), mul_group(g)));
    }
    for x in 0..pair.algebra().dim() {
        out.push((format!("lie {x}"), mul_lie(x)));
    }
    let g = points(pair)[1];
    out.push(("compose".into(), mul_compose(mul_group(g), mul_lie(pair.algebra().dim() - 1))));
    out.push(("star".into(), mul_star(mul_compose(mul_lie(0), mul_group(g)))));
    out
}

fn run_algebra_laws(pair_name: &str, cases: usize, seed: u64) {
    let pair = pair(pair_name);
    let mut r = rng(seed);
    let tol = LINE_TOL;
    for case in 0..cases {
        let a = random_element(&pair, &mut r, 2, 2);
        let b = random_element(&pair, &mut r, 2, 2);
        let c = random_element(&pair, &mut r, 1, 2);
        let ab = xp_multiply(&pair, &a, &b).unwrap();
        let ab_c = xp_multiply(&pair, &ab, &c).unwrap();
        let a_bc = xp_multiply(&pair, &a, &xp_multiply(&pair, &b, &c).unwrap()).unwrap();
        assert!(elements_agree(&pair, &ab_c, &a_bc, tol), "{pair_name} case {case}: associativity");
        let lhs = xp_star(&pair, &ab).unwrap();
        let rhs = xp_multiply(&pair, &xp_star(&pair, &b).unwrap(), &xp_star(&pair, &a).unwrap()).unwrap();
        assert!(elements_agree(&pair, &lhs, &rhs, tol), "{pair_name} case {case}: star of product");
        let aa = xp_star(&pair, &xp_star(&pair, &a).unwrap()).unwrap();
        assert!(elements_agree(&pair, &aa, &a, tol), "{pair_name} case {case}: star involution");
    }
}

#[test]
fn z2odd_product_is_associative_and_star_reverses_exactly() {
    run_algebra_laws("z2odd", 200, 1);
}

#[test]
fn hc_product_is_associative_and_star_reverses() {
    run_algebra_laws("hc", 200, 2);
}

#[test]
fn hc_two_product_is_associative_and_star_reverses() {
    run_algebra_laws("hc-two", 100, 3);
}

fn check_multiplier_laws(pair_name: &str, cases: usize, seed: u64) {
    let pair = pair(pair_name);
    let mut r = rng(seed);
    for (label, m) in multipliers(&pair) {
        for case in 0..cases {
            let a = random_element(&pair, &mut r, 2, 2);
            let b = random_element(&pair, &mut r, 2, 2);
            let ab = xp_multiply(&pair, &a, &b).unwrap();
            let l1 = m.lam(&pair, &ab).unwrap();
            let l2 = xp_multiply(&pair, &m.lam(&pair, &a).unwrap(), &b).unwrap();
            assert!(elements_agree(&pair, &l1, &l2, LINE_TOL), "{pair_name} {label} case {case}: lambda(ab) = lambda(a)b");
            let r1 = m.rho(&pair, &ab).unwrap();
            let r2 = xp_multiply(&pair, &a, &m.rho(&pair, &b).unwrap()).unwrap();
            assert!(elements_agree(&pair, &r1, &r2, LINE_TOL), "{pair_name} {label} case {case}: rho(ab) = a rho(b)");
            let c1 = xp_multiply(&pair, &a, &m.lam(&pair, &b).unwrap()).unwrap();
            let c2 = xp_multiply(&pair, &m.rho(&pair, &a).unwrap(), &b).unwrap();
            assert!(elements_agree(&pair, &c1, &c2, LINE_TOL), "{pair_name} {label} case {case}: a lambda(b) = rho(a) b");
        }
    }
}

#[test]
fn multipliers_satisfy_defining_relations_on_z2odd() {
    check_multiplier_laws("z2odd", 25, 4);
}

#[test]
fn multipliers_satisfy_defining_relations_on_hc() {
    check_multiplier_laws("hc", 6, 5);
}

fn acts_alike(pair: &Pair, m1: &Multiplier, m2: &Multiplier, probes: &[supercrossed::crossed::CrossedElement]) -> bool {
    probes.iter().all(|a| {
        elements_agree(pair, &m1.lam(pair, a).unwrap(), &m2.lam(pair, a).unwrap(), LINE_TOL)
            && elements_agree(pair, &m1.rho(pair, a).unwrap(), &m2.rho(pair, a).unwrap(), LINE_TOL)
    })
}

fn check_identities(pair_name: &str, seed: u64) {
    let pair = pair(pair_name);
    let mut r = rng(seed);
    let probes: Vec<_> = (0..8).map(|_| random_element(&pair, &mut r, 2, 2)).collect();
    let env = pair.env();
    for g in points(&pair) {
        let u = mul_compose(mul_group(g), mul_star(mul_group(g)));
        assert!(acts_alike(&pair, &u, &Multiplier::Identity, &probes), "{pair_name}: group multiplier {g:?} is not unitary");
        let u2 = mul_compose(mul_star(mul_group(g)), mul_group(g));
        assert!(acts_alike(&pair, &u2, &Multiplier::Identity, &probes), "{pair_name}: group multiplier {g:?} is not co-unitary");
        let ginv = pair.group().inverse(&g);
        for x in 0..pair.algebra().dim() {
            let conj = mul_compose(mul_group(g), mul_compose(mul_lie(x), mul_group(ginv)));
            let adx = crossed::alpha(&pair, &g, &UEElement::generator(x));
            assert!(acts_alike(&pair, &conj, &mul_lie_element(adx), &probes), "{pair_name}: conjugation of {x} by {g:?}");
        }
    }
    for x in 0..pair.algebra().dim() {
        let dagger = env.dagger(&UEElement::generator(x));
        assert!(
            acts_alike(&pair, &mul_star(mul_lie(x)), &mul_lie_element(dagger), &probes),
            "{pair_name}: star of lie multiplier {x}"
        );
    }
}

#[test]
fn multiplier_identities_on_z2odd() {
    check_identities("z2odd", 6);
}

#[test]
fn multiplier_identities_on_hc() {
    check_identities("hc", 7);
}

#[test]
fn multiplier_identities_on_hc_two() {
    check_identities("hc-two", 8);
}

#[test]
fn finite_gamma_is_the_product() {
    let pair = pair("z2odd");
    let mut r = rng(9);
    for _ in 0..100 {
        let f = random_function(pair.group(), &mut r);
        let h = random_function(pair.group(), &mut r);
        let d = random_ue(&pair, &mut r, 2, 2);
        let lhs = crossed::gamma_integral(&pair, &f, &d, &h).unwrap();
        let one_f = supercrossed::crossed::CrossedElement::from_function(&pair, f.clone()).unwrap();
        let d_h = supercrossed::crossed::CrossedElement::tensor(&pair, &d, h.clone()).unwrap();
        assert_eq!(lhs, xp_multiply(&pair, &one_f, &d_h).unwrap());
        let mut sum = supercrossed::crossed::CrossedElement::zero();
        for g in pair.group().points() {
            sum = sum.add(&crossed::gamma_at(&pair, &f, &d, &h, &g).unwrap()).unwrap();
        }
        assert_eq!(lhs, sum);
    }
}

/// Number of odd letters in a monomial of `pair`'s algebra.
fn odd_letters(pair: &Pair, word: &[usize]) -> usize {
    word.iter().filter(|&&k| pair.algebra().parity(k).is_odd()).count()
}

#[test]
fn line_gamma_matches_quadrature() {
    let pair = pair("hc-two");
    let mut r = rng(10);
    let mut worst: f64 = 0.0;
    for _ in 0..12 {
        let f = random_function(pair.group(), &mut r);
        let h = random_function(pair.group(), &mut r);
        let d = random_ue(&pair, &mut r, 2, 2);
        let out = crossed::gamma_integral(&pair, &f, &d, &h).unwrap();
        let (fl, hl) = (f.as_line().unwrap().clone(), h.as_line().unwrap().clone());
        for (m, c) in d.terms() {
            let sign = if odd_letters(&pair, m.letters()) % 2 == 1 { -1.0 } else { 1.0 };
            let c = c.to_complex();
            let coef = monomial_coefficient(&out, m.letters());
            for &tp in &[-1.5, -0.2, 0.0, 0.9, 2.0] {
                for ep in [false, true] {
                    // γ(t,0) contributes c·h((−t)·(t',e')), γ(t,ε) contributes (−1)^odd·c·h at the flipped sheet
                    let oracle = integrate_line(|t| {
                        fl.eval(t, false) * hl.eval(tp - t, ep) * c + fl.eval(t, true) * hl.eval(tp - t, !ep) * c * sign
                    });
                    let got = coef.as_ref().map_or(Complex64::new(0.0, 0.0), |g| g.as_line().unwrap().eval(tp, ep));
                    worst = worst.max((oracle - got).norm());
                }
            }
        }
    }
    assert!(worst < 1e-6, "gamma vs quadrature: {worst:e}");
}

#[test]
fn orbit_derivative_residual_is_within_taylor_bound() {
    let ws = ws();
    let (pair, a) = ws.element("a-shift").unwrap();
    let z = pair.algebra().index_of("z").unwrap();
    for h in [1e-2, 1e-3] {
        let res = crossed::orbit_derivative_check(&pair, z, a, h).unwrap();
        assert!(res.residual <= res.taylor_bound, "h={h}: {res:?}");
    }
    let r1 = crossed::orbit_derivative_check(&pair, z, a, 1e-2).unwrap();
    let r2 = crossed::orbit_derivative_check(&pair, z, a, 1e-3).unwrap();
    let ratio = r2.residual / r1.residual;
    assert!((0.05..0.15).contains(&ratio), "first-order convergence: {ratio}");
}

#[test]
fn mismatched_function_class_is_rejected() {
    let hc = pair("hc");
    let z2 = pair("z2odd");
    let mut r = rng(12);
    let finite = random_function(z2.group(), &mut r);
    assert!(supercrossed::crossed::CrossedElement::from_function(&hc, finite).is_err());
    let line: Function = random_function(hc.group(), &mut r);
    assert!(supercrossed::crossed::CrossedElement::from_function(&z2, line).is_err());
}
