mod common;

use num_complex::Complex64;
use rand::Rng;
use supercrossed::crossed::{self, xp_multiply, xp_star, CrossedElement};
use supercrossed::dsl::Workspace;
use supercrossed::enveloping::UEElement;
use supercrossed::function::FiniteFunction;
use supercrossed::group::{GroupData, GroupPoint, Pair};
use supercrossed::linalg::CMat;
use supercrossed::repr::{self, RepImage, RepVector, ValidatedRep};
use supercrossed::scalar::GaussianRational;
use supercrossed::Error;

use common::*;

fn images_agree(pair: &Pair, a: &RepImage, b: &RepImage) -> bool {
    match pair.group() {
        GroupData::Finite(_) => a.to_complex() == b.to_complex() && a.is_exact() && b.is_exact() && a.agrees_with(b, 0.0),
        GroupData::Line(_) => {
            let scale = 1.0 + a.op_norm().max(b.op_norm());
            a.sub(b).op_norm() <= 1e-9 * scale
        }
    }
}

fn check_star_homomorphism(pair: &Pair, reps: &[ValidatedRep], cases: usize, seed: u64) {
    let mut r = rng(seed);
    for rep in reps {
        for case in 0..cases {
            let a = random_element(pair, &mut r, 2, 3);
            let b = random_element(pair, &mut r, 2, 2);
            let ha = repr::rep_hat(pair, rep, &a).unwrap();
            let hb = repr::rep_hat(pair, rep, &b).unwrap();
            let hab = repr::rep_hat(pair, rep, &xp_multiply(pair, &a, &b).unwrap()).unwrap();
            assert!(images_agree(pair, &hab, &ha.mul(&hb)), "{} case {case}: hat(ab)", rep.name());
            let hstar = repr::rep_hat(pair, rep, &xp_star(pair, &a).unwrap()).unwrap();
            assert!(images_agree(pair, &hstar, &ha.adjoint()), "{} case {case}: hat(a*)", rep.name());
        }
    }
}

#[test]
fn hat_is_a_star_homomorphism_on_z2odd() {
    let pair = pair("z2odd");
    let mut reps = character_family(&pair);
    reps.push(regular_rep(&pair));
    check_star_homomorphism(&pair, &reps, 100, 1);
}

#[test]
fn hat_is_a_star_homomorphism_on_hc() {
    let pair = pair("hc");
    check_star_homomorphism(&pair, &clifford_family(&pair), 100, 2);
}

#[test]
fn hat_is_a_star_homomorphism_on_hc_two() {
    let pair = pair("hc-two");
    check_star_homomorphism(&pair, &clifford_family(&pair), 40, 3);
}

#[test]
fn pi_of_function_matches_quadrature() {
    for name in ["hc", "hc-two"] {
        let pair = pair(name);
        let mut r = rng(4);
        for rep in clifford_family(&pair) {
            for _ in 0..4 {
                let f = random_function(pair.group(), &mut r);
                let fl = f.as_line().unwrap().clone();
                let got = repr::pi_of_function(rep.rep(), pair.group(), &f).unwrap().to_complex();
                let n = rep.rep().dim;
                let mut want = CMat::zeros(n, n);
                for i in 0..n {
                    for j in 0..n {
                        let v = integrate_line(|t| {
                            let p0 = rep.rep().pi(&GroupPoint::line(t, false)).to_complex();
                            let p1 = rep.rep().pi(&GroupPoint::line(t, true)).to_complex();
                            fl.eval(t, false) * p0.get(i, j) + fl.eval(t, true) * p1.get(i, j)
                        });
                        want.set(i, j, v);
                    }
                }
                let err = got.sub(&want).max_abs();
                assert!(err < 1e-6, "{}: pi(f) vs quadrature {err:e}", rep.name());
            }
        }
    }
}

#[test]
fn finite_pi_of_function_is_the_weighted_sum() {
    let pair = pair("z2odd");
    let rep = regular_rep(&pair);
    let mut r = rng(5);
    for _ in 0..50 {
        let f = random_function(pair.group(), &mut r);
        let got = repr::pi_of_function(rep.rep(), pair.group(), &f).unwrap();
        let fv = f.as_finite().unwrap();
        let mut want = RepImage::Exact(supercrossed::linalg::QMat::zeros(4, 4));
        for (i, p) in pair.group().points().iter().enumerate() {
            want = want.add(&rep.rep().pi(p).scale(fv.value(i)));
        }
        assert!(got.agrees_with(&want, 0.0));
    }
}

#[test]
fn reps_are_covariant() {
    let cases: Vec<(std::sync::Arc<Pair>, Vec<ValidatedRep>, Vec<GroupPoint>)> = vec![
        {
            let p = pair("z2odd");
            let mut reps = character_family(&p);
            reps.push(regular_rep(&p));
            let pts = p.group().points();
            (p, reps, pts)
        },
        {
            let p = pair("hc-two");
            let reps = clifford_family(&p);
            (p, reps, vec![GroupPoint::line(0.3, false), GroupPoint::line(-2.0, true), GroupPoint::line(0.0, true)])
        },
    ];
    for (pair, reps, pts) in cases {
        for rep in &reps {
            for g in &pts {
                let pg = rep.rep().pi(g).to_complex();
                let pinv = rep.rep().pi(&pair.group().inverse(g)).to_complex();
                for x in 0..pair.algebra().dim() {
                    let lhs = pg.mul(&rep.rep().rho(x).to_complex()).mul(&pinv);
                    let rhs = repr::rho_of(rep.rep(), &crossed::alpha(&pair, g, &UEElement::generator(x))).to_complex();
                    assert!(lhs.sub(&rhs).max_abs() < 1e-12, "{}: covariance at {g:?} for {x}", rep.name());
                }
            }
        }
    }
}

#[test]
fn odd_generators_satisfy_the_square_inequality() {
    let mut r = rng(6);
    for name in ["hc", "hc-two", "z2odd"] {
        let pair = pair(name);
        let reps = if pair.is_line() { clifford_family(&pair) } else { character_family(&pair) };
        for rep in &reps {
            for x in pair.algebra().odd_indices() {
                for _ in 0..20 {
                    let v: Vec<Complex64> = (0..rep.rep().dim).map(|_| Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))).collect();
                    let (lhs, rhs) = repr::odd_square_sides(&pair, rep.rep(), x, &v);
                    assert!(lhs <= rhs * (1.0 + 1e-12) + 1e-15, "{}: {lhs} > {rhs}", rep.name());
                }
            }
        }
    }
}

fn bound_soundness(pair: &Pair, reps: &[ValidatedRep], elements: usize, seed: u64) -> usize {
    let mut r = rng(seed);
    let mut checked = 0;
    for _ in 0..elements {
        let a = random_element(pair, &mut r, 3, 3);
        let bound = repr::norm_bound(pair, &a).unwrap().upper;
        for rep in reps {
            let norm = repr::rep_hat(pair, rep, &a).unwrap().op_norm();
            assert!(norm <= bound * (1.0 + 1e-12) + 1e-15, "{}: {norm} > {bound}", rep.name());
            checked += 1;
        }
    }
    checked
}

#[test]
fn bound_dominates_every_representation() {
    let hc = pair("hc");
    let hc2 = pair("hc-two");
    let z2 = pair("z2odd");
    let mut z2reps = character_family(&z2);
    z2reps.push(regular_rep(&z2));
    let n = bound_soundness(&hc, &clifford_family(&hc), 40, 7)
        + bound_soundness(&hc2, &clifford_family(&hc2), 20, 8)
        + bound_soundness(&z2, &z2reps, 30, 9);
    assert!(n >= 300, "only {n} pairs checked");
}

/// `max_χ |Σ_p f(p) χ(p)|` over the four characters `s ↦ σ`, `ε ↦ η`.
fn brute_force_character_max(f: &FiniteFunction) -> f64 {
    let v: Vec<Complex64> = f.values().iter().map(GaussianRational::to_complex).collect();
    let mut best: f64 = 0.0;
    for sigma in [1.0, -1.0] {
        for eta in [1.0, -1.0] {
            let s = v[0] + v[1] * sigma + v[2] * eta + v[3] * sigma * eta;
            best = best.max(s.norm());
        }
    }
    best
}

#[test]
fn z2odd_seminorm_matches_brute_force() {
    let pair = pair("z2odd");
    let chars = character_family(&pair);
    let mut r = rng(10);
    for _ in 0..100 {
        let f = random_function(pair.group(), &mut r);
        let a = CrossedElement::from_function(&pair, f.clone()).unwrap();
        let x_part = random_element(&pair, &mut r, 1, 1);
        let x_only: CrossedElement = {
            let mut out = CrossedElement::zero();
            for (m, g) in x_part.terms() {
                if m.degree() > 0 {
                    out.add_tensor(&UEElement::from_monomial(m.clone(), GaussianRational::one()), g).unwrap();
                }
            }
            out
        };
        let expected = brute_force_character_max(f.as_finite().unwrap());
        let s = repr::seminorm_interval(&pair, &a.add(&x_only).unwrap(), &chars).unwrap();
        assert!((s.lower - expected).abs() < 1e-12, "{} vs {expected}", s.lower);
        assert!(s.lower <= s.upper);
        if !x_only.is_zero() {
            let k = repr::seminorm_interval(&pair, &x_only, &chars).unwrap();
            assert!(k.kernel_flag);
            assert_eq!((k.lower, k.upper), (0.0, 0.0));
        }
    }
}

#[test]
fn hc_seminorm_interval_is_ordered() {
    let ws = ws();
    let (pair, members) = ws.family("hc-grid").unwrap();
    let fam: Vec<ValidatedRep> = members.iter().map(|m| ValidatedRep::new(&pair, m.clone()).unwrap()).collect();
    for name in ["a0", "a1", "az", "a-mixed", "a-shift"] {
        let (_, a) = ws.element(name).unwrap();
        let s = repr::seminorm_interval(&pair, a, &fam).unwrap();
        assert!(s.lower <= s.upper, "{name}: {s:?}");
        assert!(s.lower > 0.0, "{name} vanishes on the grid");
        assert!(!s.kernel_flag);
    }
    let empty = repr::seminorm_interval(&pair, ws.element("a0").unwrap().1, &[]).unwrap();
    assert!(empty.empty_family);
    assert_eq!(empty.lower, 0.0);
}

#[test]
fn roundtrip_recovers_generators() {
    let ws = ws();
    let z2 = pair("z2odd");
    let regular = ValidatedRep::new(&z2, ws.rep("regular").unwrap().1.clone()).unwrap();
    let probes: Vec<CrossedElement> = ["d-e", "d-s", "d-eps", "mixed"].iter().map(|n| ws.element(n).unwrap().1.clone()).collect();
    let vectors = supercrossed::cli::probe_vectors(4, false, 0);
    let rep = repr::roundtrip(&z2, &regular, &probes, &vectors, 0.0).unwrap();
    assert!(rep.passed(), "{rep:?}");
    assert!(rep.entries.iter().all(|e| e.exact && e.max_residual == 0.0));

    let hc = pair("hc");
    let r2 = ValidatedRep::new(&hc, ws.rep("r2").unwrap().1.clone()).unwrap();
    let probes: Vec<CrossedElement> = ["probe", "probe-eps"].iter().map(|n| ws.element(n).unwrap().1.clone()).collect();
    let vectors = supercrossed::cli::probe_vectors(r2.rep().dim, true, 0);
    let rep = repr::roundtrip(&hc, &r2, &probes, &vectors, 1e-10).unwrap();
    assert!(rep.passed(), "{rep:?}");
    let targets: Vec<&str> = rep.entries.iter().map(|e| e.target.as_str()).collect();
    assert_eq!(targets, ["pi(1)", "pi(-0.5)", "pi(eps)", "rho(z)", "rho(x)"]);
}

#[test]
fn zero_probe_is_reported() {
    let ws = ws();
    let z2 = pair("z2odd");
    let chars = repr::finite_characters(&z2).unwrap();
    let rep = ValidatedRep::new(&z2, chars[0].clone()).unwrap();
    let (_, xs) = ws.element("x-s").unwrap();
    let v = RepVector::Exact(vec![GaussianRational::one()]);
    assert!(matches!(repr::reconstruct_pi(&z2, &rep, GroupPoint::finite(1, false), xs, &v), Err(Error::ZeroProbe)));
}

#[test]
fn taylor_remainder_is_first_order() {
    let ws = ws();
    let pair = pair("hc");
    let fam = clifford_family(&pair);
    let z = pair.algebra().index_of("z").unwrap();
    for name in ["a0", "a1", "a-shift"] {
        let (_, a) = ws.element(name).unwrap();
        let rep = repr::taylor_norm_check(&pair, &fam, z, a, &[1e-1, 1e-2, 1e-3]).unwrap();
        assert!(rep.rows.iter().all(|r| r.passed), "{name}: {rep:?}");
        assert!(rep.ratios.iter().all(|q| (0.05..=0.15).contains(q)), "{name}: ratios {:?}", rep.ratios);
    }
}

#[test]
fn ccr_images_have_finite_rank() {
    let ws = ws();
    for (fam, gens) in [("hc-grid", vec!["a0", "a1"]), ("hc-two-grid", vec!["b1"]), ("z2-chars", vec!["d-e", "x-s", "mixed"])] {
        let (pair, members) = ws.family(fam).unwrap();
        let vr: Vec<ValidatedRep> = members.iter().map(|m| ValidatedRep::new(&pair, m.clone()).unwrap()).collect();
        let g: Vec<CrossedElement> = gens.iter().map(|n| ws.element(n).unwrap().1.clone()).collect();
        let rep = repr::ccr_report(&pair, &vr, &g).unwrap();
        assert!(rep.nilpotent && rep.odd_generated, "{fam}");
        for e in &rep.reps {
            assert!(e.compact && e.image_rank <= e.dim * e.dim, "{fam}: {e:?}");
        }
    }
}

#[test]
fn invalid_explicit_rep_is_rejected() {
    let mut ws = Workspace::new();
    ws.load(supercrossed::catalog::Z2ODD).unwrap();
    ws.load("(rep bad (pair z2odd) (grading 1) (pi s ((1))) (rho x ((1))))").unwrap();
    let (pair, rep) = ws.rep("bad").unwrap();
    let report = repr::validate_rep(&pair, rep).unwrap();
    assert!(!report.is_ok());
    assert!(matches!(ValidatedRep::new(&pair, rep.clone()), Err(Error::InvalidRepresentation(_))));
}

#[test]
fn line_rep_with_wrong_derivative_is_rejected() {
    let pair = pair("hc");
    let mut rep = repr::clifford_rep(&pair, 2.0, "r").unwrap();
    if let repr::RepData::Line { lambda, .. } = &mut rep.data {
        *lambda = 3.0;
    }
    assert!(!repr::validate_rep(&pair, &rep).unwrap().is_ok());
}
