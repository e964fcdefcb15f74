#![allow(dead_code)]

pub mod scenario;

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use supercrossed::catalog;
use supercrossed::crossed::CrossedElement;
use supercrossed::dsl::Workspace;
use supercrossed::enveloping::{Monomial, UEElement};
use supercrossed::function::{FiniteFunction, Function, GaussTerm, GaussianPoly, LineFunction};
use supercrossed::group::{GroupData, Pair};
use supercrossed::repr::{self, ValidatedRep};
use supercrossed::scalar::GaussianRational;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ws() -> Workspace {
    catalog::workspace().expect("catalog parses")
}

pub fn pair(name: &str) -> Arc<Pair> {
    ws().pair(name).expect("valid pair")
}

pub fn small_coef(r: &mut ChaCha8Rng) -> GaussianRational {
    let re = GaussianRational::from_ratio(r.gen_range(-3..=3), r.gen_range(1..=2));
    let im = GaussianRational::from_ratio(r.gen_range(-3..=3), r.gen_range(1..=2));
    re + GaussianRational::i() * im
}

/// Random element of `U(g_C)` with words up to `max_len` letters, brought to normal form.
pub fn random_ue(pair: &Pair, r: &mut ChaCha8Rng, terms: usize, max_len: usize) -> UEElement {
    let n = pair.algebra().dim();
    let mut out = UEElement::zero();
    for _ in 0..terms {
        let len = r.gen_range(0..=max_len);
        let word: Vec<usize> = (0..len).map(|_| r.gen_range(0..n)).collect();
        let c = small_coef(r);
        out = out.add(&pair.env().normal_form(&word, &c).unwrap());
    }
    out
}

/// Random word over the basis of `pair`'s algebra.
pub fn random_word(n: usize, r: &mut ChaCha8Rng, max_len: usize) -> Vec<usize> {
    let len = r.gen_range(0..=max_len);
    (0..len).map(|_| r.gen_range(0..n)).collect()
}

pub fn random_gaussian_poly(r: &mut ChaCha8Rng, max_terms: usize) -> GaussianPoly {
    let k = r.gen_range(1..=max_terms);
    let terms = (0..k)
        .map(|_| {
            let deg = r.gen_range(0..=1);
            let poly = (0..=deg).map(|_| Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))).collect();
            let rate = [0.5, 1.0, 1.5, 2.0][r.gen_range(0..4)];
            GaussTerm::new(poly, rate, r.gen_range(-1.0..1.0)).unwrap()
        })
        .collect();
    GaussianPoly::from_terms(terms)
}

pub fn random_function(group: &GroupData, r: &mut ChaCha8Rng) -> Function {
    match group {
        GroupData::Finite(g) => {
            let n = 2 * g.order();
            let values = (0..n).map(|_| if r.gen_bool(0.6) { small_coef(r) } else { GaussianRational::zero() }).collect();
            Function::Finite(FiniteFunction::from_values(values))
        }
        GroupData::Line(_) => {
            let plus = random_gaussian_poly(r, 2);
            let minus = if r.gen_bool(0.5) { random_gaussian_poly(r, 1) } else { GaussianPoly::zero() };
            Function::Line(LineFunction::new(plus, minus))
        }
    }
}

/// Random `Σ D_k ⊗ f_k` with `terms` summands and words of at most `max_len` letters.
pub fn random_element(pair: &Pair, r: &mut ChaCha8Rng, terms: usize, max_len: usize) -> CrossedElement {
    let mut out = CrossedElement::zero();
    for _ in 0..terms {
        let d = random_ue(pair, r, 1, max_len);
        let f = random_function(pair.group(), r);
        out = out.add(&CrossedElement::tensor(pair, &d, f).unwrap()).unwrap();
    }
    out
}

pub fn line_samples() -> Vec<f64> {
    (-24..=24).map(|k| k as f64 * 0.25).collect()
}

/// Equality of crossed elements: exact on finite groups, relative `tol` at sample points on the line.
pub fn elements_agree(pair: &Pair, a: &CrossedElement, b: &CrossedElement, tol: f64) -> bool {
    match pair.group() {
        GroupData::Finite(_) => a == b,
        GroupData::Line(_) => {
            let s = line_samples();
            let scale = 1.0 + a.max_line_value(&s).max(b.max_line_value(&s));
            a.max_line_difference(b, &s) <= tol * scale
        }
    }
}

pub fn monomial_coefficient(a: &CrossedElement, word: &[usize]) -> Option<Function> {
    a.terms().find(|(m, _)| m.letters() == word).map(|(_, f)| f.clone())
}

pub fn unit_monomial() -> Monomial {
    Monomial::unit()
}

/// Composite 8-point Gauss–Legendre rule on `[a, b]` with `panels` panels.
pub fn integrate(f: impl Fn(f64) -> Complex64, a: f64, b: f64, panels: usize) -> Complex64 {
    const X: [f64; 4] = [0.1834346424956498, 0.525532409916329, 0.7966664774136267, 0.9602898564975363];
    const W: [f64; 4] = [0.362683783378362, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763];
    let h = (b - a) / panels as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        for k in 0..4 {
            let dx = 0.5 * h * X[k];
            total += (f(mid - dx) + f(mid + dx)) * (0.5 * h * W[k]);
        }
    }
    total
}

/// `∫_R f(t) dt` for rapidly decaying `f` concentrated near the origin.
pub fn integrate_line(f: impl Fn(f64) -> Complex64) -> Complex64 {
    integrate(f, -16.0, 16.0, 1600)
}

pub fn hc_grid() -> Vec<f64> {
    vec![0.25, 0.5, 1.0, 2.0, 4.0, 8.0]
}

pub fn clifford_family(pair: &Pair) -> Vec<ValidatedRep> {
    hc_grid()
        .into_iter()
        .map(|l| ValidatedRep::new(pair, repr::clifford_rep(pair, l, format!("lambda={l}")).unwrap()).unwrap())
        .collect()
}

pub fn character_family(pair: &Pair) -> Vec<ValidatedRep> {
    repr::finite_characters(pair).unwrap().into_iter().map(|r| ValidatedRep::new(pair, r).unwrap()).collect()
}

pub fn regular_rep(pair: &Pair) -> ValidatedRep {
    let chars = repr::finite_characters(pair).unwrap();
    ValidatedRep::new(pair, repr::direct_sum("regular", &chars).unwrap()).unwrap()
}
