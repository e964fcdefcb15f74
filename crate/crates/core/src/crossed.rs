//! The crossed-product *-algebra `A° = U(g_C) ⊗ D(G_ε)` and its multipliers.
//!
//! Elements are kept canonical as a map from PBW monomial to function: `Σ_m m ⊗ f_m`, so
//! terms whose `D` agree up to a scalar are merged and zero functions are dropped.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::enveloping::{Monomial, UEElement};
use crate::error::{Error, Result};
use crate::function::{self, Function, LineFunction};
use crate::group::{GroupData, GroupPoint, Pair};
use crate::scalar::GaussianRational;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CrossedElement {
    terms: BTreeMap<Monomial, Function>,
}

impl CrossedElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `D ⊗ f`.
    pub fn tensor(pair: &Pair, d: &UEElement, f: Function) -> Result<Self> {
        check_class(pair.group(), &f)?;
        let mut out = Self::zero();
        for (m, c) in d.terms() {
            out.add_term(m.clone(), f.scale(c))?;
        }
        Ok(out)
    }

    /// `1 ⊗ f`.
    pub fn from_function(pair: &Pair, f: Function) -> Result<Self> {
        Self::tensor(pair, &UEElement::one(), f)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Function)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest PBW degree among the terms.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, f: Function) -> Result<()> {
        if f.is_zero() {
            return Ok(());
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let sum = old.add(&f)?;
                if !sum.is_zero() {
                    self.terms.insert(m, sum);
                }
            }
            None => {
                self.terms.insert(m, f);
            }
        }
        Ok(())
    }

    /// Adds `D ⊗ f`.
    pub fn add_tensor(&mut self, d: &UEElement, f: &Function) -> Result<()> {
        for (m, c) in d.terms() {
            self.add_term(m.clone(), f.scale(c))?;
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (m, f) in &o.terms {
            out.add_term(m.clone(), f.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, f)| (m.clone(), f.scale(s))).collect() }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&-GaussianRational::one()))
    }

    /// Value at a point of `G_ε` as an element of `U(g_C)`; finite groups only.
    pub fn value_at(&self, group: &GroupData, p: &GroupPoint) -> Option<UEElement> {
        let idx = group.point_index(p)?;
        let mut out = UEElement::zero();
        for (m, f) in &self.terms {
            let v = f.as_finite()?.value(idx);
            out.add_term(m.clone(), v);
        }
        Some(out)
    }

    /// Largest absolute difference of function values at `samples` across monomials (line elements).
    pub fn max_line_difference(&self, o: &Self, samples: &[f64]) -> f64 {
        let mut keys: Vec<&Monomial> = self.terms.keys().chain(o.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        let zero = LineFunction::default();
        keys.into_iter()
            .map(|m| {
                let a = self.terms.get(m).and_then(Function::as_line).unwrap_or(&zero);
                let b = o.terms.get(m).and_then(Function::as_line).unwrap_or(&zero);
                a.add(&b.scale(Complex64::new(-1.0, 0.0))).max_abs_on(samples)
            })
            .fold(0.0, f64::max)
    }

    /// Largest absolute function value at `samples` across monomials (line elements).
    pub fn max_line_value(&self, samples: &[f64]) -> f64 {
        self.max_line_difference(&Self::zero(), samples)
    }
}

fn check_class(group: &GroupData, f: &Function) -> Result<()> {
    match (group, f) {
        (GroupData::Finite(g), Function::Finite(v)) if v.values().len() == 2 * g.order() => Ok(()),
        (GroupData::Line(_), Function::Line(_)) => Ok(()),
        _ => Err(Error::FunctionClassMismatch("function does not live on this pair's group".into())),
    }
}

fn check_line_action(pair: &Pair) -> Result<()> {
    match pair.group() {
        GroupData::Line(l) if !l.acts_trivially() => Err(Error::NontrivialLineAction),
        _ => Ok(()),
    }
}

/// `α_g(D)` for `g ∈ G_ε`.
pub fn alpha(pair: &Pair, g: &GroupPoint, d: &UEElement) -> UEElement {
    match pair.group() {
        GroupData::Finite(_) => pair.env().apply_auto_unchecked(&pair.ad().matrix(g), d),
        GroupData::Line(_) => {
            if g.eps {
                pair.env().apply_parity(d)
            } else {
                d.clone()
            }
        }
    }
}

fn mono(m: &Monomial) -> UEElement {
    UEElement::from_monomial(m.clone(), GaussianRational::one())
}

/// `(D₁⊗f₁)(D₂⊗f₂)(g') = ∫ f₁(g) f₂(g⁻¹g') D₁ α_g(D₂) dg`.
pub fn xp_multiply(pair: &Pair, a: &CrossedElement, b: &CrossedElement) -> Result<CrossedElement> {
    check_line_action(pair)?;
    let group = pair.group();
    let env = pair.env();
    let mut out = CrossedElement::zero();
    for (m1, f1) in &a.terms {
        check_class(group, f1)?;
        for (m2, f2) in &b.terms {
            check_class(group, f2)?;
            let d1 = mono(m1);
            let d2 = mono(m2);
            match (f1, group) {
                (Function::Finite(v1), GroupData::Finite(_)) => {
                    for (i, g) in group.points().iter().enumerate() {
                        let c = v1.value(i);
                        if c.is_zero() {
                            continue;
                        }
                        let e = env.multiply(&d1, &alpha(pair, g, &d2))?;
                        let h = function::left_translate(group, g, f2)?.scale(c);
                        out.add_tensor(&e, &h)?;
                    }
                }
                (Function::Line(_), GroupData::Line(_)) => {
                    let (plus, minus) = f1.split_eps(group);
                    let e_plus = env.multiply(&d1, &d2)?;
                    let e_minus = env.multiply(&d1, &env.apply_parity(&d2))?;
                    out.add_tensor(&e_plus, &function::convolve(group, &plus, f2)?)?;
                    out.add_tensor(&e_minus, &function::convolve(group, &minus, f2)?)?;
                }
                _ => return Err(Error::FunctionClassMismatch("mixed function classes".into())),
            }
        }
    }
    Ok(out)
}

/// `(D⊗f)*(g) = Δ(g⁻¹) conj(f(g⁻¹)) α_g(D†)`.
pub fn xp_star(pair: &Pair, a: &CrossedElement) -> Result<CrossedElement> {
    check_line_action(pair)?;
    let group = pair.group();
    let env = pair.env();
    let mut out = CrossedElement::zero();
    for (m, f) in &a.terms {
        check_class(group, f)?;
        let dd = env.dagger(&mono(m));
        let fb = function::breve(group, f)?;
        match group {
            GroupData::Finite(_) => {
                for (i, g) in group.points().iter().enumerate() {
                    let v = fb.as_finite().expect("finite").value(i);
                    if v.is_zero() {
                        continue;
                    }
                    let delta = function::FiniteFunction::delta(group.points().len(), i).scale(v);
                    out.add_tensor(&alpha(pair, g, &dd), &Function::Finite(delta))?;
                }
            }
            GroupData::Line(_) => {
                let (plus, minus) = fb.split_eps(group);
                out.add_tensor(&dd, &plus)?;
                out.add_tensor(&env.apply_parity(&dd), &minus)?;
            }
        }
    }
    Ok(out)
}

/// A multiplier `(λ, ρ)` of `A°`, kept symbolic and evaluated on demand.
#[derive(Debug, Clone, PartialEq)]
pub enum Multiplier {
    Identity,
    /// `(λ_g, ρ_g)`.
    Group(GroupPoint),
    /// `(λ_D, ρ_D)` with `λ_D(E⊗f) = DE⊗f` and `ρ_D(E⊗f)(g) = f(g) E α_g(D)`.
    Lie(UEElement),
    /// `(λλ', ρ'ρ)`.
    Compose(Box<Multiplier>, Box<Multiplier>),
    /// `(ρ*, λ*)`.
    Star(Box<Multiplier>),
}

pub fn mul_group(g: GroupPoint) -> Multiplier {
    Multiplier::Group(g)
}

/// `(λ_x, ρ_x)` for the basis element `x`.
pub fn mul_lie(x: usize) -> Multiplier {
    Multiplier::Lie(UEElement::generator(x))
}

/// `(λ_D, ρ_D)` for any `D ∈ U(g_C)`; linear combinations of basis elements give `(λ_x, ρ_x)` for `x ∈ g_C`.
pub fn mul_lie_element(d: UEElement) -> Multiplier {
    Multiplier::Lie(d)
}

pub fn mul_compose(m1: Multiplier, m2: Multiplier) -> Multiplier {
    Multiplier::Compose(Box::new(m1), Box::new(m2))
}

pub fn mul_star(m: Multiplier) -> Multiplier {
    Multiplier::Star(Box::new(m))
}

impl Multiplier {
    /// Left action `λ(a)`.
    pub fn lam(&self, pair: &Pair, a: &CrossedElement) -> Result<CrossedElement> {
        match self {
            Multiplier::Identity => Ok(a.clone()),
            Multiplier::Group(g) => {
                let mut out = CrossedElement::zero();
                for (m, f) in &a.terms {
                    out.add_tensor(&alpha(pair, g, &mono(m)), &function::left_translate(pair.group(), g, f)?)?;
                }
                Ok(out)
            }
            Multiplier::Lie(d) => {
                let mut out = CrossedElement::zero();
                for (m, f) in &a.terms {
                    out.add_tensor(&pair.env().multiply(d, &mono(m))?, f)?;
                }
                Ok(out)
            }
            Multiplier::Compose(m1, m2) => m1.lam(pair, &m2.lam(pair, a)?),
            Multiplier::Star(m) => xp_star(pair, &m.rho(pair, &xp_star(pair, a)?)?),
        }
    }

    /// Right action `ρ(a)`.
    pub fn rho(&self, pair: &Pair, a: &CrossedElement) -> Result<CrossedElement> {
        match self {
            Multiplier::Identity => Ok(a.clone()),
            Multiplier::Group(g) => {
                let mut out = CrossedElement::zero();
                for (m, f) in &a.terms {
                    out.add_tensor(&mono(m), &function::right_translate_inv(pair.group(), g, f)?)?;
                }
                Ok(out)
            }
            Multiplier::Lie(d) => {
                let group = pair.group();
                let env = pair.env();
                let mut out = CrossedElement::zero();
                for (m, f) in &a.terms {
                    match f {
                        Function::Finite(v) => {
                            let n = v.values().len();
                            for (i, g) in group.points().iter().enumerate() {
                                let c = v.value(i);
                                if c.is_zero() {
                                    continue;
                                }
                                let e = env.multiply(&mono(m), &alpha(pair, g, d))?;
                                out.add_tensor(&e, &Function::Finite(function::FiniteFunction::delta(n, i).scale(c)))?;
                            }
                        }
                        Function::Line(_) => {
                            let (plus, minus) = f.split_eps(group);
                            out.add_tensor(&env.multiply(&mono(m), d)?, &plus)?;
                            out.add_tensor(&env.multiply(&mono(m), &env.apply_parity(d))?, &minus)?;
                        }
                    }
                }
                Ok(out)
            }
            Multiplier::Compose(m1, m2) => m2.rho(pair, &m1.rho(pair, a)?),
            Multiplier::Star(m) => xp_star(pair, &m.lam(pair, &xp_star(pair, a)?)?),
        }
    }
}

/// `∫ γ_{f,D,h}(g) dg` with `γ_{f,D,h}(g) = f(g) α_g(D) ⊗ L_g h`.
pub fn gamma_integral(pair: &Pair, f: &Function, d: &UEElement, h: &Function) -> Result<CrossedElement> {
    check_line_action(pair)?;
    let group = pair.group();
    check_class(group, f)?;
    check_class(group, h)?;
    let mut out = CrossedElement::zero();
    match f {
        Function::Finite(v) => {
            for (i, g) in group.points().iter().enumerate() {
                let c = v.value(i);
                if c.is_zero() {
                    continue;
                }
                out.add_tensor(&alpha(pair, g, d), &function::left_translate(group, g, h)?.scale(c))?;
            }
        }
        Function::Line(_) => {
            // ∫ f(g) L_g h dg = f ⋆ h, split by the ε-component where α acts
            let (plus, minus) = f.split_eps(group);
            out.add_tensor(d, &function::convolve(group, &plus, h)?)?;
            out.add_tensor(&pair.env().apply_parity(d), &function::convolve(group, &minus, h)?)?;
        }
    }
    Ok(out)
}

/// The integrand `γ_{f,D,h}(g)` at a single point.
pub fn gamma_at(pair: &Pair, f: &Function, d: &UEElement, h: &Function, g: &GroupPoint) -> Result<CrossedElement> {
    let group = pair.group();
    let weight = match (f, g.base) {
        (Function::Finite(v), _) => v.value(group.point_index(g).expect("finite point")).to_complex(),
        (Function::Line(l), crate::group::GroupBase::Line(t)) => l.eval(t, g.eps),
        _ => return Err(Error::FunctionClassMismatch("point does not match function".into())),
    };
    let mut out = CrossedElement::zero();
    let lh = function::left_translate(group, g, h)?;
    let scaled = match lh {
        Function::Line(l) => Function::Line(l.scale(weight)),
        Function::Finite(v) => Function::Finite(v.scale(f.as_finite().expect("finite").value(group.point_index(g).expect("finite point")))),
    };
    out.add_tensor(&alpha(pair, g, d), &scaled)?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitResidual {
    /// `Σ_terms ‖(L_{e^{hx}} f − f)/h − R_x f‖_{L¹}`.
    pub residual: f64,
    /// Taylor bound `(h/2)·Σ_terms ‖R_x² f‖_{L¹}` (certified upper bounds).
    pub taylor_bound: f64,
}

/// Finite-difference check that `t ↦ λ_{exp(tx)}(a)` has derivative `Σ D ⊗ R_x f`.
pub fn orbit_derivative_check(pair: &Pair, x: usize, a: &CrossedElement, h: f64) -> Result<OrbitResidual> {
    let group = pair.group();
    if !group.is_line() {
        return Err(Error::NeedsLineGroup("orbit derivative".into()));
    }
    check_line_action(pair)?;
    let mut residual = 0.0;
    let mut second = 0.0;
    for f in a.terms.values() {
        let moved = function::left_translate(group, &GroupPoint::line(h, false), f)?;
        let deriv = function::right_derivative(group, pair.algebra(), x, f)?;
        let (Function::Line(mv), Function::Line(f0), Function::Line(d)) = (&moved, f, &deriv) else {
            unreachable!("line group carries line functions")
        };
        let diff = mv.add(&f0.scale(Complex64::new(-1.0, 0.0))).scale(Complex64::new(1.0 / h, 0.0)).add(&d.scale(Complex64::new(-1.0, 0.0)));
        residual += diff.l1_norm();
        second += d.right_derivative().l1_bound();
    }
    Ok(OrbitResidual { residual, taylor_bound: 0.5 * h.abs() * second })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::SuperAlgebra;
    use crate::function::{FiniteFunction, GaussianPoly};
    use crate::group::{FiniteGroup, LineGroup};
    use crate::linalg::RatMatrix;
    use crate::scalar::rat_int;
    use std::sync::Arc;

    fn z2_pair() -> Pair {
        let alg = SuperAlgebra::builder("odd1").odd("x").build().unwrap();
        let g = FiniteGroup::new(
            vec!["e".into(), "s".into()],
            vec![vec![0, 1], vec![1, 0]],
            vec![(1, RatMatrix::from_diag(&[rat_int(-1)]))],
            1,
        )
        .unwrap();
        Pair::new("z2odd", Arc::new(alg), GroupData::Finite(g)).unwrap()
    }

    fn hc_pair() -> Pair {
        let alg = SuperAlgebra::builder("hc").even("z").odd("x").bracket("x", "x", &[("z", rat_int(1))]).build().unwrap();
        let l = LineGroup::new(&alg, 0).unwrap();
        Pair::new("hc", Arc::new(alg), GroupData::Line(l)).unwrap()
    }

    fn delta(pair: &Pair, g: usize, eps: bool) -> Function {
        let idx = pair.group().point_index(&GroupPoint::finite(g, eps)).unwrap();
        Function::Finite(FiniteFunction::delta(pair.group().points().len(), idx))
    }

    fn gauss(rate: f64, shift: f64) -> Function {
        Function::Line(LineFunction::plus_only(GaussianPoly::gaussian(Complex64::new(1.0, 0.0), rate, shift).unwrap()))
    }

    #[test]
    fn delta_convolution() {
        let p = z2_pair();
        let x = UEElement::generator(0);
        let a = CrossedElement::tensor(&p, &x, delta(&p, 0, false)).unwrap();
        let b = CrossedElement::from_function(&p, delta(&p, 1, false)).unwrap();
        let expect = CrossedElement::tensor(&p, &x, delta(&p, 1, false)).unwrap();
        assert_eq!(xp_multiply(&p, &a, &b).unwrap(), expect);
    }

    #[test]
    fn parity_twist_kills_square() {
        let p = z2_pair();
        let x = UEElement::generator(0);
        let a = CrossedElement::tensor(&p, &x, delta(&p, 0, true)).unwrap();
        let b = CrossedElement::tensor(&p, &x, delta(&p, 0, false)).unwrap();
        assert!(xp_multiply(&p, &a, &b).unwrap().is_zero());
    }

    #[test]
    fn star_of_odd_delta() {
        let p = z2_pair();
        let x = UEElement::generator(0);
        let a = CrossedElement::tensor(&p, &x, delta(&p, 1, false)).unwrap();
        let expect = CrossedElement::tensor(&p, &x.scale(&GaussianRational::i()), delta(&p, 1, false)).unwrap();
        let s = xp_star(&p, &a).unwrap();
        assert_eq!(s, expect);
        assert_eq!(xp_star(&p, &s).unwrap(), a);
    }

    #[test]
    fn hc_odd_square() {
        let p = hc_pair();
        let x = UEElement::generator(1);
        let f = gauss(1.0, 0.0);
        let h = gauss(2.0, 0.5);
        let prod = xp_multiply(&p, &CrossedElement::tensor(&p, &x, f.clone()).unwrap(), &CrossedElement::tensor(&p, &x, h.clone()).unwrap()).unwrap();
        let half_z = UEElement::generator(0).scale(&GaussianRational::from_ratio(1, 2));
        let expect = CrossedElement::tensor(&p, &half_z, function::convolve(p.group(), &f, &h).unwrap()).unwrap();
        let samples: Vec<f64> = (-20..=20).map(|k| k as f64 * 0.25).collect();
        assert!(prod.max_line_difference(&expect, &samples) < 1e-12);
    }

    #[test]
    fn rho_x_on_delta_s() {
        let p = z2_pair();
        let one_s = CrossedElement::from_function(&p, delta(&p, 1, false)).unwrap();
        let got = mul_lie(0).rho(&p, &one_s).unwrap();
        let expect = CrossedElement::tensor(&p, &UEElement::generator(0).scale(&-GaussianRational::one()), delta(&p, 1, false)).unwrap();
        assert_eq!(got, expect);
    }

    #[test]
    fn lambda_eps_flips_odd() {
        let p = hc_pair();
        let x = UEElement::generator(1);
        let f = gauss(1.0, 0.3);
        let a = CrossedElement::tensor(&p, &x, f.clone()).unwrap();
        let eps = GroupPoint::line(0.0, true);
        let got = mul_group(eps).lam(&p, &a).unwrap();
        let moved = function::left_translate(p.group(), &eps, &f).unwrap();
        let expect = CrossedElement::tensor(&p, &x.scale(&-GaussianRational::one()), moved).unwrap();
        assert_eq!(got, expect);
    }

    #[test]
    fn gamma_matches_product_finite() {
        let p = z2_pair();
        let f = Function::Finite(FiniteFunction::from_values(vec![
            GaussianRational::from_int(1),
            GaussianRational::from_ratio(2, 3),
            GaussianRational::i(),
            GaussianRational::from_int(-2),
        ]));
        let h = delta(&p, 1, true);
        let x = UEElement::generator(0);
        let lhs = gamma_integral(&p, &f, &x, &h).unwrap();
        let rhs = xp_multiply(&p, &CrossedElement::from_function(&p, f).unwrap(), &CrossedElement::tensor(&p, &x, h).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn nontrivial_line_action_is_rejected() {
        let alg = SuperAlgebra::builder("shear")
            .even("z")
            .odd("x1")
            .odd("x2")
            .bracket("z", "x1", &[("x2", rat_int(1))])
            .build()
            .unwrap();
        let l = LineGroup::new(&alg, 0).unwrap();
        assert!(!l.acts_trivially());
        let pair = Pair::new("shear", Arc::new(alg), GroupData::Line(l)).unwrap();
        let a = CrossedElement::from_function(&pair, gauss(1.0, 0.0)).unwrap();
        assert!(matches!(xp_multiply(&pair, &a, &a), Err(Error::NontrivialLineAction)));
        assert!(matches!(xp_star(&pair, &a), Err(Error::NontrivialLineAction)));
    }

    #[test]
    fn orbit_residual_is_first_order() {
        let p = hc_pair();
        let a = CrossedElement::from_function(&p, gauss(1.0, 0.0)).unwrap();
        let r1 = orbit_derivative_check(&p, 0, &a, 1e-3).unwrap();
        let r2 = orbit_derivative_check(&p, 0, &a, 5e-4).unwrap();
        assert!(r1.residual <= r1.taylor_bound);
        let ratio = r2.residual / r1.residual;
        assert!((0.4..=0.6).contains(&ratio), "{ratio}");
        assert!(orbit_derivative_check(&z2_pair(), 0, &CrossedElement::zero(), 1e-3).is_err());
    }
}
