//! Test functions on `G_ε`.
//!
//! Finite groups carry exact Gaussian-rational values on all `2|G|` points. On the line the
//! class is finite sums `p(t)·exp(-a t² + b t)` with `a > 0`, stored separately on `G` and
//! on `G·ε`; it is closed under convolution, translation, differentiation, conjugation and
//! reflection, and every integral the crate needs has a closed form.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{GroupBase, GroupData, GroupPoint};
use crate::scalar::GaussianRational;

type Poly = Vec<Complex64>;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn poly_trim(p: &mut Poly) {
    while p.last().is_some_and(|z| *z == Complex64::new(0.0, 0.0)) {
        p.pop();
    }
}

fn poly_eval(p: &[Complex64], t: Complex64) -> Complex64 {
    p.iter().rev().fold(c(0.0), |acc, a| acc * t + a)
}

fn poly_mul(p: &[Complex64], q: &[Complex64]) -> Poly {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut out = vec![c(0.0); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

fn poly_add(p: &[Complex64], q: &[Complex64]) -> Poly {
    let n = p.len().max(q.len());
    (0..n).map(|i| p.get(i).copied().unwrap_or_default() + q.get(i).copied().unwrap_or_default()).collect()
}

/// Coefficients of `p(u + mu)` in `u`.
fn poly_shift(p: &[Complex64], mu: Complex64) -> Poly {
    let mut out: Poly = Vec::new();
    for a in p.iter().rev() {
        // out = out·(u + mu) + a
        let mut next = vec![c(0.0); out.len() + 1];
        for (i, b) in out.iter().enumerate() {
            next[i + 1] += b;
            next[i] += b * mu;
        }
        next[0] += a;
        out = next;
    }
    out
}

fn poly_derivative(p: &[Complex64]) -> Poly {
    p.iter().enumerate().skip(1).map(|(k, a)| a * k as f64).collect()
}

/// `Γ((k+1)/2)` for `k ≥ 0`.
pub fn half_gamma(k: usize) -> f64 {
    // Γ(1/2) = √π, Γ(1) = 1, Γ(s+1) = sΓ(s)
    let mut s = if k.is_multiple_of(2) { 0.5 } else { 1.0 };
    let mut g = if k.is_multiple_of(2) { PI.sqrt() } else { 1.0 };
    let target = (k as f64 + 1.0) / 2.0;
    while s < target - 1e-9 {
        g *= s;
        s += 1.0;
    }
    g
}

/// `∫ u^k exp(-a u²) du` over the real line.
pub fn gaussian_moment(k: usize, a: f64) -> f64 {
    if k % 2 == 1 {
        0.0
    } else {
        half_gamma(k) / a.powf((k as f64 + 1.0) / 2.0)
    }
}

/// `∫ |u|^k exp(-a u²) du = Γ((k+1)/2) / a^{(k+1)/2}`.
pub fn abs_gaussian_moment(k: usize, a: f64) -> f64 {
    half_gamma(k) / a.powf((k as f64 + 1.0) / 2.0)
}

/// One term `p(t)·exp(-rate·t² + shift·t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussTerm {
    pub poly: Vec<Complex64>,
    pub rate: f64,
    pub shift: f64,
}

impl GaussTerm {
    pub fn new(poly: Vec<Complex64>, rate: f64, shift: f64) -> Result<Self> {
        if !(rate > 0.0 && rate.is_finite()) {
            return Err(Error::FunctionClassMismatch(format!("Gaussian rate must be positive, got {rate}")));
        }
        if !shift.is_finite() {
            return Err(Error::FunctionClassMismatch("Gaussian shift must be finite".into()));
        }
        Ok(Self { poly, rate, shift })
    }

    fn eval(&self, t: f64) -> Complex64 {
        poly_eval(&self.poly, c(t)) * (-self.rate * t * t + self.shift * t).exp()
    }

    fn center(&self) -> f64 {
        self.shift / (2.0 * self.rate)
    }
}

/// A finite sum of [`GaussTerm`]s on the real line.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GaussianPoly {
    terms: Vec<GaussTerm>,
}

impl GaussianPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: Vec<GaussTerm>) -> Self {
        let mut g = Self { terms };
        g.normalize();
        g
    }

    /// `coeff·exp(-rate·t² + shift·t)`.
    pub fn gaussian(coeff: Complex64, rate: f64, shift: f64) -> Result<Self> {
        Ok(Self::from_terms(vec![GaussTerm::new(vec![coeff], rate, shift)?]))
    }

    pub fn terms(&self) -> &[GaussTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn normalize(&mut self) {
        let mut merged: Vec<GaussTerm> = Vec::new();
        for t in self.terms.drain(..) {
            match merged.iter_mut().find(|m| m.rate == t.rate && m.shift == t.shift) {
                Some(m) => m.poly = poly_add(&m.poly, &t.poly),
                None => merged.push(t),
            }
        }
        for m in &mut merged {
            poly_trim(&mut m.poly);
        }
        merged.retain(|m| !m.poly.is_empty());
        self.terms = merged;
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        self.terms.iter().map(|term| term.eval(t)).sum()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        Self::from_terms(terms)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|t| GaussTerm { poly: t.poly.iter().map(|a| a * s).collect(), ..t.clone() })
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(c(-1.0)))
    }

    /// Pointwise product with a polynomial.
    pub fn mul_poly(&self, q: &[Complex64]) -> Self {
        Self::from_terms(self.terms.iter().map(|t| GaussTerm { poly: poly_mul(&t.poly, q), ..t.clone() }).collect())
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        Self::from_terms(
            self.terms.iter().map(|t| GaussTerm { poly: t.poly.iter().map(Complex64::conj).collect(), ..t.clone() }).collect(),
        )
    }

    /// `t ↦ f(-t)`.
    pub fn reflect(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|t| GaussTerm {
                    poly: t.poly.iter().enumerate().map(|(k, a)| if k % 2 == 1 { -a } else { *a }).collect(),
                    rate: t.rate,
                    shift: -t.shift,
                })
                .collect(),
        )
    }

    /// `t ↦ f(t - tau)`.
    pub fn translate(&self, tau: f64) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|t| {
                    // exp(-a(t-τ)² + b(t-τ)) = exp(-a t² + (b + 2aτ)t) · exp(-aτ² - bτ)
                    let factor = (-t.rate * tau * tau - t.shift * tau).exp();
                    let poly = poly_shift(&t.poly, c(-tau)).into_iter().map(|a| a * factor).collect();
                    GaussTerm { poly, rate: t.rate, shift: t.shift + 2.0 * t.rate * tau }
                })
                .collect(),
        )
    }

    /// `d/dt`.
    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|t| {
                    let lin = [c(t.shift), c(-2.0 * t.rate)];
                    GaussTerm { poly: poly_add(&poly_derivative(&t.poly), &poly_mul(&t.poly, &lin)), ..t.clone() }
                })
                .collect(),
        )
    }

    /// Closed-form convolution `∫ f(s) h(t - s) ds`.
    pub fn convolve(&self, o: &Self) -> Self {
        let mut terms = Vec::new();
        for f in &self.terms {
            for h in &o.terms {
                terms.push(convolve_terms(f, h));
            }
        }
        Self::from_terms(terms)
    }

    /// `∫ f(t) e^{iλt} dt`.
    pub fn fourier_at(&self, lambda: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|t| {
                let beta = Complex64::new(t.shift, lambda);
                let mu = beta / (2.0 * t.rate);
                let shifted = poly_shift(&t.poly, mu);
                let integral: Complex64 =
                    shifted.iter().enumerate().map(|(k, a)| a * gaussian_moment(k, t.rate)).sum();
                integral * (beta * beta / (4.0 * t.rate)).exp()
            })
            .sum()
    }

    /// Certified upper bound on `‖f‖_{L¹}` by the triangle inequality over terms and monomials
    /// expanded about each Gaussian's center.
    pub fn l1_bound(&self) -> f64 {
        let raw: f64 = self
            .terms
            .iter()
            .map(|t| {
                let mu = t.center();
                let scale = (t.shift * t.shift / (4.0 * t.rate)).exp();
                let shifted = poly_shift(&t.poly, c(mu));
                scale * shifted.iter().enumerate().map(|(k, a)| a.norm() * abs_gaussian_moment(k, t.rate)).sum::<f64>()
            })
            .sum();
        raw * (1.0 + 1e-14)
    }

    /// `‖f‖_{L¹}` by adaptive Simpson quadrature over the effective support.
    pub fn l1_norm(&self) -> f64 {
        if self.terms.is_empty() {
            return 0.0;
        }
        let (lo, hi) = self.support_window();
        let panels = 256;
        let h = (hi - lo) / panels as f64;
        let scale = self.l1_bound().max(f64::MIN_POSITIVE);
        let tol = 1e-14 * scale / panels as f64;
        let f = |t: f64| self.eval(t).norm();
        (0..panels).map(|k| adaptive_simpson(&f, lo + k as f64 * h, lo + (k + 1) as f64 * h, tol, 40)).sum()
    }

    fn support_window(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for t in &self.terms {
            let deg = t.poly.len().saturating_sub(1) as f64;
            let r = ((60.0 + 4.0 * deg) / t.rate).sqrt() + deg / t.rate.sqrt();
            lo = lo.min(t.center() - r);
            hi = hi.max(t.center() + r);
        }
        (lo, hi)
    }

    pub fn max_abs_on(&self, points: &[f64]) -> f64 {
        points.iter().map(|&t| self.eval(t).norm()).fold(0.0, f64::max)
    }
}

fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(f: &impl Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            return left + right + (left + right - whole) / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    rec(f, a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, depth)
}

/// Bivariate polynomial in `(u, t)`, indexed `[deg_u][deg_t]`.
type Poly2 = Vec<Vec<Complex64>>;

fn poly2_mul(p: &Poly2, q: &Poly2) -> Poly2 {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let pt = p.iter().map(Vec::len).max().unwrap_or(0);
    let qt = q.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![vec![c(0.0); (pt + qt).max(1) - 1]; p.len() + q.len() - 1];
    for (i, pi) in p.iter().enumerate() {
        for (j, a) in pi.iter().enumerate() {
            for (k, qk) in q.iter().enumerate() {
                for (l, b) in qk.iter().enumerate() {
                    out[i + k][j + l] += a * b;
                }
            }
        }
    }
    out
}

/// `p(cu·u + c0 + ct·t)` as a bivariate polynomial.
fn poly_compose_linear(p: &[Complex64], cu: f64, c0: f64, ct: f64) -> Poly2 {
    let lin: Poly2 = vec![vec![c(c0), c(ct)], vec![c(cu), c(0.0)]];
    let mut out: Poly2 = Vec::new();
    for a in p.iter().rev() {
        out = if out.is_empty() { Vec::new() } else { poly2_mul(&out, &lin) };
        if out.is_empty() {
            out = vec![vec![c(0.0)]];
        }
        out[0][0] += a;
    }
    out
}

fn convolve_terms(f: &GaussTerm, h: &GaussTerm) -> GaussTerm {
    let (a, b, cc, d) = (f.rate, f.shift, h.rate, h.shift);
    let big_a = a + cc;
    let beta = (b - d) / (2.0 * big_a);
    let gamma = cc / big_a;
    // s = u + β + γt ;  t - s = (1 - γ)t - u - β
    let p = poly_compose_linear(&f.poly, 1.0, beta, gamma);
    let q = poly_compose_linear(&h.poly, -1.0, -beta, 1.0 - gamma);
    let pq = poly2_mul(&p, &q);
    let tdeg = pq.iter().map(Vec::len).max().unwrap_or(0);
    let mut poly = vec![c(0.0); tdeg];
    for (i, row) in pq.iter().enumerate() {
        let m = gaussian_moment(i, big_a);
        if m == 0.0 {
            continue;
        }
        for (j, coef) in row.iter().enumerate() {
            poly[j] += coef * m;
        }
    }
    let konst = ((b - d) * (b - d) / (4.0 * big_a)).exp();
    for x in &mut poly {
        *x *= konst;
    }
    GaussTerm { poly, rate: a * cc / big_a, shift: (a * d + cc * b) / big_a }
}

/// `f = (f⁺ on G, f⁻ on G·ε)` for `G = R`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LineFunction {
    pub plus: GaussianPoly,
    pub minus: GaussianPoly,
}

impl LineFunction {
    pub fn new(plus: GaussianPoly, minus: GaussianPoly) -> Self {
        Self { plus, minus }
    }

    pub fn plus_only(plus: GaussianPoly) -> Self {
        Self { plus, minus: GaussianPoly::zero() }
    }

    pub fn minus_only(minus: GaussianPoly) -> Self {
        Self { plus: GaussianPoly::zero(), minus }
    }

    pub fn is_zero(&self) -> bool {
        self.plus.is_zero() && self.minus.is_zero()
    }

    pub fn eval(&self, t: f64, eps: bool) -> Complex64 {
        if eps {
            self.minus.eval(t)
        } else {
            self.plus.eval(t)
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { plus: self.plus.add(&o.plus), minus: self.minus.add(&o.minus) }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { plus: self.plus.scale(s), minus: self.minus.scale(s) }
    }

    /// Convolution on `G_ε = R × Z₂`.
    pub fn convolve(&self, o: &Self) -> Self {
        Self {
            plus: self.plus.convolve(&o.plus).add(&self.minus.convolve(&o.minus)),
            minus: self.plus.convolve(&o.minus).add(&self.minus.convolve(&o.plus)),
        }
    }

    pub fn breve(&self) -> Self {
        Self { plus: self.plus.conj().reflect(), minus: self.minus.conj().reflect() }
    }

    /// `L_{(τ, ε^e)} f (t, e') = f(t - τ, e' + e)`; on an abelian group this is also `R_{g⁻¹}`.
    pub fn translate(&self, tau: f64, eps: bool) -> Self {
        let (p, m) = (self.plus.translate(tau), self.minus.translate(tau));
        if eps {
            Self { plus: m, minus: p }
        } else {
            Self { plus: p, minus: m }
        }
    }

    /// `R_z f = -f'` on both components.
    pub fn right_derivative(&self) -> Self {
        Self { plus: self.plus.derivative().scale(c(-1.0)), minus: self.minus.derivative().scale(c(-1.0)) }
    }

    pub fn l1_bound(&self) -> f64 {
        self.plus.l1_bound() + self.minus.l1_bound()
    }

    pub fn l1_norm(&self) -> f64 {
        self.plus.l1_norm() + self.minus.l1_norm()
    }

    pub fn max_abs_on(&self, points: &[f64]) -> f64 {
        self.plus.max_abs_on(points).max(self.minus.max_abs_on(points))
    }
}

/// Exact function on the `2|G|` points of a finite `G_ε`, indexed `g + e·|G|`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteFunction {
    values: Vec<GaussianRational>,
}

impl FiniteFunction {
    pub fn zero(points: usize) -> Self {
        Self { values: vec![GaussianRational::zero(); points] }
    }

    pub fn from_values(values: Vec<GaussianRational>) -> Self {
        Self { values }
    }

    pub fn delta(points: usize, at: usize) -> Self {
        let mut f = Self::zero(points);
        f.values[at] = GaussianRational::one();
        f
    }

    pub fn values(&self) -> &[GaussianRational] {
        &self.values
    }

    pub fn value(&self, idx: usize) -> &GaussianRational {
        &self.values[idx]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(GaussianRational::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { values: self.values.iter().zip(&o.values).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        Self { values: self.values.iter().map(|a| a * s).collect() }
    }

    /// Exact `Σ |f(g)|` as a float.
    pub fn l1_norm(&self) -> f64 {
        self.values.iter().map(|v| v.to_complex().norm()).sum()
    }
}

/// A test function in either realization.
#[derive(Debug, Clone, PartialEq)]
pub enum Function {
    Finite(FiniteFunction),
    Line(LineFunction),
}

impl Function {
    pub fn is_zero(&self) -> bool {
        match self {
            Function::Finite(f) => f.is_zero(),
            Function::Line(f) => f.is_zero(),
        }
    }

    pub fn add(&self, o: &Function) -> Result<Function> {
        match (self, o) {
            (Function::Finite(a), Function::Finite(b)) if a.values.len() == b.values.len() => Ok(Function::Finite(a.add(b))),
            (Function::Line(a), Function::Line(b)) => Ok(Function::Line(a.add(b))),
            _ => Err(Error::FunctionClassMismatch("cannot add functions of different classes".into())),
        }
    }

    pub fn scale(&self, s: &GaussianRational) -> Function {
        match self {
            Function::Finite(f) => Function::Finite(f.scale(s)),
            Function::Line(f) => Function::Line(f.scale(s.to_complex())),
        }
    }

    pub fn as_finite(&self) -> Option<&FiniteFunction> {
        match self {
            Function::Finite(f) => Some(f),
            Function::Line(_) => None,
        }
    }

    pub fn as_line(&self) -> Option<&LineFunction> {
        match self {
            Function::Line(f) => Some(f),
            Function::Finite(_) => None,
        }
    }

    /// Zero function of the class matching `group`.
    pub fn zero_for(group: &GroupData) -> Function {
        match group {
            GroupData::Finite(g) => Function::Finite(FiniteFunction::zero(2 * g.order())),
            GroupData::Line(_) => Function::Line(LineFunction::default()),
        }
    }

    /// Restriction to `G` (the `e = 1` component) and to `G·ε`.
    pub fn split_eps(&self, group: &GroupData) -> (Function, Function) {
        match (self, group) {
            (Function::Finite(f), GroupData::Finite(g)) => {
                let n = g.order();
                let mut p = f.clone();
                let mut m = f.clone();
                for k in 0..2 * n {
                    if k < n {
                        m.values[k] = GaussianRational::zero();
                    } else {
                        p.values[k] = GaussianRational::zero();
                    }
                }
                (Function::Finite(p), Function::Finite(m))
            }
            (Function::Line(f), _) => {
                (Function::Line(LineFunction::plus_only(f.plus.clone())), Function::Line(LineFunction::minus_only(f.minus.clone())))
            }
            _ => panic!("function class does not match group"),
        }
    }
}

fn class_check(group: &GroupData, f: &Function) -> Result<()> {
    match (group, f) {
        (GroupData::Finite(g), Function::Finite(v)) if v.values.len() == 2 * g.order() => Ok(()),
        (GroupData::Line(_), Function::Line(_)) => Ok(()),
        _ => Err(Error::FunctionClassMismatch("function does not live on this group".into())),
    }
}

/// `(f ⋆ h)(g') = ∫ f(g) h(g⁻¹g') dg` with counting measure (finite) or Lebesgue × counting (line).
pub fn convolve(group: &GroupData, f: &Function, h: &Function) -> Result<Function> {
    class_check(group, f)?;
    class_check(group, h)?;
    match (f, h) {
        (Function::Finite(f), Function::Finite(h)) => {
            let pts = group.points();
            let mut out = FiniteFunction::zero(pts.len());
            for (i, g) in pts.iter().enumerate() {
                if f.values[i].is_zero() {
                    continue;
                }
                let ginv = group.inverse(g);
                for (j, gp) in pts.iter().enumerate() {
                    let k = group.point_index(&group.mul(&ginv, gp)).expect("finite point");
                    if !h.values[k].is_zero() {
                        out.values[j] += &(&f.values[i] * &h.values[k]);
                    }
                }
            }
            Ok(Function::Finite(out))
        }
        (Function::Line(f), Function::Line(h)) => Ok(Function::Line(f.convolve(h))),
        _ => Err(Error::FunctionClassMismatch("convolution of different classes".into())),
    }
}

/// `f̆(g) = Δ(g)⁻¹ conj(f(g⁻¹))`.
pub fn breve(group: &GroupData, f: &Function) -> Result<Function> {
    class_check(group, f)?;
    match f {
        Function::Finite(f) => {
            let pts = group.points();
            let values = pts
                .iter()
                .map(|g| {
                    let k = group.point_index(&group.inverse(g)).expect("finite point");
                    f.values[k].conj()
                })
                .collect();
            Ok(Function::Finite(FiniteFunction { values }))
        }
        Function::Line(f) => Ok(Function::Line(f.breve())),
    }
}

/// `L_g f(g') = f(g⁻¹g')`.
pub fn left_translate(group: &GroupData, g: &GroupPoint, f: &Function) -> Result<Function> {
    class_check(group, f)?;
    match (f, g.base) {
        (Function::Finite(f), GroupBase::Finite(_)) => {
            let pts = group.points();
            let ginv = group.inverse(g);
            let values = pts
                .iter()
                .map(|p| f.values[group.point_index(&group.mul(&ginv, p)).expect("finite point")].clone())
                .collect();
            Ok(Function::Finite(FiniteFunction { values }))
        }
        (Function::Line(f), GroupBase::Line(t)) => Ok(Function::Line(f.translate(t, g.eps))),
        _ => Err(Error::FunctionClassMismatch("group point does not match function class".into())),
    }
}

/// `Δ(g⁻¹) R_{g⁻¹} f`, i.e. `g' ↦ f(g' g⁻¹)`.
pub fn right_translate_inv(group: &GroupData, g: &GroupPoint, f: &Function) -> Result<Function> {
    class_check(group, f)?;
    match (f, g.base) {
        (Function::Finite(f), GroupBase::Finite(_)) => {
            let pts = group.points();
            let ginv = group.inverse(g);
            let values = pts
                .iter()
                .map(|p| f.values[group.point_index(&group.mul(p, &ginv)).expect("finite point")].clone())
                .collect();
            Ok(Function::Finite(FiniteFunction { values }))
        }
        (Function::Line(f), GroupBase::Line(t)) => Ok(Function::Line(f.translate(t, g.eps))),
        _ => Err(Error::FunctionClassMismatch("group point does not match function class".into())),
    }
}

/// `R_x f` for the even line generator `x`.
pub fn right_derivative(group: &GroupData, alg: &crate::algebra::SuperAlgebra, x: usize, f: &Function) -> Result<Function> {
    if alg.parity(x).is_odd() {
        return Err(Error::NotEven(alg.basis_name(x).to_string()));
    }
    let line = group.as_line().ok_or_else(|| Error::NeedsLineGroup("right derivative".into()))?;
    if line.generator() != x {
        return Err(Error::NotEven(format!("{} is not the line generator", alg.basis_name(x))));
    }
    match f {
        Function::Line(f) => Ok(Function::Line(f.right_derivative())),
        Function::Finite(_) => Err(Error::FunctionClassMismatch("finite function on a line group".into())),
    }
}

/// Certified upper bound on `‖f‖_{L¹(G_ε)}`.
pub fn l1_bound(f: &Function) -> f64 {
    match f {
        Function::Finite(f) => f.l1_norm() * (1.0 + 1e-14),
        Function::Line(f) => f.l1_bound(),
    }
}

/// `∫ f(t) e^{iλt} dt`.
pub fn fourier_at(f: &GaussianPoly, lambda: f64) -> Complex64 {
    f.fourier_at(lambda)
}

/// Writes `coeff·exp(-a t² + b t)` as a convolution `f₁ ⋆ h₁` of two Gaussians of rate `2a`.
pub fn factor_gaussian(g: &GaussianPoly) -> Result<(GaussianPoly, GaussianPoly)> {
    let [term] = g.terms() else {
        return Err(Error::FunctionClassMismatch("factorization needs a single Gaussian term".into()));
    };
    let [coeff] = term.poly.as_slice() else {
        return Err(Error::FunctionClassMismatch("factorization needs a constant polynomial".into()));
    };
    let a = term.rate;
    let mu = term.center();
    // e^{-2a s²} ⋆ e^{-2a s²} = √(π/(4a)) e^{-a t²}
    let norm = (4.0 * a / PI).sqrt() * (term.shift * term.shift / (4.0 * a)).exp();
    let f1 = GaussianPoly::gaussian(coeff * norm, 2.0 * a, 0.0)?.translate(mu);
    let h1 = GaussianPoly::gaussian(c(1.0), 2.0 * a, 0.0)?;
    Ok((f1, h1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss(rate: f64, shift: f64) -> GaussianPoly {
        GaussianPoly::gaussian(c(1.0), rate, shift).unwrap()
    }

    #[test]
    fn rate_must_be_positive() {
        assert!(GaussianPoly::gaussian(c(1.0), 0.0, 0.0).is_err());
        assert!(GaussianPoly::gaussian(c(1.0), -1.0, 0.0).is_err());
    }

    #[test]
    fn half_gamma_values() {
        assert!((half_gamma(0) - PI.sqrt()).abs() < 1e-15);
        assert_eq!(half_gamma(1), 1.0);
        assert!((half_gamma(2) - PI.sqrt() / 2.0).abs() < 1e-15);
        assert_eq!(half_gamma(3), 1.0);
        assert_eq!(half_gamma(5), 2.0);
    }

    #[test]
    fn gaussian_self_convolution() {
        let f = gauss(1.0, 0.0);
        let g = f.convolve(&f);
        let expected = |t: f64| (PI / 2.0).sqrt() * (-t * t / 2.0).exp();
        for t in [-2.0, -0.3, 0.0, 0.7, 3.1] {
            assert!((g.eval(t).re - expected(t)).abs() < 1e-14);
            assert!(g.eval(t).im.abs() < 1e-15);
        }
    }

    #[test]
    fn translate_and_derivative() {
        let f = gauss(1.0, 0.0);
        let g = f.translate(0.4);
        for t in [-1.0, 0.2, 1.3] {
            assert!((g.eval(t).re - (-(t - 0.4f64).powi(2)).exp()).abs() < 1e-14);
        }
        let d = LineFunction::plus_only(f).right_derivative();
        for t in [-1.0, 0.2, 1.3] {
            assert!((d.plus.eval(t).re - 2.0 * t * (-t * t).exp()).abs() < 1e-14);
        }
    }

    #[test]
    fn l1_bound_examples() {
        assert!((gauss(1.0, 0.0).l1_bound() - PI.sqrt()).abs() < 1e-12);
        let tg = gauss(1.0, 0.0).mul_poly(&[c(0.0), c(1.0)]);
        assert!((tg.l1_bound() - 1.0).abs() < 1e-12);
        assert!((tg.l1_norm() - 1.0).abs() < 1e-10);
        // shifted Gaussian: bound is exact
        let s = gauss(2.0, 1.0);
        assert!((s.l1_bound() - s.l1_norm()).abs() < 1e-10);
    }

    #[test]
    fn fourier_examples() {
        let f = gauss(1.0, 0.0);
        assert!((f.fourier_at(0.0) - c(PI.sqrt())).norm() < 1e-14);
        assert!((f.fourier_at(2.0) - c(PI.sqrt() * (-1.0f64).exp())).norm() < 1e-14);
        let odd = f.mul_poly(&[c(0.0), c(1.0)]);
        assert!(odd.fourier_at(0.0).norm() < 1e-15);
    }

    #[test]
    fn breve_of_polynomial_gaussian() {
        let p = GaussianPoly::from_terms(vec![GaussTerm::new(vec![c(1.0), Complex64::new(0.0, 2.0)], 1.0, 0.5).unwrap()]);
        let f = LineFunction::plus_only(p.clone());
        let b = f.breve();
        for t in [-1.0, 0.0, 0.8] {
            assert!((b.plus.eval(t) - p.eval(-t).conj()).norm() < 1e-14);
        }
        assert_eq!(b.breve(), f);
    }

    #[test]
    fn eps_components_of_convolution() {
        let f = LineFunction::new(gauss(1.0, 0.0), gauss(2.0, 0.0));
        let h = LineFunction::new(gauss(0.5, 0.0), gauss(1.5, 0.0));
        let k = f.convolve(&h);
        let minus = f.plus.convolve(&h.minus).add(&f.minus.convolve(&h.plus));
        for t in [-0.5, 0.1, 0.9] {
            assert!((k.minus.eval(t) - minus.eval(t)).norm() < 1e-14);
        }
    }

    #[test]
    fn gaussian_factorization() {
        let f = GaussianPoly::gaussian(Complex64::new(0.5, -1.0), 1.5, 0.8).unwrap();
        let (f1, h1) = factor_gaussian(&f).unwrap();
        let k = f1.convolve(&h1);
        for t in [-1.0, 0.0, 0.3, 2.0] {
            assert!((k.eval(t) - f.eval(t)).norm() <= 1e-9 * f.eval(t).norm().max(1e-3));
        }
    }
}
