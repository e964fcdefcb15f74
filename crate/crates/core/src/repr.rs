//! Finite-dimensional unitary representations of a pair, the map `ρ̂π(D⊗f) = ρ(D)π(f)`,
//! certified norm bounds, seminorm intervals and reconstruction of `(π, ρ)` from `ρ̂π`.

use std::collections::HashMap;
use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::algebra::{self, Parity};
use crate::crossed::{self, CrossedElement, Multiplier};
use crate::enveloping::{Monomial, UEElement};
use crate::error::{Error, Result};
use crate::function::{Function, LineFunction};
use crate::group::{GroupBase, GroupData, GroupPoint, Pair};
use crate::linalg::{rank_exact, rank_numeric, vec_norm, CMat, Mat, QMat, Scalar};
use crate::report::ValidationReport;
use crate::scalar::{GaussianRational, Rational};

/// Default tolerance for line-case identities checked in floating point.
pub const LINE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub enum RepData {
    /// `pi[g]` for each element of the finite group, exact.
    Finite { pi: Vec<QMat>, rho: Vec<QMat> },
    /// `π(t) = e^{iλt}·I` on the line.
    Line { lambda: f64, rho: Vec<CMat> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixRep {
    pub name: String,
    pub dim: usize,
    /// `π(ε)`.
    pub grading: QMat,
    pub data: RepData,
}

impl MatrixRep {
    pub fn is_line(&self) -> bool {
        matches!(self.data, RepData::Line { .. })
    }

    pub fn lambda(&self) -> Option<f64> {
        match self.data {
            RepData::Line { lambda, .. } => Some(lambda),
            RepData::Finite { .. } => None,
        }
    }

    fn rho_len(&self) -> usize {
        match &self.data {
            RepData::Finite { rho, .. } => rho.len(),
            RepData::Line { rho, .. } => rho.len(),
        }
    }

    /// `π(g)` for a point of `G_ε`.
    pub fn pi(&self, p: &GroupPoint) -> RepImage {
        match (&self.data, p.base) {
            (RepData::Finite { pi, .. }, GroupBase::Finite(g)) => {
                let m = pi[g].clone();
                RepImage::Exact(if p.eps { m.mul(&self.grading) } else { m })
            }
            (RepData::Line { lambda, .. }, GroupBase::Line(t)) => {
                let phase = Complex64::from_polar(1.0, lambda * t);
                let base = if p.eps { self.grading.to_complex() } else { CMat::identity(self.dim) };
                RepImage::Approx(base.scale(&phase))
            }
            _ => panic!("group point does not match representation"),
        }
    }

    /// `ρ(x)` for a basis index.
    pub fn rho(&self, x: usize) -> RepImage {
        match &self.data {
            RepData::Finite { rho, .. } => RepImage::Exact(rho[x].clone()),
            RepData::Line { rho, .. } => RepImage::Approx(rho[x].clone()),
        }
    }
}

/// A representation that passed every axiom for its pair.
#[derive(Debug, Clone)]
pub struct ValidatedRep {
    rep: MatrixRep,
    report: ValidationReport,
}

impl ValidatedRep {
    pub fn new(pair: &Pair, rep: MatrixRep) -> Result<Self> {
        let report = validate_rep(pair, &rep)?;
        if report.is_ok() {
            Ok(Self { rep, report })
        } else {
            Err(Error::InvalidRepresentation(report))
        }
    }

    pub fn rep(&self) -> &MatrixRep {
        &self.rep
    }

    pub fn name(&self) -> &str {
        &self.rep.name
    }

    pub fn report(&self) -> &ValidationReport {
        &self.report
    }
}

/// An operator on the representation space: exact over `Q(i)` for finite groups, floating point on the line.
#[derive(Debug, Clone, PartialEq)]
pub enum RepImage {
    Exact(QMat),
    Approx(CMat),
}

impl RepImage {
    pub fn to_complex(&self) -> CMat {
        match self {
            RepImage::Exact(m) => m.to_complex(),
            RepImage::Approx(m) => m.clone(),
        }
    }

    pub fn op_norm(&self) -> f64 {
        match self {
            RepImage::Exact(m) if m.is_zero() => 0.0,
            _ => self.to_complex().op_norm(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, RepImage::Exact(_))
    }

    pub fn mul(&self, o: &Self) -> Self {
        match (self, o) {
            (RepImage::Exact(a), RepImage::Exact(b)) => RepImage::Exact(a.mul(b)),
            _ => RepImage::Approx(self.to_complex().mul(&o.to_complex())),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        match (self, o) {
            (RepImage::Exact(a), RepImage::Exact(b)) => RepImage::Exact(a.add(b)),
            _ => RepImage::Approx(self.to_complex().add(&o.to_complex())),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        match (self, o) {
            (RepImage::Exact(a), RepImage::Exact(b)) => RepImage::Exact(a.sub(b)),
            _ => RepImage::Approx(self.to_complex().sub(&o.to_complex())),
        }
    }

    pub fn adjoint(&self) -> Self {
        match self {
            RepImage::Exact(a) => RepImage::Exact(a.adjoint()),
            RepImage::Approx(a) => RepImage::Approx(a.adjoint()),
        }
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        match self {
            RepImage::Exact(a) => RepImage::Exact(a.scale(s)),
            RepImage::Approx(a) => RepImage::Approx(a.scale(&s.to_complex())),
        }
    }

    /// Exact zero test for exact images; otherwise largest entry at most `tol`.
    pub fn is_zero_within(&self, tol: f64) -> bool {
        match self {
            RepImage::Exact(a) => a.is_zero(),
            RepImage::Approx(a) => a.max_abs() <= tol,
        }
    }

    /// `self − o` is zero: exactly when both are exact, else within `tol` in operator norm.
    pub fn agrees_with(&self, o: &Self, tol: f64) -> bool {
        match (self, o) {
            (RepImage::Exact(a), RepImage::Exact(b)) => a == b,
            _ => self.sub(o).op_norm() <= tol,
        }
    }

    pub fn apply(&self, v: &RepVector) -> RepVector {
        match (self, v) {
            (RepImage::Exact(a), RepVector::Exact(x)) => RepVector::Exact(a.apply(x)),
            _ => RepVector::Approx(self.to_complex().apply(&v.to_complex())),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RepVector {
    Exact(Vec<GaussianRational>),
    Approx(Vec<Complex64>),
}

impl RepVector {
    pub fn to_complex(&self) -> Vec<Complex64> {
        match self {
            RepVector::Exact(v) => v.iter().map(GaussianRational::to_complex).collect(),
            RepVector::Approx(v) => v.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RepVector::Exact(v) => v.iter().all(GaussianRational::is_zero),
            RepVector::Approx(v) => v.iter().all(|z| *z == Complex64::new(0.0, 0.0)),
        }
    }

    pub fn norm(&self) -> f64 {
        vec_norm(&self.to_complex())
    }

    /// Distance to `o`; exactly zero when both are exact and equal.
    pub fn distance(&self, o: &Self) -> f64 {
        match (self, o) {
            (RepVector::Exact(a), RepVector::Exact(b)) if a == b => 0.0,
            _ => {
                let d: Vec<Complex64> = self.to_complex().iter().zip(o.to_complex()).map(|(x, y)| x - y).collect();
                vec_norm(&d)
            }
        }
    }
}

fn dim_err(what: &str, expected: usize, found: usize) -> Error {
    Error::DimensionMismatch { what: what.into(), expected, found }
}

fn check_shapes(pair: &Pair, rep: &MatrixRep) -> Result<()> {
    let n = rep.dim;
    let square = |m_rows: usize, m_cols: usize, what: &str| {
        if m_rows != n || m_cols != n {
            Err(dim_err(what, n, if m_rows != n { m_rows } else { m_cols }))
        } else {
            Ok(())
        }
    };
    square(rep.grading.rows(), rep.grading.cols(), "grading")?;
    let alg_dim = pair.algebra().dim();
    if rep.rho_len() != alg_dim {
        return Err(dim_err("rho generators", alg_dim, rep.rho_len()));
    }
    match (&rep.data, pair.group()) {
        (RepData::Finite { pi, rho }, GroupData::Finite(g)) => {
            if pi.len() != g.order() {
                return Err(dim_err("pi group elements", g.order(), pi.len()));
            }
            for m in pi {
                square(m.rows(), m.cols(), "pi")?;
            }
            for m in rho {
                square(m.rows(), m.cols(), "rho")?;
            }
        }
        (RepData::Line { lambda, rho }, GroupData::Line(_)) => {
            if !lambda.is_finite() {
                return Err(Error::AlgebraMismatch("line parameter must be finite".into()));
            }
            for m in rho {
                square(m.rows(), m.cols(), "rho")?;
            }
        }
        _ => return Err(Error::AlgebraMismatch(format!("representation {} does not match the group of pair {}", rep.name, pair.name()))),
    }
    Ok(())
}

/// `Σ_j c_j ρ(x_j)` for a real coefficient vector.
fn rho_of_vector<T: Scalar>(rho: &[Mat<T>], v: &[Rational], n: usize) -> Mat<T> {
    let mut out = Mat::zeros(n, n);
    for (j, c) in v.iter().enumerate() {
        if !c.is_zero() {
            out = out.add(&rho[j].scale(&T::from_gaussian(&GaussianRational::real(c.clone()))));
        }
    }
    out
}

struct AxiomInput<'a, T: Scalar> {
    grading: Mat<T>,
    /// Sampled group points with `π` and `Ad` (including `ε`).
    points: Vec<(String, Mat<T>, crate::linalg::RatMatrix)>,
    rho: &'a [Mat<T>],
}

fn check_axioms<T: Scalar>(
    pair: &Pair,
    input: &AxiomInput<'_, T>,
    close: impl Fn(&Mat<T>, &Mat<T>) -> bool,
    rep: &mut ValidationReport,
) {
    let alg = pair.algebra();
    let n = input.grading.rows();
    let id = Mat::<T>::identity(n);

    let m = rep.mark();
    for (name, p, _) in &input.points {
        if !close(&p.mul(&p.adjoint()), &id) {
            rep.violate("unitary", format!("pi({name})"));
        }
        if !close(&p.mul(&input.grading), &input.grading.mul(p)) {
            rep.violate("unitary", format!("pi({name}) does not commute with the grading"));
        }
    }
    rep.close_check("unitary", m);

    let m = rep.mark();
    for i in 0..alg.dim() {
        for j in i..alg.dim() {
            let sign = T::from_gaussian(&GaussianRational::real(algebra::koszul_sign(alg.parity(i), alg.parity(j))));
            let lhs = input.rho[i].mul(&input.rho[j]).sub(&input.rho[j].mul(&input.rho[i]).scale(&sign));
            let rhs = rho_of_vector(input.rho, alg.structure(i, j), n);
            if !close(&lhs, &rhs) {
                rep.violate("bracket", format!("({}, {})", alg.basis_name(i), alg.basis_name(j)));
            }
        }
    }
    rep.close_check("bracket", m);

    let m = rep.mark();
    for x in 0..alg.dim() {
        let expect = match alg.parity(x) {
            Parity::Even => input.rho[x].scale(&T::from_gaussian(&-GaussianRational::one())),
            Parity::Odd => input.rho[x].scale(&T::from_gaussian(&-GaussianRational::i())),
        };
        if !close(&input.rho[x].adjoint(), &expect) {
            rep.violate("symmetry", alg.basis_name(x).to_string());
        }
    }
    rep.close_check("symmetry", m);

    let m = rep.mark();
    for (name, p, ad) in &input.points {
        let p_inv = p.adjoint();
        for x in 0..alg.dim() {
            let lhs = p.mul(&input.rho[x]).mul(&p_inv);
            let rhs = rho_of_vector(input.rho, &ad.column(x), n);
            if !close(&lhs, &rhs) {
                rep.violate("covariance", format!("g = {name}, x = {}", alg.basis_name(x)));
            }
        }
    }
    rep.close_check("covariance", m);
}

/// Checks the representation axioms and reports every failure with a witness.
pub fn validate_rep(pair: &Pair, r: &MatrixRep) -> Result<ValidationReport> {
    check_shapes(pair, r)?;
    let mut rep = ValidationReport::new();
    let n = r.dim;
    let ext = pair.ad();
    let eps_point = pair.group().identity();
    let eps_point = GroupPoint { eps: true, ..eps_point };

    let m = rep.mark();
    for i in 0..n {
        for j in 0..n {
            let v = r.grading.get(i, j);
            let ok = if i == j { *v == GaussianRational::one() || *v == -GaussianRational::one() } else { v.is_zero() };
            if !ok {
                rep.violate("grading", format!("entry ({i}, {j}) = {v}"));
            }
        }
    }
    rep.close_check("grading", m);

    match (&r.data, pair.group()) {
        (RepData::Finite { pi, rho }, GroupData::Finite(g)) => {
            let m = rep.mark();
            for a in 0..g.order() {
                for b in 0..g.order() {
                    if pi[a].mul(&pi[b]) != pi[g.mul(a, b)] {
                        rep.violate("homomorphism", format!("({}, {})", g.names()[a], g.names()[b]));
                    }
                }
            }
            rep.close_check("homomorphism", m);
            let m = rep.mark();
            rep.close_check("derivative", m);
            let mut points: Vec<(String, QMat, _)> =
                (0..g.order()).map(|a| (g.names()[a].clone(), pi[a].clone(), g.ad(a).clone())).collect();
            points.push(("eps".into(), r.grading.clone(), ext.matrix(&eps_point)));
            let input = AxiomInput { grading: r.grading.clone(), points, rho };
            check_axioms(pair, &input, |a, b| a == b, &mut rep);
        }
        (RepData::Line { lambda, rho }, GroupData::Line(l)) => {
            let m = rep.mark();
            rep.close_check("homomorphism", m);
            let m = rep.mark();
            let z = l.generator();
            let expect = CMat::identity(n).scale(&Complex64::new(0.0, *lambda));
            if rho[z].sub(&expect).max_abs() > LINE_TOL * (1.0 + lambda.abs()) {
                rep.violate("derivative", format!("rho({}) != i*{lambda}*I", pair.algebra().basis_name(z)));
            }
            rep.close_check("derivative", m);
            let scale = rho.iter().map(CMat::max_abs).fold(1.0, f64::max);
            let tol = LINE_TOL * scale * scale;
            let mut points = Vec::new();
            for t in [1.0, -0.5, 3.0] {
                let p = GroupPoint::line(t, false);
                points.push((format!("{t}"), r.pi(&p).to_complex(), ext.matrix(&p)));
            }
            let eps_line = GroupPoint::line(0.0, true);
            points.push(("eps".into(), r.grading.to_complex(), ext.matrix(&eps_line)));
            let input = AxiomInput { grading: r.grading.to_complex(), points, rho };
            check_axioms(pair, &input, |a, b| a.sub(b).max_abs() <= tol, &mut rep);
        }
        _ => unreachable!("shapes checked"),
    }
    Ok(rep)
}

fn check_rep_for_pair(pair: &Pair, r: &ValidatedRep) -> Result<()> {
    if r.rep.rho_len() != pair.algebra().dim() || r.rep.is_line() != pair.is_line() {
        return Err(Error::AlgebraMismatch(format!("representation {} does not belong to pair {}", r.name(), pair.name())));
    }
    Ok(())
}

/// `ρ(D)` for an element of `U(g_C)`.
pub fn rho_of(r: &MatrixRep, d: &UEElement) -> RepImage {
    let n = r.dim;
    let mut out = if r.is_line() { RepImage::Approx(CMat::zeros(n, n)) } else { RepImage::Exact(QMat::zeros(n, n)) };
    for (m, c) in d.terms() {
        let mut prod = if r.is_line() { RepImage::Approx(CMat::identity(n)) } else { RepImage::Exact(QMat::identity(n)) };
        for &x in m.letters() {
            prod = prod.mul(&r.rho(x));
        }
        out = out.add(&prod.scale(c));
    }
    out
}

/// `π(f) = ∫ f(g) π(g) dg`, in closed form.
pub fn pi_of_function(r: &MatrixRep, group: &GroupData, f: &Function) -> Result<RepImage> {
    let n = r.dim;
    match (&r.data, f) {
        (RepData::Finite { .. }, Function::Finite(v)) => {
            let mut out = QMat::zeros(n, n);
            for (i, p) in group.points().iter().enumerate() {
                let c = v.value(i);
                if !c.is_zero() {
                    let RepImage::Exact(m) = r.pi(p) else { unreachable!() };
                    out = out.add(&m.scale(c));
                }
            }
            Ok(RepImage::Exact(out))
        }
        (RepData::Line { lambda, .. }, Function::Line(LineFunction { plus, minus })) => {
            let a = plus.fourier_at(*lambda);
            let b = minus.fourier_at(*lambda);
            Ok(RepImage::Approx(CMat::identity(n).scale(&a).add(&r.grading.to_complex().scale(&b))))
        }
        _ => Err(Error::FunctionClassMismatch("function does not match representation".into())),
    }
}

/// `ρ̂π(a) = Σ ρ(D)π(f)`.
pub fn rep_hat(pair: &Pair, r: &ValidatedRep, a: &CrossedElement) -> Result<RepImage> {
    check_rep_for_pair(pair, r)?;
    let rep = &r.rep;
    let n = rep.dim;
    let mut out = if rep.is_line() { RepImage::Approx(CMat::zeros(n, n)) } else { RepImage::Exact(QMat::zeros(n, n)) };
    for (m, f) in a.terms() {
        let d = UEElement::from_monomial(m.clone(), GaussianRational::one());
        out = out.add(&rho_of(rep, &d).mul(&pi_of_function(rep, pair.group(), f)?));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TermBound {
    pub monomial: Monomial,
    pub value: f64,
    /// The bound vanished by the odd-square rule: some odd letter has `[y, y] = 0`.
    pub forced_zero: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Bound {
    pub upper: f64,
    pub terms: Vec<TermBound>,
}

struct BoundCtx<'a> {
    pair: &'a Pair,
    derivs: Vec<Function>,
    l1: Vec<f64>,
    memo: HashMap<(Vec<usize>, usize), f64>,
}

impl BoundCtx<'_> {
    fn l1_of_derivative(&mut self, k: usize) -> Result<f64> {
        while self.derivs.len() <= k {
            let last = self.derivs.last().expect("seeded").clone();
            let group = self.pair.group();
            let z = group.as_line().map(|l| l.generator()).ok_or_else(|| Error::NeedsLineGroup("even letter".into()))?;
            self.derivs.push(crate::function::right_derivative(group, self.pair.algebra(), z, &last)?);
        }
        while self.l1.len() <= k {
            let f = &self.derivs[self.l1.len()];
            self.l1.push(crate::function::l1_bound(f));
        }
        Ok(self.l1[k])
    }

    /// Upper bound on `‖ρ(w) π(R_z^k f)‖` valid in every representation.
    fn bound(&mut self, w: &[usize], k: usize) -> Result<f64> {
        if let Some(&v) = self.memo.get(&(w.to_vec(), k)) {
            return Ok(v);
        }
        let alg = self.pair.algebra();
        let v = if w.is_empty() {
            self.l1_of_derivative(k)?
        } else if alg.parity(*w.last().expect("nonempty")) == Parity::Even {
            self.bound(&w[..w.len() - 1], k + 1)?
        } else if let Some(p) = w.iter().rposition(|&x| alg.parity(x) == Parity::Even) {
            // x y = y x + [x, y] for even x
            let mut swapped = w.to_vec();
            swapped.swap(p, p + 1);
            let mut total = self.bound(&swapped, k)?;
            for (b, c) in alg.structure(w[p], w[p + 1]).iter().enumerate() {
                if !c.is_zero() {
                    let mut word = w[..p].to_vec();
                    word.push(b);
                    word.extend_from_slice(&w[p + 2..]);
                    total += c.abs().to_f64().unwrap_or(f64::INFINITY) * self.bound(&word, k)?;
                }
            }
            total * (1.0 + 4.0 * f64::EPSILON)
        } else {
            // ‖ρ(y)u‖² ≤ ½‖u‖·‖ρ([y, y])u‖
            let y = w[0];
            let rest = &w[1..];
            let mut square = 0.0;
            let mut any = false;
            for (b, c) in alg.structure(y, y).iter().enumerate() {
                if !c.is_zero() {
                    any = true;
                    let mut word = vec![b];
                    word.extend_from_slice(rest);
                    square += c.abs().to_f64().unwrap_or(f64::INFINITY) * self.bound(&word, k)?;
                }
            }
            if any {
                (0.5 * self.bound(rest, k)? * square).sqrt() * (1.0 + 4.0 * f64::EPSILON)
            } else {
                0.0
            }
        };
        self.memo.insert((w.to_vec(), k), v);
        Ok(v)
    }
}

/// A constant `M` with `‖ρ̂π(a)‖ ≤ M` in every representation of the pair.
pub fn norm_bound(pair: &Pair, a: &CrossedElement) -> Result<Bound> {
    if let GroupData::Line(l) = pair.group() {
        if !l.acts_trivially() {
            return Err(Error::NontrivialLineAction);
        }
    }
    let mut terms = Vec::new();
    let mut upper = 0.0;
    for (m, f) in a.terms() {
        let mut ctx = BoundCtx { pair, derivs: vec![f.clone()], l1: Vec::new(), memo: HashMap::new() };
        let value = ctx.bound(m.letters(), 0)?;
        upper += value;
        terms.push(TermBound { monomial: m.clone(), value, forced_zero: value == 0.0 && m.degree() > 0 });
    }
    Ok(Bound { upper, terms })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeminormInterval {
    pub lower: f64,
    pub upper: f64,
    /// Every term is annihilated in all representations by the odd-square rule.
    pub kernel_flag: bool,
    /// The family was empty, so `lower` carries no information.
    pub empty_family: bool,
    pub per_rep: Vec<(String, f64)>,
}

/// `[max over the family of ‖ρ̂π(a)‖, certified bound]`.
pub fn seminorm_interval(pair: &Pair, a: &CrossedElement, family: &[ValidatedRep]) -> Result<SeminormInterval> {
    let bound = norm_bound(pair, a)?;
    let kernel_flag = !a.is_zero() && bound.terms.iter().all(|t| t.forced_zero);
    let mut per_rep = Vec::new();
    let mut lower: f64 = 0.0;
    for r in family {
        let norm = rep_hat(pair, r, a)?.op_norm();
        lower = lower.max(norm);
        per_rep.push((r.name().to_string(), norm));
    }
    let slack = 1e-12 * (1.0 + bound.upper);
    if lower > bound.upper + slack {
        return Err(Error::BoundViolation { lower, upper: bound.upper });
    }
    if kernel_flag {
        lower = 0.0;
    }
    Ok(SeminormInterval { lower, upper: bound.upper, kernel_flag, empty_family: family.is_empty(), per_rep })
}

fn probe_vector(pair: &Pair, r: &ValidatedRep, probe: &CrossedElement, v: &RepVector) -> Result<RepVector> {
    if v.to_complex().len() != r.rep.dim {
        return Err(dim_err("vector", r.rep.dim, v.to_complex().len()));
    }
    let w = rep_hat(pair, r, probe)?.apply(v);
    if w.is_zero() {
        return Err(Error::ZeroProbe);
    }
    Ok(w)
}

/// The operator `ρ̂π(m)` applied to `ρ̂π(probe)v`, computed as `ρ̂π(λ(probe))v`.
pub fn reconstruct_multiplier(pair: &Pair, r: &ValidatedRep, m: &Multiplier, probe: &CrossedElement, v: &RepVector) -> Result<RepVector> {
    probe_vector(pair, r, probe, v)?;
    Ok(rep_hat(pair, r, &m.lam(pair, probe)?)?.apply(v))
}

/// Reconstructed `π(g)` on the vector `ρ̂π(probe)v`.
pub fn reconstruct_pi(pair: &Pair, r: &ValidatedRep, g: GroupPoint, probe: &CrossedElement, v: &RepVector) -> Result<RepVector> {
    reconstruct_multiplier(pair, r, &crossed::mul_group(g), probe, v)
}

/// Reconstructed `ρ(x)` on the vector `ρ̂π(probe)v`.
pub fn reconstruct_rho(pair: &Pair, r: &ValidatedRep, x: usize, probe: &CrossedElement, v: &RepVector) -> Result<RepVector> {
    reconstruct_multiplier(pair, r, &crossed::mul_lie(x), probe, v)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundtripEntry {
    pub target: String,
    pub max_residual: f64,
    pub exact: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundtripReport {
    pub entries: Vec<RoundtripEntry>,
    /// Dimension of the span of the probe vectors `ρ̂π(probe)v`.
    pub span_rank: usize,
    pub dim: usize,
}

impl RoundtripReport {
    pub fn passed(&self) -> bool {
        self.span_rank == self.dim && self.entries.iter().all(|e| e.passed)
    }
}

/// Compares reconstructed `π(g)` (group generators and `ε`) and `ρ(x)` (every basis element)
/// with the source representation on every probe vector.
pub fn roundtrip(pair: &Pair, r: &ValidatedRep, probes: &[CrossedElement], vectors: &[RepVector], tol: f64) -> Result<RoundtripReport> {
    let group = pair.group();
    let mut targets: Vec<(String, Multiplier, RepImage)> = Vec::new();
    match group {
        GroupData::Finite(g) => {
            for a in 0..g.order() {
                if a != g.identity() {
                    let p = GroupPoint::finite(a, false);
                    targets.push((format!("pi({})", g.names()[a]), crossed::mul_group(p), r.rep.pi(&p)));
                }
            }
            let e = GroupPoint::finite(g.identity(), true);
            targets.push(("pi(eps)".into(), crossed::mul_group(e), r.rep.pi(&e)));
        }
        GroupData::Line(_) => {
            for t in [1.0, -0.5] {
                let p = GroupPoint::line(t, false);
                targets.push((format!("pi({t})"), crossed::mul_group(p), r.rep.pi(&p)));
            }
            let e = GroupPoint::line(0.0, true);
            targets.push(("pi(eps)".into(), crossed::mul_group(e), r.rep.pi(&e)));
        }
    }
    for x in 0..pair.algebra().dim() {
        targets.push((format!("rho({})", pair.algebra().basis_name(x)), crossed::mul_lie(x), r.rep.rho(x)));
    }

    let mut images = Vec::new();
    for probe in probes {
        for v in vectors {
            match probe_vector(pair, r, probe, v) {
                Ok(w) => images.push((probe, v, w)),
                Err(Error::ZeroProbe) => {}
                Err(e) => return Err(e),
            }
        }
    }
    let span_rank = if r.rep.is_line() {
        rank_numeric(&images.iter().map(|(_, _, w)| w.to_complex()).collect::<Vec<_>>(), 1e-9)
    } else {
        rank_exact(
            &images
                .iter()
                .map(|(_, _, w)| match w {
                    RepVector::Exact(x) => x.clone(),
                    RepVector::Approx(_) => unreachable!("finite images are exact"),
                })
                .collect::<Vec<_>>(),
        )
    };

    let mut entries = Vec::new();
    for (target, m, op) in &targets {
        let mut max_residual: f64 = 0.0;
        let mut exact = true;
        for (probe, v, w) in &images {
            let got = reconstruct_multiplier(pair, r, m, probe, v)?;
            let want = op.apply(w);
            exact &= matches!(got, RepVector::Exact(_));
            max_residual = max_residual.max(got.distance(&want));
        }
        let passed = if exact { max_residual == 0.0 } else { max_residual <= tol };
        entries.push(RoundtripEntry { target: target.clone(), max_residual, exact, passed });
    }
    Ok(RoundtripReport { entries, span_rank, dim: r.rep.dim })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TaylorRow {
    pub t: f64,
    pub family_max: f64,
    pub bound: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TaylorReport {
    pub m: f64,
    pub rows: Vec<TaylorRow>,
    /// `family_max(t_{k+1}) / family_max(t_k)`.
    pub ratios: Vec<f64>,
}

/// Checks `‖ρ̂π(a_t)‖ ≤ ½M|t|` with `a_t = (λ_{exp(tx)}(a) − a)/t − λ_x(a)` and `M` the bound of `λ_x²(a)`.
pub fn taylor_norm_check(pair: &Pair, family: &[ValidatedRep], x: usize, a: &CrossedElement, ts: &[f64]) -> Result<TaylorReport> {
    let line = pair.group().as_line().ok_or_else(|| Error::NeedsLineGroup("taylor check".into()))?;
    if x != line.generator() {
        return Err(Error::NotEven(pair.algebra().basis_name(x).to_string()));
    }
    let lx = crossed::mul_lie(x);
    let m = norm_bound(pair, &lx.lam(pair, &lx.lam(pair, a)?)?)?.upper;
    let lxa = lx.lam(pair, a)?;
    let mut rows = Vec::new();
    for &t in ts {
        let moved = crossed::mul_group(GroupPoint::line(t, false)).lam(pair, a)?;
        let mut family_max: f64 = 0.0;
        for r in family {
            let diff = rep_hat(pair, r, &moved)?.sub(&rep_hat(pair, r, a)?).to_complex().scale(&Complex64::new(1.0 / t, 0.0));
            let at = diff.sub(&rep_hat(pair, r, &lxa)?.to_complex());
            family_max = family_max.max(at.op_norm());
        }
        let bound = 0.5 * m * t.abs();
        rows.push(TaylorRow { t, family_max, bound, passed: family_max <= bound * (1.0 + 1e-9) + 1e-15 });
    }
    let ratios = rows.windows(2).map(|w| if w[0].family_max == 0.0 { 0.0 } else { w[1].family_max / w[0].family_max }).collect();
    Ok(TaylorReport { m, rows, ratios })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CcrEntry {
    pub name: String,
    pub dim: usize,
    pub image_rank: usize,
    /// Finite rank, hence compact.
    pub compact: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CcrReport {
    pub reps: Vec<CcrEntry>,
    pub nilpotent: bool,
    pub odd_generated: bool,
}

/// Finite-rank images of the generators in each representation, and the structural hypotheses.
pub fn ccr_report(pair: &Pair, family: &[ValidatedRep], generators: &[CrossedElement]) -> Result<CcrReport> {
    let mut reps = Vec::new();
    for r in family {
        let images: Vec<RepImage> = generators.iter().map(|a| rep_hat(pair, r, a)).collect::<Result<_>>()?;
        let image_rank = if r.rep.is_line() {
            rank_numeric(&images.iter().map(|m| m.to_complex().entries().to_vec()).collect::<Vec<_>>(), 1e-9)
        } else {
            rank_exact(
                &images
                    .iter()
                    .map(|m| match m {
                        RepImage::Exact(q) => q.entries().to_vec(),
                        RepImage::Approx(_) => unreachable!("finite images are exact"),
                    })
                    .collect::<Vec<_>>(),
            )
        };
        reps.push(CcrEntry { name: r.name().to_string(), dim: r.rep.dim, image_rank, compact: true });
    }
    Ok(CcrReport {
        reps,
        nilpotent: algebra::is_nilpotent(pair.algebra()).nilpotent,
        odd_generated: algebra::is_odd_generated(pair.algebra()),
    })
}

/// `(‖ρ(x)v‖², ½‖v‖·‖ρ([x,x])v‖)` for an odd basis element.
pub fn odd_square_sides(pair: &Pair, r: &MatrixRep, x: usize, v: &[Complex64]) -> (f64, f64) {
    let alg = pair.algebra();
    let rx = r.rho(x).to_complex();
    let lhs = vec_norm(&rx.apply(v)).powi(2);
    let xx = UEElement::from_rational_vector(alg.structure(x, x));
    let rxx = rho_of(r, &xx).to_complex();
    let rhs = 0.5 * vec_norm(v) * vec_norm(&rxx.apply(v));
    (lhs, rhs)
}

/// Irreducible Clifford-module representation of a Heisenberg–Clifford pair at `λ ≥ 0`:
/// `π(t) = e^{iλt}`, `ρ(z) = iλ`, `ρ(x_j) = e^{iπ/4}√(λ/2)·γ_j` with Jordan–Wigner gammas.
pub fn clifford_rep(pair: &Pair, lambda: f64, name: impl Into<String>) -> Result<MatrixRep> {
    let line = pair.group().as_line().ok_or_else(|| Error::NeedsLineGroup("clifford representation".into()))?;
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(Error::AlgebraMismatch(format!("clifford parameter must be a finite nonnegative number, got {lambda}")));
    }
    let alg = pair.algebra();
    let z = line.generator();
    let odd = alg.odd_indices();
    for (a, &i) in odd.iter().enumerate() {
        for &j in &odd[a..] {
            let mut expect = vec![Rational::zero(); alg.dim()];
            if i == j {
                expect[z] = Rational::from_integer(1.into());
            }
            if alg.structure(i, j) != expect.as_slice() {
                return Err(Error::AlgebraMismatch(format!("{} is not of Heisenberg–Clifford form", alg.name())));
            }
        }
        if alg.structure(z, i).iter().any(|c| !c.is_zero()) {
            return Err(Error::AlgebraMismatch(format!("{} is not of Heisenberg–Clifford form", alg.name())));
        }
    }
    let qubits = odd.len().div_ceil(2);
    let dim = 1usize << qubits;
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let x = CMat::from_rows(vec![vec![c(0., 0.), c(1., 0.)], vec![c(1., 0.), c(0., 0.)]]).expect("2x2");
    let y = CMat::from_rows(vec![vec![c(0., 0.), c(0., -1.)], vec![c(0., 1.), c(0., 0.)]]).expect("2x2");
    let zz = CMat::diag(&[c(1., 0.), c(-1., 0.)]);
    let id2 = CMat::identity(2);
    let kron_all = |factors: &[&CMat]| factors.iter().fold(CMat::identity(1), |acc, f| kron(&acc, f));
    let mut rho = vec![CMat::zeros(dim, dim); alg.dim()];
    rho[z] = CMat::identity(dim).scale(&c(0., lambda));
    let coeff = Complex64::from_polar((lambda / 2.0).sqrt(), FRAC_PI_4);
    for (j, &i) in odd.iter().enumerate() {
        let site = j / 2;
        let local = if j % 2 == 0 { &x } else { &y };
        let factors: Vec<&CMat> = (0..qubits).map(|s| if s < site { &zz } else if s == site { local } else { &id2 }).collect();
        rho[i] = kron_all(&factors).scale(&coeff);
    }
    let signs: Vec<GaussianRational> = (0..dim)
        .map(|k| if k.count_ones() % 2 == 0 { GaussianRational::one() } else { -GaussianRational::one() })
        .collect();
    Ok(MatrixRep { name: name.into(), dim, grading: QMat::diag(&signs), data: RepData::Line { lambda, rho } })
}

fn kron(a: &CMat, b: &CMat) -> CMat {
    let (ar, ac, br, bc) = (a.rows(), a.cols(), b.rows(), b.cols());
    let mut out = CMat::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            for k in 0..br {
                for l in 0..bc {
                    out.set(i * br + k, j * bc + l, a.get(i, j) * b.get(k, l));
                }
            }
        }
    }
    out
}

/// All one-dimensional representations of a finite pair with values in `{±1, ±i}`.
pub fn finite_characters(pair: &Pair) -> Result<Vec<MatrixRep>> {
    let g = pair.group().as_finite().ok_or_else(|| Error::InvalidGroup("characters need a finite group".into()))?;
    let values = [GaussianRational::one(), -GaussianRational::one(), GaussianRational::i(), -GaussianRational::i()];
    let n = g.order();
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut current = vec![0usize; n];
    fn search(g: &crate::group::FiniteGroup, values: &[GaussianRational], k: usize, current: &mut Vec<usize>, found: &mut Vec<Vec<usize>>) {
        if k == current.len() {
            let ok = (0..k).all(|a| (0..k).all(|b| &values[current[a]] * &values[current[b]] == values[current[g.mul(a, b)]]));
            if ok {
                found.push(current.clone());
            }
            return;
        }
        for v in 0..values.len() {
            current[k] = v;
            search(g, values, k + 1, current, found);
        }
    }
    search(g, &values, 0, &mut current, &mut found);
    let mut reps = Vec::new();
    for chi in &found {
        for eps in [1i64, -1] {
            let label: Vec<String> = (0..n).map(|a| format!("{}={}", g.names()[a], values[chi[a]])).collect();
            let rep = MatrixRep {
                name: format!("chi[{},eps={}]", label.join(","), eps),
                dim: 1,
                grading: QMat::diag(&[GaussianRational::from_int(eps)]),
                data: RepData::Finite {
                    pi: chi.iter().map(|&v| QMat::diag(&[values[v].clone()])).collect(),
                    rho: vec![QMat::zeros(1, 1); pair.algebra().dim()],
                },
            };
            if validate_rep(pair, &rep)?.is_ok() {
                reps.push(rep);
            }
        }
    }
    Ok(reps)
}

/// Block-diagonal sum of representations of the same pair.
pub fn direct_sum(name: impl Into<String>, parts: &[MatrixRep]) -> Result<MatrixRep> {
    let dim: usize = parts.iter().map(|p| p.dim).sum();
    let first = parts.first().ok_or_else(|| Error::AlgebraMismatch("empty direct sum".into()))?;
    let block = |mats: Vec<&QMat>| {
        let mut out = QMat::zeros(dim, dim);
        let mut off = 0;
        for m in mats {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    out.set(off + i, off + j, m.get(i, j).clone());
                }
            }
            off += m.rows();
        }
        out
    };
    let grading = block(parts.iter().map(|p| &p.grading).collect());
    let data = match &first.data {
        RepData::Finite { pi, rho } => {
            let mut all = Vec::new();
            for p in parts {
                match &p.data {
                    RepData::Finite { pi: q, rho: r } if q.len() == pi.len() && r.len() == rho.len() => all.push((q, r)),
                    _ => return Err(Error::AlgebraMismatch("direct sum of incompatible representations".into())),
                }
            }
            RepData::Finite {
                pi: (0..pi.len()).map(|g| block(all.iter().map(|(q, _)| &q[g]).collect())).collect(),
                rho: (0..rho.len()).map(|x| block(all.iter().map(|(_, r)| &r[x]).collect())).collect(),
            }
        }
        RepData::Line { .. } => return Err(Error::AlgebraMismatch("direct sums are supported for finite pairs".into())),
    };
    Ok(MatrixRep { name: name.into(), dim, grading, data })
}
