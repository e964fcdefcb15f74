//! The universal enveloping algebra `U(g_C)` in PBW normal form.
//!
//! Monomials are words over the basis, weakly increasing in declaration order, with every
//! odd letter appearing at most once. Straightening uses
//! `x_i x_j = (-1)^{|i||j|} x_j x_i + [x_i, x_j]` and, for odd `x`, `x·x = ½[x, x]`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use crate::algebra::SuperAlgebra;
use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::scalar::{rat, GaussianRational, Rational};

/// A word of basis indices. In a [`UEElement`] every key is in normal form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<usize>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Finite Gaussian-rational combination of PBW monomials; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default, Hash, PartialOrd, Ord)]
pub struct UEElement {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl fmt::Debug for UEElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl UEElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(GaussianRational::one())
    }

    pub fn scalar(c: GaussianRational) -> Self {
        Self::from_monomial(Monomial::unit(), c)
    }

    /// Caller guarantees `m` is in normal form.
    pub fn from_monomial(m: Monomial, c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn generator(i: usize) -> Self {
        Self::from_monomial(Monomial(vec![i]), GaussianRational::one())
    }

    /// Degree-one element `Σ_i v_i b_i`.
    pub fn from_vector(v: &[GaussianRational]) -> Self {
        let mut e = Self::zero();
        for (i, c) in v.iter().enumerate() {
            e.add_term(Monomial(vec![i]), c);
        }
        e
    }

    pub fn from_rational_vector(v: &[Rational]) -> Self {
        let g: Vec<GaussianRational> = v.iter().cloned().map(GaussianRational::real).collect();
        Self::from_vector(&g)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Filtration degree; `0` for the zero element.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add_scaled(&mut self, other: &UEElement, s: &GaussianRational) {
        if s.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            let entry = self.terms.entry(m.clone()).or_default();
            *entry += &(c * s);
        }
        self.terms.retain(|_, v| !v.is_zero());
    }

    pub fn add(&self, other: &UEElement) -> UEElement {
        let mut out = self.clone();
        out.add_scaled(other, &GaussianRational::one());
        out
    }

    pub fn sub(&self, other: &UEElement) -> UEElement {
        let mut out = self.clone();
        out.add_scaled(other, &-GaussianRational::one());
        out
    }

    pub fn scale(&self, s: &GaussianRational) -> UEElement {
        let mut out = UEElement::zero();
        out.add_scaled(self, s);
        out
    }

    fn max_index(&self) -> Option<usize> {
        self.terms.keys().flat_map(|m| m.0.iter().copied()).max()
    }

    /// Infix literal in basis names, e.g. `(-1/2 + 1i) * x * z + 2 * z`.
    pub fn display(&self, alg: &SuperAlgebra) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut factors = vec![c.to_string()];
                factors.extend(m.0.iter().map(|&i| alg.basis_name(i).to_string()));
                factors.join(" * ")
            })
            .collect();
        parts.join(" + ")
    }
}

/// Redex selection used when straightening a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Leftmost odd square first, then the leftmost descent.
    LeftmostOddSquareFirst,
    /// Rightmost descent first; odd squares only once the word is sorted.
    RightmostTranspositionFirst,
}

enum Redex {
    OddSquare(usize),
    Descent(usize),
}

/// `U(g_C)` for one superalgebra, with a shared memo of straightened words.
pub struct Enveloping {
    alg: Arc<SuperAlgebra>,
    memo: Mutex<HashMap<Vec<usize>, UEElement>>,
}

impl fmt::Debug for Enveloping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Enveloping").field("algebra", &self.alg.name()).finish()
    }
}

impl Enveloping {
    pub fn new(alg: Arc<SuperAlgebra>) -> Self {
        Self { alg, memo: Mutex::new(HashMap::new()) }
    }

    pub fn algebra(&self) -> &SuperAlgebra {
        &self.alg
    }

    pub fn algebra_arc(&self) -> &Arc<SuperAlgebra> {
        &self.alg
    }

    fn check_word(&self, word: &[usize]) -> Result<()> {
        match word.iter().find(|&&i| i >= self.alg.dim()) {
            Some(i) => Err(Error::AlgebraMismatch(format!("basis index {i} out of range for `{}`", self.alg.name()))),
            None => Ok(()),
        }
    }

    fn check_element(&self, a: &UEElement) -> Result<()> {
        match a.max_index() {
            Some(i) if i >= self.alg.dim() => {
                Err(Error::AlgebraMismatch(format!("basis index {i} out of range for `{}`", self.alg.name())))
            }
            _ => Ok(()),
        }
    }

    pub fn is_normal(&self, word: &[usize]) -> bool {
        word.windows(2).all(|w| w[0] < w[1] || (w[0] == w[1] && !self.alg.parity(w[0]).is_odd()))
    }

    fn find_redex(&self, w: &[usize], strategy: Strategy) -> Option<Redex> {
        let odd_sq = |i: &usize| w[*i] == w[*i + 1] && self.alg.parity(w[*i]).is_odd();
        let descent = |i: &usize| w[*i] > w[*i + 1];
        let n = w.len().saturating_sub(1);
        match strategy {
            Strategy::LeftmostOddSquareFirst => (0..n)
                .find(odd_sq)
                .map(Redex::OddSquare)
                .or_else(|| (0..n).find(descent).map(Redex::Descent)),
            Strategy::RightmostTranspositionFirst => (0..n)
                .rev()
                .find(descent)
                .map(Redex::Descent)
                .or_else(|| (0..n).rev().find(odd_sq).map(Redex::OddSquare)),
        }
    }

    /// One rewriting step: the word equals `Σ coeff · word'`.
    fn rewrite(&self, w: &[usize], redex: Redex) -> Vec<(Vec<usize>, GaussianRational)> {
        let splice = |pos: usize, mid: &[usize]| {
            let mut v = w[..pos].to_vec();
            v.extend_from_slice(mid);
            v.extend_from_slice(&w[pos + 2..]);
            v
        };
        let bracket_terms = |i: usize, j: usize, scale: &Rational, pos: usize| {
            self.alg
                .structure(i, j)
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (splice(pos, &[k]), GaussianRational::real(c * scale)))
                .collect::<Vec<_>>()
        };
        match redex {
            Redex::OddSquare(p) => bracket_terms(w[p], w[p], &rat(1, 2), p),
            Redex::Descent(p) => {
                let (a, b) = (w[p], w[p + 1]);
                let sign = crate::algebra::koszul_sign(self.alg.parity(a), self.alg.parity(b));
                let mut out = vec![(splice(p, &[b, a]), GaussianRational::real(sign))];
                out.extend(bracket_terms(a, b, &rat(1, 1), p));
                out
            }
        }
    }

    fn straighten_memo(&self, w: &[usize]) -> UEElement {
        if self.is_normal(w) {
            return UEElement::from_monomial(Monomial(w.to_vec()), GaussianRational::one());
        }
        if let Some(hit) = self.memo.lock().expect("memo poisoned").get(w) {
            return hit.clone();
        }
        let redex = self.find_redex(w, Strategy::LeftmostOddSquareFirst).expect("non-normal word has a redex");
        let mut out = UEElement::zero();
        for (w2, c) in self.rewrite(w, redex) {
            out.add_scaled(&self.straighten_memo(&w2), &c);
        }
        self.memo.lock().expect("memo poisoned").insert(w.to_vec(), out.clone());
        out
    }

    /// PBW normal form of `coeff · b_{w_1} ⋯ b_{w_n}`.
    pub fn normal_form(&self, word: &[usize], coeff: &GaussianRational) -> Result<UEElement> {
        self.check_word(word)?;
        Ok(self.straighten_memo(word).scale(coeff))
    }

    /// Unmemoized straightening with an explicit redex strategy.
    pub fn normal_form_with(&self, word: &[usize], coeff: &GaussianRational, strategy: Strategy) -> Result<UEElement> {
        self.check_word(word)?;
        fn go(env: &Enveloping, w: &[usize], strategy: Strategy) -> UEElement {
            match env.find_redex(w, strategy) {
                None => UEElement::from_monomial(Monomial(w.to_vec()), GaussianRational::one()),
                Some(r) => {
                    let mut out = UEElement::zero();
                    for (w2, c) in env.rewrite(w, r) {
                        out.add_scaled(&go(env, &w2, strategy), &c);
                    }
                    out
                }
            }
        }
        Ok(go(self, word, strategy).scale(coeff))
    }

    pub fn multiply(&self, a: &UEElement, b: &UEElement) -> Result<UEElement> {
        self.check_element(a)?;
        self.check_element(b)?;
        let mut out = UEElement::zero();
        for (m1, c1) in &a.terms {
            for (m2, c2) in &b.terms {
                let mut w = m1.0.clone();
                w.extend_from_slice(&m2.0);
                out.add_scaled(&self.straighten_memo(&w), &(c1 * c2));
            }
        }
        Ok(out)
    }

    /// Anti-linear anti-automorphism with `x† = -x` (even) and `x† = -i·x` (odd).
    pub fn dagger(&self, a: &UEElement) -> UEElement {
        let mut out = UEElement::zero();
        for (m, c) in &a.terms {
            let odd = m.0.iter().filter(|&&i| self.alg.parity(i).is_odd()).count() as u32;
            let sign = if m.0.len() % 2 == 0 { GaussianRational::one() } else { -GaussianRational::one() };
            let factor = sign.mul_i_pow(odd);
            let rev: Vec<usize> = m.0.iter().rev().copied().collect();
            out.add_scaled(&self.straighten_memo(&rev), &(&c.conj() * &factor));
        }
        out
    }

    /// Automorphism of `U(g_C)` induced by a parity-preserving bracket homomorphism `phi`.
    pub fn apply_auto(&self, phi: &RatMatrix, a: &UEElement) -> Result<UEElement> {
        let report = self.alg.check_automorphism(phi);
        if !report.is_ok() {
            return Err(Error::InvalidAutomorphism(report));
        }
        self.check_element(a)?;
        Ok(self.apply_auto_unchecked(phi, a))
    }

    /// As [`Self::apply_auto`] for a map already known to be an automorphism.
    pub fn apply_auto_unchecked(&self, phi: &RatMatrix, a: &UEElement) -> UEElement {
        if phi.is_identity() {
            return a.clone();
        }
        let images: Vec<UEElement> = (0..self.alg.dim()).map(|j| UEElement::from_rational_vector(&phi.column(j))).collect();
        let mut out = UEElement::zero();
        for (m, c) in &a.terms {
            let mut acc = UEElement::scalar(c.clone());
            for &i in &m.0 {
                acc = self.multiply(&acc, &images[i]).expect("indices in range");
            }
            out.add_scaled(&acc, &GaussianRational::one());
        }
        out
    }

    /// `α_ε`: multiplies each monomial by `(-1)^{#odd letters}`.
    pub fn apply_parity(&self, a: &UEElement) -> UEElement {
        let mut out = UEElement::zero();
        for (m, c) in &a.terms {
            let odd = m.0.iter().filter(|&&i| self.alg.parity(i).is_odd()).count();
            let c = if odd % 2 == 0 { c.clone() } else { -c };
            out.add_term(m.clone(), &c);
        }
        out
    }

    /// Degree-one element for basis name `name`.
    pub fn named(&self, name: &str) -> Result<UEElement> {
        self.alg
            .index_of(name)
            .map(UEElement::generator)
            .ok_or_else(|| Error::AlgebraMismatch(format!("no basis element `{name}` in `{}`", self.alg.name())))
    }

    pub fn memo_len(&self) -> usize {
        self.memo.lock().map(|m| m.len()).unwrap_or(0)
    }
}

/// True when every monomial of `a` is a normal word.
pub fn is_normal_element(env: &Enveloping, a: &UEElement) -> bool {
    a.terms().all(|(m, _)| env.is_normal(&m.0))
}
