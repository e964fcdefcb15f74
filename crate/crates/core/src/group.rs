//! Realizations of `G` and `G_ε = G × {1, ε}` with the adjoint action, and Harish-Chandra pair validation.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::SuperAlgebra;
use crate::enveloping::Enveloping;
use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::report::ValidationReport;
use crate::scalar::{rat, Rational};

/// The `G`-component of a point of `G_ε`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GroupBase {
    Finite(usize),
    Line(f64),
}

/// A point `(g, ε^e)` of `G_ε`; `ε` is central and squares to the identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupPoint {
    pub base: GroupBase,
    pub eps: bool,
}

impl GroupPoint {
    pub fn finite(g: usize, eps: bool) -> Self {
        Self { base: GroupBase::Finite(g), eps }
    }

    pub fn line(t: f64, eps: bool) -> Self {
        Self { base: GroupBase::Line(t), eps }
    }
}

/// A finite group given by its Cayley table, with `Ad` on every element.
#[derive(Clone, PartialEq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: Option<usize>,
    inverses: Vec<Option<usize>>,
    ad: Vec<Option<RatMatrix>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup").field("elements", &self.names).finish()
    }
}

impl FiniteGroup {
    /// `ad` assigns matrices to some elements (typically generators); the rest are derived by products.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>, ad: Vec<(usize, RatMatrix)>, dim: usize) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty element list".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidGroup(format!("Cayley table must be {n}x{n}")));
        }
        if let Some(bad) = table.iter().flatten().find(|&&e| e >= n) {
            return Err(Error::InvalidGroup(format!("table entry {bad} out of range")));
        }
        for (g, m) in &ad {
            if *g >= n {
                return Err(Error::InvalidGroup(format!("Ad given for unknown element index {g}")));
            }
            if m.dim() != dim {
                return Err(Error::DimensionMismatch { what: "Ad matrix".into(), expected: dim, found: m.dim() });
            }
        }
        let identity = (0..n).find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g));
        let inverses = (0..n)
            .map(|g| identity.and_then(|e| (0..n).find(|&h| table[g][h] == e && table[h][g] == e)))
            .collect();
        let mut adm: Vec<Option<RatMatrix>> = vec![None; n];
        for (g, m) in ad {
            adm[g] = Some(m);
        }
        if let Some(e) = identity {
            if adm[e].is_none() {
                adm[e] = Some(RatMatrix::identity(dim));
            }
        }
        // close under products
        loop {
            let mut changed = false;
            for g in 0..n {
                for h in 0..n {
                    let gh = table[g][h];
                    if adm[gh].is_none() {
                        if let (Some(a), Some(b)) = (&adm[g], &adm[h]) {
                            adm[gh] = Some(a.mul(b));
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        Ok(Self { names, table, identity, inverses, ad: adm })
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn identity(&self) -> usize {
        self.identity.expect("validated group has an identity")
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverses[g].expect("validated group has inverses")
    }

    pub fn ad(&self, g: usize) -> &RatMatrix {
        self.ad[g].as_ref().expect("validated group has Ad everywhere")
    }
}

/// `G = R` with `exp(t·z) = t` for the even generator `z`; `Ad(t) = exp(t ad z)` with `ad z` nilpotent.
#[derive(Debug, Clone, PartialEq)]
pub struct LineGroup {
    generator: usize,
    /// `(ad z)^k / k!` for `k = 0, 1, …` until the power vanishes.
    ad_series: Vec<RatMatrix>,
    nilpotent: bool,
}

impl LineGroup {
    pub fn new(alg: &SuperAlgebra, generator: usize) -> Result<Self> {
        if generator >= alg.dim() {
            return Err(Error::AlgebraMismatch(format!("generator index {generator} out of range")));
        }
        let n = alg.dim();
        let ad = alg.ad_matrix(generator);
        let mut series = vec![RatMatrix::identity(n)];
        let mut power = RatMatrix::identity(n);
        let mut nilpotent = false;
        for k in 1..=n + 1 {
            power = power.mul(&ad);
            if power.is_zero() {
                nilpotent = true;
                break;
            }
            series.push(power.scale(&(Rational::one() / factorial(k))));
        }
        Ok(Self { generator, ad_series: series, nilpotent })
    }

    pub fn generator(&self) -> usize {
        self.generator
    }

    /// `Ad(t)` for rational `t`.
    pub fn ad_exact(&self, t: &Rational) -> RatMatrix {
        let mut out = RatMatrix::zeros(self.ad_series[0].dim());
        let mut tk = Rational::one();
        for m in &self.ad_series {
            out = out.add(&m.scale(&tk));
            tk *= t;
        }
        out
    }

    /// Whether `Ad(t)` is the identity for every `t` (equivalently `ad z = 0`).
    pub fn acts_trivially(&self) -> bool {
        self.ad_series.len() == 1
    }
}

fn factorial(k: usize) -> Rational {
    (1..=k).fold(Rational::one(), |acc, i| acc * rat(i as i64, 1))
}

#[derive(Debug, Clone, PartialEq)]
pub enum GroupData {
    Finite(FiniteGroup),
    Line(LineGroup),
}

impl GroupData {
    pub fn is_line(&self) -> bool {
        matches!(self, GroupData::Line(_))
    }

    pub fn as_finite(&self) -> Option<&FiniteGroup> {
        match self {
            GroupData::Finite(g) => Some(g),
            GroupData::Line(_) => None,
        }
    }

    pub fn as_line(&self) -> Option<&LineGroup> {
        match self {
            GroupData::Line(g) => Some(g),
            GroupData::Finite(_) => None,
        }
    }

    /// Modular function; every shipped group is unimodular.
    pub fn modular(&self, _g: &GroupPoint) -> f64 {
        1.0
    }

    pub fn identity(&self) -> GroupPoint {
        match self {
            GroupData::Finite(g) => GroupPoint::finite(g.identity(), false),
            GroupData::Line(_) => GroupPoint::line(0.0, false),
        }
    }

    pub fn mul(&self, a: &GroupPoint, b: &GroupPoint) -> GroupPoint {
        let base = match (self, a.base, b.base) {
            (GroupData::Finite(g), GroupBase::Finite(x), GroupBase::Finite(y)) => GroupBase::Finite(g.mul(x, y)),
            (GroupData::Line(_), GroupBase::Line(s), GroupBase::Line(t)) => GroupBase::Line(s + t),
            _ => panic!("group point does not belong to this group"),
        };
        GroupPoint { base, eps: a.eps ^ b.eps }
    }

    pub fn inverse(&self, a: &GroupPoint) -> GroupPoint {
        let base = match (self, a.base) {
            (GroupData::Finite(g), GroupBase::Finite(x)) => GroupBase::Finite(g.inverse(x)),
            (GroupData::Line(_), GroupBase::Line(t)) => GroupBase::Line(-t),
            _ => panic!("group point does not belong to this group"),
        };
        GroupPoint { base, eps: a.eps }
    }

    /// All `2|G|` points of a finite `G_ε`, indexed `g + e·|G|`.
    pub fn points(&self) -> Vec<GroupPoint> {
        match self {
            GroupData::Finite(g) => {
                let n = g.order();
                (0..2 * n).map(|k| GroupPoint::finite(k % n, k >= n)).collect()
            }
            GroupData::Line(_) => Vec::new(),
        }
    }

    pub fn point_index(&self, p: &GroupPoint) -> Option<usize> {
        match (self, p.base) {
            (GroupData::Finite(g), GroupBase::Finite(x)) => Some(x + if p.eps { g.order() } else { 0 }),
            _ => None,
        }
    }

    pub fn point_name(&self, p: &GroupPoint) -> String {
        let base = match (self, p.base) {
            (GroupData::Finite(g), GroupBase::Finite(x)) => g.names()[x].clone(),
            (_, GroupBase::Line(t)) => format!("{t}"),
            (_, GroupBase::Finite(x)) => format!("#{x}"),
        };
        if p.eps {
            format!("({base} eps)")
        } else {
            base
        }
    }
}

/// `Ad` on `G_ε`: `Ad((g, ε^e)) = Ad(g) ∘ Ad(ε)^e` with `Ad(ε)x = (-1)^{|x|}x`.
#[derive(Debug, Clone)]
pub struct ExtendedAd {
    group: GroupData,
    parity: RatMatrix,
}

impl ExtendedAd {
    pub fn ad_eps(&self) -> &RatMatrix {
        &self.parity
    }

    /// `Ad(p)` as an exact matrix; line points are converted to the exact rational value of the `f64`.
    pub fn matrix(&self, p: &GroupPoint) -> RatMatrix {
        let base = match (&self.group, p.base) {
            (GroupData::Finite(g), GroupBase::Finite(x)) => g.ad(x).clone(),
            (GroupData::Line(l), GroupBase::Line(t)) => {
                let t = BigRational::from_float(t).unwrap_or_else(Rational::zero);
                l.ad_exact(&t)
            }
            _ => panic!("group point does not belong to this group"),
        };
        if p.eps {
            base.mul(&self.parity)
        } else {
            base
        }
    }
}

pub fn ad_eps_extend(group: &GroupData, alg: &SuperAlgebra) -> ExtendedAd {
    ExtendedAd { group: group.clone(), parity: alg.parity_operator() }
}

/// Checks the Harish-Chandra pair axioms for the supported realizations.
pub fn validate_pair(group: &GroupData, alg: &SuperAlgebra) -> ValidationReport {
    let mut rep = ValidationReport::new();
    match group {
        GroupData::Finite(g) => validate_finite(g, alg, &mut rep),
        GroupData::Line(l) => validate_line(l, alg, &mut rep),
    }
    rep
}

fn validate_finite(g: &FiniteGroup, alg: &SuperAlgebra, rep: &mut ValidationReport) {
    let n = g.order();
    let m = rep.mark();
    if g.identity.is_none() {
        rep.violate("group", "no identity element");
    }
    for (x, inv) in g.inverses.iter().enumerate() {
        if inv.is_none() {
            rep.violate("group", format!("{} has no inverse", g.names[x]));
        }
    }
    'assoc: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)) {
                    rep.violate("group", format!("associativity fails at ({}, {}, {})", g.names[a], g.names[b], g.names[c]));
                    break 'assoc;
                }
            }
        }
    }
    rep.close_check("group", m);

    let m = rep.mark();
    let even = alg.even_indices().len();
    if even != 0 {
        rep.violate("even-dimension", format!("Lie algebra of a finite group is 0 but g_even has dimension {even}"));
    }
    rep.close_check("even-dimension", m);

    let m = rep.mark();
    for (x, a) in g.ad.iter().enumerate() {
        if a.is_none() {
            rep.violate("ad-defined", format!("Ad undetermined on {}", g.names[x]));
        }
    }
    rep.close_check("ad-defined", m);

    let m = rep.mark();
    for (x, a) in g.ad.iter().enumerate() {
        if let Some(a) = a {
            for v in alg.check_automorphism(a).violations {
                rep.violate("ad-automorphism", format!("{}: {} {}", g.names[x], v.rule, v.witness));
            }
        }
    }
    rep.close_check("ad-automorphism", m);

    let m = rep.mark();
    for a in 0..n {
        for b in 0..n {
            if let (Some(x), Some(y), Some(xy)) = (&g.ad[a], &g.ad[b], &g.ad[g.mul(a, b)]) {
                if &x.mul(y) != xy {
                    rep.violate("ad-homomorphism", format!("Ad({}{}) != Ad({})Ad({})", g.names[a], g.names[b], g.names[a], g.names[b]));
                }
            }
        }
    }
    rep.close_check("ad-homomorphism", m);
}

fn validate_line(l: &LineGroup, alg: &SuperAlgebra, rep: &mut ValidationReport) {
    let m = rep.mark();
    let even = alg.even_indices();
    if even != [l.generator] {
        rep.violate(
            "even-dimension",
            format!("g_even must be spanned by the line generator {}; found {} even basis elements", alg.basis_name(l.generator), even.len()),
        );
    }
    rep.close_check("even-dimension", m);

    let m = rep.mark();
    if !l.nilpotent {
        rep.violate("ad-nilpotent", format!("ad {} is not nilpotent", alg.basis_name(l.generator)));
    }
    rep.close_check("ad-nilpotent", m);

    // d/dt Ad(t)y at t = 0 is the t-coefficient of the series; it must equal [z, y].
    let m = rep.mark();
    let n = alg.dim();
    let derivative = l.ad_series.get(1).cloned().unwrap_or_else(|| RatMatrix::zeros(n));
    for y in 0..n {
        let expected = alg.bracket(&alg.unit_vector(l.generator), &alg.unit_vector(y)).expect("dims");
        if derivative.column(y) != expected {
            rep.violate("ad-derivative", format!("d/dt Ad(t){} != [{}, {}]", alg.basis_name(y), alg.basis_name(l.generator), alg.basis_name(y)));
        }
    }
    rep.close_check("ad-derivative", m);

    // Without nilpotency the series for Ad(t) is truncated, so exact identities cannot be tested.
    if !l.nilpotent {
        return;
    }
    let samples = [rat(1, 1), rat(-1, 2), rat(3, 1)];
    let m = rep.mark();
    for t in &samples {
        for v in alg.check_automorphism(&l.ad_exact(t)).violations {
            rep.violate("ad-automorphism", format!("t = {t}: {} {}", v.rule, v.witness));
        }
        let z = l.ad_exact(t).column(l.generator);
        if z != alg.unit_vector(l.generator) {
            rep.violate("ad-automorphism", format!("t = {t}: Ad(t) moves the generator"));
        }
    }
    rep.close_check("ad-automorphism", m);

    let m = rep.mark();
    for s in &samples {
        for t in &samples {
            if l.ad_exact(s).mul(&l.ad_exact(t)) != l.ad_exact(&(s + t)) {
                rep.violate("ad-homomorphism", format!("Ad({s})Ad({t}) != Ad({})", s + t));
            }
        }
    }
    rep.close_check("ad-homomorphism", m);
}

/// A validated Harish-Chandra pair `(G, g)` together with `U(g_C)`.
#[derive(Debug)]
pub struct Pair {
    name: String,
    group: GroupData,
    env: Enveloping,
    ad: ExtendedAd,
}

impl Pair {
    pub fn new(name: impl Into<String>, alg: Arc<SuperAlgebra>, group: GroupData) -> Result<Self> {
        let report = validate_pair(&group, &alg);
        if !report.is_ok() {
            return Err(Error::InvalidPair(report));
        }
        let ad = ad_eps_extend(&group, &alg);
        Ok(Self { name: name.into(), group, env: Enveloping::new(alg), ad })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &SuperAlgebra {
        self.env.algebra()
    }

    pub fn env(&self) -> &Enveloping {
        &self.env
    }

    pub fn group(&self) -> &GroupData {
        &self.group
    }

    pub fn ad(&self) -> &ExtendedAd {
        &self.ad
    }

    pub fn is_line(&self) -> bool {
        self.group.is_line()
    }
}
