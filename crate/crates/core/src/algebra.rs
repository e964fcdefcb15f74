//! Finite-dimensional real Lie superalgebras given by a graded basis and structure constants.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{span_basis, RatMatrix};
use crate::report::ValidationReport;
use crate::scalar::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn sum(self, o: Parity) -> Parity {
        if self == o {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// `(-1)^{|a||b|}` as a rational.
pub fn koszul_sign(a: Parity, b: Parity) -> Rational {
    if a.is_odd() && b.is_odd() {
        -Rational::one()
    } else {
        Rational::one()
    }
}

/// A real Lie superalgebra `g = g_even ⊕ g_odd` with `[b_i, b_j] = Σ_k c[i][j][k] b_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct SuperAlgebra {
    name: String,
    basis: Vec<String>,
    parity: Vec<Parity>,
    consts: Vec<Vec<Vec<Rational>>>,
}

impl fmt::Debug for SuperAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SuperAlgebra").field("name", &self.name).field("basis", &self.basis).finish()
    }
}

impl SuperAlgebra {
    /// Builds and validates; any violated identity is an error.
    pub fn new(
        name: impl Into<String>,
        basis: Vec<String>,
        parity: Vec<Parity>,
        consts: Vec<Vec<Vec<Rational>>>,
    ) -> Result<Self> {
        let alg = Self::from_parts(name, basis, parity, consts)?;
        let report = validate_superalgebra(&alg);
        if report.is_ok() {
            Ok(alg)
        } else {
            Err(Error::InvalidAlgebra(report))
        }
    }

    /// Structural checks only (shape of the constant table); identities are not verified.
    pub fn from_parts(
        name: impl Into<String>,
        basis: Vec<String>,
        parity: Vec<Parity>,
        consts: Vec<Vec<Vec<Rational>>>,
    ) -> Result<Self> {
        let n = basis.len();
        if parity.len() != n {
            return Err(Error::DimensionMismatch { what: "parity list".into(), expected: n, found: parity.len() });
        }
        if consts.len() != n {
            return Err(Error::DimensionMismatch { what: "structure constants".into(), expected: n, found: consts.len() });
        }
        for row in &consts {
            if row.len() != n {
                return Err(Error::DimensionMismatch { what: "structure constants".into(), expected: n, found: row.len() });
            }
            for v in row {
                if v.len() != n {
                    return Err(Error::DimensionMismatch {
                        what: "structure constants".into(),
                        expected: n,
                        found: v.len(),
                    });
                }
            }
        }
        Ok(Self { name: name.into(), basis, parity, consts })
    }

    pub fn builder(name: impl Into<String>) -> SuperAlgebraBuilder {
        SuperAlgebraBuilder { name: name.into(), basis: Vec::new(), parity: Vec::new(), entries: Vec::new() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn basis_name(&self, i: usize) -> &str {
        &self.basis[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parity[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parity
    }

    pub fn even_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.parity[i].is_odd()).collect()
    }

    pub fn odd_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parity[i].is_odd()).collect()
    }

    /// Coordinates of `[b_i, b_j]`.
    pub fn structure(&self, i: usize, j: usize) -> &[Rational] {
        &self.consts[i][j]
    }

    pub fn unit_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Result<Vec<Rational>> {
        let n = self.dim();
        for w in [u, v] {
            if w.len() != n {
                return Err(Error::DimensionMismatch { what: "bracket argument".into(), expected: n, found: w.len() });
            }
        }
        let mut out = vec![Rational::zero(); n];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let s = ui * vj;
                for (k, c) in self.consts[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &s * c;
                    }
                }
            }
        }
        Ok(out)
    }

    fn bracket_basis(&self, i: usize, v: &[Rational]) -> Vec<Rational> {
        self.bracket(&self.unit_vector(i), v).expect("length checked")
    }

    /// Matrix of `ad b_i`; column `j` holds `[b_i, b_j]`.
    pub fn ad_matrix(&self, i: usize) -> RatMatrix {
        let n = self.dim();
        let mut m = RatMatrix::zeros(n);
        for j in 0..n {
            for k in 0..n {
                m.set(k, j, self.consts[i][j][k].clone());
            }
        }
        m
    }

    /// `x ↦ (-1)^{|x|} x`.
    pub fn parity_operator(&self) -> RatMatrix {
        let d: Vec<Rational> =
            self.parity.iter().map(|p| if p.is_odd() { -Rational::one() } else { Rational::one() }).collect();
        RatMatrix::from_diag(&d)
    }

    /// Checks that `phi` (columns = images of basis vectors) preserves parity and brackets.
    pub fn check_automorphism(&self, phi: &RatMatrix) -> ValidationReport {
        let mut rep = ValidationReport::new();
        let n = self.dim();
        if phi.dim() != n {
            rep.violate("shape", format!("expected {n}x{n} matrix, found {0}x{0}", phi.dim()));
            return rep;
        }
        let m = rep.mark();
        for j in 0..n {
            for k in 0..n {
                if !phi.get(k, j).is_zero() && self.parity[k] != self.parity[j] {
                    rep.violate("parity", format!("{} -> component along {}", self.basis[j], self.basis[k]));
                }
            }
        }
        rep.close_check("parity", m);
        let m = rep.mark();
        for i in 0..n {
            for j in i..n {
                let lhs = phi.apply(self.structure(i, j));
                let rhs = self.bracket(&phi.column(i), &phi.column(j)).expect("shape checked");
                if lhs != rhs {
                    rep.violate("bracket", format!("({}, {})", self.basis[i], self.basis[j]));
                }
            }
        }
        rep.close_check("bracket", m);
        rep
    }
}

type BracketEntry = (String, String, Vec<(String, Rational)>);

/// Incremental construction of a [`SuperAlgebra`] by basis name.
#[derive(Debug, Clone)]
pub struct SuperAlgebraBuilder {
    name: String,
    basis: Vec<String>,
    parity: Vec<Parity>,
    entries: Vec<BracketEntry>,
}

impl SuperAlgebraBuilder {
    pub fn even(mut self, name: &str) -> Self {
        self.basis.push(name.to_string());
        self.parity.push(Parity::Even);
        self
    }

    pub fn odd(mut self, name: &str) -> Self {
        self.basis.push(name.to_string());
        self.parity.push(Parity::Odd);
        self
    }

    /// Sets `[a, b]`. The partner `[b, a]` is filled in by super-skew symmetry unless set explicitly.
    pub fn bracket(mut self, a: &str, b: &str, value: &[(&str, Rational)]) -> Self {
        self.entries.push((
            a.to_string(),
            b.to_string(),
            value.iter().map(|(n, c)| (n.to_string(), c.clone())).collect(),
        ));
        self
    }

    /// Table without validating the identities.
    pub fn build_unchecked(self) -> Result<SuperAlgebra> {
        let n = self.basis.len();
        let idx = |s: &str| {
            self.basis.iter().position(|b| b == s).ok_or_else(|| Error::Workspace(format!("unknown basis name `{s}`")))
        };
        let mut consts = vec![vec![vec![Rational::zero(); n]; n]; n];
        let mut explicit = vec![vec![false; n]; n];
        for (a, b, _) in &self.entries {
            explicit[idx(a)?][idx(b)?] = true;
        }
        for (a, b, val) in &self.entries {
            let (i, j) = (idx(a)?, idx(b)?);
            let mut v = vec![Rational::zero(); n];
            for (name, c) in val {
                v[idx(name)?] += c;
            }
            if !explicit[j][i] {
                let s = -koszul_sign(self.parity[i], self.parity[j]);
                consts[j][i] = v.iter().map(|x| x * &s).collect();
            }
            consts[i][j] = v;
        }
        SuperAlgebra::from_parts(self.name, self.basis, self.parity, consts)
    }

    pub fn build(self) -> Result<SuperAlgebra> {
        let alg = self.build_unchecked()?;
        let report = validate_superalgebra(&alg);
        if report.is_ok() {
            Ok(alg)
        } else {
            Err(Error::InvalidAlgebra(report))
        }
    }
}

/// Super-skew symmetry, parity compatibility and the graded Jacobi identity on all basis pairs/triples.
pub fn validate_superalgebra(alg: &SuperAlgebra) -> ValidationReport {
    let n = alg.dim();
    let names = &alg.basis;
    let mut rep = ValidationReport::new();

    let m = rep.mark();
    for i in 0..n {
        for j in i..n {
            let s = koszul_sign(alg.parity[i], alg.parity[j]);
            let bad = (0..n).any(|k| !(&alg.consts[i][j][k] + &s * &alg.consts[j][i][k]).is_zero());
            if bad {
                rep.violate("super-skew", format!("({}, {})", names[i], names[j]));
            }
        }
    }
    rep.close_check("super-skew", m);

    let m = rep.mark();
    for i in 0..n {
        for j in 0..n {
            let target = alg.parity[i].sum(alg.parity[j]);
            for k in 0..n {
                if !alg.consts[i][j][k].is_zero() && alg.parity[k] != target {
                    rep.violate("parity", format!("[{}, {}] has a component along {}", names[i], names[j], names[k]));
                }
            }
        }
    }
    rep.close_check("parity", m);

    let m = rep.mark();
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                let (pu, pv, pw) = (alg.parity[u], alg.parity[v], alg.parity[w]);
                let t1 = alg.bracket_basis(u, &alg.consts[v][w]);
                let t2 = alg.bracket_basis(v, &alg.consts[w][u]);
                let t3 = alg.bracket_basis(w, &alg.consts[u][v]);
                let (s1, s2, s3) = (koszul_sign(pu, pw), koszul_sign(pv, pu), koszul_sign(pw, pv));
                let nonzero = (0..n).any(|k| !(&s1 * &t1[k] + &s2 * &t2[k] + &s3 * &t3[k]).is_zero());
                if nonzero {
                    rep.violate("jacobi", format!("({}, {}, {})", names[u], names[v], names[w]));
                }
            }
        }
    }
    rep.close_check("jacobi", m);
    rep
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Nilpotency {
    pub nilpotent: bool,
    /// Number of nonzero terms of the lower central series before it vanishes or stabilizes.
    pub series_length: usize,
}

/// Lower central series `C¹ = g`, `C^{k+1} = [g, C^k]` with the super bracket.
pub fn is_nilpotent(alg: &SuperAlgebra) -> Nilpotency {
    let n = alg.dim();
    let mut current: Vec<Vec<Rational>> = (0..n).map(|i| alg.unit_vector(i)).collect();
    current = span_basis(&current);
    let mut length = 0;
    loop {
        if current.is_empty() {
            return Nilpotency { nilpotent: true, series_length: length };
        }
        length += 1;
        let mut next = Vec::new();
        for i in 0..n {
            for v in &current {
                next.push(alg.bracket_basis(i, v));
            }
        }
        let next = span_basis(&next);
        if next.len() == current.len() {
            return Nilpotency { nilpotent: false, series_length: length };
        }
        current = next;
    }
}

/// `g_even = [g_odd, g_odd]`.
pub fn is_odd_generated(alg: &SuperAlgebra) -> bool {
    let odd = alg.odd_indices();
    let mut brackets = Vec::new();
    for (a, &i) in odd.iter().enumerate() {
        for &j in &odd[a..] {
            brackets.push(alg.structure(i, j).to_vec());
        }
    }
    span_basis(&brackets).len() == alg.even_indices().len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;

    fn one() -> Rational {
        rat_int(1)
    }

    pub(crate) fn hc() -> SuperAlgebra {
        SuperAlgebra::builder("hc").even("z").odd("x").bracket("x", "x", &[("z", one())]).build().unwrap()
    }

    #[test]
    fn hc_brackets() {
        let a = hc();
        let z = a.unit_vector(0);
        let x = a.unit_vector(1);
        assert_eq!(a.bracket(&x, &x).unwrap(), z);
        assert_eq!(a.bracket(&z, &x).unwrap(), vec![rat_int(0), rat_int(0)]);
        let zero = vec![rat_int(0); 2];
        assert_eq!(a.bracket(&zero, &x).unwrap(), zero);
        assert!(a.bracket(&[one()], &x).is_err());
    }

    #[test]
    fn odd_square_onto_odd_is_rejected() {
        let a = SuperAlgebra::builder("bad").odd("x").bracket("x", "x", &[("x", one())]).build_unchecked().unwrap();
        let r = validate_superalgebra(&a);
        assert!(!r.is_ok());
        assert!(r.violations_of("parity").count() > 0);
        assert!(matches!(SuperAlgebra::builder("bad").odd("x").bracket("x", "x", &[("x", one())]).build(), Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn dimension_mismatch_is_structural() {
        let r = SuperAlgebra::from_parts("x", vec!["a".into()], vec![Parity::Odd], vec![]);
        assert!(matches!(r, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn explicit_non_skew_entry_is_reported() {
        let a = SuperAlgebra::builder("skew")
            .even("h")
            .even("e")
            .bracket("h", "e", &[("e", one())])
            .bracket("e", "h", &[("e", one())])
            .build_unchecked()
            .unwrap();
        let r = validate_superalgebra(&a);
        assert_eq!(r.violations_of("super-skew").count(), 1);
    }

    #[test]
    fn predicates() {
        assert_eq!(is_nilpotent(&hc()), Nilpotency { nilpotent: true, series_length: 2 });
        assert!(is_odd_generated(&hc()));

        let odd = SuperAlgebra::builder("odd1").odd("x").build().unwrap();
        assert!(is_nilpotent(&odd).nilpotent);
        assert!(is_odd_generated(&odd));

        let split = SuperAlgebra::builder("split").even("z").odd("x").build().unwrap();
        assert!(!is_odd_generated(&split));

        let solv = SuperAlgebra::builder("ax+b").even("h").even("x").bracket("h", "x", &[("x", one())]).build().unwrap();
        assert_eq!(is_nilpotent(&solv), Nilpotency { nilpotent: false, series_length: 2 });
    }
}
