//! S-expression definitions of algebras, pairs, elements, representations and families.
//!
//! ```text
//! ; comments run to end of line
//! (algebra hc1 (basis (z even) (x odd)) (bracket x x z))
//! (pair hc (algebra hc1) (line z))
//! (element a1 (pair hc) (tensor x (line (term + (poly 1) (gauss 1 0)))))
//! (rep r2 (pair hc) (clifford 2))
//! (family grid (pair hc) (lambdas 1/4 1/2 1 2))
//! ```
//!
//! Values in `U(g_C)` are written with `(+ ...)`, `(* ...)` and `(- ...)` over basis names and
//! coefficients. A coefficient is a rational (`3`, `-1/2`, `0.25`), an imaginary rational (`2i`,
//! `-1/3i`) or `(c re im)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::algebra::{koszul_sign, validate_superalgebra, Parity, SuperAlgebra};
use crate::crossed::CrossedElement;
use crate::enveloping::{Enveloping, UEElement};
use crate::error::Error;
use crate::function::{FiniteFunction, Function, GaussTerm, GaussianPoly, LineFunction};
use crate::group::{validate_pair, FiniteGroup, GroupData, LineGroup, Pair};
use crate::linalg::{CMat, QMat, RatMatrix};
use crate::report::ValidationReport;
use crate::repr::{self, MatrixRep, RepData};
use crate::scalar::{parse_rational, rational_to_f64, GaussianRational, Rational, ScalarParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Loc {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Loc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagKind {
    Lexical,
    Syntax,
    Semantic,
}

impl fmt::Display for DiagKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiagKind::Lexical => "lexical error",
            DiagKind::Syntax => "syntax error",
            DiagKind::Semantic => "semantic error",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub kind: DiagKind,
    pub loc: Loc,
    pub message: String,
    pub expected: Vec<String>,
    /// A second site involved in the error, such as an earlier definition.
    pub related: Option<Loc>,
    pub file: Option<String>,
}

impl Diagnostic {
    fn new(kind: DiagKind, loc: Loc, message: impl Into<String>) -> Self {
        Self { kind, loc, message: message.into(), expected: Vec::new(), related: None, file: None }
    }

    fn expecting(mut self, expected: &[&str]) -> Self {
        self.expected = expected.iter().map(|s| s.to_string()).collect();
        self
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(file) = &self.file {
            write!(f, "{file}:")?;
        }
        write!(f, "{}: {}: {}", self.loc, self.kind, self.message)?;
        if !self.expected.is_empty() {
            let list: Vec<String> = self.expected.iter().map(|e| format!("`{e}`")).collect();
            write!(f, " (expected one of {})", list.join(", "))?;
        }
        if let Some(r) = self.related {
            write!(f, " (see also {r})")?;
        }
        Ok(())
    }
}

type PResult<T> = Result<T, Diagnostic>;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Open,
    Close,
    Atom(String),
}

fn is_numeric_start(s: &str) -> bool {
    let b = s.as_bytes();
    match b.first() {
        Some(c) if c.is_ascii_digit() => true,
        Some(b'-' | b'+' | b'.') => b.get(1).is_some_and(|c| c.is_ascii_digit() || *c == b'.'),
        _ => false,
    }
}

fn check_number(s: &str, loc: Loc) -> PResult<()> {
    let body = s.strip_suffix('i').unwrap_or(s);
    match parse_rational(body) {
        Ok(_) => Ok(()),
        Err(ScalarParseError::ZeroDenominator(_)) => Err(Diagnostic::new(DiagKind::Lexical, loc, format!("zero denominator in `{s}`"))),
        Err(_) if body.parse::<f64>().is_ok_and(f64::is_finite) && body.len() == s.len() => Ok(()),
        Err(_) => Err(Diagnostic::new(DiagKind::Lexical, loc, format!("malformed number `{s}`"))),
    }
}

fn lex(src: &str) -> PResult<Vec<(Token, Loc)>> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let loc = Loc { line, col };
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            ';' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    chars.next();
                }
            }
            '(' | ')' => {
                chars.next();
                col += 1;
                out.push((if c == '(' { Token::Open } else { Token::Close }, loc));
            }
            _ => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    if c.is_control() {
                        return Err(Diagnostic::new(DiagKind::Lexical, Loc { line, col }, format!("unexpected character {c:?}")));
                    }
                    s.push(c);
                    chars.next();
                    col += 1;
                }
                if is_numeric_start(&s) {
                    check_number(&s, loc)?;
                }
                out.push((Token::Atom(s), loc));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
enum NodeKind {
    Atom(String),
    List(Vec<Node>),
}

#[derive(Debug, Clone, PartialEq)]
struct Node {
    kind: NodeKind,
    loc: Loc,
}

fn read(tokens: &[(Token, Loc)]) -> PResult<Vec<Node>> {
    let mut stack: Vec<(Loc, Vec<Node>)> = Vec::new();
    let mut top = Vec::new();
    for (tok, loc) in tokens {
        match tok {
            Token::Open => stack.push((*loc, Vec::new())),
            Token::Close => {
                let (start, items) = stack
                    .pop()
                    .ok_or_else(|| Diagnostic::new(DiagKind::Syntax, *loc, "unmatched `)`").expecting(&["(", "end of input"]))?;
                let node = Node { kind: NodeKind::List(items), loc: start };
                match stack.last_mut() {
                    Some((_, parent)) => parent.push(node),
                    None => top.push(node),
                }
            }
            Token::Atom(s) => {
                let node = Node { kind: NodeKind::Atom(s.clone()), loc: *loc };
                match stack.last_mut() {
                    Some((_, parent)) => parent.push(node),
                    None => {
                        return Err(Diagnostic::new(DiagKind::Syntax, *loc, format!("unexpected atom `{s}` at top level")).expecting(&["("]))
                    }
                }
            }
        }
    }
    if let Some((start, _)) = stack.pop() {
        return Err(Diagnostic::new(DiagKind::Syntax, start, "unclosed `(`").expecting(&[")"]));
    }
    Ok(top)
}

impl Node {
    fn atom(&self) -> Option<&str> {
        match &self.kind {
            NodeKind::Atom(s) => Some(s),
            NodeKind::List(_) => None,
        }
    }

    fn list(&self) -> Option<&[Node]> {
        match &self.kind {
            NodeKind::List(v) => Some(v),
            NodeKind::Atom(_) => None,
        }
    }

    fn expect_atom(&self, what: &str) -> PResult<&str> {
        self.atom().ok_or_else(|| Diagnostic::new(DiagKind::Syntax, self.loc, format!("expected {what}, found a list")).expecting(&[what]))
    }

    fn expect_list(&self, what: &str) -> PResult<&[Node]> {
        self.list().ok_or_else(|| Diagnostic::new(DiagKind::Syntax, self.loc, format!("expected {what}, found an atom")).expecting(&["("]))
    }

    /// A list whose head is one of `heads`; returns the head and the rest.
    fn tagged<'a>(&'a self, heads: &[&str]) -> PResult<(&'a str, &'a [Node])> {
        let items = self.expect_list(heads.first().copied().unwrap_or("form"))?;
        let Some(first) = items.first() else {
            return Err(Diagnostic::new(DiagKind::Syntax, self.loc, "empty list").expecting(heads));
        };
        let head = first.atom().filter(|h| heads.contains(h)).ok_or_else(|| {
            let found = first.atom().map_or_else(|| "a list".to_string(), |a| format!("`{a}`"));
            Diagnostic::new(DiagKind::Syntax, first.loc, format!("unexpected {found}")).expecting(heads)
        })?;
        Ok((head, &items[1..]))
    }
}

fn sem(loc: Loc, msg: impl Into<String>) -> Diagnostic {
    Diagnostic::new(DiagKind::Semantic, loc, msg)
}

fn arity(node: &Node, args: &[Node], n: usize, what: &str) -> PResult<()> {
    if args.len() != n {
        return Err(Diagnostic::new(DiagKind::Syntax, node.loc, format!("{what} takes {n} argument(s), found {}", args.len())));
    }
    Ok(())
}

fn parse_rat(node: &Node) -> PResult<Rational> {
    let s = node.expect_atom("rational")?;
    parse_rational(s).map_err(|e| Diagnostic::new(DiagKind::Syntax, node.loc, format!("expected a rational, found `{s}`: {e}")))
}

fn parse_coef(node: &Node) -> PResult<GaussianRational> {
    if let Some(s) = node.atom() {
        if let Some(body) = s.strip_suffix('i') {
            if is_numeric_start(body) {
                return parse_rational(body)
                    .map(|r| GaussianRational::new(Rational::zero(), r))
                    .map_err(|e| Diagnostic::new(DiagKind::Syntax, node.loc, e.to_string()));
            }
        }
        return Ok(GaussianRational::real(parse_rat(node)?));
    }
    let (_, args) = node.tagged(&["c"])?;
    arity(node, args, 2, "c")?;
    Ok(GaussianRational::new(parse_rat(&args[0])?, parse_rat(&args[1])?))
}

fn parse_float(node: &Node) -> PResult<f64> {
    let s = node.expect_atom("number")?;
    if let Ok(v) = s.parse::<f64>() {
        if v.is_finite() {
            return Ok(v);
        }
    }
    parse_rational(s)
        .map(|r| rational_to_f64(&r))
        .map_err(|_| Diagnostic::new(DiagKind::Syntax, node.loc, format!("expected a number, found `{s}`")).expecting(&["number"]))
}

fn parse_complex(node: &Node) -> PResult<Complex64> {
    if node.atom().is_some() {
        return Ok(Complex64::new(parse_float(node)?, 0.0));
    }
    let (_, args) = node.tagged(&["c"])?;
    arity(node, args, 2, "c")?;
    Ok(Complex64::new(parse_float(&args[0])?, parse_float(&args[1])?))
}

fn basis_index(alg: &SuperAlgebra, node: &Node) -> PResult<usize> {
    let s = node.expect_atom("basis name")?;
    alg.index_of(s).ok_or_else(|| {
        let names: Vec<&str> = alg.basis_names().iter().map(String::as_str).collect();
        sem(node.loc, format!("unknown basis element `{s}` in algebra {}", alg.name())).expecting(&names)
    })
}

/// A linear combination of basis elements: `name`, `0`, `(* c name)`, `(+ ...)`, `(- ...)`.
fn parse_vector(alg: &SuperAlgebra, node: &Node) -> PResult<Vec<Rational>> {
    let n = alg.dim();
    if let Some(s) = node.atom() {
        if s == "0" {
            return Ok(vec![Rational::zero(); n]);
        }
        let mut v = vec![Rational::zero(); n];
        v[basis_index(alg, node)?] = Rational::one();
        return Ok(v);
    }
    let (head, args) = node.tagged(&["+", "*", "-"])?;
    match head {
        "+" => {
            let mut v = vec![Rational::zero(); n];
            for a in args {
                for (x, y) in v.iter_mut().zip(parse_vector(alg, a)?) {
                    *x += y;
                }
            }
            Ok(v)
        }
        "-" => {
            let parts: Vec<Vec<Rational>> = args.iter().map(|a| parse_vector(alg, a)).collect::<PResult<_>>()?;
            match parts.len() {
                1 => Ok(parts[0].iter().map(|x| -x).collect()),
                2 => Ok(parts[0].iter().zip(&parts[1]).map(|(a, b)| a - b).collect()),
                _ => Err(Diagnostic::new(DiagKind::Syntax, node.loc, "`-` takes one or two arguments")),
            }
        }
        _ => {
            arity(node, args, 2, "*")?;
            let c = parse_rat(&args[0])?;
            Ok(parse_vector(alg, &args[1])?.into_iter().map(|x| x * &c).collect())
        }
    }
}

/// An element of `U(g_C)` in the same notation, multiplied out and brought to normal form.
fn parse_ue(env: &Enveloping, node: &Node) -> PResult<UEElement> {
    let alg = env.algebra();
    if let Some(s) = node.atom() {
        if is_numeric_start(s) || s.ends_with('i') && is_numeric_start(&s[..s.len() - 1]) {
            return Ok(UEElement::scalar(parse_coef(node)?));
        }
        return Ok(UEElement::generator(basis_index(alg, node)?));
    }
    let (head, args) = node.tagged(&["+", "*", "-", "c"])?;
    match head {
        "c" => Ok(UEElement::scalar(parse_coef(node)?)),
        "+" => {
            let mut acc = UEElement::zero();
            for a in args {
                acc = acc.add(&parse_ue(env, a)?);
            }
            Ok(acc)
        }
        "-" => {
            let parts: Vec<UEElement> = args.iter().map(|a| parse_ue(env, a)).collect::<PResult<_>>()?;
            match parts.len() {
                1 => Ok(parts[0].scale(&-GaussianRational::one())),
                2 => Ok(parts[0].sub(&parts[1])),
                _ => Err(Diagnostic::new(DiagKind::Syntax, node.loc, "`-` takes one or two arguments")),
            }
        }
        _ => {
            let mut acc = UEElement::one();
            for a in args {
                acc = env.multiply(&acc, &parse_ue(env, a)?).map_err(|e| sem(a.loc, e.to_string()))?;
            }
            Ok(acc)
        }
    }
}

fn parse_function(pair: &Pair, node: &Node) -> PResult<Function> {
    let (head, args) = node.tagged(&["finite", "line"])?;
    match (head, pair.group()) {
        ("finite", GroupData::Finite(g)) => {
            let n = 2 * g.order();
            let mut values = vec![GaussianRational::zero(); n];
            for entry in args {
                let items = entry.expect_list("(point value)")?;
                arity(entry, items, 2, "function entry")?;
                let (name_node, eps) = match &items[0].kind {
                    NodeKind::Atom(_) => (&items[0], false),
                    NodeKind::List(v) if v.len() == 2 && v[1].atom() == Some("eps") => (&v[0], true),
                    NodeKind::List(_) => {
                        return Err(Diagnostic::new(DiagKind::Syntax, items[0].loc, "expected a group element or (element eps)"))
                    }
                };
                let name = name_node.expect_atom("group element")?;
                let gi = g.index_of(name).ok_or_else(|| {
                    let names: Vec<&str> = g.names().iter().map(String::as_str).collect();
                    sem(name_node.loc, format!("unknown group element `{name}`")).expecting(&names)
                })?;
                let idx = gi + if eps { g.order() } else { 0 };
                values[idx] = &values[idx] + &parse_coef(&items[1])?;
            }
            Ok(Function::Finite(FiniteFunction::from_values(values)))
        }
        ("line", GroupData::Line(_)) => {
            let mut plus = Vec::new();
            let mut minus = Vec::new();
            for t in args {
                let (_, targs) = t.tagged(&["term"])?;
                arity(t, targs, 3, "term")?;
                let eps = match targs[0].expect_atom("`+` or `eps`")? {
                    "+" => false,
                    "eps" => true,
                    other => {
                        return Err(Diagnostic::new(DiagKind::Syntax, targs[0].loc, format!("unexpected `{other}`")).expecting(&["+", "eps"]))
                    }
                };
                let (_, pargs) = targs[1].tagged(&["poly"])?;
                let poly: Vec<Complex64> = pargs.iter().map(parse_complex).collect::<PResult<_>>()?;
                let (_, gargs) = targs[2].tagged(&["gauss"])?;
                arity(&targs[2], gargs, 2, "gauss")?;
                let term = GaussTerm::new(poly, parse_float(&gargs[0])?, parse_float(&gargs[1])?)
                    .map_err(|e| sem(targs[2].loc, e.to_string()))?;
                if eps {
                    minus.push(term);
                } else {
                    plus.push(term);
                }
            }
            Ok(Function::Line(LineFunction::new(GaussianPoly::from_terms(plus), GaussianPoly::from_terms(minus))))
        }
        (h, _) => Err(sem(node.loc, format!("`{h}` function does not match the group of pair {}", pair.name()))),
    }
}

/// A parsed, validated pair, or the report explaining why it is not one.
#[derive(Debug, Clone)]
pub struct PairEntry {
    pub algebra: String,
    pub group: GroupSource,
    pub report: ValidationReport,
    pub pair: Option<Arc<Pair>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GroupSource {
    Finite { elements: Vec<String>, table: Vec<Vec<usize>>, ad: Vec<(usize, RatMatrix)> },
    Line { generator: usize },
}

#[derive(Debug, Clone)]
pub struct ElementEntry {
    pub pair: String,
    pub value: CrossedElement,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RepSource {
    Clifford(Rational),
    CharacterSum,
    Explicit,
}

#[derive(Debug, Clone)]
pub struct RepEntry {
    pub pair: String,
    pub source: RepSource,
    pub rep: MatrixRep,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FamilySource {
    Lambdas(Vec<Rational>),
    Characters,
    Reps(Vec<String>),
}

#[derive(Debug, Clone)]
pub struct FamilyEntry {
    pub pair: String,
    pub source: FamilySource,
    pub members: Vec<MatrixRep>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DefKind {
    Algebra,
    Pair,
    Element,
    Rep,
    Family,
}

/// Named definitions from one or more sources.
#[derive(Debug, Clone, Default)]
pub struct Workspace {
    order: Vec<(DefKind, String)>,
    sites: BTreeMap<String, Loc>,
    pub algebras: BTreeMap<String, Arc<SuperAlgebra>>,
    pub pairs: BTreeMap<String, PairEntry>,
    pub elements: BTreeMap<String, ElementEntry>,
    pub reps: BTreeMap<String, RepEntry>,
    pub families: BTreeMap<String, FamilyEntry>,
}

/// Parses one source into a fresh workspace.
pub fn parse(src: &str) -> Result<Workspace, Diagnostic> {
    let mut ws = Workspace::default();
    ws.load(src)?;
    Ok(ws)
}

impl Workspace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds the definitions of `src`; names must not clash with earlier ones.
    pub fn load(&mut self, src: &str) -> Result<(), Diagnostic> {
        let forms = read(&lex(src)?)?;
        for form in &forms {
            self.define(form)?;
        }
        Ok(())
    }

    /// Like [`Workspace::load`] with the file name attached to diagnostics.
    pub fn load_file(&mut self, path: &std::path::Path) -> Result<(), Error> {
        let src = std::fs::read_to_string(path).map_err(|e| Error::Workspace(format!("{}: {e}", path.display())))?;
        self.load(&src).map_err(|mut d| {
            d.file = Some(path.display().to_string());
            Error::Parse(d)
        })
    }

    fn claim(&mut self, kind: DefKind, name_node: &Node) -> PResult<String> {
        let name = name_node.expect_atom("name")?.to_string();
        if is_numeric_start(&name) {
            return Err(Diagnostic::new(DiagKind::Syntax, name_node.loc, format!("`{name}` is not a valid name")));
        }
        if let Some(prev) = self.sites.get(&name) {
            let mut d = sem(name_node.loc, format!("duplicate definition of `{name}`"));
            d.related = Some(*prev);
            return Err(d);
        }
        self.sites.insert(name.clone(), name_node.loc);
        self.order.push((kind, name.clone()));
        Ok(name)
    }

    fn lookup_pair(&self, node: &Node) -> PResult<(String, Arc<Pair>)> {
        let (_, args) = node.tagged(&["pair"])?;
        arity(node, args, 1, "pair")?;
        let name = args[0].expect_atom("pair name")?;
        let entry = self.pairs.get(name).ok_or_else(|| sem(args[0].loc, format!("unknown pair `{name}`")))?;
        let pair = entry
            .pair
            .clone()
            .ok_or_else(|| sem(args[0].loc, format!("pair `{name}` failed validation:\n{}", entry.report)))?;
        Ok((name.to_string(), pair))
    }

    fn define(&mut self, form: &Node) -> PResult<()> {
        let (head, args) = form.tagged(&["algebra", "pair", "element", "rep", "family"])?;
        let Some(name_node) = args.first() else {
            return Err(Diagnostic::new(DiagKind::Syntax, form.loc, format!("`{head}` needs a name")).expecting(&["name"]));
        };
        let body = &args[1..];
        match head {
            "algebra" => self.define_algebra(name_node, body),
            "pair" => self.define_pair(form, name_node, body),
            "element" => self.define_element(form, name_node, body),
            "rep" => self.define_rep(form, name_node, body),
            _ => self.define_family(form, name_node, body),
        }
    }

    fn define_algebra(&mut self, name_node: &Node, body: &[Node]) -> PResult<()> {
        let name = self.claim(DefKind::Algebra, name_node)?;
        let mut builder = SuperAlgebra::builder(name.clone());
        let mut names: Vec<String> = Vec::new();
        let mut rest = body;
        if let Some(first) = body.first() {
            let (_, basis) = first.tagged(&["basis"])?;
            for b in basis {
                let items = b.expect_list("(name even|odd)")?;
                arity(b, items, 2, "basis entry")?;
                let bn = items[0].expect_atom("basis name")?;
                if names.iter().any(|n| n == bn) {
                    return Err(sem(items[0].loc, format!("duplicate basis element `{bn}`")));
                }
                if is_numeric_start(bn) || bn == "eps" {
                    return Err(Diagnostic::new(DiagKind::Syntax, items[0].loc, format!("`{bn}` is not a valid basis name")));
                }
                builder = match items[1].expect_atom("parity")? {
                    "even" => builder.even(bn),
                    "odd" => builder.odd(bn),
                    other => {
                        return Err(Diagnostic::new(DiagKind::Syntax, items[1].loc, format!("unexpected `{other}`")).expecting(&["even", "odd"]))
                    }
                };
                names.push(bn.to_string());
            }
            rest = &body[1..];
        }
        // parse brackets against a bracket-free copy so names resolve
        let skeleton = builder.clone().build_unchecked().map_err(|e| sem(name_node.loc, e.to_string()))?;
        for br in rest {
            let (_, bargs) = br.tagged(&["bracket"])?;
            arity(br, bargs, 3, "bracket")?;
            let a = basis_index(&skeleton, &bargs[0])?;
            let b = basis_index(&skeleton, &bargs[1])?;
            let v = parse_vector(&skeleton, &bargs[2])?;
            let value: Vec<(&str, Rational)> =
                v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (names[k].as_str(), c.clone())).collect();
            builder = builder.bracket(&names[a], &names[b], &value);
        }
        let alg = builder.build_unchecked().map_err(|e| sem(name_node.loc, e.to_string()))?;
        self.algebras.insert(name, Arc::new(alg));
        Ok(())
    }

    fn define_pair(&mut self, form: &Node, name_node: &Node, body: &[Node]) -> PResult<()> {
        let name = self.claim(DefKind::Pair, name_node)?;
        if body.len() != 2 {
            return Err(Diagnostic::new(DiagKind::Syntax, form.loc, "pair takes (algebra NAME) and a group").expecting(&["finite", "line"]));
        }
        let (_, aargs) = body[0].tagged(&["algebra"])?;
        arity(&body[0], aargs, 1, "algebra")?;
        let alg_name = aargs[0].expect_atom("algebra name")?.to_string();
        let alg = self.algebras.get(&alg_name).cloned().ok_or_else(|| sem(aargs[0].loc, format!("unknown algebra `{alg_name}`")))?;
        let (kind, gargs) = body[1].tagged(&["finite", "line"])?;
        let (source, group) = if kind == "line" {
            arity(&body[1], gargs, 1, "line")?;
            let z = basis_index(&alg, &gargs[0])?;
            if alg.parity(z) != Parity::Even {
                return Err(sem(gargs[0].loc, format!("line generator `{}` must be even", alg.basis_name(z))));
            }
            let l = LineGroup::new(&alg, z).map_err(|e| sem(gargs[0].loc, e.to_string()))?;
            (GroupSource::Line { generator: z }, GroupData::Line(l))
        } else {
            let mut elements: Vec<String> = Vec::new();
            let mut table: Vec<Vec<usize>> = Vec::new();
            let mut ad = Vec::new();
            for part in gargs {
                let (h, pargs) = part.tagged(&["elements", "table", "ad"])?;
                match h {
                    "elements" => {
                        for e in pargs {
                            let en = e.expect_atom("group element")?;
                            if en == "eps" || elements.iter().any(|x| x == en) {
                                return Err(sem(e.loc, format!("invalid or duplicate group element `{en}`")));
                            }
                            elements.push(en.to_string());
                        }
                    }
                    "table" => {
                        for row in pargs {
                            let cells = row.expect_list("table row")?;
                            let r: Vec<usize> = cells
                                .iter()
                                .map(|c| {
                                    let s = c.expect_atom("group element")?;
                                    elements.iter().position(|x| x == s).ok_or_else(|| sem(c.loc, format!("unknown group element `{s}`")))
                                })
                                .collect::<PResult<_>>()?;
                            table.push(r);
                        }
                    }
                    _ => {
                        arity(part, pargs, 2, "ad")?;
                        let gn = pargs[0].expect_atom("group element")?;
                        let gi = elements.iter().position(|x| x == gn).ok_or_else(|| sem(pargs[0].loc, format!("unknown group element `{gn}`")))?;
                        let rows: Vec<Vec<Rational>> = pargs[1]
                            .expect_list("matrix")?
                            .iter()
                            .map(|r| r.expect_list("matrix row")?.iter().map(parse_rat).collect::<PResult<Vec<_>>>())
                            .collect::<PResult<_>>()?;
                        let m = RatMatrix::from_rows(rows).ok_or_else(|| sem(pargs[1].loc, "matrix rows have different lengths"))?;
                        if m.dim() != alg.dim() {
                            return Err(sem(pargs[1].loc, format!("Ad matrix must be {0}x{0}", alg.dim())));
                        }
                        ad.push((gi, m));
                    }
                }
            }
            let g = FiniteGroup::new(elements.clone(), table.clone(), ad.clone(), alg.dim()).map_err(|e| sem(body[1].loc, e.to_string()))?;
            (GroupSource::Finite { elements, table, ad }, GroupData::Finite(g))
        };
        let mut report = validate_superalgebra(&alg);
        report.merge(validate_pair(&group, &alg));
        let pair = if report.is_ok() {
            Some(Arc::new(Pair::new(name.clone(), alg, group).map_err(|e| sem(form.loc, e.to_string()))?))
        } else {
            None
        };
        self.pairs.insert(name, PairEntry { algebra: alg_name, group: source, report, pair });
        Ok(())
    }

    fn define_element(&mut self, _form: &Node, name_node: &Node, body: &[Node]) -> PResult<()> {
        let name = self.claim(DefKind::Element, name_node)?;
        let Some(first) = body.first() else {
            return Err(Diagnostic::new(DiagKind::Syntax, name_node.loc, "element needs (pair NAME)").expecting(&["(pair"]));
        };
        let (pair_name, pair) = self.lookup_pair(first)?;
        let mut value = CrossedElement::zero();
        for t in &body[1..] {
            let (_, targs) = t.tagged(&["tensor"])?;
            arity(t, targs, 2, "tensor")?;
            let d = parse_ue(pair.env(), &targs[0])?;
            let f = parse_function(&pair, &targs[1])?;
            let piece = CrossedElement::tensor(&pair, &d, f).map_err(|e| sem(t.loc, e.to_string()))?;
            value = value.add(&piece).map_err(|e| sem(t.loc, e.to_string()))?;
        }
        self.elements.insert(name, ElementEntry { pair: pair_name, value });
        Ok(())
    }

    fn define_rep(&mut self, form: &Node, name_node: &Node, body: &[Node]) -> PResult<()> {
        let name = self.claim(DefKind::Rep, name_node)?;
        let Some(first) = body.first() else {
            return Err(Diagnostic::new(DiagKind::Syntax, form.loc, "rep needs (pair NAME)").expecting(&["(pair"]));
        };
        let (pair_name, pair) = self.lookup_pair(first)?;
        let parts = &body[1..];
        let (source, rep) = match parts.first().and_then(|p| p.list()).and_then(|l| l.first()).and_then(Node::atom) {
            Some("clifford") => {
                let (_, cargs) = parts[0].tagged(&["clifford"])?;
                arity(&parts[0], cargs, 1, "clifford")?;
                let lambda = parse_rat(&cargs[0])?;
                let rep = repr::clifford_rep(&pair, rational_to_f64(&lambda), name.clone()).map_err(|e| sem(parts[0].loc, e.to_string()))?;
                (RepSource::Clifford(lambda), rep)
            }
            Some("character-sum") => {
                let chars = repr::finite_characters(&pair).map_err(|e| sem(parts[0].loc, e.to_string()))?;
                let rep = repr::direct_sum(name.clone(), &chars).map_err(|e| sem(parts[0].loc, e.to_string()))?;
                (RepSource::CharacterSum, rep)
            }
            _ => (RepSource::Explicit, explicit_rep(&pair, &name, form, parts)?),
        };
        self.reps.insert(name, RepEntry { pair: pair_name, source, rep });
        Ok(())
    }

    fn define_family(&mut self, form: &Node, name_node: &Node, body: &[Node]) -> PResult<()> {
        let name = self.claim(DefKind::Family, name_node)?;
        if body.len() != 2 {
            return Err(Diagnostic::new(DiagKind::Syntax, form.loc, "family takes (pair NAME) and a member list").expecting(&["lambdas", "characters", "reps"]));
        }
        let (pair_name, pair) = self.lookup_pair(&body[0])?;
        let (kind, args) = body[1].tagged(&["lambdas", "characters", "reps"])?;
        let (source, members) = match kind {
            "lambdas" => {
                let lambdas: Vec<Rational> = args.iter().map(parse_rat).collect::<PResult<_>>()?;
                let members = lambdas
                    .iter()
                    .map(|l| repr::clifford_rep(&pair, rational_to_f64(l), format!("{name}[{l}]")))
                    .collect::<crate::Result<Vec<_>>>()
                    .map_err(|e| sem(body[1].loc, e.to_string()))?;
                (FamilySource::Lambdas(lambdas), members)
            }
            "characters" => {
                let members = repr::finite_characters(&pair).map_err(|e| sem(body[1].loc, e.to_string()))?;
                (FamilySource::Characters, members)
            }
            _ => {
                let mut names = Vec::new();
                let mut members = Vec::new();
                for a in args {
                    let rn = a.expect_atom("rep name")?;
                    let entry = self.reps.get(rn).ok_or_else(|| sem(a.loc, format!("unknown rep `{rn}`")))?;
                    if entry.pair != pair_name {
                        return Err(sem(a.loc, format!("rep `{rn}` belongs to pair `{}`, not `{pair_name}`", entry.pair)));
                    }
                    names.push(rn.to_string());
                    members.push(entry.rep.clone());
                }
                (FamilySource::Reps(names), members)
            }
        };
        self.families.insert(name, FamilyEntry { pair: pair_name, source, members });
        Ok(())
    }

    /// The validated pair called `name`.
    pub fn pair(&self, name: &str) -> crate::Result<Arc<Pair>> {
        let entry = self.pairs.get(name).ok_or_else(|| Error::Workspace(format!("unknown pair `{name}`")))?;
        entry.pair.clone().ok_or_else(|| Error::InvalidPair(entry.report.clone()))
    }

    pub fn element(&self, name: &str) -> crate::Result<(Arc<Pair>, &CrossedElement)> {
        let e = self.elements.get(name).ok_or_else(|| Error::Workspace(format!("unknown element `{name}`")))?;
        Ok((self.pair(&e.pair)?, &e.value))
    }

    pub fn rep(&self, name: &str) -> crate::Result<(Arc<Pair>, &MatrixRep)> {
        let r = self.reps.get(name).ok_or_else(|| Error::Workspace(format!("unknown rep `{name}`")))?;
        Ok((self.pair(&r.pair)?, &r.rep))
    }

    pub fn family(&self, name: &str) -> crate::Result<(Arc<Pair>, &[MatrixRep])> {
        let f = self.families.get(name).ok_or_else(|| Error::Workspace(format!("unknown family `{name}`")))?;
        Ok((self.pair(&f.pair)?, &f.members))
    }

    /// Canonical source text; parsing it reproduces this workspace.
    pub fn print(&self) -> String {
        let mut out = String::new();
        for (kind, name) in &self.order {
            let text = match kind {
                DefKind::Algebra => print_algebra(&self.algebras[name]),
                DefKind::Pair => self.print_pair(name),
                DefKind::Element => self.print_element(name),
                DefKind::Rep => self.print_rep(name),
                DefKind::Family => self.print_family(name),
            };
            out.push_str(&text);
            out.push('\n');
        }
        out
    }

    fn print_pair(&self, name: &str) -> String {
        let e = &self.pairs[name];
        let alg = &self.algebras[&e.algebra];
        let group = match &e.group {
            GroupSource::Line { generator } => format!("(line {})", alg.basis_name(*generator)),
            GroupSource::Finite { elements, table, ad } => {
                let rows: Vec<String> =
                    table.iter().map(|r| format!("({})", r.iter().map(|&k| elements[k].as_str()).collect::<Vec<_>>().join(" "))).collect();
                let mut s = format!("(finite (elements {}) (table {})", elements.join(" "), rows.join(" "));
                for (g, m) in ad {
                    let mrows: Vec<String> =
                        m.rows().iter().map(|r| format!("({})", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))).collect();
                    s.push_str(&format!(" (ad {} ({}))", elements[*g], mrows.join(" ")));
                }
                s.push(')');
                s
            }
        };
        format!("(pair {name} (algebra {}) {group})", e.algebra)
    }

    fn print_element(&self, name: &str) -> String {
        let e = &self.elements[name];
        let pair = self.pairs[&e.pair].pair.as_ref().expect("elements refer to valid pairs");
        let mut s = format!("(element {name} (pair {})", e.pair);
        for (m, f) in e.value.terms() {
            let letters: Vec<&str> = m.letters().iter().map(|&k| pair.algebra().basis_name(k)).collect();
            let d = if letters.is_empty() { "1".to_string() } else { format!("(* {})", letters.join(" ")) };
            s.push_str(&format!(" (tensor {d} {})", print_function(pair.group(), f)));
        }
        s.push(')');
        s
    }

    fn print_rep(&self, name: &str) -> String {
        let e = &self.reps[name];
        let body = match &e.source {
            RepSource::Clifford(l) => format!("(clifford {l})"),
            RepSource::CharacterSum => "(character-sum)".to_string(),
            RepSource::Explicit => {
                let pair = self.pairs[&e.pair].pair.as_ref().expect("reps refer to valid pairs");
                print_explicit_rep(pair, &e.rep)
            }
        };
        format!("(rep {name} (pair {}) {body})", e.pair)
    }

    fn print_family(&self, name: &str) -> String {
        let e = &self.families[name];
        let body = match &e.source {
            FamilySource::Lambdas(ls) => format!("(lambdas {})", ls.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")),
            FamilySource::Characters => "(characters)".to_string(),
            FamilySource::Reps(rs) => format!("(reps {})", rs.join(" ")),
        };
        format!("(family {name} (pair {}) {body})", e.pair)
    }
}

/// Parses a `U(g_C)` expression, such as `(* x z)`, in normal form.
pub fn parse_ue_expr(env: &Enveloping, src: &str) -> crate::Result<UEElement> {
    let forms = read(&lex(&format!("(+ {src})")).map_err(Error::Parse)?).map_err(Error::Parse)?;
    parse_ue(env, &forms[0]).map_err(Error::Parse)
}

fn explicit_rep(pair: &Pair, name: &str, form: &Node, parts: &[Node]) -> PResult<MatrixRep> {
    let alg = pair.algebra();
    let mut lambda: Option<f64> = None;
    let mut grading: Option<Vec<GaussianRational>> = None;
    let mut pis: BTreeMap<usize, (Loc, QMat)> = BTreeMap::new();
    let mut rho_exact: BTreeMap<usize, QMat> = BTreeMap::new();
    let mut rho_float: BTreeMap<usize, CMat> = BTreeMap::new();
    for p in parts {
        let (h, args) = p.tagged(&["lambda", "grading", "pi", "rho"])?;
        match h {
            "lambda" => {
                arity(p, args, 1, "lambda")?;
                lambda = Some(parse_float(&args[0])?);
            }
            "grading" => grading = Some(args.iter().map(parse_coef).collect::<PResult<_>>()?),
            "pi" => {
                arity(p, args, 2, "pi")?;
                let g = pair.group().as_finite().ok_or_else(|| sem(p.loc, "pi matrices are given for finite groups only"))?;
                let gn = args[0].expect_atom("group element")?;
                let gi = g.index_of(gn).ok_or_else(|| sem(args[0].loc, format!("unknown group element `{gn}`")))?;
                pis.insert(gi, (p.loc, exact_matrix(&args[1])?));
            }
            _ => {
                arity(p, args, 2, "rho")?;
                let x = basis_index(alg, &args[0])?;
                if pair.is_line() {
                    rho_float.insert(x, float_matrix(&args[1])?);
                } else {
                    rho_exact.insert(x, exact_matrix(&args[1])?);
                }
            }
        }
    }
    let grading = grading.ok_or_else(|| Diagnostic::new(DiagKind::Syntax, form.loc, "explicit rep needs (grading ...)").expecting(&["grading"]))?;
    let dim = grading.len();
    let grading = QMat::diag(&grading);
    let data = match pair.group() {
        GroupData::Finite(g) => {
            let mut pi = Vec::new();
            for k in 0..g.order() {
                match pis.remove(&k) {
                    Some((_, m)) => pi.push(m),
                    None if k == g.identity() => pi.push(QMat::identity(dim)),
                    None => return Err(sem(form.loc, format!("missing (pi {} ...)", g.names()[k]))),
                }
            }
            let rho = (0..alg.dim()).map(|x| rho_exact.remove(&x).unwrap_or_else(|| QMat::zeros(dim, dim))).collect();
            RepData::Finite { pi, rho }
        }
        GroupData::Line(l) => {
            let lambda = lambda.ok_or_else(|| Diagnostic::new(DiagKind::Syntax, form.loc, "line rep needs (lambda ...)").expecting(&["lambda"]))?;
            let rho = (0..alg.dim())
                .map(|x| {
                    rho_float.remove(&x).unwrap_or_else(|| {
                        if x == l.generator() {
                            CMat::identity(dim).scale(&Complex64::new(0.0, lambda))
                        } else {
                            CMat::zeros(dim, dim)
                        }
                    })
                })
                .collect();
            RepData::Line { lambda, rho }
        }
    };
    Ok(MatrixRep { name: name.to_string(), dim, grading, data })
}

fn exact_matrix(node: &Node) -> PResult<QMat> {
    let rows: Vec<Vec<GaussianRational>> = node
        .expect_list("matrix")?
        .iter()
        .map(|r| r.expect_list("matrix row")?.iter().map(parse_coef).collect::<PResult<Vec<_>>>())
        .collect::<PResult<_>>()?;
    QMat::from_rows(rows).ok_or_else(|| sem(node.loc, "matrix rows have different lengths"))
}

fn float_matrix(node: &Node) -> PResult<CMat> {
    let rows: Vec<Vec<Complex64>> = node
        .expect_list("matrix")?
        .iter()
        .map(|r| r.expect_list("matrix row")?.iter().map(parse_complex).collect::<PResult<Vec<_>>>())
        .collect::<PResult<_>>()?;
    CMat::from_rows(rows).ok_or_else(|| sem(node.loc, "matrix rows have different lengths"))
}

/// A coefficient in source notation.
pub fn print_coef(c: &GaussianRational) -> String {
    if c.im.is_zero() {
        c.re.to_string()
    } else if c.re.is_zero() {
        format!("{}i", c.im)
    } else {
        format!("(c {} {})", c.re, c.im)
    }
}

fn print_float(x: f64) -> String {
    format!("{:?}", if x == 0.0 { 0.0 } else { x })
}

fn print_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        print_float(z.re)
    } else {
        format!("(c {} {})", print_float(z.re), print_float(z.im))
    }
}

/// An element of `U(g_C)` in source notation.
pub fn print_ue(alg: &SuperAlgebra, d: &UEElement) -> String {
    let terms: Vec<String> = d
        .terms()
        .map(|(m, c)| {
            let mut parts = if c.is_one() { Vec::new() } else { vec![print_coef(c)] };
            parts.extend(m.letters().iter().map(|&k| alg.basis_name(k).to_string()));
            match parts.len() {
                0 => "1".to_string(),
                1 => parts.remove(0),
                _ => format!("(* {})", parts.join(" ")),
            }
        })
        .collect();
    match terms.len() {
        0 => "0".to_string(),
        1 => terms[0].clone(),
        _ => format!("(+ {})", terms.join(" ")),
    }
}

/// A function literal in source notation.
pub fn print_function(group: &GroupData, f: &Function) -> String {
    match (f, group) {
        (Function::Finite(v), GroupData::Finite(g)) => {
            let mut s = "(finite".to_string();
            for (i, c) in v.values().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let name = &g.names()[i % g.order()];
                let point = if i >= g.order() { format!("({name} eps)") } else { name.clone() };
                s.push_str(&format!(" ({point} {})", print_coef(c)));
            }
            s.push(')');
            s
        }
        (Function::Line(l), _) => {
            let mut s = "(line".to_string();
            for (tag, part) in [("+", &l.plus), ("eps", &l.minus)] {
                for t in part.terms() {
                    let poly: Vec<String> = t.poly.iter().map(|z| print_complex(*z)).collect();
                    s.push_str(&format!(" (term {tag} (poly {}) (gauss {} {}))", poly.join(" "), print_float(t.rate), print_float(t.shift)));
                }
            }
            s.push(')');
            s
        }
        _ => panic!("function does not match group"),
    }
}

fn print_vector(alg: &SuperAlgebra, v: &[Rational]) -> String {
    let parts: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| if c.is_one() { alg.basis_name(k).to_string() } else { format!("(* {c} {})", alg.basis_name(k)) })
        .collect();
    match parts.len() {
        0 => "0".to_string(),
        1 => parts[0].clone(),
        _ => format!("(+ {})", parts.join(" ")),
    }
}

/// An algebra definition in source notation.
pub fn print_algebra(alg: &SuperAlgebra) -> String {
    let basis: Vec<String> = (0..alg.dim())
        .map(|k| format!("({} {})", alg.basis_name(k), if alg.parity(k).is_odd() { "odd" } else { "even" }))
        .collect();
    let mut s = format!("(algebra {} (basis {})", alg.name(), basis.join(" "));
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let v = alg.structure(i, j);
            let show = if i <= j {
                v.iter().any(|c| !c.is_zero())
            } else {
                let sign = -koszul_sign(alg.parity(j), alg.parity(i));
                v.iter().zip(alg.structure(j, i)).any(|(a, b)| *a != b * &sign)
            };
            if show {
                s.push_str(&format!(" (bracket {} {} {})", alg.basis_name(i), alg.basis_name(j), print_vector(alg, v)));
            }
        }
    }
    s.push(')');
    s
}

fn print_explicit_rep(pair: &Pair, r: &MatrixRep) -> String {
    let alg = pair.algebra();
    let qmat = |m: &QMat| {
        let rows: Vec<String> = m.row_vecs().iter().map(|r| format!("({})", r.iter().map(print_coef).collect::<Vec<_>>().join(" "))).collect();
        format!("({})", rows.join(" "))
    };
    let cmat = |m: &CMat| {
        let rows: Vec<String> =
            m.row_vecs().iter().map(|r| format!("({})", r.iter().map(|z| print_complex(*z)).collect::<Vec<_>>().join(" "))).collect();
        format!("({})", rows.join(" "))
    };
    let grading: Vec<String> = (0..r.dim).map(|k| print_coef(r.grading.get(k, k))).collect();
    let mut s = String::new();
    if let RepData::Line { lambda, .. } = &r.data {
        s.push_str(&format!("(lambda {}) ", print_float(*lambda)));
    }
    s.push_str(&format!("(grading {})", grading.join(" ")));
    match (&r.data, pair.group()) {
        (RepData::Finite { pi, rho }, GroupData::Finite(g)) => {
            for (k, m) in pi.iter().enumerate() {
                s.push_str(&format!(" (pi {} {})", g.names()[k], qmat(m)));
            }
            for (x, m) in rho.iter().enumerate() {
                s.push_str(&format!(" (rho {} {})", alg.basis_name(x), qmat(m)));
            }
        }
        (RepData::Line { rho, .. }, _) => {
            for (x, m) in rho.iter().enumerate() {
                s.push_str(&format!(" (rho {} {})", alg.basis_name(x), cmat(m)));
            }
        }
        _ => {}
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const HC: &str = "
        (algebra hc1 (basis (z even) (x odd)) (bracket x x z))
        (pair hc (algebra hc1) (line z))
        (element a1 (pair hc) (tensor x (line (term + (poly 1) (gauss 1 0)))))
        (rep r2 (pair hc) (clifford 2))
    ";

    #[test]
    fn hc_parses() {
        let ws = parse(HC).unwrap();
        assert!(ws.pairs["hc"].report.is_ok());
        assert_eq!(ws.elements["a1"].value.len(), 1);
        assert_eq!(ws.reps["r2"].rep.dim, 2);
    }

    #[test]
    fn duplicate_names_both_sites() {
        let err = parse("(algebra a (basis (x odd)))\n(algebra a (basis (y odd)))").unwrap_err();
        assert_eq!(err.kind, DiagKind::Semantic);
        assert_eq!(err.loc, Loc { line: 2, col: 10 });
        assert_eq!(err.related, Some(Loc { line: 1, col: 10 }));
    }

    #[test]
    fn zero_denominator_is_lexical() {
        let err = parse("(algebra a (basis (x odd)) (bracket x x (* 1/0 x)))").unwrap_err();
        assert_eq!(err.kind, DiagKind::Lexical);
        assert_eq!(err.loc.col, 44);
    }

    #[test]
    fn unclosed_list_expects_close() {
        let err = parse("(algebra a (basis (x odd))").unwrap_err();
        assert_eq!(err.kind, DiagKind::Syntax);
        assert_eq!(err.expected, vec![")".to_string()]);
    }

    #[test]
    fn unknown_head_lists_alternatives() {
        let err = parse("(algebr a)").unwrap_err();
        assert!(err.expected.contains(&"algebra".to_string()));
    }

    #[test]
    fn print_parse_roundtrip() {
        let src = format!(
            "{HC}
            (algebra o1 (basis (x odd)))
            (pair z2 (algebra o1) (finite (elements e s) (table (e s) (s e)) (ad s ((-1)))))
            (element b (pair z2) (tensor (+ 1 (* 1/2i x)) (finite (e 1) ((s eps) (c 1 -2)))))
            (rep reg (pair z2) (character-sum))
            (rep ex (pair z2) (grading 1 -1) (pi s ((1 0) (0 -1))))
            (family ch (pair z2) (characters))
            (family grid (pair hc) (lambdas 1/4 2))"
        );
        let ws = parse(&src).unwrap();
        let printed = ws.print();
        let again = parse(&printed).unwrap();
        assert_eq!(again.print(), printed);
        assert_eq!(again.elements["b"].value, ws.elements["b"].value);
    }
}
