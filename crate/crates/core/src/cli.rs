//! Command-line front end: loads a workspace, dispatches one command, emits JSON.
//!
//! Exit codes: 0 when the command's check passes, 1 on a validation failure, 2 on usage errors.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::algebra::{is_nilpotent, is_odd_generated, validate_superalgebra, SuperAlgebra};
use crate::crossed::{self, CrossedElement};
use crate::dsl::{parse_ue_expr, Workspace};
use crate::enveloping::{Enveloping, Strategy};
use crate::error::Error;
use crate::function::Function;
use crate::group::{GroupData, Pair};
use crate::json;
use crate::repr::{self, RepVector, ValidatedRep};
use crate::scalar::GaussianRational;

#[derive(Debug, Parser)]
#[command(name = "supercrossed", version, about = "Crossed products of Harish-Chandra pairs and their representations")]
pub struct Cli {
    /// Definition file; repeatable. Without any, the built-in catalog is loaded.
    #[arg(long = "file", global = true)]
    pub files: Vec<PathBuf>,
    /// Write JSON here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Tolerance for floating-point comparisons.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    /// Seed for randomized inputs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ValidateTarget {
    #[arg(long)]
    pub algebra: Option<String>,
    #[arg(long)]
    pub pair: Option<String>,
    #[arg(long)]
    pub rep: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate an algebra, a pair or a representation.
    Validate(ValidateTarget),
    /// PBW normal form of an expression in U(g_C).
    Nf {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        expr: String,
    },
    /// The anti-linear anti-automorphism dagger.
    Dagger {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        expr: String,
    },
    /// Product of two crossed-product elements.
    XpMul {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Involution of a crossed-product element.
    XpStar {
        #[arg(long)]
        elem: String,
    },
    /// Compare the integral of g -> f(g) alpha_g(D) (x) L_g h with (1(x)f)(D(x)h).
    GammaCheck {
        /// Element of the form 1 (x) f.
        #[arg(long)]
        f: String,
        /// Expression in U(g_C).
        #[arg(long)]
        d: String,
        /// Element of the form 1 (x) h.
        #[arg(long)]
        h: String,
    },
    /// Check the representation axioms.
    RepCheck {
        #[arg(long)]
        rep: String,
    },
    /// The operator rho(D) pi(f) summed over the element's terms.
    Hat {
        #[arg(long)]
        rep: String,
        #[arg(long)]
        elem: String,
    },
    /// Certified operator-norm bound valid in every representation.
    Bound {
        #[arg(long)]
        elem: String,
    },
    /// Interval [family maximum, certified bound] for the C*-seminorm.
    Seminorm {
        #[arg(long)]
        elem: String,
        #[arg(long)]
        family: String,
    },
    /// Reconstruct pi and rho from the crossed-product representation.
    Roundtrip {
        #[arg(long)]
        rep: String,
        #[arg(long, required = true)]
        probe: Vec<String>,
    },
    /// Finite-rank images and structural hypotheses over a family.
    CcrReport {
        #[arg(long)]
        family: String,
        #[arg(long, required = true)]
        elem: Vec<String>,
    },
    /// Finite-difference derivative of the orbit t -> lambda_{exp(tx)}(a).
    OrbitDeriv {
        #[arg(long)]
        elem: String,
        #[arg(long)]
        x: String,
        #[arg(long, default_value_t = 1e-3)]
        h: f64,
        /// Also check the Taylor remainder of the orbit in every member of this family.
        #[arg(long)]
        family: Option<String>,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn usage(msg: impl Into<String>) -> Outcome {
    Outcome { code: 2, stdout: String::new(), stderr: msg.into() }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { Outcome { code, stdout: text, stderr: String::new() } } else { usage(text) };
        }
    };
    execute(&cli)
}

/// Runs an already parsed command line.
pub fn execute(cli: &Cli) -> Outcome {
    let ws = if cli.files.is_empty() {
        match crate::catalog::workspace() {
            Ok(ws) => ws,
            Err(d) => return usage(d.to_string()),
        }
    } else {
        let mut ws = Workspace::new();
        for f in &cli.files {
            if let Err(e) = ws.load_file(f) {
                return usage(e.to_string());
            }
        }
        ws
    };
    let (value, passed) = match dispatch(cli, &ws) {
        Ok(v) => v,
        Err(e @ (Error::Workspace(_) | Error::Parse(_))) => return usage(e.to_string()),
        Err(e) => {
            let v = json!({"ok": false, "error": e.to_string()});
            return Outcome { code: 1, stdout: json::render(&v), stderr: e.to_string() };
        }
    };
    let text = json::render(&value);
    let code = if passed { 0 } else { 1 };
    match &cli.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
            Err(e) => usage(format!("{}: {e}", path.display())),
        },
        None => Outcome { code, stdout: text, stderr: String::new() },
    }
}

fn algebra(ws: &Workspace, name: &str) -> Result<Arc<SuperAlgebra>, Error> {
    ws.algebras.get(name).cloned().ok_or_else(|| Error::Workspace(format!("unknown algebra `{name}`")))
}

fn valid_env(ws: &Workspace, name: &str) -> Result<Enveloping, Error> {
    let alg = algebra(ws, name)?;
    let report = validate_superalgebra(&alg);
    if !report.is_ok() {
        return Err(Error::InvalidAlgebra(report));
    }
    Ok(Enveloping::new(alg))
}

fn same_pair(a: &Arc<Pair>, b: &Arc<Pair>) -> Result<(), Error> {
    if a.name() != b.name() {
        return Err(Error::Workspace(format!("elements live on different pairs `{}` and `{}`", a.name(), b.name())));
    }
    Ok(())
}

fn validated(pair: &Pair, reps: &[repr::MatrixRep]) -> Result<Vec<ValidatedRep>, Error> {
    reps.iter().map(|r| ValidatedRep::new(pair, r.clone())).collect()
}

fn unit_function(a: &CrossedElement, pair: &Pair, what: &str) -> Result<Function, Error> {
    let mut out = Function::zero_for(pair.group());
    for (m, f) in a.terms() {
        if m.degree() != 0 {
            return Err(Error::Workspace(format!("`{what}` must be of the form 1 (x) f")));
        }
        out = out.add(f)?;
    }
    Ok(out)
}

const TAYLOR_STEPS: [f64; 3] = [1e-1, 1e-2, 1e-3];

fn line_samples() -> Vec<f64> {
    (-40..=40).map(|k| k as f64 * 0.125).collect()
}

fn dispatch(cli: &Cli, ws: &Workspace) -> Result<(Value, bool), Error> {
    match &cli.command {
        Command::Validate(t) => {
            if let Some(name) = &t.algebra {
                let alg = algebra(ws, name)?;
                let r = validate_superalgebra(&alg);
                let nil = is_nilpotent(&alg);
                let mut v = json::report(&r);
                v["kind"] = json!("algebra");
                v["name"] = json!(name);
                v["nilpotent"] = json!(nil.nilpotent);
                v["odd_generated"] = json!(is_odd_generated(&alg));
                Ok((v, r.is_ok()))
            } else if let Some(name) = &t.pair {
                let entry = ws.pairs.get(name).ok_or_else(|| Error::Workspace(format!("unknown pair `{name}`")))?;
                let mut v = json::report(&entry.report);
                v["kind"] = json!("pair");
                v["name"] = json!(name);
                v["algebra"] = json!(entry.algebra);
                v["group"] = json!(match entry.group {
                    crate::dsl::GroupSource::Line { .. } => "line",
                    crate::dsl::GroupSource::Finite { .. } => "finite",
                });
                Ok((v, entry.report.is_ok()))
            } else {
                rep_check(ws, t.rep.as_deref().expect("clap requires one target"))
            }
        }
        Command::Nf { algebra: a, expr } => {
            let env = valid_env(ws, a)?;
            let d = parse_ue_expr(&env, expr)?;
            let confluent = d.terms().all(|(m, c)| {
                let left = env.normal_form_with(m.letters(), c, Strategy::LeftmostOddSquareFirst);
                let right = env.normal_form_with(m.letters(), c, Strategy::RightmostTranspositionFirst);
                matches!((left, right), (Ok(l), Ok(r)) if l == r)
            });
            Ok((json!({"algebra": a, "input": expr, "normal_form": json::ue(env.algebra(), &d), "confluent": confluent}), true))
        }
        Command::Dagger { algebra: a, expr } => {
            let env = valid_env(ws, a)?;
            let d = parse_ue_expr(&env, expr)?;
            let dd = env.dagger(&d);
            let involutive = env.dagger(&dd) == d;
            Ok((json!({"algebra": a, "input": json::ue(env.algebra(), &d), "dagger": json::ue(env.algebra(), &dd), "involutive": involutive}), involutive))
        }
        Command::XpMul { a, b } => {
            let (pa, ea) = ws.element(a)?;
            let (pb, eb) = ws.element(b)?;
            same_pair(&pa, &pb)?;
            let prod = crossed::xp_multiply(&pa, ea, eb)?;
            Ok((json!({"a": a, "b": b, "product": json::element(&pa, &prod)}), true))
        }
        Command::XpStar { elem } => {
            let (p, e) = ws.element(elem)?;
            let s = crossed::xp_star(&p, e)?;
            let ss = crossed::xp_star(&p, &s)?;
            let involutive = match p.group() {
                GroupData::Finite(_) => &ss == e,
                GroupData::Line(_) => ss.max_line_difference(e, &line_samples()) <= cli.tol * (1.0 + e.max_line_value(&line_samples())),
            };
            Ok((json!({"elem": elem, "star": json::element(&p, &s), "involutive": involutive}), involutive))
        }
        Command::GammaCheck { f, d, h } => {
            let (pf, ef) = ws.element(f)?;
            let (ph, eh) = ws.element(h)?;
            same_pair(&pf, &ph)?;
            let fun_f = unit_function(ef, &pf, f)?;
            let fun_h = unit_function(eh, &pf, h)?;
            let dd = parse_ue_expr(pf.env(), d)?;
            let gamma = crossed::gamma_integral(&pf, &fun_f, &dd, &fun_h)?;
            let rhs = crossed::xp_multiply(&pf, ef, &CrossedElement::tensor(&pf, &dd, fun_h)?)?;
            let (residual, agree) = match pf.group() {
                GroupData::Finite(_) => (0.0, gamma == rhs),
                GroupData::Line(_) => {
                    let r = gamma.max_line_difference(&rhs, &line_samples());
                    (r, r <= cli.tol * (1.0 + rhs.max_line_value(&line_samples())))
                }
            };
            let mut v = json!({"gamma": json::element(&pf, &gamma), "product": json::element(&pf, &rhs), "agree": agree});
            v["residual"] = json::num(residual);
            Ok((v, agree))
        }
        Command::RepCheck { rep } => rep_check(ws, rep),
        Command::Hat { rep, elem } => {
            let (pr, r) = ws.rep(rep)?;
            let (pe, e) = ws.element(elem)?;
            same_pair(&pr, &pe)?;
            let vr = ValidatedRep::new(&pr, r.clone())?;
            let img = repr::rep_hat(&pr, &vr, e)?;
            Ok((json!({"rep": rep, "elem": elem, "image": json::image(&img)}), true))
        }
        Command::Bound { elem } => {
            let (p, e) = ws.element(elem)?;
            let b = repr::norm_bound(&p, e)?;
            let mut v = json::bound(&p, &b);
            v["elem"] = json!(elem);
            Ok((v, true))
        }
        Command::Seminorm { elem, family } => {
            let (p, e) = ws.element(elem)?;
            let (pf, members) = ws.family(family)?;
            same_pair(&p, &pf)?;
            let fam = validated(&p, members)?;
            let s = repr::seminorm_interval(&p, e, &fam)?;
            let mut per = Map::new();
            for (n, x) in &s.per_rep {
                per.insert(n.clone(), json::num(*x));
            }
            Ok((
                json!({
                    "elem": elem,
                    "family": family,
                    "lower": json::num(s.lower),
                    "upper": json::num(s.upper),
                    "kernel_flag": s.kernel_flag,
                    "empty_family": s.empty_family,
                    "per_rep": per,
                }),
                true,
            ))
        }
        Command::Roundtrip { rep, probe } => {
            let (p, r) = ws.rep(rep)?;
            let vr = ValidatedRep::new(&p, r.clone())?;
            let mut probes = Vec::new();
            for name in probe {
                let (pp, e) = ws.element(name)?;
                same_pair(&p, &pp)?;
                probes.push(e.clone());
            }
            let vectors = probe_vectors(r.dim, r.is_line(), cli.seed);
            let rt = repr::roundtrip(&p, &vr, &probes, &vectors, cli.tol)?;
            let entries: Vec<Value> = rt
                .entries
                .iter()
                .map(|e| json!({"target": e.target, "max_residual": json::num(e.max_residual), "exact": e.exact, "passed": e.passed}))
                .collect();
            Ok((json!({"rep": rep, "entries": entries, "span_rank": rt.span_rank, "dim": rt.dim, "passed": rt.passed()}), rt.passed()))
        }
        Command::CcrReport { family, elem } => {
            let (p, members) = ws.family(family)?;
            let fam = validated(&p, members)?;
            let mut gens = Vec::new();
            for name in elem {
                let (pp, e) = ws.element(name)?;
                same_pair(&p, &pp)?;
                gens.push(e.clone());
            }
            let c = repr::ccr_report(&p, &fam, &gens)?;
            let reps: Vec<Value> = c
                .reps
                .iter()
                .map(|e| json!({"name": e.name, "dim": e.dim, "image_rank": e.image_rank, "compact": e.compact}))
                .collect();
            Ok((json!({"family": family, "reps": reps, "nilpotent": c.nilpotent, "odd_generated": c.odd_generated}), true))
        }
        Command::OrbitDeriv { elem, x, h, family } => {
            let (p, e) = ws.element(elem)?;
            let xi = p.algebra().index_of(x).ok_or_else(|| Error::Workspace(format!("unknown basis element `{x}`")))?;
            let r = crossed::orbit_derivative_check(&p, xi, e, *h)?;
            let mut passed = r.residual <= r.taylor_bound;
            let mut v = json!({"elem": elem, "x": x, "h": json::num(*h), "residual": json::num(r.residual), "taylor_bound": json::num(r.taylor_bound)});
            if let Some(fam_name) = family {
                let (pf, members) = ws.family(fam_name)?;
                same_pair(&p, &pf)?;
                let fam = validated(&p, members)?;
                let t = repr::taylor_norm_check(&p, &fam, xi, e, &TAYLOR_STEPS)?;
                let decay = t.ratios.iter().all(|q| (0.05..=0.15).contains(q));
                let within = t.rows.iter().all(|row| row.passed);
                passed &= decay && within;
                let rows: Vec<Value> = t
                    .rows
                    .iter()
                    .map(|row| json!({"t": json::num(row.t), "family_max": json::num(row.family_max), "bound": json::num(row.bound), "passed": row.passed}))
                    .collect();
                v["taylor"] = json!({
                    "family": fam_name,
                    "m": json::num(t.m),
                    "rows": rows,
                    "ratios": t.ratios.iter().map(|q| json::num(*q)).collect::<Vec<_>>(),
                    "first_order": decay,
                });
            }
            v["passed"] = json!(passed);
            Ok((v, passed))
        }
    }
}

fn rep_check(ws: &Workspace, name: &str) -> Result<(Value, bool), Error> {
    let (p, r) = ws.rep(name)?;
    let report = repr::validate_rep(&p, r)?;
    let mut v = json::report(&report);
    v["kind"] = json!("rep");
    v["name"] = json!(name);
    v["dim"] = json!(r.dim);
    Ok((v, report.is_ok()))
}

/// Standard basis vectors followed by two seeded random vectors with small integer entries.
pub fn probe_vectors(dim: usize, line: bool, seed: u64) -> Vec<RepVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut raw: Vec<Vec<GaussianRational>> = (0..dim)
        .map(|k| (0..dim).map(|j| if j == k { GaussianRational::one() } else { GaussianRational::zero() }).collect())
        .collect();
    for _ in 0..2 {
        raw.push((0..dim).map(|_| GaussianRational::from_int(rng.gen_range(-3..=3)) + GaussianRational::i() * GaussianRational::from_int(rng.gen_range(-3..=3))).collect());
    }
    for v in raw {
        out.push(if line { RepVector::Approx(v.iter().map(GaussianRational::to_complex).collect::<Vec<Complex64>>()) } else { RepVector::Exact(v) });
    }
    out
}
