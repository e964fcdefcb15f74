//! Deterministic JSON: sorted keys, floats rounded to 15 significant digits, complex numbers as `[re, im]`.

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::algebra::SuperAlgebra;
use crate::crossed::CrossedElement;
use crate::dsl::{print_coef, print_function, print_ue};
use crate::enveloping::UEElement;
use crate::group::Pair;
use crate::linalg::{CMat, QMat};
use crate::report::ValidationReport;
use crate::repr::{Bound, RepImage};

pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::String(format!("{x}"));
    }
    let rounded: f64 = format!("{x:.14e}").parse().expect("formatted float parses");
    let rounded = if rounded == 0.0 { 0.0 } else { rounded };
    serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
}

pub fn complex(z: Complex64) -> Value {
    Value::Array(vec![num(z.re), num(z.im)])
}

pub fn cmat(m: &CMat) -> Value {
    Value::Array(m.row_vecs().into_iter().map(|r| Value::Array(r.into_iter().map(complex).collect())).collect())
}

pub fn qmat_exact(m: &QMat) -> Value {
    Value::Array(m.row_vecs().iter().map(|r| Value::Array(r.iter().map(|c| Value::String(print_coef(c))).collect())).collect())
}

pub fn image(m: &RepImage) -> Value {
    let mut o = Map::new();
    o.insert("matrix".into(), cmat(&m.to_complex()));
    o.insert("op_norm".into(), num(m.op_norm()));
    if let RepImage::Exact(q) = m {
        o.insert("exact".into(), qmat_exact(q));
    }
    Value::Object(o)
}

pub fn report(r: &ValidationReport) -> Value {
    json!({
        "ok": r.is_ok(),
        "checks": r.checks.iter().map(|c| json!({"name": c.name, "passed": c.passed})).collect::<Vec<_>>(),
        "violations": r.violations.iter().map(|v| json!({"rule": v.rule, "witness": v.witness})).collect::<Vec<_>>(),
    })
}

pub fn ue(alg: &SuperAlgebra, d: &UEElement) -> Value {
    let terms: Vec<Value> = d
        .terms()
        .map(|(m, c)| {
            json!({
                "monomial": m.letters().iter().map(|&k| alg.basis_name(k)).collect::<Vec<_>>(),
                "coeff": print_coef(c),
            })
        })
        .collect();
    json!({"text": print_ue(alg, d), "terms": terms})
}

pub fn element(pair: &Pair, a: &CrossedElement) -> Value {
    let alg = pair.algebra();
    let terms: Vec<Value> = a
        .terms()
        .map(|(m, f)| {
            json!({
                "monomial": m.letters().iter().map(|&k| alg.basis_name(k)).collect::<Vec<_>>(),
                "function": print_function(pair.group(), f),
            })
        })
        .collect();
    json!({"pair": pair.name(), "terms": terms})
}

pub fn bound(pair: &Pair, b: &Bound) -> Value {
    let alg = pair.algebra();
    let terms: Vec<Value> = b
        .terms
        .iter()
        .map(|t| {
            json!({
                "monomial": t.monomial.letters().iter().map(|&k| alg.basis_name(k)).collect::<Vec<_>>(),
                "value": num(t.value),
                "forced_zero": t.forced_zero,
            })
        })
        .collect();
    json!({"upper": num(b.upper), "terms": terms})
}

/// Pretty-printed with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}
