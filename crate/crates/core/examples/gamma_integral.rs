//! The integral of g -> f(g) alpha_g(D) (x) L_g h equals the product (1 (x) f)(D (x) h).

use supercrossed::catalog;
use supercrossed::crossed::{gamma_integral, xp_multiply, CrossedElement};
use supercrossed::dsl::parse_ue_expr;
use supercrossed::function::Function;

fn unit_part(a: &CrossedElement) -> Function {
    a.terms().next().map(|(_, f)| f.clone()).expect("nonzero element")
}

fn main() -> supercrossed::Result<()> {
    let ws = catalog::workspace().map_err(supercrossed::Error::Parse)?;
    let (pair, probe) = ws.element("probe-eps")?;
    let (_, a0) = ws.element("a0")?;
    let (f, h) = (unit_part(probe), unit_part(a0));
    let d = parse_ue_expr(pair.env(), "(+ 1 x)")?;

    let gamma = gamma_integral(&pair, &f, &d, &h)?;
    let product = xp_multiply(&pair, probe, &CrossedElement::tensor(&pair, &d, h)?)?;
    let samples: Vec<f64> = (-20..=20).map(|k| k as f64 * 0.25).collect();
    println!("terms: {}", gamma.len());
    println!("max difference on samples: {:e}", gamma.max_line_difference(&product, &samples));
    Ok(())
}
