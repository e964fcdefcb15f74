//! PBW normal forms in U(g_C), computed with both rewriting strategies.

use std::sync::Arc;

use supercrossed::catalog;
use supercrossed::dsl::{parse_ue_expr, print_ue};
use supercrossed::enveloping::{Enveloping, Strategy};
use supercrossed::scalar::GaussianRational;

fn main() -> supercrossed::Result<()> {
    let ws = catalog::workspace().map_err(supercrossed::Error::Parse)?;
    let alg = Arc::clone(&ws.algebras["hc2"]);
    let env = Enveloping::new(alg.clone());

    for src in ["(* x1 x1 x1)", "(* x2 x1)", "(* x2 x1 x2 z)", "(+ (* x1 x2) (* x2 x1))"] {
        let d = parse_ue_expr(&env, src)?;
        println!("{src:>24}  =  {}", print_ue(&alg, &d));
    }

    let word = [2, 1, 2, 1, 0];
    let one = GaussianRational::one();
    let a = env.normal_form_with(&word, &one, Strategy::LeftmostOddSquareFirst)?;
    let b = env.normal_form_with(&word, &one, Strategy::RightmostTranspositionFirst)?;
    println!("x2 x1 x2 x1 z  =  {}  (strategies agree: {})", print_ue(&alg, &a), a == b);
    Ok(())
}
