//! The anti-linear anti-automorphism on U(g_C): even x goes to -x, odd x to -i x.

use supercrossed::catalog;
use supercrossed::dsl::{parse_ue_expr, print_ue};

fn main() -> supercrossed::Result<()> {
    let ws = catalog::workspace().map_err(supercrossed::Error::Parse)?;
    let pair = ws.pair("hc")?;
    let env = pair.env();
    for src in ["x", "z", "(* 2 x z)", "(* 1i x x)", "(+ 1 (c 1 2))"] {
        let d = parse_ue_expr(env, src)?;
        let dd = env.dagger(&d);
        println!("{src:>12} -> {:<16} twice: {}", print_ue(pair.algebra(), &dd), print_ue(pair.algebra(), &env.dagger(&dd)));
    }
    Ok(())
}
