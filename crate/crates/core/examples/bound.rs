//! Certified operator-norm bounds, valid in every representation, term by term.

use supercrossed::catalog;
use supercrossed::repr::norm_bound;

fn main() -> supercrossed::Result<()> {
    let ws = catalog::workspace().map_err(supercrossed::Error::Parse)?;
    for name in ["a0", "a1", "az", "a-mixed", "b1", "x-s", "mixed"] {
        let (pair, a) = ws.element(name)?;
        let b = norm_bound(&pair, a)?;
        println!("{name:>8}: {:.6}", b.upper);
        for t in &b.terms {
            let word: Vec<&str> = t.monomial.letters().iter().map(|&k| pair.algebra().basis_name(k)).collect();
            println!("          [{}] {:.6}{}", word.join(" "), t.value, if t.forced_zero { " (forced zero)" } else { "" });
        }
    }
    Ok(())
}
