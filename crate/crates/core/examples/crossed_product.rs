//! Products and the involution in the crossed product, on the finite pair and on the line.

use supercrossed::catalog;
use supercrossed::crossed::{xp_multiply, xp_star};
use supercrossed::dsl::print_function;

fn show(label: &str, pair: &supercrossed::group::Pair, a: &supercrossed::crossed::CrossedElement) {
    println!("{label}:");
    for (m, f) in a.terms() {
        let word: Vec<&str> = m.letters().iter().map(|&k| pair.algebra().basis_name(k)).collect();
        println!("  [{}] (x) {}", word.join(" "), print_function(pair.group(), f));
    }
}

fn main() -> supercrossed::Result<()> {
    let ws = catalog::workspace().map_err(supercrossed::Error::Parse)?;

    let (z2, mixed) = ws.element("mixed")?;
    let sq = xp_multiply(&z2, mixed, mixed)?;
    show("mixed * mixed", &z2, &sq);
    show("mixed^*", &z2, &xp_star(&z2, mixed)?);

    let (hc, a1) = ws.element("a1")?;
    show("a1 * a1 on the line", &hc, &xp_multiply(&hc, a1, a1)?);
    Ok(())
}
