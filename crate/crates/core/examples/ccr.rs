//! Finite-rank images of generators and the structural hypotheses of each pair.

use supercrossed::catalog;
use supercrossed::crossed::CrossedElement;
use supercrossed::repr::{ccr_report, ValidatedRep};

fn main() -> supercrossed::Result<()> {
    let ws = catalog::workspace().map_err(supercrossed::Error::Parse)?;
    for (family, gens) in [("hc-grid", vec!["a0", "a1", "az"]), ("z2-chars", vec!["d-e", "x-s", "mixed"])] {
        let (pair, members) = ws.family(family)?;
        let fam: Vec<ValidatedRep> = members.iter().map(|m| ValidatedRep::new(&pair, m.clone())).collect::<Result<_, _>>()?;
        let gens: Vec<CrossedElement> = gens.iter().map(|n| ws.element(n).map(|(_, e)| e.clone())).collect::<Result<_, _>>()?;
        let report = ccr_report(&pair, &fam, &gens)?;
        println!("{family}: nilpotent {} odd-generated {}", report.nilpotent, report.odd_generated);
        for e in &report.reps {
            println!("    {:<24} dim {} image rank {}", e.name, e.dim, e.image_rank);
        }
    }
    Ok(())
}
