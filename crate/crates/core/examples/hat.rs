//! The operator rho(D) pi(f) attached to a crossed-product element.

use supercrossed::catalog;
use supercrossed::repr::{rep_hat, ValidatedRep};

fn main() -> supercrossed::Result<()> {
    let ws = catalog::workspace().map_err(supercrossed::Error::Parse)?;
    for (rep, elem) in [("regular", "mixed"), ("r2", "a1"), ("r2", "a-mixed")] {
        let (pair, r) = ws.rep(rep)?;
        let (_, a) = ws.element(elem)?;
        let img = rep_hat(&pair, &ValidatedRep::new(&pair, r.clone())?, a)?;
        println!("{rep} on {elem}: exact {} norm {:.6}", img.is_exact(), img.op_norm());
        for row in img.to_complex().row_vecs() {
            let cells: Vec<String> = row.iter().map(|z| format!("{:+.4}{:+.4}i", z.re, z.im)).collect();
            println!("    {}", cells.join("  "));
        }
    }
    Ok(())
}
