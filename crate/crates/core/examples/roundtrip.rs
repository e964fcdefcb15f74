//! Recover pi(g) and rho(x) from the crossed-product representation alone.

use supercrossed::catalog;
use supercrossed::cli::probe_vectors;
use supercrossed::crossed::CrossedElement;
use supercrossed::repr::{roundtrip, ValidatedRep};

fn main() -> supercrossed::Result<()> {
    let ws = catalog::workspace().map_err(supercrossed::Error::Parse)?;
    for (rep, probes, tol) in [("regular", vec!["d-e", "mixed"], 0.0), ("r2", vec!["probe", "probe-eps"], 1e-10)] {
        let (pair, r) = ws.rep(rep)?;
        let vr = ValidatedRep::new(&pair, r.clone())?;
        let probes: Vec<CrossedElement> = probes.iter().map(|n| ws.element(n).map(|(_, e)| e.clone())).collect::<Result<_, _>>()?;
        let report = roundtrip(&pair, &vr, &probes, &probe_vectors(r.dim, r.is_line(), 0), tol)?;
        println!("{rep}: span {}/{} passed {}", report.span_rank, report.dim, report.passed());
        for e in &report.entries {
            println!("    {:<10} residual {:.2e} exact {}", e.target, e.max_residual, e.exact);
        }
    }
    Ok(())
}
