//! First-order Taylor remainder of the orbit t -> lambda_exp(tz)(a) over a family of representations.

use supercrossed::catalog;
use supercrossed::crossed::orbit_derivative_check;
use supercrossed::repr::{taylor_norm_check, ValidatedRep};

fn main() -> supercrossed::Result<()> {
    let ws = catalog::workspace().map_err(supercrossed::Error::Parse)?;
    let (pair, members) = ws.family("hc-grid")?;
    let fam: Vec<ValidatedRep> = members.iter().map(|m| ValidatedRep::new(&pair, m.clone())).collect::<Result<_, _>>()?;
    let z = pair.algebra().index_of("z").expect("catalog basis");
    let (_, a) = ws.element("a-shift")?;

    let report = taylor_norm_check(&pair, &fam, z, a, &[1e-1, 1e-2, 1e-3])?;
    println!("M = {:.6}", report.m);
    for row in &report.rows {
        println!("t = {:<6} max {:.3e} <= {:.3e}: {}", row.t, row.family_max, row.bound, row.passed);
    }
    println!("decay ratios {:?}", report.ratios);

    let orbit = orbit_derivative_check(&pair, z, a, 1e-3)?;
    println!("L1 residual of the difference quotient {:.3e} (Taylor bound {:.3e})", orbit.residual, orbit.taylor_bound);
    Ok(())
}
