//! Difference quotients of the translation orbit converge to the right derivative.

use supercrossed::catalog;
use supercrossed::crossed::orbit_derivative_check;

fn main() -> supercrossed::Result<()> {
    let ws = catalog::workspace().map_err(supercrossed::Error::Parse)?;
    let (pair, a) = ws.element("a-mixed")?;
    let z = pair.algebra().index_of("z").expect("catalog basis");
    for h in [1e-1, 1e-2, 1e-3, 1e-4] {
        let r = orbit_derivative_check(&pair, z, a, h)?;
        println!("h = {h:<6} residual {:.3e} bound {:.3e}", r.residual, r.taylor_bound);
    }
    Ok(())
}
