//! Validate representations: the catalog ones, and a deliberately wrong explicit one.

use supercrossed::catalog;
use supercrossed::dsl::Workspace;
use supercrossed::repr::validate_rep;

fn main() -> supercrossed::Result<()> {
    let ws = catalog::workspace().map_err(supercrossed::Error::Parse)?;
    for name in ["r2", "r2-two", "regular"] {
        let (pair, rep) = ws.rep(name)?;
        let report = validate_rep(&pair, rep)?;
        println!("{name}: dim {} ok {}", rep.dim, report.is_ok());
    }

    let mut ws = Workspace::new();
    ws.load(catalog::Z2ODD).map_err(supercrossed::Error::Parse)?;
    ws.load("(rep bad (pair z2odd) (grading 1) (pi s ((1))) (rho x ((1))))").map_err(supercrossed::Error::Parse)?;
    let (pair, rep) = ws.rep("bad")?;
    for v in validate_rep(&pair, rep)?.violations {
        println!("bad: {} ({})", v.rule, v.witness);
    }
    Ok(())
}
