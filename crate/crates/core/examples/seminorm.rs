//! Seminorm intervals: the family maximum below, the certified bound above.

use supercrossed::catalog;
use supercrossed::repr::{seminorm_interval, ValidatedRep};

fn main() -> supercrossed::Result<()> {
    let ws = catalog::workspace().map_err(supercrossed::Error::Parse)?;
    for (elem, family) in [("a0", "hc-grid"), ("a1", "hc-grid"), ("b1", "hc-two-grid"), ("x-s", "z2-chars"), ("mixed", "z2-chars")] {
        let (pair, a) = ws.element(elem)?;
        let (_, members) = ws.family(family)?;
        let fam: Vec<ValidatedRep> = members.iter().map(|m| ValidatedRep::new(&pair, m.clone())).collect::<Result<_, _>>()?;
        let s = seminorm_interval(&pair, a, &fam)?;
        println!("{elem:>6} over {family:<12} [{:.6}, {:.6}]{}", s.lower, s.upper, if s.kernel_flag { "  kernel" } else { "" });
    }
    Ok(())
}
