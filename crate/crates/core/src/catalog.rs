//! The shipped definitions under `catalog/`, compiled in.

use crate::dsl::{Diagnostic, Workspace};

pub const HC: &str = include_str!("../catalog/hc.sc");
pub const Z2ODD: &str = include_str!("../catalog/z2odd.sc");
pub const STRUCTURE: &str = include_str!("../catalog/structure.sc");

pub const ALL: [(&str, &str); 3] = [("hc.sc", HC), ("z2odd.sc", Z2ODD), ("structure.sc", STRUCTURE)];

/// Every catalog file in one workspace.
pub fn workspace() -> Result<Workspace, Diagnostic> {
    let mut ws = Workspace::new();
    for (name, src) in ALL {
        ws.load(src).map_err(|mut d| {
            d.file = Some(name.to_string());
            d
        })?;
    }
    Ok(ws)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{is_nilpotent, is_odd_generated, validate_superalgebra};

    #[test]
    fn catalog_loads() {
        let ws = workspace().unwrap();
        for ok in ["hc", "hc-two", "z2odd", "abelian-line"] {
            assert!(ws.pairs[ok].report.is_ok(), "{ok}: {}", ws.pairs[ok].report);
        }
        assert!(ws.pairs["scaling-line"].report.violations_of("ad-nilpotent").count() > 0);
        let split = &ws.pairs["split2-z2"].report;
        let ad: Vec<_> = split.violations_of("ad-automorphism").collect();
        assert_eq!(ad.len(), 1);
        assert!(!validate_superalgebra(&ws.algebras["broken"]).is_ok());
        assert!(validate_superalgebra(&ws.algebras["gl11"]).is_ok());
        assert!(!is_odd_generated(&ws.algebras["gl11"]));
        assert!(!is_nilpotent(&ws.algebras["gl11"]).nilpotent);
    }
}
