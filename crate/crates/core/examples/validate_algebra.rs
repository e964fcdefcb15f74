//! Build a Lie superalgebra in code, validate it, and inspect its structure.

use supercrossed::algebra::{is_nilpotent, is_odd_generated, validate_superalgebra, SuperAlgebra};
use supercrossed::scalar::rat;

fn main() -> supercrossed::Result<()> {
    let hc = SuperAlgebra::builder("hc1").even("z").odd("x").bracket("x", "x", &[("z", rat(1, 1))]).build()?;
    println!("{}: ok = {}", hc.name(), validate_superalgebra(&hc).is_ok());
    println!("nilpotent: {:?}", is_nilpotent(&hc));
    println!("odd-generated: {}", is_odd_generated(&hc));

    // [x, y] = z but [y, x] = -z breaks super-skew symmetry for two odd elements
    let broken = SuperAlgebra::builder("broken")
        .even("z")
        .odd("x")
        .odd("y")
        .bracket("x", "y", &[("z", rat(1, 1))])
        .bracket("y", "x", &[("z", rat(-1, 1))])
        .build_unchecked()?;
    for v in &validate_superalgebra(&broken).violations {
        println!("violation {}: {}", v.rule, v.witness);
    }
    Ok(())
}
