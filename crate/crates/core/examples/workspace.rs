//! Load definitions from source text, report diagnostics, and print the canonical form.

use supercrossed::dsl::{parse, Workspace};

const SOURCE: &str = "
(algebra heis (basis (z even) (x1 odd) (x2 odd))
  (bracket x1 x1 z)
  (bracket x2 x2 z))
(pair heis-line (algebra heis) (line z))
(element e1 (pair heis-line)
  (tensor (+ x1 (* 1/2i x2)) (line (term + (poly 1 0 -1) (gauss 3/2 0)))))
(rep clifford-1 (pair heis-line) (clifford 1))
(family grid (pair heis-line) (lambdas 1/2 1 2))
";

fn main() {
    let ws = parse(SOURCE).expect("source is well formed");
    print!("{}", ws.print());

    for bad in ["(algebra a (basis (z even))", "(algebra a (basis (z even)))\n(algebra a (basis (y odd)))", "(element e (pair nowhere))"] {
        let mut ws = Workspace::new();
        match ws.load(bad) {
            Ok(()) => println!("accepted: {bad}"),
            Err(d) => println!("{d}"),
        }
    }
}
