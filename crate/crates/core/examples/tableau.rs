//! The tableau prover on formulas over and and not.
//!
//!     cargo run --example tableau

use modsat::ir::{parse_formula, ParseOptions};
use modsat::kripke::FrameClass;
use modsat::tableau::ksat_tableau;

fn main() {
    let opts = ParseOptions::default();
    for (text, class) in [
        ("and(box 1 not(and(not(x), not(y))), and(dia 1 not(x), dia 2 box 1 0))", FrameClass::K),
        ("and(box 1 x, box 1 not(x))", FrameClass::K),
        ("and(box 1 x, box 1 not(x))", FrameClass::KD),
        ("and(dia 1 and(x, dia 2 y), box 1 box 2 not(y))", FrameClass::K),
        ("and(every x, dia 2 not(x))", FrameClass::K),
        ("and(every x, dia 1 dia 2 not(x))", FrameClass::K),
    ] {
        let phi = parse_formula(text, &opts).unwrap();
        let v = ksat_tableau(&phi, class, 2).unwrap();
        println!("{class} {text}: {}", v.label());
        if let Some(w) = &v.witness {
            println!("  {}", w.to_json());
        }
    }
}
