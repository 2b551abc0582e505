//! Decide small instances by model search and check the witnesses.
//!
//!     cargo run --example oracle

use modsat::ir::{parse_formula, ParseOptions};
use modsat::kripke::{brute_force_sat, brute_force_valid, Bounds, FrameClass, OracleSat, Witness};

fn main() {
    let bounds = Bounds::from_env();
    let cases = [
        ("and(dia 1 x, dia 1 not(x))", FrameClass::K),
        ("and(box 1 x, not(x))", FrameClass::K),
        ("and(box 1 x, not(x))", FrameClass::T),
        ("and(dia 1 1, box 1 0)", FrameClass::KD),
        ("and(dia 1 dia 1 x, box 1 not(x))", FrameClass::S4),
    ];
    for (text, class) in cases {
        let c = parse_formula(text, &ParseOptions::default()).unwrap().to_circuit(1);
        match brute_force_sat(&c, class, &bounds) {
            OracleSat::Sat(w) => {
                println!("{class} {text}: SAT in {} worlds", w.model.worlds());
                let again = Witness::from_json(&w.to_json().to_string()).unwrap();
                assert!(again.verifies(&c, class));
                println!("  {}", w.to_json());
            }
            OracleSat::Unsat => println!("{class} {text}: UNSAT"),
            OracleSat::Unknown(why) => println!("{class} {text}: UNKNOWN ({why})"),
        }
    }

    let c = parse_formula("or(box 1 x, dia 1 not(x))", &ParseOptions::default()).unwrap().to_circuit(1);
    println!("□x ∨ ◇¬x valid over K: {:?}", brute_force_valid(&c, FrameClass::K, &bounds).decided());
}
