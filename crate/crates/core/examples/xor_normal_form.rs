//! Canonical forms for circuits over xor, constants and ◇.
//!
//!     cargo run --example xor_normal_form

use modsat::ir::{parse_formula, ParseOptions};
use modsat::kripke::FrameClass;
use modsat::polysolve::{xor_equivalent, xor_minimize, xor_normalize, xor_sat};

fn main() {
    let opts = ParseOptions::default();
    let read = |s: &str| parse_formula(s, &opts).unwrap().to_circuit(1);

    let c = read("xor(dia 1 xor(x, x), xor(dia 1 y, xor(x, xor(1, dia 1 y))))");
    for class in [FrameClass::K, FrameClass::KD] {
        let nf = xor_normalize(&c, class).unwrap();
        let min = xor_minimize(&c, class).unwrap();
        println!("{class}: {} gates -> NF {} gates, minimal {} gates", c.size(), nf.size(), min.size());
        print!("{}", nf.to_netlist());
    }

    // ◇1 is true everywhere on a serial frame
    let c = read("xor(dia 1 1, 1)");
    for class in [FrameClass::K, FrameClass::KD] {
        println!("{class} ◇1 ⊕ 1: {}", xor_sat(&c, class).unwrap().label());
    }

    let a = read("dia 1 xor(x, y)");
    let b = read("xor(dia 1 xor(y, x), 0)");
    println!("equivalent: {}", xor_equivalent(&a, &b, FrameClass::K).unwrap());
}
