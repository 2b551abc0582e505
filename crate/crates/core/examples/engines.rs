//! Run every decision procedure on the same inputs and see which apply.
//!
//!     cargo run --example engines

use modsat::boolfn::Base;
use modsat::ir::{parse_formula, ParseOptions};
use modsat::kripke::{Bounds, FrameClass};
use modsat::polysolve::Task;
use modsat::tableau::{solve, Engine};

fn main() {
    let opts = ParseOptions::default();
    let inputs = [
        ("or(dia 1 x, box 1 0)", FrameClass::K),
        ("and(box 1 x, dia 1 y)", FrameClass::KD),
        ("and(dia 1 x, box 1 0)", FrameClass::K),
        ("not(dia 1 not(dia 1 x))", FrameClass::S4),
        ("xor(dia 1 x, 1)", FrameClass::KD),
    ];
    let bounds = Bounds::default();
    for (text, class) in inputs {
        let c = parse_formula(text, &opts).unwrap().to_circuit(1);
        println!("{class} {text}");
        for e in Engine::ALL {
            match e.sat(&c, class, &bounds) {
                Ok(v) => println!("  {:<20} {}", e.name(), v.label()),
                Err(err) => println!("  {:<20} n/a ({err})", e.name()),
            }
        }
        let v = solve(&c, &c.base(), class, Task::Valid).unwrap();
        println!("  valid? {} via {}", v.label(), v.engine);
    }
    let c = parse_formula("and(x, y)", &opts).unwrap().to_circuit(1);
    println!("{}", solve(&c, &Base::builtins(&["or"]), FrameClass::K, Task::Sat).unwrap_err());
}
