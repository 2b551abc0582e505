//! Small versions of the randomized and exhaustive cross-checks.
//!
//!     cargo run --release --example cross_check [seed]

use modsat::checks;
use modsat::kripke::FrameClass;

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    println!("{}", checks::xor_completeness(4, 2, 1, FrameClass::KD, seed));
    println!("{}", checks::xor_idempotence(100, 20, seed));
    for case in checks::engine_cases(3) {
        println!("{}", checks::engine_agreement(&case));
    }
    println!("{}", checks::tableau_agreement(5));
    for r in checks::reduction_soundness(20, seed) {
        println!("{r}");
    }
    println!("{}", checks::duality(50, seed));
}
