//! Tableau decision procedure for K and KD, and the engine dispatcher.

mod prover;
mod solve;

pub use prover::ksat_tableau;
pub use solve::{solve, solve_with, Engine, SolveOptions};
