//! Kripke models, frame classes, the satisfaction relation and the bounded oracle.

mod model;
mod oracle;

pub use model::{frame_in_class, holds, holds_formula, FrameClass, KripkeModel, Witness};
pub use oracle::{
    brute_force_sat, brute_force_valid, explicit_sat, oracle_equivalent, Bounds, OracleSat, OracleValid, BOUND_WORLDS_ENV,
};
