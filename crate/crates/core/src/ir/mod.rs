//! Modal circuits and formulas, their text formats, and the rewrites between them.

mod circuit;
mod formula;
mod parse;
mod reduce;
mod transform;

pub use circuit::{CircuitBuilder, Gate, GateId, GateKind, ModalCircuit};
pub use formula::ModalFormula;
pub use parse::{parse_any, parse_circuit, parse_formula, ParseOptions};
pub use reduce::{circuit_to_formula, kd_to_k, kd_to_k_formula, s1_transform, ModalitySpec, S1Kit, S1_DEPTH_CAP};
pub use transform::{dualize, expand, is_over, rewrite_base, REWRITE_DEPTH_CAP};
