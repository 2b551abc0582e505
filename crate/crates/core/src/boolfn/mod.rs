//! Boolean functions, clones and implementation search.

mod base;
mod closure;
mod clones;
mod props;
mod synth;
mod table;

pub use base::{builtin, Base};
pub use closure::{clone_contains, nary_closure, nary_closure_bits, MAX_CLOSURE_ARITY};
pub use clones::{clone_profile, named_clone, CloneProfile, NamedClone};
pub use props::{affine_decomposition, property_profile, PropertyProfile};
pub use synth::{find_implementation, find_implementation_masked, BFormula};
pub use table::{assignment_index, FunctionTable, MAX_ARITY};

pub(crate) use base::is_identifier;

/// Evaluates `f` on `args`.
pub fn eval_fn(f: &FunctionTable, args: &[bool]) -> Result<bool, crate::error::ArgError> {
    f.eval(args)
}
