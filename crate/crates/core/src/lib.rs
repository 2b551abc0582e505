//! Satisfiability and validity for modal logics over restricted Boolean bases.
//!
//! Instances are modal circuits whose propositional gates come from a finite
//! set of Boolean functions. The crate analyses which clone the set generates,
//! reports the complexity class of the instance family, and decides single
//! instances with a matching engine.

pub mod boolfn;
pub mod checks;
pub mod classify;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod ir;
pub mod kripke;
pub mod polysolve;
pub mod tableau;

pub use boolfn::{Base, FunctionTable};
