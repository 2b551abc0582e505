//! Polynomial-time decision procedures for restricted bases.
//!
//! Each `sat_*` function checks its own precondition and fails with
//! [`SolveError::Precondition`] when the circuit is outside its fragment.

mod engines;
mod xor;

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::kripke::Witness;

pub use engines::{
    sat_and_recursion, sat_monotone_serial, sat_monotone_single_op, sat_or_recursion, sat_r1_or_d,
    sat_unary_chain,
};
pub use xor::{xor_equivalent, xor_minimize, xor_normalize, xor_sat};

/// Satisfiability or validity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Task {
    Sat,
    Valid,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Sat => "sat",
            Task::Valid => "valid",
        }
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Task {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "sat" => Ok(Task::Sat),
            "valid" => Ok(Task::Valid),
            _ => Err(format!("unknown task {s:?}")),
        }
    }
}

/// Answer of a decision procedure.
///
/// For [`Task::Sat`] the witness is a satisfying pointed model, for
/// [`Task::Valid`] a countermodel. `answer` is `None` when a bounded search
/// gave up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub task: Task,
    pub answer: Option<bool>,
    pub witness: Option<Witness>,
    pub engine: &'static str,
    pub reason: Option<String>,
}

impl Verdict {
    pub(crate) fn sat(engine: &'static str, satisfiable: bool, witness: Option<Witness>) -> Self {
        Verdict { task: Task::Sat, answer: Some(satisfiable), witness, engine, reason: None }
    }

    pub(crate) fn unknown(engine: &'static str, task: Task, reason: String) -> Self {
        Verdict { task, answer: None, witness: None, engine, reason: Some(reason) }
    }

    /// `true` for SAT or VALID.
    pub fn is_yes(&self) -> bool {
        self.answer == Some(true)
    }

    pub fn satisfiable(&self) -> Option<bool> {
        match self.task {
            Task::Sat => self.answer,
            Task::Valid => None,
        }
    }

    /// `SAT`, `UNSAT`, `VALID`, `INVALID` or `UNKNOWN`.
    pub fn label(&self) -> &'static str {
        match (self.task, self.answer) {
            (_, None) => "UNKNOWN",
            (Task::Sat, Some(true)) => "SAT",
            (Task::Sat, Some(false)) => "UNSAT",
            (Task::Valid, Some(true)) => "VALID",
            (Task::Valid, Some(false)) => "INVALID",
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "task": self.task.name(),
            "result": self.label(),
            "engine": self.engine,
        });
        if let Some(w) = &self.witness {
            v["witness"] = w.to_json();
        }
        if let Some(r) = &self.reason {
            v["reason"] = json!(r);
        }
        v
    }
}
