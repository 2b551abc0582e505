use std::fmt;
use std::str::FromStr;

use super::prover::ksat_tableau;
use crate::boolfn::{Base, NamedClone};
use crate::error::SolveError;
use crate::ir::{circuit_to_formula, dualize, is_over, rewrite_base, ModalCircuit};
use crate::kripke::{brute_force_sat, Bounds, FrameClass, OracleSat};
use crate::polysolve::{
    sat_and_recursion, sat_monotone_serial, sat_monotone_single_op, sat_or_recursion, sat_r1_or_d,
    sat_unary_chain, xor_sat, Task, Verdict,
};

/// The decision procedures, in the order automatic selection tries them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Engine {
    R1OrD,
    MonotoneSerial,
    UnaryChain,
    OrRecursion,
    Xor,
    AndRecursion,
    SingleOpMonotone,
    Tableau,
    Oracle,
}

impl Engine {
    pub const ALL: [Engine; 9] = [
        Engine::R1OrD,
        Engine::MonotoneSerial,
        Engine::UnaryChain,
        Engine::OrRecursion,
        Engine::Xor,
        Engine::AndRecursion,
        Engine::SingleOpMonotone,
        Engine::Tableau,
        Engine::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Engine::R1OrD => "r1-or-d",
            Engine::MonotoneSerial => "monotone-serial",
            Engine::UnaryChain => "unary-chain",
            Engine::OrRecursion => "or-recursion",
            Engine::Xor => "xor",
            Engine::AndRecursion => "and-recursion",
            Engine::SingleOpMonotone => "single-op-monotone",
            Engine::Tableau => "tableau",
            Engine::Oracle => "oracle",
        }
    }

    /// Decides satisfiability, or fails with a precondition error.
    pub fn sat(self, c: &ModalCircuit, class: FrameClass, bounds: &Bounds) -> Result<Verdict, SolveError> {
        match self {
            Engine::R1OrD => sat_r1_or_d(c, class),
            Engine::MonotoneSerial => sat_monotone_serial(c, class),
            Engine::UnaryChain => sat_unary_chain(c, class),
            Engine::OrRecursion => sat_or_recursion(c, class),
            Engine::Xor => {
                if !matches!(class, FrameClass::K | FrameClass::KD) {
                    return Err(precondition(self, format!("needs frame class K or KD, got {class}")));
                }
                if !NamedClone::L.contains_base(&c.base()) {
                    return Err(precondition(self, "base is not contained in L"));
                }
                xor_sat(c, class)
            }
            Engine::AndRecursion => sat_and_recursion(c, class),
            Engine::SingleOpMonotone => sat_monotone_single_op(c, class),
            Engine::Tableau => {
                if !matches!(class, FrameClass::K | FrameClass::KD) {
                    return Err(precondition(self, format!("needs frame class K or KD, got {class}")));
                }
                tableau_sat(c, class)
            }
            Engine::Oracle => Ok(match brute_force_sat(c, class, bounds) {
                OracleSat::Sat(w) => Verdict::sat("oracle", true, Some(w)),
                OracleSat::Unsat => Verdict::sat("oracle", false, None),
                OracleSat::Unknown(why) => Verdict::unknown("oracle", Task::Sat, why),
            }),
        }
    }
}

fn precondition(e: Engine, reason: impl Into<String>) -> SolveError {
    SolveError::Precondition { engine: e.name(), reason: reason.into() }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.to_ascii_lowercase();
        Engine::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| format!("unknown engine {s:?} (one of {})", Engine::ALL.map(|e| e.name()).join(", ")))
    }
}

/// Rewrites to {∧, ¬}, translates to a formula and runs the tableau.
fn tableau_sat(c: &ModalCircuit, class: FrameClass) -> Result<Verdict, SolveError> {
    let target = Base::builtins(&["and", "not", "const0", "const1"]);
    let r = rewrite_base(&c.pruned(), &target)?;
    let phi = circuit_to_formula(&r)?;
    let mut v = ksat_tableau(&phi, class, c.k())?;
    if let Some(w) = &mut v.witness {
        w.model.restrict_valuation(&c.variables());
        debug_assert!(w.verifies(c, class));
    }
    Ok(v)
}

#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    /// Forces one engine instead of automatic selection.
    pub engine: Option<Engine>,
    pub bounds: Bounds,
}

/// Decides `task` for `c` over `class`, choosing the first applicable engine.
pub fn solve(c: &ModalCircuit, base: &Base, class: FrameClass, task: Task) -> Result<Verdict, SolveError> {
    solve_with(c, base, class, task, &SolveOptions { engine: None, bounds: Bounds::from_env() })
}

pub fn solve_with(
    c: &ModalCircuit,
    base: &Base,
    class: FrameClass,
    task: Task,
    opts: &SolveOptions,
) -> Result<Verdict, SolveError> {
    if !is_over(c, base) {
        let missing: Vec<String> =
            c.base().functions().iter().filter(|f| !base.contains_table(f)).map(|f| f.name().to_string()).collect();
        return Err(SolveError::Base(format!("gates outside the base: {}", missing.join(", "))));
    }
    let target = match task {
        Task::Sat => c.clone(),
        Task::Valid => dualize(c),
    };
    let mut v = match opts.engine {
        Some(e) => e.sat(&target, class, &opts.bounds)?,
        None => auto(&target, class, &opts.bounds)?,
    };
    if task == Task::Valid {
        // dual C holds at (M, w) iff C fails at w once every variable is flipped
        v.task = Task::Valid;
        v.answer = v.answer.map(|sat| !sat);
        if let Some(w) = &mut v.witness {
            w.model.complement_valuation(&c.variables());
        }
    }
    Ok(v)
}

fn auto(c: &ModalCircuit, class: FrameClass, bounds: &Bounds) -> Result<Verdict, SolveError> {
    for e in Engine::ALL {
        match e.sat(c, class, bounds) {
            Err(SolveError::Precondition { .. }) => continue,
            other => return other,
        }
    }
    unreachable!("the oracle accepts every instance")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::{parse_formula, ParseOptions};
    use FrameClass::*;

    fn f(s: &str) -> ModalCircuit {
        parse_formula(s, &ParseOptions::default()).unwrap().to_circuit(1)
    }

    fn run(s: &str, class: FrameClass, task: Task) -> Verdict {
        let c = f(s);
        let v = solve(&c, &c.base(), class, task).unwrap();
        if let Some(w) = &v.witness {
            assert_eq!(w.verifies(&c, class), task == Task::Sat, "{s}");
        }
        v
    }

    #[test]
    fn engine_choice() {
        assert_eq!(run("xor(dia 1 x, 1)", K, Task::Sat).engine, "xor");
        assert_eq!(run("and(dia 1 x, not(box 1 y))", K, Task::Sat).engine, "tableau");
        assert_eq!(run("and(x, y)", K, Task::Sat).engine, "r1-or-d");
        assert_eq!(run("and(dia 1 x, or(box 1 0, y))", KD, Task::Sat).engine, "monotone-serial");
        assert_eq!(run("and(x, not(y))", S4, Task::Sat).engine, "oracle");
    }

    #[test]
    fn validity_by_duality() {
        let v = run("or(x, not(x))", K, Task::Valid);
        assert_eq!(v.label(), "VALID");
        let v = run("dia 1 1", KD, Task::Valid);
        assert_eq!(v.label(), "VALID");
        let v = run("dia 1 1", K, Task::Valid);
        assert_eq!(v.label(), "INVALID");
        let v = run("or(box 1 x, dia 1 not(x))", K, Task::Valid);
        assert_eq!(v.label(), "VALID");
        let v = run("and(x, box 1 y)", K, Task::Valid);
        assert_eq!(v.label(), "INVALID");
    }

    #[test]
    fn forced_engine() {
        let c = f("and(x, not(y))");
        let opts = SolveOptions { engine: Some(Engine::Xor), bounds: Bounds::default() };
        assert!(matches!(solve_with(&c, &c.base(), K, Task::Sat, &opts), Err(SolveError::Precondition { .. })));
        let opts = SolveOptions { engine: Some(Engine::Oracle), bounds: Bounds::default() };
        assert!(solve_with(&c, &c.base(), K, Task::Sat, &opts).unwrap().is_yes());
    }

    #[test]
    fn base_checked() {
        let c = f("and(x, y)");
        assert!(matches!(solve(&c, &Base::builtins(&["or"]), K, Task::Sat), Err(SolveError::Base(_))));
    }

    #[test]
    fn engine_names_parse() {
        for e in Engine::ALL {
            assert_eq!(e.name().parse::<Engine>().unwrap(), e);
        }
        assert!("fast".parse::<Engine>().is_err());
    }
}
