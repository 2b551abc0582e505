//! Complexity of satisfiability and validity for a base, frame class and
//! set of modal operators.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::boolfn::{clone_profile, Base, CloneProfile, NamedClone};
use crate::error::ClassifyError;
use crate::ir::ModalitySpec;
use crate::kripke::FrameClass;
use crate::polysolve::Task;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Repr {
    Formula,
    Circuit,
}

impl FromStr for Repr {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "formula" => Ok(Repr::Formula),
            "circuit" => Ok(Repr::Circuit),
            _ => Err(format!("unknown representation {s:?}")),
        }
    }
}

/// A decision problem: which inputs are allowed and what is asked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub base: Base,
    pub frame: FrameClass,
    pub modalities: ModalitySpec,
    pub repr: Repr,
    pub task: Task,
}

impl Instance {
    pub fn sat(base: Base, frame: FrameClass, modalities: ModalitySpec) -> Self {
        Instance { base, frame, modalities, repr: Repr::Circuit, task: Task::Sat }
    }

    /// The satisfiability instance whose complement this validity instance is.
    pub fn dual(&self) -> Instance {
        Instance {
            base: self.base.dual(),
            frame: self.frame,
            modalities: self.modalities.dual(),
            repr: self.repr,
            task: match self.task {
                Task::Sat => Task::Valid,
                Task::Valid => Task::Sat,
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComplexityClass {
    P,
    NpComplete,
    ConpComplete,
    PspaceComplete,
    Open,
}

impl ComplexityClass {
    pub fn name(self) -> &'static str {
        match self {
            ComplexityClass::P => "P",
            ComplexityClass::NpComplete => "NP-complete",
            ComplexityClass::ConpComplete => "coNP-complete",
            ComplexityClass::PspaceComplete => "PSPACE-complete",
            ComplexityClass::Open => "OPEN",
        }
    }

    /// The class of the complement problem.
    pub fn complement(self) -> Self {
        match self {
            ComplexityClass::NpComplete => ComplexityClass::ConpComplete,
            ComplexityClass::ConpComplete => ComplexityClass::NpComplete,
            other => other,
        }
    }

    /// 0 for P, 1 for NP/coNP, 2 for PSPACE; `None` when open.
    pub fn level(self) -> Option<u8> {
        match self {
            ComplexityClass::P => Some(0),
            ComplexityClass::NpComplete | ComplexityClass::ConpComplete => Some(1),
            ComplexityClass::PspaceComplete => Some(2),
            ComplexityClass::Open => None,
        }
    }
}

impl fmt::Display for ComplexityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexityVerdict {
    pub class: ComplexityClass,
    /// Which case of which classification fired, e.g. `K-theorem/S11-M`.
    pub citation: String,
    /// The engine `solve` would pick for instances of this problem.
    pub engine_hint: &'static str,
}

impl ComplexityVerdict {
    pub fn to_json(&self) -> Value {
        json!({"class": self.class.name(), "citation": self.citation, "engine_hint": self.engine_hint})
    }
}

pub fn classify(inst: &Instance) -> Result<ComplexityVerdict, ClassifyError> {
    if inst.frame == FrameClass::K4 {
        return Err(ClassifyError::UnsupportedClass(inst.frame.to_string()));
    }
    if !inst.modalities.is_empty() && inst.modalities.k == 0 {
        return Err(ClassifyError::MissingModalities);
    }
    match inst.task {
        Task::Sat => classify_sat(&inst.base, inst.frame, inst.modalities),
        Task::Valid => {
            let d = inst.dual();
            let v = classify_sat(&d.base, d.frame, d.modalities)?;
            Ok(ComplexityVerdict {
                class: v.class.complement(),
                citation: format!("duality/{}", v.citation),
                engine_hint: v.engine_hint,
            })
        }
    }
}

fn verdict(class: ComplexityClass, theorem: &str, case: &str, engine_hint: &'static str) -> ComplexityVerdict {
    ComplexityVerdict { class, citation: format!("{theorem}/{case}"), engine_hint }
}

fn ensure_s1(p: &CloneProfile, frame: FrameClass) -> Result<(), ClassifyError> {
    if p.has_s1 {
        Ok(())
    } else {
        Err(ClassifyError::Unclassified(frame.to_string()))
    }
}

/// Polynomial cases shared by several ladders, tried in this order.
fn easy_case(p: &CloneProfile, allowed: &[NamedClone]) -> Option<NamedClone> {
    allowed.iter().copied().find(|c| match c {
        NamedClone::R1 => p.in_r1,
        NamedClone::D => p.in_d,
        NamedClone::V => p.in_v,
        NamedClone::L => p.in_l,
        NamedClone::M => p.in_m,
        NamedClone::N => p.in_n,
        _ => false,
    })
}

fn hint_for(c: NamedClone, frame: FrameClass) -> &'static str {
    match c {
        NamedClone::R1 | NamedClone::D => "r1-or-d",
        NamedClone::V => "or-recursion",
        NamedClone::L => "xor",
        NamedClone::N => "unary-chain",
        NamedClone::M if frame.serial() => "monotone-serial",
        NamedClone::M => "single-op-monotone",
        _ => "tableau",
    }
}

fn hard_hint(frame: FrameClass) -> &'static str {
    if matches!(frame, FrameClass::K | FrameClass::KD) {
        "tableau"
    } else {
        "oracle"
    }
}

fn classify_sat(base: &Base, frame: FrameClass, m: ModalitySpec) -> Result<ComplexityVerdict, ClassifyError> {
    use ComplexityClass::*;
    use NamedClone as C;
    let p = clone_profile(base)?;
    if m.is_empty() {
        // no modal operators: propositional satisfiability
        if p.has_s1 {
            return Ok(verdict(NpComplete, "Lewis", "S1", hard_hint(frame)));
        }
        let easy = [C::R1, C::D, C::M, C::L, C::N, C::V];
        let hint = easy_case(&p, &easy).map_or("oracle", |c| hint_for(c, frame));
        return Ok(verdict(P, "Lewis", "P", hint));
    }
    match frame {
        FrameClass::K => {
            const T: &str = "K-theorem";
            if let Some(c) = easy_case(&p, &[C::R1, C::D, C::V, C::L]) {
                return Ok(verdict(P, T, c.name(), hint_for(c, frame)));
            }
            if p.has_e0 && p.in_e {
                return Ok(if m.count() <= 1 {
                    verdict(P, T, "E0-E-single", "and-recursion")
                } else {
                    verdict(ConpComplete, T, "E0-E", "and-recursion")
                });
            }
            if p.has_s11 && p.in_m {
                return Ok(if m.count() == 2 {
                    verdict(PspaceComplete, T, "S11-M", "tableau")
                } else {
                    verdict(P, T, "S11-M-single", "single-op-monotone")
                });
            }
            if m.count() == 1 && p.in_m {
                return Ok(verdict(P, T, "M-single", "single-op-monotone"));
            }
            ensure_s1(&p, frame)?;
            Ok(verdict(PspaceComplete, T, "S1", "tableau"))
        }
        FrameClass::KD => {
            const T: &str = "KD-theorem";
            if let Some(c) = easy_case(&p, &[C::R1, C::D, C::M, C::L]) {
                return Ok(verdict(P, T, c.name(), hint_for(c, frame)));
            }
            ensure_s1(&p, frame)?;
            Ok(verdict(PspaceComplete, T, "S1", "tableau"))
        }
        FrameClass::T | FrameClass::S4 | FrameClass::S5 => {
            let t = if frame == FrameClass::S5 { "S5-theorem" } else { "T-S4-theorem" };
            if let Some(c) = easy_case(&p, &[C::R1, C::D, C::N, C::M]) {
                return Ok(verdict(P, t, c.name(), hint_for(c, frame)));
            }
            if p.has_s1 {
                return Ok(if frame == FrameClass::S5 && m.k == 1 {
                    verdict(NpComplete, t, "S1-k1", "oracle")
                } else {
                    verdict(PspaceComplete, t, "S1", "oracle")
                });
            }
            match p.named_clone {
                Some(c @ (C::L | C::L0)) => Ok(verdict(Open, t, c.name(), "oracle")),
                _ => Err(ClassifyError::Unclassified(frame.to_string())),
            }
        }
        FrameClass::K4 => Err(ClassifyError::UnsupportedClass(frame.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::FunctionTable;
    use ComplexityClass::*;
    use FrameClass::*;

    fn b(names: &[&str]) -> Base {
        Base::builtins(names)
    }

    fn class(base: Base, frame: FrameClass, m: ModalitySpec) -> ComplexityClass {
        classify(&Instance::sat(base, frame, m)).unwrap().class
    }

    #[test]
    fn examples() {
        assert_eq!(class(b(&["and", "not"]), K, ModalitySpec::box_only(1)), PspaceComplete);
        let v = classify(&Instance::sat(b(&["and", "or", "const0", "const1"]), K, ModalitySpec::both(1))).unwrap();
        assert_eq!(v.to_json().to_string(), r#"{"class":"PSPACE-complete","citation":"K-theorem/S11-M","engine_hint":"tableau"}"#);
        assert_eq!(class(b(&["and", "const0"]), K, ModalitySpec::both(1)), ConpComplete);
        assert_eq!(class(b(&["and", "const0"]), K, ModalitySpec::box_only(1)), P);
        assert_eq!(class(b(&["xor", "const1"]), KD, ModalitySpec::both(1)), P);
        let andnot = Base::new(vec![FunctionTable::parse_bits("andnot", 2, "0010").unwrap()]).unwrap();
        assert_eq!(class(andnot.clone(), S5, ModalitySpec::box_only(1)), NpComplete);
        assert_eq!(class(andnot, S5, ModalitySpec::box_only(2)), PspaceComplete);
        assert_eq!(class(b(&["xor"]), S4, ModalitySpec::both(1)), Open);
        assert_eq!(class(b(&["and"]), K, ModalitySpec::both(1)), P);
    }

    #[test]
    fn validity_is_dual() {
        let inst = Instance { task: Task::Valid, ..Instance::sat(b(&["or", "const1"]), K, ModalitySpec::both(1)) };
        let v = classify(&inst).unwrap();
        assert_eq!(v.class, NpComplete);
        assert_eq!(v.citation, "duality/K-theorem/E0-E");
        let inst = Instance { task: Task::Valid, ..Instance::sat(b(&["or", "const1"]), K, ModalitySpec::dia_only(1)) };
        assert_eq!(classify(&inst).unwrap().class, P);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            classify(&Instance::sat(b(&["and"]), K4, ModalitySpec::both(1))),
            Err(ClassifyError::UnsupportedClass(_))
        ));
        assert!(matches!(
            classify(&Instance::sat(b(&["and"]), K, ModalitySpec::both(0))),
            Err(ClassifyError::MissingModalities)
        ));
    }

    #[test]
    fn propositional() {
        assert_eq!(class(b(&["and", "not"]), K, ModalitySpec::none()), NpComplete);
        assert_eq!(class(b(&["xor", "const1"]), T, ModalitySpec::none()), P);
    }
}
