use std::fmt;

use serde::Serialize;

use super::base::Base;
use super::closure::clone_contains;
use super::props::{property_profile, PropertyProfile};
use super::table::FunctionTable;
use crate::error::ResourceError;

/// The clones of Post's lattice that the classification refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum NamedClone {
    BF,
    R0,
    R1,
    M,
    D,
    L,
    L0,
    S1,
    S11,
    V,
    V0,
    V2,
    E,
    E0,
    E2,
    N,
    I,
}

impl NamedClone {
    pub const ALL: [NamedClone; 17] = [
        NamedClone::BF,
        NamedClone::R0,
        NamedClone::R1,
        NamedClone::M,
        NamedClone::D,
        NamedClone::L,
        NamedClone::L0,
        NamedClone::S1,
        NamedClone::S11,
        NamedClone::V,
        NamedClone::V0,
        NamedClone::V2,
        NamedClone::E,
        NamedClone::E0,
        NamedClone::E2,
        NamedClone::N,
        NamedClone::I,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedClone::BF => "BF",
            NamedClone::R0 => "R0",
            NamedClone::R1 => "R1",
            NamedClone::M => "M",
            NamedClone::D => "D",
            NamedClone::L => "L",
            NamedClone::L0 => "L0",
            NamedClone::S1 => "S1",
            NamedClone::S11 => "S11",
            NamedClone::V => "V",
            NamedClone::V0 => "V0",
            NamedClone::V2 => "V2",
            NamedClone::E => "E",
            NamedClone::E0 => "E0",
            NamedClone::E2 => "E2",
            NamedClone::N => "N",
            NamedClone::I => "I",
        }
    }

    /// Membership of a single function, judged on its properties.
    pub fn admits(self, f: &FunctionTable) -> bool {
        let p = property_profile(f);
        self.admits_profile(&p)
    }

    pub fn admits_profile(self, p: &PropertyProfile) -> bool {
        match self {
            NamedClone::BF => true,
            NamedClone::R0 => p.reproduces0,
            NamedClone::R1 => p.reproduces1,
            NamedClone::M => p.monotone,
            NamedClone::D => p.self_dual,
            NamedClone::L => p.affine,
            NamedClone::L0 => p.affine && p.reproduces0,
            NamedClone::S1 => p.separating1,
            NamedClone::S11 => p.separating1 && p.monotone,
            NamedClone::V => p.is_or_with_constants,
            NamedClone::V0 => p.is_or_with_constants && p.reproduces0,
            NamedClone::V2 => p.is_or_with_constants && p.reproduces0 && p.reproduces1,
            NamedClone::E => p.is_and_with_constants,
            NamedClone::E0 => p.is_and_with_constants && p.reproduces0,
            NamedClone::E2 => p.is_and_with_constants && p.reproduces0 && p.reproduces1,
            NamedClone::N => p.essentially_unary,
            NamedClone::I => p.essentially_unary && p.monotone,
        }
    }

    /// A finite base generating this clone.
    pub fn basis(self) -> Base {
        let t = |name: &str, arity: usize, bits: &str| FunctionTable::parse_bits(name, arity, bits).unwrap();
        let b = |names: &[&str]| Base::builtins(names);
        match self {
            NamedClone::BF => b(&["and", "not"]),
            NamedClone::R0 => b(&["or", "xor"]),
            NamedClone::R1 => Base::new(vec![FunctionTable::or(), t("xnor", 2, "1001")]).unwrap(),
            NamedClone::M => b(&["and", "or", "const0", "const1"]),
            NamedClone::D => Base::new(vec![t("maj_xnn", 3, "10001110")]).unwrap(),
            NamedClone::L => b(&["xor", "const1"]),
            NamedClone::L0 => b(&["xor"]),
            NamedClone::S1 => Base::new(vec![t("andnot", 2, "0010")]).unwrap(),
            NamedClone::S11 => Base::new(vec![t("and_or", 3, "00000111"), FunctionTable::constant(false)]).unwrap(),
            NamedClone::V => b(&["or", "const0", "const1"]),
            NamedClone::V0 => b(&["or", "const0"]),
            NamedClone::V2 => b(&["or"]),
            NamedClone::E => b(&["and", "const0", "const1"]),
            NamedClone::E0 => b(&["and", "const0"]),
            NamedClone::E2 => b(&["and"]),
            NamedClone::N => b(&["not", "const1"]),
            NamedClone::I => b(&["const0", "const1"]),
        }
    }

    /// Whether `[basis(self)] ⊆ [B]`.
    pub fn generated_by(self, base: &Base) -> Result<bool, ResourceError> {
        for f in self.basis().functions() {
            if !clone_contains(base, f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether every function of `B` lies in this clone.
    pub fn contains_base(self, base: &Base) -> bool {
        base.functions().iter().all(|f| self.admits(f))
    }
}

impl fmt::Display for NamedClone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Where a base sits relative to the clones named in the classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CloneProfile {
    pub in_r1: bool,
    pub in_d: bool,
    pub in_m: bool,
    pub in_l: bool,
    pub in_l0: bool,
    pub in_v: bool,
    pub in_e: bool,
    pub in_n: bool,
    pub in_r0: bool,
    pub has_s1: bool,
    pub has_s11: bool,
    pub has_e0: bool,
    pub has_v0: bool,
    pub named_clone: Option<NamedClone>,
}

/// The clone `[B]` when it is one of the named clones.
pub fn named_clone(base: &Base) -> Result<Option<NamedClone>, ResourceError> {
    for c in NamedClone::ALL {
        if c.contains_base(base) && c.generated_by(base)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

pub fn clone_profile(base: &Base) -> Result<CloneProfile, ResourceError> {
    let sub = |c: NamedClone| c.contains_base(base);
    let in_m = sub(NamedClone::M);
    // members of M cannot generate x∧¬y
    let has_s1 = !in_m && NamedClone::S1.generated_by(base)?;
    let has_s11 = has_s1 || NamedClone::S11.generated_by(base)?;
    Ok(CloneProfile {
        in_r1: sub(NamedClone::R1),
        in_d: sub(NamedClone::D),
        in_m,
        in_l: sub(NamedClone::L),
        in_l0: sub(NamedClone::L0),
        in_v: sub(NamedClone::V),
        in_e: sub(NamedClone::E),
        in_n: sub(NamedClone::N),
        in_r0: sub(NamedClone::R0),
        has_s1,
        has_s11,
        has_e0: NamedClone::E0.generated_by(base)?,
        has_v0: NamedClone::V0.generated_by(base)?,
        named_clone: named_clone(base)?,
    })
}
