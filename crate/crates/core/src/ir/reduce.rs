//! Satisfiability-preserving rewrites between instance families.

use serde::Serialize;

use super::circuit::{CircuitBuilder, GateKind, ModalCircuit};
use super::formula::ModalFormula;
use super::transform::fresh_name;
use crate::boolfn::{find_implementation, find_implementation_masked, BFormula, Base, FunctionTable};
use crate::error::IrError;

/// Which modal operators an instance family allows, and how many relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ModalitySpec {
    pub boxes: bool,
    pub dias: bool,
    pub k: u32,
}

impl ModalitySpec {
    pub fn both(k: u32) -> Self {
        ModalitySpec { boxes: true, dias: true, k }
    }

    pub fn box_only(k: u32) -> Self {
        ModalitySpec { boxes: true, dias: false, k }
    }

    pub fn dia_only(k: u32) -> Self {
        ModalitySpec { boxes: false, dias: true, k }
    }

    pub fn none() -> Self {
        ModalitySpec { boxes: false, dias: false, k: 0 }
    }

    /// Number of allowed operator kinds.
    pub fn count(&self) -> usize {
        self.boxes as usize + self.dias as usize
    }

    pub fn is_empty(&self) -> bool {
        self.count() == 0
    }

    /// □ and ◇ exchanged.
    pub fn dual(&self) -> Self {
        ModalitySpec { boxes: self.dias, dias: self.boxes, k: self.k }
    }

    /// Parses `box`, `dia`, `both`, `box,dia` or `none`.
    pub fn parse_ops(s: &str, k: u32) -> Option<Self> {
        let mut m = ModalitySpec { boxes: false, dias: false, k };
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part.to_ascii_lowercase().as_str() {
                "box" => m.boxes = true,
                "dia" | "diamond" => m.dias = true,
                "both" => {
                    m.boxes = true;
                    m.dias = true;
                }
                "none" => {}
                _ => return None,
            }
        }
        if m.is_empty() {
            m.k = 0;
        }
        Some(m)
    }

    /// The operators and relation count a circuit actually uses.
    pub fn of_circuit(c: &ModalCircuit) -> Self {
        ModalitySpec { boxes: c.has_box(), dias: c.has_dia(), k: c.k() }
    }
}

fn gate_names(c: &ModalCircuit) -> Vec<String> {
    let vars = c.variables();
    let mut prefix = "g".to_string();
    while vars.iter().any(|v| v.starts_with(&prefix)) {
        prefix.push('_');
    }
    (0..c.size()).map(|i| format!("{prefix}{i}")).collect()
}

/// Formula over {∧, ¬, □_i, E} that is satisfiable in exactly the frame
/// classes where `c` is: one fresh variable per gate, the output variable
/// asserted, and each gate's defining biconditional enforced in every world
/// up to the modal depth of `c`.
///
/// `c` may use `and`, `not`, constants and both modal operators; ◇ is read as ¬□¬.
pub fn circuit_to_formula(c: &ModalCircuit) -> Result<ModalFormula, IrError> {
    let names = gate_names(c);
    let v = |id: usize| ModalFormula::Var(names[id].clone());
    let md = c.modal_depth();
    let mut clauses = Vec::new();
    for (id, g) in c.gates().iter().enumerate() {
        let rhs = match &g.kind {
            GateKind::Var(x) => ModalFormula::Var(x.clone()),
            GateKind::Const(b) => ModalFormula::Const(*b),
            GateKind::Fn(f) if f.is_not() => ModalFormula::not(v(g.args[0])),
            GateKind::Fn(f) if f.is_and() => ModalFormula::and(v(g.args[0]), v(g.args[1])),
            GateKind::Fn(f) => {
                return Err(IrError::Vocabulary(format!("function {} (rewrite to and/not first)", f.name())))
            }
            GateKind::Box(i) => ModalFormula::boxed(*i, v(g.args[0])),
            GateKind::Dia(i) => ModalFormula::not(ModalFormula::boxed(*i, ModalFormula::not(v(g.args[0])))),
        };
        let clause = match rhs {
            ModalFormula::Const(true) => v(id),
            ModalFormula::Const(false) => ModalFormula::not(v(id)),
            rhs => ModalFormula::iff(v(id), rhs),
        };
        let mut e = clause;
        for _ in 0..=md {
            clauses.push(e.clone());
            e = ModalFormula::every(e);
        }
    }
    let mut parts = vec![v(c.output())];
    parts.extend(clauses);
    Ok(ModalFormula::conjoin(parts))
}

/// `C ∧ ⋀_{i≤md} E^i ⋀_j ◇_j 1`: K-satisfiable exactly when `C` is KD-satisfiable.
pub fn kd_to_k(c: &ModalCircuit) -> ModalCircuit {
    let k = c.k();
    let mut b = CircuitBuilder::new().with_k(k);
    let out = b.embed(c);
    if k == 0 {
        return b.finish(out);
    }
    let one = b.constant(true);
    let mut serial = b.dia(1, one);
    for j in 2..=k {
        let d = b.dia(j, one);
        serial = b.and(serial, d);
    }
    let mut acc = b.and(out, serial);
    let mut level = serial;
    for _ in 0..c.modal_depth() {
        let mut next = b.boxed(1, level);
        for j in 2..=k {
            let bj = b.boxed(j, level);
            next = b.and(next, bj);
        }
        acc = b.and(acc, next);
        level = next;
    }
    b.finish(acc)
}

/// Formula version of [`kd_to_k`] with ◇_j 1 written as ¬□_j 0 and E kept atomic.
pub fn kd_to_k_formula(phi: &ModalFormula, k: u32) -> ModalFormula {
    if k == 0 {
        return phi.clone();
    }
    let serial = ModalFormula::conjoin((1..=k).map(|j| ModalFormula::not(ModalFormula::boxed(j, ModalFormula::Const(false)))).collect());
    let mut parts = vec![phi.clone()];
    let mut e = serial;
    for _ in 0..=phi.modal_depth() {
        parts.push(e.clone());
        e = ModalFormula::every(e);
    }
    ModalFormula::conjoin(parts)
}

/// Search depth for the connective implementations used by [`s1_transform`].
pub const S1_DEPTH_CAP: usize = 8;

/// Implementations of ∧, ∨, ¬ with each variable once, plus ∧ over `B` alone
/// (`guard` has its second argument once).
#[derive(Clone, Debug)]
pub struct S1Kit {
    pub and1: BFormula,
    pub or1: BFormula,
    pub not1: BFormula,
    pub and_plain: BFormula,
    pub guard: BFormula,
}

impl S1Kit {
    pub fn new(base: &Base) -> Result<Self, IrError> {
        let with_one = base.with(FunctionTable::constant(true));
        Ok(S1Kit {
            and1: find_implementation(&with_one, &FunctionTable::and(), true, S1_DEPTH_CAP)?,
            or1: find_implementation(&with_one, &FunctionTable::or(), true, S1_DEPTH_CAP)?,
            not1: find_implementation(&with_one, &FunctionTable::not(), true, S1_DEPTH_CAP)?,
            and_plain: find_implementation(base, &FunctionTable::and(), false, S1_DEPTH_CAP)?,
            guard: find_implementation_masked(base, &FunctionTable::and(), 0b10, S1_DEPTH_CAP)?,
        })
    }
}

fn place(f: &BFormula, args: &[ModalFormula], t: &str) -> ModalFormula {
    match f {
        BFormula::Var(j) => args[*j].clone(),
        BFormula::Apply(g, xs) if xs.is_empty() => {
            if g.value(0) {
                ModalFormula::Var(t.to_string())
            } else {
                ModalFormula::Const(false)
            }
        }
        BFormula::Apply(g, xs) => ModalFormula::Apply(g.clone(), xs.iter().map(|x| place(x, args, t)).collect()),
    }
}

/// Rewrites a uni-modal formula over {∧, ∨, ¬, □₁, ◇₁} into an equisatisfiable
/// formula over `B` (with `S1 ⊆ [B]`) using only the operators in `m`.
///
/// Connectives become once-per-variable implementations over `B ∪ {1}` and
/// each 1 becomes a fresh variable `t`. When □ is allowed, `t` is forced along
/// every path up to the modal depth. With ◇ alone □ is not expressible, so
/// every `◇ψ` becomes `◇(t ∧ ψ)` instead, which confines the evaluation to
/// worlds where `t` holds; this is sound for frame classes closed under
/// such submodels (all but KD).
pub fn s1_transform(phi: &ModalFormula, base: &Base, m: ModalitySpec) -> Result<ModalFormula, IrError> {
    if m.is_empty() && phi.modal_depth() > 0 {
        return Err(IrError::Vocabulary("modal operator with no modalities allowed".into()));
    }
    check_s1_vocabulary(phi)?;
    let kit = S1Kit::new(base)?;
    let t = fresh_name(&phi.variables(), "t");
    let normalized = only_ops(phi, m);
    let relativize = !m.boxes;

    fn go(f: &ModalFormula, kit: &S1Kit, t: &str, relativize: bool) -> ModalFormula {
        let tv = || ModalFormula::Var(t.to_string());
        match f {
            ModalFormula::Var(v) => ModalFormula::Var(v.clone()),
            ModalFormula::Const(true) => tv(),
            ModalFormula::Const(false) => place(&kit.not1, &[tv()], t),
            ModalFormula::Apply(g, xs) => {
                let args: Vec<ModalFormula> = xs.iter().map(|x| go(x, kit, t, relativize)).collect();
                let imp = if g.is_and() {
                    &kit.and1
                } else if g.is_not() {
                    &kit.not1
                } else {
                    &kit.or1
                };
                place(imp, &args, t)
            }
            ModalFormula::Box(i, a) => ModalFormula::boxed(*i, go(a, kit, t, relativize)),
            ModalFormula::Dia(i, a) => {
                let inner = go(a, kit, t, relativize);
                let inner = if relativize { place(&kit.guard, &[tv(), inner], t) } else { inner };
                ModalFormula::dia(*i, inner)
            }
            ModalFormula::Every(_) => unreachable!("checked"),
        }
    }
    let body = go(&normalized, &kit, &t, relativize);
    let and_b = |a: ModalFormula, b: ModalFormula| place(&kit.and_plain, &[a, b], &t);
    if relativize {
        return Ok(and_b(body, ModalFormula::Var(t.clone())));
    }
    let mut forcing = Vec::new();
    let mut cur = ModalFormula::Var(t.clone());
    for _ in 0..=phi.modal_depth() {
        forcing.push(cur.clone());
        cur = ModalFormula::boxed(1, cur);
    }
    let tree = balanced(forcing, &and_b);
    Ok(and_b(body, tree))
}

fn balanced(mut parts: Vec<ModalFormula>, and: &dyn Fn(ModalFormula, ModalFormula) -> ModalFormula) -> ModalFormula {
    while parts.len() > 1 {
        let mut next = Vec::new();
        let mut it = parts.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(and(a, b)),
                None => next.push(a),
            }
        }
        parts = next;
    }
    parts.pop().expect("non-empty")
}

fn check_s1_vocabulary(f: &ModalFormula) -> Result<(), IrError> {
    match f {
        ModalFormula::Apply(g, _) if !(g.is_and() || g.is_not() || g.same_function(&FunctionTable::or())) => {
            return Err(IrError::Vocabulary(format!("function {} (expected and/or/not)", g.name())))
        }
        ModalFormula::Box(i, _) | ModalFormula::Dia(i, _) if *i != 1 => {
            return Err(IrError::Vocabulary(format!("modality {i} (uni-modal input expected)")))
        }
        ModalFormula::Every(_) => return Err(IrError::Vocabulary("E operator".into())),
        _ => {}
    }
    for c in f.children() {
        check_s1_vocabulary(c)?;
    }
    Ok(())
}

/// Rewrites modal operators outside `m` through □ ≡ ¬◇¬ and ◇ ≡ ¬□¬.
fn only_ops(f: &ModalFormula, m: ModalitySpec) -> ModalFormula {
    use ModalFormula as F;
    match f {
        F::Box(i, a) if !m.boxes => F::not(F::dia(*i, F::not(only_ops(a, m)))),
        F::Dia(i, a) if !m.dias => F::not(F::boxed(*i, F::not(only_ops(a, m)))),
        F::Box(i, a) => F::boxed(*i, only_ops(a, m)),
        F::Dia(i, a) => F::dia(*i, only_ops(a, m)),
        F::Apply(g, xs) => F::Apply(g.clone(), xs.iter().map(|x| only_ops(x, m)).collect()),
        F::Every(a) => F::every(only_ops(a, m)),
        other => other.clone(),
    }
}
