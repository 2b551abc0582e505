use std::collections::BTreeSet;
use std::fmt;

use super::circuit::{CircuitBuilder, GateId, ModalCircuit};
use crate::boolfn::FunctionTable;

/// A modal formula: a tree-shaped circuit. `Every` is the operator ⋀_j □_j.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ModalFormula {
    Var(String),
    Const(bool),
    Apply(FunctionTable, Vec<ModalFormula>),
    Box(u32, Box<ModalFormula>),
    Dia(u32, Box<ModalFormula>),
    Every(Box<ModalFormula>),
}

use ModalFormula as F;

impl ModalFormula {
    pub fn var(name: &str) -> Self {
        F::Var(name.to_string())
    }

    /// Applies `f`; 0-ary tables become constants.
    pub fn apply(f: &FunctionTable, args: Vec<ModalFormula>) -> Self {
        assert_eq!(f.arity(), args.len(), "arity of {}", f.name());
        if f.arity() == 0 {
            F::Const(f.value(0))
        } else {
            F::Apply(f.clone(), args)
        }
    }

    pub fn and(a: ModalFormula, b: ModalFormula) -> Self {
        F::Apply(FunctionTable::and(), vec![a, b])
    }

    pub fn or(a: ModalFormula, b: ModalFormula) -> Self {
        F::Apply(FunctionTable::or(), vec![a, b])
    }

    pub fn not(a: ModalFormula) -> Self {
        F::Apply(FunctionTable::not(), vec![a])
    }

    pub fn xor(a: ModalFormula, b: ModalFormula) -> Self {
        F::Apply(FunctionTable::xor(), vec![a, b])
    }

    pub fn boxed(i: u32, a: ModalFormula) -> Self {
        F::Box(i, Box::new(a))
    }

    pub fn dia(i: u32, a: ModalFormula) -> Self {
        F::Dia(i, Box::new(a))
    }

    pub fn every(a: ModalFormula) -> Self {
        F::Every(Box::new(a))
    }

    /// `a ↔ b` written with ∧ and ¬.
    pub fn iff(a: ModalFormula, b: ModalFormula) -> Self {
        F::and(
            F::not(F::and(a.clone(), F::not(b.clone()))),
            F::not(F::and(F::not(a), b)),
        )
    }

    /// Balanced ∧-tree; the empty conjunction is 1.
    pub fn conjoin(mut parts: Vec<ModalFormula>) -> Self {
        if parts.is_empty() {
            return F::Const(true);
        }
        while parts.len() > 1 {
            let mut next = Vec::with_capacity(parts.len().div_ceil(2));
            let mut it = parts.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => next.push(F::and(a, b)),
                    None => next.push(a),
                }
            }
            parts = next;
        }
        parts.pop().unwrap()
    }

    pub fn children(&self) -> Vec<&ModalFormula> {
        match self {
            F::Var(_) | F::Const(_) => vec![],
            F::Apply(_, xs) => xs.iter().collect(),
            F::Box(_, a) | F::Dia(_, a) | F::Every(a) => vec![a],
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn modal_depth(&self) -> usize {
        let below = self.children().iter().map(|c| c.modal_depth()).max().unwrap_or(0);
        below + matches!(self, F::Box(..) | F::Dia(..) | F::Every(_)) as usize
    }

    pub fn max_modality(&self) -> u32 {
        let own = match self {
            F::Box(i, _) | F::Dia(i, _) => *i,
            _ => 0,
        };
        self.children().iter().map(|c| c.max_modality()).max().unwrap_or(0).max(own)
    }

    pub fn has_every(&self) -> bool {
        matches!(self, F::Every(_)) || self.children().iter().any(|c| c.has_every())
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut s = BTreeSet::new();
        self.collect_vars(&mut s);
        s
    }

    fn collect_vars(&self, s: &mut BTreeSet<String>) {
        if let F::Var(v) = self {
            s.insert(v.clone());
        }
        for c in self.children() {
            c.collect_vars(s);
        }
    }

    /// Dual formula: functions replaced by duals, □ and ◇ swapped.
    /// `Every` has no dual operator here and is rewritten through its expansion.
    pub fn dual(&self, k: u32) -> ModalFormula {
        match self {
            F::Var(v) => F::Var(v.clone()),
            F::Const(c) => F::Const(!c),
            F::Apply(f, xs) => F::Apply(f.dual_table(), xs.iter().map(|x| x.dual(k)).collect()),
            F::Box(i, a) => F::dia(*i, a.dual(k)),
            F::Dia(i, a) => F::boxed(*i, a.dual(k)),
            F::Every(a) => {
                let inner = a.dual(k);
                let mut parts: Vec<ModalFormula> = (1..=k).map(|j| F::dia(j, inner.clone())).collect();
                // dual of a k-fold conjunction is a k-fold disjunction
                let mut acc = parts.pop().unwrap_or(F::Const(false));
                while let Some(p) = parts.pop() {
                    acc = F::or(p, acc);
                }
                acc
            }
        }
    }

    /// The formula as a tree-shaped circuit; `Every` expands over relations
    /// `1..=k` with its body shared.
    pub fn to_circuit(&self, k: u32) -> ModalCircuit {
        let mut b = CircuitBuilder::new().with_k(k.max(self.max_modality()));
        let out = self.build(&mut b, k);
        b.finish(out)
    }

    pub(crate) fn build(&self, b: &mut CircuitBuilder, k: u32) -> GateId {
        match self {
            F::Var(v) => b.var(v),
            F::Const(c) => b.constant(*c),
            F::Apply(f, xs) => {
                let args = xs.iter().map(|x| x.build(b, k)).collect();
                b.apply(f, args)
            }
            F::Box(i, a) => {
                let x = a.build(b, k);
                b.boxed(*i, x)
            }
            F::Dia(i, a) => {
                let x = a.build(b, k);
                b.dia(*i, x)
            }
            F::Every(a) => {
                let x = a.build(b, k);
                if k == 0 {
                    return b.constant(true);
                }
                let mut acc = b.boxed(1, x);
                for j in 2..=k {
                    let bj = b.boxed(j, x);
                    acc = b.and(acc, bj);
                }
                acc
            }
        }
    }
}

impl fmt::Display for ModalFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            F::Var(v) => f.write_str(v),
            F::Const(c) => write!(f, "{}", *c as u8),
            F::Apply(g, xs) => {
                write!(f, "{}(", g.name())?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
            F::Box(i, a) => write!(f, "box {i} {a}"),
            F::Dia(i, a) => write!(f, "dia {i} {a}"),
            F::Every(a) => write!(f, "every {a}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_grammar() {
        let phi = F::dia(1, F::xor(F::var("x"), F::var("x")));
        assert_eq!(phi.to_string(), "dia 1 xor(x, x)");
        assert_eq!(F::every(F::boxed(2, F::Const(false))).to_string(), "every box 2 0");
    }

    #[test]
    fn depth_and_size() {
        let phi = F::and(F::dia(1, F::boxed(2, F::var("x"))), F::var("y"));
        assert_eq!(phi.modal_depth(), 2);
        assert_eq!(phi.size(), 5);
        assert_eq!(phi.max_modality(), 2);
    }

    #[test]
    fn conjoin_balances() {
        let parts: Vec<_> = (0..5).map(|i| F::var(&format!("p{i}"))).collect();
        let c = F::conjoin(parts);
        assert_eq!(c.size(), 9);
        assert_eq!(F::conjoin(vec![]), F::Const(true));
    }

    #[test]
    fn every_expands_in_circuits() {
        let c = F::every(F::var("x")).to_circuit(2);
        assert_eq!(c.to_netlist(), "g1 = VAR x\ng2 = BOX 1 g1\ng3 = BOX 2 g1\ng4 = and g2 g3\nOUTPUT g4\n");
    }

    #[test]
    fn tree_circuits() {
        let phi = F::and(F::var("x"), F::var("x"));
        let c = phi.to_circuit(0);
        assert!(c.is_tree());
        assert_eq!(c.size(), 3);
    }
}
