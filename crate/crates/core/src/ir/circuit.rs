use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::boolfn::{Base, FunctionTable};
use crate::error::IrError;

pub type GateId = usize;

/// Gate label.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GateKind {
    Var(String),
    Const(bool),
    Fn(FunctionTable),
    /// Necessity along relation `i` (1-based).
    Box(u32),
    /// Possibility along relation `i` (1-based).
    Dia(u32),
}

impl GateKind {
    pub fn is_modal(&self) -> bool {
        matches!(self, GateKind::Box(_) | GateKind::Dia(_))
    }

    pub fn arity(&self) -> usize {
        match self {
            GateKind::Var(_) | GateKind::Const(_) => 0,
            GateKind::Fn(f) => f.arity(),
            GateKind::Box(_) | GateKind::Dia(_) => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gate {
    pub kind: GateKind,
    pub args: Vec<GateId>,
}

/// A modal circuit: gates in topological order (arguments precede users)
/// and a designated output gate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModalCircuit {
    gates: Vec<Gate>,
    output: GateId,
    k: u32,
}

impl ModalCircuit {
    /// Validates order, arities and modality indices.
    pub fn new(gates: Vec<Gate>, output: GateId, k: u32) -> Result<Self, IrError> {
        for (id, g) in gates.iter().enumerate() {
            let name = format!("#{id}");
            if g.kind.arity() != g.args.len() {
                return Err(IrError::Arity { gate: name, expected: g.kind.arity(), got: g.args.len() });
            }
            if g.args.iter().any(|&a| a >= id) {
                return Err(IrError::Order(name));
            }
            if let GateKind::Box(i) | GateKind::Dia(i) = g.kind {
                if i == 0 || i > k {
                    return Err(IrError::ModalityIndex { gate: name, index: i, k });
                }
            }
        }
        if output >= gates.len() {
            return Err(IrError::Order(format!("output #{output}")));
        }
        Ok(ModalCircuit { gates, output, k })
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn gate(&self, id: GateId) -> &Gate {
        &self.gates[id]
    }

    pub fn output(&self) -> GateId {
        self.output
    }

    /// Number of accessibility relations.
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn with_k(mut self, k: u32) -> Self {
        assert!(k >= self.max_modality(), "k below a used modality index");
        self.k = k;
        self
    }

    pub fn size(&self) -> usize {
        self.gates.len()
    }

    pub fn max_modality(&self) -> u32 {
        self.gates
            .iter()
            .filter_map(|g| match g.kind {
                GateKind::Box(i) | GateKind::Dia(i) => Some(i),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn reachable(&self) -> Vec<bool> {
        let mut r = vec![false; self.gates.len()];
        r[self.output] = true;
        for id in (0..self.gates.len()).rev() {
            if r[id] {
                for &a in &self.gates[id].args {
                    r[a] = true;
                }
            }
        }
        r
    }

    /// Drops gates the output does not depend on.
    pub fn pruned(&self) -> ModalCircuit {
        let r = self.reachable();
        let mut map = vec![usize::MAX; self.gates.len()];
        let mut gates = Vec::new();
        for (id, g) in self.gates.iter().enumerate() {
            if r[id] {
                map[id] = gates.len();
                gates.push(Gate { kind: g.kind.clone(), args: g.args.iter().map(|&a| map[a]).collect() });
            }
        }
        ModalCircuit { gates, output: map[self.output], k: self.k }
    }

    pub fn fanout(&self) -> Vec<usize> {
        let mut f = vec![0; self.gates.len()];
        for g in &self.gates {
            for &a in &g.args {
                f[a] += 1;
            }
        }
        f
    }

    /// Formula-shaped: every gate reachable and used at most once.
    pub fn is_tree(&self) -> bool {
        self.reachable().iter().all(|&r| r) && self.fanout().iter().all(|&f| f <= 1)
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.gates
            .iter()
            .filter_map(|g| match &g.kind {
                GateKind::Var(v) => Some(v.clone()),
                _ => None,
            })
            .collect()
    }

    /// Longest number of modal gates on any path in the graph.
    pub fn modal_depth(&self) -> usize {
        self.depths().into_iter().max().unwrap_or(0)
    }

    /// Modal depth of the subcircuit at each gate.
    pub fn depths(&self) -> Vec<usize> {
        let mut d = vec![0usize; self.gates.len()];
        for (id, g) in self.gates.iter().enumerate() {
            let below = g.args.iter().map(|&a| d[a]).max().unwrap_or(0);
            d[id] = below + g.kind.is_modal() as usize;
        }
        d
    }

    pub fn modal_gate_count(&self) -> usize {
        self.gates.iter().filter(|g| g.kind.is_modal()).count()
    }

    /// Propositional gates as functions: `Fn` tables plus constants as 0-ary tables.
    pub fn base(&self) -> Base {
        let mut b = Base::empty();
        for g in &self.gates {
            match &g.kind {
                GateKind::Fn(f) => b.insert_function(f.clone()),
                GateKind::Const(c) => b.insert_function(FunctionTable::constant(*c)),
                _ => {}
            }
        }
        b
    }

    pub fn has_box(&self) -> bool {
        self.gates.iter().any(|g| matches!(g.kind, GateKind::Box(_)))
    }

    pub fn has_dia(&self) -> bool {
        self.gates.iter().any(|g| matches!(g.kind, GateKind::Dia(_)))
    }

    /// Gate names used by the netlist serialization, in emission order.
    fn emission_order(&self) -> Vec<GateId> {
        let mut order = Vec::new();
        let mut seen = vec![false; self.gates.len()];
        let mut stack = vec![(self.output, 0usize)];
        while let Some((id, next)) = stack.pop() {
            if next == 0 && seen[id] {
                continue;
            }
            let args = &self.gates[id].args;
            if next < args.len() {
                stack.push((id, next + 1));
                if !seen[args[next]] {
                    stack.push((args[next], 0));
                }
            } else if !seen[id] {
                seen[id] = true;
                order.push(id);
            }
        }
        order
    }

    /// Netlist text: reachable gates in depth-first post-order from the
    /// output, named `g1, g2, …`. Structurally equal circuits print equally.
    pub fn to_netlist(&self) -> String {
        let order = self.emission_order();
        let mut name = HashMap::new();
        let mut out = String::new();
        for (n, &id) in order.iter().enumerate() {
            name.insert(id, format!("g{}", n + 1));
            let g = &self.gates[id];
            let line = match &g.kind {
                GateKind::Var(v) => format!("VAR {v}"),
                GateKind::Const(c) => format!("CONST {}", *c as u8),
                GateKind::Box(i) => format!("BOX {i} {}", name[&g.args[0]]),
                GateKind::Dia(i) => format!("DIA {i} {}", name[&g.args[0]]),
                GateKind::Fn(f) => {
                    let mut s = f.name().to_string();
                    for a in &g.args {
                        s.push(' ');
                        s.push_str(&name[a]);
                    }
                    s
                }
            };
            out.push_str(&format!("g{} = {line}\n", n + 1));
        }
        out.push_str(&format!("OUTPUT {}\n", name[&self.output]));
        out
    }

    /// The reachable part re-indexed in netlist emission order.
    pub fn normalized(&self) -> ModalCircuit {
        let order = self.emission_order();
        let mut map = vec![usize::MAX; self.gates.len()];
        let mut gates = Vec::with_capacity(order.len());
        for &id in &order {
            map[id] = gates.len();
            let g = &self.gates[id];
            gates.push(Gate { kind: g.kind.clone(), args: g.args.iter().map(|&a| map[a]).collect() });
        }
        ModalCircuit { gates, output: map[self.output], k: self.k }
    }
}

impl fmt::Display for ModalCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_netlist())
    }
}

/// Incremental construction of circuits in topological order.
#[derive(Default)]
pub struct CircuitBuilder {
    gates: Vec<Gate>,
    k: u32,
    memo: Option<HashMap<Gate, GateId>>,
}

impl CircuitBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// A builder that returns the existing gate for a repeated label and argument list.
    pub fn hash_consed() -> Self {
        CircuitBuilder { memo: Some(HashMap::new()), ..Self::default() }
    }

    pub fn with_k(mut self, k: u32) -> Self {
        self.k = k;
        self
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn gate(&mut self, kind: GateKind, args: Vec<GateId>) -> GateId {
        assert_eq!(kind.arity(), args.len(), "arity of {kind:?}");
        assert!(args.iter().all(|&a| a < self.gates.len()), "argument out of range");
        let kind = match kind {
            GateKind::Fn(f) if f.arity() == 0 => GateKind::Const(f.value(0)),
            other => other,
        };
        if let GateKind::Box(i) | GateKind::Dia(i) = kind {
            assert!(i >= 1, "modality indices start at 1");
            self.k = self.k.max(i);
        }
        let g = Gate { kind, args };
        if let Some(memo) = &self.memo {
            if let Some(&id) = memo.get(&g) {
                return id;
            }
        }
        let id = self.gates.len();
        if let Some(memo) = &mut self.memo {
            memo.insert(g.clone(), id);
        }
        self.gates.push(g);
        id
    }

    pub fn var(&mut self, name: &str) -> GateId {
        self.gate(GateKind::Var(name.to_string()), vec![])
    }

    pub fn constant(&mut self, value: bool) -> GateId {
        self.gate(GateKind::Const(value), vec![])
    }

    pub fn apply(&mut self, f: &FunctionTable, args: Vec<GateId>) -> GateId {
        self.gate(GateKind::Fn(f.clone()), args)
    }

    pub fn boxed(&mut self, i: u32, a: GateId) -> GateId {
        self.gate(GateKind::Box(i), vec![a])
    }

    pub fn dia(&mut self, i: u32, a: GateId) -> GateId {
        self.gate(GateKind::Dia(i), vec![a])
    }

    pub fn and(&mut self, a: GateId, b: GateId) -> GateId {
        self.apply(&FunctionTable::and(), vec![a, b])
    }

    pub fn or(&mut self, a: GateId, b: GateId) -> GateId {
        self.apply(&FunctionTable::or(), vec![a, b])
    }

    pub fn not(&mut self, a: GateId) -> GateId {
        self.apply(&FunctionTable::not(), vec![a])
    }

    pub fn xor(&mut self, a: GateId, b: GateId) -> GateId {
        self.apply(&FunctionTable::xor(), vec![a, b])
    }

    /// Copies the gates of `c` and returns the id of its output.
    pub fn embed(&mut self, c: &ModalCircuit) -> GateId {
        let mut map = Vec::with_capacity(c.size());
        for g in c.gates() {
            let args = g.args.iter().map(|&a| map[a]).collect();
            map.push(self.gate(g.kind.clone(), args));
        }
        self.k = self.k.max(c.k());
        map[c.output()]
    }

    pub fn finish(self, output: GateId) -> ModalCircuit {
        assert!(output < self.gates.len(), "output out of range");
        ModalCircuit { gates: self.gates, output, k: self.k }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dia_x() -> ModalCircuit {
        let mut b = CircuitBuilder::new();
        let x = b.var("x");
        let d = b.dia(1, x);
        b.finish(d)
    }

    #[test]
    fn depth_examples() {
        let mut b = CircuitBuilder::new();
        let x = b.var("x");
        let y = b.var("y");
        assert_eq!(b.gates.len(), 2);
        let p = b.and(x, y);
        assert_eq!(b.finish(p).modal_depth(), 0);

        let mut b = CircuitBuilder::new();
        let x = b.var("x");
        let bx = b.boxed(2, x);
        let d = b.dia(1, bx);
        assert_eq!(b.finish(d).modal_depth(), 2);

        let mut b = CircuitBuilder::new();
        let x = b.var("x");
        let y = b.var("y");
        let dx = b.dia(1, x);
        let by = b.boxed(1, y);
        let bby = b.boxed(1, by);
        let o = b.xor(dx, bby);
        assert_eq!(b.finish(o).modal_depth(), 2);
    }

    #[test]
    fn validation() {
        let g = vec![Gate { kind: GateKind::Fn(FunctionTable::and()), args: vec![0, 0] }];
        assert!(matches!(ModalCircuit::new(g, 0, 0), Err(IrError::Order(_))));
        let g = vec![Gate { kind: GateKind::Var("x".into()), args: vec![] }, Gate { kind: GateKind::Dia(2), args: vec![0] }];
        assert!(matches!(ModalCircuit::new(g.clone(), 1, 1), Err(IrError::ModalityIndex { .. })));
        assert!(ModalCircuit::new(g, 1, 2).is_ok());
    }

    #[test]
    fn netlist_text() {
        assert_eq!(dia_x().to_netlist(), "g1 = VAR x\ng2 = DIA 1 g1\nOUTPUT g2\n");
    }

    #[test]
    fn hash_consing_and_pruning() {
        let mut b = CircuitBuilder::hash_consed();
        let x = b.var("x");
        let x2 = b.var("x");
        assert_eq!(x, x2);
        let junk = b.var("junk");
        let d = b.dia(1, x);
        let c = b.finish(d);
        assert_eq!(c.size(), 3);
        assert!(!c.is_tree());
        let p = c.pruned();
        assert_eq!(p.size(), 2);
        assert!(p.is_tree());
        let _ = junk;
    }

    #[test]
    fn shared_gate_is_not_a_tree() {
        let mut b = CircuitBuilder::new();
        let x = b.var("x");
        let a = b.and(x, x);
        let c = b.finish(a);
        assert!(!c.is_tree());
        assert_eq!(c.to_netlist(), "g1 = VAR x\ng2 = and g1 g1\nOUTPUT g2\n");
    }
}
