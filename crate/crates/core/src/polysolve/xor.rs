//! Canonical forms for circuits over affine functions with ◇ (and □).
//!
//! Every gate is turned into a linear form `c ⊕ a_1 ⊕ … ⊕ a_m` over atoms,
//! where an atom is a variable or `◇_i` applied to an already canonical form.
//! Atoms are hash-consed, so `a ⊕ a` cancels by identity. A form is emitted
//! as one parity gate over its terms in a fixed structural order.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use super::Verdict;
use crate::boolfn::{affine_decomposition, FunctionTable};
use crate::error::SolveError;
use crate::ir::{CircuitBuilder, GateId, GateKind, ModalCircuit};
use crate::kripke::{brute_force_sat, Bounds, FrameClass, OracleSat};

const NAME: &str = "xor";

/// Parity gates wider than this are split.
const MAX_PARITY: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Node {
    Var(String),
    Const(bool),
    Dia(u32, usize),
    Xor(Vec<usize>),
}

impl Node {
    fn rank(&self) -> u8 {
        match self {
            Node::Var(_) => 0,
            Node::Const(_) => 1,
            Node::Dia(..) => 2,
            Node::Xor(_) => 3,
        }
    }
}

#[derive(Clone, Default)]
struct Lin {
    one: bool,
    atoms: BTreeSet<usize>,
}

impl Lin {
    fn add(&mut self, other: &Lin) {
        self.one ^= other.one;
        for &a in &other.atoms {
            if !self.atoms.remove(&a) {
                self.atoms.insert(a);
            }
        }
    }
}

#[derive(Default)]
struct Store {
    nodes: Vec<Node>,
    index: HashMap<Node, usize>,
    order: HashMap<(usize, usize), Ordering>,
}

impl Store {
    fn intern(&mut self, n: Node) -> usize {
        if let Some(&id) = self.index.get(&n) {
            return id;
        }
        self.nodes.push(n.clone());
        self.index.insert(n, self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    /// Structural order: variables by name, then constants, then ◇ by
    /// modality and argument, then sums by their term lists.
    fn cmp(&mut self, a: usize, b: usize) -> Ordering {
        if a == b {
            return Ordering::Equal;
        }
        if let Some(&o) = self.order.get(&(a, b)) {
            return o;
        }
        let (na, nb) = (self.nodes[a].clone(), self.nodes[b].clone());
        let o = match (&na, &nb) {
            (Node::Var(x), Node::Var(y)) => x.cmp(y),
            (Node::Const(x), Node::Const(y)) => x.cmp(y),
            (Node::Dia(i, x), Node::Dia(j, y)) => i.cmp(j).then_with(|| self.cmp(*x, *y)),
            (Node::Xor(xs), Node::Xor(ys)) => {
                let mut o = Ordering::Equal;
                for (&x, &y) in xs.iter().zip(ys) {
                    o = self.cmp(x, y);
                    if o != Ordering::Equal {
                        break;
                    }
                }
                o.then(xs.len().cmp(&ys.len()))
            }
            _ => na.rank().cmp(&nb.rank()),
        };
        self.order.insert((a, b), o);
        self.order.insert((b, a), o.reverse());
        o
    }

    fn node_of(&mut self, l: &Lin) -> usize {
        let mut terms: Vec<usize> = l.atoms.iter().copied().collect();
        if l.one {
            terms.push(self.intern(Node::Const(true)));
        }
        match terms.len() {
            0 => self.intern(Node::Const(false)),
            1 => terms[0],
            _ => {
                terms.sort_by(|&a, &b| self.cmp(a, b));
                self.intern(Node::Xor(terms))
            }
        }
    }

    fn atom(&mut self, n: Node) -> Lin {
        Lin { one: false, atoms: BTreeSet::from([self.intern(n)]) }
    }

    fn dia(&mut self, i: u32, arg: &Lin, serial: bool) -> Lin {
        if arg.atoms.is_empty() && (!arg.one || serial) {
            // ◇0 = 0 always, ◇1 = 1 on serial frames
            return Lin { one: arg.one, atoms: BTreeSet::new() };
        }
        let child = self.node_of(arg);
        self.atom(Node::Dia(i, child))
    }

    fn normalize(&mut self, c: &ModalCircuit, class: FrameClass) -> Result<usize, SolveError> {
        let serial = match class {
            FrameClass::K => false,
            FrameClass::KD => true,
            other => return Err(SolveError::UnsupportedFrame(other.to_string())),
        };
        let c = c.pruned();
        let mut lin: Vec<Lin> = Vec::with_capacity(c.size());
        for gate in c.gates() {
            let l = match &gate.kind {
                GateKind::Var(v) => self.atom(Node::Var(v.clone())),
                GateKind::Const(b) => Lin { one: *b, atoms: BTreeSet::new() },
                GateKind::Fn(f) => {
                    let Some((one, coeffs)) = affine_decomposition(f) else {
                        return Err(SolveError::Base(format!("{} is not affine", f.name())));
                    };
                    let mut l = Lin { one, atoms: BTreeSet::new() };
                    for j in coeffs {
                        l.add(&lin[gate.args[j]]);
                    }
                    l
                }
                GateKind::Dia(i) => self.dia(*i, &lin[gate.args[0]], serial),
                GateKind::Box(i) => {
                    // □ψ = 1 ⊕ ◇(1 ⊕ ψ)
                    let mut neg = lin[gate.args[0]].clone();
                    neg.one = !neg.one;
                    let mut l = self.dia(*i, &neg, serial);
                    l.one = !l.one;
                    l
                }
            };
            lin.push(l);
        }
        Ok(self.node_of(&lin[c.output()]))
    }

    fn emit(&self, n: usize, b: &mut CircuitBuilder, memo: &mut Option<HashMap<usize, GateId>>) -> GateId {
        if let Some(&g) = memo.as_ref().and_then(|m| m.get(&n)) {
            return g;
        }
        let g = match &self.nodes[n] {
            Node::Var(v) => b.var(v),
            Node::Const(v) => b.constant(*v),
            Node::Dia(i, child) => {
                let a = self.emit(*child, b, memo);
                b.dia(*i, a)
            }
            Node::Xor(terms) => {
                let args: Vec<GateId> = terms.iter().map(|&t| self.emit(t, b, memo)).collect();
                parity_gate(b, &args)
            }
        };
        if let Some(m) = memo {
            m.insert(n, g);
        }
        g
    }
}

fn parity_gate(b: &mut CircuitBuilder, args: &[GateId]) -> GateId {
    if args.len() <= MAX_PARITY {
        return b.apply(&FunctionTable::parity(args.len()), args.to_vec());
    }
    let rest = parity_gate(b, &args[MAX_PARITY - 1..]);
    let mut head = args[..MAX_PARITY - 1].to_vec();
    head.push(rest);
    b.apply(&FunctionTable::parity(MAX_PARITY), head)
}

fn emit_circuit(store: &Store, root: usize, k: u32, shared: bool) -> ModalCircuit {
    let (mut b, mut memo) = if shared {
        (CircuitBuilder::hash_consed().with_k(k), Some(HashMap::new()))
    } else {
        (CircuitBuilder::new().with_k(k), None)
    };
    let out = store.emit(root, &mut b, &mut memo);
    b.finish(out).normalized()
}

/// The canonical form of `c` over K or KD.
///
/// Functions must be affine; □ is rewritten through ◇. Sums are written as
/// parity gates (`xor`, `xor3`, …). Formula inputs give formula outputs;
/// otherwise equal subcircuits are shared.
pub fn xor_normalize(c: &ModalCircuit, class: FrameClass) -> Result<ModalCircuit, SolveError> {
    let mut store = Store::default();
    let root = store.normalize(c, class)?;
    Ok(emit_circuit(&store, root, c.k(), !c.pruned().is_tree()))
}

/// Same as [`xor_normalize`]: the canonical form is also a smallest equivalent circuit.
pub fn xor_minimize(c: &ModalCircuit, class: FrameClass) -> Result<ModalCircuit, SolveError> {
    xor_normalize(c, class)
}

/// Satisfiable iff the canonical form is not the constant 0.
///
/// The decision is exact; a witness is attached when the bounded oracle finds one.
pub fn xor_sat(c: &ModalCircuit, class: FrameClass) -> Result<Verdict, SolveError> {
    let mut store = Store::default();
    let root = store.normalize(c, class)?;
    if store.nodes[root] == Node::Const(false) {
        return Ok(Verdict::sat(NAME, false, None));
    }
    let witness = match brute_force_sat(c, class, &Bounds::default()) {
        OracleSat::Sat(w) => Some(w),
        _ => None,
    };
    Ok(Verdict::sat(NAME, true, witness))
}

/// Equivalence over K or KD by comparing canonical forms.
pub fn xor_equivalent(c1: &ModalCircuit, c2: &ModalCircuit, class: FrameClass) -> Result<bool, SolveError> {
    let mut store = Store::default();
    let a = store.normalize(c1, class)?;
    let b = store.normalize(c2, class)?;
    Ok(a == b)
}
