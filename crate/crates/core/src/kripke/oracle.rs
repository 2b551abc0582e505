//! Bounded brute-force satisfiability, the reference every engine is tested against.
//!
//! For K and KD the search is complete: a circuit of modal depth `d` is
//! satisfiable iff it holds at the root of a model whose worlds are layered by
//! height `d, d-1, …, 0`, where a world of height `h` only needs correct values
//! for the gates its parent looks at. The search explores such models top-down
//! with memoized per-height queries. Other frame classes enumerate explicit
//! models up to `max_worlds` worlds.

use std::collections::HashMap;

use super::model::{frame_in_class, FrameClass, KripkeModel, Witness};
use crate::ir::{CircuitBuilder, GateId, GateKind, ModalCircuit};

/// Environment variable overriding [`Bounds::max_worlds`].
pub const BOUND_WORLDS_ENV: &str = "MODSAT_BOUND_WORLDS";

/// Resource limits for the oracle. Exceeding any of them yields `Unknown`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Largest explicit model tried for T, K4, S4 and S5.
    pub max_worlds: usize,
    /// Largest variable count for explicit enumeration.
    pub max_vars: usize,
    /// Rough cap on gate evaluations.
    pub max_work: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_worlds: 3, max_vars: 16, max_work: 200_000_000 }
    }
}

impl Bounds {
    /// Defaults, with `max_worlds` taken from `MODSAT_BOUND_WORLDS` when set.
    pub fn from_env() -> Self {
        let mut b = Bounds::default();
        if let Some(n) = std::env::var(BOUND_WORLDS_ENV).ok().and_then(|s| s.trim().parse().ok()) {
            b.max_worlds = n;
        }
        b
    }

    pub fn with_max_worlds(mut self, n: usize) -> Self {
        self.max_worlds = n;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleSat {
    Sat(Witness),
    Unsat,
    Unknown(String),
}

impl OracleSat {
    pub fn is_sat(&self) -> bool {
        matches!(self, OracleSat::Sat(_))
    }

    /// `Some(sat)` when definitive.
    pub fn decided(&self) -> Option<bool> {
        match self {
            OracleSat::Sat(_) => Some(true),
            OracleSat::Unsat => Some(false),
            OracleSat::Unknown(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleValid {
    Valid,
    Falsifiable(Witness),
    Unknown(String),
}

impl OracleValid {
    pub fn decided(&self) -> Option<bool> {
        match self {
            OracleValid::Valid => Some(true),
            OracleValid::Falsifiable(_) => Some(false),
            OracleValid::Unknown(_) => None,
        }
    }
}

/// Is `c` satisfiable at some world of some `class` model?
pub fn brute_force_sat(c: &ModalCircuit, class: FrameClass, bounds: &Bounds) -> OracleSat {
    // shared subformulas are searched once
    let mut b = CircuitBuilder::hash_consed().with_k(c.k());
    let out = b.embed(&c.pruned());
    let p = b.finish(out).pruned();
    let res = match class {
        FrameClass::K | FrameClass::KD => layered_search(&p, class == FrameClass::KD, bounds),
        _ => explicit_search(&p, class, bounds),
    };
    if let OracleSat::Sat(w) = &res {
        if !w.verifies(c, class) {
            return OracleSat::Unknown("internal error: witness failed re-verification".into());
        }
    }
    res
}

/// Is `c` true at every world of every `class` model?
pub fn brute_force_valid(c: &ModalCircuit, class: FrameClass, bounds: &Bounds) -> OracleValid {
    match brute_force_sat(&negate(c), class, bounds) {
        OracleSat::Sat(w) => OracleValid::Falsifiable(w),
        OracleSat::Unsat => OracleValid::Valid,
        OracleSat::Unknown(why) => OracleValid::Unknown(why),
    }
}

/// `Some(true)` iff `c1 ≡ c2` over `class`, decided as unsatisfiability of `c1 ⊕ c2`.
pub fn oracle_equivalent(c1: &ModalCircuit, c2: &ModalCircuit, class: FrameClass, bounds: &Bounds) -> Option<bool> {
    brute_force_sat(&xor_of(c1, c2), class, bounds).decided().map(|sat| !sat)
}

pub(crate) fn negate(c: &ModalCircuit) -> ModalCircuit {
    let mut b = CircuitBuilder::new().with_k(c.k());
    let o = b.embed(c);
    let n = b.not(o);
    b.finish(n)
}

pub(crate) fn xor_of(c1: &ModalCircuit, c2: &ModalCircuit) -> ModalCircuit {
    let mut b = CircuitBuilder::new().with_k(c1.k().max(c2.k()));
    let a = b.embed(c1);
    let d = b.embed(c2);
    let x = b.xor(a, d);
    b.finish(x)
}

// ---------------------------------------------------------------- K / KD

const UNK: u8 = 2;

struct ModalSlot {
    rel: u32,
    is_box: bool,
    /// Position of the argument inside the previous level's `needed`.
    pos: usize,
}

enum Decision {
    Var(usize),
    Modal(usize),
}

struct Level {
    gates: Vec<GateId>,
    /// Distinct variable names read at this level.
    vars: Vec<String>,
    /// For variable gates: index into `vars`.
    var_slot: HashMap<GateId, usize>,
    needed: Vec<GateId>,
    modal: Vec<ModalSlot>,
    modal_slot: HashMap<GateId, usize>,
    /// Relations with a modal gate at this level.
    rels: Vec<u32>,
    decisions: Vec<Decision>,
}

struct World {
    assign: Vec<bool>,
    succ: Vec<(u32, usize)>,
}

fn plan_levels(c: &ModalCircuit) -> Option<Vec<Level>> {
    let md = c.depths()[c.output()];
    let mut levels: Vec<Level> = Vec::with_capacity(md + 1);
    let mut needed = vec![c.output()];
    for _h in (0..=md).rev() {
        if needed.len() > 128 {
            return None;
        }
        let mut mark = vec![false; c.size()];
        let mut stack = needed.clone();
        while let Some(g) = stack.pop() {
            if std::mem::replace(&mut mark[g], true) {
                continue;
            }
            if !c.gate(g).kind.is_modal() {
                stack.extend(c.gate(g).args.iter().copied());
            }
        }
        let gates: Vec<GateId> = (0..c.size()).filter(|&g| mark[g]).collect();
        let mut next: Vec<GateId> =
            gates.iter().filter(|&&g| c.gate(g).kind.is_modal()).map(|&g| c.gate(g).args[0]).collect();
        next.sort_unstable();
        next.dedup();
        let mut vars: Vec<String> = Vec::new();
        let mut var_slot = HashMap::new();
        let mut modal = Vec::new();
        let mut modal_slot = HashMap::new();
        let mut rels: Vec<u32> = Vec::new();
        let mut decisions = Vec::new();
        for &g in &gates {
            match &c.gate(g).kind {
                GateKind::Var(name) => {
                    let j = match vars.iter().position(|v| v == name) {
                        Some(j) => j,
                        None => {
                            vars.push(name.clone());
                            decisions.push(Decision::Var(vars.len() - 1));
                            vars.len() - 1
                        }
                    };
                    var_slot.insert(g, j);
                }
                GateKind::Box(i) | GateKind::Dia(i) => {
                    let pos = next.binary_search(&c.gate(g).args[0]).expect("collected");
                    modal_slot.insert(g, modal.len());
                    decisions.push(Decision::Modal(modal.len()));
                    modal.push(ModalSlot { rel: *i, is_box: matches!(c.gate(g).kind, GateKind::Box(_)), pos });
                    if !rels.contains(i) {
                        rels.push(*i);
                    }
                }
                _ => {}
            }
        }
        levels.push(Level {
            gates,
            vars,
            var_slot,
            needed: std::mem::replace(&mut needed, next),
            modal,
            modal_slot,
            rels,
            decisions,
        });
    }
    levels.reverse();
    Some(levels)
}

/// Demand-driven search over layered tree models. A query asks for a world of
/// height `h` whose `needed` gates take prescribed values on the `care` bits.
/// Its local choices are enumerated by backtracking; every ◇-true or □-false
/// gate then becomes a query one level down, carrying the constraints that all
/// successors must meet. Answers are memoized, so equal queries share a world.
struct Search<'a> {
    c: &'a ModalCircuit,
    levels: Vec<Level>,
    serial: bool,
    memo: HashMap<(usize, u128, u128), Option<usize>>,
    worlds: Vec<World>,
    scratch: Vec<u8>,
    work: u64,
    max_work: u64,
    exhausted: bool,
}

impl Search<'_> {
    fn query(&mut self, h: usize, care: u128, val: u128) -> Option<usize> {
        if let Some(&r) = self.memo.get(&(h, care, val)) {
            return r;
        }
        let mut assign = vec![UNK; self.levels[h].vars.len()];
        let mut modal = vec![UNK; self.levels[h].modal.len()];
        let r = self.dfs(h, care, val, 0, &mut assign, &mut modal);
        if !self.exhausted {
            self.memo.insert((h, care, val), r);
        }
        r
    }

    fn dfs(&mut self, h: usize, care: u128, val: u128, k: usize, assign: &mut [u8], modal: &mut [u8]) -> Option<usize> {
        self.work += self.levels[h].gates.len() as u64 + 1;
        if self.work > self.max_work {
            self.exhausted = true;
        }
        if self.exhausted || !self.consistent(h, care, val, assign, modal) {
            return None;
        }
        if k == self.levels[h].decisions.len() {
            return self.close(h, assign, modal);
        }
        for b in [0u8, 1] {
            let r = match self.levels[h].decisions[k] {
                Decision::Var(j) => {
                    assign[j] = b;
                    self.dfs(h, care, val, k + 1, assign, modal)
                }
                Decision::Modal(j) => {
                    modal[j] = b;
                    self.dfs(h, care, val, k + 1, assign, modal)
                }
            };
            if r.is_some() || self.exhausted {
                return r;
            }
        }
        match self.levels[h].decisions[k] {
            Decision::Var(j) => assign[j] = UNK,
            Decision::Modal(j) => modal[j] = UNK,
        }
        None
    }

    /// Three-valued forward evaluation; `false` if a cared-for gate is already wrong.
    fn consistent(&mut self, h: usize, care: u128, val: u128, assign: &[u8], modal: &[u8]) -> bool {
        let lv = &self.levels[h];
        let v = &mut self.scratch;
        for &g in &lv.gates {
            let gate = self.c.gate(g);
            v[g] = match &gate.kind {
                GateKind::Var(_) => assign[lv.var_slot[&g]],
                GateKind::Const(b) => *b as u8,
                GateKind::Box(_) | GateKind::Dia(_) => modal[lv.modal_slot[&g]],
                GateKind::Fn(f) => {
                    let unknown: Vec<usize> =
                        gate.args.iter().enumerate().filter(|(_, &a)| v[a] == UNK).map(|(j, _)| j).collect();
                    if unknown.len() > 4 {
                        UNK
                    } else {
                        let mut seen = [false; 2];
                        for fill in 0u32..(1 << unknown.len()) {
                            let out = f.eval_unchecked(gate.args.iter().enumerate().map(|(j, &a)| {
                                match unknown.iter().position(|&u| u == j) {
                                    Some(t) => (fill >> t) & 1 == 1,
                                    None => v[a] == 1,
                                }
                            }));
                            seen[out as usize] = true;
                        }
                        match seen {
                            [true, true] => UNK,
                            [_, one] => one as u8,
                        }
                    }
                }
            };
        }
        lv.needed.iter().enumerate().all(|(j, &g)| {
            (care >> j) & 1 == 0 || v[g] == UNK || v[g] == ((val >> j) & 1) as u8
        })
    }

    fn close(&mut self, h: usize, assign: &[u8], modal: &[u8]) -> Option<usize> {
        let lv = &self.levels[h];
        let rels = lv.rels.clone();
        let mut every: Vec<(u128, u128, bool)> = vec![(0, 0, false); rels.len()];
        let mut demands: Vec<(usize, usize, bool)> = Vec::new();
        for (s, m) in lv.modal.iter().enumerate() {
            let r = rels.iter().position(|&i| i == m.rel).expect("listed");
            let on = modal[s] == 1;
            match (m.is_box, on) {
                (true, false) => demands.push((r, m.pos, false)),
                (false, true) => demands.push((r, m.pos, true)),
                (is_box, _) => {
                    let want = is_box;
                    let e = &mut every[r];
                    if (e.0 >> m.pos) & 1 == 1 && ((e.1 >> m.pos) & 1 == 1) != want {
                        e.2 = true;
                    }
                    e.0 |= 1 << m.pos;
                    e.1 |= (want as u128) << m.pos;
                }
            }
        }
        demands.sort_unstable();
        demands.dedup();
        let mut succ = Vec::new();
        for (r, &(care, val, conflict)) in every.iter().enumerate() {
            let mine: Vec<&(usize, usize, bool)> = demands.iter().filter(|d| d.0 == r).collect();
            if conflict && (self.serial || !mine.is_empty()) {
                return None;
            }
            for &&(_, pos, want) in &mine {
                if (care >> pos) & 1 == 1 && ((val >> pos) & 1 == 1) != want {
                    return None;
                }
                let w = self.query(h - 1, care | (1 << pos), val | ((want as u128) << pos))?;
                succ.push((rels[r], w));
            }
            if self.serial && mine.is_empty() {
                let w = self.query(h - 1, care, val)?;
                succ.push((rels[r], w));
            }
        }
        succ.sort_unstable();
        succ.dedup();
        self.worlds.push(World { assign: assign.iter().map(|&b| b == 1).collect(), succ });
        Some(self.worlds.len() - 1)
    }

    fn build(&self, idx: usize, h: usize, model: &mut KripkeModel, ids: &mut HashMap<usize, usize>) -> usize {
        if let Some(&w) = ids.get(&idx) {
            return w;
        }
        let w = model.add_world();
        ids.insert(idx, w);
        let world = &self.worlds[idx];
        for (name, _) in self.levels[h].vars.iter().zip(&world.assign).filter(|(_, &b)| b) {
            model.set_true(name, w);
        }
        for &(i, s) in &world.succ {
            let v = self.build(s, h - 1, model, ids);
            model.add_edge(i, w, v);
        }
        if self.serial {
            for i in 1..=self.c.k() {
                if model.successors(i, w).next().is_none() {
                    model.add_edge(i, w, w);
                }
            }
        }
        w
    }
}

fn layered_search(c: &ModalCircuit, serial: bool, bounds: &Bounds) -> OracleSat {
    let Some(levels) = plan_levels(c) else {
        return OracleSat::Unknown("too many interface gates for the layered search".into());
    };
    let top = levels.len() - 1;
    let mut s = Search {
        c,
        levels,
        serial,
        memo: HashMap::new(),
        worlds: Vec::new(),
        scratch: vec![UNK; c.size()],
        work: 0,
        max_work: bounds.max_work,
        exhausted: false,
    };
    let root = s.query(top, 1, 1);
    if s.exhausted {
        return OracleSat::Unknown("work bound exceeded".into());
    }
    let Some(root) = root else {
        return OracleSat::Unsat;
    };
    let mut model = KripkeModel::new(0, c.k());
    let root = s.build(root, top, &mut model, &mut HashMap::new());
    OracleSat::Sat(Witness { model, root })
}

// ---------------------------------------------------------------- explicit

/// Successor masks of every relation on `n` worlds allowed by `class`.
fn relations_for(class: FrameClass, n: usize, cap: u64) -> Option<Vec<Vec<u64>>> {
    let free: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).filter(|&(u, v)| !(class.reflexive() && u == v)).collect();
    if free.len() >= 63 || (1u64 << free.len()) > cap {
        return None;
    }
    let mut out = Vec::new();
    for bits in 0u64..(1 << free.len()) {
        let mut succ = vec![0u64; n];
        if class.reflexive() {
            for (u, s) in succ.iter_mut().enumerate() {
                *s |= 1 << u;
            }
        }
        for (b, &(u, v)) in free.iter().enumerate() {
            if (bits >> b) & 1 == 1 {
                succ[u] |= 1 << v;
            }
        }
        let ok = (!class.serial() || succ.iter().all(|&s| s != 0))
            && (!class.symmetric() || (0..n).all(|u| (0..n).all(|v| (succ[u] >> v) & 1 == 0 || (succ[v] >> u) & 1 == 1)))
            && (!class.transitive()
                || (0..n).all(|u| (0..n).all(|v| (succ[u] >> v) & 1 == 0 || succ[v] & !succ[u] == 0)));
        if ok {
            out.push(succ);
        }
    }
    Some(out)
}

fn explicit_search(c: &ModalCircuit, class: FrameClass, bounds: &Bounds) -> OracleSat {
    let vars: Vec<String> = c.variables().into_iter().collect();
    if vars.len() > bounds.max_vars {
        return OracleSat::Unknown(format!("{} variables exceed the bound of {}", vars.len(), bounds.max_vars));
    }
    let var_index: HashMap<&str, usize> = vars.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let k = c.k() as usize;
    let md = c.depths()[c.output()];
    let mut work: u64 = 0;
    for n in 1..=bounds.max_worlds.max(1) {
        if n > 8 || n * vars.len() > 48 {
            return OracleSat::Unknown("model bound too large for explicit enumeration".into());
        }
        let Some(cands) = relations_for(class, n, bounds.max_work) else {
            return OracleSat::Unknown("model bound too large for explicit enumeration".into());
        };
        let tuples: u64 = (cands.len() as u64).saturating_pow(k as u32);
        let vals: u64 = 1 << (n * vars.len());
        work = work.saturating_add(tuples.saturating_mul(vals).saturating_mul((c.size() * n) as u64));
        if work > bounds.max_work {
            return OracleSat::Unknown("work bound exceeded".into());
        }
        let full = (1u64 << n) - 1;
        let mut idx = vec![0usize; k];
        let mut mask = vec![0u64; c.size()];
        loop {
            for a in 0..vals {
                for (g, gate) in c.gates().iter().enumerate() {
                    mask[g] = match &gate.kind {
                        GateKind::Var(v) => (a >> (var_index[v.as_str()] * n)) & full,
                        GateKind::Const(b) => full * (*b as u64),
                        GateKind::Fn(f) => (0..n).fold(0, |m, w| {
                            m | ((f.eval_unchecked(gate.args.iter().map(|&x| (mask[x] >> w) & 1 == 1)) as u64) << w)
                        }),
                        GateKind::Box(i) | GateKind::Dia(i) => {
                            let succ = &cands[idx[*i as usize - 1]];
                            let arg = mask[gate.args[0]];
                            let is_box = matches!(gate.kind, GateKind::Box(_));
                            (0..n).fold(0, |m, w| {
                                let t = if is_box { succ[w] & !arg == 0 } else { succ[w] & arg != 0 };
                                m | ((t as u64) << w)
                            })
                        }
                    };
                }
                let out = mask[c.output()];
                if out != 0 {
                    let mut model = KripkeModel::new(n, c.k());
                    for (i, &ci) in idx.iter().enumerate() {
                        for (u, &s) in cands[ci].iter().enumerate() {
                            for v in 0..n {
                                if (s >> v) & 1 == 1 {
                                    model.add_edge(i as u32 + 1, u, v);
                                }
                            }
                        }
                    }
                    for (j, v) in vars.iter().enumerate() {
                        for w in 0..n {
                            if (a >> (j * n + w)) & 1 == 1 {
                                model.set_true(v, w);
                            }
                        }
                    }
                    debug_assert!(frame_in_class(&model, class));
                    return OracleSat::Sat(Witness { model, root: out.trailing_zeros() as usize });
                }
            }
            let mut r = 0;
            loop {
                if r == k {
                    break;
                }
                idx[r] += 1;
                if idx[r] < cands.len() {
                    break;
                }
                idx[r] = 0;
                r += 1;
            }
            if r == k {
                break;
            }
        }
        if md == 0 {
            // the reflexive singleton belongs to every class
            return OracleSat::Unsat;
        }
    }
    if class == FrameClass::S5 && k == 1 && bounds.max_worlds > c.modal_gate_count() {
        return OracleSat::Unsat;
    }
    OracleSat::Unknown(format!("no {class} model with at most {} worlds", bounds.max_worlds))
}

/// Explicit enumeration for any class, including K and KD. Used to cross-check
/// the layered search.
pub fn explicit_sat(c: &ModalCircuit, class: FrameClass, bounds: &Bounds) -> OracleSat {
    explicit_search(&c.pruned(), class, bounds)
}
