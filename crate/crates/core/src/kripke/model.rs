use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ModelError;
use crate::ir::{GateKind, ModalCircuit, ModalFormula};

/// Frame classes. `S5` frames have every relation an equivalence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FrameClass {
    K,
    KD,
    T,
    K4,
    S4,
    S5,
}

impl FrameClass {
    pub const ALL: [FrameClass; 6] = [FrameClass::K, FrameClass::KD, FrameClass::T, FrameClass::K4, FrameClass::S4, FrameClass::S5];

    pub fn name(self) -> &'static str {
        match self {
            FrameClass::K => "K",
            FrameClass::KD => "KD",
            FrameClass::T => "T",
            FrameClass::K4 => "K4",
            FrameClass::S4 => "S4",
            FrameClass::S5 => "S5",
        }
    }

    pub fn serial(self) -> bool {
        !matches!(self, FrameClass::K | FrameClass::K4)
    }

    pub fn reflexive(self) -> bool {
        matches!(self, FrameClass::T | FrameClass::S4 | FrameClass::S5)
    }

    pub fn transitive(self) -> bool {
        matches!(self, FrameClass::K4 | FrameClass::S4 | FrameClass::S5)
    }

    pub fn symmetric(self) -> bool {
        self == FrameClass::S5
    }
}

impl fmt::Display for FrameClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FrameClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FrameClass::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown frame class '{s}' (expected K, KD, T, K4, S4 or S5)"))
    }
}

/// A finite Kripke model over worlds `0..worlds` with relations `R_1..R_k`.
/// Variables absent from the valuation are false everywhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeModel {
    worlds: usize,
    relations: Vec<BTreeSet<(usize, usize)>>,
    valuation: BTreeMap<String, BTreeSet<usize>>,
}

impl KripkeModel {
    pub fn new(worlds: usize, k: u32) -> Self {
        KripkeModel { worlds, relations: vec![BTreeSet::new(); k as usize], valuation: BTreeMap::new() }
    }

    /// One world, related to itself by every relation, with `vars` true.
    pub fn reflexive_singleton<'a>(k: u32, vars: impl IntoIterator<Item = &'a String>) -> Self {
        let mut m = Self::irreflexive_singleton(k, vars);
        for i in 1..=k {
            m.add_edge(i, 0, 0);
        }
        m
    }

    /// One world with no successors, with `vars` true.
    pub fn irreflexive_singleton<'a>(k: u32, vars: impl IntoIterator<Item = &'a String>) -> Self {
        let mut m = KripkeModel::new(1, k);
        for v in vars {
            m.set_true(v, 0);
        }
        m
    }

    pub fn worlds(&self) -> usize {
        self.worlds
    }

    pub fn k(&self) -> u32 {
        self.relations.len() as u32
    }

    pub fn add_world(&mut self) -> usize {
        self.worlds += 1;
        self.worlds - 1
    }

    /// Adds `(u, v)` to `R_i`, growing the relation list if `i > k`.
    pub fn add_edge(&mut self, i: u32, u: usize, v: usize) {
        assert!(i >= 1 && u < self.worlds && v < self.worlds, "edge out of range");
        if self.relations.len() < i as usize {
            self.relations.resize(i as usize, BTreeSet::new());
        }
        self.relations[i as usize - 1].insert((u, v));
    }

    pub fn relation(&self, i: u32) -> Option<&BTreeSet<(usize, usize)>> {
        self.relations.get((i as usize).wrapping_sub(1))
    }

    pub fn successors(&self, i: u32, w: usize) -> impl Iterator<Item = usize> + '_ {
        self.relation(i).into_iter().flat_map(move |r| r.range((w, 0)..=(w, usize::MAX)).map(|&(_, v)| v))
    }

    pub fn set_true(&mut self, var: &str, w: usize) {
        assert!(w < self.worlds, "world out of range");
        self.valuation.entry(var.to_string()).or_default().insert(w);
    }

    pub fn is_true(&self, var: &str, w: usize) -> bool {
        self.valuation.get(var).is_some_and(|s| s.contains(&w))
    }

    pub fn valuation(&self) -> &BTreeMap<String, BTreeSet<usize>> {
        &self.valuation
    }

    /// Keeps only the listed variables in the valuation.
    pub fn restrict_valuation(&mut self, vars: &BTreeSet<String>) {
        self.valuation.retain(|v, _| vars.contains(v));
    }

    /// Flips every listed variable at every world.
    pub fn complement_valuation(&mut self, vars: &BTreeSet<String>) {
        for v in vars {
            let old = self.valuation.remove(v).unwrap_or_default();
            let new: BTreeSet<usize> = (0..self.worlds).filter(|w| !old.contains(w)).collect();
            if !new.is_empty() {
                self.valuation.insert(v.clone(), new);
            }
        }
    }

    fn adjacency(&self) -> Vec<Vec<Vec<usize>>> {
        self.relations
            .iter()
            .map(|r| {
                let mut adj = vec![Vec::new(); self.worlds];
                for &(u, v) in r {
                    adj[u].push(v);
                }
                adj
            })
            .collect()
    }

    /// Truth value of every gate of `c` at every world, gate-major.
    pub fn evaluate(&self, c: &ModalCircuit) -> Vec<Vec<bool>> {
        let adj = self.adjacency();
        let n = self.worlds;
        let mut val: Vec<Vec<bool>> = Vec::with_capacity(c.size());
        for g in c.gates() {
            let row: Vec<bool> = match &g.kind {
                GateKind::Var(v) => (0..n).map(|w| self.is_true(v, w)).collect(),
                GateKind::Const(b) => vec![*b; n],
                GateKind::Fn(f) => (0..n).map(|w| f.eval_unchecked(g.args.iter().map(|&a| val[a][w]))).collect(),
                GateKind::Box(i) => modal_row(&adj, *i, n, &val[g.args[0]], true),
                GateKind::Dia(i) => modal_row(&adj, *i, n, &val[g.args[0]], false),
            };
            val.push(row);
        }
        val
    }

    /// World-indexed truth set of a formula; `every` ranges over this model's relations.
    pub fn evaluate_formula(&self, phi: &ModalFormula) -> Vec<bool> {
        let adj = self.adjacency();
        self.eval_f(phi, &adj)
    }

    fn eval_f(&self, phi: &ModalFormula, adj: &[Vec<Vec<usize>>]) -> Vec<bool> {
        let n = self.worlds;
        match phi {
            ModalFormula::Var(v) => (0..n).map(|w| self.is_true(v, w)).collect(),
            ModalFormula::Const(b) => vec![*b; n],
            ModalFormula::Apply(f, xs) => {
                let rows: Vec<Vec<bool>> = xs.iter().map(|x| self.eval_f(x, adj)).collect();
                (0..n).map(|w| f.eval_unchecked(rows.iter().map(|r| r[w]))).collect()
            }
            ModalFormula::Box(i, a) => modal_row(adj, *i, n, &self.eval_f(a, adj), true),
            ModalFormula::Dia(i, a) => modal_row(adj, *i, n, &self.eval_f(a, adj), false),
            ModalFormula::Every(a) => {
                let inner = self.eval_f(a, adj);
                let mut acc = vec![true; n];
                for i in 1..=adj.len() as u32 {
                    let r = modal_row(adj, i, n, &inner, true);
                    acc.iter_mut().zip(r).for_each(|(x, y)| *x &= y);
                }
                acc
            }
        }
    }

    pub fn to_json_value(&self, root: usize) -> serde_json::Value {
        serde_json::to_value(WitnessJson::from_model(self, root)).expect("plain data")
    }
}

fn modal_row(adj: &[Vec<Vec<usize>>], i: u32, n: usize, arg: &[bool], is_box: bool) -> Vec<bool> {
    match adj.get((i as usize).wrapping_sub(1)) {
        None => vec![is_box; n],
        Some(a) => (0..n)
            .map(|w| if is_box { a[w].iter().all(|&v| arg[v]) } else { a[w].iter().any(|&v| arg[v]) })
            .collect(),
    }
}

/// `true` if every relation of `m` has the properties `class` requires.
pub fn frame_in_class(m: &KripkeModel, class: FrameClass) -> bool {
    let n = m.worlds();
    m.relations.iter().all(|r| {
        let has = |u: usize, v: usize| r.contains(&(u, v));
        (!class.serial() || (0..n).all(|u| r.range((u, 0)..=(u, usize::MAX)).next().is_some()))
            && (!class.reflexive() || (0..n).all(|u| has(u, u)))
            && (!class.symmetric() || r.iter().all(|&(u, v)| has(v, u)))
            && (!class.transitive()
                || r.iter().all(|&(u, v)| r.range((v, 0)..=(v, usize::MAX)).all(|&(_, w)| has(u, w))))
    })
}

/// `M, w ⊨ C`.
pub fn holds(m: &KripkeModel, w: usize, c: &ModalCircuit) -> bool {
    m.evaluate(c)[c.output()][w]
}

/// `M, w ⊨ φ`.
pub fn holds_formula(m: &KripkeModel, w: usize, phi: &ModalFormula) -> bool {
    m.evaluate_formula(phi)[w]
}

/// A model with a designated world.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub model: KripkeModel,
    pub root: usize,
}

impl Witness {
    pub fn to_json(&self) -> serde_json::Value {
        self.model.to_json_value(self.root)
    }

    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        let raw: WitnessJson = serde_json::from_str(text).map_err(|e| ModelError::Json(e.to_string()))?;
        raw.into_witness()
    }

    /// Re-checks the witness: frame class and truth of `c` at the root.
    pub fn verifies(&self, c: &ModalCircuit, class: FrameClass) -> bool {
        frame_in_class(&self.model, class) && holds(&self.model, self.root, c)
    }
}

#[derive(Serialize, Deserialize)]
struct WitnessJson {
    worlds: Vec<usize>,
    relations: BTreeMap<String, Vec<[usize; 2]>>,
    valuation: BTreeMap<String, Vec<usize>>,
    root: usize,
}

impl WitnessJson {
    fn from_model(m: &KripkeModel, root: usize) -> Self {
        WitnessJson {
            worlds: (0..m.worlds).collect(),
            relations: m
                .relations
                .iter()
                .enumerate()
                .map(|(i, r)| ((i + 1).to_string(), r.iter().map(|&(u, v)| [u, v]).collect()))
                .collect(),
            valuation: m.valuation.iter().map(|(k, s)| (k.clone(), s.iter().copied().collect())).collect(),
            root,
        }
    }

    fn into_witness(self) -> Result<Witness, ModelError> {
        // world ids may be arbitrary; renumber densely in listed order
        let mut index = BTreeMap::new();
        for (pos, &w) in self.worlds.iter().enumerate() {
            if index.insert(w, pos).is_some() {
                return Err(ModelError::DuplicateWorld(w));
            }
        }
        let get = |w: usize| index.get(&w).copied().ok_or(ModelError::UnknownWorld(w));
        let mut k = 0u32;
        for key in self.relations.keys() {
            let i: u32 = key.parse().ok().filter(|&i| i >= 1).ok_or_else(|| ModelError::RelationIndex(key.clone()))?;
            k = k.max(i);
        }
        let mut m = KripkeModel::new(self.worlds.len(), k);
        for (key, edges) in &self.relations {
            let i: u32 = key.parse().expect("checked");
            for [u, v] in edges {
                m.add_edge(i, get(*u)?, get(*v)?);
            }
        }
        for (var, ws) in &self.valuation {
            for &w in ws {
                m.set_true(var, get(w)?);
            }
        }
        Ok(Witness { root: get(self.root)?, model: m })
    }
}
