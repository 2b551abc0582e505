//! Exhaustive and random instance generation, and model fingerprints.
//!
//! The test suites and the `selftest` command draw their instances from here.

use std::collections::HashMap;

use rand::Rng;

use crate::boolfn::FunctionTable;
use crate::ir::{CircuitBuilder, GateId, ModalCircuit, ModalFormula};
use crate::kripke::{FrameClass, KripkeModel};

/// The building blocks of generated circuits.
#[derive(Clone, Debug)]
pub struct Vocab {
    pub vars: Vec<String>,
    pub consts: Vec<bool>,
    /// Functions of arity 1 to 3.
    pub fns: Vec<FunctionTable>,
    /// Modal operators as (is_box, index).
    pub modal: Vec<(bool, u32)>,
}

impl Vocab {
    pub fn new(vars: &[&str], consts: &[bool], fns: Vec<FunctionTable>, modal: Vec<(bool, u32)>) -> Self {
        assert!(fns.iter().all(|f| (1..=3).contains(&f.arity())), "functions of arity 1 to 3 only");
        Vocab { vars: vars.iter().map(|v| v.to_string()).collect(), consts: consts.to_vec(), fns, modal }
    }

    /// ◇_1..◇_k.
    pub fn dias(k: u32) -> Vec<(bool, u32)> {
        (1..=k).map(|i| (false, i)).collect()
    }

    /// □_i and ◇_i for i = 1..k.
    pub fn both(k: u32) -> Vec<(bool, u32)> {
        (1..=k).flat_map(|i| [(true, i), (false, i)]).collect()
    }

    pub fn k(&self) -> u32 {
        self.modal.iter().map(|m| m.1).max().unwrap_or(0)
    }
}

#[derive(Clone, Copy)]
enum Op {
    Var(usize),
    Const(bool),
    Fn(usize, [u32; 3]),
    Modal(usize, u32),
}

struct Term {
    op: Op,
    /// Sorted ids of all subterms including the term itself.
    closure: Vec<u32>,
    md: usize,
}

fn union_len(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        n += 1;
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    n + (a.len() - i) + (b.len() - j)
}

fn merged(a: &[u32], b: &[u32], top: u32) -> Vec<u32> {
    let mut v: Vec<u32> = a.iter().chain(b).copied().collect();
    v.push(top);
    v.sort_unstable();
    v.dedup();
    v
}

/// All circuits over `v` with at most `max_gates` distinct gates and modal
/// depth at most `max_md`, each exactly once up to hash-consing. Arguments
/// of symmetric binary functions are unordered.
pub fn circuits(v: &Vocab, max_gates: usize, max_md: usize) -> Vec<ModalCircuit> {
    let mut terms: Vec<Term> = Vec::new();
    let leaf = |terms: &mut Vec<Term>, op: Op| {
        let id = terms.len() as u32;
        terms.push(Term { op, closure: vec![id], md: 0 });
    };
    if max_gates >= 1 {
        for j in 0..v.vars.len() {
            leaf(&mut terms, Op::Var(j));
        }
        for &c in &v.consts {
            leaf(&mut terms, Op::Const(c));
        }
    }
    let symmetric: Vec<bool> = v
        .fns
        .iter()
        .map(|f| f.arity() == 2 && (0..4).all(|i| f.value(i) == f.value(((i & 1) << 1) | (i >> 1))))
        .collect();
    for size in 2..=max_gates {
        let below = terms.len();
        let mut fresh: Vec<Term> = Vec::new();
        let push = |fresh: &mut Vec<Term>, op: Op, md: usize| {
            fresh.push(Term { op, closure: Vec::new(), md });
        };
        for a in 0..below {
            let ta = &terms[a];
            if ta.closure.len() == size - 1 {
                for mi in 0..v.modal.len() {
                    if ta.md < max_md {
                        push(&mut fresh, Op::Modal(mi, a as u32), ta.md + 1);
                    }
                }
                for (fi, f) in v.fns.iter().enumerate() {
                    if f.arity() == 1 {
                        push(&mut fresh, Op::Fn(fi, [a as u32, 0, 0]), ta.md);
                    }
                }
            }
            for (fi, f) in v.fns.iter().enumerate() {
                match f.arity() {
                    2 => {
                        let start = if symmetric[fi] { a } else { 0 };
                        for b in start..below {
                            let tb = &terms[b];
                            if union_len(&ta.closure, &tb.closure) == size - 1 {
                                push(&mut fresh, Op::Fn(fi, [a as u32, b as u32, 0]), ta.md.max(tb.md));
                            }
                        }
                    }
                    3 => {
                        for b in 0..below {
                            let ab = merged(&ta.closure, &terms[b].closure, u32::MAX);
                            if ab.len() > size {
                                continue;
                            }
                            for c in 0..below {
                                let tc = &terms[c];
                                if union_len(&ab, &tc.closure) == size {
                                    let md = ta.md.max(terms[b].md).max(tc.md);
                                    push(&mut fresh, Op::Fn(fi, [a as u32, b as u32, c as u32]), md);
                                }
                            }
                        }
                    }
                    _ => {}
                }
            }
        }
        for (n, mut t) in fresh.into_iter().enumerate() {
            let id = (below + n) as u32;
            let args: &[u32] = match &t.op {
                Op::Fn(fi, xs) => &xs[..v.fns[*fi].arity()],
                Op::Modal(_, a) => std::slice::from_ref(a),
                _ => unreachable!(),
            };
            let mut cl: Vec<u32> = args.iter().flat_map(|&x| terms[x as usize].closure.iter().copied()).collect();
            cl.push(id);
            cl.sort_unstable();
            cl.dedup();
            t.closure = cl;
            terms.push(t);
        }
    }
    let k = v.k();
    (0..terms.len())
        .map(|t| {
            let mut b = CircuitBuilder::new().with_k(k);
            let mut memo = HashMap::new();
            let out = build(&terms, v, t as u32, &mut b, &mut memo);
            b.finish(out)
        })
        .collect()
}

fn build(terms: &[Term], v: &Vocab, t: u32, b: &mut CircuitBuilder, memo: &mut HashMap<u32, GateId>) -> GateId {
    if let Some(&g) = memo.get(&t) {
        return g;
    }
    let g = match terms[t as usize].op {
        Op::Var(j) => b.var(&v.vars[j]),
        Op::Const(c) => b.constant(c),
        Op::Fn(fi, xs) => {
            let f = &v.fns[fi];
            let args = xs[..f.arity()].iter().map(|&x| build(terms, v, x, b, memo)).collect();
            b.apply(f, args)
        }
        Op::Modal(mi, a) => {
            let x = build(terms, v, a, b, memo);
            let (is_box, i) = v.modal[mi];
            if is_box {
                b.boxed(i, x)
            } else {
                b.dia(i, x)
            }
        }
    };
    memo.insert(t, g);
    g
}

/// All formulas over `v` with at most `max_size` nodes and modal depth at most `max_md`.
pub fn formulas(v: &Vocab, max_size: usize, max_md: usize) -> Vec<ModalFormula> {
    // by_size[s] holds the formulas with exactly s nodes
    let mut by_size: Vec<Vec<ModalFormula>> = vec![Vec::new(); max_size + 1];
    if max_size >= 1 {
        by_size[1].extend(v.vars.iter().map(|x| ModalFormula::var(x)));
        by_size[1].extend(v.consts.iter().map(|&c| ModalFormula::Const(c)));
    }
    for s in 2..=max_size {
        let mut out = Vec::new();
        for a in &by_size[s - 1] {
            if a.modal_depth() < max_md {
                for &(is_box, i) in &v.modal {
                    out.push(if is_box { ModalFormula::boxed(i, a.clone()) } else { ModalFormula::dia(i, a.clone()) });
                }
            }
            for f in v.fns.iter().filter(|f| f.arity() == 1) {
                out.push(ModalFormula::apply(f, vec![a.clone()]));
            }
        }
        for f in v.fns.iter().filter(|f| f.arity() >= 2) {
            let mut args = Vec::new();
            spread(&by_size, f, s - 1, &mut args, &mut out);
        }
        by_size[s] = out;
    }
    by_size.into_iter().flatten().collect()
}

/// Applications of `f` whose arguments have `left` nodes in total.
fn spread(
    by_size: &[Vec<ModalFormula>],
    f: &FunctionTable,
    left: usize,
    args: &mut Vec<ModalFormula>,
    out: &mut Vec<ModalFormula>,
) {
    let remaining = f.arity() - args.len();
    if remaining == 0 {
        if left == 0 {
            out.push(ModalFormula::apply(f, args.clone()));
        }
        return;
    }
    let max_here = left.saturating_sub(remaining - 1);
    for sz in 1..=max_here {
        for a in &by_size[sz] {
            args.push(a.clone());
            spread(by_size, f, left - sz, args, out);
            args.pop();
        }
    }
}

/// A random circuit with exactly `gates` gates before pruning.
///
/// Leaves are drawn first; later gates pick arguments among earlier gates,
/// biased towards recent ones. The output is the last gate.
pub fn random_circuit<R: Rng>(rng: &mut R, v: &Vocab, gates: usize, max_md: usize) -> ModalCircuit {
    let mut b = CircuitBuilder::new().with_k(v.k());
    let mut md: Vec<usize> = Vec::new();
    let leaves = v.vars.len() + v.consts.len();
    let n_leaves = (gates / 4).clamp(1, gates.max(1)).min(leaves.max(1) + 2);
    for _ in 0..n_leaves {
        let r = rng.gen_range(0..leaves);
        if r < v.vars.len() {
            b.var(&v.vars[r]);
        } else {
            b.constant(v.consts[r - v.vars.len()]);
        }
        md.push(0);
    }
    while md.len() < gates {
        let n = md.len();
        let pick = |rng: &mut R| -> usize {
            if rng.gen_bool(0.6) {
                rng.gen_range(n.saturating_sub(4)..n)
            } else {
                rng.gen_range(0..n)
            }
        };
        let choices = v.fns.len() + v.modal.len();
        let r = rng.gen_range(0..choices.max(1));
        if r < v.fns.len() {
            let f = &v.fns[r];
            let args: Vec<usize> = (0..f.arity()).map(|_| pick(rng)).collect();
            let d = args.iter().map(|&a| md[a]).max().unwrap_or(0);
            b.apply(f, args);
            md.push(d);
        } else {
            let a = pick(rng);
            if md[a] >= max_md || v.modal.is_empty() {
                let r = rng.gen_range(0..leaves);
                if r < v.vars.len() {
                    b.var(&v.vars[r]);
                } else {
                    b.constant(v.consts[r - v.vars.len()]);
                }
                md.push(0);
                continue;
            }
            let (is_box, i) = v.modal[r - v.fns.len()];
            if is_box {
                b.boxed(i, a);
            } else {
                b.dia(i, a);
            }
            md.push(md[a] + 1);
        }
    }
    b.finish(md.len() - 1).pruned()
}

/// A random formula with about `size` nodes and modal depth at most `max_md`.
pub fn random_formula<R: Rng>(rng: &mut R, v: &Vocab, size: usize, max_md: usize) -> ModalFormula {
    let leaves = v.vars.len() + v.consts.len();
    if size <= 1 || (v.fns.is_empty() && (v.modal.is_empty() || max_md == 0)) {
        let r = rng.gen_range(0..leaves);
        return if r < v.vars.len() { ModalFormula::var(&v.vars[r]) } else { ModalFormula::Const(v.consts[r - v.vars.len()]) };
    }
    let modal_ok = max_md > 0 && !v.modal.is_empty();
    let use_modal = modal_ok && (v.fns.is_empty() || rng.gen_bool(0.35));
    if use_modal {
        let (is_box, i) = v.modal[rng.gen_range(0..v.modal.len())];
        let a = random_formula(rng, v, size - 1, max_md - 1);
        return if is_box { ModalFormula::boxed(i, a) } else { ModalFormula::dia(i, a) };
    }
    let f = &v.fns[rng.gen_range(0..v.fns.len())];
    if f.arity() == 1 {
        let a = random_formula(rng, v, size - 1, max_md);
        return ModalFormula::apply(f, vec![a]);
    }
    let left = rng.gen_range(1..(size - 1).max(2));
    let a = random_formula(rng, v, left, max_md);
    let b = random_formula(rng, v, (size - 1).saturating_sub(left).max(1), max_md);
    ModalFormula::apply(f, vec![a, b])
}

/// A random model of `class` with `worlds` worlds over `vars` and `k` relations.
pub fn random_model<R: Rng>(rng: &mut R, class: FrameClass, worlds: usize, k: u32, vars: &[String]) -> KripkeModel {
    let mut m = KripkeModel::new(worlds, k);
    for i in 1..=k {
        let density = rng.gen_range(0.15..0.6);
        let mut succ = vec![vec![false; worlds]; worlds];
        for row in succ.iter_mut() {
            for cell in row.iter_mut() {
                *cell = rng.gen_bool(density);
            }
        }
        if class.reflexive() {
            for (u, row) in succ.iter_mut().enumerate() {
                row[u] = true;
            }
        }
        if class.serial() {
            for row in succ.iter_mut() {
                if !row.iter().any(|&b| b) {
                    row[rng.gen_range(0..worlds)] = true;
                }
            }
        }
        if class.symmetric() {
            for u in 0..worlds {
                for w in 0..worlds {
                    if succ[u][w] {
                        succ[w][u] = true;
                    }
                }
            }
        }
        if class.transitive() {
            for mid in 0..worlds {
                for u in 0..worlds {
                    for w in 0..worlds {
                        if succ[u][mid] && succ[mid][w] {
                            succ[u][w] = true;
                        }
                    }
                }
            }
        }
        for (u, row) in succ.iter().enumerate() {
            for (w, &e) in row.iter().enumerate() {
                if e {
                    m.add_edge(i, u, w);
                }
            }
        }
    }
    for x in vars {
        for w in 0..worlds {
            if rng.gen_bool(0.5) {
                m.set_true(x, w);
            }
        }
    }
    m
}

/// A fixed family of models used to tell circuits apart quickly.
pub struct Fingerprinter {
    models: Vec<KripkeModel>,
}

impl Fingerprinter {
    pub fn new<R: Rng>(rng: &mut R, class: FrameClass, k: u32, vars: &[String], count: usize) -> Self {
        let mut models = Vec::with_capacity(count);
        for n in 0..count {
            let worlds = 1 + n % 6;
            models.push(random_model(rng, class, worlds, k, vars));
        }
        Fingerprinter { models }
    }

    /// Truth values of `c` at every world of every model. Equivalent
    /// circuits have equal fingerprints.
    pub fn fingerprint(&self, c: &ModalCircuit) -> Vec<u64> {
        let mut out = Vec::new();
        let (mut word, mut bits) = (0u64, 0);
        for m in &self.models {
            let vals = m.evaluate(c);
            for &b in &vals[c.output()] {
                word |= (b as u64) << bits;
                bits += 1;
                if bits == 64 {
                    out.push(word);
                    word = 0;
                    bits = 0;
                }
            }
        }
        out.push(word);
        out
    }
}
