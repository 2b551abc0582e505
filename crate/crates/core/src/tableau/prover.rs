use std::collections::{BTreeSet, HashSet};

use crate::error::{IrError, SolveError};
use crate::ir::{kd_to_k_formula, ModalFormula};
use crate::kripke::{frame_in_class, holds_formula, FrameClass, KripkeModel, Witness};
use crate::polysolve::Verdict;

type F = ModalFormula;

#[derive(Clone, Copy)]
struct Item<'a> {
    pos: bool,
    f: &'a F,
}

/// A signed formula that must hold at every `i`-successor.
#[derive(Clone, Copy)]
struct Req<'a> {
    i: u32,
    pos: bool,
    f: &'a F,
}

#[derive(Clone, Default)]
struct Branch<'a> {
    todo: Vec<Item<'a>>,
    split: Vec<Item<'a>>,
    true_vars: BTreeSet<&'a str>,
    false_vars: BTreeSet<&'a str>,
    /// Compound formulas already expanded, by address and sign.
    done: HashSet<(usize, bool)>,
    boxes: Vec<Req<'a>>,
    demands: Vec<Req<'a>>,
}

struct Tree<'a> {
    true_vars: BTreeSet<&'a str>,
    succ: Vec<(u32, Tree<'a>)>,
}

fn op<'a>(f: &'a F) -> Option<(bool, &'a [F])> {
    match f {
        F::Apply(t, args) if t.is_and() => Some((true, args)),
        F::Apply(t, args) if t.is_not() => Some((false, args)),
        _ => None,
    }
}

fn check_vocabulary(f: &F) -> Result<(), SolveError> {
    if let F::Apply(t, _) = f {
        if op(f).is_none() {
            return Err(SolveError::Ir(IrError::Vocabulary(t.name().to_string())));
        }
    }
    f.children().into_iter().try_for_each(check_vocabulary)
}

struct Prover {
    k: u32,
}

impl Prover {
    fn run<'a>(&self, mut br: Branch<'a>) -> Option<Tree<'a>> {
        while let Some(it) = br.todo.pop() {
            match it.f {
                F::Const(b) => {
                    if *b != it.pos {
                        return None;
                    }
                    continue;
                }
                F::Var(v) => {
                    let (mine, other) =
                        if it.pos { (&mut br.true_vars, &br.false_vars) } else { (&mut br.false_vars, &br.true_vars) };
                    if other.contains(v.as_str()) {
                        return None;
                    }
                    mine.insert(v.as_str());
                    continue;
                }
                _ => {}
            }
            if !br.done.insert((it.f as *const F as usize, it.pos)) {
                continue;
            }
            match (it.pos, it.f) {
                (_, F::Apply(..)) => match op(it.f).expect("vocabulary checked") {
                    (true, args) if it.pos => br.todo.extend(args.iter().map(|a| Item { pos: true, f: a })),
                    (true, _) => br.split.push(it),
                    (false, args) => br.todo.push(Item { pos: !it.pos, f: &args[0] }),
                },
                (true, F::Box(i, a)) => br.boxes.push(Req { i: *i, pos: true, f: a }),
                (false, F::Box(i, a)) => br.demands.push(Req { i: *i, pos: false, f: a }),
                (true, F::Dia(i, a)) => br.demands.push(Req { i: *i, pos: true, f: a }),
                (false, F::Dia(i, a)) => br.boxes.push(Req { i: *i, pos: false, f: a }),
                (true, F::Every(a)) => br.boxes.extend((1..=self.k).map(|i| Req { i, pos: true, f: a })),
                (false, F::Every(_)) => br.split.push(it),
                (_, F::Var(_) | F::Const(_)) => unreachable!(),
            }
        }
        if let Some(it) = br.split.pop() {
            return match it.f {
                F::Every(a) => (1..=self.k).find_map(|i| {
                    let mut b = br.clone();
                    b.demands.push(Req { i, pos: false, f: a });
                    self.run(b)
                }),
                _ => {
                    let args = op(it.f).expect("conjunction").1;
                    let (a, b) = (&args[0], &args[1]);
                    let mut left = br.clone();
                    left.todo.push(Item { pos: false, f: a });
                    if let Some(t) = self.run(left) {
                        return Some(t);
                    }
                    br.todo.push(Item { pos: true, f: a });
                    br.todo.push(Item { pos: false, f: b });
                    self.run(br)
                }
            };
        }
        let mut succ = Vec::new();
        for d in &br.demands {
            let mut child = Branch::default();
            child.todo.push(Item { pos: d.pos, f: d.f });
            child.todo.extend(br.boxes.iter().filter(|b| b.i == d.i).map(|b| Item { pos: b.pos, f: b.f }));
            succ.push((d.i, self.run(child)?));
        }
        Some(Tree { true_vars: br.true_vars, succ })
    }
}

fn build(t: &Tree, m: &mut KripkeModel) -> usize {
    let w = m.add_world();
    for v in &t.true_vars {
        m.set_true(v, w);
    }
    for (i, s) in &t.succ {
        let u = build(s, m);
        m.add_edge(*i, w, u);
    }
    w
}

/// Tableau for K and KD over ∧, ¬, □_i, ◇_i and the every-modality operator.
///
/// KD is decided as K on the formula conjoined with seriality up to its modal
/// depth; the tree found is then completed with self-loops.
pub fn ksat_tableau(phi: &ModalFormula, class: FrameClass, k: u32) -> Result<Verdict, SolveError> {
    check_vocabulary(phi)?;
    let k = k.max(phi.max_modality());
    let target = match class {
        FrameClass::K => phi.clone(),
        FrameClass::KD => kd_to_k_formula(phi, k),
        other => return Err(SolveError::UnsupportedFrame(other.to_string())),
    };
    let prover = Prover { k };
    let mut root = Branch::default();
    root.todo.push(Item { pos: true, f: &target });
    let Some(tree) = prover.run(root) else {
        return Ok(Verdict::sat("tableau", false, None));
    };
    let mut m = KripkeModel::new(0, k);
    let root = build(&tree, &mut m);
    if class == FrameClass::KD {
        for w in 0..m.worlds() {
            for i in 1..=k {
                if m.successors(i, w).next().is_none() {
                    m.add_edge(i, w, w);
                }
            }
        }
    }
    debug_assert!(frame_in_class(&m, class) && holds_formula(&m, root, phi));
    Ok(Verdict::sat("tableau", true, Some(Witness { model: m, root })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::{parse_formula, ParseOptions};
    use FrameClass::*;

    fn sat(s: &str, class: FrameClass, k: u32) -> bool {
        let phi = parse_formula(s, &ParseOptions::default()).unwrap();
        let v = ksat_tableau(&phi, class, k).unwrap();
        if let Some(w) = &v.witness {
            assert!(frame_in_class(&w.model, class) && holds_formula(&w.model, w.root, &phi), "{s}");
        }
        v.is_yes()
    }

    #[test]
    fn examples() {
        assert!(!sat("and(not(box 1 not(x)), box 1 not(x))", K, 1));
        assert!(sat("box 1 0", K, 1));
        assert!(!sat("box 1 0", KD, 1));
        assert!(sat("and(dia 1 x, dia 2 not(x))", K, 2));
        assert!(!sat("and(dia 1 x, box 1 not(x))", K, 1));
    }

    #[test]
    fn every_operator() {
        assert!(!sat("and(every x, dia 2 not(x))", K, 2));
        assert!(sat("and(not(every x), box 1 x)", K, 2));
        assert!(!sat("and(not(every x), and(box 1 x, box 2 x))", K, 2));
        assert!(!sat("every 0", KD, 1));
    }

    #[test]
    fn kd_depth() {
        assert!(!sat("dia 1 box 1 0", KD, 1));
        assert!(sat("dia 1 box 1 0", K, 1));
        assert!(sat("box 1 box 1 x", KD, 1));
    }

    #[test]
    fn rejects_other_functions() {
        let phi = parse_formula("or(x, y)", &ParseOptions::default()).unwrap();
        assert!(matches!(ksat_tableau(&phi, K, 1), Err(SolveError::Ir(IrError::Vocabulary(_)))));
        let phi = parse_formula("x", &ParseOptions::default()).unwrap();
        assert!(matches!(ksat_tableau(&phi, S4, 1), Err(SolveError::UnsupportedFrame(_))));
    }
}
