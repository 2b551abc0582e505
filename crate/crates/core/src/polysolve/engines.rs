use std::collections::{BTreeSet, HashMap};

use super::Verdict;
use crate::boolfn::{Base, NamedClone};
use crate::error::SolveError;
use crate::ir::{GateId, GateKind, ModalCircuit};
use crate::kripke::{holds, FrameClass, KripkeModel, Witness};

fn pre(engine: &'static str, reason: impl Into<String>) -> SolveError {
    SolveError::Precondition { engine, reason: reason.into() }
}

fn used_base(c: &ModalCircuit) -> Base {
    c.base()
}

fn require(engine: &'static str, c: &ModalCircuit, clone: NamedClone) -> Result<(), SolveError> {
    if clone.contains_base(&used_base(c)) {
        Ok(())
    } else {
        Err(pre(engine, format!("base is not contained in {clone}")))
    }
}

fn all_true(c: &ModalCircuit) -> BTreeSet<String> {
    c.variables()
}

/// Evaluates at world 0 and packages the answer.
fn singleton_verdict(engine: &'static str, c: &ModalCircuit, m: KripkeModel) -> Verdict {
    let sat = holds(&m, 0, c);
    Verdict::sat(engine, sat, sat.then_some(Witness { model: m, root: 0 }))
}

/// Bases inside R1 or D are satisfiable at the reflexive singleton.
pub fn sat_r1_or_d(c: &ModalCircuit, class: FrameClass) -> Result<Verdict, SolveError> {
    const NAME: &str = "r1-or-d";
    let _ = class;
    let c = c.pruned();
    let base = used_base(&c);
    let vars = c.variables();
    let m = if NamedClone::R1.contains_base(&base) {
        KripkeModel::reflexive_singleton(c.k(), &vars)
    } else if NamedClone::D.contains_base(&base) {
        // modal gates are the identity at the reflexive singleton
        let all_false = KripkeModel::reflexive_singleton(c.k(), &BTreeSet::new());
        if holds(&all_false, 0, &c) {
            all_false
        } else {
            KripkeModel::reflexive_singleton(c.k(), &vars)
        }
    } else {
        return Err(pre(NAME, "base is contained in neither R1 nor D"));
    };
    let v = singleton_verdict(NAME, &c, m);
    debug_assert_eq!(v.answer, Some(true));
    Ok(v)
}

/// Monotone bases over serial classes: satisfiable iff true at the all-true reflexive singleton.
pub fn sat_monotone_serial(c: &ModalCircuit, class: FrameClass) -> Result<Verdict, SolveError> {
    const NAME: &str = "monotone-serial";
    if !class.serial() {
        return Err(pre(NAME, format!("{class} is not serial")));
    }
    require(NAME, c, NamedClone::M)?;
    Ok(singleton_verdict(NAME, c, KripkeModel::reflexive_singleton(c.k(), &all_true(c))))
}

fn close_transitively(m: &mut KripkeModel) {
    for i in 1..=m.k() {
        loop {
            let edges: Vec<(usize, usize)> = m.relation(i).map(|r| r.iter().copied().collect()).unwrap_or_default();
            let mut added = false;
            for &(u, v) in &edges {
                for w in m.successors(i, v).collect::<Vec<_>>() {
                    if !m.successors(i, u).any(|x| x == w) {
                        m.add_edge(i, u, w);
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Op {
    Box(u32),
    Dia(u32),
}

/// Bases of essentially unary functions: the circuit is a chain `O_1 … O_n z`.
pub fn sat_unary_chain(c: &ModalCircuit, class: FrameClass) -> Result<Verdict, SolveError> {
    const NAME: &str = "unary-chain";
    let c = c.pruned();
    require(NAME, &c, NamedClone::N)?;
    let mut ops = Vec::new();
    let mut neg = false;
    let mut g = c.output();
    // the chain's end: a literal (name, polarity) or a constant
    let end: Result<(String, bool), bool> = loop {
        let gate = c.gate(g);
        match &gate.kind {
            GateKind::Var(v) => break Ok((v.clone(), !neg)),
            GateKind::Const(b) => break Err(*b != neg),
            GateKind::Fn(f) => {
                if let Some(b) = f.constant_value() {
                    break Err(b != neg);
                }
                let j = f.relevant_args()[0];
                if f.eval_unchecked((0..f.arity()).map(|_| false)) {
                    neg = !neg;
                }
                g = gate.args[j];
            }
            GateKind::Box(i) => {
                ops.push(if neg { Op::Dia(*i) } else { Op::Box(*i) });
                g = gate.args[0];
            }
            GateKind::Dia(i) => {
                ops.push(if neg { Op::Box(*i) } else { Op::Dia(*i) });
                g = gate.args[0];
            }
        }
    };
    let first_box = ops.iter().position(|o| matches!(o, Op::Box(_)));
    let dead_end = matches!(class, FrameClass::K | FrameClass::K4) && first_box.is_some();
    let model = match &end {
        Ok((v, pos)) => {
            let vars: Vec<String> = if *pos { vec![v.clone()] } else { vec![] };
            Some(KripkeModel::reflexive_singleton(c.k(), &vars))
        }
        Err(true) => Some(KripkeModel::reflexive_singleton(c.k(), &[])),
        Err(false) if dead_end => {
            // follow the leading ◇s to a world with no successor for the first □
            let n = first_box.expect("dead end needs a box");
            let mut m = KripkeModel::new(n + 1, c.k());
            for (t, op) in ops[..n].iter().enumerate() {
                let Op::Dia(i) = op else { unreachable!() };
                m.add_edge(*i, t, t + 1);
            }
            if class == FrameClass::K4 {
                close_transitively(&mut m);
            }
            Some(m)
        }
        Err(false) => None,
    };
    Ok(match model {
        Some(m) => {
            let w = Witness { model: m, root: 0 };
            debug_assert!(w.verifies(&c, class));
            Verdict::sat(NAME, true, Some(w))
        }
        None => Verdict::sat(NAME, false, None),
    })
}

/// Bases of disjunctions with constants.
pub fn sat_or_recursion(c: &ModalCircuit, class: FrameClass) -> Result<Verdict, SolveError> {
    const NAME: &str = "or-recursion";
    let c = c.pruned();
    require(NAME, &c, NamedClone::V)?;
    let dead_ends = matches!(class, FrameClass::K | FrameClass::K4);
    // gates are topologically ordered, so one forward pass settles every gate
    let mut sat = vec![false; c.size()];
    for (g, gate) in c.gates().iter().enumerate() {
        sat[g] = match &gate.kind {
            GateKind::Var(_) => true,
            GateKind::Const(b) => *b,
            GateKind::Fn(f) => match f.constant_value() {
                Some(b) => b,
                None => f.relevant_args().iter().any(|&j| sat[gate.args[j]]),
            },
            GateKind::Dia(_) => sat[gate.args[0]],
            GateKind::Box(_) => dead_ends || sat[gate.args[0]],
        };
    }
    if !sat[c.output()] {
        return Ok(Verdict::sat(NAME, false, None));
    }
    let vars = all_true(&c);
    let m = if dead_ends {
        // a path of ◇ edges down to a satisfied leaf
        let mut m = KripkeModel::new(1, c.k());
        let mut g = c.output();
        let mut here = 0;
        let mut path: Vec<(u32, usize, usize)> = Vec::new();
        loop {
            let gate = c.gate(g);
            match &gate.kind {
                GateKind::Fn(f) if f.constant_value().is_none() => {
                    let j = *f.relevant_args().iter().find(|&&j| sat[gate.args[j]]).expect("satisfied");
                    g = gate.args[j];
                }
                GateKind::Dia(i) => {
                    let w = m.add_world();
                    m.add_edge(*i, here, w);
                    path.push((*i, here, w));
                    here = w;
                    g = gate.args[0];
                }
                _ => break,
            }
        }
        if class == FrameClass::K4 {
            close_transitively(&mut m);
        }
        for w in 0..m.worlds() {
            for v in &vars {
                m.set_true(v, w);
            }
        }
        m
    } else {
        KripkeModel::reflexive_singleton(c.k(), &vars)
    };
    let w = Witness { model: m, root: 0 };
    debug_assert!(w.verifies(&c, class));
    Ok(Verdict::sat(NAME, true, Some(w)))
}

struct AndSearch<'a> {
    c: &'a ModalCircuit,
    memo: HashMap<Vec<GateId>, Option<Vec<(u32, Vec<GateId>)>>>,
}

impl AndSearch<'_> {
    /// Whether the gates in `h` can be true together; records the ◇ successors used.
    fn sat(&mut self, h: Vec<GateId>) -> bool {
        if let Some(r) = self.memo.get(&h) {
            return r.is_some();
        }
        let c = self.c;
        let mut seen = BTreeSet::new();
        let mut stack = h.clone();
        let mut boxes: Vec<(u32, GateId)> = Vec::new();
        let mut dias: Vec<(u32, GateId)> = Vec::new();
        let mut ok = true;
        while let Some(g) = stack.pop() {
            if !seen.insert(g) {
                continue;
            }
            let gate = c.gate(g);
            match &gate.kind {
                GateKind::Var(_) => {}
                GateKind::Const(b) => ok &= *b,
                GateKind::Fn(f) => match f.constant_value() {
                    Some(b) => ok &= b,
                    None => stack.extend(f.relevant_args().iter().map(|&j| gate.args[j])),
                },
                GateKind::Box(i) => boxes.push((*i, gate.args[0])),
                GateKind::Dia(i) => dias.push((*i, gate.args[0])),
            }
        }
        let mut succ = Vec::new();
        if ok {
            dias.sort_unstable();
            dias.dedup();
            for &(i, a) in &dias {
                let mut next: Vec<GateId> = boxes.iter().filter(|b| b.0 == i).map(|b| b.1).collect();
                next.push(a);
                next.sort_unstable();
                next.dedup();
                if !self.sat(next.clone()) {
                    ok = false;
                    break;
                }
                succ.push((i, next));
            }
        }
        self.memo.insert(h, ok.then_some(succ));
        ok
    }

    fn build(&self, h: &[GateId], m: &mut KripkeModel, vars: &BTreeSet<String>) -> usize {
        let w = m.add_world();
        for v in vars {
            m.set_true(v, w);
        }
        let succ = self.memo[h].as_ref().expect("satisfiable").clone();
        for (i, next) in succ {
            let v = self.build(&next, m, vars);
            m.add_edge(i, w, v);
        }
        w
    }
}

/// Bases of conjunctions with constants, over K.
pub fn sat_and_recursion(c: &ModalCircuit, class: FrameClass) -> Result<Verdict, SolveError> {
    const NAME: &str = "and-recursion";
    if class != FrameClass::K {
        return Err(pre(NAME, format!("needs frame class K, got {class}")));
    }
    let c = c.pruned();
    require(NAME, &c, NamedClone::E)?;
    let mut s = AndSearch { c: &c, memo: HashMap::new() };
    if !s.sat(vec![c.output()]) {
        return Ok(Verdict::sat(NAME, false, None));
    }
    let mut m = KripkeModel::new(0, c.k());
    let root = s.build(&[c.output()], &mut m, &all_true(&c));
    let w = Witness { model: m, root };
    debug_assert!(w.verifies(&c, class));
    Ok(Verdict::sat(NAME, true, Some(w)))
}

/// Monotone bases with a single modal operator, over K or K4.
pub fn sat_monotone_single_op(c: &ModalCircuit, class: FrameClass) -> Result<Verdict, SolveError> {
    const NAME: &str = "single-op-monotone";
    if !matches!(class, FrameClass::K | FrameClass::K4) {
        return Err(pre(NAME, format!("needs frame class K or K4, got {class}")));
    }
    let c = c.pruned();
    require(NAME, &c, NamedClone::M)?;
    let vars = all_true(&c);
    let m = match (c.has_dia(), c.has_box()) {
        (true, true) => return Err(pre(NAME, "circuit uses both □ and ◇")),
        (true, false) => KripkeModel::reflexive_singleton(c.k(), &vars),
        (false, _) => KripkeModel::irreflexive_singleton(c.k(), &vars),
    };
    Ok(singleton_verdict(NAME, &c, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::{parse_circuit, parse_formula, ParseOptions};
    use crate::kripke::{brute_force_sat, Bounds};
    use FrameClass::*;

    fn f(s: &str) -> ModalCircuit {
        parse_formula(s, &ParseOptions::default()).unwrap().to_circuit(2)
    }

    fn answer(r: Result<Verdict, SolveError>) -> bool {
        let v = r.unwrap();
        v.answer.unwrap()
    }

    #[test]
    fn r1_and_d() {
        let c = f("dia 1 and(x, y)");
        let v = sat_r1_or_d(&c, K).unwrap();
        assert!(v.is_yes() && v.witness.unwrap().model.worlds() == 1);
        let v = sat_r1_or_d(&f("not(x)"), K).unwrap();
        assert!(v.is_yes());
        assert!(!v.witness.unwrap().model.is_true("x", 0));
        assert!(sat_r1_or_d(&f("and(x, not(y))"), K).is_err());
    }

    #[test]
    fn monotone_serial() {
        assert!(answer(sat_monotone_serial(&f("and(dia 1 x, box 1 or(x, y))"), KD)));
        assert!(!answer(sat_monotone_serial(&f("and(0, x)"), KD)));
        assert!(!answer(sat_monotone_serial(&f("box 1 0"), KD)));
        assert!(sat_monotone_serial(&f("box 1 0"), K).is_err());
    }

    #[test]
    fn unary_chain() {
        assert!(!answer(sat_unary_chain(&f("dia 1 0"), K)));
        assert!(answer(sat_unary_chain(&f("box 1 0"), K)));
        assert!(!answer(sat_unary_chain(&f("not(dia 1 1)"), KD)));
        assert!(answer(sat_unary_chain(&f("dia 1 dia 2 box 1 0"), K4)));
        assert!(!answer(sat_unary_chain(&f("dia 1 dia 2 box 1 0"), S4)));
        assert!(answer(sat_unary_chain(&f("not(box 1 not(dia 2 not(x)))"), S5)));
    }

    #[test]
    fn or_recursion() {
        assert!(answer(sat_or_recursion(&f("box 1 x"), K)));
        assert!(!answer(sat_or_recursion(&f("dia 1 0"), T)));
        assert!(answer(sat_or_recursion(&f("or(0, dia 1 1)"), KD)));
        assert!(answer(sat_or_recursion(&f("or(dia 1 0, dia 2 dia 1 box 1 0)"), K4)));
        assert!(!answer(sat_or_recursion(&f("or(dia 1 0, dia 2 dia 1 box 1 0)"), KD)));
    }

    #[test]
    fn and_recursion() {
        assert!(!answer(sat_and_recursion(&f("and(dia 1 x, box 1 0)"), K)));
        assert!(answer(sat_and_recursion(&f("box 1 0"), K)));
        assert!(answer(sat_and_recursion(&f("and(x, 1)"), K)));
        assert!(answer(sat_and_recursion(&f("and(dia 1 x, and(dia 2 y, box 2 dia 1 1))"), K)));
        assert!(!answer(sat_and_recursion(&f("and(dia 1 dia 1 x, box 1 box 1 0)"), K)));
    }

    #[test]
    fn single_op() {
        assert!(answer(sat_monotone_single_op(&f("dia 1 and(x, y)"), K)));
        assert!(answer(sat_monotone_single_op(&f("and(box 1 0, x)"), K)));
        assert!(!answer(sat_monotone_single_op(&f("0"), K)));
        assert!(sat_monotone_single_op(&f("and(box 1 0, dia 1 x)"), K).is_err());
    }

    #[test]
    fn witnesses_against_oracle() {
        let b = Bounds::default();
        let cases = [
            "and(dia 1 x, box 1 or(x, y))",
            "or(box 1 0, dia 2 and(x, box 1 y))",
            "and(dia 1 x, and(dia 1 y, box 1 and(x, 1)))",
            "not(box 1 not(dia 2 x))",
        ];
        let engines: [fn(&ModalCircuit, FrameClass) -> Result<Verdict, SolveError>; 6] = [
            sat_r1_or_d,
            sat_monotone_serial,
            sat_unary_chain,
            sat_or_recursion,
            sat_and_recursion,
            sat_monotone_single_op,
        ];
        for s in cases {
            let c = parse_circuit(&f(s).to_netlist(), &ParseOptions::default()).unwrap();
            for class in FrameClass::ALL {
                for e in engines {
                    if let Ok(v) = e(&c, class) {
                        if let Some(w) = &v.witness {
                            assert!(w.verifies(&c, class), "{s} {class} {}", v.engine);
                        }
                        if matches!(class, K | KD) {
                            let want = brute_force_sat(&c, class, &b).decided();
                            assert_eq!(v.answer, want, "{s} {class} {}", v.engine);
                        }
                    }
                }
            }
        }
    }
}
