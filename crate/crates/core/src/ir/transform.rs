use std::collections::HashMap;

use super::circuit::{CircuitBuilder, GateId, GateKind, ModalCircuit};
use super::formula::ModalFormula;
use crate::boolfn::{find_implementation, BFormula, Base, FunctionTable};
use crate::error::{IrError, ResourceError};

/// Search depth used when rewriting gates into another base.
pub const REWRITE_DEPTH_CAP: usize = 8;

/// The formula a circuit denotes, duplicating shared gates.
///
/// Fails when the result would have more than `size_cap` nodes.
pub fn expand(c: &ModalCircuit, size_cap: usize) -> Result<ModalFormula, ResourceError> {
    let mut size = vec![0u128; c.size()];
    for (id, g) in c.gates().iter().enumerate() {
        size[id] = g.args.iter().fold(1u128, |acc, &a| acc.saturating_add(size[a]));
    }
    if size[c.output()] > size_cap as u128 {
        return Err(ResourceError::ExpansionCap(size_cap));
    }
    Ok(expand_at(c, c.output()))
}

fn expand_at(c: &ModalCircuit, id: GateId) -> ModalFormula {
    let g = c.gate(id);
    match &g.kind {
        GateKind::Var(v) => ModalFormula::Var(v.clone()),
        GateKind::Const(b) => ModalFormula::Const(*b),
        GateKind::Fn(f) => ModalFormula::Apply(f.clone(), g.args.iter().map(|&a| expand_at(c, a)).collect()),
        GateKind::Box(i) => ModalFormula::boxed(*i, expand_at(c, g.args[0])),
        GateKind::Dia(i) => ModalFormula::dia(*i, expand_at(c, g.args[0])),
    }
}

/// Dual circuit: each function replaced by its dual, constants flipped,
/// □ and ◇ exchanged. Same graph.
pub fn dualize(c: &ModalCircuit) -> ModalCircuit {
    let gates = c
        .gates()
        .iter()
        .map(|g| {
            let kind = match &g.kind {
                GateKind::Var(v) => GateKind::Var(v.clone()),
                GateKind::Const(b) => GateKind::Const(!b),
                GateKind::Fn(f) => GateKind::Fn(f.dual_table()),
                GateKind::Box(i) => GateKind::Dia(*i),
                GateKind::Dia(i) => GateKind::Box(*i),
            };
            super::circuit::Gate { kind, args: g.args.clone() }
        })
        .collect();
    ModalCircuit::new(gates, c.output(), c.k()).expect("dual keeps structure")
}

pub(crate) fn fresh_name(used: &std::collections::BTreeSet<String>, stem: &str) -> String {
    let mut name = stem.to_string();
    while used.contains(&name) {
        name.push('_');
    }
    name
}

/// Writes `f` (applied to `args`) into the builder.
pub(crate) fn instantiate(b: &mut CircuitBuilder, f: &BFormula, args: &[GateId]) -> GateId {
    match f {
        BFormula::Var(j) => args[*j],
        BFormula::Apply(g, xs) => {
            let ids = xs.iter().map(|x| instantiate(b, x, args)).collect();
            b.apply(g, ids)
        }
    }
}

/// Replaces every propositional gate whose function is not in `target` by a
/// subcircuit over `target` computing the same function.
///
/// Constants missing from `target` are built as unary constants applied to a
/// variable gate, since clones contain constants only as unary functions.
pub fn rewrite_base(c: &ModalCircuit, target: &Base) -> Result<ModalCircuit, IrError> {
    let mut cache: HashMap<(usize, String), BFormula> = HashMap::new();
    let mut lookup = |f: &FunctionTable| -> Result<Option<BFormula>, IrError> {
        if target.contains_table(f) {
            return Ok(None);
        }
        let key = (f.arity(), f.bit_string());
        if let Some(v) = cache.get(&key) {
            return Ok(Some(v.clone()));
        }
        let imp = find_implementation(target, &f.lifted(), false, REWRITE_DEPTH_CAP)?;
        cache.insert(key, imp.clone());
        Ok(Some(imp))
    };

    let mut b = CircuitBuilder::new().with_k(c.k());
    let mut map: Vec<GateId> = Vec::with_capacity(c.size());
    let mut anchor: Option<GateId> = None;
    let vars = c.variables();
    for g in c.gates() {
        let args: Vec<GateId> = g.args.iter().map(|&a| map[a]).collect();
        let id = match &g.kind {
            GateKind::Fn(f) => match lookup(f)? {
                None => b.apply(f, args),
                Some(imp) => instantiate(&mut b, &imp, &args),
            },
            GateKind::Const(v) => match lookup(&FunctionTable::constant(*v))? {
                None => b.constant(*v),
                Some(imp) => {
                    let a = match anchor {
                        Some(a) => a,
                        None => {
                            let name = vars.iter().next().cloned().unwrap_or_else(|| fresh_name(&vars, "c"));
                            let a = b.var(&name);
                            anchor = Some(a);
                            a
                        }
                    };
                    instantiate(&mut b, &imp, &[a])
                }
            },
            other => b.gate(other.clone(), args),
        };
        map.push(id);
    }
    Ok(b.finish(map[c.output()]))
}

/// `true` if every propositional gate computes a function of `base`.
pub fn is_over(c: &ModalCircuit, base: &Base) -> bool {
    c.gates().iter().all(|g| match &g.kind {
        GateKind::Fn(f) => base.contains_table(f),
        GateKind::Const(v) => base.contains_table(&FunctionTable::constant(*v)),
        _ => true,
    })
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::parse::{parse_circuit, parse_formula, ParseOptions};

    fn circ(s: &str) -> ModalCircuit {
        parse_circuit(s, &ParseOptions::default()).unwrap()
    }

    #[test]
    fn expand_tree_is_identity() {
        let f = parse_formula("and(dia 1 x, not(box 2 y))", &ParseOptions::default()).unwrap();
        assert_eq!(expand(&f.to_circuit(2), 100).unwrap(), f);
    }

    #[test]
    fn expand_duplicates_shared() {
        let c = circ("a = VAR x\nb = DIA 1 a\nc = and b b\nOUTPUT c\n");
        assert_eq!(expand(&c, 100).unwrap().to_string(), "and(dia 1 x, dia 1 x)");
    }

    #[test]
    fn expand_cap() {
        let mut b = CircuitBuilder::new();
        let mut g = b.var("x");
        for _ in 0..40 {
            g = b.xor(g, g);
        }
        let c = b.finish(g);
        assert!(matches!(expand(&c, 1 << 20), Err(ResourceError::ExpansionCap(_))));
    }

    #[test]
    fn dual_examples() {
        let c = circ("a = VAR x\nb = VAR y\nc = and a b\nd = DIA 1 c\nOUTPUT d\n");
        assert_eq!(dualize(&c).to_netlist(), "g1 = VAR x\ng2 = VAR y\ng3 = or g1 g2\ng4 = BOX 1 g3\nOUTPUT g4\n");
        let c = circ("a = VAR x\nb = VAR y\nc = xor a b\nOUTPUT c\n");
        let d = dualize(&c);
        match &d.gate(d.output()).kind {
            GateKind::Fn(f) => assert_eq!(f.bit_string(), "1001"),
            _ => panic!(),
        }
        assert_eq!(dualize(&d), c);
    }

    #[test]
    fn rewrite_or_to_and_not() {
        let c = circ("a = VAR x\nb = VAR y\nc = or a b\nOUTPUT c\n");
        let r = rewrite_base(&c, &Base::builtins(&["and", "not"])).unwrap();
        assert_eq!(expand(&r, 100).unwrap().to_string(), "not(and(not(x), not(y)))");
        assert!(is_over(&r, &Base::builtins(&["and", "not"])));
    }

    #[test]
    fn rewrite_identity_when_contained() {
        let c = circ("a = VAR x\nb = VAR y\nc = or a b\nd = BOX 1 c\nOUTPUT d\n");
        let r = rewrite_base(&c, &Base::builtins(&["or", "and"])).unwrap();
        assert_eq!(r, c);
    }

    #[test]
    fn rewrite_constants() {
        let c = circ("a = VAR x\nb = CONST 1\nc = and a b\nOUTPUT c\n");
        let r = rewrite_base(&c, &Base::builtins(&["and", "not"])).unwrap();
        assert!(is_over(&r, &Base::builtins(&["and", "not"])));
        let c = circ("b = CONST 0\nd = DIA 1 b\nOUTPUT d\n");
        let r = rewrite_base(&c, &Base::builtins(&["and", "not"])).unwrap();
        assert_eq!(r.variables().len(), 1);
    }
}
