use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use modsat::boolfn::{
    clone_contains, clone_profile, find_implementation, named_clone, nary_closure, property_profile, Base,
    FunctionTable, NamedClone,
};
use modsat::classify::{classify, ComplexityClass, Instance, Repr};
use modsat::enumerate::random_model;
use modsat::error::ClassifyError;
use modsat::ir::{dualize, expand, CircuitBuilder, ModalCircuit, ModalFormula, ModalitySpec};
use modsat::kripke::{brute_force_sat, brute_force_valid, holds, oracle_equivalent, Bounds, FrameClass, KripkeModel};
use modsat::polysolve::{xor_normalize, Task};
use modsat::tableau::{ksat_tableau, solve};

fn table(arity: usize, bits: u16, name: String) -> FunctionTable {
    FunctionTable::from_fn(name, arity, |i| (bits >> i) & 1 == 1)
}

fn function(name: &'static str) -> impl Strategy<Value = FunctionTable> {
    (0usize..=3, any::<u16>()).prop_map(move |(a, bits)| table(a, bits, name.to_string()))
}

fn base(max: usize) -> impl Strategy<Value = Base> {
    prop::collection::vec((0usize..=3, any::<u16>()), 1..=max).prop_map(|fs| {
        Base::new(fs.into_iter().enumerate().map(|(i, (a, bits))| table(a, bits, format!("f{i}"))).collect())
            .unwrap()
    })
}

fn is_monotone(f: &FunctionTable) -> bool {
    let n = 1usize << f.arity();
    (0..n).all(|i| (0..n).all(|j| i & j != i || !f.value(i) || f.value(j)))
}

fn projection(n: usize, j: usize) -> FunctionTable {
    FunctionTable::from_fn("p", n, |i| (i >> (n - 1 - j)) & 1 == 1)
}

#[derive(Clone, Copy)]
enum Ops {
    General,
    Xor,
    AndNot,
    Monotone,
}

fn formula(ops: Ops, k: u32, depth: u32) -> BoxedStrategy<ModalFormula> {
    let leaf = prop_oneof![
        Just(ModalFormula::var("x")),
        Just(ModalFormula::var("y")),
        Just(ModalFormula::Const(false)),
        Just(ModalFormula::Const(true)),
    ];
    leaf.prop_recursive(depth, 24, 2, move |inner| {
        let modal = (1..=k, inner.clone(), any::<bool>())
            .prop_map(|(i, a, is_box)| if is_box { ModalFormula::boxed(i, a) } else { ModalFormula::dia(i, a) });
        let pair = (inner.clone(), inner.clone());
        match ops {
            Ops::General => prop_oneof![
                pair.clone().prop_map(|(a, b)| ModalFormula::and(a, b)),
                pair.clone().prop_map(|(a, b)| ModalFormula::or(a, b)),
                pair.prop_map(|(a, b)| ModalFormula::xor(a, b)),
                inner.prop_map(ModalFormula::not),
                modal,
            ]
            .boxed(),
            Ops::Xor => prop_oneof![pair.prop_map(|(a, b)| ModalFormula::xor(a, b)), modal].boxed(),
            Ops::AndNot => prop_oneof![
                pair.prop_map(|(a, b)| ModalFormula::and(a, b)),
                inner.prop_map(ModalFormula::not),
                modal,
            ]
            .boxed(),
            Ops::Monotone => prop_oneof![
                pair.clone().prop_map(|(a, b)| ModalFormula::and(a, b)),
                pair.prop_map(|(a, b)| ModalFormula::or(a, b)),
                modal,
            ]
            .boxed(),
        }
    })
    .boxed()
}

/// The formula with equal subformulas merged into one gate.
fn shared(phi: &ModalFormula, k: u32) -> ModalCircuit {
    let mut b = CircuitBuilder::hash_consed().with_k(k);
    let o = b.embed(&phi.to_circuit(k));
    b.finish(o)
}

fn models(seed: u64, class: FrameClass, k: u32) -> Vec<KripkeModel> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = vec!["x".to_string(), "y".to_string()];
    (1..=4).map(|n| random_model(&mut rng, class, n, k, &vars)).collect()
}

fn bounds() -> Bounds {
    Bounds::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // boolfn

    #[test]
    fn closure_is_monotone_in_the_base(b in base(2), g in function("g")) {
        let small = nary_closure(&b, 2).unwrap();
        let large = nary_closure(&b.with(g), 2).unwrap();
        for f in &small {
            prop_assert!(large.iter().any(|h| h.same_function(f)));
        }
        for j in 0..2 {
            prop_assert!(small.iter().any(|h| h.same_function(&projection(2, j))));
        }
    }

    #[test]
    fn monotone_flags_bound_the_closure(b in base(3)) {
        if b.functions().iter().all(|f| property_profile(f).monotone) {
            for f in nary_closure(&b, 2).unwrap() {
                prop_assert!(is_monotone(&f), "{} not monotone", f.bit_string());
            }
        }
    }

    #[test]
    fn implementations_compute_their_target(b in base(2), target in function("t")) {
        if let Ok(f) = find_implementation(&b, &target, false, 4) {
            let n = target.arity();
            for i in 0..1usize << n {
                let args: Vec<bool> = (0..n).map(|j| (i >> (n - 1 - j)) & 1 == 1).collect();
                prop_assert_eq!(f.eval(&args), target.value(i));
            }
        }
    }

    // modal-ir

    #[test]
    fn expansion_agrees_with_the_circuit(phi in formula(Ops::General, 2, 4), seed in any::<u64>()) {
        let c = shared(&phi, 2);
        let e = expand(&c, 10_000).unwrap();
        prop_assert_eq!(e.modal_depth(), c.modal_depth());
        for m in models(seed, FrameClass::K, 2) {
            let vc = m.evaluate(&c);
            prop_assert_eq!(&vc[c.output()], &m.evaluate_formula(&e));
        }
    }

    #[test]
    fn dual_is_an_involution(phi in formula(Ops::General, 2, 4)) {
        let c = shared(&phi, 2);
        prop_assert_eq!(dualize(&dualize(&c)).to_netlist(), c.to_netlist());
    }

    #[test]
    fn dual_swaps_sat_and_validity(phi in formula(Ops::General, 2, 3), kd in any::<bool>()) {
        let class = if kd { FrameClass::KD } else { FrameClass::K };
        let c = shared(&phi, 2);
        let sat = brute_force_sat(&c, class, &bounds()).decided().unwrap();
        let valid = brute_force_valid(&dualize(&c), class, &bounds()).decided().unwrap();
        prop_assert_eq!(sat, !valid);
    }

    // kripke

    #[test]
    fn oracle_witnesses_verify(phi in formula(Ops::General, 2, 4), class in prop::sample::select(FrameClass::ALL.to_vec())) {
        let c = shared(&phi, 2);
        if let modsat::kripke::OracleSat::Sat(w) = brute_force_sat(&c, class, &bounds()) {
            prop_assert!(w.verifies(&c, class));
        }
    }

    #[test]
    fn oracle_decides_small_k_instances(phi in formula(Ops::General, 2, 5)) {
        let c = shared(&phi, 2).pruned();
        prop_assume!(c.modal_depth() <= 2 && c.modal_gate_count() <= 3);
        prop_assert!(brute_force_sat(&c, FrameClass::K, &bounds()).decided().is_some());
    }

    #[test]
    fn monotone_truth_lifts_to_the_full_singleton(phi in formula(Ops::Monotone, 2, 4), seed in any::<u64>()) {
        let c = shared(&phi, 2);
        let vars = c.variables();
        let top = KripkeModel::reflexive_singleton(2, &vars);
        for m in models(seed, FrameClass::KD, 2) {
            if (0..m.worlds()).any(|w| holds(&m, w, &c)) {
                prop_assert!(holds(&top, 0, &c));
            }
        }
    }

    // polysolve

    #[test]
    fn xor_normal_form_is_sound_idempotent_and_small(phi in formula(Ops::Xor, 2, 5), kd in any::<bool>(), tree in any::<bool>()) {
        let class = if kd { FrameClass::KD } else { FrameClass::K };
        let c = if tree { phi.to_circuit(2) } else { shared(&phi, 2) };
        let nf = xor_normalize(&c, class).unwrap();
        // □ψ is rewritten as 1 ⊕ ◇(1 ⊕ ψ), so the size bound holds without boxes
        if !c.has_box() {
            prop_assert!(nf.size() <= c.pruned().size());
        }
        prop_assert_eq!(&xor_normalize(&nf, class).unwrap(), &nf);
        prop_assert_eq!(oracle_equivalent(&c, &nf, class, &bounds()), Some(true));
        if c.pruned().is_tree() {
            prop_assert!(nf.is_tree());
        }
    }

    // tableau

    #[test]
    fn tableau_matches_the_oracle(phi in formula(Ops::AndNot, 2, 4), kd in any::<bool>()) {
        let class = if kd { FrameClass::KD } else { FrameClass::K };
        let c = phi.to_circuit(2);
        let v = ksat_tableau(&phi, class, 2).unwrap();
        prop_assert_eq!(v.answer, brute_force_sat(&c, class, &bounds()).decided());
        if let Some(w) = &v.witness {
            prop_assert!(w.verifies(&c, class));
        }
    }

    #[test]
    fn validity_is_dual_satisfiability(phi in formula(Ops::General, 2, 3), kd in any::<bool>()) {
        let class = if kd { FrameClass::KD } else { FrameClass::K };
        let c = shared(&phi, 2);
        let d = dualize(&c);
        let b = c.base().functions().iter().chain(d.base().functions()).fold(Base::empty(), |b, f| b.with(f.clone()));
        let valid = solve(&c, &b, class, Task::Valid).unwrap();
        let sat_dual = solve(&d, &b, class, Task::Sat).unwrap();
        prop_assert_eq!(valid.answer, sat_dual.answer.map(|s| !s));
    }
}

fn specs() -> Vec<ModalitySpec> {
    let mut out = vec![ModalitySpec::none()];
    for k in 1..=2 {
        out.extend([ModalitySpec::box_only(k), ModalitySpec::dia_only(k), ModalitySpec::both(k)]);
    }
    out
}

fn classes() -> Vec<FrameClass> {
    FrameClass::ALL.into_iter().filter(|&f| f != FrameClass::K4).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn ladders_are_exhaustive(b in base(3)) {
        let s1 = FunctionTable::parse_bits("andnot", 2, "0010").unwrap();
        for frame in classes() {
            for m in specs() {
                let v = classify(&Instance::sat(b.clone(), frame, m));
                prop_assert!(v.is_ok(), "{frame} {m:?}: {:?}", v);
                let v = v.unwrap();
                if v.citation.ends_with("/S1") || v.citation.ends_with("/S1-k1") {
                    prop_assert!(clone_contains(&b, &s1).unwrap());
                }
                if v.class == ComplexityClass::Open {
                    let named = clone_profile(&b).unwrap().named_clone;
                    prop_assert!(matches!(named, Some(NamedClone::L | NamedClone::L0)));
                }
            }
        }
    }

    #[test]
    fn validity_is_the_complement_of_the_dual(b in base(3)) {
        for frame in classes() {
            for m in specs() {
                let valid = Instance { base: b.clone(), frame, modalities: m, repr: Repr::Circuit, task: Task::Valid };
                let dual = Instance::sat(b.dual(), frame, m.dual());
                prop_assert_eq!(classify(&valid).unwrap().class, classify(&dual).unwrap().class.complement());
            }
        }
    }

    #[test]
    fn larger_problems_are_never_easier(b in base(2), g in function("g")) {
        let bigger = b.with(g);
        let level = |inst: Instance| classify(&inst).unwrap().class.level();
        for frame in classes() {
            for m in specs() {
                let here = level(Instance::sat(b.clone(), frame, m));
                let mut larger = vec![Instance::sat(bigger.clone(), frame, m)];
                if m.k > 0 {
                    larger.push(Instance::sat(b.clone(), frame, ModalitySpec { k: m.k + 1, ..m }));
                    larger.push(Instance::sat(b.clone(), frame, ModalitySpec::both(m.k)));
                }
                for inst in larger {
                    if let (Some(a), Some(z)) = (here, level(inst.clone())) {
                        prop_assert!(a <= z, "{frame} {m:?} -> {:?}", inst.modalities);
                    }
                }
            }
        }
    }
}

#[test]
fn named_bases_reproduce_their_clones() {
    for c in NamedClone::ALL {
        assert_eq!(named_clone(&c.basis()).unwrap(), Some(c), "{}", c.name());
    }
}

#[test]
fn k4_is_rejected() {
    let inst = Instance::sat(Base::builtins(&["and", "not"]), FrameClass::K4, ModalitySpec::both(1));
    assert!(matches!(classify(&inst), Err(ClassifyError::UnsupportedClass(_))));
}
