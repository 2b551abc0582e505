//! Cross-checks of the decision procedures against the brute-force oracle.
//!
//! Shared by the `selftest` command and the acceptance suite; each check
//! returns a [`Report`] and never panics on a disagreement.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::boolfn::{Base, BFormula, FunctionTable, NamedClone};
use crate::enumerate::{circuits, formulas, random_circuit, random_formula, Fingerprinter, Vocab};
use crate::error::SolveError;
use crate::ir::{circuit_to_formula, dualize, kd_to_k, rewrite_base, s1_transform, ModalCircuit, ModalitySpec};
use crate::kripke::{brute_force_sat, brute_force_valid, oracle_equivalent, Bounds, FrameClass};
use crate::polysolve::{
    sat_and_recursion, sat_monotone_serial, sat_monotone_single_op, sat_or_recursion, sat_r1_or_d,
    sat_unary_chain, xor_equivalent, xor_minimize, xor_normalize, Task, Verdict,
};
use crate::tableau::{ksat_tableau, solve};

const KEEP: usize = 5;

/// Outcome of one check.
#[derive(Debug)]
pub struct Report {
    pub name: String,
    /// Comparisons made.
    pub checked: usize,
    /// Comparisons where the oracle could not decide.
    pub inconclusive: usize,
    pub failures: usize,
    /// The first few failures, described.
    pub examples: Vec<String>,
    pub elapsed: Duration,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checked > 0
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: checked={} failures={}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.checked,
            self.failures
        )?;
        if self.inconclusive > 0 {
            write!(f, " inconclusive={}", self.inconclusive)?;
        }
        write!(f, " ({:.2}s)", self.elapsed.as_secs_f64())?;
        for e in &self.examples {
            write!(f, "\n    {e}")?;
        }
        Ok(())
    }
}

/// Thread-safe tally behind a [`Report`].
struct Tally {
    name: String,
    start: Instant,
    checked: AtomicUsize,
    inconclusive: AtomicUsize,
    failures: AtomicUsize,
    examples: Mutex<Vec<String>>,
}

impl Tally {
    fn new(name: impl Into<String>) -> Self {
        Tally {
            name: name.into(),
            start: Instant::now(),
            checked: AtomicUsize::new(0),
            inconclusive: AtomicUsize::new(0),
            failures: AtomicUsize::new(0),
            examples: Mutex::new(Vec::new()),
        }
    }

    fn ok(&self) {
        self.checked.fetch_add(1, Ordering::Relaxed);
    }

    fn unknown(&self) {
        self.checked.fetch_add(1, Ordering::Relaxed);
        self.inconclusive.fetch_add(1, Ordering::Relaxed);
    }

    /// The oracle gave no answer: a failure where it is complete (K, KD).
    fn undecided(&self, class: FrameClass, what: impl FnOnce() -> String) {
        if matches!(class, FrameClass::K | FrameClass::KD) {
            self.fail(|| format!("oracle undecided: {}", what()))
        } else {
            self.unknown()
        }
    }

    fn fail(&self, what: impl FnOnce() -> String) {
        self.checked.fetch_add(1, Ordering::Relaxed);
        if self.failures.fetch_add(1, Ordering::Relaxed) < KEEP {
            self.examples.lock().unwrap().push(what());
        }
    }

    /// Records `ok` as a pass or a failure.
    fn expect(&self, ok: bool, what: impl FnOnce() -> String) {
        if ok {
            self.ok()
        } else {
            self.fail(what)
        }
    }

    fn report(self) -> Report {
        Report {
            name: self.name,
            checked: self.checked.into_inner(),
            inconclusive: self.inconclusive.into_inner(),
            failures: self.failures.into_inner(),
            examples: self.examples.into_inner().unwrap(),
            elapsed: self.start.elapsed(),
        }
    }
}

fn one_line(c: &ModalCircuit) -> String {
    c.to_netlist().trim_end().replace('\n', "; ")
}

fn oracle(c: &ModalCircuit, class: FrameClass) -> Option<bool> {
    brute_force_sat(c, class, &Bounds::default()).decided()
}

fn t(name: &str, arity: usize, bits: &str) -> FunctionTable {
    FunctionTable::parse_bits(name, arity, bits).expect("valid table")
}

/// The ⊕ vocabulary over x, y with ◇_1..◇_k.
pub fn xor_vocab(k: u32) -> Vocab {
    Vocab::new(&["x", "y"], &[false, true], vec![FunctionTable::xor()], Vocab::dias(k))
}

/// Normal forms against the oracle over every ⊕-circuit within the bounds:
/// each circuit is equivalent to its normal form, distinct normal forms are
/// inequivalent, and `xor_equivalent` agrees with both.
pub fn xor_completeness(max_gates: usize, max_md: usize, k: u32, class: FrameClass, seed: u64) -> Report {
    let tally = Tally::new(format!("xor-completeness {class} gates<={max_gates} md<={max_md} k={k}"));
    let all = circuits(&xor_vocab(k), max_gates, max_md);
    let bounds = Bounds::default();
    let nfs: Vec<Option<ModalCircuit>> = all
        .par_iter()
        .map(|c| match xor_normalize(c, class) {
            Ok(nf) => {
                match oracle_equivalent(c, &nf, class, &bounds) {
                    Some(true) => tally.ok(),
                    Some(false) => tally.fail(|| format!("not equivalent to its normal form: {}", one_line(c))),
                    None => tally.undecided(class, || one_line(c)),
                }
                Some(nf)
            }
            Err(e) => {
                tally.fail(|| format!("normalize failed on {}: {e}", one_line(c)));
                None
            }
        })
        .collect();

    // one representative circuit per normal form
    let mut reps: HashMap<String, usize> = HashMap::new();
    for (i, nf) in nfs.iter().enumerate() {
        if let Some(nf) = nf {
            reps.entry(nf.to_netlist()).or_insert(i);
        }
    }
    let mut reps: Vec<usize> = reps.into_values().collect();
    reps.sort_unstable();

    // xor_equivalent on every circuit against its representative
    let rep_of: HashMap<String, usize> =
        reps.iter().map(|&i| (nfs[i].as_ref().unwrap().to_netlist(), i)).collect();
    all.par_iter().zip(&nfs).for_each(|(c, nf)| {
        if let Some(nf) = nf {
            let r = rep_of[&nf.to_netlist()];
            let same = xor_equivalent(c, &all[r], class).unwrap_or(false);
            tally.expect(same, || format!("xor_equivalent rejects equal normal forms: {}", one_line(c)));
        }
    });

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = vec!["x".to_string(), "y".to_string()];
    let fp = Fingerprinter::new(&mut rng, class, k, &vars, 48);
    let mut buckets: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
    let prints: Vec<Vec<u64>> = reps.par_iter().map(|&i| fp.fingerprint(nfs[i].as_ref().unwrap())).collect();
    for (&i, p) in reps.iter().zip(prints) {
        buckets.entry(p).or_default().push(i);
    }
    let pairs: Vec<(usize, usize)> = buckets
        .values()
        .flat_map(|b| (0..b.len()).flat_map(move |x| (x + 1..b.len()).map(move |y| (b[x], b[y]))))
        .collect();
    pairs.par_iter().for_each(|&(a, b)| {
        let (na, nb) = (nfs[a].as_ref().unwrap(), nfs[b].as_ref().unwrap());
        match oracle_equivalent(na, nb, class, &bounds) {
            Some(false) => tally.ok(),
            Some(true) => tally.fail(|| format!("distinct normal forms are equivalent: {} / {}", one_line(na), one_line(nb))),
            None => tally.undecided(class, || one_line(na)),
        }
        let split = !xor_equivalent(&all[a], &all[b], class).unwrap_or(true);
        tally.expect(split, || format!("xor_equivalent merges {} and {}", one_line(&all[a]), one_line(&all[b])));
    });
    tally.report()
}

/// Repeated normalization is stable and never grows the circuit.
pub fn xor_idempotence(count: usize, max_gates: usize, seed: u64) -> Report {
    let tally = Tally::new(format!("xor-idempotence {count} circuits gates<={max_gates}"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = Vocab::new(&["x", "y", "z"], &[false, true], vec![FunctionTable::xor()], Vocab::dias(2));
    let cases: Vec<(ModalCircuit, FrameClass)> = (0..count)
        .map(|i| {
            let gates = rng.gen_range(1..=max_gates);
            let class = if i % 2 == 0 { FrameClass::K } else { FrameClass::KD };
            (random_circuit(&mut rng, &v, gates, 4), class)
        })
        .collect();
    cases.par_iter().for_each(|(c, class)| {
        let once = xor_normalize(c, *class);
        let twice = once.as_ref().ok().map(|n| xor_normalize(n, *class));
        match (once, twice) {
            (Ok(n1), Some(Ok(n2))) => tally.expect(n1 == n2 && n1.size() <= c.size(), || {
                format!("{class}: {} -> {} -> {}", one_line(c), one_line(&n1), one_line(&n2))
            }),
            _ => tally.fail(|| format!("normalize failed on {}", one_line(c))),
        }
    });
    tally.report()
}

/// No circuit in the exhaustive enumeration is smaller than, yet equivalent
/// to, the output of `xor_minimize`.
pub fn xor_minimality(max_gates: usize, class: FrameClass, seed: u64) -> Report {
    let tally = Tally::new(format!("xor-minimality {class} gates<={max_gates}"));
    let all = circuits(&xor_vocab(1), max_gates, max_gates);
    let bounds = Bounds::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = vec!["x".to_string(), "y".to_string()];
    let fp = Fingerprinter::new(&mut rng, class, 1, &vars, 48);
    let prints: Vec<Vec<u64>> = all.par_iter().map(|c| fp.fingerprint(c)).collect();
    let mut buckets: HashMap<&[u64], Vec<usize>> = HashMap::new();
    for (i, p) in prints.iter().enumerate() {
        buckets.entry(p).or_default().push(i);
    }
    all.par_iter().enumerate().for_each(|(i, c)| {
        let m = match xor_minimize(c, class) {
            Ok(m) => m,
            Err(e) => return tally.fail(|| format!("minimize failed on {}: {e}", one_line(c))),
        };
        let mut ok = m.size() <= c.size();
        for &j in &buckets[prints[i].as_slice()] {
            let d = &all[j];
            if d.size() >= m.size() {
                continue;
            }
            match oracle_equivalent(c, d, class, &bounds) {
                Some(false) => {}
                Some(true) => {
                    ok = false;
                    break;
                }
                None => return tally.undecided(class, || one_line(c)),
            }
        }
        tally.expect(ok, || format!("{} minimizes to {} gates but a smaller equivalent exists", one_line(c), m.size()));
    });
    tally.report()
}

type EngineFn = fn(&ModalCircuit, FrameClass) -> Result<Verdict, SolveError>;

/// One engine with the instances its preconditions admit.
pub struct EngineCase {
    pub engine: &'static str,
    pub run: EngineFn,
    pub vocabs: Vec<Vocab>,
    pub classes: Vec<FrameClass>,
    pub max_gates: usize,
}

/// The specialized engines, each with vocabularies inside its base class.
pub fn engine_cases(scale: usize) -> Vec<EngineCase> {
    use FrameClass::*;
    let xy = ["x", "y"];
    let both = Vocab::both(2);
    let boxes: Vec<(bool, u32)> = both.iter().copied().filter(|m| m.0).collect();
    let monotone = vec![FunctionTable::and(), FunctionTable::or()];
    vec![
        EngineCase {
            engine: "r1-or-d",
            run: sat_r1_or_d,
            vocabs: vec![
                Vocab::new(&xy, &[true], vec![FunctionTable::and(), FunctionTable::or(), t("xnor", 2, "1001")], both.clone()),
                Vocab::new(&xy, &[], vec![t("maj_xnn", 3, "10001110"), FunctionTable::not()], both.clone()),
            ],
            classes: FrameClass::ALL.to_vec(),
            max_gates: scale,
        },
        EngineCase {
            engine: "monotone-serial",
            run: sat_monotone_serial,
            vocabs: vec![Vocab::new(&xy, &[false, true], monotone.clone(), both.clone())],
            classes: vec![KD, T, S4, S5],
            max_gates: scale,
        },
        EngineCase {
            engine: "unary-chain",
            run: sat_unary_chain,
            vocabs: vec![Vocab::new(&xy, &[false, true], vec![FunctionTable::not()], both.clone())],
            classes: FrameClass::ALL.to_vec(),
            max_gates: scale + 2,
        },
        EngineCase {
            engine: "or-recursion",
            run: sat_or_recursion,
            vocabs: vec![Vocab::new(&xy, &[false, true], vec![FunctionTable::or()], both.clone())],
            classes: FrameClass::ALL.to_vec(),
            max_gates: scale + 1,
        },
        EngineCase {
            engine: "and-recursion",
            run: sat_and_recursion,
            vocabs: vec![Vocab::new(&xy, &[false, true], vec![FunctionTable::and()], both.clone())],
            classes: vec![K],
            max_gates: scale + 1,
        },
        EngineCase {
            engine: "single-op-monotone",
            run: sat_monotone_single_op,
            vocabs: vec![
                Vocab::new(&xy, &[false, true], monotone.clone(), Vocab::dias(2)),
                Vocab::new(&xy, &[false, true], monotone, boxes),
            ],
            classes: vec![K, K4],
            max_gates: scale,
        },
    ]
}

/// Runs one engine on every enumerated instance and compares with the oracle.
///
/// Over K and KD the oracle is complete, so an undecided oracle counts as a
/// failure. Over the other classes it is bounded: answers must not
/// contradict it, and undecided cases are reported as inconclusive.
pub fn engine_agreement(case: &EngineCase) -> Report {
    let tally = Tally::new(format!("engine {} gates<={} md<=2 k<=2", case.engine, case.max_gates));
    let all: Vec<ModalCircuit> = case.vocabs.iter().flat_map(|v| circuits(v, case.max_gates, 2)).collect();
    for &class in &case.classes {
        all.par_iter().for_each(|c| {
            let v = match (case.run)(c, class) {
                Ok(v) => v,
                Err(e) => return tally.fail(|| format!("{class}: {} rejected {}: {e}", case.engine, one_line(c))),
            };
            if let Some(w) = &v.witness {
                if !w.verifies(c, class) {
                    return tally.fail(|| format!("{class}: bad witness for {}", one_line(c)));
                }
            }
            let complete = matches!(class, FrameClass::K | FrameClass::KD);
            match (v.answer, oracle(c, class)) {
                (Some(a), Some(o)) if a == o => tally.ok(),
                (Some(true), None) if v.witness.is_some() => tally.ok(),
                (Some(_), None) if !complete => tally.unknown(),
                (a, o) => tally.fail(|| format!("{class}: {} says {a:?}, oracle {o:?} on {}", case.engine, one_line(c))),
            }
        });
    }
    tally.report()
}

/// The modal formulas over {∧, ¬, 0, 1} used for the tableau check.
pub fn tableau_vocab() -> Vocab {
    Vocab::new(&["x", "y"], &[false, true], vec![FunctionTable::and(), FunctionTable::not()], Vocab::both(2))
}

/// The tableau against the oracle on every formula within the bounds.
pub fn tableau_agreement(max_size: usize) -> Report {
    let tally = Tally::new(format!("tableau size<={max_size} md<=2 k=2"));
    let all = formulas(&tableau_vocab(), max_size, 2);
    for class in [FrameClass::K, FrameClass::KD] {
        all.par_iter().for_each(|phi| {
            let c = phi.to_circuit(2);
            match (ksat_tableau(phi, class, 2), oracle(&c, class)) {
                (Ok(v), Some(o)) => {
                    let witness_ok = v.witness.as_ref().is_none_or(|w| w.verifies(&c, class));
                    tally.expect(v.answer == Some(o) && witness_ok, || {
                        format!("{class}: tableau {:?}, oracle {o} on {}", v.answer, one_line(&c))
                    })
                }
                (Ok(_), None) => tally.fail(|| format!("{class}: oracle undecided on {}", one_line(&c))),
                (Err(e), _) => tally.fail(|| format!("{class}: tableau failed on {}: {e}", one_line(&c))),
            }
        });
    }
    tally.report()
}

fn compare(tally: &Tally, class: FrameClass, a: Option<bool>, b: Option<bool>, what: impl FnOnce() -> String) {
    match (a, b) {
        (Some(x), Some(y)) => tally.expect(x == y, what),
        _ => tally.undecided(class, what),
    }
}

fn sized_circuit(rng: &mut ChaCha8Rng, v: &Vocab, lo: usize, hi: usize) -> ModalCircuit {
    let n = rng.gen_range(lo..=hi);
    random_circuit(rng, v, n, 3)
}

fn general_vocab(k: u32) -> Vocab {
    Vocab::new(
        &["x", "y", "z"],
        &[false, true],
        vec![FunctionTable::and(), FunctionTable::or(), FunctionTable::not(), FunctionTable::xor()],
        Vocab::both(k),
    )
}

/// Bases with `S1 ⊆ [B]` used as rewrite targets.
pub fn s1_bases() -> Vec<Base> {
    vec![
        Base::new(vec![t("andnot", 2, "0010")]).unwrap(),
        Base::builtins(&["and", "not"]),
        Base::new(vec![t("nand", 2, "1110")]).unwrap(),
        Base::builtins(&["or", "not"]),
        Base::new(vec![t("maj_xnn", 3, "10001110"), FunctionTable::constant(false)]).unwrap(),
    ]
}

/// Functionally complete bases.
pub fn complete_bases() -> Vec<Base> {
    vec![
        Base::new(vec![t("nand", 2, "1110")]).unwrap(),
        Base::builtins(&["and", "not"]),
        Base::builtins(&["or", "not"]),
        Base::new(vec![t("andnot", 2, "0010"), FunctionTable::constant(true)]).unwrap(),
        Base::new(vec![t("maj_xnn", 3, "10001110"), FunctionTable::constant(false)]).unwrap(),
    ]
}

/// Each reduction preserves oracle satisfiability on random instances.
pub fn reduction_soundness(count: usize, seed: u64) -> Vec<Report> {
    use FrameClass::*;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = general_vocab(2);

    let tally = Tally::new(format!("reduction circuit_to_formula {count} instances"));
    let and_not = Vocab::new(&["x", "y", "z"], &[false, true], vec![FunctionTable::and(), FunctionTable::not()], Vocab::both(2));
    let cases: Vec<_> = (0..count).map(|i| (sized_circuit(&mut rng, &and_not, 2, 14), [K, KD][i % 2])).collect();
    cases.par_iter().for_each(|(c, class)| match circuit_to_formula(c) {
        Ok(phi) => compare(&tally, *class, oracle(c, *class), oracle(&phi.to_circuit(c.k()), *class), || {
            format!("{class}: {}", one_line(c))
        }),
        Err(e) => tally.fail(|| format!("{}: {e}", one_line(c))),
    });
    let r1 = tally.report();

    let tally = Tally::new(format!("reduction kd_to_k {count} instances"));
    let cases: Vec<_> = (0..count).map(|_| sized_circuit(&mut rng, &v, 2, 14)).collect();
    cases.par_iter().for_each(|c| {
        compare(&tally, KD, oracle(c, KD), oracle(&kd_to_k(c), K), || one_line(c));
    });
    let r2 = tally.report();

    let tally = Tally::new(format!("reduction rewrite_base {count} instances"));
    let targets = complete_bases();
    let cases: Vec<_> = (0..count)
        .map(|i| {
            let c = sized_circuit(&mut rng, &v, 2, 12);
            (c, targets[i % targets.len()].clone(), [K, KD][i % 2])
        })
        .collect();
    cases.par_iter().for_each(|(c, target, class)| match rewrite_base(c, target) {
        Ok(r) => {
            let over = crate::ir::is_over(&r, target);
            tally.expect(over, || format!("rewrite leaves gates outside the target: {}", one_line(&r)));
            compare(&tally, *class, oracle(c, *class), oracle(&r, *class), || format!("{class}: {}", one_line(c)));
        }
        Err(e) => tally.fail(|| format!("{}: {e}", one_line(c))),
    });
    let r3 = tally.report();

    let tally = Tally::new(format!("reduction s1_transform {count} instances"));
    let uni = Vocab::new(
        &["x", "y"],
        &[false, true],
        vec![FunctionTable::and(), FunctionTable::or(), FunctionTable::not()],
        Vocab::both(1),
    );
    let targets = s1_bases();
    let cases: Vec<_> = (0..count)
        .map(|i| {
            let phi = {
                let n = rng.gen_range(2..=8);
                random_formula(&mut rng, &uni, n, 2)
            };
            let m = [ModalitySpec::both(1), ModalitySpec::box_only(1), ModalitySpec::dia_only(1)][i % 3];
            // with ◇ alone the transformation relies on submodels, which KD lacks
            let class = if m.boxes { [K, KD][(i / 3) % 2] } else { K };
            (phi, targets[i % targets.len()].clone(), m, class)
        })
        .collect();
    cases.par_iter().for_each(|(phi, base, m, class)| match s1_transform(phi, base, *m) {
        Ok(out) => {
            let (c, d) = (phi.to_circuit(1), out.to_circuit(1));
            let shape = crate::ir::is_over(&d, base) && ModalitySpec::of_circuit(&d).count() <= m.count()
                && (m.boxes || !d.has_box()) && (m.dias || !d.has_dia());
            tally.expect(shape, || format!("output uses operators outside B or M: {}", one_line(&d)));
            compare(&tally, *class, oracle(&c, *class), oracle(&d, *class), || format!("{class} {m:?}: {}", one_line(&c)));
        }
        Err(e) => tally.fail(|| format!("{}: {e}", one_line(&phi.to_circuit(1)))),
    });
    let r4 = tally.report();
    vec![r1, r2, r3, r4]
}

/// `C` is satisfiable iff `dual C` is not valid, by the oracle and by `solve`.
pub fn duality(count: usize, seed: u64) -> Report {
    use FrameClass::*;
    let tally = Tally::new(format!("duality {count} instances"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = general_vocab(2);
    let cases: Vec<_> = (0..count).map(|i| (sized_circuit(&mut rng, &v, 2, 12), [K, KD][i % 2])).collect();
    let bounds = Bounds::default();
    cases.par_iter().for_each(|(c, class)| {
        let d = dualize(c);
        let sat = brute_force_sat(c, *class, &bounds).decided();
        let valid = brute_force_valid(&d, *class, &bounds).decided();
        compare(&tally, *class, sat, valid.map(|x| !x), || format!("{class} oracle: {}", one_line(c)));
        let base = c.base().with(FunctionTable::not()).with(FunctionTable::and());
        let base = d.base().functions().iter().fold(base, |b, f| b.with(f.clone()));
        match (solve(c, &base, *class, Task::Sat), solve(&d, &base, *class, Task::Valid)) {
            (Ok(s), Ok(v)) => compare(&tally, *class, s.answer, v.answer.map(|x| !x), || format!("{class} solve: {}", one_line(c))),
            (Err(e), _) | (_, Err(e)) => tally.fail(|| format!("{class} solve failed on {}: {e}", one_line(c))),
        }
    });
    tally.report()
}

fn random_function<R: Rng>(rng: &mut R) -> FunctionTable {
    let arity = rng.gen_range(2..=3);
    let bits: String = (0..1 << arity).map(|_| if rng.gen_bool(0.5) { '1' } else { '0' }).collect();
    FunctionTable::parse_bits(format!("f{bits}"), arity, &bits).expect("valid table")
}

fn once_per_variable(f: &BFormula, arity: usize) -> bool {
    (0..arity).all(|j| f.occurrences(j) == 1)
}

fn truth_table_matches(f: &BFormula, target: &FunctionTable) -> bool {
    let n = target.arity();
    (0..1usize << n).all(|i| {
        let args: Vec<bool> = (0..n).map(|j| (i >> (n - 1 - j)) & 1 == 1).collect();
        f.eval(&args) == target.eval_unchecked(args.iter().copied())
    })
}

/// Random bases with `S1 ⊆ [B]` and their once-per-variable ∧, ∨, ¬ over `B ∪ {1}`.
pub fn synthesis(count: usize, seed: u64) -> Report {
    let tally = Tally::new(format!("synthesis {count} random S1 bases"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bases = Vec::new();
    while bases.len() < count {
        let n = rng.gen_range(1..=2);
        let Ok(b) = Base::new((0..n).map(|_| random_function(&mut rng)).collect()) else { continue };
        if NamedClone::S1.generated_by(&b).unwrap_or(false) {
            bases.push(b);
        }
    }
    bases.par_iter().for_each(|b| {
        let with_one = b.with(FunctionTable::constant(true));
        for target in [FunctionTable::and(), FunctionTable::or(), FunctionTable::not()] {
            match crate::boolfn::find_implementation(&with_one, &target, true, crate::ir::S1_DEPTH_CAP) {
                Ok(f) => tally.expect(
                    truth_table_matches(&f, &target) && once_per_variable(&f, target.arity()),
                    || format!("{} over {}: {f}", target.name(), b.to_text().trim().replace('\n', ", ")),
                ),
                Err(e) => tally.fail(|| format!("{} over {}: {e}", target.name(), b.to_text().trim().replace('\n', ", "))),
            }
        }
    });
    tally.report()
}

/// Picks `n` items without replacement; used to sample large enumerations.
pub fn sample<T: Clone>(items: &[T], n: usize, seed: u64) -> Vec<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    items.choose_multiple(&mut rng, n.min(items.len())).cloned().collect()
}
