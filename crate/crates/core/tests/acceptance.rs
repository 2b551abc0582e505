//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test --test acceptance`. Exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use modsat::boolfn::{Base, FunctionTable};
use modsat::checks::{self, Report};
use modsat::classify::{classify, ComplexityClass, Instance, Repr};
use modsat::ir::ModalitySpec;
use modsat::kripke::FrameClass::{self, *};
use modsat::polysolve::Task;

const SEED: u64 = 20_240_601;

struct Outcome {
    criterion: &'static str,
    passed: bool,
    detail: String,
}

fn limit(elapsed: Duration, secs: u64) -> (bool, String) {
    (elapsed <= Duration::from_secs(secs), format!("{:.2}s of {secs}s", elapsed.as_secs_f64()))
}

fn from_reports(criterion: &'static str, reports: &[Report], secs: u64, extra: &str) -> Outcome {
    let elapsed: Duration = reports.iter().map(|r| r.elapsed).sum();
    let (in_time, time) = limit(elapsed, secs);
    let checked: usize = reports.iter().map(|r| r.checked).sum();
    let failures: usize = reports.iter().map(|r| r.failures).sum();
    let inconclusive: usize = reports.iter().map(|r| r.inconclusive).sum();
    for r in reports {
        println!("    {r}");
    }
    let mut detail = format!("{checked} comparisons, {failures} failures, required 100% agreement; {time}");
    if inconclusive > 0 {
        detail.push_str(&format!("; {inconclusive} bounded-oracle results undecided"));
    }
    if !extra.is_empty() {
        detail.push_str("; ");
        detail.push_str(extra);
    }
    Outcome { criterion, passed: in_time && reports.iter().all(Report::passed), detail }
}

fn tt(name: &str, arity: usize, bits: &str) -> FunctionTable {
    FunctionTable::parse_bits(name, arity, bits).unwrap()
}

fn base(fs: &[(&str, usize, &str)]) -> Base {
    Base::new(fs.iter().map(|(n, a, b)| tt(n, *a, b)).collect()).unwrap()
}

const AND: (&str, usize, &str) = ("and", 2, "0001");
const OR: (&str, usize, &str) = ("or", 2, "0111");
const NOT: (&str, usize, &str) = ("not", 1, "10");
const XOR: (&str, usize, &str) = ("xor", 2, "0110");
const XNOR: (&str, usize, &str) = ("xnor", 2, "1001");
const ZERO: (&str, usize, &str) = ("const0", 0, "0");
const ONE: (&str, usize, &str) = ("const1", 0, "1");
const ANDNOT: (&str, usize, &str) = ("andnot", 2, "0010");
// x ? y : ¬z style self-dual function used as a basis of D
const MAJ_XNN: (&str, usize, &str) = ("maj_xnn", 3, "10001110");
// x ∧ (y ∨ z)
const AND_OR: (&str, usize, &str) = ("and_or", 3, "00000111");

fn inst(b: Base, frame: FrameClass, m: ModalitySpec, task: Task) -> Instance {
    Instance { base: b, frame, modalities: m, repr: Repr::Circuit, task }
}

fn golden_table() -> Outcome {
    use ComplexityClass::*;
    let start = Instant::now();
    let both = ModalitySpec::both(1);
    let boxes = ModalitySpec::box_only(1);
    let dias = ModalitySpec::dia_only(1);
    let sat = Task::Sat;
    let mut rows: Vec<(String, Instance, ComplexityClass)> = vec![
        ("{and,not} K box".into(), inst(base(&[AND, NOT]), K, boxes, sat), PspaceComplete),
        ("{and,or,0,1} K both".into(), inst(base(&[AND, OR, ZERO, ONE]), K, both, sat), PspaceComplete),
        ("{and,0} K both".into(), inst(base(&[AND, ZERO]), K, both, sat), ConpComplete),
        ("{and,0} K box".into(), inst(base(&[AND, ZERO]), K, boxes, sat), P),
        ("{xor,1} KD both".into(), inst(base(&[XOR, ONE]), KD, both, sat), P),
        ("{andnot} S5 box k=1".into(), inst(base(&[ANDNOT]), S5, boxes, sat), NpComplete),
        ("{andnot} S5 box k=2".into(), inst(base(&[ANDNOT]), S5, ModalitySpec::box_only(2), sat), PspaceComplete),
        ("{xor} S4 both".into(), inst(base(&[XOR]), S4, both, sat), Open),
        ("{and} K both".into(), inst(base(&[AND]), K, both, sat), P),
        ("{or,1} K both valid".into(), inst(base(&[OR, ONE]), K, both, Task::Valid), NpComplete),
        ("{or,1} K box valid".into(), inst(base(&[OR, ONE]), K, boxes, Task::Valid), P),
        ("{and,or,0,1} K dia".into(), inst(base(&[AND, OR, ZERO, ONE]), K, dias, sat), P),
        ("{and,or,0,1} KD both".into(), inst(base(&[AND, OR, ZERO, ONE]), KD, both, sat), P),
        ("{and,not} KD both k=2".into(), inst(base(&[AND, NOT]), KD, ModalitySpec::both(2), sat), PspaceComplete),
        ("{and,not} T both".into(), inst(base(&[AND, NOT]), T, both, sat), PspaceComplete),
        ("{and,not} S5 both k=1".into(), inst(base(&[AND, NOT]), S5, both, sat), NpComplete),
        ("{and,not} S4 box".into(), inst(base(&[AND, NOT]), S4, boxes, sat), PspaceComplete),
        ("{not,1} S4 both".into(), inst(base(&[NOT, ONE]), S4, both, sat), P),
        ("{xor,1} T both".into(), inst(base(&[XOR, ONE]), T, both, sat), Open),
        ("{or,0,1} K both".into(), inst(base(&[OR, ZERO, ONE]), K, both, sat), P),
    ];
    // one basis per named clone, over K, KD and S4 with both operators
    let clones: Vec<(&str, Base, [ComplexityClass; 3])> = vec![
        ("BF", base(&[AND, NOT]), [PspaceComplete, PspaceComplete, PspaceComplete]),
        ("R0", base(&[OR, XOR]), [PspaceComplete, PspaceComplete, PspaceComplete]),
        ("R1", base(&[OR, XNOR]), [P, P, P]),
        ("M", base(&[AND, OR, ZERO, ONE]), [PspaceComplete, P, P]),
        ("D", base(&[MAJ_XNN]), [P, P, P]),
        ("L", base(&[XOR, ONE]), [P, P, Open]),
        ("L0", base(&[XOR]), [P, P, Open]),
        ("S1", base(&[ANDNOT]), [PspaceComplete, PspaceComplete, PspaceComplete]),
        ("S11", base(&[AND_OR, ZERO]), [PspaceComplete, P, P]),
        ("V", base(&[OR, ZERO, ONE]), [P, P, P]),
        ("V0", base(&[OR, ZERO]), [P, P, P]),
        ("V2", base(&[OR]), [P, P, P]),
        ("E", base(&[AND, ZERO, ONE]), [ConpComplete, P, P]),
        ("E0", base(&[AND, ZERO]), [ConpComplete, P, P]),
        ("E2", base(&[AND]), [P, P, P]),
        ("N", base(&[NOT, ONE]), [P, P, P]),
        ("I", base(&[ZERO, ONE]), [P, P, P]),
    ];
    for (name, b, expected) in clones {
        for (frame, class) in [K, KD, S4].into_iter().zip(expected) {
            rows.push((format!("clone {name} {frame} both"), inst(b.clone(), frame, both, sat), class));
        }
    }
    let mut wrong = Vec::new();
    for (name, i, expected) in &rows {
        match classify(i) {
            Ok(v) if v.class == *expected => {}
            Ok(v) => wrong.push(format!("{name}: got {} ({}), expected {expected}", v.class, v.citation)),
            Err(e) => wrong.push(format!("{name}: error {e}")),
        }
    }
    for w in &wrong {
        println!("    {w}");
    }
    let (in_time, time) = limit(start.elapsed(), 1);
    Outcome {
        criterion: "1 classifier golden table",
        passed: wrong.is_empty() && in_time,
        detail: format!("{} rows, {} mismatches, exact match required; {time}", rows.len(), wrong.len()),
    }
}

fn main() {
    let mut outcomes = Vec::new();
    let mut run = |o: Outcome| {
        println!("{} {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.criterion, o.detail);
        outcomes.push(o.passed);
    };

    run(golden_table());
    run(from_reports(
        "2 xor canonical completeness",
        &[checks::xor_completeness(7, 2, 2, K, SEED), checks::xor_completeness(7, 2, 2, KD, SEED)],
        600,
        "vars<=2 md<=2 gates<=7 k<=2",
    ));
    run(from_reports(
        "3 xor idempotence and size",
        &[checks::xor_idempotence(1000, 30, SEED)],
        60,
        "1000 circuits, gates<=30",
    ));
    run(from_reports(
        "4 xor minimality",
        &[checks::xor_minimality(5, K, SEED), checks::xor_minimality(5, KD, SEED)],
        600,
        "gates<=5 over xor, 0, 1, dia_1",
    ));
    let engines: Vec<Report> = checks::engine_cases(5).iter().map(checks::engine_agreement).collect();
    run(from_reports(
        "5 engine/oracle agreement",
        &engines,
        300,
        "vars<=2 md<=2 k<=2; undecided cases are unsat answers over T/K4/S4/S5 beyond the world bound",
    ));
    run(from_reports("6 reduction soundness", &checks::reduction_soundness(200, SEED), 600, "200 instances per reduction"));
    run(from_reports("7 duality", &[checks::duality(500, SEED)], 600, "500 instances over K and KD, oracle and solve"));
    run(from_reports("8 tableau correctness", &[checks::tableau_agreement(7)], 600, "formulas of size<=7, md<=2, vars<=2, k=2"));
    run(from_reports("9 S1 synthesis", &[checks::synthesis(20, SEED)], 600, "20 random bases, and/or/not each"));
    println!(
        "INFO 10 non-reproducibility: completeness for P, NP, coNP and PSPACE is a proof-level claim and is \
         not measured; criteria 1, 5 and 8 cover the verdict tables and the algorithms behind the upper bounds"
    );

    let failed = outcomes.iter().filter(|p| !**p).count();
    println!("acceptance: {} passed, {failed} failed", outcomes.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
