//! The `modsat` command line.
//!
//! Exit codes: 0 sat/valid/true, 1 unsat/invalid/false, 2 usage or input
//! error, 3 unknown.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::boolfn::{Base, NamedClone};
use crate::checks::{self, Report};
use crate::classify::{classify, Instance, Repr};
use crate::ir::{dualize, parse_any, ModalCircuit, ModalitySpec, ParseOptions};
use crate::kripke::{
    brute_force_sat, brute_force_valid, frame_in_class, holds, oracle_equivalent, Bounds, FrameClass, OracleSat,
    OracleValid, Witness,
};
use crate::polysolve::{xor_equivalent, xor_minimize, xor_normalize, Task, Verdict};
use crate::tableau::{solve_with, Engine, SolveOptions};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "modsat", version, about = "Modal satisfiability over restricted Boolean bases")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Frame class: K, KD, T, K4, S4 or S5.
    #[arg(long, global = true, default_value = "K", value_parser = parse_frame)]
    frame: FrameClass,

    /// Number of relations (defaults to the largest index used, or 1).
    #[arg(long, global = true)]
    k: Option<u32>,

    /// Base file restricting the allowed functions.
    #[arg(long, global = true)]
    base: Option<PathBuf>,

    /// Force one engine (sat/valid), or pick the one named in the verdict.
    #[arg(long, global = true, value_parser = parse_engine)]
    engine: Option<Engine>,

    /// Output format. Netlist commands default to text, the rest to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Worker threads for batches and self-tests.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Seed for randomized self-tests.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Complexity of satisfiability or validity for a base, frame class and operators.
    Classify {
        /// Allowed modal operators: box, dia, both or none.
        #[arg(long, default_value = "both")]
        ops: String,
        #[arg(long, default_value = "sat", value_parser = parse_task)]
        task: Task,
        #[arg(long, default_value = "circuit", value_parser = parse_repr)]
        repr: Repr,
    },
    /// Decide satisfiability of each input.
    Sat { inputs: Vec<PathBuf> },
    /// Decide validity of each input.
    Valid { inputs: Vec<PathBuf> },
    /// Print the ⊕ normal form (K and KD).
    Normalize { input: PathBuf },
    /// Print a smallest equivalent ⊕ circuit (K and KD).
    Minimize { input: PathBuf },
    /// Decide whether two inputs are equivalent over the frame class.
    Equiv { a: PathBuf, b: PathBuf },
    /// Print the dual circuit.
    Dual { input: PathBuf },
    /// Run the bounded brute-force oracle, or re-check a witness.
    Oracle {
        input: PathBuf,
        #[arg(long, default_value = "sat", value_parser = parse_task)]
        task: Task,
        /// Witness JSON, or a verdict JSON carrying one, to verify against the input.
        #[arg(long)]
        check_witness: Option<PathBuf>,
    },
    /// Run the small exhaustive cross-checks.
    Selftest,
}

fn parse_frame(s: &str) -> Result<FrameClass, String> {
    s.parse()
}

fn parse_engine(s: &str) -> Result<Engine, String> {
    s.parse()
}

fn parse_task(s: &str) -> Result<Task, String> {
    s.parse()
}

fn parse_repr(s: &str) -> Result<Repr, String> {
    s.parse()
}

/// A user-facing failure; always exit code 2.
struct Fail(String);

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail(e.to_string())
    }
}

struct Ctx {
    cli: Cli,
    base: Option<Base>,
}

/// Runs the command line `argv` (program name first), printing to stdout and
/// stderr, and returns the exit code.
pub fn run(argv: &[String]) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_YES };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.max(1)).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_ERROR;
        }
    };
    pool.install(|| match execute(cli) {
        Ok(code) => code,
        Err(Fail(msg)) => {
            eprintln!("error: {msg}");
            EXIT_ERROR
        }
    })
}

fn execute(cli: Cli) -> Result<i32, Fail> {
    let base = match &cli.base {
        Some(p) => Some(Base::parse(&read(p)?).map_err(|e| Fail(format!("{}:{e}", p.display())))?),
        None => None,
    };
    let ctx = Ctx { cli, base };
    match &ctx.cli.cmd {
        Cmd::Classify { ops, task, repr } => ctx.classify(ops, *task, *repr),
        Cmd::Sat { inputs } => ctx.decide(inputs, Task::Sat),
        Cmd::Valid { inputs } => ctx.decide(inputs, Task::Valid),
        Cmd::Normalize { input } => ctx.netlist(input, |c, f| Ok(xor_normalize(c, f)?)),
        Cmd::Minimize { input } => ctx.netlist(input, |c, f| Ok(xor_minimize(c, f)?)),
        Cmd::Dual { input } => ctx.netlist(input, |c, _| Ok(dualize(c))),
        Cmd::Equiv { a, b } => ctx.equiv(a, b),
        Cmd::Oracle { input, task, check_witness } => ctx.oracle(input, *task, check_witness.as_deref()),
        Cmd::Selftest => ctx.selftest(),
    }
}

fn read(p: &Path) -> Result<String, Fail> {
    if p.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Fail(format!("<stdin>: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(p).map_err(|e| Fail(format!("{}: {e}", p.display())))
}

impl Ctx {
    fn format(&self, default: Format) -> Format {
        self.cli.format.unwrap_or(default)
    }

    fn load(&self, p: &Path) -> Result<ModalCircuit, Fail> {
        let text = read(p)?;
        let opts = ParseOptions { base: self.base.clone().unwrap_or_default(), k: self.cli.k };
        let c = parse_any(&text, &opts).map_err(|e| Fail(format!("{}:{e}", p.display())))?;
        Ok(match self.cli.k {
            Some(k) => c.with_k(k),
            None => c,
        })
    }

    /// The base inputs must be over: the `--base` file, or the input's own gates.
    fn base_for(&self, c: &ModalCircuit) -> Base {
        self.base.clone().unwrap_or_else(|| c.base())
    }

    fn classify(&self, ops: &str, task: Task, repr: Repr) -> Result<i32, Fail> {
        let base = self.base.clone().ok_or_else(|| Fail("classify needs --base".into()))?;
        let k = self.cli.k.unwrap_or(if ops.eq_ignore_ascii_case("none") { 0 } else { 1 });
        let modalities = ModalitySpec::parse_ops(ops, k)
            .ok_or_else(|| Fail(format!("unknown --ops {ops:?} (box, dia, both or none)")))?;
        let inst = Instance { base, frame: self.cli.frame, modalities, repr, task };
        let v = classify(&inst)?;
        match self.format(Format::Json) {
            Format::Json => println!("{}", v.to_json()),
            Format::Text => println!("{} ({}; engine hint {})", v.class, v.citation, v.engine_hint),
        }
        Ok(EXIT_YES)
    }

    fn decide_one(&self, p: &Path, task: Task) -> Result<Verdict, Fail> {
        let c = self.load(p)?;
        let opts = SolveOptions { engine: self.cli.engine, bounds: Bounds::from_env() };
        solve_with(&c, &self.base_for(&c), self.cli.frame, task, &opts).map_err(|e| Fail(format!("{}: {e}", p.display())))
    }

    fn decide(&self, inputs: &[PathBuf], task: Task) -> Result<i32, Fail> {
        if inputs.is_empty() {
            return Err(Fail(format!("{} needs at least one input file", task.name())));
        }
        let results: Vec<Result<Verdict, Fail>> = inputs.par_iter().map(|p| self.decide_one(p, task)).collect();
        let batch = inputs.len() > 1;
        let fmt = self.format(Format::Json);
        let mut codes = Vec::new();
        for (p, r) in inputs.iter().zip(results) {
            match r {
                Ok(v) => {
                    codes.push(match v.answer {
                        Some(true) => EXIT_YES,
                        Some(false) => EXIT_NO,
                        None => EXIT_UNKNOWN,
                    });
                    match fmt {
                        Format::Json => {
                            let mut j = v.to_json();
                            if batch {
                                j["input"] = json!(p.display().to_string());
                            }
                            println!("{j}");
                        }
                        Format::Text => {
                            let prefix = if batch { format!("{}: ", p.display()) } else { String::new() };
                            println!("{prefix}{} (engine {})", v.label(), v.engine);
                            if let Some(r) = &v.reason {
                                println!("  reason: {r}");
                            }
                            if let Some(w) = &v.witness {
                                println!("  witness: {}", w.to_json());
                            }
                        }
                    }
                }
                Err(Fail(msg)) => {
                    eprintln!("error: {msg}");
                    codes.push(EXIT_ERROR);
                }
            }
        }
        Ok(batch_code(&codes))
    }

    fn netlist(
        &self,
        input: &Path,
        f: impl Fn(&ModalCircuit, FrameClass) -> Result<ModalCircuit, Fail>,
    ) -> Result<i32, Fail> {
        let c = self.load(input)?;
        let out = f(&c, self.cli.frame).map_err(|Fail(m)| Fail(format!("{}: {m}", input.display())))?;
        match self.format(Format::Text) {
            Format::Text => print!("{}", out.to_netlist()),
            Format::Json => println!("{}", json!({"netlist": out.to_netlist()})),
        }
        Ok(EXIT_YES)
    }

    fn equiv(&self, a: &Path, b: &Path) -> Result<i32, Fail> {
        let (ca, cb) = (self.load(a)?, self.load(b)?);
        let frame = self.cli.frame;
        let affine = NamedClone::L.contains_base(&ca.base()) && NamedClone::L.contains_base(&cb.base());
        let (answer, method) = if affine && matches!(frame, FrameClass::K | FrameClass::KD) {
            (Some(xor_equivalent(&ca, &cb, frame)?), "xor")
        } else {
            (oracle_equivalent(&ca, &cb, frame, &Bounds::from_env()), "oracle")
        };
        match self.format(Format::Json) {
            Format::Json => println!("{}", json!({"equivalent": answer, "method": method})),
            Format::Text => println!("{}", answer.map_or("unknown".to_string(), |x| x.to_string())),
        }
        Ok(match answer {
            Some(true) => EXIT_YES,
            Some(false) => EXIT_NO,
            None => EXIT_UNKNOWN,
        })
    }

    fn oracle(&self, input: &Path, task: Task, witness: Option<&Path>) -> Result<i32, Fail> {
        let c = self.load(input)?;
        let frame = self.cli.frame;
        if let Some(wp) = witness {
            return self.check_witness(&c, task, wp);
        }
        let bounds = Bounds::from_env();
        let v = match task {
            Task::Sat => match brute_force_sat(&c, frame, &bounds) {
                OracleSat::Sat(w) => Verdict::sat("oracle", true, Some(w)),
                OracleSat::Unsat => Verdict::sat("oracle", false, None),
                OracleSat::Unknown(r) => Verdict::unknown("oracle", task, r),
            },
            Task::Valid => {
                let mut v = match brute_force_valid(&c, frame, &bounds) {
                    OracleValid::Valid => Verdict::sat("oracle", true, None),
                    OracleValid::Falsifiable(w) => Verdict::sat("oracle", false, Some(w)),
                    OracleValid::Unknown(r) => Verdict::unknown("oracle", task, r),
                };
                v.task = Task::Valid;
                v
            }
        };
        match self.format(Format::Json) {
            Format::Json => println!("{}", v.to_json()),
            Format::Text => {
                println!("{} (engine oracle)", v.label());
                if let Some(w) = &v.witness {
                    println!("  witness: {}", w.to_json());
                }
            }
        }
        Ok(match v.answer {
            Some(true) => EXIT_YES,
            Some(false) => EXIT_NO,
            None => EXIT_UNKNOWN,
        })
    }

    /// Accepts a bare witness or a verdict carrying one. A verdict's `task`
    /// decides whether the witness must satisfy or falsify the input.
    fn check_witness(&self, c: &ModalCircuit, task: Task, wp: &Path) -> Result<i32, Fail> {
        let text = read(wp)?;
        let value: Value = serde_json::from_str(&text).map_err(|e| Fail(format!("{}: {e}", wp.display())))?;
        let (task, raw) = match value.get("witness") {
            Some(w) => {
                let t = match value.get("task").and_then(Value::as_str) {
                    Some(t) => t.parse().map_err(Fail)?,
                    None => task,
                };
                (t, w.clone())
            }
            None if value.get("result").is_some() => {
                return Err(Fail(format!("{}: verdict carries no witness", wp.display())));
            }
            None => (task, value),
        };
        let w = Witness::from_json(&raw.to_string()).map_err(|e| Fail(format!("{}: {e}", wp.display())))?;
        let frame = self.cli.frame;
        let ok = match task {
            Task::Sat => w.verifies(c, frame),
            Task::Valid => frame_in_class(&w.model, frame) && !holds(&w.model, w.root, c),
        };
        match self.format(Format::Json) {
            Format::Json => println!("{}", json!({"witness_ok": ok})),
            Format::Text => println!("{ok}"),
        }
        Ok(if ok { EXIT_YES } else { EXIT_NO })
    }

    fn selftest(&self) -> Result<i32, Fail> {
        let reports = selftest_reports(self.cli.seed);
        let fmt = self.format(Format::Text);
        for r in &reports {
            match fmt {
                Format::Text => println!("{r}"),
                Format::Json => println!(
                    "{}",
                    json!({"check": r.name, "passed": r.passed(), "checked": r.checked,
                           "failures": r.failures, "inconclusive": r.inconclusive})
                ),
            }
        }
        Ok(if reports.iter().all(Report::passed) { EXIT_YES } else { EXIT_NO })
    }
}

/// The reduced-size suites behind `selftest`.
pub fn selftest_reports(seed: u64) -> Vec<Report> {
    use FrameClass::*;
    let mut out = vec![
        checks::xor_completeness(5, 2, 2, K, seed),
        checks::xor_completeness(5, 2, 2, KD, seed),
        checks::xor_minimality(4, K, seed),
        checks::xor_idempotence(200, 30, seed),
    ];
    for case in checks::engine_cases(3) {
        out.push(checks::engine_agreement(&case));
    }
    out.push(checks::tableau_agreement(5));
    out.extend(checks::reduction_soundness(40, seed));
    out.push(checks::duality(100, seed));
    out.push(checks::synthesis(5, seed));
    out
}

/// Batch exit code: any error, then any unknown, then any no.
fn batch_code(codes: &[i32]) -> i32 {
    [EXIT_ERROR, EXIT_UNKNOWN, EXIT_NO].into_iter().find(|c| codes.contains(c)).unwrap_or(EXIT_YES)
}
