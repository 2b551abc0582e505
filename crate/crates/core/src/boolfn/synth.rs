//! Bounded search for B-formulas computing a given function.

use std::collections::HashMap;
use std::fmt;

use super::base::Base;
use super::closure::{clone_contains, compose, projection_bits};
use super::table::FunctionTable;
use crate::error::SearchError;

/// A propositional formula over base functions. Constants are 0-ary applications.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BFormula {
    /// Argument position of the implemented function (0-based).
    Var(usize),
    Apply(FunctionTable, Vec<BFormula>),
}

impl BFormula {
    pub fn eval(&self, args: &[bool]) -> bool {
        match self {
            BFormula::Var(j) => args[*j],
            BFormula::Apply(f, xs) => f.eval_unchecked(xs.iter().map(|x| x.eval(args))),
        }
    }

    pub fn occurrences(&self, j: usize) -> usize {
        match self {
            BFormula::Var(i) => (*i == j) as usize,
            BFormula::Apply(_, xs) => xs.iter().map(|x| x.occurrences(j)).sum(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            BFormula::Var(_) => 0,
            BFormula::Apply(_, xs) => 1 + xs.iter().map(|x| x.depth()).max().unwrap_or(0),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            BFormula::Var(_) => 1,
            BFormula::Apply(_, xs) => 1 + xs.iter().map(|x| x.size()).sum::<usize>(),
        }
    }

    /// Whether this formula computes `target` on every assignment.
    pub fn computes(&self, target: &FunctionTable) -> bool {
        let n = target.arity();
        (0..(1usize << n)).all(|i| {
            let args: Vec<bool> = (0..n).map(|j| i >> (n - 1 - j) & 1 == 1).collect();
            self.eval(&args) == target.value(i)
        })
    }
}

const VAR_NAMES: [&str; 3] = ["x", "y", "z"];

impl fmt::Display for BFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BFormula::Var(j) => match VAR_NAMES.get(*j) {
                Some(n) => f.write_str(n),
                None => write!(f, "x{}", j + 1),
            },
            BFormula::Apply(g, xs) if xs.is_empty() => match g.constant_value() {
                Some(c) if g.name().starts_with("const") => write!(f, "{}", c as u8),
                _ => f.write_str(g.name()),
            },
            BFormula::Apply(g, xs) => {
                write!(f, "{}(", g.name())?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Clone)]
enum Origin {
    Var(usize),
    Apply(usize, Vec<usize>),
}

struct Entry {
    table: u32,
    occ: u32,
    origin: Origin,
}

/// Finds a formula over `B` computing `target`.
///
/// With `each_var_once`, every argument of `target` occurs exactly once;
/// constants from `B` may repeat. Search deepens one level at a time up to
/// `depth_cap`, so the result has minimal depth.
pub fn find_implementation(
    base: &Base,
    target: &FunctionTable,
    each_var_once: bool,
    depth_cap: usize,
) -> Result<BFormula, SearchError> {
    let mask = if each_var_once { (1u32 << target.arity().min(31)) - 1 } else { 0 };
    find_implementation_masked(base, target, mask, depth_cap)
}

/// As [`find_implementation`], with only the arguments in `once_mask`
/// (bit `j` for argument `j`) required to occur exactly once.
pub fn find_implementation_masked(
    base: &Base,
    target: &FunctionTable,
    once_mask: u32,
    depth_cap: usize,
) -> Result<BFormula, SearchError> {
    let n = target.arity();
    if n > 3 {
        return Err(SearchError::TargetArity(n));
    }
    let goal_table = target.small_bits().expect("arity ≤ 3");
    let once_mask = once_mask & ((1u32 << n) - 1);
    let funcs: Vec<&FunctionTable> = base.functions().iter().collect();

    let mut entries: Vec<Entry> = Vec::new();
    let mut index: HashMap<(u32, u32), usize> = HashMap::new();
    let key = |table: u32, occ: u32| (table, occ);
    let goal = key(goal_table, once_mask);

    let push = |entries: &mut Vec<Entry>, index: &mut HashMap<(u32, u32), usize>, e: Entry| {
        let k = key(e.table, e.occ);
        if index.contains_key(&k) {
            return false;
        }
        index.insert(k, entries.len());
        entries.push(e);
        true
    };

    for j in 0..n {
        push(&mut entries, &mut index, Entry { table: projection_bits(n, j), occ: (1 << j) & once_mask, origin: Origin::Var(j) });
    }
    for (fi, f) in funcs.iter().enumerate() {
        if f.arity() == 0 {
            let table = if f.value(0) { (1u32 << (1 << n)) - 1 } else { 0 };
            push(&mut entries, &mut index, Entry { table, occ: 0, origin: Origin::Apply(fi, vec![]) });
        }
    }

    let mut level_start = 0usize;
    let mut depth = 0usize;
    loop {
        if let Some(&i) = index.get(&goal) {
            return Ok(rebuild(&entries, &funcs, i));
        }
        if depth == depth_cap || level_start == entries.len() {
            break;
        }
        let level_end = entries.len();
        depth += 1;
        for (fi, f) in funcs.iter().enumerate() {
            let m = f.arity();
            if m == 0 {
                continue;
            }
            // first position holding a member of the newest level is `d`
            for d in 0..m {
                if d > 0 && level_start == 0 {
                    continue;
                }
                let ranges: Vec<(usize, usize)> = (0..m)
                    .map(|p| match p.cmp(&d) {
                        std::cmp::Ordering::Less => (0, level_start),
                        std::cmp::Ordering::Equal => (level_start, level_end),
                        std::cmp::Ordering::Greater => (0, level_end),
                    })
                    .collect();
                if ranges.iter().any(|(lo, hi)| lo >= hi) {
                    continue;
                }
                let mut idx: Vec<usize> = ranges.iter().map(|r| r.0).collect();
                let mut args = vec![0u32; m];
                'tuples: loop {
                    let mut occ = 0u32;
                    let mut ok = true;
                    for (p, &i) in idx.iter().enumerate() {
                        let e = &entries[i];
                        if occ & e.occ != 0 {
                            ok = false;
                            break;
                        }
                        occ |= e.occ;
                        args[p] = e.table;
                    }
                    if ok {
                        let table = compose(f, &args, n);
                        push(&mut entries, &mut index, Entry { table, occ, origin: Origin::Apply(fi, idx.clone()) });
                    }
                    let mut pos = m;
                    loop {
                        if pos == 0 {
                            break 'tuples;
                        }
                        pos -= 1;
                        idx[pos] += 1;
                        if idx[pos] < ranges[pos].1 {
                            break;
                        }
                        idx[pos] = ranges[pos].0;
                    }
                }
            }
        }
        level_start = level_end;
    }
    if !clone_contains(base, target)? {
        Err(SearchError::NotInClone(target.name().to_string()))
    } else {
        Err(SearchError::CapTooSmall { target: target.name().to_string(), cap: depth_cap })
    }
}

fn rebuild(entries: &[Entry], funcs: &[&FunctionTable], i: usize) -> BFormula {
    match &entries[i].origin {
        Origin::Var(j) => BFormula::Var(*j),
        Origin::Apply(fi, args) => {
            BFormula::Apply(funcs[*fi].clone(), args.iter().map(|&a| rebuild(entries, funcs, a)).collect())
        }
    }
}
