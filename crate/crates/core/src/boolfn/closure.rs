//! Fixpoint computation of the n-ary fragment of a clone.

use super::base::Base;
use super::table::FunctionTable;
use crate::error::ResourceError;

pub const MAX_CLOSURE_ARITY: usize = 4;

/// Table of the `j`-th projection (0-based) among `n` arguments.
pub(crate) fn projection_bits(n: usize, j: usize) -> u32 {
    let mut t = 0u32;
    for p in 0..(1usize << n) {
        if p >> (n - 1 - j) & 1 == 1 {
            t |= 1 << p;
        }
    }
    t
}

pub(crate) fn full_mask(n: usize) -> u32 {
    (1u32 << (1 << n)) - 1
}

/// Applies `f` pointwise to n-ary argument tables.
pub(crate) fn compose(f: &FunctionTable, args: &[u32], n: usize) -> u32 {
    let m = f.arity();
    debug_assert_eq!(args.len(), m);
    let full = full_mask(n);
    if m <= 3 {
        let mut out = 0u32;
        for a in 0..(1usize << m) {
            if !f.value(a) {
                continue;
            }
            let mut term = full;
            for (j, &g) in args.iter().enumerate() {
                term &= if a >> (m - 1 - j) & 1 == 1 { g } else { !g };
            }
            out |= term;
        }
        out & full
    } else {
        let mut out = 0u32;
        for p in 0..(1usize << n) {
            let idx = args.iter().fold(0usize, |acc, &g| (acc << 1) | (g >> p & 1) as usize);
            if f.value(idx) {
                out |= 1 << p;
            }
        }
        out
    }
}

struct Fixpoint {
    n: usize,
    members: Vec<u32>,
    seen: Vec<bool>,
}

impl Fixpoint {
    fn add(&mut self, t: u32) -> bool {
        if self.seen[t as usize] {
            return false;
        }
        self.seen[t as usize] = true;
        self.members.push(t);
        true
    }
}

/// Runs the closure; stops early once `stop` returns true for a member.
fn run(base: &Base, n: usize, stop: Option<u32>) -> Result<Fixpoint, ResourceError> {
    if n > MAX_CLOSURE_ARITY {
        return Err(ResourceError::ClosureArity(n));
    }
    let universe = 1usize << (1usize << n);
    let mut fp = Fixpoint { n, members: Vec::new(), seen: vec![false; universe] };
    for j in 0..n {
        fp.add(projection_bits(n, j));
    }
    for f in base.functions() {
        if f.arity() == 0 {
            fp.add(if f.value(0) { full_mask(n) } else { 0 });
        }
    }
    if stop.is_some_and(|s| fp.seen[s as usize]) {
        return Ok(fp);
    }
    let funcs: Vec<&FunctionTable> = base.functions().iter().filter(|f| f.arity() > 0).collect();
    // semi-naive rounds: each new tuple must use at least one member from the last round
    let mut old_len = 0usize;
    let mut args = Vec::new();
    while old_len < fp.members.len() {
        let cur_len = fp.members.len();
        for f in &funcs {
            let m = f.arity();
            // position `d` takes a delta member, positions before it old members,
            // positions after it anything up to cur_len
            for d in 0..m {
                if d > 0 && old_len == 0 {
                    continue;
                }
                let mut idx = vec![0usize; m];
                idx[d] = old_len;
                'tuples: loop {
                    args.clear();
                    args.extend(idx.iter().map(|&i| fp.members[i]));
                    let t = compose(f, &args, fp.n);
                    if fp.add(t) && stop == Some(t) {
                        return Ok(fp);
                    }
                    if fp.members.len() == universe {
                        return Ok(fp);
                    }
                    // advance odometer
                    let mut pos = m;
                    loop {
                        if pos == 0 {
                            break 'tuples;
                        }
                        pos -= 1;
                        let (lo, hi) = match pos.cmp(&d) {
                            std::cmp::Ordering::Less => (0, old_len),
                            std::cmp::Ordering::Equal => (old_len, cur_len),
                            std::cmp::Ordering::Greater => (0, cur_len),
                        };
                        idx[pos] += 1;
                        if idx[pos] < hi {
                            break;
                        }
                        idx[pos] = lo;
                    }
                }
            }
        }
        old_len = cur_len;
    }
    Ok(fp)
}

/// The n-ary fragment of `[B]` as packed tables (bit p = output on assignment p), sorted.
pub fn nary_closure_bits(base: &Base, n: usize) -> Result<Vec<u32>, ResourceError> {
    let mut v = run(base, n, None)?.members;
    v.sort_unstable();
    Ok(v)
}

/// The n-ary fragment of `[B]`.
pub fn nary_closure(base: &Base, n: usize) -> Result<Vec<FunctionTable>, ResourceError> {
    Ok(nary_closure_bits(base, n)?
        .into_iter()
        .map(|t| FunctionTable::from_fn(format!("t{t}"), n, |p| t >> p & 1 == 1))
        .collect())
}

/// Whether `f ∈ [B]`. Constants are tested as unary functions.
pub fn clone_contains(base: &Base, f: &FunctionTable) -> Result<bool, ResourceError> {
    let f = f.lifted();
    let n = f.arity();
    if n > MAX_CLOSURE_ARITY {
        return Err(ResourceError::ClosureArity(n));
    }
    let target = f.small_bits().expect("arity checked");
    let fp = run(base, n, Some(target))?;
    Ok(fp.seen[target as usize])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::props::property_profile;

    fn bits(b: &Base, n: usize) -> Vec<u32> {
        nary_closure_bits(b, n).unwrap()
    }

    #[test]
    fn and_binary_fragment() {
        let b = Base::builtins(&["and"]);
        // projections 1100 / 1010 and x∧y, as packed little-endian positions
        let mut expect = vec![projection_bits(2, 0), projection_bits(2, 1), 0b1000];
        expect.sort();
        assert_eq!(bits(&b, 2), expect);
    }

    #[test]
    fn linear_unary() {
        let b = Base::builtins(&["xor", "const1"]);
        assert_eq!(bits(&b, 1), vec![0b00, 0b01, 0b10, 0b11]);
    }

    #[test]
    fn empty_base() {
        assert_eq!(bits(&Base::empty(), 1), vec![0b10]);
        assert_eq!(bits(&Base::empty(), 0), Vec::<u32>::new());
    }

    #[test]
    fn nullary_fragment() {
        let b = Base::builtins(&["not", "const1"]);
        assert_eq!(bits(&b, 0), vec![0, 1]);
    }

    #[test]
    fn contains_examples() {
        let an = Base::builtins(&["and", "not"]);
        assert!(clone_contains(&an, &FunctionTable::or()).unwrap());
        let a = Base::builtins(&["and"]);
        assert!(!clone_contains(&a, &FunctionTable::not()).unwrap());
        let s1 = Base::new(vec![FunctionTable::parse_bits("f", 2, "0010").unwrap()]).unwrap();
        assert!(clone_contains(&s1, &FunctionTable::and()).unwrap());
        assert!(clone_contains(&s1, &FunctionTable::constant(false)).unwrap());
        assert!(!clone_contains(&s1, &FunctionTable::constant(true)).unwrap());
    }

    #[test]
    fn full_clone_sizes() {
        let an = Base::builtins(&["and", "not"]);
        assert_eq!(bits(&an, 2).len(), 16);
        assert_eq!(bits(&an, 3).len(), 256);
        let m = Base::builtins(&["and", "or", "const0", "const1"]);
        // Dedekind numbers: 6 monotone binary, 20 ternary functions
        assert_eq!(bits(&m, 2).len(), 6);
        assert_eq!(bits(&m, 3).len(), 20);
        assert!(bits(&m, 3).iter().all(|&t| property_profile(&FunctionTable::from_fn("t", 3, |p| t >> p & 1 == 1)).monotone));
    }

    #[test]
    fn wide_member_composes() {
        let b = Base::builtins(&["xor5"]);
        let got = bits(&b, 2);
        // x⊕x⊕x⊕x⊕y = y etc.; parity of odd multiplicity stays a projection or x⊕y⊕... only odd sums
        assert!(got.contains(&projection_bits(2, 0)));
        assert!(!got.contains(&0));
    }

    #[test]
    fn arity_limit() {
        assert!(nary_closure_bits(&Base::empty(), 5).is_err());
    }
}
