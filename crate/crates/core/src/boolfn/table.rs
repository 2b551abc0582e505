use std::fmt;

use crate::error::ArgError;

/// Largest arity a [`FunctionTable`] may have.
pub const MAX_ARITY: usize = 16;

/// A Boolean function given by its full truth table.
///
/// Bit `i` of the table is the output on the assignment whose binary
/// encoding is `i`, with argument 1 as the most significant bit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FunctionTable {
    name: String,
    arity: usize,
    words: Vec<u64>,
}

fn words_for(arity: usize) -> usize {
    ((1usize << arity) + 63) / 64
}

impl FunctionTable {
    /// Builds a table from an output predicate over assignment indices.
    pub fn from_fn(name: impl Into<String>, arity: usize, f: impl Fn(usize) -> bool) -> Self {
        assert!(arity <= MAX_ARITY, "arity {arity} above {MAX_ARITY}");
        let mut words = vec![0u64; words_for(arity)];
        for i in 0..(1usize << arity) {
            if f(i) {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        FunctionTable { name: name.into(), arity, words }
    }

    pub fn from_bits(name: impl Into<String>, arity: usize, bits: &[bool]) -> Result<Self, ArgError> {
        if arity > MAX_ARITY {
            return Err(ArgError::ArityTooLarge(arity));
        }
        if bits.len() != 1 << arity {
            return Err(ArgError::BitsLength { expected: 1 << arity, got: bits.len() });
        }
        Ok(Self::from_fn(name, arity, |i| bits[i]))
    }

    /// Parses a string of `0`/`1` characters, index 0 first.
    pub fn parse_bits(name: impl Into<String>, arity: usize, bits: &str) -> Result<Self, ArgError> {
        let mut v = Vec::with_capacity(bits.len());
        for c in bits.chars() {
            match c {
                '0' => v.push(false),
                '1' => v.push(true),
                other => return Err(ArgError::BadBit(other)),
            }
        }
        Self::from_bits(name, arity, &v)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn with_name(&self, name: impl Into<String>) -> Self {
        FunctionTable { name: name.into(), arity: self.arity, words: self.words.clone() }
    }

    /// Output on the assignment with the given index.
    #[inline]
    pub fn value(&self, index: usize) -> bool {
        (self.words[index / 64] >> (index % 64)) & 1 == 1
    }

    pub fn eval(&self, args: &[bool]) -> Result<bool, ArgError> {
        if args.len() != self.arity {
            return Err(ArgError::ArityMismatch { expected: self.arity, got: args.len() });
        }
        Ok(self.value(assignment_index(args)))
    }

    /// Evaluates without the arity check. Panics on out-of-range input in debug builds.
    #[inline]
    pub fn eval_unchecked(&self, args: impl IntoIterator<Item = bool>) -> bool {
        let mut idx = 0usize;
        let mut n = 0;
        for a in args {
            idx = (idx << 1) | a as usize;
            n += 1;
        }
        debug_assert_eq!(n, self.arity);
        self.value(idx)
    }

    pub fn bit_string(&self) -> String {
        (0..(1usize << self.arity)).map(|i| if self.value(i) { '1' } else { '0' }).collect()
    }

    /// True when both tables describe the same function, names ignored.
    pub fn same_function(&self, other: &FunctionTable) -> bool {
        self.arity == other.arity && self.words == other.words
    }

    pub fn constant_value(&self) -> Option<bool> {
        let first = self.value(0);
        (1..(1usize << self.arity)).all(|i| self.value(i) == first).then_some(first)
    }

    /// Whether the output depends on argument `j` (0-based).
    pub fn depends_on(&self, j: usize) -> bool {
        let bit = 1usize << (self.arity - 1 - j);
        (0..(1usize << self.arity)).any(|i| i & bit == 0 && self.value(i) != self.value(i | bit))
    }

    pub fn relevant_args(&self) -> Vec<usize> {
        (0..self.arity).filter(|&j| self.depends_on(j)).collect()
    }

    /// The dual function `¬f(¬x1, …, ¬xn)`.
    pub fn dual_table(&self) -> FunctionTable {
        let mask = (1usize << self.arity) - 1;
        FunctionTable::from_fn(dual_name(&self.name), self.arity, |i| !self.value(i ^ mask))
    }

    /// Lifts a 0-ary function to a unary constant; other tables are returned unchanged.
    pub fn lifted(&self) -> FunctionTable {
        if self.arity == 0 {
            let c = self.value(0);
            FunctionTable::from_fn(self.name.clone(), 1, |_| c)
        } else {
            self.clone()
        }
    }

    /// Small tables (arity ≤ 4) packed into a `u32`.
    pub fn small_bits(&self) -> Option<u32> {
        (self.arity <= 4).then(|| self.words[0] as u32)
    }

    pub fn and() -> Self {
        Self::from_fn("and", 2, |i| i == 3)
    }

    pub fn or() -> Self {
        Self::from_fn("or", 2, |i| i != 0)
    }

    pub fn not() -> Self {
        Self::from_fn("not", 1, |i| i == 0)
    }

    pub fn xor() -> Self {
        Self::parity(2)
    }

    pub fn constant(value: bool) -> Self {
        Self::from_fn(if value { "const1" } else { "const0" }, 0, |_| value)
    }

    /// n-ary parity, named `xor` for two arguments and `xorN` otherwise.
    pub fn parity(n: usize) -> Self {
        let name = if n == 2 { "xor".to_string() } else { format!("xor{n}") };
        Self::from_fn(name, n, |i| i.count_ones() % 2 == 1)
    }

    pub fn and_n(n: usize) -> Self {
        let name = if n == 2 { "and".to_string() } else { format!("and{n}") };
        Self::from_fn(name, n, move |i| i == (1 << n) - 1)
    }

    pub fn or_n(n: usize) -> Self {
        let name = if n == 2 { "or".to_string() } else { format!("or{n}") };
        Self::from_fn(name, n, |i| i != 0)
    }

    pub fn is_and(&self) -> bool {
        self.same_function(&Self::and())
    }

    pub fn is_not(&self) -> bool {
        self.same_function(&Self::not())
    }
}

pub(crate) fn dual_name(name: &str) -> String {
    match name {
        "and" => "or".into(),
        "or" => "and".into(),
        "const0" => "const1".into(),
        "const1" => "const0".into(),
        "not" => "not".into(),
        _ => match name.strip_prefix("dual_") {
            Some(rest) => rest.to_string(),
            None => format!("dual_{name}"),
        },
    }
}

/// Assignment index of an argument vector, argument 1 most significant.
pub fn assignment_index(args: &[bool]) -> usize {
    args.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
}

impl fmt::Debug for FunctionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}:{}", self.name, self.arity, self.bit_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_examples() {
        assert!(FunctionTable::and().eval(&[true, true]).unwrap());
        assert!(!FunctionTable::xor().eval(&[true, true]).unwrap());
        assert!(FunctionTable::constant(true).eval(&[]).unwrap());
        assert!(FunctionTable::and().eval(&[true]).is_err());
    }

    #[test]
    fn msb_is_first_argument() {
        let f = FunctionTable::parse_bits("f", 2, "0010").unwrap();
        // x ∧ ¬y: only (1,0) is true, index 2
        assert!(f.eval(&[true, false]).unwrap());
        assert!(!f.eval(&[false, true]).unwrap());
    }

    #[test]
    fn dual_of_and_is_or() {
        assert!(FunctionTable::and().dual_table().same_function(&FunctionTable::or()));
        assert_eq!(FunctionTable::and().dual_table().name(), "or");
        let x = FunctionTable::xor().dual_table();
        assert_eq!(x.bit_string(), "1001");
        assert_eq!(x.dual_table().name(), "xor");
    }

    #[test]
    fn bits_length_checked() {
        assert!(FunctionTable::parse_bits("f", 2, "011").is_err());
        assert!(FunctionTable::parse_bits("f", 1, "0a").is_err());
    }

    #[test]
    fn wide_tables() {
        let p = FunctionTable::parity(9);
        assert_eq!(p.arity(), 9);
        assert!(p.eval(&[true; 9]).unwrap());
        assert!(!p.eval(&[true, true, false, false, false, false, false, false, false]).unwrap());
        assert_eq!(p.relevant_args().len(), 9);
    }
}
