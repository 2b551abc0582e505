use std::collections::BTreeMap;

use super::table::FunctionTable;
use crate::error::{ArgError, ParseError};

/// A finite set of named Boolean functions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Base {
    functions: Vec<FunctionTable>,
}

impl Base {
    pub fn new(functions: Vec<FunctionTable>) -> Result<Self, ArgError> {
        let mut b = Base::default();
        for f in functions {
            b.insert(f)?;
        }
        Ok(b)
    }

    pub fn empty() -> Self {
        Base::default()
    }

    pub fn insert(&mut self, f: FunctionTable) -> Result<(), ArgError> {
        if f.name().is_empty() {
            return Err(ArgError::EmptyName);
        }
        if self.get(f.name()).is_some() {
            return Err(ArgError::DuplicateName(f.name().to_string()));
        }
        self.functions.push(f);
        Ok(())
    }

    /// Adds `f` unless a function with the same table is already present.
    pub fn insert_function(&mut self, f: FunctionTable) {
        if self.contains_table(&f) {
            return;
        }
        let mut g = f;
        while self.get(g.name()).is_some() {
            let name = format!("{}_", g.name());
            g = g.with_name(name);
        }
        self.functions.push(g);
    }

    pub fn get(&self, name: &str) -> Option<&FunctionTable> {
        self.functions.iter().find(|f| f.name() == name)
    }

    pub fn contains_table(&self, f: &FunctionTable) -> bool {
        self.functions.iter().any(|g| g.same_function(f))
    }

    pub fn functions(&self) -> &[FunctionTable] {
        &self.functions
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn max_arity(&self) -> usize {
        self.functions.iter().map(|f| f.arity()).max().unwrap_or(0)
    }

    pub fn with(&self, f: FunctionTable) -> Base {
        let mut b = self.clone();
        b.insert_function(f);
        b
    }

    pub fn dual(&self) -> Base {
        let mut b = Base::default();
        for f in &self.functions {
            b.insert_function(f.dual_table());
        }
        b
    }

    /// Builds a base from builtin names, e.g. `Base::builtins(&["and", "not"])`.
    pub fn builtins(names: &[&str]) -> Base {
        let mut b = Base::default();
        for n in names {
            let f = builtin(n).unwrap_or_else(|| panic!("unknown builtin {n}"));
            b.insert_function(f);
        }
        b
    }

    /// Resolves a function name: base members first, then builtins.
    ///
    /// Lookup is case-insensitive. `dual_NAME` resolves to the dual of `NAME`.
    pub fn resolve(&self, name: &str) -> Option<FunctionTable> {
        if let Some(f) = self.get(name) {
            return Some(f.clone());
        }
        let lower = name.to_ascii_lowercase();
        if let Some(f) = self.functions.iter().find(|f| f.name().eq_ignore_ascii_case(name)) {
            return Some(f.clone());
        }
        if let Some(f) = builtin(&lower) {
            return Some(f);
        }
        if let Some(rest) = name.strip_prefix("dual_") {
            return self.resolve(rest).map(|f| f.dual_table().with_name(name));
        }
        None
    }

    /// Reads the base file format: `NAME ARITY BITS` per line, `#` comments,
    /// and bare builtin names.
    pub fn parse(text: &str) -> Result<Base, ParseError> {
        let mut b = Base::default();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            let col = line.len() - line.trim_start().len() + 1;
            let parts: Vec<&str> = trimmed.split_whitespace().collect();
            let f = match parts.as_slice() {
                [name] => builtin(&name.to_ascii_lowercase())
                    .ok_or_else(|| ParseError::new(ln + 1, col, format!("unknown builtin {name:?}")))?,
                [name, arity, bits] => {
                    if !is_identifier(name) {
                        return Err(ParseError::new(ln + 1, col, format!("bad function name {name:?}")));
                    }
                    let arity: usize = arity
                        .parse()
                        .map_err(|_| ParseError::new(ln + 1, col, format!("bad arity {arity:?}")))?;
                    FunctionTable::parse_bits(*name, arity, bits)
                        .map_err(|e| ParseError::new(ln + 1, col, e.to_string()))?
                }
                _ => return Err(ParseError::new(ln + 1, col, "expected `NAME ARITY BITS`")),
            };
            b.insert(f).map_err(|e| ParseError::new(ln + 1, col, e.to_string()))?;
        }
        Ok(b)
    }

    /// Serializes in the base file format.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for f in &self.functions {
            s.push_str(&format!("{} {} {}\n", f.name(), f.arity(), f.bit_string()));
        }
        s
    }

    /// Distinct tables keyed by bit string, for order-independent comparisons.
    pub fn table_set(&self) -> BTreeMap<(usize, String), String> {
        self.functions
            .iter()
            .map(|f| ((f.arity(), f.bit_string()), f.name().to_string()))
            .collect()
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Predefined functions: and, or, not, xor, const0, const1, plus
/// `andN`, `orN`, `xorN` for wider arities.
pub fn builtin(name: &str) -> Option<FunctionTable> {
    match name {
        "and" => Some(FunctionTable::and()),
        "or" => Some(FunctionTable::or()),
        "not" => Some(FunctionTable::not()),
        "xor" => Some(FunctionTable::xor()),
        "const0" => Some(FunctionTable::constant(false)),
        "const1" => Some(FunctionTable::constant(true)),
        _ => {
            for (prefix, make) in [
                ("xor", FunctionTable::parity as fn(usize) -> FunctionTable),
                ("and", FunctionTable::and_n),
                ("or", FunctionTable::or_n),
            ] {
                if let Some(rest) = name.strip_prefix(prefix) {
                    if let Ok(n) = rest.parse::<usize>() {
                        if (3..=super::table::MAX_ARITY).contains(&n) && rest == n.to_string() {
                            return Some(make(n));
                        }
                    }
                }
            }
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_base_file() {
        let b = Base::parse("# s1 generator\nandnot 2 0010\nconst1\n").unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b.get("andnot").unwrap().bit_string(), "0010");
        assert!(b.get("const1").unwrap().constant_value() == Some(true));
    }

    #[test]
    fn parse_errors_carry_location() {
        let e = Base::parse("f 2 0010\n  g 2 001\n").unwrap_err();
        assert_eq!((e.line, e.col), (2, 3));
        let e = Base::parse("f 2 0010\nf 1 01\n").unwrap_err();
        assert_eq!(e.line, 2);
    }

    #[test]
    fn resolution() {
        let b = Base::parse("maj 3 00010111\n").unwrap();
        assert_eq!(b.resolve("MAJ").unwrap().name(), "maj");
        assert_eq!(b.resolve("xor4").unwrap().arity(), 4);
        assert!(b.resolve("xor1").is_none());
        assert!(b.resolve("xor03").is_none());
        let d = b.resolve("dual_maj").unwrap();
        assert!(d.same_function(b.get("maj").unwrap()));
        assert!(b.resolve("nope").is_none());
    }

    #[test]
    fn roundtrip_text() {
        let b = Base::builtins(&["and", "not", "const1"]);
        assert_eq!(Base::parse(&b.to_text()).unwrap(), b);
    }
}
