//! Netlist and formula readers.
//!
//! Netlist: one statement per line, `ID = VAR name`, `ID = CONST 0|1`,
//! `ID = DIA i ID`, `ID = BOX i ID`, `ID = FNAME ID...`, `OUTPUT ID`.
//! Definitions may appear in any order. `#` starts a comment.
//!
//! Formula: `box INT f | dia INT f | every f | NAME(f, ...) | VAR | 0 | 1 | (f)`.

use std::collections::HashMap;

use super::circuit::{CircuitBuilder, GateId, GateKind, ModalCircuit};
use super::formula::ModalFormula;
use crate::boolfn::{is_identifier, Base, FunctionTable};
use crate::error::ParseError;

/// Settings shared by both readers.
#[derive(Clone, Debug, Default)]
pub struct ParseOptions {
    /// Functions beyond the builtins.
    pub base: Base,
    /// Number of relations; indices above it are rejected. `None` infers it.
    pub k: Option<u32>,
}

impl ParseOptions {
    pub fn with_base(base: Base) -> Self {
        ParseOptions { base, k: None }
    }
}

struct Def {
    kind: GateKind,
    args: Vec<(String, usize, usize)>,
}

fn parse_modality(tok: &str, line: usize, col: usize, k: Option<u32>) -> Result<u32, ParseError> {
    let i: u32 = tok.parse().map_err(|_| ParseError::new(line, col, format!("expected modality index, found {tok:?}")))?;
    if i == 0 || k.is_some_and(|k| i > k) {
        let bound = k.map(|k| format!("1..={k}")).unwrap_or_else(|| "1..".into());
        return Err(ParseError::new(line, col, format!("modality index {i} out of range {bound}")));
    }
    Ok(i)
}

fn resolve(opts: &ParseOptions, name: &str, line: usize, col: usize) -> Result<FunctionTable, ParseError> {
    opts.base.resolve(name).ok_or_else(|| ParseError::new(line, col, format!("unknown function {name:?}")))
}

/// Tokens of a line with 1-based columns.
fn words(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() || c == '=' {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
            if c == '=' {
                out.push((i + 1, "="));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

pub fn parse_circuit(text: &str, opts: &ParseOptions) -> Result<ModalCircuit, ParseError> {
    let mut defs: Vec<(String, Def)> = Vec::new();
    let mut by_name: HashMap<String, usize> = HashMap::new();
    let mut output: Option<(String, usize, usize)> = None;

    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = raw.split('#').next().unwrap_or("");
        let w = words(line);
        if w.is_empty() {
            continue;
        }
        let (c0, first) = w[0];
        if first.eq_ignore_ascii_case("OUTPUT") {
            if w.len() != 2 {
                return Err(ParseError::new(line_no, c0, "expected `OUTPUT ID`"));
            }
            if output.is_some() {
                return Err(ParseError::new(line_no, c0, "duplicate OUTPUT"));
            }
            output = Some((w[1].1.to_string(), line_no, w[1].0));
            continue;
        }
        if !is_identifier(first) {
            return Err(ParseError::new(line_no, c0, format!("expected gate identifier, found {first:?}")));
        }
        if w.len() < 3 || w[1].1 != "=" {
            let col = w.get(1).map(|t| t.0).unwrap_or(c0 + first.len());
            return Err(ParseError::new(line_no, col, "expected `=`"));
        }
        if by_name.contains_key(first) {
            return Err(ParseError::new(line_no, c0, format!("gate {first:?} defined twice")));
        }
        let (oc, op) = w[2];
        let rest = &w[3..];
        let need = |n: usize| -> Result<(), ParseError> {
            if rest.len() != n {
                let col = rest.get(n).map(|t| t.0).unwrap_or(oc);
                Err(ParseError::new(line_no, col, format!("{op} expects {n} operand(s), got {}", rest.len())))
            } else {
                Ok(())
            }
        };
        let arg = |t: &(usize, &str)| (t.1.to_string(), line_no, t.0);
        let def = match op.to_ascii_uppercase().as_str() {
            "VAR" => {
                need(1)?;
                if !is_identifier(rest[0].1) {
                    return Err(ParseError::new(line_no, rest[0].0, format!("bad variable name {:?}", rest[0].1)));
                }
                Def { kind: GateKind::Var(rest[0].1.to_string()), args: vec![] }
            }
            "CONST" => {
                need(1)?;
                let v = match rest[0].1 {
                    "0" => false,
                    "1" => true,
                    other => return Err(ParseError::new(line_no, rest[0].0, format!("expected 0 or 1, found {other:?}"))),
                };
                Def { kind: GateKind::Const(v), args: vec![] }
            }
            m @ ("DIA" | "BOX") => {
                need(2)?;
                let i = parse_modality(rest[0].1, line_no, rest[0].0, opts.k)?;
                let kind = if m == "DIA" { GateKind::Dia(i) } else { GateKind::Box(i) };
                Def { kind, args: vec![arg(&rest[1])] }
            }
            _ => {
                let f = resolve(opts, op, line_no, oc)?;
                if f.arity() != rest.len() {
                    return Err(ParseError::new(
                        line_no,
                        oc,
                        format!("arity mismatch: {} takes {} argument(s), got {}", f.name(), f.arity(), rest.len()),
                    ));
                }
                let kind = if f.arity() == 0 { GateKind::Const(f.value(0)) } else { GateKind::Fn(f) };
                Def { kind, args: rest.iter().map(arg).collect() }
            }
        };
        by_name.insert(first.to_string(), defs.len());
        defs.push((first.to_string(), def));
    }

    let (out_name, ol, oc) = output.ok_or_else(|| ParseError::new(text.lines().count().max(1), 1, "missing OUTPUT"))?;
    let out_def = *by_name.get(&out_name).ok_or_else(|| ParseError::new(ol, oc, format!("undefined gate {out_name:?}")))?;
    for (_, d) in &defs {
        for (a, l, c) in &d.args {
            if !by_name.contains_key(a) {
                return Err(ParseError::new(*l, *c, format!("undefined gate {a:?}")));
            }
        }
    }

    // topological order by depth-first visits in file order
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done(GateId),
    }
    let mut mark = vec![Mark::New; defs.len()];
    let mut b = CircuitBuilder::new();
    for root in 0..defs.len() {
        if mark[root] != Mark::New {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        mark[root] = Mark::Active;
        while let Some(&mut (d, ref mut next)) = stack.last_mut() {
            let def = &defs[d].1;
            if *next < def.args.len() {
                let (a, l, c) = &def.args[*next];
                *next += 1;
                let ai = by_name[a];
                match mark[ai] {
                    Mark::New => {
                        mark[ai] = Mark::Active;
                        stack.push((ai, 0));
                    }
                    Mark::Active => return Err(ParseError::new(*l, *c, format!("cycle through gate {a:?}"))),
                    Mark::Done(_) => {}
                }
            } else {
                let args = def
                    .args
                    .iter()
                    .map(|(a, _, _)| match mark[by_name[a]] {
                        Mark::Done(id) => id,
                        _ => unreachable!(),
                    })
                    .collect();
                let id = b.gate(def.kind.clone(), args);
                mark[d] = Mark::Done(id);
                stack.pop();
            }
        }
    }
    let out = match mark[out_def] {
        Mark::Done(id) => id,
        _ => unreachable!(),
    };
    let mut c = b.finish(out);
    if let Some(k) = opts.k {
        c = c.with_k(k);
    }
    Ok(c)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(String),
    LParen,
    RParen,
    Comma,
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

impl Lexer {
    fn new(text: &str) -> Result<Self, ParseError> {
        let mut toks = Vec::new();
        let mut line = 1;
        let mut col = 1;
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (l0, c0) = (line, col);
            if c == '\n' {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            if c.is_whitespace() {
                col += 1;
                i += 1;
                continue;
            }
            if c == '#' {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            let single = match c {
                '(' => Some(Tok::LParen),
                ')' => Some(Tok::RParen),
                ',' => Some(Tok::Comma),
                _ => None,
            };
            if let Some(t) = single {
                toks.push((t, l0, c0));
                col += 1;
                i += 1;
                continue;
            }
            if c.is_ascii_alphanumeric() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                col += i - start;
                let tok = if s.chars().all(|c| c.is_ascii_digit()) {
                    Tok::Int(s)
                } else if s.chars().next().unwrap().is_ascii_digit() {
                    return Err(ParseError::new(l0, c0, format!("bad token {s:?}")));
                } else {
                    Tok::Ident(s)
                };
                toks.push((tok, l0, c0));
                continue;
            }
            return Err(ParseError::new(l0, c0, format!("unexpected character {c:?}")));
        }
        toks.push((Tok::End, line, col));
        Ok(Lexer { toks, pos: 0 })
    }

    fn peek(&self) -> &(Tok, usize, usize) {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> (Tok, usize, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        let (t, l, c) = self.next();
        if t == want {
            Ok(())
        } else {
            Err(ParseError::new(l, c, format!("expected {what}, found {}", describe(&t))))
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) | Tok::Int(s) => format!("{s:?}"),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::Comma => "','".into(),
        Tok::End => "end of input".into(),
    }
}

pub fn parse_formula(text: &str, opts: &ParseOptions) -> Result<ModalFormula, ParseError> {
    let mut lx = Lexer::new(text)?;
    let f = formula(&mut lx, opts)?;
    let (t, l, c) = lx.next();
    if t != Tok::End {
        return Err(ParseError::new(l, c, format!("unexpected {} after formula", describe(&t))));
    }
    Ok(f)
}

fn formula(lx: &mut Lexer, opts: &ParseOptions) -> Result<ModalFormula, ParseError> {
    let (t, l, c) = lx.next();
    match t {
        Tok::Int(s) => match s.as_str() {
            "0" => Ok(ModalFormula::Const(false)),
            "1" => Ok(ModalFormula::Const(true)),
            _ => Err(ParseError::new(l, c, format!("expected 0 or 1, found {s:?}"))),
        },
        Tok::LParen => {
            let f = formula(lx, opts)?;
            lx.expect(Tok::RParen, "')'")?;
            Ok(f)
        }
        Tok::Ident(name) => {
            let lower = name.to_ascii_lowercase();
            if lower == "box" || lower == "dia" {
                let (it, il, ic) = lx.next();
                let Tok::Int(idx) = it else {
                    return Err(ParseError::new(il, ic, format!("expected modality index, found {}", describe(&it))));
                };
                let i = parse_modality(&idx, il, ic, opts.k)?;
                let body = formula(lx, opts)?;
                return Ok(if lower == "box" { ModalFormula::boxed(i, body) } else { ModalFormula::dia(i, body) });
            }
            if lower == "every" {
                return Ok(ModalFormula::every(formula(lx, opts)?));
            }
            if lx.peek().0 == Tok::LParen {
                lx.next();
                let f = resolve(opts, &name, l, c)?;
                let mut args = vec![formula(lx, opts)?];
                while lx.peek().0 == Tok::Comma {
                    lx.next();
                    args.push(formula(lx, opts)?);
                }
                lx.expect(Tok::RParen, "',' or ')'")?;
                if args.len() != f.arity() {
                    return Err(ParseError::new(
                        l,
                        c,
                        format!("arity mismatch: {} takes {} argument(s), got {}", f.name(), f.arity(), args.len()),
                    ));
                }
                return Ok(ModalFormula::Apply(f, args));
            }
            Ok(ModalFormula::Var(name))
        }
        other => Err(ParseError::new(l, c, format!("expected formula, found {}", describe(&other)))),
    }
}

/// Reads either syntax: text with an `OUTPUT` statement is a netlist.
pub fn parse_any(text: &str, opts: &ParseOptions) -> Result<ModalCircuit, ParseError> {
    let is_netlist = text.lines().any(|l| {
        l.split('#').next().unwrap_or("").split_whitespace().next().is_some_and(|w| w.eq_ignore_ascii_case("OUTPUT"))
    });
    if is_netlist {
        parse_circuit(text, opts)
    } else {
        let f = parse_formula(text, opts)?;
        let k = opts.k.unwrap_or(0).max(f.max_modality()).max(f.has_every() as u32);
        Ok(f.to_circuit(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> ParseOptions {
        ParseOptions::default()
    }

    #[test]
    fn netlist_example() {
        let c = parse_circuit("g1 = VAR x\ng2 = DIA 1 g1\nOUTPUT g2\n", &opts()).unwrap();
        assert_eq!(c.to_netlist(), "g1 = VAR x\ng2 = DIA 1 g1\nOUTPUT g2\n");
        assert_eq!(c.k(), 1);
    }

    #[test]
    fn forward_references_and_comments() {
        let text = "# root first\nout = and a b\na = VAR x  # x\nb = not a\nOUTPUT out\n";
        let c = parse_circuit(text, &opts()).unwrap();
        assert_eq!(c.size(), 3);
        assert_eq!(c.to_netlist(), "g1 = VAR x\ng2 = not g1\ng3 = and g1 g2\nOUTPUT g3\n");
    }

    #[test]
    fn cycle_rejected() {
        let e = parse_circuit("g1 = AND g1 g1\nOUTPUT g1\n", &opts()).unwrap_err();
        assert!(e.msg.contains("cycle"), "{e}");
        assert_eq!(e.line, 1);
        let e = parse_circuit("a = not b\nb = not a\nOUTPUT a\n", &opts()).unwrap_err();
        assert!(e.msg.contains("cycle"));
    }

    #[test]
    fn errors_have_locations() {
        let e = parse_circuit("g1 = VAR x\ng2 = and g1\nOUTPUT g2\n", &opts()).unwrap_err();
        assert_eq!((e.line, e.col), (2, 6));
        assert!(e.msg.contains("arity"));
        let e = parse_circuit("g1 = VAR x\ng2 = DIA 0 g1\nOUTPUT g2\n", &opts()).unwrap_err();
        assert_eq!((e.line, e.col), (2, 10));
        let o = ParseOptions { k: Some(1), ..opts() };
        let e = parse_circuit("g1 = VAR x\ng2 = BOX 2 g1\nOUTPUT g2\n", &o).unwrap_err();
        assert!(e.msg.contains("out of range"));
        let e = parse_circuit("g1 = VAR x\ng2 = frob g1\nOUTPUT g2\n", &opts()).unwrap_err();
        assert!(e.msg.contains("unknown function"));
        let e = parse_circuit("g1 = VAR x\n", &opts()).unwrap_err();
        assert!(e.msg.contains("OUTPUT"));
        let e = parse_circuit("g1 = VAR x\nOUTPUT g9\n", &opts()).unwrap_err();
        assert_eq!((e.line, e.col), (2, 8));
    }

    #[test]
    fn formula_example() {
        let f = parse_formula("dia 1 (xor(x, x))", &opts()).unwrap();
        assert_eq!(f, ModalFormula::dia(1, ModalFormula::xor(ModalFormula::var("x"), ModalFormula::var("x"))));
        let f = parse_formula("every box 2 and(x, 1)", &opts()).unwrap();
        assert_eq!(f.to_string(), "every box 2 and(x, 1)");
    }

    #[test]
    fn formula_errors() {
        let e = parse_formula("and(x)", &opts()).unwrap_err();
        assert!(e.msg.contains("arity"));
        let e = parse_formula("box x", &opts()).unwrap_err();
        assert_eq!((e.line, e.col), (1, 5));
        let e = parse_formula("x y", &opts()).unwrap_err();
        assert_eq!(e.col, 3);
        let e = parse_formula("or(x,\n  $)", &opts()).unwrap_err();
        assert_eq!((e.line, e.col), (2, 3));
    }

    #[test]
    fn custom_base_names() {
        let base = Base::parse("andnot 2 0010\n").unwrap();
        let o = ParseOptions::with_base(base);
        let f = parse_formula("andnot(x, dual_andnot(y, z))", &o).unwrap();
        assert_eq!(f.to_string(), "andnot(x, dual_andnot(y, z))");
    }

    #[test]
    fn auto_detect() {
        let c = parse_any("box 1 x", &opts()).unwrap();
        assert_eq!(c.size(), 2);
        let c = parse_any("a = VAR x\nOUTPUT a\n", &opts()).unwrap();
        assert_eq!(c.size(), 1);
    }
}
