//! Read a netlist and a formula, then apply the structural transforms.
//!
//!     cargo run --example parse_transform

use modsat::boolfn::Base;
use modsat::ir::{dualize, expand, kd_to_k, parse_circuit, parse_formula, rewrite_base, ParseOptions};

const NETLIST: &str = "\
# shared subterm: ◇1 x is used twice
a = VAR x
b = VAR y
d = DIA 1 a
e = and d b
f = or d e
g = BOX 2 f
OUTPUT g
";

fn main() {
    let opts = ParseOptions::default();
    let c = parse_circuit(NETLIST, &opts).unwrap();
    println!("circuit: {} gates, modal depth {}, k = {}", c.size(), c.modal_depth(), c.k());
    println!("{}", c.to_netlist());

    let tree = expand(&c, 1000).unwrap();
    println!("as a formula: {tree} (size {})", tree.size());
    println!("dual: {}", expand(&dualize(&c), 1000).unwrap());

    let nand = Base::parse("nand 2 1110").unwrap();
    let r = rewrite_base(&c, &nand).unwrap();
    println!("over nand: {} gates", r.size());

    println!("KD as K: {} gates", kd_to_k(&c).size());

    let phi = parse_formula("xor(box 1 x, dia 1 not(y))", &opts).unwrap();
    println!("parsed {phi}: size {}, variables {:?}", phi.size(), phi.variables());
    match parse_circuit("a = VAR x\nOUTPUT b\n", &opts) {
        Ok(_) => unreachable!(),
        Err(e) => println!("error: {e}"),
    }
}
