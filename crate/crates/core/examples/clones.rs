//! Locate a few bases in Post's lattice and synthesize functions over them.
//!
//!     cargo run --example clones

use modsat::boolfn::{clone_profile, find_implementation, Base, FunctionTable};

fn main() {
    let bases = [
        ("and, not", Base::builtins(&["and", "not"])),
        ("xor, const1", Base::builtins(&["xor", "const1"])),
        ("andnot", Base::parse("andnot 2 0010").unwrap()),
        ("and, or, const0, const1", Base::builtins(&["and", "or", "const0", "const1"])),
        ("or", Base::builtins(&["or"])),
    ];
    for (label, b) in &bases {
        let p = clone_profile(b).expect("small base");
        let name = p.named_clone.map(|c| c.name()).unwrap_or("-");
        println!("{{{label}}}: clone {name}, monotone {}, linear {}, contains x∧¬y {}", p.in_m, p.in_l, p.has_s1);
    }

    // x ∧ ¬y is the characteristic function of S1; find it over {nand}
    let target = FunctionTable::parse_bits("target", 2, "0010").unwrap();
    let nand = Base::parse("nand 2 1110").unwrap();
    let f = find_implementation(&nand, &target, false, 4).unwrap();
    println!("x∧¬y over nand: {f} (depth {}, size {})", f.depth(), f.size());

    let maj = FunctionTable::from_fn("maj", 3, |i| i.count_ones() >= 2);
    let f = find_implementation(&bases[3].1, &maj, false, 4).unwrap();
    println!("majority over and/or: {f}");
}
