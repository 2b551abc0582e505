//! Print the complexity table for a handful of bases.
//!
//!     cargo run --example classify

use modsat::boolfn::Base;
use modsat::classify::{classify, Instance, Repr};
use modsat::ir::ModalitySpec;
use modsat::kripke::FrameClass;
use modsat::polysolve::Task;

fn main() {
    let bases = [
        ("and,not", Base::builtins(&["and", "not"])),
        ("and,or,0,1", Base::builtins(&["and", "or", "const0", "const1"])),
        ("and,0", Base::builtins(&["and", "const0"])),
        ("or,1", Base::builtins(&["or", "const1"])),
        ("xor,1", Base::builtins(&["xor", "const1"])),
        ("andnot", Base::parse("andnot 2 0010").unwrap()),
    ];
    let frames = [FrameClass::K, FrameClass::KD, FrameClass::T, FrameClass::S4, FrameClass::S5];
    let ops = [("both", ModalitySpec::both(1)), ("box", ModalitySpec::box_only(1)), ("dia", ModalitySpec::dia_only(1))];

    print!("{:<12} {:<5}", "base", "ops");
    for f in frames {
        print!(" {:<16}", f.name());
    }
    println!();
    for (label, b) in &bases {
        for (op, m) in ops {
            print!("{label:<12} {op:<5}");
            for frame in frames {
                let inst = Instance { base: b.clone(), frame, modalities: m, repr: Repr::Circuit, task: Task::Sat };
                print!(" {:<16}", classify(&inst).map(|v| v.class.to_string()).unwrap_or_else(|e| e.to_string()));
            }
            println!();
        }
    }

    let inst = Instance::sat(bases[5].1.clone(), FrameClass::S5, ModalitySpec::box_only(2));
    println!("{}", classify(&inst).unwrap().to_json());
}
