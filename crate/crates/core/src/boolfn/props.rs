use super::table::FunctionTable;

/// Per-function properties used by the clone tests.
///
/// 0-ary functions are judged as unary constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PropertyProfile {
    pub reproduces0: bool,
    pub reproduces1: bool,
    pub monotone: bool,
    pub self_dual: bool,
    pub affine: bool,
    pub essentially_unary: bool,
    pub is_or_with_constants: bool,
    pub is_and_with_constants: bool,
    /// 1-separating: some argument is 1 whenever the output is 1.
    pub separating1: bool,
}

pub fn property_profile(f: &FunctionTable) -> PropertyProfile {
    let f = f.lifted();
    let n = f.arity();
    let size = 1usize << n;
    let full = size - 1;

    let reproduces0 = !f.value(0);
    let reproduces1 = f.value(full);

    let mut monotone = true;
    'outer: for i in 0..size {
        if !f.value(i) {
            continue;
        }
        for j in 0..n {
            let up = i | (1 << j);
            if !f.value(up) {
                monotone = false;
                break 'outer;
            }
        }
    }

    let self_dual = (0..size).all(|i| f.value(i) != f.value(i ^ full));

    let affine = affine_decomposition(&f).is_some();
    let relevant = f.relevant_args();
    let essentially_unary = relevant.len() <= 1;

    let constant = f.constant_value().is_some();
    let mask: usize = relevant.iter().map(|&j| 1usize << (n - 1 - j)).sum();
    let is_or_with_constants = constant || (0..size).all(|i| f.value(i) == (i & mask != 0));
    let is_and_with_constants = constant || (0..size).all(|i| f.value(i) == (i & mask == mask));

    let separating1 = (0..n).any(|j| {
        let bit = 1usize << (n - 1 - j);
        (0..size).all(|i| !f.value(i) || i & bit != 0)
    });

    PropertyProfile {
        reproduces0,
        reproduces1,
        monotone,
        self_dual,
        affine,
        essentially_unary,
        is_or_with_constants,
        is_and_with_constants,
        separating1,
    }
}

/// Writes `f` as `c ⊕ x_{j1} ⊕ … ⊕ x_{jm}` when it is affine.
///
/// Returns the constant and the 0-based argument positions.
pub fn affine_decomposition(f: &FunctionTable) -> Option<(bool, Vec<usize>)> {
    let n = f.arity();
    let c = f.value(0);
    let coeffs: Vec<usize> = (0..n).filter(|&j| f.value(1 << (n - 1 - j)) != c).collect();
    let mask: usize = coeffs.iter().map(|&j| 1usize << (n - 1 - j)).sum();
    let ok = (0..(1usize << n)).all(|i| f.value(i) == (c ^ ((i & mask).count_ones() % 2 == 1)));
    ok.then_some((c, coeffs))
}
