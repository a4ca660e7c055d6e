//! Bundled reference codes driven by the `verify-paper` suite and the
//! acceptance tests. Element values are canonical integer codes.

use crate::gf::{Fe, FieldSpec};
use crate::mat::Mat;
use crate::polymat::PolyMatrix;
use std::sync::Arc;

fn mk(field: Arc<FieldSpec>, k: usize, n: usize, coeffs: &[&[&[u64]]]) -> PolyMatrix {
    let mats = coeffs
        .iter()
        .map(|m| {
            Mat::from_rows(
                m.iter()
                    .map(|row| row.iter().map(|&v| Fe(v)).collect())
                    .collect(),
            )
        })
        .collect();
    PolyMatrix::new(field, k, n, mats).expect("reference data is well formed")
}

/// (n, 1, 1) all-ones code over GF(2).
pub fn ex1_all_ones(n: usize) -> PolyMatrix {
    let field = Arc::new(FieldSpec::new(2, 1, None).unwrap());
    let ones: Vec<u64> = vec![1; n];
    let row: &[u64] = &ones;
    mk(field, 1, n, &[&[row], &[row]])
}

/// (3, 1, 2) code over GF(4): G0 = G2 = (1 1 1), G1 = (1 a a^2).
pub fn ex2_f4() -> PolyMatrix {
    let field = Arc::new(FieldSpec::new(2, 2, None).unwrap());
    // With modulus x^2 + x + 1: a = 2, a^2 = a + 1 = 3.
    mk(field, 1, 3, &[&[&[1, 1, 1]], &[&[1, 2, 3]], &[&[1, 1, 1]]])
}

/// (3, 1, 3) code over GF(7).
pub fn ex3_f7() -> PolyMatrix {
    let field = Arc::new(FieldSpec::new(7, 1, None).unwrap());
    mk(
        field,
        1,
        3,
        &[&[&[4, 4, 2]], &[&[1, 4, 3]], &[&[4, 6, 2]], &[&[1, 2, 1]]],
    )
}

/// (3, 1, 3) code over GF(16) under the given degree-4 modulus.
/// Entries are polynomial expressions in the primitive element a:
/// G0 = (a^2+1, 1, a^3+1), G1 = (a^3+a, a^3+a^2+1, a^3),
/// G2 = (a^3+a^2+a+1, a+1, a^3+a^2+a), G3 = (a^2+1, a^3+a^2, a^2+a+1).
pub fn ex3_f16(modulus: &[u64]) -> PolyMatrix {
    let field = Arc::new(FieldSpec::new(2, 4, Some(modulus)).unwrap());
    mk(
        field,
        1,
        3,
        &[
            &[&[5, 1, 9]],
            &[&[10, 13, 8]],
            &[&[15, 3, 14]],
            &[&[5, 12, 7]],
        ],
    )
}

/// The two primitive degree-4 moduli over GF(2), little-endian.
pub fn gf16_primitive_moduli() -> [[u64; 5]; 2] {
    [[1, 1, 0, 0, 1], [1, 0, 0, 1, 1]]
}

/// (5, 2, 4) code over GF(31).
pub fn ex4_f31() -> PolyMatrix {
    let field = Arc::new(FieldSpec::new(31, 1, None).unwrap());
    mk(
        field,
        2,
        5,
        &[
            &[&[5, 30, 14, 11, 1], &[3, 23, 21, 12, 5]],
            &[&[17, 4, 24, 14, 7], &[7, 24, 12, 20, 22]],
            &[&[14, 0, 12, 19, 1], &[23, 1, 21, 1, 22]],
        ],
    )
}

/// (3, 2, 3) code over GF(3).
pub fn ex5_f3() -> PolyMatrix {
    let field = Arc::new(FieldSpec::new(3, 1, None).unwrap());
    mk(
        field,
        2,
        3,
        &[
            &[&[1, 0, 2], &[2, 1, 2]],
            &[&[1, 1, 1], &[1, 0, 2]],
            &[&[1, 1, 1], &[0, 0, 0]],
        ],
    )
}

/// (6, 2, 3) code over GF(7). The top coefficient block is stored padded to
/// n = 6 columns of the same all-ones pattern.
pub fn ex6_f7() -> PolyMatrix {
    let field = Arc::new(FieldSpec::new(7, 1, None).unwrap());
    mk(
        field,
        2,
        6,
        &[
            &[&[2, 5, 6, 2, 2, 0], &[6, 5, 5, 0, 3, 4]],
            &[&[4, 6, 4, 4, 5, 5], &[1, 4, 0, 2, 5, 2]],
            &[&[1, 1, 1, 1, 1, 1], &[0, 0, 0, 0, 0, 0]],
        ],
    )
}

/// (6, 2, 3) code over GF(67) whose stacked matrix (Gt2; G1; G0) is totally
/// nonsingular, certifying under the earlier (prior-work) conditions with
/// nu = 2. Found by the seeded searcher (seed 99, candidate 6222) and
/// trellis-confirmed MDS.
pub fn prior_work_f67() -> PolyMatrix {
    let field = Arc::new(FieldSpec::new(67, 1, None).unwrap());
    mk(
        field,
        2,
        6,
        &[
            &[&[10, 37, 33, 22, 4, 16], &[29, 39, 30, 36, 11, 40]],
            &[&[10, 36, 4, 57, 10, 62], &[37, 39, 43, 37, 17, 59]],
            &[&[12, 18, 39, 11, 50, 64], &[0, 0, 0, 0, 0, 0]],
        ],
    )
}
