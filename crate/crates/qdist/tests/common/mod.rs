//! Shared fixtures for the integration suites.

use qdist::codes::{random_stabilizer_code, SparsityProfile, StabilizerCode};

/// The fixed seeded corpus: `(n, rows, j, l, seed)` for every code. All have
/// `n <= 12`, `k >= 1`, and a mix of distances 2 and 3.
pub const CORPUS: &[(usize, usize, usize, usize, u64)] = &[
    (6, 4, 3, 4, 7),
    (6, 5, 3, 4, 8),
    (7, 5, 3, 4, 25),
    (7, 6, 3, 4, 9),
    (8, 6, 3, 4, 4),
    (8, 7, 3, 4, 2),
    (9, 7, 3, 4, 31),
    (9, 8, 3, 5, 7),
    (10, 8, 3, 4, 21),
    (10, 9, 3, 5, 16),
    (11, 9, 3, 4, 36),
    (11, 10, 3, 5, 28),
    (12, 10, 3, 4, 4),
    (12, 11, 3, 5, 81),
    (12, 10, 4, 5, 3),
    (11, 9, 4, 6, 5),
    (8, 7, 4, 5, 131),
    (8, 7, 4, 5, 332),
    (9, 8, 4, 5, 569),
    (10, 9, 4, 5, 311),
    (10, 9, 4, 6, 502),
    (11, 10, 4, 6, 160),
    (12, 11, 4, 6, 250),
    (12, 11, 5, 6, 114),
    (12, 11, 5, 6, 119),
    (10, 9, 5, 6, 64),
];

pub fn corpus_codes() -> Vec<StabilizerCode> {
    CORPUS
        .iter()
        .map(|&(n, r, j, l, seed)| {
            let code = random_stabilizer_code(n, r, SparsityProfile::new(j, l), seed)
                .expect("corpus entries generate");
            assert!(code.k() >= 1);
            code
        })
        .collect()
}
