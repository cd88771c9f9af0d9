//! Property tests for the algebraic and combinatorial invariants.

use num_traits::ToPrimitive;
use proptest::prelude::*;
use qdist::algebra::{
    in_row_span, rank_gf2, trace_inner_product, BinaryMatrix, Pauli, PauliVector,
};
use qdist::bits::BitVec;
use qdist::clusters::{count_clusters, CensusOptions};
use qdist::codes::StabilizerCode;
use qdist::formats::{parse_pauli_text, write_pauli_text};
use qdist::graph::ConnectivityGraph;

fn arb_pauli_vector(n: usize) -> impl Strategy<Value = PauliVector> {
    prop::collection::vec(0u8..4, n).prop_map(|symbols| {
        let paulis: Vec<Pauli> = symbols
            .iter()
            .map(|&s| match s {
                0 => Pauli::I,
                1 => Pauli::X,
                2 => Pauli::Y,
                _ => Pauli::Z,
            })
            .collect();
        PauliVector::from_paulis(&paulis)
    })
}

fn arb_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BinaryMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(any::<bool>(), c), r)
            .prop_map(move |rows| {
                BinaryMatrix::from_rows(
                    rows.into_iter().map(|b| BitVec::from_bools(&b)).collect(),
                    c,
                )
                .unwrap()
            })
    })
}

proptest! {
    #[test]
    fn trace_inner_product_is_symmetric_and_bilinear(
        (a, b, c) in (2usize..24).prop_flat_map(|n| {
            (arb_pauli_vector(n), arb_pauli_vector(n), arb_pauli_vector(n))
        })
    ) {
        let ab = trace_inner_product(&a, &b).unwrap();
        let ba = trace_inner_product(&b, &a).unwrap();
        prop_assert_eq!(ab, ba);

        // (a + b) * c = a * c xor b * c
        let mut sum = a.clone();
        sum.mul_assign(&b);
        let lhs = trace_inner_product(&sum, &c).unwrap();
        let rhs = trace_inner_product(&a, &c).unwrap() ^ trace_inner_product(&b, &c).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rank_is_transpose_invariant(m in arb_matrix(64, 64)) {
        prop_assert_eq!(rank_gf2(&m), rank_gf2(&m.transpose()));
    }

    #[test]
    fn kernel_vectors_annihilate_and_count(m in arb_matrix(24, 24)) {
        let basis = m.kernel_basis();
        prop_assert_eq!(basis.len(), m.num_cols() - m.rank());
        for x in &basis {
            prop_assert!(m.mul_vec(x).unwrap().is_zero());
        }
        if !basis.is_empty() {
            let stacked = BinaryMatrix::from_rows(basis.clone(), m.num_cols()).unwrap();
            prop_assert_eq!(stacked.rank(), basis.len());
        }
    }

    #[test]
    fn row_span_matches_exhaustive_combination_check(
        m in arb_matrix(8, 10),
        x in prop::collection::vec(any::<bool>(), 10),
    ) {
        let x = BitVec::from_bools(&x[..m.num_cols()]);
        let fast = in_row_span(&m, &x).unwrap();
        let mut slow = false;
        for mask in 0u32..(1 << m.num_rows()) {
            let mut acc = BitVec::zeros(m.num_cols());
            for (i, row) in m.rows().iter().enumerate() {
                if mask >> i & 1 == 1 {
                    acc.xor_assign(row);
                }
            }
            if acc == x {
                slow = true;
                break;
            }
        }
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn syndrome_is_additive(
        (rows, a, b) in (3usize..10).prop_flat_map(|n| {
            (
                prop::collection::vec(arb_pauli_vector(n), 1..6),
                arb_pauli_vector(n),
                arb_pauli_vector(n),
            )
        })
    ) {
        let n = a.len();
        let code = StabilizerCode::new(n, rows).unwrap();
        let mut sum = a.clone();
        sum.mul_assign(&b);
        let mut expected = code.syndrome(&a).unwrap();
        expected.xor_assign(&code.syndrome(&b).unwrap());
        prop_assert_eq!(code.syndrome(&sum).unwrap(), expected);
    }

    #[test]
    fn logical_predicate_is_coset_invariant(
        (code_idx, e) in (0usize..4).prop_flat_map(|i| (Just(i), arb_pauli_vector(
            [7usize, 8, 5, 18][i]
        )))
    ) {
        let code = match code_idx {
            0 => qdist::codes::from_css(&qdist::codes::steane_code()),
            1 => qdist::codes::from_css(&qdist::codes::toric_code(2).unwrap()),
            2 => qdist::codes::five_qubit_code(),
            _ => qdist::codes::from_css(&qdist::codes::toric_code(3).unwrap()),
        };
        let before = code.is_logical(&e).unwrap();
        for row in code.rows().iter().take(3) {
            let mut shifted = e.clone();
            shifted.mul_assign(row);
            prop_assert_eq!(code.is_logical(&shifted).unwrap(), before);
        }
    }

    #[test]
    fn graph_is_independent_of_row_order(
        (n, mut supports) in (4usize..12).prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(
                    prop::collection::vec(0..n, 2..5),
                    1..8,
                ),
            )
        }),
        shuffle_seed in any::<u64>(),
    ) {
        for s in supports.iter_mut() {
            s.sort_unstable();
            s.dedup();
        }
        let a = ConnectivityGraph::from_supports(&supports, n).unwrap();
        // deterministic pseudo-shuffle of the row order
        let mut shuffled = supports.clone();
        let len = shuffled.len();
        let mut state = shuffle_seed;
        for i in (1..len).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            let j = (state >> 33) as usize % (i + 1);
            shuffled.swap(i, j);
        }
        let b = ConnectivityGraph::from_supports(&shuffled, n).unwrap();
        prop_assert_eq!(a.to_edge_list(), b.to_edge_list());
    }

    #[test]
    fn pauli_text_round_trips(
        (n, rows) in (1usize..16).prop_flat_map(|n| {
            (Just(n), prop::collection::vec(arb_pauli_vector(n), 0..8))
        })
    ) {
        let code = StabilizerCode::new(n, rows).unwrap();
        let text = write_pauli_text(&code, &[]);
        let back = parse_pauli_text(&text).unwrap();
        prop_assert_eq!(back.n(), code.n());
        let orig: Vec<String> = code.rows().iter().map(ToString::to_string).collect();
        let round: Vec<String> = back.rows().iter().map(ToString::to_string).collect();
        prop_assert_eq!(orig, round);
        prop_assert_eq!(write_pauli_text(&back, &[]), text);
    }
}

/// Census totals on arbitrary small graphs agree with subset brute force.
proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn census_matches_subset_brute_force(
        (n, supports) in (3usize..10).prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(prop::collection::vec(0..n, 2..4), 1..7),
            )
        })
    ) {
        let g = ConnectivityGraph::from_supports(&supports, n).unwrap();
        let census = count_clusters(&g, n, &CensusOptions::default());
        let expected = brute_force_counts(&g, n);
        let got: Vec<u64> = census
            .totals
            .iter()
            .map(|c| c.to_u64().unwrap())
            .collect();
        prop_assert_eq!(got, expected);
    }
}

fn brute_force_counts(g: &ConnectivityGraph, w_max: usize) -> Vec<u64> {
    let n = g.num_vertices();
    let mut counts = vec![0u64; w_max];
    for mask in 1u32..(1 << n) {
        let w = mask.count_ones() as usize;
        if w > w_max {
            continue;
        }
        let first = mask.trailing_zeros();
        let mut seen = 1u32 << first;
        let mut queue = vec![first];
        while let Some(v) = queue.pop() {
            for &u in g.neighbors(v) {
                let bit = 1u32 << u;
                if mask & bit != 0 && seen & bit == 0 {
                    seen |= bit;
                    queue.push(u);
                }
            }
        }
        if seen == mask {
            counts[w - 1] += 1;
        }
    }
    counts
}
