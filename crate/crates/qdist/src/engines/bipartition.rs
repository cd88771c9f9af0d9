//! Meet-in-the-middle bipartition search.
//!
//! For each candidate weight `w`, a cyclic window of length `floor(n/2)` is
//! slid over all `n` offsets; a weight-`w` vector places exactly
//! `floor(w/2)` of its support in the window at some offset, because the
//! window weight changes by at most one per shift and its cyclic average is
//! `w/2`-ish. All window vectors of the split weights are enumerated on both
//! sides, and syndrome collisions between the sides are exactly the
//! zero-syndrome weight-`w` vectors, which then face the degeneracy test.
//! The smaller side is the one indexed in memory.

use super::{checked_witness, no_logicals_shortcut, DistanceResult, SearchBudget, SearchSpace};
use crate::algebra::PauliVector;
use crate::bits::BitVec;
use crate::complexity::sliding_list_size;
use crate::error::Result;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use std::collections::HashMap;
use std::time::Instant;

/// Entries one side of the collision map may hold before the engine gives
/// up with a bound instead of exhausting memory.
const MAX_SIDE_ENTRIES: u64 = 1 << 22;

pub(super) fn search(space: &SearchSpace<'_>, budget: &SearchBudget) -> Result<DistanceResult> {
    if let Some(r) = no_logicals_shortcut(space.code) {
        return Ok(r);
    }
    let start = Instant::now();
    let deadline = budget.deadline(start);
    let n = space.n();
    let w_cap = budget.w_max.min(n);
    let symbols = space.sector.symbols();
    let q = symbols.len() as u32 + 1;

    let col_syn: Vec<Vec<BitVec>> = (0..n)
        .map(|p| {
            symbols
                .iter()
                .map(|&sym| {
                    let mut e = PauliVector::identity(n);
                    e.set(p, sym);
                    space.code.syndrome(&e).unwrap()
                })
                .collect()
        })
        .collect();

    let mut stats = super::SearchStats::default();
    let len_left = n / 2;

    for w in 1..=w_cap {
        let v_left = w / 2;
        let v_right = w - v_left;
        // estimated side sizes before materializing anything
        let left_size = sliding_list_size(q, len_left, v_left)?;
        let right_size = sliding_list_size(q, n - len_left, v_right)?;
        let smaller = left_size.clone().min(right_size.clone());
        if smaller.to_u64().is_none_or(|s| s > MAX_SIDE_ENTRIES) {
            stats.elapsed = start.elapsed();
            return Ok(DistanceResult::lower_bound(w - 1, stats));
        }

        let offsets: Vec<usize> = (0..n).collect();
        let level = offsets
            .par_iter()
            .map(|&offset| -> (u64, Option<PauliVector>) {
                let left_pos: Vec<usize> = (0..len_left).map(|t| (offset + t) % n).collect();
                let in_left: Vec<bool> = {
                    let mut mark = vec![false; n];
                    for &p in &left_pos {
                        mark[p] = true;
                    }
                    mark
                };
                let right_pos: Vec<usize> = (0..n).filter(|&p| !in_left[p]).collect();

                // index the smaller enumeration, probe with the larger
                let index_left = left_size <= right_size;
                let (store_pos, store_v, probe_pos, probe_v) = if index_left {
                    (&left_pos, v_left, &right_pos, v_right)
                } else {
                    (&right_pos, v_right, &left_pos, v_left)
                };

                let mut map: HashMap<BitVec, Vec<PauliVector>> = HashMap::new();
                enumerate_window(space, &col_syn, store_pos, store_v, &mut |e, syn| {
                    map.entry(syn.clone()).or_default().push(e.clone());
                });

                let mut pairs = 0u64;
                let mut best: Option<PauliVector> = None;
                enumerate_window(space, &col_syn, probe_pos, probe_v, &mut |e, syn| {
                    if let Some(bucket) = map.get(syn) {
                        for stored in bucket {
                            pairs += 1;
                            let mut candidate = stored.clone();
                            candidate.mul_assign(e);
                            debug_assert_eq!(candidate.weight(), w);
                            if !space.code.in_degeneracy_group(&candidate)
                                && best.as_ref().is_none_or(|b| candidate < *b)
                            {
                                best = Some(candidate);
                            }
                        }
                    }
                });
                (pairs, best)
            })
            .reduce(
                || (0, None),
                |a, b| {
                    let best = match (a.1, b.1) {
                        (Some(x), Some(y)) => Some(if x < y { x } else { y }),
                        (x, y) => x.or(y),
                    };
                    (a.0 + b.0, best)
                },
            );

        stats.pairs_matched += level.0;
        if let Some(witness) = level.1 {
            stats.elapsed = start.elapsed();
            let witness = checked_witness(space, witness, w);
            return Ok(DistanceResult::exact(w, witness, stats));
        }
        if let Some(d) = deadline {
            if Instant::now() >= d {
                stats.elapsed = start.elapsed();
                return Ok(DistanceResult::lower_bound(w, stats));
            }
        }
    }
    stats.elapsed = start.elapsed();
    Ok(DistanceResult::lower_bound(w_cap, stats))
}

/// Calls `visit` with every vector of weight exactly `v` supported on
/// `positions`, together with its syndrome.
fn enumerate_window(
    space: &SearchSpace<'_>,
    col_syn: &[Vec<BitVec>],
    positions: &[usize],
    v: usize,
    visit: &mut impl FnMut(&PauliVector, &BitVec),
) {
    let mut e = PauliVector::identity(space.n());
    let mut syn = BitVec::zeros(space.code.num_rows());
    let symbols = space.sector.symbols();
    fn rec(
        space: &SearchSpace<'_>,
        col_syn: &[Vec<BitVec>],
        positions: &[usize],
        symbols: &[crate::algebra::Pauli],
        next: usize,
        remaining: usize,
        e: &mut PauliVector,
        syn: &mut BitVec,
        visit: &mut impl FnMut(&PauliVector, &BitVec),
    ) {
        if remaining == 0 {
            visit(e, syn);
            return;
        }
        for idx in next..=(positions.len() - remaining) {
            let p = positions[idx];
            for (si, &sym) in symbols.iter().enumerate() {
                e.set(p, sym);
                syn.xor_assign(&col_syn[p][si]);
                rec(
                    space, col_syn, positions, symbols, idx + 1, remaining - 1, e, syn, visit,
                );
                syn.xor_assign(&col_syn[p][si]);
            }
            e.set(p, crate::algebra::Pauli::I);
        }
    }
    rec(space, col_syn, positions, symbols, 0, v, &mut e, &mut syn, visit);
}

#[cfg(test)]
mod tests {
    use super::super::{
        bipartition_distance, brute_force_distance, ResultKind, SearchBudget,
    };
    use crate::codes::{circulant_check, five_qubit_code, from_css, hypergraph_product, steane_code};

    #[test]
    fn steane_matches_oracle() {
        let code = from_css(&steane_code());
        let budget = SearchBudget::default();
        let bip = bipartition_distance(&code, &budget).unwrap();
        let oracle = brute_force_distance(&code, &budget).unwrap();
        assert_eq!(bip.kind, ResultKind::Exact);
        assert_eq!(bip.d, oracle.d);
    }

    #[test]
    fn five_qubit_code_is_exact_distance_3() {
        let res = bipartition_distance(&five_qubit_code(), &SearchBudget::default()).unwrap();
        assert_eq!(res.kind, ResultKind::Exact);
        assert_eq!(res.d, Some(3));
        assert_eq!(res.witness.as_ref().unwrap().weight(), 3);
    }

    #[test]
    fn toric_18_2_3_matches() {
        let h = circulant_check(3, &[true, true]).unwrap();
        let code = from_css(&hypergraph_product(&h, &h));
        let res = bipartition_distance(&code, &SearchBudget::default()).unwrap();
        assert_eq!(res.d, Some(3));
        assert_eq!(res.kind, ResultKind::Exact);
    }

    #[test]
    fn weight_one_round_is_a_single_qubit_scan() {
        // a code with a weight-1 logical: Z on qubit 1 of [XI]
        let code = crate::codes::StabilizerCode::from_strings(&["XI"]).unwrap();
        let res = bipartition_distance(&code, &SearchBudget::default()).unwrap();
        assert_eq!(res.d, Some(1));
        assert_eq!(res.kind, ResultKind::Exact);
    }
}
