//! Linked-cluster distance search.
//!
//! Any minimum-weight logical operator has connected support on the
//! qubit-connectivity graph, so walking all linked clusters in increasing
//! size order and testing each for a logical supported exactly on it finds
//! the distance without ever listing generic error patterns. A candidate
//! whose support is a proper subset of the cluster is skipped here: it is
//! found at its own, smaller, cluster size, which keeps the increasing-size
//! loop exact.

use super::{checked_witness, no_logicals_shortcut, DistanceResult, SearchBudget, SearchSpace, Sector};
use crate::algebra::PauliVector;
use crate::clusters::{Cluster, ClusterWalk};
use crate::codes::StabilizerCode;
use crate::error::{Error, Result};
use rayon::prelude::*;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

/// Searches one cluster for a logical operator supported exactly on it.
///
/// The GF(2) system of commutation constraints is restricted to the
/// cluster's symbol bits (only rows meeting the cluster constrain it); the
/// kernel is enumerated, full-support solutions are kept, and survivors of
/// the degeneracy test are logical operators. The lexicographically smallest
/// one is returned. A kernel of dimension above `kernel_cap` is an error:
/// skipping it silently would invalidate the exactness claim.
pub fn cluster_logical_check(
    code: &StabilizerCode,
    cluster: &Cluster,
    kernel_cap: usize,
) -> Result<Option<PauliVector>> {
    let space = SearchSpace::new(code, Sector::Generic)?;
    let pos_rows = position_rows(&space);
    check_cluster(&space, &pos_rows, cluster.vertices(), kernel_cap)
}

/// Row indices constraining each position, for fast constraint gathering.
pub(super) fn position_rows(space: &SearchSpace<'_>) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new(); space.n()];
    for (ri, support) in space.constraint_supports().iter().enumerate() {
        for &p in support {
            out[p].push(ri as u32);
        }
    }
    out
}

pub(super) fn check_cluster(
    space: &SearchSpace<'_>,
    pos_rows: &[Vec<u32>],
    vertices: &[u32],
    kernel_cap: usize,
) -> Result<Option<PauliVector>> {
    let w = vertices.len();
    let stride = match space.sector {
        Sector::Generic => 2usize,
        Sector::XOnly | Sector::ZOnly => 1,
    };
    let vars = stride * w;
    debug_assert!(vars <= 128);

    // gather the rows meeting the cluster, deduplicated
    let mut row_ids: Vec<u32> = vertices
        .iter()
        .flat_map(|&v| pos_rows[v as usize].iter().copied())
        .collect();
    row_ids.sort_unstable();
    row_ids.dedup();

    // constraint masks over the cluster's symbol bits
    let rows_of_code = space.code.rows();
    let mut masks: Vec<u128> = Vec::with_capacity(row_ids.len());
    for &ri in &row_ids {
        let row = &rows_of_code[ri as usize];
        let mut mask: u128 = 0;
        for (j, &v) in vertices.iter().enumerate() {
            let p = v as usize;
            match space.sector {
                Sector::Generic => {
                    // <row, e> = u_r . v_e + v_r . u_e
                    if row.x_part().get(p) {
                        mask |= 1 << (stride * j); // u_e bit
                    }
                    if row.z_part().get(p) {
                        mask |= 1 << (stride * j + 1); // v_e bit
                    }
                }
                Sector::XOnly => {
                    if row.z_part().get(p) {
                        mask |= 1 << j; // v_e bit
                    }
                }
                Sector::ZOnly => {
                    if row.x_part().get(p) {
                        mask |= 1 << j; // u_e bit
                    }
                }
            }
        }
        if mask != 0 {
            masks.push(mask);
        }
    }

    if stride == 1 {
        // the only full-support candidate is the all-ones assignment
        let full: u128 = if w == 128 { u128::MAX } else { (1 << w) - 1 };
        if masks.iter().any(|m| (m & full).count_ones() % 2 == 1) {
            return Ok(None);
        }
        let e = materialize(space, vertices, full, stride);
        if space.code.in_degeneracy_group(&e) {
            return Ok(None);
        }
        return Ok(Some(e));
    }

    // reduced row echelon form over the vars bits
    let mut rref: Vec<(u32, u128)> = Vec::new(); // (pivot bit, row)
    for mut m in masks {
        for &(p, r) in &rref {
            if m >> p & 1 == 1 {
                m ^= r;
            }
        }
        if m != 0 {
            let p = m.trailing_zeros();
            for entry in rref.iter_mut() {
                if entry.1 >> p & 1 == 1 {
                    entry.1 ^= m;
                }
            }
            rref.push((p, m));
        }
    }
    let rank = rref.len();
    let kappa = vars - rank;
    if kappa > kernel_cap {
        return Err(Error::KernelCapExceeded {
            cluster: vertices.to_vec(),
            dim: kappa,
            cap: kernel_cap,
        });
    }

    // kernel basis: one vector per free bit
    let pivot_bits: u128 = rref.iter().fold(0, |acc, &(p, _)| acc | 1 << p);
    let mut basis: Vec<u128> = Vec::with_capacity(kappa);
    for f in 0..vars as u32 {
        if pivot_bits >> f & 1 == 1 {
            continue;
        }
        let mut x: u128 = 1 << f;
        for &(p, r) in &rref {
            if r >> f & 1 == 1 {
                x |= 1 << p;
            }
        }
        basis.push(x);
    }
    debug_assert_eq!(basis.len(), kappa);

    // every position must carry a non-identity symbol
    let support_probe: u128 = (0..w).fold(0, |acc, j| acc | 1 << (stride * j));

    let mut best: Option<(u128, PauliVector)> = None;
    let mut x: u128 = 0;
    // Gray-code walk over the nonzero kernel combinations; step g flips
    // basis bit trailing_zeros(g)
    for g in 1u128..(1 << kappa) {
        x ^= basis[g.trailing_zeros() as usize];
        let folded = (x | (x >> 1)) & support_probe;
        if folded != support_probe {
            continue;
        }
        let e = materialize(space, vertices, x, stride);
        if space.code.in_degeneracy_group(&e) {
            continue;
        }
        if best.as_ref().is_none_or(|(_, b)| e < *b) {
            best = Some((x, e));
        }
    }
    Ok(best.map(|(_, e)| e))
}

fn materialize(space: &SearchSpace<'_>, vertices: &[u32], x: u128, stride: usize) -> PauliVector {
    let mut e = PauliVector::identity(space.n());
    for (j, &v) in vertices.iter().enumerate() {
        let p = v as usize;
        let (u_bit, v_bit) = match space.sector {
            Sector::Generic => (x >> (stride * j) & 1 == 1, x >> (stride * j + 1) & 1 == 1),
            Sector::XOnly => (false, x >> j & 1 == 1),
            Sector::ZOnly => (x >> j & 1 == 1, false),
        };
        e.set(p, crate::algebra::Pauli::from_bits(u_bit, v_bit));
    }
    e
}

pub(super) fn search(space: &SearchSpace<'_>, budget: &SearchBudget) -> Result<DistanceResult> {
    if let Some(r) = no_logicals_shortcut(space.code) {
        return Ok(r);
    }
    let start = Instant::now();
    let deadline = budget.deadline(start);
    let n = space.n();
    let stride = if space.sector == Sector::Generic { 2 } else { 1 };
    let w_cap = budget.w_max.min(n).min(128 / stride);
    let graph = space.connectivity_graph();
    let pos_rows = position_rows(space);

    let mut stats = super::SearchStats::default();

    for w in 1..=w_cap {
        let timed_out = AtomicBool::new(false);
        let anchor_hi = (n + 1 - w) as u32;
        let level = (0..anchor_hi)
            .into_par_iter()
            .map(|anchor| -> Result<(u64, Option<PauliVector>)> {
                let mut examined = 0u64;
                let mut best: Option<PauliVector> = None;
                let mut walk = ClusterWalk::new(&graph, anchor, w, w);
                let mut sorted = Vec::with_capacity(w);
                while let Some(c) = walk.advance() {
                    examined += 1;
                    if examined % 4096 == 0 {
                        if timed_out.load(Ordering::Relaxed) {
                            return Ok((examined, best));
                        }
                        if let Some(d) = deadline {
                            if Instant::now() >= d {
                                timed_out.store(true, Ordering::Relaxed);
                                return Ok((examined, best));
                            }
                        }
                    }
                    sorted.clear();
                    sorted.extend_from_slice(c);
                    sorted.sort_unstable();
                    if let Some(e) =
                        check_cluster(space, &pos_rows, &sorted, budget.kernel_cap)?
                    {
                        if best.as_ref().is_none_or(|b| e < *b) {
                            best = Some(e);
                        }
                    }
                }
                Ok((examined, best))
            })
            .try_reduce(
                || (0, None),
                |a, b| {
                    let best = match (a.1, b.1) {
                        (Some(x), Some(y)) => Some(if x < y { x } else { y }),
                        (x, y) => x.or(y),
                    };
                    Ok((a.0 + b.0, best))
                },
            )?;

        stats.clusters_examined += level.0;
        stats.examined_per_weight.push(level.0);

        if let Some(witness) = level.1 {
            // all weights below w were fully exhausted, so even a witness
            // found on a truncated level pins the distance at w
            stats.elapsed = start.elapsed();
            let witness = checked_witness(space, witness, w);
            return Ok(DistanceResult::exact(w, witness, stats));
        }
        if timed_out.load(Ordering::Relaxed) {
            stats.elapsed = start.elapsed();
            return Ok(DistanceResult::lower_bound(w - 1, stats));
        }
    }
    stats.elapsed = start.elapsed();
    Ok(DistanceResult::lower_bound(w_cap, stats))
}

#[cfg(test)]
mod tests {
    use super::super::{
        brute_force_distance, linked_cluster_distance, ResultKind, SearchBudget,
    };
    use super::*;
    use crate::codes::{circulant_check, five_qubit_code, from_css, hypergraph_product, steane_code, toric_code};

    #[test]
    fn steane_matches_oracle() {
        let code = from_css(&steane_code());
        let budget = SearchBudget::default();
        let lc = linked_cluster_distance(&code, &budget).unwrap();
        let oracle = brute_force_distance(&code, &budget).unwrap();
        assert_eq!(lc.kind, ResultKind::Exact);
        assert_eq!(lc.d, oracle.d);
        assert_eq!(lc.d, Some(3));
    }

    #[test]
    fn toric_18_2_3_is_exact() {
        let h = circulant_check(3, &[true, true]).unwrap();
        let code = from_css(&hypergraph_product(&h, &h));
        let res = linked_cluster_distance(&code, &SearchBudget::default()).unwrap();
        assert_eq!(res.kind, ResultKind::Exact);
        assert_eq!(res.d, Some(3));
    }

    #[test]
    fn truncated_budget_reports_lower_bound() {
        let res =
            linked_cluster_distance(&five_qubit_code(), &SearchBudget::with_w_max(1)).unwrap();
        assert_eq!(res.kind, ResultKind::LowerBound);
        assert_eq!(res.w_exhausted, Some(1));
    }

    #[test]
    fn kernel_cap_overflow_is_a_hard_error_naming_the_cluster() {
        let code = five_qubit_code();
        let budget = SearchBudget {
            kernel_cap: 0,
            ..Default::default()
        };
        let err = linked_cluster_distance(&code, &budget).unwrap_err();
        match err {
            Error::KernelCapExceeded { cluster, dim, cap } => {
                assert!(!cluster.is_empty());
                assert!(dim > 0);
                assert_eq!(cap, 0);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn stabilizer_row_support_is_rejected_by_degeneracy() {
        // the cluster spanning a stabilizer row's support must not yield
        // that row back as a witness
        let code = from_css(&steane_code());
        let row = &code.rows()[0];
        let support: Vec<u32> = row.support().iter().map(|&p| p as u32).collect();
        let cluster = crate::clusters::Cluster::from_vertices(support);
        let got = cluster_logical_check(&code, &cluster, 20).unwrap();
        if let Some(e) = got {
            assert_ne!(&e, row);
            assert!(code.is_logical(&e).unwrap());
        }
    }

    #[test]
    fn toric_l2_homology_cycle_found_via_cluster() {
        let code = from_css(&toric_code(2).unwrap());
        let res = linked_cluster_distance(&code, &SearchBudget::default()).unwrap();
        assert_eq!(res.d, Some(2));
        let witness = res.witness.unwrap();
        assert!(code.is_logical(&witness).unwrap());
        assert_eq!(witness.weight(), 2);
    }
}
