//! Probabilistic random-window (information-set) search.
//!
//! Each trial draws a random set of window positions, restricts a basis of
//! the zero-syndrome space to the window's symbol bits, and, when that
//! restriction has full rank, re-encodes every weight-1 window pattern into
//! a full-length zero-syndrome vector. Re-encoded vectors that survive the
//! degeneracy test are logical operators; the minimum-weight one seen is
//! returned as an upper bound. Rank-deficient windows are skipped and
//! counted. Trials are seeded individually (`seed + trial index`), so
//! results are identical for any worker count.

use super::{checked_witness, no_logicals_shortcut, DistanceResult, SearchBudget, SearchSpace, Sector};
use crate::algebra::PauliVector;
use crate::bits::BitVec;
use crate::clusters::binomial;
use crate::error::{Error, Result};
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::time::Instant;

pub(super) fn search(space: &SearchSpace<'_>, budget: &SearchBudget) -> Result<DistanceResult> {
    if let Some(r) = no_logicals_shortcut(space.code) {
        return Ok(r);
    }
    let start = Instant::now();
    let deadline = budget.deadline(start);
    let n = space.n();

    // basis of the sector's zero-syndrome space
    let basis: Vec<PauliVector> = match space.sector {
        Sector::Generic => space.code.normalizer_basis().gens().to_vec(),
        Sector::XOnly | Sector::ZOnly => {
            let part = |row: &PauliVector| match space.sector {
                Sector::XOnly => row.z_part().clone(),
                _ => row.x_part().clone(),
            };
            let checks = crate::algebra::BinaryMatrix::from_rows(
                space.code.rows().iter().map(|r| part(r)).collect(),
                n,
            )
            .expect("rows share length");
            checks
                .kernel_basis()
                .into_iter()
                .map(|v| match space.sector {
                    Sector::XOnly => PauliVector::new(BitVec::zeros(n), v).unwrap(),
                    _ => PauliVector::new(v, BitVec::zeros(n)).unwrap(),
                })
                .collect()
        }
    };
    let dim = basis.len();
    let bits_per_pos = if space.sector == Sector::Generic { 2 } else { 1 };

    // window size: enough positions for a full-rank restriction, plus a
    // little oversampling while keeping room for the support to stay outside
    let s_base = dim.div_ceil(bits_per_pos);
    if s_base >= n {
        return Err(Error::domain(
            "random_window",
            format!("re-encoding basis of dimension {dim} leaves no window slack at n = {n}"),
        ));
    }
    let tau_default = 2 * (n as f64).log2().floor() as usize;
    let tau = tau_default.min(((n - s_base) / 2).max(1));
    let mut s = (s_base + tau).min(n - 1);

    let symbols = space.sector.symbols();
    let mut stats = super::SearchStats::default();
    let mut best: Option<PauliVector> = None;
    let mut trial_base: u64 = 0;

    let mut w = 1;
    while w <= budget.w_max.min(n - s) {
        let t0 = binomial(n, w).to_f64().unwrap_or(f64::MAX)
            / binomial(n - s, w).to_f64().unwrap_or(1.0);
        let trials = (budget.trial_factor * n as f64 * t0).ceil().max(1.0) as u64;

        let batch = (0..trials)
            .into_par_iter()
            .map(|i| run_trial(space, &basis, s, bits_per_pos, symbols, budget.seed.wrapping_add(trial_base + i)))
            .reduce(TrialOutcome::default, |a, b| TrialOutcome {
                skipped: a.skipped + b.skipped,
                best: match (a.best, b.best) {
                    (Some(x), Some(y)) => Some(min_witness(x, y)),
                    (x, y) => x.or(y),
                },
            });
        trial_base += trials;
        stats.trials += trials;
        stats.windows_skipped += batch.skipped;
        if let Some(candidate) = batch.best {
            best = Some(match best {
                Some(b) => min_witness(b, candidate),
                None => candidate,
            });
        }
        if best.as_ref().is_some_and(|b| b.weight() <= w) {
            break;
        }
        if deadline.is_some_and(|d| Instant::now() >= d) {
            break;
        }
        if batch.skipped == trials && s < n - 1 {
            // every sampled window was rank-deficient: some zero-syndrome
            // vector fits inside the window complement, so widen the window
            // and retry this weight before giving up
            s += 1;
            continue;
        }
        w += 1;
    }

    stats.elapsed = start.elapsed();
    match best {
        Some(witness) => {
            let w = witness.weight();
            let witness = checked_witness(space, witness, w);
            Ok(DistanceResult::upper_bound(w, witness, stats))
        }
        None => {
            if stats.windows_skipped == stats.trials && stats.trials > 0 {
                Err(Error::DegenerateWindows {
                    trials: stats.trials,
                })
            } else {
                Err(Error::NoWitness {
                    trials: stats.trials,
                    skipped: stats.windows_skipped,
                })
            }
        }
    }
}

fn min_witness(a: PauliVector, b: PauliVector) -> PauliVector {
    match a.weight().cmp(&b.weight()) {
        std::cmp::Ordering::Less => a,
        std::cmp::Ordering::Greater => b,
        std::cmp::Ordering::Equal => {
            if a < b {
                a
            } else {
                b
            }
        }
    }
}

#[derive(Default)]
struct TrialOutcome {
    skipped: u64,
    best: Option<PauliVector>,
}

fn run_trial(
    space: &SearchSpace<'_>,
    basis: &[PauliVector],
    s: usize,
    bits_per_pos: usize,
    symbols: &[crate::algebra::Pauli],
    trial_seed: u64,
) -> TrialOutcome {
    let n = space.n();
    let dim = basis.len();
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
    let window = rand::seq::index::sample(&mut rng, n, s).into_vec();

    // restrict the basis to the window's symbol bits, tracking combinations
    let cols = bits_per_pos * s;
    let mut rows: Vec<(BitVec, BitVec)> = basis
        .iter()
        .enumerate()
        .map(|(gi, g)| {
            let mut restricted = BitVec::zeros(cols);
            for (slot, &p) in window.iter().enumerate() {
                match space.sector {
                    Sector::Generic => {
                        restricted.set(2 * slot, g.z_part().get(p));
                        restricted.set(2 * slot + 1, g.x_part().get(p));
                    }
                    Sector::XOnly => restricted.set(slot, g.x_part().get(p)),
                    Sector::ZOnly => restricted.set(slot, g.z_part().get(p)),
                }
            }
            let mut combo = BitVec::zeros(dim);
            combo.set(gi, true);
            (restricted, combo)
        })
        .collect();

    // reduced echelon form with combination tracking
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (pivot col, row index)
    let mut echelon: Vec<(BitVec, BitVec)> = Vec::new();
    for (mut r, mut c) in rows.drain(..) {
        for &(pc, ri) in &pivots {
            if r.get(pc) {
                let (er, ec) = &echelon[ri];
                r.xor_assign(er);
                c.xor_assign(ec);
            }
        }
        if let Some(pc) = r.first_one() {
            for (er, ec) in echelon.iter_mut() {
                if er.get(pc) {
                    er.xor_assign(&r);
                    ec.xor_assign(&c);
                }
            }
            pivots.push((pc, echelon.len()));
            echelon.push((r, c));
        }
    }
    if echelon.len() < dim {
        return TrialOutcome {
            skipped: 1,
            best: None,
        };
    }

    // re-encode every weight-1 window pattern
    let mut best: Option<PauliVector> = None;
    for slot in 0..s {
        for &sym in symbols {
            let mut target = BitVec::zeros(cols);
            match space.sector {
                Sector::Generic => {
                    let (u_bit, v_bit) = sym.bits();
                    target.set(2 * slot, u_bit);
                    target.set(2 * slot + 1, v_bit);
                }
                Sector::XOnly | Sector::ZOnly => target.set(slot, true),
            }
            let mut combo = BitVec::zeros(dim);
            let mut residual = target;
            for &(pc, ri) in &pivots {
                if residual.get(pc) {
                    let (er, ec) = &echelon[ri];
                    residual.xor_assign(er);
                    combo.xor_assign(ec);
                }
            }
            if !residual.is_zero() {
                continue; // pattern outside the restricted span
            }
            let mut e = PauliVector::identity(n);
            for gi in combo.iter_ones() {
                e.mul_assign(&basis[gi]);
            }
            if e.is_identity() || space.code.in_degeneracy_group(&e) {
                continue;
            }
            best = Some(match best {
                Some(b) => min_witness(b, e),
                None => e,
            });
        }
    }
    TrialOutcome { skipped: 0, best }
}
