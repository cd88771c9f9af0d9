//! Exhaustive search in increasing weight order: the definitional oracle the
//! other engines are checked against.

use super::{checked_witness, no_logicals_shortcut, DistanceResult, SearchBudget, SearchSpace};
use crate::algebra::PauliVector;
use crate::bits::BitVec;
use crate::error::Result;
use std::time::Instant;

pub(super) fn search(space: &SearchSpace<'_>, budget: &SearchBudget) -> Result<DistanceResult> {
    if let Some(r) = no_logicals_shortcut(space.code) {
        return Ok(r);
    }
    let start = Instant::now();
    let deadline = budget.deadline(start);
    let n = space.n();
    let w_cap = budget.w_max.min(n);
    let symbols = space.sector.symbols();

    // syndrome of a single symbol at each position, XOR-composable
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

    struct Walk<'a> {
        space: &'a SearchSpace<'a>,
        col_syn: &'a [Vec<BitVec>],
        syndrome: BitVec,
        chosen: Vec<(usize, usize)>,
        best: Option<PauliVector>,
        candidates: u64,
        deadline: Option<Instant>,
        timed_out: bool,
    }

    impl Walk<'_> {
        fn run(&mut self, next_pos: usize, remaining: usize) {
            if self.timed_out {
                return;
            }
            if remaining == 0 {
                self.candidates += 1;
                if self.candidates % 4096 == 0 {
                    if let Some(d) = self.deadline {
                        if Instant::now() >= d {
                            self.timed_out = true;
                            return;
                        }
                    }
                }
                if self.syndrome.is_zero() {
                    let symbols = self.space.sector.symbols();
                    let mut e = PauliVector::identity(self.space.n());
                    for &(p, si) in &self.chosen {
                        e.set(p, symbols[si]);
                    }
                    if !self.space.code.in_degeneracy_group(&e)
                        && self.best.as_ref().is_none_or(|b| e < *b)
                    {
                        self.best = Some(e);
                    }
                }
                return;
            }
            let n = self.space.n();
            for pos in next_pos..=(n - remaining) {
                for si in 0..self.col_syn[pos].len() {
                    self.syndrome.xor_assign(&self.col_syn[pos][si]);
                    self.chosen.push((pos, si));
                    self.run(pos + 1, remaining - 1);
                    self.chosen.pop();
                    self.syndrome.xor_assign(&self.col_syn[pos][si]);
                    if self.timed_out {
                        return;
                    }
                }
            }
        }
    }

    for w in 1..=w_cap {
        let mut walk = Walk {
            space,
            col_syn: &col_syn,
            syndrome: BitVec::zeros(space.code.num_rows()),
            chosen: Vec::with_capacity(w),
            best: None,
            candidates: 0,
            deadline,
            timed_out: false,
        };
        walk.run(0, w);
        stats.trials += walk.candidates;
        if walk.timed_out {
            stats.elapsed = start.elapsed();
            return Ok(DistanceResult::lower_bound(w - 1, stats));
        }
        if let Some(witness) = walk.best {
            stats.elapsed = start.elapsed();
            let witness = checked_witness(space, witness, w);
            return Ok(DistanceResult::exact(w, witness, stats));
        }
    }
    stats.elapsed = start.elapsed();
    Ok(DistanceResult::lower_bound(w_cap, stats))
}

#[cfg(test)]
mod tests {
    use super::super::{brute_force_distance, ResultKind, SearchBudget};
    use crate::codes::{five_qubit_code, from_css, steane_code};

    #[test]
    fn five_qubit_code_has_distance_3() {
        let res = brute_force_distance(&five_qubit_code(), &SearchBudget::default()).unwrap();
        assert_eq!(res.kind, ResultKind::Exact);
        assert_eq!(res.d, Some(3));
        assert_eq!(res.witness.as_ref().unwrap().weight(), 3);
    }

    #[test]
    fn steane_code_has_distance_3() {
        let res =
            brute_force_distance(&from_css(&steane_code()), &SearchBudget::default()).unwrap();
        assert_eq!(res.kind, ResultKind::Exact);
        assert_eq!(res.d, Some(3));
    }

    #[test]
    fn truncated_search_is_a_lower_bound() {
        let res = brute_force_distance(&from_css(&steane_code()), &SearchBudget::with_w_max(2))
            .unwrap();
        assert_eq!(res.kind, ResultKind::LowerBound);
        assert_eq!(res.w_exhausted, Some(2));
        assert!(res.witness.is_none());
    }
}
