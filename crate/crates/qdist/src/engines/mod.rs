//! The executable distance engines: exhaustive oracle, linked-cluster
//! search, meet-in-the-middle bipartition, and the probabilistic random
//! window, all sharing one result contract.
//!
//! Every engine walks candidate weights upward and reports `exact` only when
//! every smaller weight was fully excluded within budget; truncation of any
//! kind downgrades the claim to a bound. Witnesses are re-verified against
//! the code before a result is returned.
//!
//! For CSS codes the X- and Z-type logical sectors can be searched
//! separately over binary alphabets ([`Sector::XOnly`] / [`Sector::ZOnly`]);
//! the code distance is the minimum of the two sector distances.

mod bipartition;
mod linked_cluster;
mod oracle;
mod random_window;

pub use linked_cluster::cluster_logical_check;

use crate::algebra::{Pauli, PauliVector};
use crate::codes::StabilizerCode;
use crate::error::Result;
use crate::graph::ConnectivityGraph;
use std::time::{Duration, Instant};

/// Which engine to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineKind {
    Oracle,
    LinkedCluster,
    Bipartition,
    RandomWindow,
}

impl EngineKind {
    pub fn label(self) -> &'static str {
        match self {
            EngineKind::Oracle => "oracle",
            EngineKind::LinkedCluster => "lc",
            EngineKind::Bipartition => "bip",
            EngineKind::RandomWindow => "rw",
        }
    }
}

/// Candidate alphabet of a search.
///
/// `Generic` searches all Pauli vectors. The sector variants restrict to
/// pure-X or pure-Z vectors; for a CSS code the minimum over the two sectors
/// is the code distance, and each sector search runs over a binary alphabet
/// on the graph built from the opposing sector's checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    Generic,
    XOnly,
    ZOnly,
}

impl Sector {
    pub fn label(self) -> &'static str {
        match self {
            Sector::Generic => "generic",
            Sector::XOnly => "x",
            Sector::ZOnly => "z",
        }
    }

    /// Symbols a position may carry in this sector.
    pub(crate) fn symbols(self) -> &'static [Pauli] {
        match self {
            Sector::Generic => &[Pauli::X, Pauli::Y, Pauli::Z],
            Sector::XOnly => &[Pauli::X],
            Sector::ZOnly => &[Pauli::Z],
        }
    }
}

/// Budget knobs shared by all engines.
#[derive(Debug, Clone)]
pub struct SearchBudget {
    /// Largest candidate weight to search; clamped to `n`.
    pub w_max: usize,
    /// Largest per-cluster kernel dimension the linked-cluster engine will
    /// enumerate; overflow is a hard error, never a silent skip.
    pub kernel_cap: usize,
    /// Multiplier on the random-window trial-count bound.
    pub trial_factor: f64,
    /// Seed for every randomized choice.
    pub seed: u64,
    /// Optional wall-clock limit; exceeding it downgrades the result.
    pub wall_clock_limit: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            w_max: usize::MAX,
            kernel_cap: 20,
            trial_factor: 4.0,
            seed: 0,
            wall_clock_limit: None,
        }
    }
}

impl SearchBudget {
    pub fn with_w_max(w_max: usize) -> Self {
        Self {
            w_max,
            ..Self::default()
        }
    }

    pub(crate) fn deadline(&self, start: Instant) -> Option<Instant> {
        self.wall_clock_limit.map(|d| start + d)
    }
}

/// How strong a claim a search result makes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResultKind {
    /// `d` is the distance; all smaller weights were exhaustively excluded.
    Exact,
    /// A logical of weight `d` exists; smaller ones were not excluded.
    UpperBound,
    /// No logical of weight `<= w_exhausted` exists.
    LowerBound,
}

impl ResultKind {
    pub fn label(self) -> &'static str {
        match self {
            ResultKind::Exact => "exact",
            ResultKind::UpperBound => "upper_bound",
            ResultKind::LowerBound => "lower_bound",
        }
    }
}

/// Work counters of a search.
#[derive(Debug, Clone, Default)]
pub struct SearchStats {
    pub clusters_examined: u64,
    /// Clusters examined at each weight (index `w - 1`).
    pub examined_per_weight: Vec<u64>,
    pub pairs_matched: u64,
    pub trials: u64,
    pub windows_skipped: u64,
    pub elapsed: Duration,
}

/// Outcome of a distance search.
#[derive(Debug, Clone)]
pub struct DistanceResult {
    pub kind: ResultKind,
    /// The distance claim for `Exact`/`UpperBound`.
    pub d: Option<usize>,
    /// For `LowerBound`: every weight up to this was excluded.
    pub w_exhausted: Option<usize>,
    /// A minimum-weight logical found, if any; ties broken by the
    /// lexicographically smallest binary `(u, v)` form.
    pub witness: Option<PauliVector>,
    /// Set when the code has no logical operators at all (`k = 0`).
    pub no_logicals: bool,
    pub stats: SearchStats,
}

impl DistanceResult {
    pub(crate) fn exact(d: usize, witness: PauliVector, stats: SearchStats) -> Self {
        Self {
            kind: ResultKind::Exact,
            d: Some(d),
            w_exhausted: None,
            witness: Some(witness),
            no_logicals: false,
            stats,
        }
    }

    pub(crate) fn upper_bound(d: usize, witness: PauliVector, stats: SearchStats) -> Self {
        Self {
            kind: ResultKind::UpperBound,
            d: Some(d),
            w_exhausted: None,
            witness: Some(witness),
            no_logicals: false,
            stats,
        }
    }

    pub(crate) fn lower_bound(w_exhausted: usize, stats: SearchStats) -> Self {
        Self {
            kind: ResultKind::LowerBound,
            d: None,
            w_exhausted: Some(w_exhausted),
            witness: None,
            no_logicals: false,
            stats,
        }
    }

    fn no_logicals(n: usize, stats: SearchStats) -> Self {
        Self {
            kind: ResultKind::LowerBound,
            d: None,
            w_exhausted: Some(n),
            witness: None,
            no_logicals: true,
            stats,
        }
    }

    /// Structured-text record; `elapsed_ms` stays last so deterministic
    /// comparisons can strip it.
    pub fn to_record(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("kind={}\n", self.kind.label()));
        if let Some(d) = self.d {
            out.push_str(&format!("d={d}\n"));
        }
        if let Some(w) = self.w_exhausted {
            out.push_str(&format!("w_exhausted={w}\n"));
        }
        if let Some(wit) = &self.witness {
            out.push_str(&format!("witness={wit}\n"));
        }
        if self.no_logicals {
            out.push_str("no_logical_operators=true\n");
        }
        out.push_str(&format!(
            "clusters_examined={}\npairs_matched={}\ntrials={}\nwindows_skipped={}\n",
            self.stats.clusters_examined,
            self.stats.pairs_matched,
            self.stats.trials,
            self.stats.windows_skipped
        ));
        out.push_str(&format!("elapsed_ms={}\n", self.stats.elapsed.as_millis()));
        out
    }

    /// CSV row of the form used by batch runs.
    pub fn to_csv_row(&self, engine: EngineKind) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}\n",
            engine.label(),
            self.kind.label(),
            self.d.map_or(String::new(), |d| d.to_string()),
            self.w_exhausted.map_or(String::new(), |w| w.to_string()),
            self.witness
                .as_ref()
                .map_or(String::new(), ToString::to_string),
            self.stats.clusters_examined,
            self.stats.pairs_matched,
            self.stats.trials,
            self.stats.elapsed.as_millis(),
        )
    }

    pub const CSV_HEADER: &'static str =
        "engine,kind,d,w_exhausted,witness,clusters_examined,pairs_matched,trials,elapsed_ms\n";
}

/// Search context shared by the engines: the validated code plus the
/// sector's candidate alphabet and constraint structure.
pub(crate) struct SearchSpace<'c> {
    pub code: &'c StabilizerCode,
    pub sector: Sector,
}

impl<'c> SearchSpace<'c> {
    pub fn new(code: &'c StabilizerCode, sector: Sector) -> Result<Self> {
        code.ensure_valid()?;
        Ok(Self { code, sector })
    }

    pub fn n(&self) -> usize {
        self.code.n()
    }

    /// Supports of the rows that constrain this sector's candidates. For the
    /// generic alphabet that is the full Pauli support of every row; a
    /// sector candidate is only constrained by rows with a component of the
    /// opposite type.
    pub fn constraint_supports(&self) -> Vec<Vec<usize>> {
        self.code
            .rows()
            .iter()
            .map(|row| match self.sector {
                Sector::Generic => row.support(),
                Sector::XOnly => row.z_part().iter_ones().collect(),
                Sector::ZOnly => row.x_part().iter_ones().collect(),
            })
            .collect()
    }

    /// The connectivity graph this sector's search runs on.
    pub fn connectivity_graph(&self) -> ConnectivityGraph {
        ConnectivityGraph::from_supports(&self.constraint_supports(), self.n())
            .expect("row supports are in range")
    }

    /// True iff `e` is a logical operator (zero syndrome, outside the
    /// degeneracy group). Sector candidates are plain Pauli vectors, so the
    /// generic test applies unchanged.
    pub fn is_logical(&self, e: &PauliVector) -> bool {
        self.code.is_logical(e).expect("candidate length matches")
    }
}

/// Verifies a witness claim before an engine returns it.
pub(crate) fn checked_witness(
    space: &SearchSpace<'_>,
    witness: PauliVector,
    weight: usize,
) -> PauliVector {
    assert_eq!(
        witness.weight(),
        weight,
        "engine produced a witness of the wrong weight"
    );
    assert!(
        space.is_logical(&witness),
        "engine produced a non-logical witness"
    );
    witness
}

/// Returns early with a `no logical operators` result when `k = 0`.
pub(crate) fn no_logicals_shortcut(code: &StabilizerCode) -> Option<DistanceResult> {
    if code.k() == 0 {
        Some(DistanceResult::no_logicals(code.n(), SearchStats::default()))
    } else {
        None
    }
}

/// Dispatches to the selected engine.
pub fn run_engine(
    engine: EngineKind,
    code: &StabilizerCode,
    sector: Sector,
    budget: &SearchBudget,
) -> Result<DistanceResult> {
    match engine {
        EngineKind::Oracle => brute_force_distance_sector(code, sector, budget),
        EngineKind::LinkedCluster => linked_cluster_distance_sector(code, sector, budget),
        EngineKind::Bipartition => bipartition_distance_sector(code, sector, budget),
        EngineKind::RandomWindow => random_window_distance_sector(code, sector, budget),
    }
}

pub fn brute_force_distance(code: &StabilizerCode, budget: &SearchBudget) -> Result<DistanceResult> {
    brute_force_distance_sector(code, Sector::Generic, budget)
}

pub fn brute_force_distance_sector(
    code: &StabilizerCode,
    sector: Sector,
    budget: &SearchBudget,
) -> Result<DistanceResult> {
    oracle::search(&SearchSpace::new(code, sector)?, budget)
}

pub fn linked_cluster_distance(
    code: &StabilizerCode,
    budget: &SearchBudget,
) -> Result<DistanceResult> {
    linked_cluster_distance_sector(code, Sector::Generic, budget)
}

pub fn linked_cluster_distance_sector(
    code: &StabilizerCode,
    sector: Sector,
    budget: &SearchBudget,
) -> Result<DistanceResult> {
    linked_cluster::search(&SearchSpace::new(code, sector)?, budget)
}

pub fn bipartition_distance(
    code: &StabilizerCode,
    budget: &SearchBudget,
) -> Result<DistanceResult> {
    bipartition_distance_sector(code, Sector::Generic, budget)
}

pub fn bipartition_distance_sector(
    code: &StabilizerCode,
    sector: Sector,
    budget: &SearchBudget,
) -> Result<DistanceResult> {
    bipartition::search(&SearchSpace::new(code, sector)?, budget)
}

pub fn random_window_distance(
    code: &StabilizerCode,
    budget: &SearchBudget,
) -> Result<DistanceResult> {
    random_window_distance_sector(code, Sector::Generic, budget)
}

pub fn random_window_distance_sector(
    code: &StabilizerCode,
    sector: Sector,
    budget: &SearchBudget,
) -> Result<DistanceResult> {
    random_window::search(&SearchSpace::new(code, sector)?, budget)
}

/// Runs one engine on both CSS sectors and combines: the distance is the
/// minimum of the sector results, exact only when the smaller sector claim
/// is exact.
pub fn css_sector_distance(
    engine: EngineKind,
    code: &StabilizerCode,
    budget: &SearchBudget,
) -> Result<(DistanceResult, DistanceResult, DistanceResult)> {
    let x = run_engine(engine, code, Sector::XOnly, budget)?;
    let z = run_engine(engine, code, Sector::ZOnly, budget)?;
    let combined = combine_sector_results(&x, &z);
    Ok((combined, x, z))
}

fn combine_sector_results(x: &DistanceResult, z: &DistanceResult) -> DistanceResult {
    let mut stats = SearchStats {
        clusters_examined: x.stats.clusters_examined + z.stats.clusters_examined,
        examined_per_weight: Vec::new(),
        pairs_matched: x.stats.pairs_matched + z.stats.pairs_matched,
        trials: x.stats.trials + z.stats.trials,
        windows_skipped: x.stats.windows_skipped + z.stats.windows_skipped,
        elapsed: x.stats.elapsed + z.stats.elapsed,
    };
    let width = x
        .stats
        .examined_per_weight
        .len()
        .max(z.stats.examined_per_weight.len());
    stats.examined_per_weight = (0..width)
        .map(|i| {
            x.stats.examined_per_weight.get(i).copied().unwrap_or(0)
                + z.stats.examined_per_weight.get(i).copied().unwrap_or(0)
        })
        .collect();

    if x.no_logicals && z.no_logicals {
        let mut out = DistanceResult::no_logicals(0, stats);
        out.w_exhausted = x.w_exhausted.min(z.w_exhausted);
        return out;
    }

    // order the two results by their distance claim
    let (lead, tail) = match (x.d, z.d) {
        (Some(dx), Some(dz)) if dz < dx => (z, x),
        (None, Some(_)) => (z, x),
        _ => (x, z),
    };
    match lead.d {
        Some(d) => {
            // the other sector rules out smaller weights when it exhausted
            // them (exact claim, or a bound covering d - 1)
            let tail_excludes = match tail.kind {
                ResultKind::Exact => tail.d.is_some_and(|t| t >= d),
                ResultKind::LowerBound => tail.w_exhausted.is_some_and(|w| w + 1 >= d),
                ResultKind::UpperBound => false,
            };
            let kind = if lead.kind == ResultKind::Exact && tail_excludes {
                ResultKind::Exact
            } else {
                ResultKind::UpperBound
            };
            DistanceResult {
                kind,
                d: Some(d),
                w_exhausted: None,
                witness: lead.witness.clone(),
                no_logicals: false,
                stats,
            }
        }
        None => {
            let wx = lead.w_exhausted.unwrap_or(0);
            let wz = tail.w_exhausted.unwrap_or(0);
            DistanceResult::lower_bound(wx.min(wz), stats)
        }
    }
}
