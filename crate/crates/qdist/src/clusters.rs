//! Duplicate-free enumeration of connected vertex sets (linked clusters),
//! exact tree cluster counts, and census/fit tooling.
//!
//! Enumeration is anchored: every cluster is produced exactly once, from the
//! anchor equal to its minimum vertex. The walk keeps an explicit candidate
//! list; candidates enter the list once (when first reachable), and each
//! level may only pick candidates strictly to the right of the position
//! chosen on the previous level. New neighbors of a chosen vertex are
//! appended at the end of the list, so the ordering constraint assigns each
//! cluster a unique generation path.

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::graph::ConnectivityGraph;
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

/// A connected vertex set; the anchor (minimum vertex) comes first after
/// sorting.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cluster {
    vertices: Vec<u32>,
}

impl Cluster {
    fn from_walk(vertices: &[u32]) -> Self {
        let mut v = vertices.to_vec();
        v.sort_unstable();
        Self { vertices: v }
    }

    /// Wraps a vertex set the caller knows to be connected.
    pub fn from_vertices(vertices: Vec<u32>) -> Self {
        Self::from_walk(&vertices)
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn anchor(&self) -> u32 {
        self.vertices[0]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

struct Frame {
    chosen: usize,
    mark: usize,
}

/// Streaming walk over the anchored clusters of sizes in
/// `[size_min, size_max]`.
pub struct ClusterWalk<'g> {
    graph: &'g ConnectivityGraph,
    anchor: u32,
    size_min: usize,
    size_max: usize,
    cluster: Vec<u32>,
    list: Vec<u32>,
    in_list: BitVec,
    frames: Vec<Frame>,
    pos: usize,
    started: bool,
    done: bool,
}

impl<'g> ClusterWalk<'g> {
    pub fn new(graph: &'g ConnectivityGraph, anchor: u32, size_min: usize, size_max: usize) -> Self {
        debug_assert!(size_min >= 1 && size_min <= size_max);
        debug_assert!((anchor as usize) < graph.num_vertices());
        let mut in_list = BitVec::zeros(graph.num_vertices());
        in_list.set(anchor as usize, true);
        let mut list = Vec::new();
        for &u in graph.neighbors(anchor) {
            if u > anchor {
                list.push(u);
                in_list.set(u as usize, true);
            }
        }
        Self {
            graph,
            anchor,
            size_min,
            size_max,
            cluster: vec![anchor],
            list,
            in_list,
            frames: Vec::new(),
            pos: 0,
            started: false,
            done: false,
        }
    }

    /// The next cluster, as vertices in insertion order (anchor first), or
    /// `None` once exhausted.
    pub fn advance(&mut self) -> Option<&[u32]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.size_min <= 1 {
                return Some(&self.cluster);
            }
        }
        loop {
            if self.cluster.len() < self.size_max && self.pos < self.list.len() {
                // descend: adopt list[pos] into the cluster
                let v = self.list[self.pos];
                self.frames.push(Frame {
                    chosen: self.pos,
                    mark: self.list.len(),
                });
                self.cluster.push(v);
                for &u in self.graph.neighbors(v) {
                    if u > self.anchor && !self.in_list.get(u as usize) {
                        self.list.push(u);
                        self.in_list.set(u as usize, true);
                    }
                }
                self.pos += 1;
                if self.cluster.len() >= self.size_min {
                    return Some(&self.cluster);
                }
            } else {
                // backtrack
                match self.frames.pop() {
                    Some(frame) => {
                        while self.list.len() > frame.mark {
                            let u = self.list.pop().unwrap();
                            self.in_list.set(u as usize, false);
                        }
                        self.cluster.pop();
                        self.pos = frame.chosen + 1;
                    }
                    None => {
                        self.done = true;
                        return None;
                    }
                }
            }
        }
    }
}

/// All clusters of size exactly `w` anchored at `anchor`, each exactly once.
/// For `w = 1` the stream is just `{anchor}`.
pub fn enumerate_clusters(
    graph: &ConnectivityGraph,
    w: usize,
    anchor: u32,
) -> impl Iterator<Item = Cluster> + '_ {
    let mut walk = ClusterWalk::new(graph, anchor, w.max(1), w.max(1));
    std::iter::from_fn(move || walk.advance().map(Cluster::from_walk))
}

/// Exact count of weight-`w` clusters containing a fixed vertex of the
/// `z`-regular tree: `(z / (w - 1)) * C((z-1)w, w-2)`, with `N_1 = 1`.
///
/// This caps per-vertex cluster counts on any graph of max degree `z`.
pub fn tree_cluster_count(z: usize, w: usize) -> BigUint {
    if w == 0 {
        return BigUint::zero();
    }
    if w == 1 {
        return BigUint::from(1u32);
    }
    debug_assert!(z >= 2);
    let num = BigUint::from(z) * binomial((z - 1) * w, w - 2);
    let den = BigUint::from(w - 1);
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// Exact binomial coefficient.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Options for [`count_clusters`].
#[derive(Debug, Clone, Default)]
pub struct CensusOptions {
    /// Also tally, for every vertex, the number of clusters containing it.
    pub per_vertex: bool,
    /// Abandon the census once this much wall-clock time has elapsed; the
    /// result keeps the last fully counted size and is flagged incomplete.
    pub time_limit: Option<Duration>,
}

/// Exact cluster counts of a graph, by size.
#[derive(Debug, Clone)]
pub struct ClusterCensus {
    /// `totals[w - 1]` = number of clusters of size `w`, for counted sizes.
    pub totals: Vec<BigUint>,
    /// `per_vertex[w - 1][v]` = clusters of size `w` containing `v`.
    pub per_vertex: Option<Vec<Vec<u64>>>,
    /// Largest size fully counted; equals the requested `w_max` when the
    /// census ran to completion.
    pub complete_to: usize,
    pub incomplete: bool,
    pub elapsed: Duration,
}

impl ClusterCensus {
    pub fn total(&self, w: usize) -> Option<&BigUint> {
        self.totals.get(w - 1)
    }
}

/// Counts all clusters of sizes `1..=w_max` over all anchors, exactly.
///
/// Sizes are exhausted one at a time with anchors enumerated independently
/// (in parallel) and merged by addition, so totals are identical for any
/// worker count. On timeout, sizes already exhausted are kept and the census
/// is flagged incomplete.
pub fn count_clusters(
    graph: &ConnectivityGraph,
    w_max: usize,
    options: &CensusOptions,
) -> ClusterCensus {
    let start = Instant::now();
    let n = graph.num_vertices();
    let w_max = w_max.max(1);
    let deadline = options.time_limit.map(|d| start + d);

    struct Local {
        total: u64,
        per_vertex: Option<Vec<u64>>,
        interrupted: bool,
    }

    let mut totals: Vec<BigUint> = Vec::new();
    let mut per_vertex: Option<Vec<Vec<u64>>> = options.per_vertex.then(Vec::new);
    let mut complete_to = 0usize;
    let mut incomplete = false;

    for w in 1..=w_max {
        let timed_out = AtomicBool::new(
            deadline.is_some_and(|d| Instant::now() >= d),
        );
        let run_anchor = |anchor: u32| -> Local {
            let mut local = Local {
                total: 0,
                per_vertex: options.per_vertex.then(|| vec![0u64; n]),
                interrupted: false,
            };
            if timed_out.load(Ordering::Relaxed) {
                local.interrupted = true;
                return local;
            }
            let mut walk = ClusterWalk::new(graph, anchor, w, w);
            let mut ticks: u32 = 0;
            while let Some(c) = walk.advance() {
                ticks = ticks.wrapping_add(1);
                if ticks % 8192 == 0 {
                    if timed_out.load(Ordering::Relaxed) {
                        local.interrupted = true;
                        break;
                    }
                    if let Some(d) = deadline {
                        if Instant::now() >= d {
                            timed_out.store(true, Ordering::Relaxed);
                            local.interrupted = true;
                            break;
                        }
                    }
                }
                local.total += 1;
                if let Some(pv) = local.per_vertex.as_mut() {
                    for &v in c {
                        pv[v as usize] += 1;
                    }
                }
            }
            local
        };

        // anchors beyond n - w cannot lead a w-set
        let anchor_hi = (n + 1).saturating_sub(w) as u32;
        let merged = (0..anchor_hi).into_par_iter().map(run_anchor).reduce(
            || Local {
                total: 0,
                per_vertex: options.per_vertex.then(|| vec![0u64; n]),
                interrupted: false,
            },
            |mut a, b| {
                a.total += b.total;
                if let (Some(pa), Some(pb)) = (a.per_vertex.as_mut(), b.per_vertex.as_ref()) {
                    for (x, y) in pa.iter_mut().zip(pb) {
                        *x += y;
                    }
                }
                a.interrupted |= b.interrupted;
                a
            },
        );

        if merged.interrupted {
            incomplete = true;
            break;
        }
        totals.push(BigUint::from(merged.total));
        if let (Some(acc), Some(pv)) = (per_vertex.as_mut(), merged.per_vertex) {
            acc.push(pv);
        }
        complete_to = w;
    }

    ClusterCensus {
        totals,
        per_vertex,
        complete_to,
        incomplete,
        elapsed: start.elapsed(),
    }
}

/// Least-squares fit of `log2(N_w)` against `w` over `[w_lo, w_hi]`.
#[derive(Debug, Clone, Copy)]
pub struct GrowthFit {
    /// Fitted prefactor of `N = A y^w`.
    pub a: f64,
    /// Fitted growth base `y`.
    pub y: f64,
    /// Effective branching parameter, `y / e + 1`.
    pub z_eff: f64,
    pub w_lo: usize,
    pub w_hi: usize,
}

pub fn fit_growth(census: &ClusterCensus, w_lo: usize, w_hi: usize) -> Result<GrowthFit> {
    fit_scaled(census, w_lo, w_hi, None)
}

/// Like [`fit_growth`], but on the mean per-vertex counts `w N_w / n`: the
/// number of clusters containing a given vertex, which is what the
/// `z`-regular-tree cap bounds.
pub fn fit_growth_per_vertex(
    census: &ClusterCensus,
    n_vertices: usize,
    w_lo: usize,
    w_hi: usize,
) -> Result<GrowthFit> {
    fit_scaled(census, w_lo, w_hi, Some(n_vertices))
}

fn fit_scaled(
    census: &ClusterCensus,
    w_lo: usize,
    w_hi: usize,
    per_vertex_n: Option<usize>,
) -> Result<GrowthFit> {
    let reject = |reason: &str| Error::FitRange {
        w_lo,
        w_hi,
        reason: reason.into(),
    };
    if w_lo < 1 || w_hi < w_lo + 2 {
        return Err(reject("need w_hi >= w_lo + 2 with w_lo >= 1"));
    }
    if w_hi > census.complete_to {
        return Err(reject("census does not cover the window"));
    }
    let mut points = Vec::with_capacity(w_hi - w_lo + 1);
    for w in w_lo..=w_hi {
        let count = &census.totals[w - 1];
        if count.is_zero() {
            return Err(reject(&format!("count at w={w} is zero")));
        }
        let mut c = count.to_f64().ok_or_else(|| reject("count overflows f64"))?;
        if let Some(n) = per_vertex_n {
            c = c * w as f64 / n as f64;
        }
        points.push((w as f64, c.log2()));
    }
    let m = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    let intercept = (sy - slope * sx) / m;
    let y = slope.exp2();
    Ok(GrowthFit {
        a: intercept.exp2(),
        y,
        z_eff: y / std::f64::consts::E + 1.0,
        w_lo,
        w_hi,
    })
}

/// Census CSV: `w,count` with exact integers.
pub fn census_csv(census: &ClusterCensus) -> String {
    let mut out = String::from("w,count\n");
    for (i, c) in census.totals.iter().enumerate() {
        out.push_str(&format!("{},{}\n", i + 1, c));
    }
    out
}
