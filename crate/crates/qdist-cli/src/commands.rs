//! Subcommand implementations.

use crate::config::{kv, with_workers, write_file, Report};
use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, ValueEnum};
use qdist::clusters::{count_clusters, fit_growth, fit_growth_per_vertex, CensusOptions};
use qdist::codes::{
    circulant_check, five_qubit_code, from_css, hypergraph_product, parse_poly,
    random_stabilizer_code, steane_code, toric_code, CssCode, SparsityProfile, StabilizerCode,
};
use qdist::complexity::{
    curve_csv, format_sig, gv_delta, gv_exponent_curve, lc_crossover_rate, lc_exponent,
    rate_grid, CodeFamily, ExponentPoint, Technique,
};
use qdist::engines::{
    css_sector_distance, run_engine, DistanceResult, EngineKind, ResultKind, SearchBudget,
    Sector,
};
use qdist::graph::{degree_bound, ConnectivityGraph};
use std::path::PathBuf;
use std::time::Duration;

// ---------------------------------------------------------------- inputs

/// A loaded code: the generic model plus the CSS structure when the input
/// carried one.
pub struct LoadedCode {
    pub code: StabilizerCode,
    pub css: Option<CssCode>,
    pub origin: String,
}

/// One path means Pauli text; two mean a CSS pair (`G_x` then `G_z`).
pub fn load_code(files: &[PathBuf]) -> Result<LoadedCode> {
    match files {
        [single] => {
            let text = std::fs::read_to_string(single)
                .with_context(|| format!("reading {}", single.display()))?;
            let code = qdist::formats::parse_pauli_text(&text)
                .with_context(|| format!("parsing {}", single.display()))?;
            Ok(LoadedCode {
                code,
                css: None,
                origin: single.display().to_string(),
            })
        }
        [gx, gz] => {
            let gx_text = std::fs::read_to_string(gx)
                .with_context(|| format!("reading {}", gx.display()))?;
            let gz_text = std::fs::read_to_string(gz)
                .with_context(|| format!("reading {}", gz.display()))?;
            let css = qdist::formats::parse_css_pair(&gx_text, &gz_text)
                .context("loading CSS pair")?;
            Ok(LoadedCode {
                code: from_css(&css),
                css: Some(css),
                origin: format!("{},{}", gx.display(), gz.display()),
            })
        }
        _ => bail!("expected one code file (Pauli text) or two (CSS pair: G_x G_z)"),
    }
}

// ---------------------------------------------------------------- validate

#[derive(Args)]
pub struct ValidateArgs {
    /// Code file(s): one Pauli text file or a G_x G_z pair.
    #[arg(required = true, num_args = 1..=2)]
    pub files: Vec<PathBuf>,
}

pub fn cmd_validate(args: &ValidateArgs) -> Result<u8> {
    let loaded = load_code(&args.files)?;
    let report = loaded.code.validate();
    let mut out = Report::new(
        "validate",
        &[kv("input", &loaded.origin), kv("n", report.n)],
    );
    out.push(&format!("n={}", report.n));
    out.push(&format!("rows={}", report.num_rows));
    out.push(&format!("r_eff={}", report.r_eff));
    out.push(&format!("k={}", report.k));
    out.push(&format!("j={}", report.profile.j));
    out.push(&format!("l={}", report.profile.l));
    out.push(&format!("valid={}", report.is_valid()));
    for (a, b) in &report.violations {
        out.push(&format!("anticommuting_pair={a},{b}"));
    }
    out.emit(None)?;
    Ok(if report.is_valid() { 0 } else { 1 })
}

// ---------------------------------------------------------------- distance

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Oracle,
    Lc,
    Bip,
    Rw,
}

impl EngineArg {
    fn kind(self) -> EngineKind {
        match self {
            EngineArg::Oracle => EngineKind::Oracle,
            EngineArg::Lc => EngineKind::LinkedCluster,
            EngineArg::Bip => EngineKind::Bipartition,
            EngineArg::Rw => EngineKind::RandomWindow,
        }
    }
}

#[derive(Args)]
pub struct DistanceArgs {
    /// Code file(s): one Pauli text file or a G_x G_z pair.
    #[arg(required = true, num_args = 1..=2)]
    pub files: Vec<PathBuf>,
    /// Engine to run; repeat to cross-check several.
    #[arg(long = "engine", value_enum, default_values_t = vec![EngineArg::Lc])]
    pub engines: Vec<EngineArg>,
    /// Largest candidate weight to search.
    #[arg(long)]
    pub wmax: Option<usize>,
    /// Per-cluster kernel dimension cap for the linked-cluster engine.
    #[arg(long, default_value_t = 20)]
    pub kernel_cap: usize,
    /// Multiplier on the random-window trial-count bound.
    #[arg(long, default_value_t = 4.0)]
    pub trial_factor: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    pub timeout_secs: Option<u64>,
    /// Worker thread count (default: all cores).
    #[arg(long)]
    pub workers: Option<usize>,
    /// Exit 2 unless every engine returns an exact distance.
    #[arg(long)]
    pub require_exact: bool,
    /// Search the generic alphabet even for CSS inputs (default for CSS is
    /// the two-sector decomposition).
    #[arg(long)]
    pub generic: bool,
    /// Emit CSV stat rows instead of structured-text records.
    #[arg(long)]
    pub csv: bool,
    /// Output file (default: stdout).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

fn budget_of(args: &DistanceArgs, n: usize) -> SearchBudget {
    SearchBudget {
        w_max: args.wmax.unwrap_or(n),
        kernel_cap: args.kernel_cap,
        trial_factor: args.trial_factor,
        seed: args.seed,
        wall_clock_limit: args.timeout_secs.map(Duration::from_secs),
    }
}

/// Two result claims conflict when no single true distance satisfies both.
fn consistent(a: &DistanceResult, b: &DistanceResult) -> bool {
    use ResultKind::*;
    match (a.kind, b.kind) {
        (Exact, Exact) => a.d == b.d,
        (Exact, UpperBound) => b.d >= a.d,
        (UpperBound, Exact) => a.d >= b.d,
        (Exact, LowerBound) => b.w_exhausted.unwrap_or(0) < a.d.unwrap_or(usize::MAX),
        (LowerBound, Exact) => a.w_exhausted.unwrap_or(0) < b.d.unwrap_or(usize::MAX),
        (UpperBound, LowerBound) => b.w_exhausted.unwrap_or(0) < a.d.unwrap_or(usize::MAX),
        (LowerBound, UpperBound) => a.w_exhausted.unwrap_or(0) < b.d.unwrap_or(usize::MAX),
        (UpperBound, UpperBound) | (LowerBound, LowerBound) => true,
    }
}

pub fn cmd_distance(args: &DistanceArgs) -> Result<u8> {
    let loaded = load_code(&args.files)?;
    loaded
        .code
        .ensure_valid()
        .map_err(|e| anyhow!("input code failed validation: {e}"))?;
    let budget = budget_of(args, loaded.code.n());
    let sector_mode = loaded.css.is_some() && !args.generic;

    let engine_list = args
        .engines
        .iter()
        .map(|e| e.kind().label())
        .collect::<Vec<_>>()
        .join(",");
    let mut out = Report::new(
        "distance",
        &[
            kv("input", &loaded.origin),
            kv("engines", engine_list),
            kv("wmax", budget.w_max),
            kv("kernel_cap", budget.kernel_cap),
            kv("trial_factor", budget.trial_factor),
            kv("seed", budget.seed),
            kv(
                "timeout_secs",
                args.timeout_secs.map_or("none".into(), |t| t.to_string()),
            ),
            kv("workers", args.workers.map_or("default".into(), |w| w.to_string())),
            kv("mode", if sector_mode { "css-sectors" } else { "generic" }),
        ],
    );

    let code = &loaded.code;
    let results: Vec<(EngineKind, DistanceResult)> = with_workers(args.workers, || {
        args.engines
            .iter()
            .map(|&engine| {
                let kind = engine.kind();
                let res = if sector_mode {
                    css_sector_distance(kind, code, &budget).map(|(combined, x, z)| {
                        (combined, Some((x, z)))
                    })
                } else {
                    run_engine(kind, code, Sector::Generic, &budget).map(|r| (r, None))
                };
                res.map(|(r, sectors)| (kind, r, sectors))
            })
            .collect::<std::result::Result<Vec<_>, _>>()
    })??
    .into_iter()
    .map(|(kind, r, sectors)| {
        if let Some((x, z)) = sectors {
            (
                kind,
                r,
                format!(
                    "d_x({})={} d_z({})={}",
                    x.kind.label(),
                    x.d.or(x.w_exhausted).unwrap_or(0),
                    z.kind.label(),
                    z.d.or(z.w_exhausted).unwrap_or(0)
                ),
            )
        } else {
            (kind, r, String::new())
        }
    })
    .map(|(kind, r, note)| {
        if !note.is_empty() {
            out.push_comment(&format!("{} sectors: {note}", kind.label()));
        }
        (kind, r)
    })
    .collect();

    if args.csv {
        out.push(DistanceResult::CSV_HEADER.trim_end());
        for (kind, res) in &results {
            out.push(res.to_csv_row(*kind).trim_end());
        }
    } else {
        for (kind, res) in &results {
            out.push(&format!("[engine {}]", kind.label()));
            out.push(&res.to_record());
        }
    }

    let mut agree = true;
    for i in 0..results.len() {
        for j in (i + 1)..results.len() {
            if !consistent(&results[i].1, &results[j].1) {
                agree = false;
            }
        }
    }
    if results.len() > 1 {
        out.push(&format!("agree={agree}"));
    }
    out.emit(args.output.as_ref())?;

    if !agree {
        eprintln!("error: engines disagree; at least one result is wrong");
        return Ok(1);
    }
    if args.require_exact && results.iter().any(|(_, r)| r.kind != ResultKind::Exact) {
        return Ok(2);
    }
    Ok(0)
}

// ---------------------------------------------------------------- clusters

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum SectorArg {
    X,
    Z,
    Generic,
}

#[derive(Args)]
pub struct ClustersArgs {
    /// Code file(s): one Pauli text file or a G_x G_z pair.
    #[arg(required = true, num_args = 1..=2)]
    pub files: Vec<PathBuf>,
    /// Largest cluster size to census.
    #[arg(long, default_value_t = 8)]
    pub wmax: usize,
    /// Fit window lower edge (default: skips the lattice transients).
    #[arg(long, default_value_t = 3)]
    pub wlo: usize,
    /// Fit window upper edge (default: wmax).
    #[arg(long)]
    pub whi: Option<usize>,
    /// Also tally per-vertex counts.
    #[arg(long)]
    pub per_vertex: bool,
    /// Which connectivity graph to walk for CSS inputs.
    #[arg(long, value_enum, default_value_t = SectorArg::X)]
    pub sector: SectorArg,
    /// Wall-clock limit in seconds; a partial census is flagged incomplete.
    #[arg(long)]
    pub timeout_secs: Option<u64>,
    #[arg(long)]
    pub workers: Option<usize>,
    /// Dump the connectivity graph as an `a b` edge list to this file.
    #[arg(long)]
    pub dump_graph: Option<PathBuf>,
    /// Output CSV file (default: stdout).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

pub fn cmd_clusters(args: &ClustersArgs) -> Result<u8> {
    let loaded = load_code(&args.files)?;
    let (graph, sector_label) = match (&loaded.css, args.sector) {
        (Some(css), SectorArg::X) => {
            let supports: Vec<Vec<usize>> = css
                .gz()
                .rows()
                .iter()
                .map(|r| r.iter_ones().collect())
                .collect();
            (
                ConnectivityGraph::from_supports(&supports, css.n())?,
                "x (rows of G_z)",
            )
        }
        (Some(css), SectorArg::Z) => {
            let supports: Vec<Vec<usize>> = css
                .gx()
                .rows()
                .iter()
                .map(|r| r.iter_ones().collect())
                .collect();
            (
                ConnectivityGraph::from_supports(&supports, css.n())?,
                "z (rows of G_x)",
            )
        }
        _ => (
            ConnectivityGraph::from_supports(&loaded.code.row_supports(), loaded.code.n())?,
            "generic (all rows)",
        ),
    };

    let whi = args.whi.unwrap_or(args.wmax);
    let mut out = Report::new(
        "clusters",
        &[
            kv("input", &loaded.origin),
            kv("wmax", args.wmax),
            kv("wlo", args.wlo),
            kv("whi", whi),
            kv("per_vertex", args.per_vertex),
            kv("sector", sector_label),
            kv(
                "timeout_secs",
                args.timeout_secs.map_or("none".into(), |t| t.to_string()),
            ),
            kv("workers", args.workers.map_or("default".into(), |w| w.to_string())),
        ],
    );
    let profile = loaded.code.sparsity_profile();
    out.push_comment(&format!(
        "graph: n={} max_degree={} degree_bound_z={}",
        graph.num_vertices(),
        graph.max_degree(),
        degree_bound(profile)
    ));

    if let Some(path) = &args.dump_graph {
        write_file(path, &graph.to_edge_list())?;
    }

    let options = CensusOptions {
        per_vertex: args.per_vertex,
        time_limit: args.timeout_secs.map(Duration::from_secs),
    };
    let census = with_workers(args.workers, || count_clusters(&graph, args.wmax, &options))?;

    if census.incomplete {
        out.push_comment(&format!(
            "census incomplete: counted sizes 1..={} before the deadline",
            census.complete_to
        ));
    }
    out.push(qdist::clusters::census_csv(&census).trim_end());

    if census.complete_to >= whi && whi >= args.wlo + 2 {
        let total = fit_growth(&census, args.wlo, whi)?;
        let per_vertex = fit_growth_per_vertex(&census, graph.num_vertices(), args.wlo, whi)?;
        out.push(&format!("fit_w_lo={}", total.w_lo));
        out.push(&format!("fit_w_hi={}", total.w_hi));
        out.push(&format!("y_total={}", format_sig(total.y)));
        out.push(&format!("y={}", format_sig(per_vertex.y)));
        out.push(&format!("A={}", format_sig(per_vertex.a)));
        out.push(&format!("z_eff={}", format_sig(per_vertex.z_eff)));
    } else {
        out.push_comment("fit skipped: census does not cover the requested window");
    }
    out.emit(args.output.as_ref())?;
    Ok(if census.incomplete { 2 } else { 0 })
}

// ---------------------------------------------------------------- exponents

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Generic,
    Css,
}

#[derive(Args)]
pub struct ExponentsArgs {
    /// Number of rate grid points over [0, 1].
    #[arg(long, default_value_t = 201)]
    pub grid: usize,
    /// Quantum code family for the GV bound.
    #[arg(long, value_enum, default_value_t = FamilyArg::Generic)]
    pub family: FamilyArg,
    /// Overlay the linked-cluster exponent at this effective branching
    /// parameter, evaluated at the same GV distance per rate point.
    #[arg(long)]
    pub lc_zeff: Option<f64>,
    /// Drop linked-cluster overlay points with delta above this cap.
    #[arg(long)]
    pub lc_delta_max: Option<f64>,
    /// Output CSV file (default: stdout).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

pub fn cmd_exponents(args: &ExponentsArgs) -> Result<u8> {
    let family = match args.family {
        FamilyArg::Generic => CodeFamily::QuantumGeneric,
        FamilyArg::Css => CodeFamily::QuantumCss,
    };
    let mut out = Report::new(
        "exponents",
        &[
            kv("grid", args.grid),
            kv("family", family.label()),
            kv(
                "lc_zeff",
                args.lc_zeff.map_or("none".into(), |z| z.to_string()),
            ),
            kv(
                "lc_delta_max",
                args.lc_delta_max.map_or("none".into(), |d| d.to_string()),
            ),
            kv("units", "binary exponents (log2)"),
        ],
    );
    let grid = rate_grid(args.grid);
    let mut points: Vec<ExponentPoint> = Vec::new();
    for technique in [
        Technique::ASliding,
        Technique::BRandomWindow,
        Technique::CBipartition,
        Technique::DPunctured,
    ] {
        points.extend(gv_exponent_curve(technique, family, &grid)?);
    }
    let mut csv = curve_csv(&points);
    if let Some(z_eff) = args.lc_zeff {
        out.push_comment(&format!(
            "linked-cluster crossover estimate: beats the random window for R above {}",
            format_sig(lc_crossover_rate(z_eff)?)
        ));
        for &r in &grid {
            let delta = gv_delta(family, r)?;
            if args.lc_delta_max.is_some_and(|cap| delta > cap) {
                continue;
            }
            let (f, _) = lc_exponent(delta, z_eff)?;
            csv.push_str(&format!(
                "{},{},{},{},{}\n",
                Technique::LcLinkedCluster.label(),
                family.label(),
                format_sig(r),
                format_sig(delta),
                format_sig(f),
            ));
        }
    }
    out.push(csv.trim_end());
    out.emit(args.output.as_ref())?;
    Ok(0)
}

// ---------------------------------------------------------------- gen

#[derive(Args)]
pub struct GenArgs {
    #[command(subcommand)]
    pub which: GenKind,
}

#[derive(clap::Subcommand)]
pub enum GenKind {
    /// The [[7,1,3]] self-dual CSS code.
    Steane(GenCommon),
    /// The [[5,1,3]] cyclic code (Pauli text only).
    FiveQubit(GenCommon),
    /// The [[2L^2, 2, L]] toric code.
    Toric {
        #[arg(long)]
        l: usize,
        #[command(flatten)]
        common: GenCommon,
    },
    /// Hypergraph product of two circulant (or alist) check matrices.
    Hgp {
        /// Circulant size of the first factor.
        #[arg(long, required_unless_present = "alist")]
        circulant_n: Option<usize>,
        /// Check polynomial bits of the first factor, e.g. `110`.
        #[arg(long, required_unless_present = "alist")]
        poly: Option<String>,
        /// First factor as an alist file instead of a circulant.
        #[arg(long, conflicts_with_all = ["circulant_n", "poly"])]
        alist: Option<PathBuf>,
        /// Circulant size of the second factor (default: same as first).
        #[arg(long)]
        circulant_n2: Option<usize>,
        /// Check polynomial of the second factor (default: same as first).
        #[arg(long)]
        poly2: Option<String>,
        /// Second factor as an alist file.
        #[arg(long)]
        alist2: Option<PathBuf>,
        #[command(flatten)]
        common: GenCommon,
    },
    /// Seeded random stabilizer code honoring a sparsity profile.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rows: usize,
        #[arg(long, default_value_t = 3)]
        j: usize,
        #[arg(long, default_value_t = 4)]
        l: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: GenCommon,
    },
}

#[derive(Args)]
pub struct GenCommon {
    /// Output base path: CSS codes write BASE.gx/BASE.gz (or BASE.pauli
    /// with --pauli); generic codes write BASE.pauli.
    #[arg(short, long)]
    pub output: PathBuf,
    /// Write the generic Pauli embedding instead of a CSS pair.
    #[arg(long)]
    pub pauli: bool,
}

fn write_css(css: &CssCode, common: &GenCommon, echo: &[String]) -> Result<Vec<PathBuf>> {
    if common.pauli {
        let path = common.output.with_extension("pauli");
        let code = from_css(css);
        write_file(&path, &qdist::formats::write_pauli_text(&code, echo))?;
        return Ok(vec![path]);
    }
    let gx_path = common.output.with_extension("gx");
    let gz_path = common.output.with_extension("gz");
    write_file(
        &gx_path,
        &qdist::formats::write_dense_binary(css.gx(), echo),
    )?;
    write_file(
        &gz_path,
        &qdist::formats::write_dense_binary(css.gz(), echo),
    )?;
    Ok(vec![gx_path, gz_path])
}

fn load_factor(
    circulant_n: Option<usize>,
    poly: Option<&str>,
    alist: Option<&PathBuf>,
) -> Result<qdist::algebra::BinaryMatrix> {
    if let Some(path) = alist {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return Ok(qdist::formats::parse_alist(&text)?);
    }
    let n = circulant_n.ok_or_else(|| anyhow!("missing --circulant-n"))?;
    let poly = parse_poly(poly.ok_or_else(|| anyhow!("missing --poly"))?)?;
    Ok(circulant_check(n, &poly)?)
}


pub fn cmd_gen(args: &GenArgs) -> Result<u8> {
    let written = match &args.which {
        GenKind::Steane(common) => write_css(
            &steane_code(),
            common,
            &["qdist gen steane rows=full-circulant".into()],
        )?,
        GenKind::FiveQubit(common) => {
            let path = common.output.with_extension("pauli");
            write_file(
                &path,
                &qdist::formats::write_pauli_text(
                    &five_qubit_code(),
                    &["qdist gen five-qubit".into()],
                ),
            )?;
            vec![path]
        }
        GenKind::Toric { l, common } => write_css(
            &toric_code(*l)?,
            common,
            &[format!("qdist gen toric l={l} rows=full-circulant")],
        )?,
        GenKind::Hgp {
            circulant_n,
            poly,
            alist,
            circulant_n2,
            poly2,
            alist2,
            common,
        } => {
            let h1 = load_factor(*circulant_n, poly.as_deref(), alist.as_ref())?;
            let h2 = if circulant_n2.is_some() || poly2.is_some() || alist2.is_some() {
                load_factor(
                    circulant_n2.or(*circulant_n),
                    poly2.as_deref().or(poly.as_deref()),
                    alist2.as_ref(),
                )?
            } else {
                h1.clone()
            };
            let css = hypergraph_product(&h1, &h2);
            let echo = format!(
                "qdist gen hgp n={} k={} rows=full-circulant",
                css.n(),
                css.k()
            );
            write_css(&css, common, &[echo])?
        }
        GenKind::Random {
            n,
            rows,
            j,
            l,
            seed,
            common,
        } => {
            let code = random_stabilizer_code(*n, *rows, SparsityProfile::new(*j, *l), *seed)?;
            let path = common.output.with_extension("pauli");
            let echo = format!("qdist gen random n={n} rows={rows} j={j} l={l} seed={seed}");
            write_file(&path, &qdist::formats::write_pauli_text(&code, &[echo]))?;
            vec![path]
        }
    };
    for path in written {
        println!("wrote {}", path.display());
    }
    Ok(0)
}
