//! Closed-form complexity-exponent calculators for distance-search
//! techniques, Gilbert-Varshamov solvers, and curve emission.
//!
//! Every exponent is reported in binary units: a technique whose step count
//! scales as `q^{F_q n}` is converted with the factor `log2 q`, so values
//! from different alphabets compare directly. Quantum variants substitute
//! the effective rate `R' = (1 + R) / 2` where re-encoding is involved and
//! use the entropy matching the family (quaternary for generic stabilizer
//! codes, binary for CSS).

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_rational::Ratio;

/// Distance-search technique whose complexity exponent is modeled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Technique {
    /// Sliding window (exponent only; no executable engine).
    ASliding,
    /// Random window re-encoding.
    BRandomWindow,
    /// Meet-in-the-middle bipartition.
    CBipartition,
    /// Punctured bipartition (exponent only; no executable engine).
    DPunctured,
    /// Linked-cluster enumeration; parameterized by `z_eff`, not family.
    LcLinkedCluster,
}

impl Technique {
    pub fn label(self) -> &'static str {
        match self {
            Technique::ASliding => "A_sliding",
            Technique::BRandomWindow => "B_random_window",
            Technique::CBipartition => "C_bipartition",
            Technique::DPunctured => "D_punctured",
            Technique::LcLinkedCluster => "LC_linked_cluster",
        }
    }
}

/// Code family fixing the alphabet and the GV relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeFamily {
    /// Classical linear code over F_q: `R = 1 - H_q(delta)`.
    Classical { q: u32 },
    /// Generic stabilizer code: `R = 1 - 2 H_4(delta)`.
    QuantumGeneric,
    /// CSS code: `R = 1 - 2 H_2(delta)`.
    QuantumCss,
}

impl CodeFamily {
    pub fn label(self) -> String {
        match self {
            CodeFamily::Classical { q } => format!("classical_q{q}"),
            CodeFamily::QuantumGeneric => "quantum_generic".into(),
            CodeFamily::QuantumCss => "quantum_css".into(),
        }
    }
}

/// One evaluated point of a complexity curve.
#[derive(Debug, Clone, Copy)]
pub struct ExponentPoint {
    pub technique: Technique,
    pub family: CodeFamily,
    pub r: f64,
    pub delta: f64,
    /// Binary complexity exponent.
    pub f: f64,
}

/// The q-ary entropy `H_q(x) = x log_q(q-1) - x log_q x - (1-x) log_q(1-x)`,
/// with the continuity limits `0 log 0 = 0` at the endpoints.
pub fn entropy_hq(q: u32, x: f64) -> Result<f64> {
    if q < 2 {
        return Err(Error::domain("entropy_hq", "q must be at least 2"));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(
            "entropy_hq",
            format!("x = {x} outside [0, 1]"),
        ));
    }
    let lnq = (q as f64).ln();
    let xlog = |t: f64| if t == 0.0 { 0.0 } else { t * t.ln() / lnq };
    Ok(x * ((q - 1) as f64).ln() / lnq - xlog(x) - xlog(1.0 - x))
}

fn h2(x: f64) -> f64 {
    entropy_hq(2, x).expect("x in range")
}

fn h4(x: f64) -> f64 {
    entropy_hq(4, x).expect("x in range")
}

const GV_TOLERANCE: f64 = 1e-12;

/// The relative GV distance: the unique `delta` in `[0, (q-1)/q)` with
/// `R = 1 - c H_q(delta)` for the family's `(q, c)`, found by bisection to
/// absolute tolerance 1e-12.
pub fn gv_delta(family: CodeFamily, r: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::domain("gv_delta", format!("R = {r} outside [0, 1]")));
    }
    let (q, c) = match family {
        CodeFamily::Classical { q } => (q, 1.0),
        CodeFamily::QuantumGeneric => (4, 2.0),
        CodeFamily::QuantumCss => (2, 2.0),
    };
    let target = (1.0 - r) / c;
    let mut lo = 0.0f64;
    let mut hi = (q - 1) as f64 / q as f64;
    // H_q is strictly increasing on [0, (q-1)/q] from 0 to 1 >= target
    while hi - lo > GV_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if entropy_hq(q, mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Effective quantum rate `R' = (1 + R) / 2` governing re-encoding-based
/// techniques applied to an `[[n, k]]` stabilizer code.
pub fn effective_quantum_rate(r: f64) -> f64 {
    (1.0 + r) / 2.0
}

/// Binary complexity exponent of `technique` for `family` at rate `r` and
/// relative distance `delta`.
pub fn exponent(technique: Technique, family: CodeFamily, r: f64, delta: f64) -> Result<ExponentPoint> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::domain("exponent", format!("R = {r} outside [0, 1]")));
    }
    if !(0.0..1.0).contains(&delta) {
        return Err(Error::domain(
            "exponent",
            format!("delta = {delta} outside [0, 1)"),
        ));
    }
    let log2q = |q: u32| (q as f64).log2();
    let f = match technique {
        Technique::ASliding => match family {
            CodeFamily::Classical { q } => log2q(q) * r * entropy_hq(q, delta)?,
            CodeFamily::QuantumGeneric => 2.0 * effective_quantum_rate(r) * h4(delta),
            CodeFamily::QuantumCss => 2.0 * effective_quantum_rate(r) * h2(delta),
        },
        Technique::BRandomWindow => {
            // alphabet-independent; quantum families substitute R -> R'
            let rate = match family {
                CodeFamily::Classical { .. } => r,
                CodeFamily::QuantumGeneric | CodeFamily::QuantumCss => {
                    effective_quantum_rate(r)
                }
            };
            let rem = 1.0 - rate;
            if delta > rem + 1e-9 {
                return Err(Error::domain(
                    "exponent",
                    format!("technique B needs delta <= 1 - R_eff = {rem}, got {delta}"),
                ));
            }
            if rem <= 1e-12 || delta <= 1e-12 {
                // endpoint limits: zero distance or zero redundancy
                0.0
            } else {
                h2(delta) - rem * h2((delta / rem).min(1.0))
            }
        }
        Technique::CBipartition => match family {
            CodeFamily::Classical { q } => log2q(q) * entropy_hq(q, delta)? / 2.0,
            CodeFamily::QuantumGeneric => h4(delta),
            CodeFamily::QuantumCss => h2(delta),
        },
        Technique::DPunctured => match family {
            CodeFamily::Classical { q } => log2q(q) * entropy_hq(q, delta)? * r / (1.0 + r),
            CodeFamily::QuantumGeneric => 2.0 * (1.0 + r) / (3.0 + r) * h4(delta),
            CodeFamily::QuantumCss => 2.0 * (1.0 + r) / (3.0 + r) * h2(delta),
        },
        Technique::LcLinkedCluster => {
            return Err(Error::domain(
                "exponent",
                "the linked-cluster exponent takes z_eff, not a family; use lc_exponent",
            ));
        }
    };
    Ok(ExponentPoint {
        technique,
        family,
        r,
        delta,
        f,
    })
}

/// The linked-cluster exponent `F = delta (z_eff - 1) H_2(1 / (z_eff - 1))`
/// together with its large-`z_eff` asymptote `delta log2(e (z_eff - 1))`.
pub fn lc_exponent(delta: f64, z_eff: f64) -> Result<(f64, f64)> {
    if z_eff <= 2.0 {
        return Err(Error::domain(
            "lc_exponent",
            format!("z_eff = {z_eff} must exceed 2"),
        ));
    }
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::domain(
            "lc_exponent",
            format!("delta = {delta} outside [0, 1]"),
        ));
    }
    let m = z_eff - 1.0;
    let exact = delta * m * h2(1.0 / m);
    let asymptotic = delta * (std::f64::consts::E * m).log2();
    Ok((exact, asymptotic))
}

/// Closed-form GV-bound exponents the quantum families admit.
fn gv_closed_form(technique: Technique, family: CodeFamily, r: f64) -> Option<f64> {
    match (technique, family) {
        (Technique::ASliding, CodeFamily::QuantumGeneric | CodeFamily::QuantumCss) => {
            Some((1.0 - r * r) / 2.0)
        }
        (Technique::CBipartition, CodeFamily::QuantumGeneric | CodeFamily::QuantumCss) => {
            Some((1.0 - r) / 2.0)
        }
        (Technique::DPunctured, CodeFamily::QuantumGeneric | CodeFamily::QuantumCss) => {
            Some((1.0 - r * r) / (3.0 + r))
        }
        _ => None,
    }
}

/// Evaluates `technique` for `family` along `r_grid` at the GV-bound
/// distance. Where a closed form exists the composed computation is verified
/// against it to 1e-9.
pub fn gv_exponent_curve(
    technique: Technique,
    family: CodeFamily,
    r_grid: &[f64],
) -> Result<Vec<ExponentPoint>> {
    let mut out = Vec::with_capacity(r_grid.len());
    for &r in r_grid {
        let delta = gv_delta(family, r)?;
        let point = exponent(technique, family, r, delta)?;
        if let Some(closed) = gv_closed_form(technique, family, r) {
            if (point.f - closed).abs() > 1e-9 {
                return Err(Error::domain(
                    "gv_exponent_curve",
                    format!(
                        "composed F = {} disagrees with closed form {} at R = {r}",
                        point.f, closed
                    ),
                ));
            }
        }
        out.push(point);
    }
    Ok(out)
}

/// Rate beyond which the linked-cluster method is expected to beat the
/// random-window technique: the crossover estimate `1 - R = 1 / (e z_eff)`.
pub fn lc_crossover_rate(z_eff: f64) -> Result<f64> {
    if z_eff <= 0.0 {
        return Err(Error::domain("lc_crossover_rate", "z_eff must be positive"));
    }
    Ok(1.0 - 1.0 / (std::f64::consts::E * z_eff))
}

/// Exact trial-count bound `T0(n, s, w) = C(n, w) / C(n - s, w)` for the
/// random-window technique, with the small-`w` geometric approximation
/// `(n / (n - s))^w` for logging.
pub fn trial_count_t0(n: usize, s: usize, w: usize) -> Result<(Ratio<BigUint>, f64)> {
    if s >= n {
        return Err(Error::domain(
            "trial_count_t0",
            format!("window size {s} must be below block length {n}"),
        ));
    }
    if w > n - s {
        return Err(Error::WindowCannotAvoid { n, s, w });
    }
    let exact = Ratio::new(
        crate::clusters::binomial(n, w),
        crate::clusters::binomial(n - s, w),
    );
    let approx = (n as f64 / (n - s) as f64).powi(w as i32);
    Ok((exact, approx))
}

/// Exact side-list size `L = (q - 1)^v C(s, v)` of a weight-`v` window
/// enumeration over alphabet size `q`.
pub fn sliding_list_size(q: u32, s: usize, v: usize) -> Result<BigUint> {
    if q < 2 {
        return Err(Error::domain("sliding_list_size", "q must be at least 2"));
    }
    if v > s {
        return Err(Error::domain(
            "sliding_list_size",
            format!("weight {v} exceeds window length {s}"),
        ));
    }
    Ok(BigUint::from(q - 1).pow(v as u32) * crate::clusters::binomial(s, v))
}

/// Punctured-bipartition window length `s = ceil(2 n R / (1 + R))`.
pub fn punctured_window_size(n: usize, r: f64) -> Result<usize> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::domain(
            "punctured_window_size",
            format!("R = {r} outside [0, 1]"),
        ));
    }
    Ok((2.0 * n as f64 * r / (1.0 + r)).ceil() as usize)
}

/// Quantum variant of [`punctured_window_size`], using `R' = (1 + R) / 2`.
pub fn punctured_window_size_quantum(n: usize, r: f64) -> Result<usize> {
    punctured_window_size(n, effective_quantum_rate(r)).map_err(|_| {
        Error::domain(
            "punctured_window_size_quantum",
            format!("R = {r} outside [0, 1]"),
        )
    })
}

/// Uniform `points`-point grid over `[0, 1]`.
pub fn rate_grid(points: usize) -> Vec<f64> {
    let points = points.max(2);
    (0..points)
        .map(|i| i as f64 / (points - 1) as f64)
        .collect()
}

/// Curve CSV: `technique,family,R,delta,F` with 12-significant-digit values.
pub fn curve_csv(points: &[ExponentPoint]) -> String {
    let mut out = String::from("technique,family,R,delta,F\n");
    for p in points {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            p.technique.label(),
            p.family.label(),
            format_sig(p.r),
            format_sig(p.delta),
            format_sig(p.f),
        ));
    }
    out
}

/// Fixed 12-significant-digit decimal form for reproducible diffs.
pub fn format_sig(x: f64) -> String {
    format!("{x:.11e}")
}
