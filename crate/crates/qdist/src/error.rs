use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("CSS orthogonality violated: G_x row {row_x} overlaps G_z row {row_z} an odd number of times")]
    CssOrthogonality { row_x: usize, row_z: usize },

    #[error("circulant check polynomial must be nonzero")]
    ZeroPolynomial,

    #[error("stabilizer code invalid: {count} anticommuting generator pair(s), first {first:?}")]
    InvalidCode { count: usize, first: (usize, usize) },

    #[error("code generation budget exhausted after {attempts} attempts (n={n}, rows={rows}, j={j}, l={l})")]
    GenerationBudget {
        attempts: u64,
        n: usize,
        rows: usize,
        j: usize,
        l: usize,
    },

    #[error("cluster {cluster:?}: kernel dimension {dim} exceeds cap {cap}; raise kernel_cap to keep the search exact")]
    KernelCapExceeded {
        cluster: Vec<u32>,
        dim: usize,
        cap: usize,
    },

    #[error("growth fit on w in [{w_lo}, {w_hi}] rejected: {reason}")]
    FitRange {
        w_lo: usize,
        w_hi: usize,
        reason: String,
    },

    #[error("{context}: domain violation: {constraint}")]
    Domain { context: String, constraint: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("a window of {s} of {n} positions cannot avoid a support of weight {w}")]
    WindowCannotAvoid { n: usize, s: usize, w: usize },

    #[error("random-window search exhausted {trials} trials without any witness ({skipped} windows skipped)")]
    NoWitness { trials: u64, skipped: u64 },

    #[error("all {trials} sampled windows were rank-deficient; the code cannot be re-encoded this way")]
    DegenerateWindows { trials: u64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(context: impl Into<String>, constraint: impl Into<String>) -> Self {
        Error::Domain {
            context: context.into(),
            constraint: constraint.into(),
        }
    }
}
