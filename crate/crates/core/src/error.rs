use thiserror::Error;

/// Errors raised by grid, transform and norm operations.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("grid spec invalid: {0}")]
    InvalidGrid(String),
    #[error("physical array has {got} values, grid expects {want}")]
    ShapeMismatch { got: usize, want: usize },
    #[error("field has {got} components, operation expects {want}")]
    ComponentMismatch { got: usize, want: usize },
    #[error("multiplier evaluated to a non-finite value at frequency {k:?}")]
    NonFiniteMultiplier { k: Vec<i64> },
    #[error("exponent {exponent:.3} exceeds linear-mode cap {cap:.3}; use the log-domain path")]
    GevreyOverflow { exponent: f64, cap: f64 },
    #[error("grid hosts only {blocks} dyadic blocks, need at least 3")]
    GridTooSmall { blocks: usize },
    #[error("block index {j} outside valid range [{j_min}, {j_max}]")]
    BlockOutOfRange { j: i32, j_min: i32, j_max: i32 },
    #[error("block norm is zero; ratio undefined")]
    EmptyBlock,
    #[error("brute-force bilinear sum restricted to dim <= 2 and n <= 64, got dim={dim}, n={n}")]
    BilinearSizeGuard { dim: usize, n: usize },
    #[error("(p, q) = ({p}, {q}) violates the admissibility window for {mode}")]
    InadmissibleExponents { p: f64, q: f64, mode: String },
    #[error("slope fit needs at least {need} populated shells, found {got}")]
    DegenerateFit { need: usize, got: usize },
    #[error("kernel quadrature: {0}")]
    KernelQuadrature(String),
    #[error("need at least 2 snapshots for a time integral with rho < inf")]
    TooFewSnapshots,
    #[error("snapshot format: {0}")]
    SnapshotFormat(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CoreError>;
