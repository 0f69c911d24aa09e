use thiserror::Error;

/// Errors shared by all modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("level {level} outside system range [{k_min}, {k_max}]")]
    LevelOutOfRange { level: i32, k_min: i32, k_max: i32 },

    #[error("point outside the padded window")]
    PointOutsideWindow,

    #[error("cube belongs to a different system")]
    SystemMismatch,

    #[error("lattice windows or resolutions do not match")]
    WindowMismatch,

    #[error("no common ancestor within the system's level range")]
    NoCommonAncestor,

    #[error("cube finer than the lattice resolution")]
    ResolutionTooFine,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("weight has a zero cell where a positive value is required")]
    ZeroWeightCell,

    #[error("weight is identically zero")]
    ZeroWeight,

    #[error("power iteration did not converge within {0} iterations")]
    PowerIterationDivergence(usize),

    #[error("dense form would need {cells} cells, cap is {cap}")]
    SizeCapExceeded { cells: usize, cap: usize },

    #[error("coefficient family is not Carleson at cube level={level} index={index:?}")]
    NonCarleson { level: i32, index: Vec<i64> },

    #[error("truncated badness verdicts present; coarsen k_min or shrink r")]
    TruncatedVerdicts,

    #[error("coefficient at K level={level} exceeds its normalization by {factor}")]
    NormalizationExceeded { level: i32, factor: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
