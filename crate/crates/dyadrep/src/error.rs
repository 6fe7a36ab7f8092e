use thiserror::Error;

/// Crate-wide error type.
#[derive(Error, Debug)]
pub enum Error {
    #[error("rank error: requested rank {requested} but the operand has rank {have}")]
    RankOrder { requested: u32, have: u32 },

    #[error("rank cap exceeded: requested rank {requested}, cap is {cap} (set DYADREP_MAX_RANK to raise)")]
    RankCap { requested: u32, cap: u32 },

    #[error("a step of rank {rank} needs {expected} cells, got {got}")]
    CellCount { rank: u32, expected: usize, got: usize },

    #[error("generator has zero integral; a representing system requires a nonzero mean")]
    ZeroIntegral,

    #[error("operation requires a normalized system (integral of the generator must be 1)")]
    NotNormalized,

    #[error("dual norm is not available for the {family} family")]
    UnsupportedDual { family: String },

    #[error("dilation parameter {tau} outside (0, 1]")]
    BadDilation { tau: f64 },

    #[error("argument {t} outside the domain (0, 1]")]
    Domain { t: f64 },

    #[error("input must be a nonnegative decreasing step")]
    NotDecreasing,

    #[error("no smoothness witness for this family: phi(t)/t stays bounded near zero")]
    NoWitness,

    #[error("no certified contraction: best theta = {theta:.6} >= 1")]
    NoContraction { theta: f64 },

    #[error("contraction violated at round {round}: ratio {ratio:.12} exceeds theta {theta:.12}")]
    ContractionViolated { round: usize, ratio: f64, theta: f64 },

    #[error("invalid space specification `{0}`")]
    BadSpaceSpec(String),

    #[error("invalid norm family parameter: {0}")]
    BadFamily(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
