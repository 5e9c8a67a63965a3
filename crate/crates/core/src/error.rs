use thiserror::Error;

use crate::rv::Family;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid variable `{name}`: field `{field}` {reason}")]
    InvalidSpec {
        name: String,
        field: &'static str,
        reason: String,
    },

    #[error("analytic raw moments are not available for the {0} family; use empirical moments")]
    UnsupportedAnalytic(Family),

    #[error("moment matrix is ill-conditioned at degree {degree} (reciprocal condition {rcond:.3e})")]
    Conditioning { degree: usize, rcond: f64 },

    #[error("index set for d={d}, p={p} exceeds the addressable size")]
    Capacity { d: usize, p: usize },

    #[error("design matrix is rank deficient (rank {rank} < {cols} columns); use ridge > 0 or more samples")]
    RankDeficient { rank: usize, cols: usize },

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("degenerate data: {0}")]
    Degenerate(String),

    #[error("invalid geometry: {0}")]
    Geometry(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("training diverged at epoch {epoch}: {detail}")]
    Diverged { epoch: usize, detail: String },

    #[error("problem `{0}` has no performance function; supply one before generating labels")]
    MissingFunction(String),

    #[error("performance function failed at sample {index}: {source}")]
    Sample {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("external command failed: {0}")]
    Command(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by numerics or training rather than input or I/O.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::Conditioning { .. }
                | Error::RankDeficient { .. }
                | Error::NonFinite(_)
                | Error::Diverged { .. }
                | Error::Degenerate(_)
        )
    }
}
