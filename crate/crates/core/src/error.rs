use std::path::PathBuf;

use thiserror::Error;

use crate::grid::Coord;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("node ({}, {}) is not an internal node", .0.col, .0.row)]
    NotInternal(Coord),

    #[error("subset has {got} identifiers, expected {expected}")]
    SubsetSize { expected: usize, got: usize },

    #[error("identifier assignment is not a bijection onto 1..={n}: {reason}")]
    NotBijection { n: usize, reason: String },

    #[error("algorithm `{algorithm}` has radius {radius} but the grid was built for T = {t}")]
    RadiusMismatch { algorithm: String, radius: usize, t: usize },

    #[error("algorithm `{algorithm}` produced a non-dominating set ({undominated} undominated nodes, first at ({}, {}))", .first.col, .first.row)]
    InvalidAlgorithm {
        algorithm: String,
        undominated: usize,
        first: Coord,
    },

    #[error("soundness violation in block {block}: {detail}")]
    Soundness { block: usize, detail: String },

    #[error("instance has {n} nodes, exact solver limit is {limit}")]
    SizeLimit { n: usize, limit: usize },

    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short machine-readable tag used in structured error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParams(_) => "invalid-params",
            Error::NotInternal(_) => "not-internal",
            Error::SubsetSize { .. } => "subset-size",
            Error::NotBijection { .. } => "not-bijection",
            Error::RadiusMismatch { .. } => "radius-mismatch",
            Error::InvalidAlgorithm { .. } => "invalid-algorithm",
            Error::Soundness { .. } => "soundness",
            Error::SizeLimit { .. } => "size-limit",
            Error::UnknownAlgorithm(_) => "unknown-algorithm",
            Error::Io { .. } => "io",
            Error::Json(_) => "json",
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
