//! Crate-wide error type.

use std::path::PathBuf;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed record at {path}:{line}: {message}")]
    MalformedRecord {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("unknown label {label:?} at {path}:{line}")]
    UnknownLabel {
        path: PathBuf,
        line: usize,
        label: String,
    },

    #[error("duplicate unit id {unit_id} in document {doc_id:?}")]
    DuplicateUnit { doc_id: String, unit_id: usize },

    #[error("unit ids in document {doc_id:?} are not contiguous from 0 (missing {missing})")]
    NonContiguousUnits { doc_id: String, missing: usize },

    #[error("empty document {doc_id:?}")]
    EmptyDocument { doc_id: String },

    #[error("word list entry contains whitespace at {path}:{line}: {entry:?}")]
    WhitespaceWord {
        path: PathBuf,
        line: usize,
        entry: String,
    },

    #[error("cannot merge word lists with mixed provenance ({0} vs {1})")]
    MixedProvenance(String, String),

    #[error("invalid segmenter configuration: {0}")]
    InvalidConfig(String),

    #[error("embedding store: {0}")]
    EmbeddingStore(String),

    #[error("knowledge graph dump at {path}:{line}: {message}")]
    MalformedDump {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("knowledge graph request for {word:?} failed: {message}")]
    KgNetwork { word: String, message: String },

    #[error("no cached neighbors for {word:?} in cache-only mode")]
    CacheMiss { word: String },

    #[error("knowledge graph client has no backend and no cache directory")]
    KgUnconfigured,

    #[error("cannot classify an empty score list")]
    EmptyScores,

    #[error("label vectors have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("label {0:?} is outside the declared label space")]
    LabelOutsideSpace(String),

    #[error("predicted units without gold labels: {0}")]
    MissingGold(String),

    #[error("no document is annotated by at least two annotators")]
    NoDoublyAnnotated,

    #[error("configuration: {0}")]
    Config(String),

    #[error("missing input files:\n{0}")]
    MissingInputs(String),

    #[error("{stage} stage failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// True for transient failures that a caller may retry (live
    /// knowledge-graph requests); everything else is permanent.
    pub fn is_retryable(&self) -> bool {
        match self {
            Error::KgNetwork { .. } => true,
            Error::Stage { source, .. } => source.is_retryable(),
            _ => false,
        }
    }

    /// Process exit code: 1 usage, 2 data, 3 external service.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::InvalidConfig(_) | Error::MissingInputs(_) => 1,
            Error::KgNetwork { .. } => 3,
            Error::Stage { source, .. } => source.exit_code(),
            _ => 2,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
