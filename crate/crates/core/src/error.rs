use std::path::PathBuf;

use crate::svm::SvmModel;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("qubit count {0} outside supported range 1..={max}", max = crate::sim::MAX_QUBITS)]
    Capacity(usize),

    #[error("qubit index error: {0}")]
    Index(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("degenerate labels: {0}")]
    DegenerateLabels(String),

    /// SMO ran out of passes. The best iterate found is carried along.
    #[error("SMO did not converge after {passes} passes (max KKT violation {violation:.3e})")]
    Convergence {
        passes: usize,
        violation: f64,
        best: Box<SvmModel>,
    },

    #[error("{}:{line}: {msg}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("data layout: {0}")]
    DataLayout(String),

    #[error("config: {0}")]
    Config(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for the command-line harness.
    ///
    /// 1: usage or configuration, 2: data, 3: numeric or convergence.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Config(_) | Error::Argument(_) | Error::Capacity(_) | Error::Shape(_) | Error::Index(_) => 1,
            Error::Parse { .. }
            | Error::DataLayout(_)
            | Error::Io { .. }
            | Error::Json(_)
            | Error::DegenerateInput(_)
            | Error::DegenerateLabels(_) => 2,
            Error::Convergence { .. } => 3,
        }
    }
}
