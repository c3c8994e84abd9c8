use std::fmt;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("{0}")]
    Parameter(String),

    #[error("window error: t = {t} outside [{lo}, {hi}]")]
    Window { t: f64, lo: f64, hi: f64 },

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("backend error: {0}")]
    Backend(String),

    #[error("convergence failure: {0}")]
    Convergence(String),

    #[error("tolerance not met: {0}")]
    ToleranceNotMet(String),

    #[error("no crossing of target {target} found on [{lo}, {hi}]")]
    NoCrossing { target: f64, lo: f64, hi: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("checkpoint format error: {0}")]
    Format(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("{stage}: {source}")]
    Stage {
        stage: Stage,
        #[source]
        source: Box<Error>,
    },
}

/// Pipeline stage tag used when aggregating errors from a full run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Chain,
    Extraction,
    Report,
    QSystem,
    Spacing,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Stage::Chain => "chain",
            Stage::Extraction => "extraction",
            Stage::Report => "report",
            Stage::QSystem => "q-system",
            Stage::Spacing => "spacing",
        };
        f.write_str(s)
    }
}

impl Error {
    pub fn at(self, stage: Stage) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// Process exit status: 1 for domain/parameter problems, 2 for
    /// convergence and tolerance failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Convergence(_) | Error::ToleranceNotMet(_) | Error::NoCrossing { .. } => 2,
            Error::Stage { source, .. } => source.exit_code(),
            _ => 1,
        }
    }
}
