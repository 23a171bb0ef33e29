use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("bracket error in {what}: f({lo}) = {f_lo}, f({hi}) = {f_hi}")]
    Bracket {
        what: &'static str,
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("{what} did not converge (achieved error estimate {achieved:e})")]
    Convergence { what: &'static str, achieved: f64 },

    #[error("{what}: bracket expansion reached |theta| = {theta}")]
    Divergence { what: &'static str, theta: f64 },

    #[error("resource limit exceeded in {what}: need {needed}, budget {budget}")]
    Resource {
        what: &'static str,
        needed: f64,
        budget: f64,
    },

    #[error(
        "non-monotone classification: x = {above} is above threshold but x = {below} is below it"
    )]
    Inconsistent { above: f64, below: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Bracket { .. } => "bracket",
            Error::Convergence { .. } => "convergence",
            Error::Divergence { .. } => "divergence",
            Error::Resource { .. } => "resource",
            Error::Inconsistent { .. } => "inconsistent",
            Error::Parse(_) => "parse",
            Error::Io(_) => "io",
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Parse(_) | Error::Io(_) => 2,
            Error::Bracket { .. }
            | Error::Convergence { .. }
            | Error::Divergence { .. }
            | Error::Inconsistent { .. } => 3,
            Error::Resource { .. } => 4,
        }
    }
}
