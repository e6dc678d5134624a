use thiserror::Error;

use crate::catalog::CatalogError;
use crate::group::GroupError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("invalid symbol {text}: {}", .reasons.join("; "))]
    InvalidSymbol { text: String, reasons: Vec<String> },
    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },
    #[error("symbol {0} is not in the symbol index")]
    OutsideIndex(String),
    #[error("invalid model: {0}")]
    Model(String),
    #[error("invalid blow-up center: {0}")]
    Center(String),
    #[error("filter closure violated: {0}")]
    FilterClosure(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("integer overflow: {0}")]
    Overflow(String),
}

impl Error {
    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Catalog(CatalogError::Incomplete { .. }) => 3,
            _ => 2,
        }
    }

    pub(crate) fn parse(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Parse {
            what,
            detail: detail.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
