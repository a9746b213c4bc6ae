use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid index: {0}")]
    Index(String),

    #[error("unsupported dimension {0}, expected 2 or 3")]
    Dimension(usize),

    #[error("eigenvalue iteration did not converge for index {index}")]
    NoConvergence { index: usize },

    #[error("matrix is numerically singular at pivot {pivot}")]
    Singular { pivot: usize },

    #[error("Lanczos breakdown after {achieved} steps, requested {requested}")]
    RuleSize { requested: usize, achieved: usize },

    #[error("non-finite input sample at {location:?}")]
    NonFinite { location: Vec<f64> },

    #[error("coefficient field has kind {found:?}, expected {expected:?}")]
    Kind {
        expected: crate::transform::FieldKind,
        found: crate::transform::FieldKind,
    },

    #[error("shape mismatch: {0} vs {1}")]
    Shape(usize, usize),

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    /// Stable machine-readable tag, used by the CLI error line and the C ABI.
    pub fn kind_name(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Index(_) => "index",
            Error::Dimension(_) => "dimension",
            Error::NoConvergence { .. } => "no_convergence",
            Error::Singular { .. } => "singular",
            Error::RuleSize { .. } => "rule_size",
            Error::NonFinite { .. } => "non_finite",
            Error::Kind { .. } => "kind",
            Error::Shape(..) => "shape",
            Error::Config(_) => "config",
        }
    }
}
