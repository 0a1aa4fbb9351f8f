use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph6 parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid family spec: {0}")]
    InvalidFamilySpec(String),
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular (pivot {pivot:e} below threshold {threshold:e})")]
    SingularMatrix { pivot: f64, threshold: f64 },
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph has a vertex of degree below two (vertex {vertex})")]
    DegreeOneVertex { vertex: usize },
    #[error("fundamental matrix is undefined for this graph")]
    FundamentalMatrixUndefined,
    #[error("target vertex {target} is unreachable for some starting arc")]
    UnreachableTarget { target: usize },
    #[error("graph has {n} vertices, brute-force budget is {max}")]
    TooLarge { n: usize, max: usize },
}

impl Error {
    /// Stable machine-readable code, used by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidGraph(_) => "invalid_graph",
            Error::Parse(_) => "parse_error",
            Error::Unsupported(_) => "unsupported",
            Error::InvalidFamilySpec(_) => "invalid_family_spec",
            Error::InvalidParam(_) => "invalid_param",
            Error::InvalidInput(_) => "invalid_input",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::SingularMatrix { .. } => "singular_matrix",
            Error::NotConnected => "not_connected",
            Error::DegreeOneVertex { .. } => "degree_one_vertex",
            Error::FundamentalMatrixUndefined => "fundamental_matrix_undefined",
            Error::UnreachableTarget { .. } => "unreachable_target",
            Error::TooLarge { .. } => "too_large",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
