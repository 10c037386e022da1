use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("SelfLoop: vertex {0} is joined to itself")]
    SelfLoop(usize),
    #[error("DuplicateEdge: edge {{{0}, {1}}} listed more than once")]
    DuplicateEdge(usize, usize),
    #[error("VertexOutOfRange: vertex {vertex} but graph has {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("UnknownFamily: {0}")]
    UnknownFamily(String),
    #[error("InvalidParameter: {0}")]
    InvalidParameter(String),
    #[error("NotRegular: vertex degrees {degrees:?}")]
    NotRegular { degrees: Vec<usize> },

    #[error("NotSymmetric: entry ({row}, {col}) differs from its transpose by {deviation:e}")]
    NotSymmetric {
        row: usize,
        col: usize,
        deviation: f64,
    },
    #[error("DimensionMismatch: expected {expected} entries, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("EmptyMatrix: eigenvalues need order >= 1")]
    EmptyMatrix,
    #[error("NoConvergence: symmetric eigensolver exceeded {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("ZeroPolynomial: polynomial has no nonzero coefficient")]
    ZeroPolynomial,

    #[error("IsolatedVertex: vertex {0} has degree 0")]
    IsolatedVertex(usize),
    #[error("ZeroRegularity: closed form needs regularity r >= 1")]
    ZeroRegularity,
    #[error("TrivialDenominator: closed form needs at least two vertices in G1")]
    TrivialDenominator,
    #[error("NegativeMultiplicity: eigenvalue 1 would have multiplicity {0}")]
    NegativeMultiplicity(i64),
    #[error("Disconnected: graph has {components} connected components")]
    Disconnected { components: usize },

    #[error("NotCospectralInput: {0}")]
    NotCospectralInput(String),
    #[error("CertificationFailed: {composite} pair differs by {max_deviation:e}")]
    CertificationFailed {
        composite: String,
        max_deviation: f64,
    },

    #[error("ParseError at line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("UnsupportedSize: graph6 input encodes {0} vertices; only n <= 62 is supported")]
    UnsupportedSize(usize),
    #[error("MalformedGraph6: {0}")]
    MalformedGraph6(String),
    #[error("line {line}: {inner}")]
    AtLine { line: usize, inner: Box<Error> },
}

impl Error {
    /// True when the error reports a violated mathematical precondition
    /// rather than bad input data.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::NotRegular { .. }
                | Error::IsolatedVertex(_)
                | Error::ZeroRegularity
                | Error::TrivialDenominator
                | Error::NegativeMultiplicity(_)
                | Error::Disconnected { .. }
                | Error::NotCospectralInput(_)
                | Error::CertificationFailed { .. }
                | Error::NoConvergence { .. }
        )
    }
}
