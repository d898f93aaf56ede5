use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate hyperedge {{{0}}}")]
    DuplicateEdge(String),
    #[error("not an antichain: {{{subset}}} is contained in {{{superset}}}")]
    NotAntichain { subset: String, superset: String },
    #[error("ground set has {0} elements; at most {max} are supported", max = crate::set::MAX_ELEMENTS)]
    TooManyElements(usize),
    #[error("clutter is degenerate ({0}); the requested quantity is undefined")]
    DegenerateClutter(&'static str),
    #[error("{what} exceeded cap of {limit}")]
    CapExceeded { what: &'static str, limit: usize },
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("clutters live on different ground sets")]
    GroundMismatch,
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("polyhedron is unbounded")]
    UnboundedPolyhedron,
    #[error("empty input")]
    EmptyInput,
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("axiom violation: {0}")]
    AxiomViolation(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("degenerate graph: {0}")]
    DegenerateGraph(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// True for errors raised by a resource guard rather than bad input.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::TooManyElements(_))
    }
}
