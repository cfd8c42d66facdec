use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("edge list contains a cycle through edge {0}-{1}")]
    Cycle(usize, usize),

    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("vertex {vertex} has degree {degree}, bound is {bound}")]
    DegreeBound { vertex: usize, degree: usize, bound: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("no valid digital expansion for n={n}, d={d}: {msg}")]
    Expansion { n: u64, d: u64, msg: String },

    #[error("quadrature did not converge after {subdivisions} subdivisions (estimate {estimate}, error {error})")]
    Convergence { subdivisions: usize, estimate: f64, error: f64 },

    #[error("requested precision {0} is not attainable in double precision")]
    Precision(f64),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
}
