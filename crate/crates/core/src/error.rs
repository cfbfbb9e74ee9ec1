use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A model parameter violates its constraints.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Two grid functions that must share a grid do not.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// The reference ground state vanishes inside the domain.
    #[error("ground state has an interior zero at grid index {index}")]
    DegenerateGroundState { index: usize },

    /// The shooting function does not change sign across the bracket.
    #[error("no eigenvalue in bracket [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    /// The bracket holds more than one eigenvalue.
    #[error("bracket [{lo}, {hi}] holds {count} eigenvalues, expected exactly one")]
    MultipleStates { lo: f64, hi: f64, count: usize },

    /// The eigensolver failed for another reason.
    #[error("eigensolver failure: {0}")]
    Solver(String),

    /// Hierarchy construction failed at a specific level.
    #[error("hierarchy level {level}: {source}")]
    Level {
        level: usize,
        #[source]
        source: Box<Error>,
    },

    /// A quadrature could not resolve its integrand within the node budget.
    #[error("resolution guard: {0}")]
    Resolution(String),

    /// A least-squares fit was requested on unusable data.
    #[error("fit error: {0}")]
    Fit(String),

    /// The request is excluded by the physics (e.g. virial check at S = 0).
    #[error("rejected: {0}")]
    Rejected(String),
}

impl Error {
    pub(crate) fn at_level(self, level: usize) -> Self {
        Error::Level {
            level,
            source: Box::new(self),
        }
    }
}
