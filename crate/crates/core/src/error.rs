use thiserror::Error;

/// Errors produced by the evaluation routines.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum ZetaError {
    /// Input outside the domain where the requested quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The series does not converge absolutely at this `s`.
    #[error("convergence-domain error: {0}")]
    ConvergenceDomain(String),

    /// The tail bound could not be pushed below the tolerance within the term budget.
    #[error("truncation error: achieved bound {achieved:e} after {terms} terms, requested {tol:e}")]
    Truncation { achieved: f64, tol: f64, terms: usize },

    /// A tail descriptor cannot be evaluated or bounded for this operation.
    #[error("unsupported tail: {0}")]
    UnsupportedTail(String),

    /// A zero coordinate was met where an argument must be tracked.
    #[error("branch undefined: coordinate {index} vanishes at sample {sample}")]
    BranchUndefined { index: usize, sample: usize },

    /// Argument unwrapping stayed ambiguous after the maximal refinement.
    #[error("step refinement exhausted on segment {segment}")]
    StepRefinement { segment: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An integrand pole lies on (or too close to) the integration contour.
    #[error("contour collision: pole at distance {distance:e} from the contour")]
    ContourCollision { distance: f64 },

    /// Evaluation at a pole of the gamma function.
    #[error("pole of the gamma function at s = {0}")]
    GammaPole(f64),

    /// Input outside the sector where a branch convention is fixed.
    #[error("convention error: {0}")]
    Convention(String),

    #[error("quadrature failure: {0}")]
    Quadrature(String),
}

pub type Result<T> = std::result::Result<T, ZetaError>;
