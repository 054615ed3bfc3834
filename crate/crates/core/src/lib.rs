//! Arithmetic resonance structure of quadratic and cubic frequency vectors
//! and the resulting exponentially small estimates for the maximal splitting
//! distance of whiskered-torus invariant manifolds.

pub mod dyadic;
pub mod field;
pub mod koch;
pub mod melnikov;
pub mod oracle;
pub mod resonances;
pub mod scan;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("sign certification exhausted the {0}-bit precision cap")]
    PrecisionExhausted(u32),
    #[error("continued fraction period must be non-empty with all entries >= 1")]
    InvalidPeriod,
    #[error("integer vector is not admissible")]
    NotAdmissible,
    #[error("index j does not yield a primitive vector")]
    NotPrimitive,
    #[error("two distinct primitives tie for the minimal limit numerator")]
    AmbiguousMinimum,
    #[error("invalid frequency spec: {0}")]
    InvalidSpec(String),
    #[error("quadrature tail bound {0:e} exceeds the requested tolerance")]
    QuadratureTail(f64),
    #[error("brute-force minimizer touches the enumeration boundary (|k| = {0})")]
    BoundaryMinimizer(i64),
}
