//! Error type shared by every module of the kernel.

use alloc::string::String;
use core::fmt;

/// Failure modes of the kernel.
///
/// Numerical degradation always surfaces as an explicit variant; no
/// operation silently weakens a check to keep going.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Operands live on spaces of different dimensions.
    DimensionMismatch { expected: usize, got: usize },
    /// A Radon-Nikodym quotient μ(gx)/μ(x) required dividing by a
    /// zero-mass point while the numerator was positive.
    ZeroMassDivision { point: usize },
    /// The operation is only defined for measure-invariant actions.
    NonInvariantMeasure,
    /// Membership check against an algebra span failed.
    NotInAlgebra { residual: f64 },
    /// A matrix expected to be positive semidefinite has a significantly
    /// negative eigenvalue.
    NotPsd { min_eigenvalue: f64 },
    /// The algebra has a nontrivial center.
    NotAFactor { center_dim: usize },
    /// No basis element bridges the two projectors; on a factor this
    /// cannot happen, so it signals a non-factor slipped past the caller.
    NoBridge,
    /// A matrix expected to be an orthogonal projector is not idempotent
    /// or self-adjoint at tolerance.
    NotAProjector { defect: f64 },
    /// The identity-component diagonal of a crossed-product projector is
    /// not close to a 0/1 indicator (numerical-degradation signal).
    NonBooleanDiagonal { value: f64, point: usize },
    /// Expected a self-adjoint matrix.
    NotSelfAdjoint { defect: f64 },
    /// Expected an abelian algebra.
    NotAbelian { defect: f64 },
    /// Classification requires a free and ergodic action; carries the
    /// name of the failing axiom.
    NotFreeOrErgodic { axiom: &'static str },
    /// Expected a unit vector.
    NotNormalized { norm: f64 },
    /// The tracial check needs total mass one and an invariant measure.
    NotFiniteNormalized,
    /// A construction would exceed the configured hybrid-dimension cap.
    CapExceeded { requested: usize, cap: usize },
    /// Measure-space validation failed.
    InvalidSpace(String),
    /// Cayley-table validation failed.
    InvalidGroup(String),
    /// Action-table validation failed.
    InvalidAction(String),
    /// An iterative kernel did not converge or an internal sanity check
    /// tripped; carries a short description of the failing step.
    NumericalFailure(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::ZeroMassDivision { point } => {
                write!(f, "zero-mass division at point index {point}")
            }
            Error::NonInvariantMeasure => {
                write!(f, "operation refuses non-invariant measures")
            }
            Error::NotInAlgebra { residual } => {
                write!(f, "operator is not in the algebra (residual {residual:.3e})")
            }
            Error::NotPsd { min_eigenvalue } => {
                write!(f, "matrix is not PSD (min eigenvalue {min_eigenvalue:.3e})")
            }
            Error::NotAFactor { center_dim } => {
                write!(f, "algebra is not a factor (center dimension {center_dim})")
            }
            Error::NoBridge => write!(f, "no bridging element found in the algebra basis"),
            Error::NotAProjector { defect } => {
                write!(f, "matrix is not a projector (defect {defect:.3e})")
            }
            Error::NonBooleanDiagonal { value, point } => write!(
                f,
                "identity-component diagonal is not an indicator: {value:.6} at point {point}"
            ),
            Error::NotSelfAdjoint { defect } => {
                write!(f, "matrix is not self-adjoint (defect {defect:.3e})")
            }
            Error::NotAbelian { defect } => {
                write!(f, "algebra is not abelian (commutator norm {defect:.3e})")
            }
            Error::NotFreeOrErgodic { axiom } => {
                write!(f, "action fails the {axiom} axiom")
            }
            Error::NotNormalized { norm } => {
                write!(f, "vector is not normalized (norm {norm:.6})")
            }
            Error::NotFiniteNormalized => {
                write!(f, "requires total mass 1 and an invariant measure")
            }
            Error::CapExceeded { requested, cap } => {
                write!(f, "hybrid dimension {requested} exceeds cap {cap}")
            }
            Error::InvalidSpace(msg) => write!(f, "invalid measure space: {msg}"),
            Error::InvalidGroup(msg) => write!(f, "invalid group table: {msg}"),
            Error::InvalidAction(msg) => write!(f, "invalid action table: {msg}"),
            Error::NumericalFailure(what) => write!(f, "numerical failure: {what}"),
        }
    }
}

impl core::error::Error for Error {}
