//! Oscillatory-integral toolkit: Bessel J, the twisted Mellin transform
//! W-dagger, stationary-phase main terms with explicit error budgets, a
//! two-dimensional second-derivative bound, and a numerical check of
//! Poisson summation.
//!
//! Everything here works at fixed double precision with error estimates
//! that are validated against direct quadrature in the test suites; nothing
//! is certified interval arithmetic.

pub mod bessel;
pub mod bump;
pub mod poisson;
pub mod stationary;
pub mod wdagger;

pub use bessel::bessel_j;
pub use bump::{BumpKind, SmoothBump};
pub use poisson::{poisson_check, PoissonCheck};
pub use stationary::{
    double_integral_bound, nonstationary_bound, stationary_phase_main, DoubleIntegralOutcome,
    ErrorTermConvention, PhasePair, StationaryResult,
};
pub use wdagger::{w_dagger_quadrature, w_dagger_stationary};

use crate::quad::QuadError;

/// Errors for the oscillatory-integral routines.
#[derive(Debug, thiserror::Error)]
pub enum OscError {
    /// Window support must be a finite interval strictly inside (0, inf).
    #[error("window support [{a}, {b}] must satisfy 0 < a < b with finite endpoints")]
    InvalidSupport { a: f64, b: f64 },
    /// The underlying quadrature ran out of panels before reaching its
    /// error target.
    #[error(transparent)]
    BudgetExceeded(#[from] QuadError),
    /// A phase configuration under which the requested formula is undefined
    /// (zero frequency, vanishing derivative, and the like).
    #[error("degenerate phase: {reason}")]
    DegeneratePhase { reason: &'static str },
    /// The phase derivative never changes sign inside the domain, so there
    /// is no stationary main term.
    #[error("phase derivative has no interior sign change on the domain")]
    NoStationaryPoint,
    /// The phase second derivative dips below the declared lower bound
    /// somewhere on the domain.
    #[error(
        "phase second derivative is {value:.3e} at x = {x:.6} (lower bound {required:.3e} required)"
    )]
    NonConvexPhase { x: f64, value: f64, required: f64 },
    /// One of the sampled Hessian lower bounds for the 2D bound fails.
    #[error("{which} = {value:.3e} at ({x:.4}, {y:.4}) violates the lower bound {required:.3e}")]
    HessianViolation {
        which: &'static str,
        x: f64,
        y: f64,
        value: f64,
        required: f64,
    },
}
