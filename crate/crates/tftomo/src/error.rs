//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A grid description violates its invariants (step, length, ordering).
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// A parameter value is outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Input signal has (numerically) zero energy and cannot be normalized.
    #[error("degenerate signal: zero spectral energy")]
    DegenerateSignal,

    /// Operation requires an energy-normalized analytic signal.
    #[error("analytic signal is not energy-normalized; call normalize_energy first")]
    NotNormalized,

    /// Complex samples fail the one-sided spectrum check.
    #[error("not an analytic signal: {0}")]
    NotAnalytic(String),

    /// |sin θ| below the degenerate-angle threshold; use marginal fallback.
    #[error("angle {theta} is degenerate (|sin| < {threshold}); use marginal fallback")]
    DegenerateAngle { theta: f64, threshold: f64 },

    /// Two objects that must share grids do not.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// Lag window longer than the available symmetric lag range.
    #[error("window of {len} taps exceeds the available lag range ({max} taps)")]
    WindowTooLong { len: usize, max: usize },

    /// A density handed to the entropy routines does not integrate to 1.
    #[error("density integrates to {integral}, expected 1 within {tolerance}")]
    NonNormalizedDensity { integral: f64, tolerance: f64 },

    /// A numerical contract (normalization, realness, non-negativity) failed.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}
