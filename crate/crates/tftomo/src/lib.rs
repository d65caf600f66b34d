//! Optical time-frequency tomograms of analytic signals.
//!
//! The crate computes, for real test signals (Gaussian-enveloped chirp, AM,
//! FM):
//!
//! - analytic signals via the spectral Hilbert transform, with unit
//!   spectral-energy normalization ([`analytic`]);
//! - Wigner-Ville and lag-windowed (pseudo) Wigner-Ville distributions
//!   ([`tfdist`]);
//! - optical time-frequency tomograms 𝒯(X, θ) by two independent routes —
//!   the fractional Fourier transform of the signal and the Radon transform
//!   of a (pseudo) Wigner-Ville distribution ([`tomography`]);
//! - differential and tomographic entropies together with the
//!   time-frequency entropic bound S(θ) + S(θ+π/2) ≥ ln(πe) ([`entropy`]).
//!
//! Conventions, fixed everywhere: angular frequencies (rad/time), Fourier
//! transform S̃(ω) = (2π)^(-1/2) ∫ S(t) e^(-iωt) dt, entropies in nats.

pub mod analytic;
mod czt;
pub mod entropy;
pub mod error;
mod fft;
pub mod grid;
pub mod signal;
pub mod tfdist;
pub mod tomography;
pub mod window;

pub use analytic::{frequency_density, hilbert, normalize_energy, to_analytic, AnalyticSignal};
pub use entropy::{
    differential_entropy, entropy_pair, entropy_surface, tomographic_entropy, EntropyPair,
    EntropyProfile, EntropySurface, SurfaceFamily,
};
pub use error::{Error, Result};
pub use grid::{AngleGrid, FrequencyGrid, QuadratureGrid, TimeGrid};
pub use signal::{
    gen_am, gen_chirp, gen_fm, gen_gaussian, AmParams, ChirpParams, FmParams, SampledSignal,
};
pub use tfdist::{distribution_difference, pseudo_wvd, wvd, DistributionKind, TFDistribution};
pub use tomography::{
    frft, frft_reference, frft_unitary, tomogram_difference, tomogram_direct, tomogram_from_tfd,
    RadonReport, Tomogram, TomogramSource,
};
pub use window::Window;

/// Contract tolerances used by the numerical invariants.
pub mod tol {
    /// Relative bound on negative-frequency bins of an analytic signal.
    pub const NEG_FREQ_REL: f64 = 1e-12;
    /// Absolute bound on |Σ|S|²·dt − 1| after energy normalization.
    pub const NORM_ABS: f64 = 1e-9;
    /// Per-row bound on |Σ 𝒯·dX − 1| for tomograms.
    pub const ROW_SUM_ABS: f64 = 1e-3;
    /// Relative bound on the imaginary residue of the lag transform.
    pub const WVD_IMAG_REL: f64 = 1e-9;
    /// Relative bound on tomogram negativity (|I|² is non-negative; the
    /// Radon route may carry small interpolation undershoots).
    pub const TOMOGRAM_NEG_REL: f64 = 1e-9;
    /// |sin θ| below which the fractional kernel is numerically hostile and
    /// the marginal fallback applies.
    pub const DEGENERATE_SIN: f64 = 1e-3;
    /// Default tolerance when validating that a density integrates to 1.
    pub const DENSITY_INT_ABS: f64 = 1e-2;
}
