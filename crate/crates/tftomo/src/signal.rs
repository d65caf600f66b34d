//! Test-signal generators: Gaussian-enveloped chirp, AM, FM, and a bare
//! Gaussian pulse.
//!
//! All generators are pure functions of (params, grid) and therefore
//! bitwise deterministic. Frequencies are angular (rad/time).

use crate::error::{Error, Result};
use crate::grid::TimeGrid;

/// Real-valued waveform on a uniform time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    grid: TimeGrid,
    samples: Vec<f64>,
}

impl SampledSignal {
    pub fn new(grid: TimeGrid, samples: Vec<f64>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::InvalidParameter(format!(
                "sample count {} does not match grid length {}",
                samples.len(),
                grid.len()
            )));
        }
        if samples.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite sample".into()));
        }
        Ok(Self { grid, samples })
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }
}

/// Gaussian-enveloped tone `A·sin(ω t + φ0)·exp(-α (t - t0)²)`.
///
/// With α = 1/(4σ²) this is also the modulated Gaussian pulse used as the
/// equality case of the entropic bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChirpParams {
    pub amplitude: f64,
    pub phi0: f64,
    /// Envelope rate α ≥ 0 (1/time²).
    pub alpha: f64,
    /// Envelope center.
    pub t0: f64,
    /// Carrier (rad/time).
    pub omega: f64,
}

impl ChirpParams {
    /// Parameter set of the bundled chirp demo: A ≈ 0.166, φ0 = 0, α = 0.03,
    /// t0 = 100, ω = π.
    pub fn demo_default() -> Self {
        Self { amplitude: 0.166, phi0: 0.0, alpha: 0.03, t0: 100.0, omega: std::f64::consts::PI }
    }

    fn validate(&self) -> Result<()> {
        let ok = self.amplitude.is_finite()
            && self.phi0.is_finite()
            && self.alpha.is_finite()
            && self.t0.is_finite()
            && self.omega.is_finite();
        if !ok {
            return Err(Error::InvalidParameter("non-finite chirp parameter".into()));
        }
        if self.alpha < 0.0 {
            return Err(Error::InvalidParameter(format!("alpha must be >= 0, got {}", self.alpha)));
        }
        Ok(())
    }
}

/// Amplitude modulation `(1 + m·cos(Ω t))·cos(ω t + φ0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmParams {
    /// Carrier (rad/time).
    pub omega: f64,
    pub phi0: f64,
    /// Modulation coefficient; |m| > 1 overmodulates and logs a warning.
    pub m: f64,
    /// Message frequency Ω > 0 (rad/time).
    pub omega_m: f64,
}

impl AmParams {
    /// Carrier π, message π/10 (ten envelope periods on the demo grid).
    pub fn demo_default(m: f64) -> Self {
        Self { omega: std::f64::consts::PI, phi0: 0.0, m, omega_m: std::f64::consts::PI / 10.0 }
    }

    fn validate(&self) -> Result<()> {
        let ok = self.omega.is_finite()
            && self.phi0.is_finite()
            && self.m.is_finite()
            && self.omega_m.is_finite();
        if !ok {
            return Err(Error::InvalidParameter("non-finite AM parameter".into()));
        }
        if self.omega_m <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "message frequency must be > 0, got {}",
                self.omega_m
            )));
        }
        if self.m.abs() > 1.0 {
            log::warn!("AM modulation coefficient |m| = {} exceeds 1 (overmodulation)", self.m.abs());
        }
        Ok(())
    }
}

/// Frequency modulation `A·cos(ω0 t + (ω_d/Ω)·sin(Ω t) + φ0)`.
///
/// The message integral is the cumulative integral of cos(Ω t) from 0, so
/// ω_d = 0 reduces exactly to the bare carrier and the instantaneous
/// frequency is ω0 + ω_d·cos(Ω t).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FmParams {
    pub amplitude: f64,
    /// Carrier ω0 (rad/time).
    pub omega0: f64,
    /// Frequency deviation ω_d ≥ 0 (rad/time).
    pub omega_d: f64,
    pub phi0: f64,
    /// Message frequency Ω > 0 (rad/time).
    pub omega_m: f64,
}

impl FmParams {
    /// Carrier π, message π/10, unit amplitude.
    pub fn demo_default(omega_d: f64) -> Self {
        Self {
            amplitude: 1.0,
            omega0: std::f64::consts::PI,
            omega_d,
            phi0: 0.0,
            omega_m: std::f64::consts::PI / 10.0,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = self.amplitude.is_finite()
            && self.omega0.is_finite()
            && self.omega_d.is_finite()
            && self.phi0.is_finite()
            && self.omega_m.is_finite();
        if !ok {
            return Err(Error::InvalidParameter("non-finite FM parameter".into()));
        }
        if self.omega_m <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "message frequency must be > 0, got {}",
                self.omega_m
            )));
        }
        if self.omega_d < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "frequency deviation must be >= 0, got {}",
                self.omega_d
            )));
        }
        Ok(())
    }
}

pub fn gen_chirp(p: &ChirpParams, g: &TimeGrid) -> Result<SampledSignal> {
    p.validate()?;
    let samples = g
        .times()
        .map(|t| {
            let d = t - p.t0;
            p.amplitude * (p.omega * t + p.phi0).sin() * (-p.alpha * d * d).exp()
        })
        .collect();
    SampledSignal::new(*g, samples)
}

pub fn gen_am(p: &AmParams, g: &TimeGrid) -> Result<SampledSignal> {
    p.validate()?;
    let samples = g
        .times()
        .map(|t| (1.0 + p.m * (p.omega_m * t).cos()) * (p.omega * t + p.phi0).cos())
        .collect();
    SampledSignal::new(*g, samples)
}

pub fn gen_fm(p: &FmParams, g: &TimeGrid) -> Result<SampledSignal> {
    p.validate()?;
    let beta = p.omega_d / p.omega_m;
    let samples = g
        .times()
        .map(|t| p.amplitude * (p.omega0 * t + beta * (p.omega_m * t).sin() + p.phi0).cos())
        .collect();
    SampledSignal::new(*g, samples)
}

/// Bare Gaussian pulse `exp(-(t - t0)²/(4σ²))`; the squared magnitude of the
/// normalized pulse has standard deviation exactly σ.
pub fn gen_gaussian(t0: f64, sigma: f64, g: &TimeGrid) -> Result<SampledSignal> {
    if !t0.is_finite() || !sigma.is_finite() || sigma <= 0.0 {
        return Err(Error::InvalidParameter(format!("sigma must be > 0, got {sigma}")));
    }
    let inv = 1.0 / (4.0 * sigma * sigma);
    let samples = g
        .times()
        .map(|t| {
            let d = t - t0;
            (-d * d * inv).exp()
        })
        .collect();
    SampledSignal::new(*g, samples)
}
