//! Lag-domain windows for the pseudo Wigner-Ville distribution.

use crate::error::{Error, Result};

/// Symmetric window of odd length; tap `(len-1)/2` multiplies zero lag.
///
/// Taps are indexed by lag *samples*: the distribution samples the lag
/// variable at τ = 2m·dt, so a window of length M covers physical lags
/// |τ| ≤ (M-1)·dt.
#[derive(Debug, Clone, PartialEq)]
pub struct Window {
    taps: Vec<f64>,
    id: String,
}

impl Window {
    /// Validate and wrap custom taps. Symmetry must be exact; build the
    /// taps by mirroring one half.
    pub fn new(taps: Vec<f64>, id: impl Into<String>) -> Result<Self> {
        let m = taps.len();
        if m < 3 || m % 2 == 0 {
            return Err(Error::InvalidParameter(format!(
                "window length must be odd and >= 3, got {m}"
            )));
        }
        if taps.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite window tap".into()));
        }
        if taps.iter().any(|&v| v > 1.0) {
            return Err(Error::InvalidParameter("window tap exceeds 1".into()));
        }
        for i in 0..m / 2 {
            if taps[i] != taps[m - 1 - i] {
                return Err(Error::InvalidParameter(format!(
                    "window taps not symmetric at index {i}"
                )));
            }
        }
        Ok(Self { taps, id: id.into() })
    }

    /// Hamming taps 0.54 - 0.46·cos(2πτ/(M-1)), τ = 0..M-1, mirrored so the
    /// symmetry is exact.
    pub fn hamming(len: usize) -> Result<Self> {
        if len < 3 || len % 2 == 0 {
            return Err(Error::InvalidParameter(format!(
                "Hamming length must be odd and >= 3, got {len}"
            )));
        }
        let mut taps = vec![0.0; len];
        let denom = (len - 1) as f64;
        for tau in 0..=(len - 1) / 2 {
            let v = 0.54 - 0.46 * (2.0 * std::f64::consts::PI * tau as f64 / denom).cos();
            taps[tau] = v;
            taps[len - 1 - tau] = v;
        }
        Self::new(taps, format!("hamming-{len}"))
    }

    /// All-ones window; at full lag extent it reduces the pseudo
    /// distribution to the plain one exactly.
    pub fn rectangular(len: usize) -> Result<Self> {
        if len < 3 || len % 2 == 0 {
            return Err(Error::InvalidParameter(format!(
                "window length must be odd and >= 3, got {len}"
            )));
        }
        Self::new(vec![1.0; len], format!("rect-{len}"))
    }

    /// Default pseudo-distribution length for an n-sample signal: the
    /// largest odd integer ≤ n/4 (at least 3).
    pub fn default_hamming_len(n: usize) -> usize {
        let m = (n / 4).max(3);
        if m % 2 == 0 {
            m - 1
        } else {
            m
        }
    }

    pub fn len(&self) -> usize {
        self.taps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn taps(&self) -> &[f64] {
        &self.taps
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    /// Lag samples covered on each side of zero.
    pub fn half_width(&self) -> usize {
        (self.taps.len() - 1) / 2
    }

    /// Tap for signed lag m, |m| ≤ half_width.
    pub fn tap_at_lag(&self, m: isize) -> f64 {
        self.taps[(self.half_width() as isize + m) as usize]
    }
}
