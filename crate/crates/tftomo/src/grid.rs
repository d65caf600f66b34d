//! Uniform grids for the time, frequency, quadrature, and angle axes.
//!
//! All axes are dimensionless, matching the convention used throughout the
//! crate: time in arbitrary units, frequencies in rad/time, angles in
//! radians.

use crate::error::{Error, Result};

/// Uniform time grid `t_k = t_start + k·dt`, `k = 0..n-1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t_start: f64,
    dt: f64,
    n: usize,
}

impl TimeGrid {
    pub fn new(t_start: f64, dt: f64, n: usize) -> Result<Self> {
        if !t_start.is_finite() || !dt.is_finite() {
            return Err(Error::InvalidGrid("non-finite time grid field".into()));
        }
        if dt <= 0.0 {
            return Err(Error::InvalidGrid(format!("dt must be > 0, got {dt}")));
        }
        if n < 2 {
            return Err(Error::InvalidGrid(format!("n must be >= 2, got {n}")));
        }
        Ok(Self { t_start, dt, n })
    }

    /// Canonical grid for the bundled demo signals: t in [0, 200), n = 2048.
    ///
    /// dt = 200/2048 is exactly representable, the carrier π sits well below
    /// the lag-transform band π/(2·dt) ≈ 16, and a Gaussian envelope centered
    /// at t0 = 100 decays to ~0 at both edges.
    pub fn demo_default() -> Self {
        Self { t_start: 0.0, dt: 200.0 / 2048.0, n: 2048 }
    }

    pub fn t_start(&self) -> f64 {
        self.t_start
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false // n >= 2 by construction
    }

    /// k-th grid point.
    pub fn t(&self, k: usize) -> f64 {
        self.t_start + k as f64 * self.dt
    }

    /// Last grid point.
    pub fn t_end(&self) -> f64 {
        self.t(self.n - 1)
    }

    /// Window length n·dt (the period of the trigonometric interpolant).
    pub fn duration(&self) -> f64 {
        self.n as f64 * self.dt
    }

    /// Angular Nyquist frequency π/dt.
    pub fn nyquist(&self) -> f64 {
        std::f64::consts::PI / self.dt
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |k| self.t(k))
    }
}

/// Uniform angular-frequency grid `ω_j = omega_start + j·d_omega`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyGrid {
    omega_start: f64,
    d_omega: f64,
    n: usize,
}

impl FrequencyGrid {
    pub fn new(omega_start: f64, d_omega: f64, n: usize) -> Result<Self> {
        if !omega_start.is_finite() || !d_omega.is_finite() {
            return Err(Error::InvalidGrid("non-finite frequency grid field".into()));
        }
        if d_omega <= 0.0 {
            return Err(Error::InvalidGrid(format!("d_omega must be > 0, got {d_omega}")));
        }
        if n < 2 {
            return Err(Error::InvalidGrid(format!("n_omega must be >= 2, got {n}")));
        }
        Ok(Self { omega_start, d_omega, n })
    }

    /// Natural grid of the lag transform for signals on `tg`, restricted to
    /// the lower half band [0, π/(2·dt)).
    ///
    /// The lag variable is sampled at τ = 2m·dt, so the transform is periodic
    /// in ω with period π/dt; the analytic signals treated here keep all
    /// their mass in the lower half of that period. `oversample` zero-pads
    /// the lag transform by that factor (values ≥ 2 resolve the Dirichlet
    /// lobes of window-limited spectra well enough for line integrals).
    pub fn wvd_natural(tg: &TimeGrid, oversample: usize) -> Self {
        let ov = oversample.max(1);
        let lag_len = ov * tg.len();
        let d_omega = std::f64::consts::PI / (lag_len as f64 * tg.dt());
        Self { omega_start: 0.0, d_omega, n: lag_len / 2 }
    }

    pub fn omega_start(&self) -> f64 {
        self.omega_start
    }

    pub fn d_omega(&self) -> f64 {
        self.d_omega
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn omega(&self, j: usize) -> f64 {
        self.omega_start + j as f64 * self.d_omega
    }

    pub fn omega_end(&self) -> f64 {
        self.omega(self.n - 1)
    }

    pub fn omegas(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |j| self.omega(j))
    }
}

/// Uniform quadrature grid `X_i = x_start + i·dx` shared by every angle of a
/// tomogram.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureGrid {
    x_start: f64,
    dx: f64,
    n: usize,
}

impl QuadratureGrid {
    pub fn new(x_start: f64, dx: f64, n: usize) -> Result<Self> {
        if !x_start.is_finite() || !dx.is_finite() {
            return Err(Error::InvalidGrid("non-finite quadrature grid field".into()));
        }
        if dx <= 0.0 {
            return Err(Error::InvalidGrid(format!("dx must be > 0, got {dx}")));
        }
        if n < 2 {
            return Err(Error::InvalidGrid(format!("n_x must be >= 2, got {n}")));
        }
        Ok(Self { x_start, dx, n })
    }

    /// Symmetric default covering every rotation of the (t, ω) support box
    /// with a 10% margin.
    ///
    /// The step is π/(T + B) where T is the time-window length and B the
    /// frequency extent: one X period of the fastest quadrature fringe then
    /// carries at least two samples, which keeps every row sum exact in the
    /// sense of the Poisson summation formula. A coarser grid cannot hold
    /// the row-normalization contract for window-limited spectra.
    pub fn default_for(tg: &TimeGrid, fg: &FrequencyGrid) -> Self {
        let t_abs = tg.t_start().abs().max(tg.t_end().abs());
        let w_abs = fg.omega_start().abs().max(fg.omega_end().abs());
        let radius = 1.1 * (t_abs * t_abs + w_abs * w_abs).sqrt();
        let extent = tg.duration() + (fg.omega_end() - fg.omega_start());
        let dx_max = std::f64::consts::PI / extent;
        let n = ((2.0 * radius) / dx_max).ceil() as usize;
        let dx = 2.0 * radius / n as f64;
        Self { x_start: -radius, dx, n }
    }

    pub fn x_start(&self) -> f64 {
        self.x_start
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_start + i as f64 * self.dx
    }

    pub fn x_end(&self) -> f64 {
        self.x(self.n - 1)
    }

    pub fn xs(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.x(i))
    }
}

/// Strictly increasing projection angles in [0, π), with the marginal angles
/// 0 and π/2 always present.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleGrid {
    values: Vec<f64>,
}

impl AngleGrid {
    /// Build from arbitrary interior angles; 0 and π/2 are inserted when
    /// absent, duplicates rejected.
    pub fn from_values(mut values: Vec<f64>) -> Result<Self> {
        use std::f64::consts::{FRAC_PI_2, PI};
        for &v in &values {
            if !v.is_finite() || !(0.0..PI).contains(&v) {
                return Err(Error::InvalidGrid(format!("angle {v} outside [0, pi)")));
            }
        }
        if !values.iter().any(|&v| v == 0.0) {
            values.push(0.0);
        }
        if !values.iter().any(|&v| v == FRAC_PI_2) {
            values.push(FRAC_PI_2);
        }
        values.sort_by(|a, b| a.partial_cmp(b).expect("finite angles"));
        if values.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGrid("duplicate angle".into()));
        }
        Ok(Self { values })
    }

    /// `count` angles uniform in the open interval (0, π), i.e.
    /// θ_k = k·π/(count+1), plus the marginal angle 0.
    ///
    /// For odd `count` the grid contains π/2 exactly and every θ ≤ π/2 has
    /// its conjugate θ + π/2 on the grid.
    pub fn uniform(count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidGrid("angle count must be >= 1".into()));
        }
        let step = std::f64::consts::PI / (count + 1) as f64;
        let mut values: Vec<f64> = (1..=count).map(|k| k as f64 * step).collect();
        // Pin the midpoint exactly so conjugate pairing never depends on
        // floating-point luck.
        if count % 2 == 1 {
            values[count / 2] = std::f64::consts::FRAC_PI_2;
        }
        Self::from_values(values)
    }

    /// Default reproduction grid: 181 angles uniform in (0, π) plus 0.
    pub fn default_181() -> Self {
        Self::uniform(181).expect("static grid")
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn theta(&self, i: usize) -> f64 {
        self.values[i]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Index pairs (i, j) with θ_j = θ_i + π/2 to within 1e-12.
    pub fn conjugate_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for (i, &a) in self.values.iter().enumerate() {
            let want = a + std::f64::consts::FRAC_PI_2;
            for (j, &b) in self.values.iter().enumerate() {
                if (b - want).abs() <= 1e-12 {
                    pairs.push((i, j));
                    break;
                }
            }
        }
        pairs
    }
}
