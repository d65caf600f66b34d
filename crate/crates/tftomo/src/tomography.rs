//! Optical time-frequency tomograms by two independent routes.
//!
//! Direct route: 𝒯(X, θ) = |I(X, θ)|² / (2π|sin θ|) with the fractional
//! Fourier integral
//!
//! I(X, θ) = ∫ dt S(t)·exp[i t² cos θ/(2 sin θ) - i t X/sin θ],
//!
//! evaluated as a trapezoidal sum over the periodic trigonometric
//! interpolant of the samples. The interpolant is refined (FFT zero padding)
//! until the integrand's instantaneous frequency stays below the refined
//! Nyquist rate at every grid point, which is what keeps the alias images of
//! the discrete transform (spaced 2π·sinθ/dt' in X) outside the evaluated
//! window at every angle. The uniform-in-X sums are carried by an exact
//! chirp-Z factorization, so the fast path and the literal quadrature loop
//! ([`frft_reference`]) agree to rounding.
//!
//! Radon route: line integrals of a (pseudo) Wigner-Ville distribution along
//! t·cosθ + ω·sinθ = X, by rotating-coordinate marching with bilinear
//! interpolation; each row is renormalized to unit mass and the raw
//! constants are reported.

use ndarray::Array2;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::analytic::AnalyticSignal;
use crate::czt::chirp_eval;
use crate::error::{Error, Result};
use crate::fft::{fft_in_place, upsample};
use crate::grid::{AngleGrid, QuadratureGrid, TimeGrid};
use crate::tfdist::{DistributionKind, TFDistribution};
use crate::tol;

/// Relative negativity allowed on the Radon route before clipping. Line
/// quadrature across the oscillatory interference terms of a plain
/// distribution leaves residues well above the |I|² bound of the direct
/// route.
pub(crate) const RADON_NEG_REL: f64 = 1e-4;

/// Spectral mass fraction ignored when bounding supports and bands.
const SUPPORT_TAIL: f64 = 1e-9;

/// Oversampling safety margin on the kernel-rate bound.
const RATE_MARGIN: f64 = 1.05;

/// Hard cap on the refined quadrature length (memory guard).
const MAX_UPSAMPLED: usize = 1 << 24;

fn cis(phase: f64) -> Complex64 {
    let (s, c) = phase.sin_cos();
    Complex64::new(c, s)
}

/// Computation route that produced a tomogram.
#[derive(Debug, Clone, PartialEq)]
pub enum TomogramSource {
    Direct,
    RadonPlain,
    RadonPseudo { window: String },
    Difference,
}

impl TomogramSource {
    pub fn id(&self) -> String {
        match self {
            Self::Direct => "direct".into(),
            Self::RadonPlain => "radon-plain".into(),
            Self::RadonPseudo { window } => format!("radon-pseudo({window})"),
            Self::Difference => "difference".into(),
        }
    }
}

/// Probability densities of the rotated quadrature X = t·cosθ + ω·sinθ,
/// one row per angle.
#[derive(Debug, Clone)]
pub struct Tomogram {
    angles: AngleGrid,
    quad: QuadratureGrid,
    /// Shape (n_angles, n_x).
    values: Array2<f64>,
    source: TomogramSource,
}

impl Tomogram {
    fn assemble(
        angles: AngleGrid,
        quad: QuadratureGrid,
        mut values: Array2<f64>,
        source: TomogramSource,
        neg_rel: f64,
    ) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvariantViolation("non-finite tomogram value".into()));
        }
        let max = values.iter().fold(0.0_f64, |m, &v| m.max(v));
        let min = values.iter().fold(0.0_f64, |m, &v| m.min(v));
        if min < -neg_rel * max {
            return Err(Error::InvariantViolation(format!(
                "tomogram negativity {:.3e} exceeds {:.0e} of peak",
                -min / max,
                neg_rel
            )));
        }
        values.mapv_inplace(|v| v.max(0.0));
        if source != TomogramSource::Difference {
            let dx = quad.dx();
            for (i, row) in values.rows().into_iter().enumerate() {
                let sum = row.sum() * dx;
                if (sum - 1.0).abs() > tol::ROW_SUM_ABS {
                    return Err(Error::InvariantViolation(format!(
                        "row integral {} at θ = {} deviates from 1 by more than {:.0e}",
                        sum,
                        angles.theta(i),
                        tol::ROW_SUM_ABS
                    )));
                }
            }
        }
        Ok(Self { angles, quad, values, source })
    }

    pub fn angles(&self) -> &AngleGrid {
        &self.angles
    }

    pub fn quadrature(&self) -> &QuadratureGrid {
        &self.quad
    }

    pub fn values(&self) -> &Array2<f64> {
        &self.values
    }

    pub fn source(&self) -> &TomogramSource {
        &self.source
    }

    /// Density over X at the i-th angle.
    pub fn row(&self, i: usize) -> ndarray::ArrayView1<'_, f64> {
        self.values.row(i)
    }
}

/// Raw per-row constants and warnings from the Radon route.
#[derive(Debug, Clone)]
pub struct RadonReport {
    /// Row integral before renormalization, one entry per angle.
    pub row_constants: Vec<f64>,
    /// Rows whose projection line left the grid where the distribution was
    /// still non-negligible.
    pub truncated_rows: Vec<usize>,
}

fn check_angle(theta: f64) -> Result<(f64, f64)> {
    if !theta.is_finite() {
        return Err(Error::InvalidParameter(format!("non-finite angle {theta}")));
    }
    let (s, c) = (theta.sin(), theta.cos());
    if s.abs() < tol::DEGENERATE_SIN {
        return Err(Error::DegenerateAngle { theta, threshold: tol::DEGENERATE_SIN });
    }
    Ok((s, c))
}

/// Refined length keeping the integrand below the Nyquist rate of the
/// refined grid.
fn upsample_len(n: usize, duration: f64, rate: f64) -> Result<usize> {
    let needed = (duration * rate * RATE_MARGIN / std::f64::consts::PI).ceil() as usize;
    let len = needed.max(n).next_power_of_two().max(n);
    if len > MAX_UPSAMPLED {
        return Err(Error::InvalidParameter(format!(
            "quadrature needs {len} samples (> {MAX_UPSAMPLED}); angle too close to \
             degenerate for this quadrature window"
        )));
    }
    Ok(len)
}

/// Largest |instantaneous frequency| of the kernel-times-signal integrand
/// over the window and the evaluated X range.
fn kernel_rate(grid: &TimeGrid, band: f64, s: f64, c: f64, x_lo: f64, x_hi: f64) -> f64 {
    let t_abs = grid.t_start().abs().max((grid.t_start() + grid.duration()).abs());
    let x_abs = x_lo.abs().max(x_hi.abs());
    band + t_abs * (c / s).abs() + x_abs / s.abs()
}

/// Core quadrature: I(X_i) for X_i = x0 + i·dx, i = 0..n_x.
fn frft_core(
    samples: &[Complex64],
    grid: &TimeGrid,
    s: f64,
    c: f64,
    band: f64,
    x0: f64,
    dx: f64,
    n_x: usize,
) -> Result<Vec<Complex64>> {
    let n = grid.len();
    let duration = grid.duration();
    let rate = kernel_rate(grid, band, s, c, x0, x0 + (n_x - 1) as f64 * dx);
    let len = upsample_len(n, duration, rate)?;
    let up = upsample(samples, len);
    let dt = duration / len as f64;
    let t_start = grid.t_start();
    let half_cot = 0.5 * c / s;

    let u: Vec<Complex64> = up
        .iter()
        .enumerate()
        .map(|(k, &v)| {
            let t = t_start + k as f64 * dt;
            v * dt * cis(t * t * half_cot - (k as f64) * dt * x0 / s)
        })
        .collect();
    let core = chirp_eval(&u, n_x, dt * dx / s);
    Ok(core
        .into_iter()
        .enumerate()
        .map(|(i, v)| v * cis(-t_start * (x0 + i as f64 * dx) / s))
        .collect())
}

/// Fractional Fourier integral I(X, θ) of a normalized analytic signal on
/// the quadrature grid.
pub fn frft(a: &AnalyticSignal, theta: f64, qg: &QuadratureGrid) -> Result<Vec<Complex64>> {
    if !a.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let (s, c) = check_angle(theta)?;
    let band = occupied_band_margin(a);
    frft_core(a.samples(), a.grid(), s, c, band, qg.x_start(), qg.dx(), qg.len())
}

/// Literal quadrature loop over the same refined grid as [`frft`]; the two
/// must agree to rounding. O(n'·n_x) — test sizes only.
pub fn frft_reference(a: &AnalyticSignal, theta: f64, qg: &QuadratureGrid) -> Result<Vec<Complex64>> {
    if !a.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let (s, c) = check_angle(theta)?;
    let band = occupied_band_margin(a);
    let grid = a.grid();
    let rate = kernel_rate(grid, band, s, c, qg.x_start(), qg.x_end());
    let len = upsample_len(grid.len(), grid.duration(), rate)?;
    let up = upsample(a.samples(), len);
    let dt = grid.duration() / len as f64;
    let half_cot = 0.5 * c / s;
    Ok((0..qg.len())
        .map(|i| {
            let x = qg.x(i);
            up.iter()
                .enumerate()
                .map(|(k, &v)| {
                    let t = grid.t_start() + k as f64 * dt;
                    v * dt * cis(t * t * half_cot - t * x / s)
                })
                .sum()
        })
        .collect())
}

fn occupied_band_margin(a: &AnalyticSignal) -> f64 {
    let d_omega = 2.0 * std::f64::consts::PI / a.grid().duration();
    a.occupied_band(SUPPORT_TAIL) + 4.0 * d_omega
}

/// Two-sided occupied band of arbitrary complex samples (largest |ω| whose
/// exclusion would drop more than `SUPPORT_TAIL` of the spectral mass).
fn occupied_band_two_sided(samples: &[Complex64], grid: &TimeGrid) -> f64 {
    let mut spec = samples.to_vec();
    fft_in_place(&mut spec);
    let n = spec.len();
    let d_omega = 2.0 * std::f64::consts::PI / grid.duration();
    let power: Vec<f64> = spec.iter().map(|v| v.norm_sqr()).collect();
    let total: f64 = power.iter().sum();
    if total <= 0.0 {
        return 0.0;
    }
    // Mass outside the symmetric band of radius r bins, shrunk until the
    // tail bites.
    let half = n / 2;
    let mut tail = 0.0;
    for r in (1..=half).rev() {
        tail += power[r];
        let neg = n - r;
        if neg > half {
            tail += power[neg];
        }
        if tail > SUPPORT_TAIL * total {
            return (r + 1).min(half) as f64 * d_omega + 4.0 * d_omega;
        }
    }
    4.0 * d_omega
}

/// Unitary fractional Fourier transform of order θ: the paper kernel with
/// the standard prefactor and output chirp, so that composition of orders
/// adds. Accepts arbitrary complex signals.
pub fn frft_unitary(
    samples: &[Complex64],
    grid: &TimeGrid,
    theta: f64,
    qg: &QuadratureGrid,
) -> Result<Vec<Complex64>> {
    if samples.len() != grid.len() {
        return Err(Error::InvalidParameter("sample count does not match grid".into()));
    }
    let (s, c) = check_angle(theta)?;
    let band = occupied_band_two_sided(samples, grid);
    let raw = frft_core(samples, grid, s, c, band, qg.x_start(), qg.dx(), qg.len())?;
    let amp = 1.0 / (2.0 * std::f64::consts::PI * s.abs()).sqrt();
    let prefactor =
        cis(-(std::f64::consts::FRAC_PI_4.copysign(s) - 0.5 * theta)) * amp;
    let half_cot = 0.5 * c / s;
    Ok(raw
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            let x = qg.x(i);
            v * prefactor * cis(x * x * half_cot)
        })
        .collect())
}

/// X interval that carries the signal's mass at angle θ, before padding.
fn x_support(grid: &TimeGrid, band: f64, s: f64, c: f64) -> (f64, f64) {
    let t0 = grid.t_start();
    let t1 = t0 + grid.duration();
    let (t_lo, t_hi) = if c >= 0.0 { (t0 * c, t1 * c) } else { (t1 * c, t0 * c) };
    // s > 0 on (0, π) and ω ∈ [0, band].
    (t_lo, t_hi + band * s)
}

/// Row of the direct tomogram at a non-degenerate angle; values outside the
/// padded support window are exact zeros (their true magnitude is below the
/// row-sum budget by the integration-by-parts bound).
fn direct_row(
    a: &AnalyticSignal,
    band: f64,
    s: f64,
    c: f64,
    qg: &QuadratureGrid,
) -> Result<Vec<f64>> {
    let grid = a.grid();
    let (lo, hi) = x_support(grid, band, s, c);
    let edge = a.samples()[0].norm_sqr() + a.samples()[grid.len() - 1].norm_sqr();
    // Mass beyond distance D of the support is ≈ s·edge/(2π·D); keep it an
    // order below the row-sum tolerance.
    let tail_pad = s * edge / (2.0 * std::f64::consts::PI * 0.1 * tol::ROW_SUM_ABS);
    let dirichlet = 2.0 * std::f64::consts::PI / grid.duration();
    let pad = tail_pad.max(10.0 * qg.dx()).max(4.0 * dirichlet);
    let i_lo = ((lo - pad - qg.x_start()) / qg.dx()).floor().max(0.0) as usize;
    let i_hi_f = ((hi + pad - qg.x_start()) / qg.dx()).ceil();
    let i_hi = (i_hi_f.max(0.0) as usize).min(qg.len() - 1);
    let mut row = vec![0.0; qg.len()];
    if i_lo > i_hi {
        return Ok(row); // support entirely outside the quadrature grid
    }
    let n_window = i_hi - i_lo + 1;
    let x0 = qg.x(i_lo);
    let vals = frft_core(a.samples(), grid, s, c, band, x0, qg.dx(), n_window)?;
    let scale = 1.0 / (2.0 * std::f64::consts::PI * s.abs());
    for (j, v) in vals.into_iter().enumerate() {
        row[i_lo + j] = v.norm_sqr() * scale;
    }
    Ok(row)
}

/// Marginal fallback at |sin θ| < ε: 𝒯(X, θ) = |S(t = X/cos θ)|²/|cos θ|,
/// with the density taken from the refined interpolant over one full
/// period.
fn marginal_time_row(a: &AnalyticSignal, c: f64, qg: &QuadratureGrid) -> Vec<f64> {
    let grid = a.grid();
    let n = grid.len();
    let factor = (grid.dt() / qg.dx()).ceil().max(1.0) as usize;
    let len = (factor * n).next_power_of_two();
    let up = upsample(a.samples(), len);
    let dens: Vec<f64> = up.iter().map(|v| v.norm_sqr()).collect();
    let dt = grid.duration() / len as f64;
    let inv_c = 1.0 / c.abs();
    (0..qg.len())
        .map(|i| {
            let t = qg.x(i) / c;
            let pos = (t - grid.t_start()) / dt;
            if pos < 0.0 || pos >= len as f64 {
                return 0.0;
            }
            let k = pos.floor() as usize;
            let frac = pos - k as f64;
            // Periodic interpolant: the last sliver bridges back to t_start.
            let next = if k + 1 == len { dens[0] } else { dens[k + 1] };
            (dens[k] * (1.0 - frac) + next * frac) * inv_c
        })
        .collect()
}

/// Direct tomogram: fractional-Fourier route per angle, with the exact
/// marginal formulas at the degenerate angles θ ≈ 0 (and θ ≈ π).
pub fn tomogram_direct(a: &AnalyticSignal, ag: &AngleGrid, qg: &QuadratureGrid) -> Result<Tomogram> {
    if !a.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let band = occupied_band_margin(a);
    let rows: Result<Vec<Vec<f64>>> = ag
        .values()
        .par_iter()
        .map(|&theta| {
            let (s, c) = (theta.sin(), theta.cos());
            if s.abs() < tol::DEGENERATE_SIN {
                Ok(marginal_time_row(a, c, qg))
            } else {
                direct_row(a, band, s, c, qg)
            }
        })
        .collect();
    let rows = rows?;
    let mut values = Array2::zeros((ag.len(), qg.len()));
    for (i, row) in rows.into_iter().enumerate() {
        values.row_mut(i).assign(&ndarray::ArrayView1::from(&row));
    }
    Tomogram::assemble(ag.clone(), *qg, values, TomogramSource::Direct, tol::TOMOGRAM_NEG_REL)
}

fn bilinear(values: &Array2<f64>, pos_t: f64, pos_w: f64) -> f64 {
    let (nt, nw) = values.dim();
    let i = (pos_t.floor() as usize).min(nt - 2);
    let j = (pos_w.floor() as usize).min(nw - 2);
    let a = (pos_t - i as f64).clamp(0.0, 1.0);
    let b = (pos_w - j as f64).clamp(0.0, 1.0);
    values[(i, j)] * (1.0 - a) * (1.0 - b)
        + values[(i + 1, j)] * a * (1.0 - b)
        + values[(i, j + 1)] * (1.0 - a) * b
        + values[(i + 1, j + 1)] * a * b
}

/// Intersect {a + b·u : u ∈ ℝ} with [lo, hi]; None when disjoint.
fn slab(a: f64, b: f64, lo: f64, hi: f64) -> Option<(f64, f64)> {
    if b.abs() < 1e-300 {
        if a < lo || a > hi {
            None
        } else {
            Some((f64::NEG_INFINITY, f64::INFINITY))
        }
    } else {
        let (u0, u1) = ((lo - a) / b, (hi - a) / b);
        Some(if u0 <= u1 { (u0, u1) } else { (u1, u0) })
    }
}

/// Radon transform of a (pseudo) Wigner-Ville distribution: each row is the
/// line integral over t·cosθ + ω·sinθ = X, renormalized to unit mass; the
/// raw constants and any truncated projections are reported.
pub fn tomogram_from_tfd(
    w: &TFDistribution,
    ag: &AngleGrid,
    qg: &QuadratureGrid,
) -> Result<(Tomogram, RadonReport)> {
    let source = match w.kind() {
        DistributionKind::Plain => TomogramSource::RadonPlain,
        DistributionKind::Pseudo { window } => {
            TomogramSource::RadonPseudo { window: window.clone() }
        }
        DistributionKind::Difference => {
            return Err(Error::InvalidParameter(
                "difference maps are not densities; project plain or pseudo distributions".into(),
            ))
        }
    };
    let tg = w.time_grid();
    let fg = w.freq_grid();
    let values = w.values();
    let (kt_lo, kt_hi) = w.time_mass_band(SUPPORT_TAIL);
    let (kw_lo, kw_hi) = w.omega_mass_band(SUPPORT_TAIL);
    let (t_lo, t_hi) = (tg.t(kt_lo), tg.t(kt_hi));
    let (w_lo, w_hi) = (fg.omega(kw_lo), fg.omega(kw_hi));
    let du = 0.5 * tg.dt().min(fg.d_omega());
    let max_w = values.iter().fold(0.0_f64, |m, &v| m.max(v.abs()));
    let trunc_level = 1e-6 * max_w;
    let inv_2pi = 1.0 / (2.0 * std::f64::consts::PI);

    struct RowOut {
        row: Vec<f64>,
        raw: f64,
        truncated: bool,
    }

    let rows: Result<Vec<RowOut>> = ag
        .values()
        .par_iter()
        .map(|&theta| {
            let (s, c) = (theta.sin(), theta.cos());
            // Projection of the mass box on the X axis, padded by a couple
            // of cells for the bilinear reach.
            let (a0, a1) = if c >= 0.0 { (t_lo * c, t_hi * c) } else { (t_hi * c, t_lo * c) };
            let (b0, b1) = (w_lo * s, w_hi * s); // s ≥ 0 on [0, π)
            let pad = 2.0 * (tg.dt() + fg.d_omega()) + 2.0 * qg.dx();
            let lo = a0 + b0 - pad;
            let hi = a1 + b1 + pad;
            let i_lo = ((lo - qg.x_start()) / qg.dx()).floor().max(0.0) as usize;
            let i_hi = ((hi - qg.x_start()) / qg.dx()).ceil().max(0.0) as usize;
            let i_hi = i_hi.min(qg.len() - 1);
            let mut row = vec![0.0; qg.len()];
            let mut truncated = false;
            for i in i_lo..=i_hi.max(i_lo) {
                let x = qg.x(i);
                // Line point (X cosθ, X sinθ), direction (-sinθ, cosθ).
                let (pt, pw) = (x * c, x * s);
                let Some((ut0, ut1)) = slab(pt, -s, t_lo, t_hi) else { continue };
                let Some((uw0, uw1)) = slab(pw, c, w_lo, w_hi) else { continue };
                let (u0, u1) = (ut0.max(uw0), ut1.min(uw1));
                if u0 >= u1 {
                    continue;
                }
                let steps = ((u1 - u0) / du).ceil().max(1.0);
                let h = (u1 - u0) / steps;
                let steps = steps as usize;
                let mut acc = 0.0;
                for jstep in 0..steps {
                    let u = u0 + (jstep as f64 + 0.5) * h;
                    let t = pt - u * s;
                    let omega = pw + u * c;
                    let pos_t = (t - tg.t_start()) / tg.dt();
                    let pos_w = (omega - fg.omega_start()) / fg.d_omega();
                    acc += bilinear(values, pos_t, pos_w);
                }
                row[i] = acc * h * inv_2pi;
                if !truncated {
                    for &u in &[u0 + 0.5 * du, u1 - 0.5 * du] {
                        let t = pt - u * s;
                        let omega = pw + u * c;
                        let on_edge = t - t_lo < tg.dt()
                            || t_hi - t < tg.dt()
                            || omega - w_lo < fg.d_omega()
                            || w_hi - omega < fg.d_omega();
                        if on_edge {
                            let pos_t = ((t - tg.t_start()) / tg.dt()).clamp(0.0, (tg.len() - 1) as f64);
                            let pos_w = ((omega - fg.omega_start()) / fg.d_omega())
                                .clamp(0.0, (fg.len() - 1) as f64);
                            if bilinear(values, pos_t, pos_w).abs() > trunc_level {
                                truncated = true;
                            }
                        }
                    }
                }
            }
            let raw = row.iter().sum::<f64>() * qg.dx();
            if raw <= f64::MIN_POSITIVE {
                return Err(Error::InvariantViolation(format!(
                    "empty projection at θ = {theta}; quadrature grid misses the distribution"
                )));
            }
            let inv = 1.0 / raw;
            for v in row.iter_mut() {
                *v *= inv;
            }
            Ok(RowOut { row, raw, truncated })
        })
        .collect();
    let rows = rows?;

    let mut row_constants = Vec::with_capacity(rows.len());
    let mut truncated_rows = Vec::new();
    let mut mat = Array2::zeros((ag.len(), qg.len()));
    for (i, out) in rows.into_iter().enumerate() {
        row_constants.push(out.raw);
        if out.truncated {
            truncated_rows.push(i);
        }
        mat.row_mut(i).assign(&ndarray::ArrayView1::from(&out.row));
    }
    if !truncated_rows.is_empty() {
        log::warn!(
            "truncated projection: {} of {} rows leave the distribution grid with \
             non-negligible mass",
            truncated_rows.len(),
            ag.len()
        );
    }
    let tomo = Tomogram::assemble(ag.clone(), *qg, mat, source, RADON_NEG_REL)?;
    Ok((tomo, RadonReport { row_constants, truncated_rows }))
}

/// Pointwise |a - b| on identical grids; rows are not renormalized.
pub fn tomogram_difference(a: &Tomogram, b: &Tomogram) -> Result<Tomogram> {
    if a.angles != b.angles || a.quad != b.quad {
        return Err(Error::GridMismatch("tomograms live on different grids".into()));
    }
    let values = ndarray::Zip::from(&a.values).and(&b.values).map_collect(|x, y| (x - y).abs());
    Ok(Tomogram { angles: a.angles.clone(), quad: a.quad, values, source: TomogramSource::Difference })
}
