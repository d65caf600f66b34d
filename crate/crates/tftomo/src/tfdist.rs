//! Wigner-Ville and pseudo Wigner-Ville distributions.
//!
//! W(t, ω) = ∫ dτ S(t + τ/2)·S*(t - τ/2)·e^(-iωτ), with the lag variable
//! sampled at even multiples of the time step (τ = 2m·dt) so both factors
//! land on grid points. The pseudo variant multiplies the lag kernel by a
//! window h(τ) centered at zero lag. Lags are truncated symmetrically near
//! the signal edges (the signal is zero outside its grid).
//!
//! One FFT over the lag variable per time sample; the conjugate-symmetric
//! lag kernel makes the transform real up to rounding, which is checked and
//! discarded. Rows are independent and computed in parallel.

use ndarray::Array2;
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::analytic::AnalyticSignal;
use crate::error::{Error, Result};
use crate::grid::{FrequencyGrid, TimeGrid};
use crate::tol;
use crate::window::Window;

/// Which lag kernel produced a distribution.
#[derive(Debug, Clone, PartialEq)]
pub enum DistributionKind {
    Plain,
    Pseudo { window: String },
    Difference,
}

/// Real-valued distribution over a (time × angular-frequency) grid.
#[derive(Debug, Clone)]
pub struct TFDistribution {
    time: TimeGrid,
    freq: FrequencyGrid,
    /// Shape (n_time, n_omega).
    values: Array2<f64>,
    kind: DistributionKind,
}

impl TFDistribution {
    pub fn time_grid(&self) -> &TimeGrid {
        &self.time
    }

    pub fn freq_grid(&self) -> &FrequencyGrid {
        &self.freq
    }

    pub fn values(&self) -> &Array2<f64> {
        &self.values
    }

    pub fn kind(&self) -> &DistributionKind {
        &self.kind
    }

    /// (1/2π)·ΣΣ W·dt·dω over the stored band.
    pub fn total_mass(&self) -> f64 {
        self.values.sum() * self.time.dt() * self.freq.d_omega()
            / (2.0 * std::f64::consts::PI)
    }

    /// Band marginal (1/2π)·Σ_ω W(t, ω)·dω per time sample; approximates
    /// |S(t)|² when the stored band holds the signal's spectral mass.
    pub fn time_marginal(&self) -> Vec<f64> {
        let scale = self.freq.d_omega() / (2.0 * std::f64::consts::PI);
        self.values.rows().into_iter().map(|r| r.sum() * scale).collect()
    }

    /// (1/2π)·Σ_t W(t, ω)·dt per frequency sample; equals |S̃(ω)|² for the
    /// plain distribution under the crate's Fourier convention.
    pub fn freq_marginal(&self) -> Vec<f64> {
        let scale = self.time.dt() / (2.0 * std::f64::consts::PI);
        let n_w = self.values.ncols();
        (0..n_w).map(|j| self.values.column(j).sum() * scale).collect()
    }

    fn mass_band(sums: &[f64], rel: f64) -> (usize, usize) {
        let total: f64 = sums.iter().sum();
        if total <= 0.0 {
            return (0, sums.len() - 1);
        }
        let mut lo = 0;
        let mut acc = 0.0;
        while lo + 1 < sums.len() && acc + sums[lo] <= rel * total {
            acc += sums[lo];
            lo += 1;
        }
        let mut hi = sums.len() - 1;
        acc = 0.0;
        while hi > lo && acc + sums[hi] <= rel * total {
            acc += sums[hi];
            hi -= 1;
        }
        (lo, hi)
    }

    /// Index range of ω columns holding all but `rel` of Σ|W|.
    pub(crate) fn omega_mass_band(&self, rel: f64) -> (usize, usize) {
        let sums: Vec<f64> =
            (0..self.values.ncols()).map(|j| self.values.column(j).iter().map(|v| v.abs()).sum()).collect();
        Self::mass_band(&sums, rel)
    }

    /// Index range of t rows holding all but `rel` of Σ|W|.
    pub(crate) fn time_mass_band(&self, rel: f64) -> (usize, usize) {
        let sums: Vec<f64> =
            self.values.rows().into_iter().map(|r| r.iter().map(|v| v.abs()).sum()).collect();
        Self::mass_band(&sums, rel)
    }
}

/// Plain Wigner-Ville distribution of a normalized analytic signal.
pub fn wvd(a: &AnalyticSignal, fg: &FrequencyGrid) -> Result<TFDistribution> {
    wvd_impl(a, None, fg)
}

/// Lag-windowed (pseudo) Wigner-Ville distribution.
pub fn pseudo_wvd(a: &AnalyticSignal, w: &Window, fg: &FrequencyGrid) -> Result<TFDistribution> {
    let n = a.grid().len();
    if w.len() > 2 * n - 1 {
        return Err(Error::WindowTooLong { len: w.len(), max: 2 * n - 1 });
    }
    wvd_impl(a, Some(w), fg)
}

/// Lag-FFT length implied by a frequency grid, validating that the grid is
/// lag-transform natural: ω_start = 0 and dω = π/(L·dt) for an integer
/// L ≥ n with n_ω ≤ L.
fn lag_fft_len(tg: &TimeGrid, fg: &FrequencyGrid) -> Result<usize> {
    if fg.omega_start() != 0.0 {
        return Err(Error::InvalidGrid(format!(
            "frequency grid must start at 0, got {}",
            fg.omega_start()
        )));
    }
    let ideal = std::f64::consts::PI / (fg.d_omega() * tg.dt());
    let len = ideal.round();
    if !(2.0..=1e9).contains(&len) || (ideal - len).abs() > 1e-6 {
        return Err(Error::InvalidGrid(format!(
            "d_omega {} is not π/(L·dt) for an integer lag length",
            fg.d_omega()
        )));
    }
    let len = len as usize;
    if len < tg.len() {
        return Err(Error::InvalidGrid(format!(
            "lag length {len} shorter than the signal ({}); coarser d_omega required",
            tg.len()
        )));
    }
    if fg.len() > len {
        return Err(Error::InvalidGrid(format!(
            "n_omega {} exceeds one lag-transform period ({len})",
            fg.len()
        )));
    }
    Ok(len)
}

fn wvd_impl(a: &AnalyticSignal, window: Option<&Window>, fg: &FrequencyGrid) -> Result<TFDistribution> {
    if !a.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let tg = *a.grid();
    let n = tg.len();
    let len = lag_fft_len(&tg, fg)?;
    let n_w = fg.len();
    let samples = a.samples();
    let half_lag = len.div_ceil(2) - 1; // lags representable in the FFT buffer
    let win_half = window.map_or(usize::MAX, |w| w.half_width());

    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(len);
    let two_dt = 2.0 * tg.dt();

    let rows: Vec<(Vec<f64>, f64, f64)> = (0..n)
        .into_par_iter()
        .map(|k| {
            let mut buf = vec![Complex64::new(0.0, 0.0); len];
            let m_max = k.min(n - 1 - k).min(win_half).min(half_lag);
            let w0 = window.map_or(1.0, |w| w.tap_at_lag(0));
            buf[0] = samples[k] * samples[k].conj() * w0;
            for m in 1..=m_max {
                let tap = window.map_or(1.0, |w| w.tap_at_lag(m as isize));
                let val = samples[k + m] * samples[k - m].conj() * tap;
                buf[m] = val;
                buf[len - m] = val.conj();
            }
            fft.process(&mut buf);
            let mut max_re = 0.0_f64;
            let mut max_im = 0.0_f64;
            let row: Vec<f64> = buf[..n_w]
                .iter()
                .map(|v| {
                    max_re = max_re.max(v.re.abs());
                    max_im = max_im.max(v.im.abs());
                    two_dt * v.re
                })
                .collect();
            (row, max_re, max_im)
        })
        .collect();

    let max_re = rows.iter().map(|r| r.1).fold(0.0_f64, f64::max);
    let max_im = rows.iter().map(|r| r.2).fold(0.0_f64, f64::max);
    if max_re > 0.0 && max_im > tol::WVD_IMAG_REL * max_re {
        return Err(Error::InvariantViolation(format!(
            "lag transform imaginary residue {:.3e} exceeds {:.0e} of peak",
            max_im / max_re,
            tol::WVD_IMAG_REL
        )));
    }

    let mut values = Array2::zeros((n, n_w));
    for (k, (row, _, _)) in rows.into_iter().enumerate() {
        values.row_mut(k).assign(&ndarray::ArrayView1::from(&row));
    }
    let kind = match window {
        None => DistributionKind::Plain,
        Some(w) => DistributionKind::Pseudo { window: w.id().to_string() },
    };
    Ok(TFDistribution { time: tg, freq: *fg, values, kind })
}

/// Pointwise |a - b| on identical grids, tagged as a difference map.
pub fn distribution_difference(a: &TFDistribution, b: &TFDistribution) -> Result<TFDistribution> {
    if a.time != b.time || a.freq != b.freq {
        return Err(Error::GridMismatch("distributions live on different grids".into()));
    }
    let values = ndarray::Zip::from(&a.values).and(&b.values).map_collect(|x, y| (x - y).abs());
    Ok(TFDistribution { time: a.time, freq: a.freq, values, kind: DistributionKind::Difference })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{normalize_energy, to_analytic};
    use crate::signal::{gen_chirp, ChirpParams};
    use approx::assert_abs_diff_eq;

    fn norm_chirp(n: usize, dt: f64, p: &ChirpParams) -> AnalyticSignal {
        let g = TimeGrid::new(0.0, dt, n).unwrap();
        normalize_energy(&to_analytic(&gen_chirp(p, &g).unwrap()).unwrap()).unwrap()
    }

    /// Gaussian wavepacket well contained in the grid.
    fn packet(n: usize, dt: f64) -> AnalyticSignal {
        let t0 = 0.5 * dt * n as f64;
        let sigma = 0.04 * dt * n as f64;
        let p = ChirpParams {
            amplitude: 1.0,
            phi0: 0.5,
            alpha: 1.0 / (4.0 * sigma * sigma),
            t0,
            omega: std::f64::consts::PI,
        };
        norm_chirp(n, dt, &p)
    }

    #[test]
    fn wvd_requires_normalized_input() {
        let g = TimeGrid::new(0.0, 0.1, 64).unwrap();
        let raw = to_analytic(&gen_chirp(&ChirpParams::demo_default(), &g).unwrap()).unwrap();
        let fg = FrequencyGrid::wvd_natural(&g, 2);
        assert!(matches!(wvd(&raw, &fg), Err(Error::NotNormalized)));
    }

    #[test]
    fn wvd_of_gaussian_packet_is_nonnegative() {
        let a = packet(256, 0.1);
        let fg = FrequencyGrid::wvd_natural(a.grid(), 2);
        let w = wvd(&a, &fg).unwrap();
        let max = w.values().iter().fold(0.0_f64, |m, &v| m.max(v));
        let min = w.values().iter().fold(0.0_f64, |m, &v| m.min(v));
        assert!(max > 0.0);
        assert!(min >= -1e-6 * max, "min {min} vs max {max}");
    }

    #[test]
    fn wvd_mass_is_one() {
        let a = packet(256, 0.1);
        let fg = FrequencyGrid::wvd_natural(a.grid(), 2);
        let w = wvd(&a, &fg).unwrap();
        assert_abs_diff_eq!(w.total_mass(), 1.0, epsilon = 1e-2);
    }

    #[test]
    fn wvd_time_marginal_matches_density() {
        let a = packet(256, 0.1);
        let fg = FrequencyGrid::wvd_natural(a.grid(), 2);
        let w = wvd(&a, &fg).unwrap();
        let marginal = w.time_marginal();
        let density = a.time_density();
        let l1: f64 = marginal
            .iter()
            .zip(&density)
            .map(|(m, d)| (m - d).abs())
            .sum::<f64>()
            * a.grid().dt();
        assert!(l1 <= 1e-2, "time-marginal L1 error {l1}");
    }

    #[test]
    fn wvd_freq_marginal_matches_spectral_density() {
        let a = packet(512, 0.1);
        let fg = FrequencyGrid::wvd_natural(a.grid(), 2);
        let w = wvd(&a, &fg).unwrap();
        let marginal = w.freq_marginal();
        // Oracle: |S̃(ω_j)|² from the spectral side, on the same ω samples.
        let fd = crate::analytic::frequency_density_oversampled(&a, 2).unwrap();
        let mut l1 = 0.0;
        for (j, m) in marginal.iter().enumerate() {
            let omega = w.freq_grid().omega(j);
            let idx = ((omega - fd.omega_start()) / fd.d_omega()).round() as usize;
            l1 += (m - fd.values()[idx]).abs() * w.freq_grid().d_omega();
        }
        assert!(l1 <= 1e-2, "freq-marginal L1 error {l1}");
    }

    #[test]
    fn pseudo_with_unit_window_is_bitwise_plain() {
        let a = packet(128, 0.1);
        let fg = FrequencyGrid::wvd_natural(a.grid(), 2);
        let plain = wvd(&a, &fg).unwrap();
        let rect = Window::rectangular(2 * 128 - 1).unwrap();
        let pseudo = pseudo_wvd(&a, &rect, &fg).unwrap();
        assert_eq!(plain.values(), pseudo.values());
    }

    #[test]
    fn pseudo_rejects_oversized_window() {
        let a = packet(64, 0.1);
        let fg = FrequencyGrid::wvd_natural(a.grid(), 2);
        let w = Window::rectangular(129).unwrap();
        assert!(matches!(
            pseudo_wvd(&a, &w, &fg),
            Err(Error::WindowTooLong { .. })
        ));
    }

    #[test]
    fn two_tone_cross_term_is_reduced_by_hamming_window() {
        // e^{iω1 t} + e^{iω2 t}: the quadratic kernel puts an oscillatory
        // ridge at the mid frequency; lag windowing must shrink its peak.
        let n = 512;
        let g = TimeGrid::new(0.0, 0.125, n).unwrap();
        let t_total = g.duration();
        let w1 = 2.0 * std::f64::consts::PI * 24.0 / t_total;
        let w2 = 2.0 * std::f64::consts::PI * 72.0 / t_total;
        let samples: Vec<Complex64> = g
            .times()
            .map(|t| {
                Complex64::new((w1 * t).cos() + (w2 * t).cos(), (w1 * t).sin() + (w2 * t).sin())
            })
            .collect();
        let a = normalize_energy(
            &AnalyticSignal::from_complex_samples(g, samples).unwrap(),
        )
        .unwrap();
        let fg = FrequencyGrid::wvd_natural(&g, 2);
        let plain = wvd(&a, &fg).unwrap();
        let ham = Window::hamming(Window::default_hamming_len(n)).unwrap();
        let pseudo = pseudo_wvd(&a, &ham, &fg).unwrap();

        let mid = 0.5 * (w1 + w2);
        let j_mid = ((mid - fg.omega_start()) / fg.d_omega()).round() as usize;
        let ridge = |w: &TFDistribution| {
            w.values()
                .column(j_mid)
                .iter()
                .fold(0.0_f64, |m, &v| m.max(v.abs()))
        };
        let plain_ridge = ridge(&plain);
        let pseudo_ridge = ridge(&pseudo);
        assert!(
            pseudo_ridge < plain_ridge,
            "cross-term ridge not reduced: {pseudo_ridge} vs {plain_ridge}"
        );
    }

    #[test]
    fn difference_of_identical_inputs_is_zero_and_symmetric() {
        let a = packet(128, 0.1);
        let fg = FrequencyGrid::wvd_natural(a.grid(), 2);
        let w = wvd(&a, &fg).unwrap();
        let ham = Window::hamming(31).unwrap();
        let p = pseudo_wvd(&a, &ham, &fg).unwrap();

        let zero = distribution_difference(&w, &w).unwrap();
        assert!(zero.values().iter().all(|&v| v == 0.0));
        assert_eq!(*zero.kind(), DistributionKind::Difference);

        let d1 = distribution_difference(&w, &p).unwrap();
        let d2 = distribution_difference(&p, &w).unwrap();
        assert_eq!(d1.values(), d2.values());
    }

    #[test]
    fn difference_rejects_mismatched_grids() {
        let a = packet(128, 0.1);
        let b = packet(128, 0.2);
        let fa = FrequencyGrid::wvd_natural(a.grid(), 2);
        let fb = FrequencyGrid::wvd_natural(b.grid(), 2);
        let wa = wvd(&a, &fa).unwrap();
        let wb = wvd(&b, &fb).unwrap();
        assert!(matches!(distribution_difference(&wa, &wb), Err(Error::GridMismatch(_))));
    }

    #[test]
    fn demo_chirp_window_difference_is_nonzero() {
        let p = ChirpParams::demo_default();
        let a = norm_chirp(512, 200.0 / 512.0, &p);
        let fg = FrequencyGrid::wvd_natural(a.grid(), 2);
        let plain = wvd(&a, &fg).unwrap();
        let ham = Window::hamming(Window::default_hamming_len(512)).unwrap();
        let pseudo = pseudo_wvd(&a, &ham, &fg).unwrap();
        let diff = distribution_difference(&plain, &pseudo).unwrap();
        let max_w = plain.values().iter().fold(0.0_f64, |m, &v| m.max(v.abs()));
        let max_d = diff.values().iter().fold(0.0_f64, |m, &v| m.max(v));
        assert!(max_d > 1e-3 * max_w, "difference map too small: {max_d} vs {max_w}");
    }
}
