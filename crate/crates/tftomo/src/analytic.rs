//! Analytic-signal construction and spectral densities.
//!
//! The Hilbert transform is computed spectrally: in the discrete Fourier
//! domain positive frequencies are multiplied by -i, negative ones by +i,
//! and the DC and Nyquist bins are zeroed. The analytic signal s + i·H[s]
//! therefore carries the one-sided bin weights DC×1, positive×2, Nyquist×0,
//! and its negative-frequency half vanishes identically.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fft::{fft_in_place, ifft_in_place};
use crate::grid::TimeGrid;
use crate::signal::SampledSignal;
use crate::tol;

/// Complex waveform with a one-sided spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticSignal {
    grid: TimeGrid,
    samples: Vec<Complex64>,
    normalized: bool,
}

impl AnalyticSignal {
    /// Wrap complex samples, verifying the one-sided spectrum invariant.
    ///
    /// The `normalized` flag is set when Σ|s|²·dt is already 1 within
    /// [`tol::NORM_ABS`].
    pub fn from_complex_samples(grid: TimeGrid, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::InvalidParameter(format!(
                "sample count {} does not match grid length {}",
                samples.len(),
                grid.len()
            )));
        }
        if samples.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::InvalidParameter("non-finite sample".into()));
        }
        let mut spec = samples.clone();
        fft_in_place(&mut spec);
        let max = spec.iter().map(|v| v.norm()).fold(0.0_f64, f64::max);
        let worst = negative_bins(spec.len())
            .map(|j| spec[j].norm())
            .fold(0.0_f64, f64::max);
        if worst > tol::NEG_FREQ_REL * max && max > 0.0 {
            return Err(Error::NotAnalytic(format!(
                "negative-frequency residue {:.3e} exceeds {:.0e} of peak bin",
                worst / max,
                tol::NEG_FREQ_REL
            )));
        }
        let mut out = Self { grid, samples, normalized: false };
        out.normalized = (out.energy() - 1.0).abs() <= tol::NORM_ABS;
        Ok(out)
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Σ|s_k|²·dt.
    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.dt()
    }

    /// |s_k|² on the time grid; a probability density once normalized.
    pub fn time_density(&self) -> Vec<f64> {
        self.samples.iter().map(|v| v.norm_sqr()).collect()
    }

    /// Smallest frequency B such that spectral mass above B is below
    /// `rel_tail` of the total; used to bound quadrature oversampling.
    pub(crate) fn occupied_band(&self, rel_tail: f64) -> f64 {
        let mut spec = self.samples.clone();
        fft_in_place(&mut spec);
        let n = spec.len();
        let d_omega = 2.0 * std::f64::consts::PI / self.grid.duration();
        let half = n.div_ceil(2);
        let power: Vec<f64> = spec[..half].iter().map(|v| v.norm_sqr()).collect();
        let total: f64 = power.iter().sum();
        if total <= 0.0 {
            return 0.0;
        }
        let mut tail = 0.0;
        for j in (0..half).rev() {
            tail += power[j];
            if tail > rel_tail * total {
                return (j + 1).min(half - 1) as f64 * d_omega;
            }
        }
        0.0
    }
}

/// Bin indices holding strictly negative frequencies, including the
/// ambiguous Nyquist bin for even lengths.
fn negative_bins(n: usize) -> impl Iterator<Item = usize> {
    let first = if n % 2 == 0 { n / 2 } else { n / 2 + 1 };
    first..n
}

/// Discrete Hilbert transform of a real signal.
pub fn hilbert(s: &SampledSignal) -> Result<SampledSignal> {
    let n = s.grid().len();
    let mut buf: Vec<Complex64> =
        s.samples().iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft_in_place(&mut buf);
    buf[0] = Complex64::new(0.0, 0.0);
    let half = n / 2;
    if n % 2 == 0 {
        buf[half] = Complex64::new(0.0, 0.0);
    }
    let minus_i = Complex64::new(0.0, -1.0);
    let plus_i = Complex64::new(0.0, 1.0);
    for j in 1..n.div_ceil(2) {
        buf[j] *= minus_i;
    }
    for j in negative_bins(n) {
        buf[j] *= plus_i;
    }
    ifft_in_place(&mut buf);
    SampledSignal::new(*s.grid(), buf.into_iter().map(|v| v.re).collect())
}

/// Analytic representation s + i·H[s], built in a single spectral pass so
/// the negative-frequency bins are exactly zero.
pub fn to_analytic(s: &SampledSignal) -> Result<AnalyticSignal> {
    let n = s.grid().len();
    let mut buf: Vec<Complex64> =
        s.samples().iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft_in_place(&mut buf);
    for j in 1..n.div_ceil(2) {
        buf[j] *= 2.0;
    }
    for j in negative_bins(n) {
        buf[j] = Complex64::new(0.0, 0.0);
    }
    ifft_in_place(&mut buf);
    let mut out = AnalyticSignal { grid: *s.grid(), samples: buf, normalized: false };
    out.normalized = (out.energy() - 1.0).abs() <= tol::NORM_ABS;
    Ok(out)
}

/// Scale to unit spectral energy: Σ|s|²·dt = 1. By the discrete Parseval
/// identity the frequency-domain density then also integrates to 1.
pub fn normalize_energy(a: &AnalyticSignal) -> Result<AnalyticSignal> {
    let energy = a.energy();
    if energy <= 0.0 || !energy.is_finite() {
        return Err(Error::DegenerateSignal);
    }
    let scale = 1.0 / energy.sqrt();
    let samples: Vec<Complex64> = a.samples.iter().map(|&v| v * scale).collect();
    Ok(AnalyticSignal { grid: a.grid, samples, normalized: true })
}

/// Spectral energy density |S̃(ω)|² on the FFT frequency grid, in ascending
/// ω order.
#[derive(Debug, Clone)]
pub struct FrequencyDensity {
    omega_start: f64,
    d_omega: f64,
    values: Vec<f64>,
}

impl FrequencyDensity {
    pub fn omega_start(&self) -> f64 {
        self.omega_start
    }

    pub fn d_omega(&self) -> f64 {
        self.d_omega
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn omega(&self, j: usize) -> f64 {
        self.omega_start + j as f64 * self.d_omega
    }

    pub fn omegas(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.values.len()).map(move |j| self.omega(j))
    }

    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.d_omega
    }
}

/// |S̃(ω)|² for a normalized analytic signal, scaled so Σ|S̃(ω_j)|²·dω = 1.
///
/// Convention: S̃(ω) = (2π)^(-1/2) ∫ S(t) e^(-iωt) dt. An `oversample`
/// factor > 1 zero-pads the window, evaluating the same spectrum on a finer
/// grid; Parseval is exact for every factor.
pub fn frequency_density(a: &AnalyticSignal) -> Result<FrequencyDensity> {
    frequency_density_oversampled(a, 1)
}

pub fn frequency_density_oversampled(
    a: &AnalyticSignal,
    oversample: usize,
) -> Result<FrequencyDensity> {
    if !a.normalized {
        return Err(Error::NotNormalized);
    }
    let n = a.grid.len();
    let n_pad = n * oversample.max(1);
    let mut buf = vec![Complex64::new(0.0, 0.0); n_pad];
    buf[..n].copy_from_slice(&a.samples);
    fft_in_place(&mut buf);
    let dt = a.grid.dt();
    let scale = dt * dt / (2.0 * std::f64::consts::PI);
    let d_omega = 2.0 * std::f64::consts::PI / (n_pad as f64 * dt);
    // fftshift to ascending ω; the half-split bin goes to the negative edge.
    let neg = n_pad / 2;
    let mut values = Vec::with_capacity(n_pad);
    for v in &buf[n_pad - neg..] {
        values.push(v.norm_sqr() * scale);
    }
    for v in &buf[..n_pad - neg] {
        values.push(v.norm_sqr() * scale);
    }
    Ok(FrequencyDensity { omega_start: -(neg as f64) * d_omega, d_omega, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::{gen_chirp, gen_gaussian, ChirpParams};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn grid(n: usize) -> TimeGrid {
        TimeGrid::new(0.0, 0.0625, n).unwrap()
    }

    /// ω for an integer number of periods in the window.
    fn bin_freq(g: &TimeGrid, k: usize) -> f64 {
        2.0 * std::f64::consts::PI * k as f64 / g.duration()
    }

    fn cosine(g: &TimeGrid, omega: f64) -> SampledSignal {
        SampledSignal::new(*g, g.times().map(|t| (omega * t).cos()).collect()).unwrap()
    }

    #[test]
    fn hilbert_of_cosine_is_sine() {
        let g = grid(256);
        let w = bin_freq(&g, 12);
        let h = hilbert(&cosine(&g, w)).unwrap();
        for (t, v) in g.times().zip(h.samples()) {
            assert_abs_diff_eq!(*v, (w * t).sin(), epsilon = 1e-10);
        }
    }

    #[test]
    fn hilbert_annihilates_dc() {
        let g = grid(128);
        let s = SampledSignal::new(g, vec![3.25; 128]).unwrap();
        let h = hilbert(&s).unwrap();
        assert!(h.samples().iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn hilbert_squared_negates_ac_signals() {
        let g = grid(128);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        // Random trig polynomial over non-DC, non-Nyquist bins.
        let mut samples = vec![0.0; 128];
        for k in 1..20 {
            let (a, b): (f64, f64) = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            let w = bin_freq(&g, k);
            for (i, t) in g.times().enumerate() {
                samples[i] += a * (w * t).cos() + b * (w * t).sin();
            }
        }
        let s = SampledSignal::new(g, samples).unwrap();
        let hh = hilbert(&hilbert(&s).unwrap()).unwrap();
        for (a, b) in hh.samples().iter().zip(s.samples()) {
            assert_abs_diff_eq!(*a, -b, epsilon = 1e-10);
        }
    }

    #[test]
    fn analytic_of_cosine_is_cis() {
        let g = grid(256);
        let w = bin_freq(&g, 9);
        let a = to_analytic(&cosine(&g, w)).unwrap();
        for (t, v) in g.times().zip(a.samples()) {
            assert_abs_diff_eq!(v.re, (w * t).cos(), epsilon = 1e-10);
            assert_abs_diff_eq!(v.im, (w * t).sin(), epsilon = 1e-10);
        }
    }

    #[test]
    fn analytic_real_part_recovers_nyquist_free_input() {
        let g = TimeGrid::demo_default();
        let s = gen_chirp(&ChirpParams::demo_default(), &g).unwrap();
        let a = to_analytic(&s).unwrap();
        for (v, orig) in a.samples().iter().zip(s.samples()) {
            assert_abs_diff_eq!(v.re, *orig, epsilon = 1e-12);
        }
    }

    #[test]
    fn analytic_spectrum_has_doubled_positive_bins() {
        let g = grid(256);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let s =
            SampledSignal::new(g, (0..256).map(|_| rng.random_range(-1.0..1.0)).collect()).unwrap();
        let a = to_analytic(&s).unwrap();

        let mut in_spec: Vec<Complex64> =
            s.samples().iter().map(|&v| Complex64::new(v, 0.0)).collect();
        fft_in_place(&mut in_spec);
        let mut out_spec = a.samples().to_vec();
        fft_in_place(&mut out_spec);

        assert_abs_diff_eq!(out_spec[0].norm(), in_spec[0].norm(), epsilon = 1e-9);
        for j in 1..128 {
            assert_abs_diff_eq!(out_spec[j].norm(), 2.0 * in_spec[j].norm(), epsilon = 1e-9);
        }
        assert!(out_spec[128].norm() < 1e-12); // Nyquist zeroed
        for bin in &out_spec[129..] {
            assert!(bin.norm() < 1e-12);
        }
    }

    #[test]
    fn normalize_gives_unit_energy_and_is_idempotent() {
        let g = grid(512);
        let s = gen_gaussian(16.0, 2.0, &g).unwrap();
        let a = to_analytic(&s).unwrap();
        let n1 = normalize_energy(&a).unwrap();
        assert!(n1.is_normalized());
        assert_abs_diff_eq!(n1.energy(), 1.0, epsilon = 1e-12);
        let n2 = normalize_energy(&n1).unwrap();
        for (x, y) in n1.samples().iter().zip(n2.samples()) {
            assert_abs_diff_eq!(x.re, y.re, epsilon = 1e-15);
            assert_abs_diff_eq!(x.im, y.im, epsilon = 1e-15);
        }
    }

    #[test]
    fn normalize_is_scale_invariant() {
        let g = grid(512);
        let s = gen_gaussian(16.0, 2.0, &g).unwrap();
        let a = to_analytic(&s).unwrap();
        let scaled = AnalyticSignal::from_complex_samples(
            g,
            a.samples().iter().map(|&v| v * 7.0).collect(),
        )
        .unwrap();
        let n1 = normalize_energy(&a).unwrap();
        let n2 = normalize_energy(&scaled).unwrap();
        for (x, y) in n1.samples().iter().zip(n2.samples()) {
            assert_abs_diff_eq!(x.re, y.re, epsilon = 1e-12);
            assert_abs_diff_eq!(x.im, y.im, epsilon = 1e-12);
        }
    }

    #[test]
    fn normalize_rejects_zero_energy() {
        let g = grid(64);
        let a = AnalyticSignal::from_complex_samples(g, vec![Complex64::new(0.0, 0.0); 64])
            .unwrap();
        assert!(matches!(normalize_energy(&a), Err(Error::DegenerateSignal)));
    }

    #[test]
    fn frequency_density_requires_normalized_input() {
        let g = grid(128);
        let s = gen_gaussian(4.0, 1.0, &g).unwrap();
        let a = to_analytic(&s).unwrap();
        assert!(matches!(frequency_density(&a), Err(Error::NotNormalized)));
    }

    #[test]
    fn frequency_density_of_gaussian_pulse_is_gaussian_at_carrier() {
        // Modulated Gaussian: analytic signal ≈ Gaussian envelope at ω_c, so
        // |S̃(ω)|² = N(ω_c, σ_ω²) with σ_ω = 1/(2σ_t).
        let g = TimeGrid::new(0.0, 0.0625, 2048).unwrap();
        let sigma_t = 4.0;
        let omega_c = bin_freq(&g, 256); // well inside the band
        let p = ChirpParams {
            amplitude: 1.0,
            phi0: 0.0,
            alpha: 1.0 / (4.0 * sigma_t * sigma_t),
            t0: 64.0,
            omega: omega_c,
        };
        let a = normalize_energy(&to_analytic(&gen_chirp(&p, &g).unwrap()).unwrap()).unwrap();
        let fd = frequency_density(&a).unwrap();
        let sigma_w = 1.0 / (2.0 * sigma_t);
        let peak = 1.0 / (sigma_w * (2.0 * std::f64::consts::PI).sqrt());
        for (w, v) in fd.omegas().zip(fd.values()) {
            let want = peak * (-(w - omega_c).powi(2) / (2.0 * sigma_w * sigma_w)).exp();
            assert_abs_diff_eq!(*v, want, epsilon = 1e-4 * peak);
        }
    }

    #[test]
    fn frequency_density_integrates_to_one_and_is_one_sided() {
        let g = TimeGrid::demo_default();
        let s = gen_chirp(&ChirpParams::demo_default(), &g).unwrap();
        let a = normalize_energy(&to_analytic(&s).unwrap()).unwrap();
        for ov in [1, 4] {
            let fd = frequency_density_oversampled(&a, ov).unwrap();
            assert_abs_diff_eq!(fd.integral(), 1.0, epsilon = 1e-6);
            let max = fd.values().iter().fold(0.0_f64, |m, &v| m.max(v));
            for (w, v) in fd.omegas().zip(fd.values()) {
                if w < -fd.d_omega() / 2.0 {
                    assert!(*v <= 1e-20 * max, "negative-frequency mass at ω={w}");
                }
            }
        }
    }

    #[test]
    fn from_complex_samples_rejects_two_sided_spectra() {
        let g = grid(128);
        let w = bin_freq(&g, 5);
        let samples: Vec<Complex64> =
            g.times().map(|t| Complex64::new((w * t).cos(), 0.0)).collect();
        assert!(matches!(
            AnalyticSignal::from_complex_samples(g, samples),
            Err(Error::NotAnalytic(_))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn hilbert_is_linear(seed in 0u64..1000, alpha in -3.0f64..3.0, beta in -3.0f64..3.0) {
            let g = grid(128);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let s1: Vec<f64> = (0..128).map(|_| rng.random_range(-1.0..1.0)).collect();
            let s2: Vec<f64> = (0..128).map(|_| rng.random_range(-1.0..1.0)).collect();
            let combined: Vec<f64> =
                s1.iter().zip(&s2).map(|(a, b)| alpha * a + beta * b).collect();
            let h_comb = hilbert(&SampledSignal::new(g, combined).unwrap()).unwrap();
            let h1 = hilbert(&SampledSignal::new(g, s1).unwrap()).unwrap();
            let h2 = hilbert(&SampledSignal::new(g, s2).unwrap()).unwrap();
            for ((hc, a), b) in h_comb.samples().iter().zip(h1.samples()).zip(h2.samples()) {
                prop_assert!((hc - (alpha * a + beta * b)).abs() < 1e-10);
            }
        }

        #[test]
        fn analytic_negative_bins_vanish(seed in 0u64..1000) {
            let g = grid(128);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let s: Vec<f64> = (0..128).map(|_| rng.random_range(-1.0..1.0)).collect();
            let a = to_analytic(&SampledSignal::new(g, s).unwrap()).unwrap();
            let mut spec = a.samples().to_vec();
            fft_in_place(&mut spec);
            let max = spec.iter().map(|v| v.norm()).fold(0.0_f64, f64::max);
            for j in negative_bins(128) {
                prop_assert!(spec[j].norm() <= tol::NEG_FREQ_REL * max);
            }
        }

        #[test]
        fn parseval_after_normalization(seed in 0u64..1000) {
            let g = grid(256);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let s: Vec<f64> = (0..256).map(|_| rng.random_range(-1.0..1.0)).collect();
            let a = normalize_energy(&to_analytic(&SampledSignal::new(g, s).unwrap()).unwrap())
                .unwrap();
            let fd = frequency_density(&a).unwrap();
            prop_assert!((a.energy() - fd.integral()).abs() <= tol::NORM_ABS);
        }
    }
}
