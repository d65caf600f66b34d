//! Thin wrappers around rustfft for one-shot transforms.

use num_complex::Complex64;
use rustfft::FftPlanner;

pub(crate) fn fft_in_place(buf: &mut [Complex64]) {
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(buf.len()).process(buf);
}

/// Inverse DFT with the 1/n scaling applied.
pub(crate) fn ifft_in_place(buf: &mut [Complex64]) {
    let mut planner = FftPlanner::new();
    planner.plan_fft_inverse(buf.len()).process(buf);
    let scale = 1.0 / buf.len() as f64;
    for v in buf.iter_mut() {
        *v *= scale;
    }
}

/// Evaluate the trigonometric interpolant of `samples` on a grid refined to
/// `n_out` points (FFT zero-padding). `n_out >= samples.len()`; the output
/// spans the same period with step `T/n_out`.
pub(crate) fn upsample(samples: &[Complex64], n_out: usize) -> Vec<Complex64> {
    let n = samples.len();
    debug_assert!(n_out >= n);
    if n_out == n {
        return samples.to_vec();
    }
    let mut spec = samples.to_vec();
    fft_in_place(&mut spec);
    let mut padded = vec![Complex64::new(0.0, 0.0); n_out];
    let half = n / 2;
    if n % 2 == 0 {
        padded[..half].copy_from_slice(&spec[..half]);
        padded[n_out - half + 1..].copy_from_slice(&spec[half + 1..]);
        // Split the ambiguous Nyquist bin between the two band edges.
        let nyq = spec[half] * 0.5;
        padded[half] = nyq;
        padded[n_out - half] = nyq;
    } else {
        padded[..=half].copy_from_slice(&spec[..=half]);
        padded[n_out - half..].copy_from_slice(&spec[half + 1..]);
    }
    ifft_in_place(&mut padded);
    let gain = n_out as f64 / n as f64;
    for v in padded.iter_mut() {
        *v *= gain;
    }
    padded
}
