//! Chirp-Z evaluation of uniformly spaced exponential sums.
//!
//! `chirp_eval` computes C_i = Σ_k u_k·exp(-i·δ·k·i) for i = 0..n_out-1
//! with the Bluestein identity k·i = (k² + i² - (i-k)²)/2, turning the sum
//! into one linear convolution carried by power-of-two FFTs. The result is
//! algebraically exact (no approximation beyond f64 rounding), so it can
//! stand in for the naive O(n·n_out) loop wherever that loop defines the
//! reference semantics.

use num_complex::Complex64;
use rustfft::FftPlanner;

fn cis(phase: f64) -> Complex64 {
    let (s, c) = phase.sin_cos();
    Complex64::new(c, s)
}

pub(crate) fn chirp_eval(u: &[Complex64], n_out: usize, delta: f64) -> Vec<Complex64> {
    let n = u.len();
    if n == 0 || n_out == 0 {
        return vec![Complex64::new(0.0, 0.0); n_out];
    }
    let len = (n + n_out - 1).next_power_of_two();
    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(len);
    let inv = planner.plan_fft_inverse(len);

    let half = 0.5 * delta;
    // a_k = u_k·e^{-iδk²/2}
    let mut a = vec![Complex64::new(0.0, 0.0); len];
    for (k, &v) in u.iter().enumerate() {
        let kk = (k as f64) * (k as f64);
        a[k] = v * cis(-half * kk);
    }
    // b_m = e^{+iδm²/2} on the index range m ∈ [-(n-1), n_out-1], wrapped.
    let mut b = vec![Complex64::new(0.0, 0.0); len];
    for m in 0..n_out {
        let mm = (m as f64) * (m as f64);
        b[m] = cis(half * mm);
    }
    for m in 1..n {
        let mm = (m as f64) * (m as f64);
        b[len - m] = cis(half * mm);
    }

    fwd.process(&mut a);
    fwd.process(&mut b);
    for (x, y) in a.iter_mut().zip(&b) {
        *x *= y;
    }
    inv.process(&mut a);

    let scale = 1.0 / len as f64;
    (0..n_out)
        .map(|i| {
            let ii = (i as f64) * (i as f64);
            a[i] * cis(-half * ii) * scale
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(u: &[Complex64], n_out: usize, delta: f64) -> Vec<Complex64> {
        (0..n_out)
            .map(|i| {
                u.iter()
                    .enumerate()
                    .map(|(k, &v)| v * cis(-delta * (k as f64) * (i as f64)))
                    .sum()
            })
            .collect()
    }

    #[test]
    fn matches_naive_sum() {
        let u: Vec<Complex64> = (0..37)
            .map(|k| Complex64::new((k as f64 * 0.7).sin(), (k as f64 * 0.3).cos()))
            .collect();
        for &delta in &[0.0137, 1.31, -0.42] {
            let fast = chirp_eval(&u, 53, delta);
            let slow = naive(&u, 53, delta);
            let peak = slow.iter().map(|v| v.norm()).fold(0.0_f64, f64::max);
            for (f, s) in fast.iter().zip(&slow) {
                assert!((f - s).norm() <= 1e-12 * peak, "delta={delta}: {f} vs {s}");
            }
        }
    }

    #[test]
    fn zero_delta_degenerates_to_plain_sum() {
        let u: Vec<Complex64> = (0..16).map(|k| Complex64::new(k as f64, -1.0)).collect();
        let out = chirp_eval(&u, 4, 0.0);
        let total: Complex64 = u.iter().sum();
        for v in out {
            assert!((v - total).norm() < 1e-10);
        }
    }
}
