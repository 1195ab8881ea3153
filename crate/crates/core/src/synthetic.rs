//! Seeded synthetic corpora for demos and tests.
//!
//! Two kinds of cited paper are generated: *calm* papers with a short run of
//! citing papers that are nearly all positive, and *turbulent* papers with a
//! long run of citing papers whose sentiment swings between polarities.
//! Identifiers are ACL-shaped but fictitious.
//!
//! [`kolmogorov_signal`] builds test signals with a prescribed inertial-range
//! spectrum and known dissipation rate.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::corpus::{CitationRecord, Polarity};
use crate::turbulence::ALPHA;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntheticSpec {
    pub calm: usize,
    pub turbulent: usize,
    /// Citing papers per calm paper, inclusive range.
    pub calm_len: (usize, usize),
    pub turbulent_len: (usize, usize),
}

impl Default for SyntheticSpec {
    fn default() -> Self {
        SyntheticSpec {
            calm: 4,
            turbulent: 16,
            calm_len: (9, 12),
            turbulent_len: (24, 34),
        }
    }
}

fn two_digit(year: i32) -> i32 {
    year % 100
}

fn draw(rng: &mut ChaCha8Rng, p_pos: f64, p_neg: f64) -> Polarity {
    let u: f64 = rng.random();
    if u < p_pos {
        Polarity::Positive
    } else if u < p_pos + p_neg {
        Polarity::Negative
    } else {
        Polarity::Neutral
    }
}

pub fn synthetic_corpus(spec: SyntheticSpec, seed: u64) -> Vec<CitationRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let total = spec.calm + spec.turbulent;
    for p in 0..total {
        let calm = p < spec.calm;
        let cited_year = 1990 + (p % 8) as i32;
        let cited_id = format!("S{:02}-{:04}", two_digit(cited_year), 1000 + p);
        let (lo, hi) = if calm {
            spec.calm_len
        } else {
            spec.turbulent_len
        };
        let n_citing = rng.random_range(lo..=hi);
        for c in 0..n_citing {
            let year = cited_year + 1 + (c * 14 / n_citing.max(1)) as i32;
            let citing_id = format!("T{:02}-{:04}", two_digit(year), 100 * p + c);
            let n_sent = rng.random_range(1..=6);
            let swing: f64 = rng.random();
            for pos in 0..n_sent {
                let polarity = if calm {
                    draw(&mut rng, 0.55, 0.02)
                } else if swing < 0.5 {
                    draw(&mut rng, 0.35, 0.35)
                } else {
                    draw(&mut rng, 0.1, 0.4)
                };
                out.push(CitationRecord {
                    cited_id: cited_id.clone(),
                    citing_id: citing_id.clone(),
                    position: pos as u32,
                    polarity,
                    text: None,
                });
            }
        }
    }
    out
}

/// A length-`n` signal whose one-sided density is `ALPHA * eps^(2/3) *
/// f^(-5/3)` at every bin `f_k = k/n`, with amplitudes fixed by that law and
/// phases drawn uniformly from the seed. The mean is zero.
pub fn kolmogorov_signal(n: usize, eps: f64, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut y = vec![Complex::new(0.0, 0.0); n];
    for k in 1..=n / 2 {
        let f = k as f64 / n as f64;
        let density = ALPHA * eps.powf(2.0 / 3.0) * f.powf(-5.0 / 3.0);
        if 2 * k == n {
            // The Nyquist coefficient must be real; its sign is the phase.
            let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
            y[k] = Complex::new(sign * (density * n as f64).sqrt(), 0.0);
        } else {
            let amp = (density * n as f64 / 2.0).sqrt();
            let phase = 2.0 * PI * rng.random::<f64>();
            y[k] = Complex::from_polar(amp, phase);
            y[n - k] = y[k].conj();
        }
    }
    FftPlanner::new().plan_fft_inverse(n).process(&mut y);
    y.iter().map(|c| c.re / n as f64).collect()
}
