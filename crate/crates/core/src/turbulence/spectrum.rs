use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::Serialize;

use super::{fluctuations, Mode, Signal, MIN_LENGTH};
use crate::error::{Error, Result};

/// One-sided power spectral density at `f_k = k/n`, `k = 1..=n/2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Periodogram {
    pub frequencies: Vec<f64>,
    pub power: Vec<f64>,
}

impl Periodogram {
    pub fn len(&self) -> usize {
        self.power.len()
    }

    pub fn is_empty(&self) -> bool {
        self.power.is_empty()
    }

    /// Density at bin `k` (1-based, matching `f_k = k/n`).
    pub fn at(&self, k: usize) -> (f64, f64) {
        (self.frequencies[k - 1], self.power[k - 1])
    }
}

/// Removes the least-squares straight line.
pub fn detrend_linear(y: &[f64]) -> Vec<f64> {
    let n = y.len();
    if n < 2 {
        return vec![0.0; n];
    }
    let mid = (n as f64 - 1.0) / 2.0;
    let mean = y.iter().sum::<f64>() / n as f64;
    let (mut sty, mut stt) = (0.0, 0.0);
    for (i, v) in y.iter().enumerate() {
        let t = i as f64 - mid;
        sty += t * (v - mean);
        stt += t * t;
    }
    let slope = sty / stt;
    y.iter()
        .enumerate()
        .map(|(i, v)| v - mean - slope * (i as f64 - mid))
        .collect()
}

/// Symmetric Hann window scaled so that its mean square is 1.
pub fn hann_power_normalized(n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![1.0];
    }
    let raw: Vec<f64> = (0..n)
        .map(|i| 0.5 * (1.0 - (2.0 * std::f64::consts::PI * i as f64 / (n - 1) as f64).cos()))
        .collect();
    let rms = (raw.iter().map(|w| w * w).sum::<f64>() / n as f64).sqrt();
    raw.into_iter().map(|w| w / rms).collect()
}

/// The sequence that is actually transformed in the given mode.
pub fn preprocess(x: &Signal, mode: Mode) -> Vec<f64> {
    let y = fluctuations(x);
    match mode {
        Mode::Periodic => y.into_samples(),
        Mode::NonPeriodic => {
            let d = detrend_linear(y.samples());
            hann_power_normalized(d.len())
                .iter()
                .zip(&d)
                .map(|(w, v)| w * v)
                .collect()
        }
    }
}

/// Raw one-sided spectrum of an already-processed sequence, normalised so
/// that `sum(S_k) / n` equals its population variance.
pub fn one_sided_density(y: &[f64]) -> Periodogram {
    let n = y.len();
    let mut buf: Vec<Complex<f64>> = y.iter().map(|&v| Complex::new(v, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let half = n / 2;
    let mut frequencies = Vec::with_capacity(half);
    let mut power = Vec::with_capacity(half);
    for (k, yk) in buf.iter().enumerate().take(half + 1).skip(1) {
        let weight = if 2 * k == n { 1.0 } else { 2.0 };
        frequencies.push(k as f64 / n as f64);
        power.push(weight * yk.norm_sqr() / n as f64);
    }
    Periodogram { frequencies, power }
}

pub fn periodogram(x: &Signal, mode: Mode) -> Result<Periodogram> {
    if x.len() < MIN_LENGTH {
        return Err(Error::TooShort {
            len: x.len(),
            min: MIN_LENGTH,
        });
    }
    Ok(one_sided_density(&preprocess(x, mode)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn variance(y: &[f64]) -> f64 {
        let n = y.len() as f64;
        let m = y.iter().sum::<f64>() / n;
        y.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / n
    }

    #[test]
    fn pure_tone_is_one_bin() {
        let n = 64;
        let k0 = 5;
        let x: Vec<f64> = (0..n)
            .map(|i| (2.0 * PI * k0 as f64 * i as f64 / n as f64).sin())
            .collect();
        let p = periodogram(&Signal::new(x).unwrap(), Mode::Periodic).unwrap();
        let peak = p.at(k0).1;
        assert!(peak > 0.0);
        for k in 1..=n / 2 {
            if k != k0 {
                assert!(p.at(k).1 < 1e-9 * peak, "bin {k}");
            }
        }
    }

    #[test]
    fn constant_is_flat_zero() {
        for mode in [Mode::Periodic, Mode::NonPeriodic] {
            let p = periodogram(&Signal::new(vec![0.7; 12]).unwrap(), mode).unwrap();
            assert_eq!(p.len(), 6);
            assert!(p.power.iter().all(|s| *s == 0.0));
        }
    }

    #[test]
    fn parseval_both_modes_odd_and_even() {
        for n in [8usize, 9, 25, 64] {
            let x: Vec<f64> = (0..n)
                .map(|i| ((i * 37 % 11) as f64).sin() + 0.1 * i as f64)
                .collect();
            let sig = Signal::new(x).unwrap();
            for mode in [Mode::Periodic, Mode::NonPeriodic] {
                let y = preprocess(&sig, mode);
                let p = periodogram(&sig, mode).unwrap();
                let total: f64 = p.power.iter().sum::<f64>() / n as f64;
                let v = variance(&y);
                assert!((total - v).abs() <= 1e-9 * v, "n={n} {mode:?}");
            }
        }
    }

    #[test]
    fn detrend_kills_lines() {
        let d = detrend_linear(&[1.0, 3.0, 5.0, 7.0, 9.0]);
        assert!(d.iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn hann_mean_square_is_one() {
        let w = hann_power_normalized(25);
        let ms = w.iter().map(|v| v * v).sum::<f64>() / 25.0;
        assert!((ms - 1.0).abs() < 1e-12);
        assert_eq!(w[0], 0.0);
    }

    #[test]
    fn too_short() {
        let sig = Signal::new(vec![0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0]).unwrap();
        assert!(matches!(
            periodogram(&sig, Mode::Periodic),
            Err(Error::TooShort { len: 7, min: 8 })
        ));
    }
}
