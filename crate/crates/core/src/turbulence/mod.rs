//! Eddy-dissipation-rate analogues for short sentiment sequences.
//!
//! A sequence is treated like a velocity record sampled at unit interval.
//! Seven estimators are provided: a variance estimate, spectral estimates
//! from the inertial (−5/3) range of a periodogram, and estimates from the
//! 2nd and 3rd order structure functions. Each spectral and structure
//! estimate exists in a non-periodic (truncated lags, detrended and tapered
//! spectrum) and a periodic (wrap-around lags, raw spectrum) flavour.
//!
//! Every estimator scales with the cube of the signal amplitude and ignores
//! a constant offset.

mod spectrum;
mod structure;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use spectrum::{
    detrend_linear, hann_power_normalized, one_sided_density, periodogram, preprocess, Periodogram,
};
pub use structure::structure_function;

/// Kolmogorov constant of the 2nd order structure function.
pub const C2: f64 = 2.0;
/// Magnitude form of the four-fifths law.
pub const C3: f64 = 4.0 / 5.0;
/// One-dimensional spectral constant.
pub const ALPHA: f64 = 0.5;
pub const CV: f64 = 1.0;
/// Shortest sequence for which lag and frequency bands are non-empty.
pub const MIN_LENGTH: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    NonPeriodic,
    Periodic,
}

/// A finite, non-empty sample sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal(Vec<f64>);

impl Signal {
    pub fn new(samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::TooShort { len: 0, min: 1 });
        }
        if samples.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("signal".into()));
        }
        Ok(Signal(samples))
    }

    pub fn samples(&self) -> &[f64] {
        &self.0
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scaled(&self, a: f64) -> Result<Self> {
        Signal::new(self.0.iter().map(|v| a * v).collect())
    }

    pub fn shifted(&self, c: f64) -> Result<Self> {
        Signal::new(self.0.iter().map(|v| v + c).collect())
    }
}

impl TryFrom<Vec<f64>> for Signal {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Signal::new(v)
    }
}

/// `x - mean(x)`. A constant input gives exact zeros.
pub fn fluctuations(x: &Signal) -> Signal {
    let s = x.samples();
    if s.iter().all(|v| *v == s[0]) {
        return Signal(vec![0.0; s.len()]);
    }
    let mean = s.iter().sum::<f64>() / s.len() as f64;
    Signal(s.iter().map(|v| v - mean).collect())
}

fn require(x: &Signal, min: usize) -> Result<()> {
    if x.len() < min {
        Err(Error::TooShort { len: x.len(), min })
    } else {
        Ok(())
    }
}

/// `C_v * sigma^3 / L` with the population standard deviation and `L = n`.
pub fn edr_variance(x: &Signal) -> Result<f64> {
    require(x, 2)?;
    let y = fluctuations(x);
    let n = y.len() as f64;
    let var = y.samples().iter().map(|v| v * v).sum::<f64>() / n;
    let sigma = var.sqrt();
    Ok(CV * sigma * sigma * sigma / n)
}

/// Lags used by the structure-function estimators: `1..=max(1, n/4)`.
pub fn structure_lags(n: usize) -> std::ops::RangeInclusive<usize> {
    1..=(n / 4).max(1)
}

/// Frequency bins used by the spectral estimators: `2..=max(2, n/4)`.
pub fn spectral_bins(n: usize) -> std::ops::RangeInclusive<usize> {
    2..=(n / 4).max(2)
}

/// Mean over the lag band of the per-lag inertial-range estimate.
pub fn edr_structure(x: &Signal, order: u32, mode: Mode) -> Result<f64> {
    require(x, MIN_LENGTH)?;
    let y = fluctuations(x);
    let lags = structure_lags(y.len());
    let count = lags.clone().count();
    let mut total = 0.0;
    for r in lags {
        let d = structure_function(&y, order, r, mode)?;
        total += match order {
            2 => (d / C2).powf(1.5) / r as f64,
            3 => d / (C3 * r as f64),
            _ => {
                return Err(Error::Contract(format!(
                    "structure-function order {order} not in {{2, 3}}"
                )))
            }
        };
    }
    Ok(total / count as f64)
}

/// Mean over the frequency band of `(S_k f_k^{5/3} / alpha)^{3/2}`.
pub fn edr_spectrum(x: &Signal, mode: Mode) -> Result<f64> {
    require(x, MIN_LENGTH)?;
    let p = periodogram(x, mode)?;
    let bins = spectral_bins(x.len());
    let count = bins.clone().count();
    let total: f64 = bins
        .map(|k| {
            let (f, s) = p.at(k);
            (s * f.powf(5.0 / 3.0) / ALPHA).powf(1.5)
        })
        .sum();
    Ok(total / count as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdrFeatures {
    pub var_np: f64,
    pub psd_np: f64,
    pub d2_np: f64,
    pub d3_np: f64,
    pub psd_p: f64,
    pub d2_p: f64,
    pub d3_p: f64,
}

impl EdrFeatures {
    pub const NAMES: [&'static str; 7] = [
        "var_np", "psd_np", "d2_np", "d3_np", "psd_p", "d2_p", "d3_p",
    ];

    pub fn to_array(&self) -> [f64; 7] {
        [
            self.var_np,
            self.psd_np,
            self.d2_np,
            self.d3_np,
            self.psd_p,
            self.d2_p,
            self.d3_p,
        ]
    }

    pub fn from_array(a: [f64; 7]) -> Self {
        EdrFeatures {
            var_np: a[0],
            psd_np: a[1],
            d2_np: a[2],
            d3_np: a[3],
            psd_p: a[4],
            d2_p: a[5],
            d3_p: a[6],
        }
    }
}

pub fn edr_features(x: &Signal) -> Result<EdrFeatures> {
    require(x, MIN_LENGTH)?;
    Ok(EdrFeatures {
        var_np: edr_variance(x)?,
        psd_np: edr_spectrum(x, Mode::NonPeriodic)?,
        d2_np: edr_structure(x, 2, Mode::NonPeriodic)?,
        d3_np: edr_structure(x, 3, Mode::NonPeriodic)?,
        psd_p: edr_spectrum(x, Mode::Periodic)?,
        d2_p: edr_structure(x, 2, Mode::Periodic)?,
        d3_p: edr_structure(x, 3, Mode::Periodic)?,
    })
}
