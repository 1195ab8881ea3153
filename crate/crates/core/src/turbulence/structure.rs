use super::{Mode, Signal};
use crate::error::{Error, Result};

/// Mean `order`-th power of absolute increments at lag `r`.
///
/// Non-periodic mode averages the `n - r` in-range increments; periodic mode
/// wraps around and averages all `n`.
pub fn structure_function(x: &Signal, order: u32, r: usize, mode: Mode) -> Result<f64> {
    let s = x.samples();
    let n = s.len();
    if r == 0 || r >= n {
        return Err(Error::LagOutOfRange { lag: r, len: n });
    }
    let pow = |d: f64| -> f64 {
        let a = d.abs();
        match order {
            2 => a * a,
            3 => a * a * a,
            p => a.powi(p as i32),
        }
    };
    let (sum, count) = match mode {
        Mode::NonPeriodic => {
            let sum: f64 = (0..n - r).map(|i| pow(s[i + r] - s[i])).sum();
            (sum, n - r)
        }
        Mode::Periodic => {
            let sum: f64 = (0..n).map(|i| pow(s[(i + r) % n] - s[i])).sum();
            (sum, n)
        }
    };
    Ok(sum / count as f64)
}
