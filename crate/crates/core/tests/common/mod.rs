//! Straight-loop reference implementations used as test oracles. Each one
//! follows the textbook definition directly and shares no code with the
//! library beyond plain data.
#![allow(dead_code)]

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

pub const REFERENCE_GCSS: &str = include_str!("../fixtures/reference_gcss.json");

pub fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

pub fn demean(x: &[f64]) -> Vec<f64> {
    let m = mean(x);
    x.iter().map(|v| v - m).collect()
}

/// Mean |x[i+r] - x[i]|^p over the in-range or wrapped increments.
pub fn structure(x: &[f64], p: u32, r: usize, periodic: bool) -> f64 {
    let n = x.len();
    let mut sum = 0.0;
    let mut count = 0;
    for i in 0..n {
        let j = i + r;
        let j = if j < n {
            j
        } else if periodic {
            j - n
        } else {
            continue;
        };
        sum += (x[j] - x[i]).abs().powf(p as f64);
        count += 1;
    }
    sum / count as f64
}

/// Least-squares line through (i, y_i) from the normal equations.
pub fn detrend(y: &[f64]) -> Vec<f64> {
    let n = y.len() as f64;
    let (mut st, mut sy, mut stt, mut sty) = (0.0, 0.0, 0.0, 0.0);
    for (i, v) in y.iter().enumerate() {
        let t = i as f64;
        st += t;
        sy += v;
        stt += t * t;
        sty += t * v;
    }
    let slope = (n * sty - st * sy) / (n * stt - st * st);
    let icpt = (sy - slope * st) / n;
    y.iter()
        .enumerate()
        .map(|(i, v)| v - icpt - slope * i as f64)
        .collect()
}

pub fn hann(n: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..n)
        .map(|i| (PI * i as f64 / (n - 1) as f64).sin().powi(2))
        .collect();
    let ms = w.iter().map(|v| v * v).sum::<f64>() / n as f64;
    w.iter().map(|v| v / ms.sqrt()).collect()
}

/// O(n^2) one-sided density: S_k = c_k |Y_k|^2 / n, k = 1..=n/2, with c_k = 1
/// at the Nyquist bin and 2 elsewhere.
pub fn periodogram(x: &[f64], periodic: bool) -> Vec<f64> {
    let n = x.len();
    let y: Vec<f64> = if periodic {
        demean(x)
    } else {
        let d = detrend(&demean(x));
        d.iter().zip(hann(n)).map(|(a, w)| a * w).collect()
    };
    (1..=n / 2)
        .map(|k| {
            let (mut re, mut im) = (0.0, 0.0);
            for (j, v) in y.iter().enumerate() {
                let th = 2.0 * PI * (k * j % n) as f64 / n as f64;
                re += v * th.cos();
                im -= v * th.sin();
            }
            let c = if 2 * k == n { 1.0 } else { 2.0 };
            c * (re * re + im * im) / n as f64
        })
        .collect()
}

pub fn edr_structure(x: &[f64], p: u32, periodic: bool) -> f64 {
    let y = demean(x);
    let n = y.len();
    let top = (n / 4).max(1);
    let mut acc = 0.0;
    for r in 1..=top {
        let d = structure(&y, p, r, periodic);
        acc += if p == 2 {
            (d / 2.0).powf(1.5) / r as f64
        } else {
            d / (0.8 * r as f64)
        };
    }
    acc / top as f64
}

pub fn edr_spectrum(x: &[f64], periodic: bool) -> f64 {
    let n = x.len();
    let s = periodogram(x, periodic);
    let top = (n / 4).max(2);
    let mut acc = 0.0;
    for k in 2..=top {
        let f = k as f64 / n as f64;
        acc += (s[k - 1] * f.powf(5.0 / 3.0) / 0.5).powf(1.5);
    }
    acc / (top - 1) as f64
}

pub fn edr_variance(x: &[f64]) -> f64 {
    let y = demean(x);
    let n = y.len() as f64;
    let sd = (y.iter().map(|v| v * v).sum::<f64>() / n).sqrt();
    sd.powi(3) / n
}

/// (var_np, psd_np, d2_np, d3_np, psd_p, d2_p, d3_p).
pub fn features(x: &[f64]) -> [f64; 7] {
    [
        edr_variance(x),
        edr_spectrum(x, false),
        edr_structure(x, 2, false),
        edr_structure(x, 3, false),
        edr_spectrum(x, true),
        edr_structure(x, 2, true),
        edr_structure(x, 3, true),
    ]
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Mean silhouette straight from the definition.
pub fn silhouette(rows: &[Vec<f64>], labels: &[usize]) -> f64 {
    let n = rows.len();
    let mut total = 0.0;
    for i in 0..n {
        let own: Vec<usize> = (0..n)
            .filter(|&j| j != i && labels[j] == labels[i])
            .collect();
        if own.is_empty() {
            continue;
        }
        let a = own.iter().map(|&j| dist(&rows[i], &rows[j])).sum::<f64>() / own.len() as f64;
        let mut b = f64::INFINITY;
        for c in labels.iter().copied().filter(|&c| c != labels[i]) {
            let other: Vec<usize> = (0..n).filter(|&j| labels[j] == c).collect();
            let d =
                other.iter().map(|&j| dist(&rows[i], &rows[j])).sum::<f64>() / other.len() as f64;
            b = b.min(d);
        }
        let m = a.max(b);
        if m > 0.0 {
            total += (b - a) / m;
        }
    }
    total / n as f64
}

/// Smallest within-cluster sum of squares over every split into two
/// non-empty groups.
pub fn best_two_split_inertia(rows: &[Vec<f64>]) -> f64 {
    let n = rows.len();
    let dim = rows[0].len();
    let mut best = f64::INFINITY;
    for mask in 1..(1u32 << n) - 1 {
        let mut total = 0.0;
        for side in [true, false] {
            let members: Vec<&Vec<f64>> = (0..n)
                .filter(|&i| ((mask >> i) & 1 == 1) == side)
                .map(|i| &rows[i])
                .collect();
            let mut c = vec![0.0; dim];
            for m in &members {
                for d in 0..dim {
                    c[d] += m[d] / members.len() as f64;
                }
            }
            total += members
                .iter()
                .map(|m| {
                    m.iter()
                        .zip(&c)
                        .map(|(a, b)| (a - b) * (a - b))
                        .sum::<f64>()
                })
                .sum::<f64>();
        }
        best = best.min(total);
    }
    best
}

pub fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()) + 1e-300
}

/// The canonical corpus used by the data-dependent checks: `$CITATION_CORPUS`
/// if set, else `data/corpus.tsv` at the workspace root.
pub fn corpus_path() -> PathBuf {
    std::env::var_os("CITATION_CORPUS")
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            let root = Path::new(env!("CARGO_MANIFEST_DIR"))
                .ancestors()
                .nth(2)
                .expect("workspace root");
            root.join("data/corpus.tsv")
        })
}
