use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{silhouette, sq_dist, FeatureMatrix};
use crate::error::{Error, Result};

pub const MAX_ITER: usize = 300;
/// Largest centroid displacement at which Lloyd iterations stop.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterOutcome {
    pub k: usize,
    pub labels: Vec<usize>,
    pub centroids: Vec<Vec<f64>>,
    pub inertia: f64,
    pub silhouette_per_sample: Vec<f64>,
    pub silhouette_avg: f64,
}

/// One Lloyd descent from fixed starting centroids.
#[derive(Debug, Clone, PartialEq)]
pub struct LloydRun {
    pub labels: Vec<usize>,
    pub centroids: Vec<Vec<f64>>,
    pub inertia: f64,
    pub iterations: usize,
    /// Inertia after each assignment step, then the final inertia.
    pub inertia_trace: Vec<f64>,
}

/// k-means++ seeding: the first centre uniformly, the rest with probability
/// proportional to the squared distance to the nearest chosen centre.
pub fn kmeans_pp_init<R: Rng + ?Sized>(rows: &[Vec<f64>], k: usize, rng: &mut R) -> Vec<Vec<f64>> {
    let n = rows.len();
    let mut chosen = vec![false; n];
    let first = rng.random_range(0..n);
    chosen[first] = true;
    let mut centroids = vec![rows[first].clone()];
    let mut d2: Vec<f64> = rows.iter().map(|r| sq_dist(r, &rows[first])).collect();
    while centroids.len() < k {
        let total: f64 = d2.iter().sum();
        let pick = if total > 0.0 {
            let target = rng.random::<f64>() * total;
            let mut acc = 0.0;
            let mut pick = None;
            for (i, w) in d2.iter().enumerate() {
                if *w <= 0.0 {
                    continue;
                }
                acc += w;
                pick = Some(i);
                if acc > target {
                    break;
                }
            }
            pick.expect("positive total implies a positive weight")
        } else {
            let free: Vec<usize> = (0..n).filter(|i| !chosen[*i]).collect();
            free[rng.random_range(0..free.len())]
        };
        chosen[pick] = true;
        centroids.push(rows[pick].clone());
        for (d, r) in d2.iter_mut().zip(rows) {
            *d = d.min(sq_dist(r, &rows[pick]));
        }
    }
    centroids
}

fn nearest(row: &[f64], centroids: &[Vec<f64>]) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (c, centre) in centroids.iter().enumerate() {
        let d = sq_dist(row, centre);
        if d < best.1 {
            best = (c, d);
        }
    }
    best
}

/// Gives every empty cluster the point lying farthest from its current
/// centroid, taken from a cluster that can spare it.
fn repair_empty(rows: &[Vec<f64>], labels: &mut [usize], centroids: &mut [Vec<f64>]) {
    let k = centroids.len();
    let mut sizes = vec![0usize; k];
    for &l in labels.iter() {
        sizes[l] += 1;
    }
    for j in 0..k {
        if sizes[j] > 0 {
            continue;
        }
        let mut far: Option<(usize, f64)> = None;
        for (i, row) in rows.iter().enumerate() {
            if sizes[labels[i]] < 2 {
                continue;
            }
            let d = sq_dist(row, &centroids[labels[i]]);
            if far.is_none_or(|(_, best)| d > best) {
                far = Some((i, d));
            }
        }
        let (i, _) = far.expect("k <= n leaves a cluster with two members");
        sizes[labels[i]] -= 1;
        labels[i] = j;
        sizes[j] = 1;
        centroids[j] = rows[i].clone();
    }
}

fn means(rows: &[Vec<f64>], labels: &[usize], k: usize, dim: usize) -> Vec<Vec<f64>> {
    let mut sums = vec![vec![0.0; dim]; k];
    let mut counts = vec![0usize; k];
    for (row, &l) in rows.iter().zip(labels) {
        counts[l] += 1;
        for (s, v) in sums[l].iter_mut().zip(row) {
            *s += v;
        }
    }
    for (s, c) in sums.iter_mut().zip(&counts) {
        s.iter_mut().for_each(|v| *v /= *c as f64);
    }
    sums
}

fn inertia_of(rows: &[Vec<f64>], labels: &[usize], centroids: &[Vec<f64>]) -> f64 {
    rows.iter()
        .zip(labels)
        .map(|(r, &l)| sq_dist(r, &centroids[l]))
        .sum()
}

pub fn lloyd(rows: &[Vec<f64>], init: Vec<Vec<f64>>, max_iter: usize, tol: f64) -> LloydRun {
    let k = init.len();
    let dim = rows.first().map_or(0, Vec::len);
    let mut centroids = init;
    let mut labels = vec![0usize; rows.len()];
    let mut trace = Vec::new();
    let mut iterations = 0;
    while iterations < max_iter {
        iterations += 1;
        for (l, row) in labels.iter_mut().zip(rows) {
            *l = nearest(row, &centroids).0;
        }
        repair_empty(rows, &mut labels, &mut centroids);
        trace.push(inertia_of(rows, &labels, &centroids));
        let updated = means(rows, &labels, k, dim);
        let shift = centroids
            .iter()
            .zip(&updated)
            .map(|(a, b)| sq_dist(a, b).sqrt())
            .fold(0.0, f64::max);
        centroids = updated;
        if shift < tol {
            break;
        }
    }
    let inertia = inertia_of(rows, &labels, &centroids);
    trace.push(inertia);
    LloydRun {
        labels,
        centroids,
        inertia,
        iterations,
        inertia_trace: trace,
    }
}

/// Renumbers clusters in order of first appearance.
fn canonical(labels: &[usize], centroids: &[Vec<f64>]) -> (Vec<usize>, Vec<Vec<f64>>) {
    let mut map = vec![usize::MAX; centroids.len()];
    let mut next = 0;
    for &l in labels {
        if map[l] == usize::MAX {
            map[l] = next;
            next += 1;
        }
    }
    let mut out = vec![Vec::new(); centroids.len()];
    for (old, &new) in map.iter().enumerate() {
        out[new] = centroids[old].clone();
    }
    (labels.iter().map(|l| map[*l]).collect(), out)
}

/// Best of `restarts` k-means++/Lloyd runs; run `r` is seeded with `seed + r`.
pub fn kmeans(m: &FeatureMatrix, k: usize, seed: u64, restarts: usize) -> Result<ClusterOutcome> {
    let n = m.n_rows();
    if k < 2 || k > n {
        return Err(Error::KOutOfRange { k, min: 2, max: n });
    }
    if m.rows.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("feature matrix".into()));
    }
    let mut best: Option<LloydRun> = None;
    for r in 0..restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(r as u64));
        let init = kmeans_pp_init(&m.rows, k, &mut rng);
        let run = lloyd(&m.rows, init, MAX_ITER, TOLERANCE);
        if best.as_ref().is_none_or(|b| run.inertia < b.inertia) {
            best = Some(run);
        }
    }
    let run = best.expect("at least one restart");
    let (labels, centroids) = canonical(&run.labels, &run.centroids);
    let (silhouette_per_sample, silhouette_avg) = silhouette(m, &labels)?;
    Ok(ClusterOutcome {
        k,
        labels,
        centroids,
        inertia: run.inertia,
        silhouette_per_sample,
        silhouette_avg,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[f64]) -> FeatureMatrix {
        FeatureMatrix::from_rows(v.iter().map(|x| vec![*x]).collect()).unwrap()
    }

    #[test]
    fn separated_pairs() {
        let out = kmeans(&pts(&[0.0, 0.1, 10.0, 10.1]), 2, 42, 10).unwrap();
        assert_eq!(out.labels, vec![0, 0, 1, 1]);
        assert!((out.inertia - 0.01).abs() < 1e-12);
        assert!((out.centroids[0][0] - 0.05).abs() < 1e-12);
    }

    #[test]
    fn one_point_per_cluster() {
        let out = kmeans(&pts(&[3.0, -1.0, 8.0, 0.5, 2.0]), 5, 1, 3).unwrap();
        assert_eq!(out.inertia, 0.0);
        let mut l = out.labels.clone();
        l.sort();
        assert_eq!(l, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn duplicates_still_fill_every_cluster() {
        let out = kmeans(&pts(&[1.0, 1.0, 1.0, 1.0]), 3, 7, 2).unwrap();
        for c in 0..3 {
            assert!(out.labels.contains(&c));
        }
        assert_eq!(out.inertia, 0.0);
    }

    #[test]
    fn k_out_of_range() {
        let m = pts(&[0.0, 1.0, 2.0]);
        assert!(matches!(
            kmeans(&m, 1, 0, 1),
            Err(Error::KOutOfRange { .. })
        ));
        assert!(matches!(
            kmeans(&m, 4, 0, 1),
            Err(Error::KOutOfRange { .. })
        ));
    }

    #[test]
    fn lloyd_trace_never_increases() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let rows: Vec<Vec<f64>> = (0..20)
            .map(|_| (0..7).map(|_| rng.random::<f64>()).collect())
            .collect();
        for s in 0..10 {
            let mut r = ChaCha8Rng::seed_from_u64(s);
            let init = kmeans_pp_init(&rows, 4, &mut r);
            let run = lloyd(&rows, init, MAX_ITER, TOLERANCE);
            for w in run.inertia_trace.windows(2) {
                assert!(w[1] <= w[0] + 1e-12, "{:?}", run.inertia_trace);
            }
        }
    }

    #[test]
    fn deterministic_for_seed() {
        let m = pts(&[0.0, 0.3, 1.1, 4.0, 4.2, 9.0, 9.5]);
        assert_eq!(kmeans(&m, 3, 42, 5).unwrap(), kmeans(&m, 3, 42, 5).unwrap());
    }
}
