use super::FeatureMatrix;
use crate::error::{Error, Result};

/// Per-sample silhouette values and their unweighted mean.
///
/// Singletons score 0, as do samples where both mean distances vanish.
pub fn silhouette(m: &FeatureMatrix, labels: &[usize]) -> Result<(Vec<f64>, f64)> {
    let n = m.n_rows();
    if labels.len() != n {
        return Err(Error::Contract(format!(
            "{} labels for {n} rows",
            labels.len()
        )));
    }
    let n_labels = labels.iter().max().map_or(0, |k| k + 1);
    let mut sizes = vec![0usize; n_labels];
    for &l in labels {
        sizes[l] += 1;
    }
    if sizes.iter().filter(|s| **s > 0).count() < 2 {
        return Err(Error::SingleCluster);
    }

    let mut per_sample = Vec::with_capacity(n);
    let mut sums = vec![0.0; n_labels];
    for i in 0..n {
        sums.iter_mut().for_each(|s| *s = 0.0);
        for j in 0..n {
            if i != j {
                sums[labels[j]] += super::sq_dist(&m.rows[i], &m.rows[j]).sqrt();
            }
        }
        let own = labels[i];
        if sizes[own] == 1 {
            per_sample.push(0.0);
            continue;
        }
        let a = sums[own] / (sizes[own] - 1) as f64;
        let b = (0..n_labels)
            .filter(|&c| c != own && sizes[c] > 0)
            .map(|c| sums[c] / sizes[c] as f64)
            .fold(f64::INFINITY, f64::min);
        let denom = a.max(b);
        per_sample.push(if denom > 0.0 { (b - a) / denom } else { 0.0 });
    }
    let avg = per_sample.iter().sum::<f64>() / n as f64;
    Ok((per_sample, avg))
}
