use serde::Serialize;

use super::{kmeans, ClusterOutcome, FeatureMatrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Selection {
    pub best_k: usize,
    /// `(k, average silhouette)` for every evaluated k.
    pub table: Vec<(usize, f64)>,
    pub outcomes: Vec<ClusterOutcome>,
}

impl Selection {
    pub fn best(&self) -> &ClusterOutcome {
        self.outcomes
            .iter()
            .find(|o| o.k == self.best_k)
            .expect("best_k comes from the evaluated outcomes")
    }
}

/// Clusters for every k in `k_min..=k_max` and keeps the k with the highest
/// average silhouette, preferring the smaller k on ties.
pub fn select_k(
    m: &FeatureMatrix,
    k_min: usize,
    k_max: usize,
    seed: u64,
    restarts: usize,
) -> Result<Selection> {
    let n = m.n_rows();
    if k_min < 2 || k_min > k_max || k_max + 1 > n {
        return Err(Error::KOutOfRange {
            k: if k_min < 2 { k_min } else { k_max },
            min: 2,
            max: n.saturating_sub(1),
        });
    }
    let outcomes = (k_min..=k_max)
        .map(|k| kmeans(m, k, seed, restarts))
        .collect::<Result<Vec<_>>>()?;
    let table: Vec<(usize, f64)> = outcomes.iter().map(|o| (o.k, o.silhouette_avg)).collect();
    let mut best = table[0];
    for &(k, s) in &table[1..] {
        if s > best.1 {
            best = (k, s);
        }
    }
    Ok(Selection {
        best_k: best.0,
        table,
        outcomes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_pairs_pick_two() {
        let m = FeatureMatrix::from_rows(vec![
            vec![0.0],
            vec![0.1],
            vec![10.0],
            vec![10.1],
            vec![10.05],
        ])
        .unwrap();
        let sel = select_k(&m, 2, 3, 42, 10).unwrap();
        assert_eq!(sel.best_k, 2);
        assert_eq!(sel.table.len(), 2);
        assert_eq!(sel.best().k, 2);
    }

    #[test]
    fn range_checked() {
        let m = FeatureMatrix::from_rows(vec![vec![0.0], vec![1.0], vec![2.0], vec![3.0]]).unwrap();
        assert!(select_k(&m, 2, 4, 0, 1).is_err());
        assert!(select_k(&m, 1, 3, 0, 1).is_err());
        assert!(select_k(&m, 3, 2, 0, 1).is_err());
        assert!(select_k(&m, 2, 3, 0, 1).is_ok());
    }
}
