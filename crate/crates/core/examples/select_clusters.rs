//! Standardises synthetic feature vectors, runs K-means for k = 2..=6 and
//! picks k by average silhouette.
//!
//! cargo run --release --example select_clusters

use citation_edr::clustering::{select_k, standardize, FeatureGroup};
use citation_edr::pipeline::{compute_features, compute_metrics, feature_groups};
use citation_edr::sequence::{build_all, to_json_map};
use citation_edr::synthetic::{synthetic_corpus, SyntheticSpec};

fn main() -> citation_edr::Result<()> {
    let records = synthetic_corpus(SyntheticSpec::default(), 42);
    let metrics = compute_metrics(&records)?;
    let seqs = to_json_map(&build_all(&metrics.icss)?);
    let set = compute_features(&seqs, 8)?;
    let groups = feature_groups(&set.features, &metrics.globals)?;

    for group in FeatureGroup::ALL {
        let z = standardize(groups.get(group))?;
        let sel = select_k(&z, 2, 6, 42, 20)?;
        println!("{group}:");
        for (k, si) in &sel.table {
            let mark = if *k == sel.best_k { " <- best" } else { "" };
            println!("  k = {k}  silhouette = {si:.4}{mark}");
        }
        let best = sel.best();
        let members: Vec<&str> = z
            .ids
            .iter()
            .zip(&best.labels)
            .filter(|(_, l)| **l == best.labels[0])
            .map(|(id, _)| id.as_str())
            .collect();
        println!("  cluster of {}: {}", z.ids[0], members.join(" "));
    }
    Ok(())
}
