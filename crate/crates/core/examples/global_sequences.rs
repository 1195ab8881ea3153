//! Builds one time-ordered sequence per cited paper from a seeded synthetic
//! corpus and prints the bar-chart rows of the first one.
//!
//! cargo run --example global_sequences

use citation_edr::corpus::corpus_stats;
use citation_edr::metrics::group_icss;
use citation_edr::sequence::{build_all, plot_csv};
use citation_edr::synthetic::{synthetic_corpus, SyntheticSpec};

fn main() -> citation_edr::Result<()> {
    let records = synthetic_corpus(SyntheticSpec::default(), 42);
    let stats = corpus_stats(&records);
    println!(
        "{} records: {} positive, {} negative, {} neutral over {} cited papers",
        stats.n_records, stats.n_pos, stats.n_neg, stats.n_neutral, stats.n_cited
    );

    let sequences = build_all(&group_icss(&records)?)?;
    for g in &sequences {
        let preview: Vec<String> = g
            .values()
            .iter()
            .take(8)
            .map(|v| format!("{v:.2}"))
            .collect();
        println!("{} n={:>2}  {} ...", g.cited_id, g.len(), preview.join(" "));
    }

    println!("\n{}", plot_csv(&sequences[0]));
    Ok(())
}
