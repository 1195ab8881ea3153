//! Per-pair scores for four citation sentiment flows, then the global scores
//! of one cited paper.
//!
//! cargo run --example local_metrics

use citation_edr::metrics::{countcitations_l, global_scores, paper_polarity, pratio_l, Icss};

fn main() -> citation_edr::Result<()> {
    let flows: [(&str, &str, &[i8]); 4] = [
        ("P07-1033", "D08-1105", &[1, 1, 1, 1, 1, 1, 1, 1]),
        ("A92-1018", "W98-1110", &[-1, -1, -1, -1, -1, -1]),
        ("W02-1011", "P09-1028", &[1, -1, 1, 1, -1]),
        ("J90-1003", "D08-1007", &[1, -1, -1, -1, 1, -1, -1, 1, -1]),
    ];
    println!(
        "{:<10} {:<10} {:>6} {:>8} {:>9}",
        "cited", "citing", "count", "pratio", "polarity"
    );
    for (cited, citing, values) in flows {
        let icss = Icss::from_values(cited, citing, values)?;
        println!(
            "{cited:<10} {citing:<10} {:>6} {:>8.4} {:>9}",
            countcitations_l(&icss),
            pratio_l(&icss),
            paper_polarity(&icss).value()
        );
    }

    // Three citing papers of one cited paper: one positive, one negative,
    // one all-neutral.
    let list = [
        Icss::from_values("X01-0001", "Y02-0001", &[1, 1, 0])?,
        Icss::from_values("X01-0001", "Y03-0002", &[-1, -1, 1])?,
        Icss::from_values("X01-0001", "Y04-0003", &[0, 0])?,
    ];
    let g = global_scores(&list)?;
    println!(
        "\n{}: countcitations_g = {}, countpapers_g = {}, pratiopaper_g = {:?}",
        g.cited_id, g.countcitations_g, g.countpapers_g, g.pratiopaper_g
    );
    Ok(())
}
