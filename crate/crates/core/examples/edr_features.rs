//! Seven fluctuation features for four 25-value reference sequences.
//!
//! cargo run --example edr_features

use std::collections::BTreeMap;

use citation_edr::turbulence::{edr_features, EdrFeatures, Signal};

const SEQUENCES: &str = include_str!("../tests/fixtures/reference_gcss.json");

fn main() -> citation_edr::Result<()> {
    let seqs: BTreeMap<String, Vec<f64>> = serde_json::from_str(SEQUENCES).expect("fixture parses");
    print!("{:<10}", "cited");
    for name in EdrFeatures::NAMES {
        print!(" {name:>10}");
    }
    println!();
    for (id, values) in seqs {
        let f = edr_features(&Signal::new(values)?)?;
        print!("{id:<10}");
        for v in f.to_array() {
            print!(" {v:>10.5}");
        }
        println!();
    }
    Ok(())
}
