//! Runs every stage on a synthetic corpus in a temporary directory and lists
//! the artifacts.
//!
//! cargo run --release --example end_to_end

use citation_edr::corpus::write_corpus;
use citation_edr::pipeline::{run_pipeline, PipelineConfig};
use citation_edr::synthetic::{synthetic_corpus, SyntheticSpec};

fn main() -> citation_edr::Result<()> {
    let tmp = tempfile::tempdir().expect("temp dir");
    let corpus_path = tmp.path().join("corpus.tsv");
    std::fs::write(
        &corpus_path,
        write_corpus(&synthetic_corpus(SyntheticSpec::default(), 7)),
    )
    .expect("write corpus");

    let cfg = PipelineConfig {
        corpus_path,
        output_dir: tmp.path().join("out"),
        restarts: 20,
        ..PipelineConfig::default()
    };
    let report = run_pipeline(&cfg)?;
    print!("{}", report.render());

    println!("\nartifacts:");
    let mut names: Vec<String> = std::fs::read_dir(&cfg.output_dir)
        .expect("output dir")
        .map(|e| e.expect("entry").file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    for n in names {
        println!("  {n}");
    }
    Ok(())
}
