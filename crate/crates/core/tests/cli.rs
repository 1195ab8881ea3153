//! Drives the binary stage by stage and checks that each artifact is accepted
//! by the subcommand that consumes it.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use citation_edr::corpus::write_corpus;
use citation_edr::synthetic::{synthetic_corpus, SyntheticSpec};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_citation-edr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_synthetic(dir: &Path) -> std::path::PathBuf {
    let p = dir.join("corpus.tsv");
    fs::write(
        &p,
        write_corpus(&synthetic_corpus(SyntheticSpec::default(), 5)),
    )
    .unwrap();
    p
}

#[test]
fn stages_chain_through_their_artifacts() {
    let tmp = tempfile::tempdir().unwrap();
    let corpus = write_synthetic(tmp.path());
    let out = tmp.path().join("out");
    let o = s(&out);

    let stats = ok(&["ingest", "--corpus", s(&corpus), "--output", o]);
    assert!(stats.contains("\"n_cited\":20"), "{stats}");
    // records.tsv is itself a valid corpus.
    ok(&[
        "metrics",
        "--corpus",
        s(&out.join("records.tsv")),
        "--output",
        o,
    ]);
    ok(&["gcss", "--corpus", s(&corpus), "--output", o]);
    assert_eq!(fs::read_dir(out.join("gcss")).unwrap().count(), 20);

    ok(&[
        "features",
        "--gcss",
        s(&out.join("gcss.json")),
        "--output",
        o,
    ]);
    let header = fs::read_to_string(out.join("features.csv")).unwrap();
    assert!(header.starts_with("cited_id,var_np,psd_np,d2_np,d3_np,psd_p,d2_p,d3_p\n"));

    let f = out.join("features.csv");
    let g = out.join("metrics_global.csv");
    ok(&[
        "cluster",
        "--group",
        "edr7",
        "--features",
        s(&f),
        "--output",
        o,
        "--restarts",
        "5",
    ]);
    ok(&[
        "cluster",
        "--group",
        "gvalue3",
        "--globals",
        s(&g),
        "--output",
        o,
        "--restarts",
        "5",
    ]);
    ok(&[
        "cluster",
        "--group",
        "concat10",
        "--features",
        s(&f),
        "--globals",
        s(&g),
        "--output",
        o,
        "--restarts",
        "5",
    ]);
    for group in ["edr7", "gvalue3", "concat10"] {
        assert!(out.join(format!("cluster_{group}.json")).exists());
        assert!(out.join(format!("si_{group}.csv")).exists());
    }

    let table = ok(&["report", "--input", o, "--output", o]);
    assert!(table.contains("co-clustered in every group"), "{table}");
    assert!(out.join("cocluster.json").exists());
}

#[test]
fn pipeline_accepts_config_file_and_flags() {
    let tmp = tempfile::tempdir().unwrap();
    let corpus = write_synthetic(tmp.path());
    let cfg = tmp.path().join("run.cfg");
    fs::write(
        &cfg,
        format!(
            "# demo\ncorpus = {}\noutput = {}\nrestarts = 5\nk_max = 4\n",
            corpus.display(),
            tmp.path().join("a").display()
        ),
    )
    .unwrap();
    let text = ok(&["--config", s(&cfg), "pipeline", "--groups", "edr7,gvalue3"]);
    assert!(text.contains("edr7: best k ="));
    assert!(!text.contains("concat10"));
    let report = fs::read_to_string(tmp.path().join("a/report.json")).unwrap();
    assert!(!report.contains("generated_at_unix"));
    assert!(report.contains("\"k_max\": 4"));
}

#[test]
fn exit_codes_follow_error_kind() {
    let tmp = tempfile::tempdir().unwrap();
    let corpus = write_synthetic(tmp.path());
    let o = tmp.path().join("out");

    // Configuration: bad k range, unknown key, unknown group.
    assert_eq!(
        code(&[
            "pipeline",
            "--corpus",
            s(&corpus),
            "--output",
            s(&o),
            "--k-min",
            "1"
        ]),
        2
    );
    let bad = tmp.path().join("bad.cfg");
    fs::write(&bad, "colour = blue\n").unwrap();
    assert_eq!(code(&["--config", s(&bad), "ingest"]), 2);
    assert_eq!(
        code(&[
            "pipeline",
            "--corpus",
            s(&corpus),
            "--output",
            s(&o),
            "--groups",
            "edr8"
        ]),
        2
    );

    // Data: missing file, empty corpus, malformed line.
    assert_eq!(
        code(&[
            "ingest",
            "--corpus",
            s(&tmp.path().join("nope.tsv")),
            "--output",
            s(&o)
        ]),
        3
    );
    let empty = tmp.path().join("empty.tsv");
    fs::write(&empty, "cited_id\tciting_id\tpolarity\n").unwrap();
    assert_eq!(
        code(&["ingest", "--corpus", s(&empty), "--output", s(&o)]),
        3
    );
    let broken = tmp.path().join("broken.tsv");
    fs::write(
        &broken,
        "cited_id\tciting_id\tpolarity\nA01-0001\tB02-0002\tmaybe\n",
    )
    .unwrap();
    let out = run(&["ingest", "--corpus", s(&broken), "--output", s(&o)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    // Numerical: more clusters than the 20 papers allow.
    assert_eq!(
        code(&[
            "pipeline",
            "--corpus",
            s(&corpus),
            "--output",
            s(&o),
            "--k-max",
            "20",
            "--restarts",
            "1"
        ]),
        4
    );
}

#[test]
fn failed_pipeline_leaves_no_partial_output() {
    let tmp = tempfile::tempdir().unwrap();
    let corpus = write_synthetic(tmp.path());
    let o = tmp.path().join("out");
    let err = run(&[
        "pipeline",
        "--corpus",
        s(&corpus),
        "--output",
        s(&o),
        "--k-max",
        "20",
        "--restarts",
        "1",
    ]);
    assert!(String::from_utf8_lossy(&err.stderr).contains("stage `cluster` failed"));
    assert!(!o.exists());
    let leftovers: Vec<_> = fs::read_dir(tmp.path())
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| {
            e.file_name()
                .to_string_lossy()
                .starts_with(".citation-edr-staging")
        })
        .collect();
    assert!(leftovers.is_empty());
}

#[test]
fn short_sequences_are_reported_as_excluded() {
    let tmp = tempfile::tempdir().unwrap();
    let corpus = tmp.path().join("c.tsv");
    let mut records = synthetic_corpus(SyntheticSpec::default(), 5);
    // Keep only three citing papers of the first cited paper.
    let first = records[0].cited_id.clone();
    let mut kept = std::collections::BTreeSet::new();
    records.retain(|r| {
        if r.cited_id != first {
            return true;
        }
        if kept.len() < 3 {
            kept.insert(r.citing_id.clone());
        }
        kept.contains(&r.citing_id)
    });
    fs::write(&corpus, write_corpus(&records)).unwrap();
    let o = tmp.path().join("out");
    let text = ok(&[
        "pipeline",
        "--corpus",
        s(&corpus),
        "--output",
        s(&o),
        "--restarts",
        "3",
    ]);
    assert!(
        text.starts_with("EXCLUDED 1 sequence(s) shorter than 8:"),
        "{text}"
    );
    let excl = fs::read_to_string(o.join("excluded.csv")).unwrap();
    assert_eq!(excl, format!("cited_id,length\n{first},3\n"));
}

#[test]
fn convert_writes_checksummed_corpus() {
    let tmp = tempfile::tempdir().unwrap();
    let up = tmp.path().join("upstream.txt");
    fs::write(
        &up,
        "Source_Paper ID\tTarget_Paper ID\tSentiment\tCitation_Text\nE09-3005\tW06-1615\tp\tfine\n",
    )
    .unwrap();
    let o = tmp.path().join("conv");
    ok(&["convert", "--upstream", s(&up), "--output", s(&o)]);
    let sum = fs::read_to_string(o.join("corpus.tsv.sha256")).unwrap();
    citation_edr::corpus::verify_checksum(&o.join("corpus.tsv"), &sum).unwrap();
    ok(&[
        "ingest",
        "--corpus",
        s(&o.join("corpus.tsv")),
        "--output",
        s(&o),
    ]);
}
