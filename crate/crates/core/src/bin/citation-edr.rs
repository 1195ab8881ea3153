use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use citation_edr::clustering::FeatureGroup;
use citation_edr::corpus::{convert_upstream, sha256_hex, write_corpus};
use citation_edr::pipeline::{self, artifacts, ClusterParams, PipelineConfig};
use citation_edr::{Error, Result};

#[derive(Parser)]
#[command(
    name = "citation-edr",
    version,
    about = "Citation sentiment sequences, EDR features and K-means"
)]
struct Cli {
    /// Flat key=value configuration file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory for artifacts [default: out]
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Base seed for K-means restarts [default: 42]
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CorpusArg {
    /// Canonical corpus TSV [default: corpus.tsv]
    #[arg(long)]
    corpus: Option<PathBuf>,
}

#[derive(Args)]
struct KArgs {
    /// Smallest cluster count tried [default: 2]
    #[arg(long)]
    k_min: Option<usize>,
    /// Largest cluster count tried [default: 9]
    #[arg(long)]
    k_max: Option<usize>,
    /// K-means++ restarts per k [default: 50]
    #[arg(long)]
    restarts: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Convert an upstream corpus file into the canonical TSV.
    Convert {
        /// Sentence-per-line file with source, target and sentiment columns
        #[arg(long)]
        upstream: PathBuf,
    },
    /// Parse the corpus and write records.tsv and corpus_stats.json.
    Ingest(CorpusArg),
    /// Per-pair and per-cited-paper scores as CSV.
    Metrics(CorpusArg),
    /// One sequence per cited paper: gcss/<id>.gcss.csv and gcss.json.
    Gcss(CorpusArg),
    /// Seven EDR features per sequence from a gcss.json.
    Features {
        /// gcss.json from the `gcss` stage
        #[arg(long)]
        gcss: PathBuf,
        /// Shorter sequences are excluded [default: 8]
        #[arg(long)]
        min_length: Option<usize>,
    },
    /// Standardise, run K-means over the k range and pick k by silhouette.
    Cluster {
        /// edr7, gvalue3 or concat10
        #[arg(long)]
        group: FeatureGroup,
        /// features.csv from the `features` stage
        #[arg(long)]
        features: Option<PathBuf>,
        /// metrics_global.csv from the `metrics` stage
        #[arg(long)]
        globals: Option<PathBuf>,
        #[command(flatten)]
        k: KArgs,
    },
    /// Cross-group co-cluster table from cluster_<group>.json files.
    Report {
        /// Directory holding the cluster reports [default: --output]
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Run every stage.
    Pipeline {
        #[command(flatten)]
        corpus: CorpusArg,
        /// Shorter sequences are excluded [default: 8]
        #[arg(long)]
        min_length: Option<usize>,
        #[command(flatten)]
        k: KArgs,
        /// Comma-separated subset of edr7,gvalue3,concat10.
        #[arg(long)]
        groups: Option<String>,
        /// Record the generation time in report.json.
        #[arg(long)]
        timestamp: bool,
    },
}

fn config(cli: &Cli) -> Result<PipelineConfig> {
    let mut cfg = match &cli.config {
        Some(p) => PipelineConfig::from_file(p)?,
        None => PipelineConfig::default(),
    };
    if let Some(o) = &cli.output {
        cfg.output_dir = o.clone();
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

fn apply_corpus(cfg: &mut PipelineConfig, c: &CorpusArg) {
    if let Some(p) = &c.corpus {
        cfg.corpus_path = p.clone();
    }
}

fn apply_k(cfg: &mut PipelineConfig, k: &KArgs) {
    cfg.k_min = k.k_min.unwrap_or(cfg.k_min);
    cfg.k_max = k.k_max.unwrap_or(cfg.k_max);
    cfg.restarts = k.restarts.unwrap_or(cfg.restarts);
}

fn done(path: &Path) {
    println!("wrote {}", path.display());
}

fn run(cli: Cli) -> Result<()> {
    let mut cfg = config(&cli)?;
    let out = cfg.output_dir.clone();
    match &cli.command {
        Command::Convert { upstream } => {
            let text = std::fs::read_to_string(upstream).map_err(|e| Error::Io {
                path: upstream.clone(),
                source: e,
            })?;
            let records = convert_upstream(&text)?;
            artifacts::ensure_dir(&out)?;
            let tsv = write_corpus(&records);
            let path = out.join("corpus.tsv");
            artifacts::write_text(&path, &tsv)?;
            artifacts::write_text(
                &out.join("corpus.tsv.sha256"),
                &format!("{}  corpus.tsv\n", sha256_hex(tsv.as_bytes())),
            )?;
            println!("{} records", records.len());
            done(&path);
        }
        Command::Ingest(c) => {
            apply_corpus(&mut cfg, c);
            let records = pipeline::ingest(&cfg.corpus_path)?;
            let stats = pipeline::write_ingest(&out, &records)?;
            println!(
                "{}",
                serde_json::to_string(&stats).expect("stats serialise")
            );
        }
        Command::Metrics(c) => {
            apply_corpus(&mut cfg, c);
            let records = pipeline::ingest(&cfg.corpus_path)?;
            let m = pipeline::compute_metrics(&records)?;
            pipeline::write_metrics(&out, &m)?;
            done(&out.join("metrics_local.csv"));
            done(&out.join("metrics_global.csv"));
        }
        Command::Gcss(c) => {
            apply_corpus(&mut cfg, c);
            let records = pipeline::ingest(&cfg.corpus_path)?;
            let m = pipeline::compute_metrics(&records)?;
            let seqs = pipeline::compute_gcss(&m)?;
            artifacts::write_gcss(&out, &seqs)?;
            done(&out.join("gcss.json"));
        }
        Command::Features { gcss, min_length } => {
            cfg.min_length = min_length.unwrap_or(cfg.min_length);
            cfg.validate()?;
            let seqs = artifacts::read_gcss_json(gcss)?;
            let set = pipeline::compute_features(&seqs, cfg.min_length)?;
            pipeline::write_features(&out, &set)?;
            for e in &set.excluded {
                eprintln!(
                    "excluded {} (length {} < {})",
                    e.cited_id, e.length, cfg.min_length
                );
            }
            done(&out.join("features.csv"));
        }
        Command::Cluster {
            group,
            features,
            globals,
            k,
        } => {
            apply_k(&mut cfg, k);
            cfg.validate()?;
            let feats = features
                .as_deref()
                .map(artifacts::read_features)
                .transpose()?;
            let globs = globals
                .as_deref()
                .map(artifacts::read_global_metrics)
                .transpose()?;
            let groups = pipeline::partial_feature_groups(*group, feats.as_ref(), globs.as_ref())?;
            let report = pipeline::cluster_group(&groups, *group, ClusterParams::from(&cfg))?;
            pipeline::write_cluster(&out, &report)?;
            println!(
                "{}: best k = {}, average silhouette = {:.4}",
                report.group, report.best_k, report.silhouette_avg
            );
        }
        Command::Report { input } => {
            let dir = input.clone().unwrap_or_else(|| out.clone());
            let reports = pipeline::load_cluster_reports(&dir)?;
            let table = pipeline::cocluster_reports(&reports)?;
            pipeline::write_cocluster(&out, &table)?;
            print!("{}", table.render());
        }
        Command::Pipeline {
            corpus,
            min_length,
            k,
            groups,
            timestamp,
        } => {
            apply_corpus(&mut cfg, corpus);
            apply_k(&mut cfg, k);
            cfg.min_length = min_length.unwrap_or(cfg.min_length);
            if let Some(g) = groups {
                cfg.groups = pipeline::parse_groups(g)?;
            }
            cfg.timestamp |= *timestamp;
            let report = pipeline::run_pipeline(&cfg)?;
            print!("{}", report.render());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.kind().exit_code() as u8)
        }
    }
}
