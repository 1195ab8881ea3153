//! Stage functions behind each CLI subcommand, and the end-to-end run.
//!
//! Output layout of a full run:
//!
//! ```text
//! <output>/
//!   records.tsv           canonical corpus
//!   corpus_stats.json
//!   metrics_local.csv     one row per (cited, citing) pair
//!   metrics_global.csv    one row per cited paper
//!   gcss.json             {cited_id: [values]}
//!   gcss/<id>.gcss.csv    bar-chart rows
//!   features.csv          seven EDR features per sequence
//!   excluded.csv          sequences shorter than min_length
//!   cluster_<group>.json  selection report per feature group
//!   si_<group>.csv        (k, average silhouette)
//!   cocluster.json / cocluster.txt
//!   report.json / report.txt
//! ```

pub mod artifacts;
mod cocluster;
mod config;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::clustering::{build_feature_groups, select_k, standardize, FeatureGroup, FeatureGroups};
use crate::corpus::{corpus_stats, read_corpus, write_corpus, CitationRecord, CorpusStats};
use crate::error::{Error, Result};
use crate::metrics::{global_scores, group_icss, GlobalScores, Icss};
use crate::sequence::{build_all, Gcss};
use crate::turbulence::{edr_features, EdrFeatures, Signal};

pub use artifacts::Excluded;
pub use cocluster::{
    report_cocluster, same_partition, CoclusterRow, CoclusterTable, GroupLabels, PartitionAgreement,
};
pub use config::{parse_groups, PipelineConfig};

pub fn ingest(corpus: &Path) -> Result<Vec<CitationRecord>> {
    let records = read_corpus(corpus)?;
    if records.is_empty() {
        return Err(Error::NoRecords);
    }
    Ok(records)
}

pub fn write_ingest(dir: &Path, records: &[CitationRecord]) -> Result<CorpusStats> {
    artifacts::ensure_dir(dir)?;
    let stats = corpus_stats(records);
    artifacts::write_text(&dir.join("records.tsv"), &write_corpus(records))?;
    artifacts::write_json(&dir.join("corpus_stats.json"), &stats)?;
    Ok(stats)
}

pub struct Metrics {
    pub icss: BTreeMap<String, Vec<Icss>>,
    pub globals: BTreeMap<String, GlobalScores>,
}

pub fn compute_metrics(records: &[CitationRecord]) -> Result<Metrics> {
    let icss = group_icss(records)?;
    let globals = icss
        .iter()
        .map(|(id, list)| Ok((id.clone(), global_scores(list)?)))
        .collect::<Result<_>>()?;
    Ok(Metrics { icss, globals })
}

pub fn write_metrics(dir: &Path, m: &Metrics) -> Result<()> {
    artifacts::ensure_dir(dir)?;
    artifacts::write_local_metrics(&dir.join("metrics_local.csv"), &m.icss)?;
    artifacts::write_global_metrics(&dir.join("metrics_global.csv"), &m.globals)
}

pub fn compute_gcss(m: &Metrics) -> Result<Vec<Gcss>> {
    build_all(&m.icss)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureSet {
    pub features: BTreeMap<String, EdrFeatures>,
    pub excluded: Vec<Excluded>,
}

/// EDR features for every sequence of at least `min_length` values.
pub fn compute_features(
    sequences: &BTreeMap<String, Vec<f64>>,
    min_length: usize,
) -> Result<FeatureSet> {
    let min_length = min_length.max(crate::turbulence::MIN_LENGTH);
    let mut features = BTreeMap::new();
    let mut excluded = Vec::new();
    for (id, values) in sequences {
        if values.len() < min_length {
            excluded.push(Excluded {
                cited_id: id.clone(),
                length: values.len(),
            });
            continue;
        }
        let f = edr_features(&Signal::new(values.clone())?)?;
        features.insert(id.clone(), f);
    }
    Ok(FeatureSet { features, excluded })
}

pub fn write_features(dir: &Path, set: &FeatureSet) -> Result<()> {
    artifacts::ensure_dir(dir)?;
    artifacts::write_features(&dir.join("features.csv"), &set.features)?;
    artifacts::write_excluded(&dir.join("excluded.csv"), &set.excluded)
}

/// Feature groups over the papers present in `features`; global scores of
/// other papers are ignored.
pub fn feature_groups(
    features: &BTreeMap<String, EdrFeatures>,
    globals: &BTreeMap<String, GlobalScores>,
) -> Result<FeatureGroups> {
    let restricted: BTreeMap<String, GlobalScores> = globals
        .iter()
        .filter(|(id, _)| features.contains_key(*id))
        .map(|(id, g)| (id.clone(), g.clone()))
        .collect();
    build_feature_groups(features, &restricted)
}

/// Feature groups when only some inputs are at hand, e.g. clustering
/// `gvalue3` from the global scores alone. Missing inputs are zero-filled;
/// with features present, papers are restricted to those with features.
pub fn partial_feature_groups(
    group: FeatureGroup,
    features: Option<&BTreeMap<String, EdrFeatures>>,
    globals: Option<&BTreeMap<String, GlobalScores>>,
) -> Result<FeatureGroups> {
    let need = |what: &str| Error::Config(format!("group {group} requires {what}"));
    match (features, globals) {
        (Some(f), Some(g)) => feature_groups(f, g),
        (Some(f), None) if group == FeatureGroup::Edr7 => {
            let g = f
                .keys()
                .map(|id| {
                    let blank = GlobalScores {
                        cited_id: id.clone(),
                        n_citing: 0,
                        m_pos: 0,
                        m_neg: 0,
                        countcitations_g: 0,
                        countpapers_g: 0,
                        pratiopaper_g: Some(0.0),
                    };
                    (id.clone(), blank)
                })
                .collect();
            build_feature_groups(f, &g)
        }
        (None, Some(g)) if group == FeatureGroup::Gvalue3 => {
            let f = g
                .keys()
                .map(|id| (id.clone(), EdrFeatures::from_array([0.0; 7])))
                .collect();
            build_feature_groups(&f, g)
        }
        (None, _) => Err(need("EDR features")),
        (_, None) => Err(need("global scores")),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterReport {
    pub group: FeatureGroup,
    pub k_min: usize,
    pub k_max: usize,
    pub seed: u64,
    pub restarts: usize,
    pub si_by_k: BTreeMap<usize, f64>,
    pub best_k: usize,
    pub silhouette_avg: f64,
    pub inertia: f64,
    pub labels_by_id: BTreeMap<String, usize>,
    /// Centroids in standardised feature space.
    pub centroids: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub undefined_pratiopaper: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClusterParams {
    pub k_min: usize,
    pub k_max: usize,
    pub seed: u64,
    pub restarts: usize,
}

impl From<&PipelineConfig> for ClusterParams {
    fn from(c: &PipelineConfig) -> Self {
        ClusterParams {
            k_min: c.k_min,
            k_max: c.k_max,
            seed: c.seed,
            restarts: c.restarts,
        }
    }
}

pub fn cluster_group(
    groups: &FeatureGroups,
    group: FeatureGroup,
    p: ClusterParams,
) -> Result<ClusterReport> {
    let m = groups.get(group);
    let z = standardize(m)?;
    let sel = select_k(&z, p.k_min, p.k_max, p.seed, p.restarts)?;
    let best = sel.best();
    let undefined = if group == FeatureGroup::Edr7 {
        Vec::new()
    } else {
        groups.undefined_pratiopaper.clone()
    };
    Ok(ClusterReport {
        group,
        k_min: p.k_min,
        k_max: p.k_max,
        seed: p.seed,
        restarts: p.restarts,
        si_by_k: sel.table.iter().copied().collect(),
        best_k: sel.best_k,
        silhouette_avg: best.silhouette_avg,
        inertia: best.inertia,
        labels_by_id: z
            .ids
            .iter()
            .cloned()
            .zip(best.labels.iter().copied())
            .collect(),
        centroids: best.centroids.clone(),
        undefined_pratiopaper: undefined,
    })
}

pub fn write_cluster(dir: &Path, report: &ClusterReport) -> Result<()> {
    artifacts::ensure_dir(dir)?;
    artifacts::write_json(&dir.join(format!("cluster_{}.json", report.group)), report)?;
    let table: Vec<(usize, f64)> = report.si_by_k.iter().map(|(k, s)| (*k, *s)).collect();
    artifacts::write_si_csv(&dir.join(format!("si_{}.csv", report.group)), &table)
}

pub fn cocluster_reports(reports: &[ClusterReport]) -> Result<CoclusterTable> {
    let labelings: Vec<GroupLabels> = reports
        .iter()
        .map(|r| GroupLabels::from_map(r.group, &r.labels_by_id))
        .collect();
    report_cocluster(&labelings)
}

pub fn write_cocluster(dir: &Path, table: &CoclusterTable) -> Result<()> {
    artifacts::ensure_dir(dir)?;
    artifacts::write_json(&dir.join("cocluster.json"), table)?;
    artifacts::write_text(&dir.join("cocluster.txt"), &table.render())
}

/// Loads every `cluster_<group>.json` present in `dir`, in group order.
pub fn load_cluster_reports(dir: &Path) -> Result<Vec<ClusterReport>> {
    let mut out = Vec::new();
    for g in FeatureGroup::ALL {
        let p = dir.join(format!("cluster_{g}.json"));
        if p.exists() {
            out.push(artifacts::read_json(&p)?);
        }
    }
    if out.is_empty() {
        return Err(Error::Contract(format!(
            "no cluster_<group>.json files in {}",
            dir.display()
        )));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub group: FeatureGroup,
    pub best_k: usize,
    pub silhouette_avg: f64,
    pub si_by_k: BTreeMap<usize, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportSettings {
    pub min_length: usize,
    pub k_min: usize,
    pub k_max: usize,
    pub seed: u64,
    pub restarts: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generated_at_unix: Option<u64>,
    pub settings: ReportSettings,
    pub corpus: CorpusStats,
    pub n_sequences: usize,
    pub sequence_lengths: BTreeMap<String, usize>,
    pub excluded: Vec<Excluded>,
    pub clustered: Vec<String>,
    pub groups: Vec<GroupSummary>,
    pub cocluster: CoclusterTable,
}

impl PipelineReport {
    pub fn group(&self, g: FeatureGroup) -> Option<&GroupSummary> {
        self.groups.iter().find(|s| s.group == g)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        if !self.excluded.is_empty() {
            let _ = writeln!(
                out,
                "EXCLUDED {} sequence(s) shorter than {}:",
                self.excluded.len(),
                self.settings.min_length
            );
            for e in &self.excluded {
                let _ = writeln!(out, "  {} (length {})", e.cited_id, e.length);
            }
            out.push('\n');
        }
        let c = &self.corpus;
        let _ = writeln!(
            out,
            "corpus: {} records ({} positive, {} negative, {} neutral), {} cited, {} citing",
            c.n_records, c.n_pos, c.n_neg, c.n_neutral, c.n_cited, c.n_citing
        );
        let _ = writeln!(
            out,
            "sequences: {} built, {} clustered",
            self.n_sequences,
            self.clustered.len()
        );
        for g in &self.groups {
            let _ = writeln!(
                out,
                "{}: best k = {}, average silhouette = {:.4}",
                g.group, g.best_k, g.silhouette_avg
            );
        }
        out.push('\n');
        out.push_str(&self.cocluster.render());
        out
    }
}

/// Runs all stages inside a staging directory next to `output_dir` and moves
/// the results into place only when every stage succeeded.
pub fn run_pipeline(cfg: &PipelineConfig) -> Result<PipelineReport> {
    cfg.validate()?;
    let out = &cfg.output_dir;
    let parent = match out.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    artifacts::ensure_dir(&parent)?;
    let staging = tempfile::Builder::new()
        .prefix(".citation-edr-staging-")
        .tempdir_in(&parent)
        .map_err(|e| Error::io(&parent, e))?;
    let dir = staging.path();

    let records = ingest(&cfg.corpus_path).map_err(|e| e.in_stage("ingest"))?;
    let stats = write_ingest(dir, &records).map_err(|e| e.in_stage("ingest"))?;

    let metrics = compute_metrics(&records).map_err(|e| e.in_stage("metrics"))?;
    write_metrics(dir, &metrics).map_err(|e| e.in_stage("metrics"))?;

    let sequences = compute_gcss(&metrics).map_err(|e| e.in_stage("gcss"))?;
    artifacts::write_gcss(dir, &sequences).map_err(|e| e.in_stage("gcss"))?;
    let seq_map = crate::sequence::to_json_map(&sequences);

    let set = compute_features(&seq_map, cfg.min_length).map_err(|e| e.in_stage("features"))?;
    write_features(dir, &set).map_err(|e| e.in_stage("features"))?;

    let groups =
        feature_groups(&set.features, &metrics.globals).map_err(|e| e.in_stage("cluster"))?;
    let mut reports = Vec::new();
    for &g in &cfg.groups {
        let r = cluster_group(&groups, g, cfg.into()).map_err(|e| e.in_stage("cluster"))?;
        write_cluster(dir, &r).map_err(|e| e.in_stage("cluster"))?;
        reports.push(r);
    }

    let cocluster = cocluster_reports(&reports).map_err(|e| e.in_stage("report"))?;
    write_cocluster(dir, &cocluster).map_err(|e| e.in_stage("report"))?;

    let report = PipelineReport {
        generated_at_unix: cfg.timestamp.then(|| {
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs())
        }),
        settings: ReportSettings {
            min_length: cfg.min_length,
            k_min: cfg.k_min,
            k_max: cfg.k_max,
            seed: cfg.seed,
            restarts: cfg.restarts,
        },
        corpus: stats,
        n_sequences: sequences.len(),
        sequence_lengths: sequences
            .iter()
            .map(|g| (g.cited_id.clone(), g.len()))
            .collect(),
        excluded: set.excluded.clone(),
        clustered: set.features.keys().cloned().collect(),
        groups: reports
            .iter()
            .map(|r| GroupSummary {
                group: r.group,
                best_k: r.best_k,
                silhouette_avg: r.silhouette_avg,
                si_by_k: r.si_by_k.clone(),
            })
            .collect(),
        cocluster,
    };
    artifacts::write_json(&dir.join("report.json"), &report).map_err(|e| e.in_stage("report"))?;
    artifacts::write_text(&dir.join("report.txt"), &report.render())
        .map_err(|e| e.in_stage("report"))?;

    publish(dir, out).map_err(|e| e.in_stage("report"))?;
    Ok(report)
}

fn publish(staging: &Path, out: &Path) -> Result<()> {
    artifacts::ensure_dir(out)?;
    let entries = fs::read_dir(staging).map_err(|e| Error::io(staging, e))?;
    for entry in entries {
        let entry = entry.map_err(|e| Error::io(staging, e))?;
        let target = out.join(entry.file_name());
        if target.is_dir() {
            fs::remove_dir_all(&target).map_err(|e| Error::io(&target, e))?;
        }
        fs::rename(entry.path(), &target).map_err(|e| Error::io(&target, e))?;
    }
    Ok(())
}
