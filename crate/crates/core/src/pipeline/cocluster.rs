//! Cross-group comparison of clusterings. Cluster indices are arbitrary, so
//! everything here compares partitions rather than label values.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::clustering::FeatureGroup;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupLabels {
    pub group: FeatureGroup,
    pub ids: Vec<String>,
    pub labels: Vec<usize>,
}

impl GroupLabels {
    pub fn from_map(group: FeatureGroup, labels_by_id: &BTreeMap<String, usize>) -> Self {
        GroupLabels {
            group,
            ids: labels_by_id.keys().cloned().collect(),
            labels: labels_by_id.values().copied().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoclusterRow {
    pub id: String,
    pub labels: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionAgreement {
    pub a: FeatureGroup,
    pub b: FeatureGroup,
    pub same_partition: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoclusterTable {
    pub groups: Vec<FeatureGroup>,
    pub rows: Vec<CoclusterRow>,
    /// Papers that share a cluster in every group, largest block first.
    pub blocks: Vec<Vec<String>>,
    /// Papers that share their block with at least one other paper.
    pub co_clustered: Vec<String>,
    pub agreement: Vec<PartitionAgreement>,
}

impl CoclusterTable {
    /// True when all `ids` fall in one block, i.e. share a cluster in every
    /// group.
    pub fn together(&self, ids: &[&str]) -> bool {
        self.blocks
            .iter()
            .any(|b| ids.iter().all(|id| b.iter().any(|m| m == id)))
    }

    /// `id (a/b/c)` cells in row order.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let names: Vec<&str> = self.groups.iter().map(|g| g.name()).collect();
        let _ = writeln!(out, "labels ({})", names.join(" / "));
        for row in &self.rows {
            let labels: Vec<String> = row.labels.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "  {} ({})", row.id, labels.join("/"));
        }
        let _ = writeln!(out, "co-clustered in every group:");
        for b in self.blocks.iter().filter(|b| b.len() > 1) {
            let _ = writeln!(out, "  {{{}}}", b.join(", "));
        }
        for a in &self.agreement {
            let _ = writeln!(
                out,
                "{} vs {}: {}",
                a.a,
                a.b,
                if a.same_partition {
                    "same partition"
                } else {
                    "different partitions"
                }
            );
        }
        out
    }
}

/// Canonical form of a labelling: each label replaced by the rank of its
/// first appearance.
fn canonical(labels: &[usize]) -> Vec<usize> {
    let mut map = HashMap::new();
    labels
        .iter()
        .map(|l| {
            let next = map.len();
            *map.entry(*l).or_insert(next)
        })
        .collect()
}

pub fn same_partition(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len() && canonical(a) == canonical(b)
}

pub fn report_cocluster(labelings: &[GroupLabels]) -> Result<CoclusterTable> {
    let Some(first) = labelings.first() else {
        return Err(Error::Contract("no clusterings to compare".into()));
    };
    let ids = first.ids.clone();
    let mut aligned: Vec<Vec<usize>> = Vec::with_capacity(labelings.len());
    for gl in labelings {
        if gl.ids.len() != gl.labels.len() {
            return Err(Error::Contract(format!(
                "{}: ids and labels differ in length",
                gl.group
            )));
        }
        let by_id: HashMap<&str, usize> = gl
            .ids
            .iter()
            .map(String::as_str)
            .zip(gl.labels.iter().copied())
            .collect();
        if by_id.len() != ids.len() || ids.iter().any(|id| !by_id.contains_key(id.as_str())) {
            return Err(Error::IdMismatch(format!(
                "{} and {} cluster different papers",
                first.group, gl.group
            )));
        }
        aligned.push(ids.iter().map(|id| by_id[id.as_str()]).collect());
    }

    let rows: Vec<CoclusterRow> = ids
        .iter()
        .enumerate()
        .map(|(i, id)| CoclusterRow {
            id: id.clone(),
            labels: aligned.iter().map(|l| l[i]).collect(),
        })
        .collect();

    let mut by_tuple: BTreeMap<Vec<usize>, Vec<String>> = BTreeMap::new();
    for row in &rows {
        by_tuple
            .entry(row.labels.clone())
            .or_default()
            .push(row.id.clone());
    }
    let mut blocks: Vec<Vec<String>> = by_tuple.into_values().collect();
    blocks.iter_mut().for_each(|b| b.sort());
    blocks.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));

    let mut co_clustered: Vec<String> = blocks
        .iter()
        .filter(|b| b.len() > 1)
        .flatten()
        .cloned()
        .collect();
    co_clustered.sort();

    let mut agreement = Vec::new();
    for i in 0..labelings.len() {
        for j in i + 1..labelings.len() {
            agreement.push(PartitionAgreement {
                a: labelings[i].group,
                b: labelings[j].group,
                same_partition: same_partition(&aligned[i], &aligned[j]),
            });
        }
    }

    Ok(CoclusterTable {
        groups: labelings.iter().map(|g| g.group).collect(),
        rows,
        blocks,
        co_clustered,
        agreement,
    })
}
