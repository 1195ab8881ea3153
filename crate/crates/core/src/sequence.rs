//! Global citation sentiment sequences: one `pratio_l` value per citing paper,
//! ordered by the citing paper's publication year.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::corpus::order_citing_papers;
use crate::error::{Error, Result};
use crate::metrics::{pratio_l, Icss};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GcssEntry {
    pub citing_id: String,
    pub year: i32,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gcss {
    pub cited_id: String,
    pub entries: Vec<GcssEntry>,
}

impl Gcss {
    pub fn values(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.value).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn build_gcss(cited_id: &str, icss_list: &[Icss]) -> Result<Gcss> {
    let mut by_citing: HashMap<&str, &Icss> = HashMap::with_capacity(icss_list.len());
    for icss in icss_list {
        if icss.cited_id != cited_id {
            return Err(Error::Contract(format!(
                "ICSS for {} passed while building the sequence of {cited_id}",
                icss.cited_id
            )));
        }
        if by_citing.insert(icss.citing_id.as_str(), icss).is_some() {
            return Err(Error::Contract(format!(
                "citing paper {} appears twice for {cited_id}",
                icss.citing_id
            )));
        }
    }
    let ordered = order_citing_papers(by_citing.keys().copied())?;
    let entries = ordered
        .into_iter()
        .map(|id| GcssEntry {
            value: pratio_l(by_citing[id.as_str()]),
            year: id.year(),
            citing_id: id.as_str().to_string(),
        })
        .collect();
    Ok(Gcss {
        cited_id: cited_id.to_string(),
        entries,
    })
}

/// Builds every sequence of a grouped corpus (see [`crate::metrics::group_icss`]).
pub fn build_all(grouped: &BTreeMap<String, Vec<Icss>>) -> Result<Vec<Gcss>> {
    grouped
        .iter()
        .map(|(cited, list)| build_gcss(cited, list))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlotRow {
    pub index: usize,
    pub citing_id: String,
    pub year: i32,
    pub value: f64,
}

pub const PLOT_HEADER: &str = "index,citing_id,year,value";

/// Bar-chart rows, indexed from 1.
pub fn gcss_plot_data(gcss: &Gcss) -> Vec<PlotRow> {
    gcss.entries
        .iter()
        .enumerate()
        .map(|(i, e)| PlotRow {
            index: i + 1,
            citing_id: e.citing_id.clone(),
            year: e.year,
            value: e.value,
        })
        .collect()
}

pub fn plot_csv(gcss: &Gcss) -> String {
    let mut out = String::from(PLOT_HEADER);
    out.push('\n');
    for row in gcss_plot_data(gcss) {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            row.index, row.citing_id, row.year, row.value
        );
    }
    out
}

/// `{cited_id: [values ...]}` with keys in sorted order.
pub fn to_json_map(sequences: &[Gcss]) -> BTreeMap<String, Vec<f64>> {
    sequences
        .iter()
        .map(|g| (g.cited_id.clone(), g.values()))
        .collect()
}
