//! Local (one citing paper) and global (one cited paper) sentiment scores.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::corpus::{CitationRecord, Polarity};
use crate::error::{Error, Result};

/// Internal citation sentiment sequence: the polarities of every sentence in
/// one citing paper that cites a given paper, in in-paper order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Icss {
    pub cited_id: String,
    pub citing_id: String,
    pub sequence: Vec<Polarity>,
    pub n_pos: usize,
    pub n_neg: usize,
}

impl Icss {
    pub fn from_polarities(
        cited_id: impl Into<String>,
        citing_id: impl Into<String>,
        sequence: Vec<Polarity>,
    ) -> Self {
        let n_pos = sequence
            .iter()
            .filter(|p| **p == Polarity::Positive)
            .count();
        let n_neg = sequence
            .iter()
            .filter(|p| **p == Polarity::Negative)
            .count();
        Icss {
            cited_id: cited_id.into(),
            citing_id: citing_id.into(),
            sequence,
            n_pos,
            n_neg,
        }
    }

    /// Convenience constructor from `{-1, 0, 1}` values.
    pub fn from_values(cited_id: &str, citing_id: &str, values: &[i8]) -> Result<Self> {
        let seq = values
            .iter()
            .map(|&v| Polarity::try_from(v).map_err(Error::Contract))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_polarities(cited_id, citing_id, seq))
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn countcitations_l(&self) -> i64 {
        countcitations_l(self)
    }

    pub fn pratio_l(&self) -> f64 {
        pratio_l(self)
    }
}

/// Builds the ICSS for one (cited, citing) pair. An empty slice gives an
/// empty sequence with blank identifiers.
pub fn build_icss(records: &[&CitationRecord]) -> Result<Icss> {
    let Some(first) = records.first() else {
        return Ok(Icss::from_polarities("", "", Vec::new()));
    };
    if let Some(r) = records
        .iter()
        .find(|r| r.cited_id != first.cited_id || r.citing_id != first.citing_id)
    {
        return Err(Error::Contract(format!(
            "ICSS mixes pairs ({}, {}) and ({}, {})",
            first.cited_id, first.citing_id, r.cited_id, r.citing_id
        )));
    }
    let mut sorted: Vec<&CitationRecord> = records.to_vec();
    sorted.sort_by_key(|r| r.position);
    let seq = sorted.iter().map(|r| r.polarity).collect();
    Ok(Icss::from_polarities(
        first.cited_id.clone(),
        first.citing_id.clone(),
        seq,
    ))
}

/// Groups a flat corpus into ICSSs keyed by cited paper, then citing paper.
pub fn group_icss(records: &[CitationRecord]) -> Result<BTreeMap<String, Vec<Icss>>> {
    let mut pairs: BTreeMap<(&str, &str), Vec<&CitationRecord>> = BTreeMap::new();
    for r in records {
        pairs
            .entry((r.cited_id.as_str(), r.citing_id.as_str()))
            .or_default()
            .push(r);
    }
    let mut out: BTreeMap<String, Vec<Icss>> = BTreeMap::new();
    for ((cited, _), recs) in pairs {
        out.entry(cited.to_string())
            .or_default()
            .push(build_icss(&recs)?);
    }
    Ok(out)
}

/// `N_pos - N_neg`.
pub fn countcitations_l(icss: &Icss) -> i64 {
    icss.n_pos as i64 - icss.n_neg as i64
}

/// `N_pos / (N_pos + N_neg)`, or 0 when the paper has no polar citation.
pub fn pratio_l(icss: &Icss) -> f64 {
    let polar = icss.n_pos + icss.n_neg;
    if polar == 0 {
        0.0
    } else {
        icss.n_pos as f64 / polar as f64
    }
}

/// Sign of `countcitations_l`; decides whether a citing paper counts as
/// positive or negative for the global paper counts.
pub fn paper_polarity(icss: &Icss) -> Polarity {
    match countcitations_l(icss).signum() {
        1 => Polarity::Positive,
        -1 => Polarity::Negative,
        _ => Polarity::Neutral,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlobalScores {
    pub cited_id: String,
    /// Number of citing papers.
    pub n_citing: usize,
    pub m_pos: usize,
    pub m_neg: usize,
    pub countcitations_g: i64,
    pub countpapers_g: i64,
    /// `None` when no citing paper is polar.
    pub pratiopaper_g: Option<f64>,
}

pub fn global_scores(icss_list: &[Icss]) -> Result<GlobalScores> {
    let cited_id = icss_list
        .first()
        .map(|i| i.cited_id.clone())
        .unwrap_or_default();
    let mut seen = HashSet::new();
    let (mut countcitations_g, mut m_pos, mut m_neg) = (0i64, 0usize, 0usize);
    for icss in icss_list {
        if icss.cited_id != cited_id {
            return Err(Error::Contract(format!(
                "global scores mix cited papers {cited_id} and {}",
                icss.cited_id
            )));
        }
        if !seen.insert(icss.citing_id.as_str()) {
            return Err(Error::Contract(format!(
                "citing paper {} appears twice for {cited_id}",
                icss.citing_id
            )));
        }
        countcitations_g += countcitations_l(icss);
        match paper_polarity(icss) {
            Polarity::Positive => m_pos += 1,
            Polarity::Negative => m_neg += 1,
            Polarity::Neutral => {}
        }
    }
    let pratiopaper_g = match m_pos + m_neg {
        0 => None,
        polar => Some(m_pos as f64 / polar as f64),
    };
    Ok(GlobalScores {
        cited_id,
        n_citing: icss_list.len(),
        m_pos,
        m_neg,
        countcitations_g,
        countpapers_g: m_pos as i64 - m_neg as i64,
        pratiopaper_g,
    })
}
