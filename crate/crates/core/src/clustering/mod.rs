//! Feature matrices, z-score standardisation, K-means with k-means++ seeding,
//! silhouette scoring and silhouette-based choice of the cluster count.

mod kmeans;
mod select;
mod silhouette;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::GlobalScores;
use crate::turbulence::EdrFeatures;

pub use kmeans::{kmeans, kmeans_pp_init, lloyd, ClusterOutcome, LloydRun, MAX_ITER, TOLERANCE};
pub use select::{select_k, Selection};
pub use silhouette::silhouette;

/// The three feature sets that get clustered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeatureGroup {
    Edr7,
    Gvalue3,
    Concat10,
}

impl FeatureGroup {
    pub const ALL: [FeatureGroup; 3] = [
        FeatureGroup::Edr7,
        FeatureGroup::Gvalue3,
        FeatureGroup::Concat10,
    ];

    pub fn dim(self) -> usize {
        match self {
            FeatureGroup::Edr7 => 7,
            FeatureGroup::Gvalue3 => 3,
            FeatureGroup::Concat10 => 10,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FeatureGroup::Edr7 => "edr7",
            FeatureGroup::Gvalue3 => "gvalue3",
            FeatureGroup::Concat10 => "concat10",
        }
    }
}

impl fmt::Display for FeatureGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FeatureGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "edr7" => Ok(FeatureGroup::Edr7),
            "gvalue3" => Ok(FeatureGroup::Gvalue3),
            "concat10" => Ok(FeatureGroup::Concat10),
            other => Err(Error::Config(format!(
                "unknown feature group {other:?} (expected edr7, gvalue3 or concat10)"
            ))),
        }
    }
}

/// Rows of equal dimension keyed by cited-paper id.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureMatrix {
    pub ids: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub group: Option<FeatureGroup>,
}

impl FeatureMatrix {
    pub fn new(ids: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        if ids.len() != rows.len() {
            return Err(Error::Contract(format!(
                "{} ids for {} rows",
                ids.len(),
                rows.len()
            )));
        }
        if let Some(first) = rows.first() {
            if rows.iter().any(|r| r.len() != first.len()) {
                return Err(Error::Contract("rows differ in dimension".into()));
            }
        }
        if rows.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("feature matrix".into()));
        }
        Ok(FeatureMatrix {
            ids,
            rows,
            group: None,
        })
    }

    /// Unnamed rows, ids `0, 1, 2, ...`.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let ids = (0..rows.len()).map(|i| i.to_string()).collect();
        Self::new(ids, rows)
    }

    pub fn with_group(mut self, group: FeatureGroup) -> Result<Self> {
        if self.dim() != group.dim() && !self.rows.is_empty() {
            return Err(Error::Contract(format!(
                "group {group} needs {} columns, matrix has {}",
                group.dim(),
                self.dim()
            )));
        }
        self.group = Some(group);
        Ok(self)
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }
}

/// Per-column z-scores with population standard deviation. Constant columns
/// become zeros.
pub fn standardize(m: &FeatureMatrix) -> Result<FeatureMatrix> {
    let n = m.n_rows();
    if n < 2 {
        return Err(Error::Contract(format!(
            "standardisation needs at least 2 rows, got {n}"
        )));
    }
    let mut rows = m.rows.clone();
    for j in 0..m.dim() {
        let first = m.rows[0][j];
        if m.rows.iter().all(|r| r[j] == first) {
            rows.iter_mut().for_each(|r| r[j] = 0.0);
            continue;
        }
        let mean = m.rows.iter().map(|r| r[j]).sum::<f64>() / n as f64;
        let var = m.rows.iter().map(|r| (r[j] - mean).powi(2)).sum::<f64>() / n as f64;
        let sd = var.sqrt();
        if sd == 0.0 {
            rows.iter_mut().for_each(|r| r[j] = 0.0);
            continue;
        }
        for (out, src) in rows.iter_mut().zip(&m.rows) {
            out[j] = (src[j] - mean) / sd;
        }
    }
    Ok(FeatureMatrix {
        ids: m.ids.clone(),
        rows,
        group: m.group,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureGroups {
    pub edr7: FeatureMatrix,
    pub gvalue3: FeatureMatrix,
    pub concat10: FeatureMatrix,
    /// Papers whose `pratiopaper_g` was undefined and encoded as 0.
    pub undefined_pratiopaper: Vec<String>,
}

impl FeatureGroups {
    pub fn get(&self, group: FeatureGroup) -> &FeatureMatrix {
        match group {
            FeatureGroup::Edr7 => &self.edr7,
            FeatureGroup::Gvalue3 => &self.gvalue3,
            FeatureGroup::Concat10 => &self.concat10,
        }
    }
}

pub fn gvalue_row(g: &GlobalScores) -> [f64; 3] {
    [
        g.countcitations_g as f64,
        g.countpapers_g as f64,
        g.pratiopaper_g.unwrap_or(0.0),
    ]
}

/// Assembles the 7-, 3- and 10-dimensional matrices. Both maps must cover
/// the same papers; rows follow id order.
pub fn build_feature_groups(
    edr: &BTreeMap<String, EdrFeatures>,
    globals: &BTreeMap<String, GlobalScores>,
) -> Result<FeatureGroups> {
    let only_edr: Vec<&String> = edr.keys().filter(|k| !globals.contains_key(*k)).collect();
    let only_g: Vec<&String> = globals.keys().filter(|k| !edr.contains_key(*k)).collect();
    if !only_edr.is_empty() || !only_g.is_empty() {
        return Err(Error::IdMismatch(format!(
            "without global scores: {only_edr:?}; without EDR features: {only_g:?}"
        )));
    }
    let ids: Vec<String> = edr.keys().cloned().collect();
    let mut e_rows = Vec::with_capacity(ids.len());
    let mut g_rows = Vec::with_capacity(ids.len());
    let mut c_rows = Vec::with_capacity(ids.len());
    let mut undefined = Vec::new();
    for id in &ids {
        let e = edr[id].to_array().to_vec();
        let g = gvalue_row(&globals[id]).to_vec();
        if globals[id].pratiopaper_g.is_none() {
            undefined.push(id.clone());
        }
        c_rows.push([e.as_slice(), g.as_slice()].concat());
        e_rows.push(e);
        g_rows.push(g);
    }
    Ok(FeatureGroups {
        edr7: FeatureMatrix::new(ids.clone(), e_rows)?.with_group(FeatureGroup::Edr7)?,
        gvalue3: FeatureMatrix::new(ids.clone(), g_rows)?.with_group(FeatureGroup::Gvalue3)?,
        concat10: FeatureMatrix::new(ids, c_rows)?.with_group(FeatureGroup::Concat10)?,
        undefined_pratiopaper: undefined,
    })
}

pub(crate) fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gs(id: &str, c: i64, p: i64, r: Option<f64>) -> GlobalScores {
        GlobalScores {
            cited_id: id.into(),
            n_citing: 1,
            m_pos: 0,
            m_neg: 0,
            countcitations_g: c,
            countpapers_g: p,
            pratiopaper_g: r,
        }
    }

    #[test]
    fn standardize_examples() {
        let m = FeatureMatrix::from_rows(vec![vec![0.0, 5.0], vec![2.0, 5.0]]).unwrap();
        let s = standardize(&m).unwrap();
        assert_eq!(s.rows, vec![vec![-1.0, 0.0], vec![1.0, 0.0]]);
        let c = FeatureMatrix::from_rows(vec![vec![5.0], vec![5.0], vec![5.0]]).unwrap();
        assert_eq!(standardize(&c).unwrap().rows, vec![vec![0.0]; 3]);
        let one = FeatureMatrix::from_rows(vec![vec![1.0]]).unwrap();
        assert!(standardize(&one).is_err());
    }

    #[test]
    fn concat_layout() {
        let edr = BTreeMap::from([("A01-0001".to_string(), EdrFeatures::from_array([0.0; 7]))]);
        let g = BTreeMap::from([("A01-0001".to_string(), gs("A01-0001", 2, 1, Some(1.0)))]);
        let groups = build_feature_groups(&edr, &g).unwrap();
        assert_eq!(
            groups.concat10.rows[0],
            vec![0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 2.0, 1.0, 1.0]
        );
        assert_eq!(groups.gvalue3.group, Some(FeatureGroup::Gvalue3));
        assert!(groups.undefined_pratiopaper.is_empty());
    }

    #[test]
    fn undefined_ratio_encoded_as_zero() {
        let edr = BTreeMap::from([("A01-0001".to_string(), EdrFeatures::from_array([1.0; 7]))]);
        let g = BTreeMap::from([("A01-0001".to_string(), gs("A01-0001", 0, 0, None))]);
        let groups = build_feature_groups(&edr, &g).unwrap();
        assert_eq!(groups.gvalue3.rows[0], vec![0.0, 0.0, 0.0]);
        assert_eq!(groups.undefined_pratiopaper, vec!["A01-0001".to_string()]);
    }

    #[test]
    fn id_mismatch() {
        let edr = BTreeMap::from([
            ("A01-0001".to_string(), EdrFeatures::from_array([0.0; 7])),
            ("A01-0002".to_string(), EdrFeatures::from_array([0.0; 7])),
        ]);
        let g = BTreeMap::from([("A01-0001".to_string(), gs("A01-0001", 2, 1, Some(1.0)))]);
        assert!(matches!(
            build_feature_groups(&edr, &g),
            Err(Error::IdMismatch(_))
        ));
    }

    #[test]
    fn group_names_roundtrip() {
        for g in FeatureGroup::ALL {
            assert_eq!(g.name().parse::<FeatureGroup>().unwrap(), g);
        }
        assert!("edr8".parse::<FeatureGroup>().is_err());
    }

    fn matrix(nr: usize, nc: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
        prop::collection::vec(prop::collection::vec(-100.0f64..100.0, nc), nr)
    }

    proptest! {
        #[test]
        fn standardized_columns(rows in matrix(5, 3)) {
            let s = standardize(&FeatureMatrix::from_rows(rows).unwrap()).unwrap();
            for j in 0..3 {
                let mean = s.rows.iter().map(|r| r[j]).sum::<f64>() / 5.0;
                let sd = (s.rows.iter().map(|r| (r[j] - mean).powi(2)).sum::<f64>() / 5.0).sqrt();
                prop_assert!(mean.abs() < 1e-12);
                prop_assert!((sd - 1.0).abs() < 1e-12);
            }
        }

        #[test]
        fn standardize_idempotent(rows in matrix(6, 4)) {
            let once = standardize(&FeatureMatrix::from_rows(rows).unwrap()).unwrap();
            let twice = standardize(&once).unwrap();
            for (a, b) in once.rows.iter().flatten().zip(twice.rows.iter().flatten()) {
                prop_assert!((a - b).abs() < 1e-12);
            }
        }
    }
}
