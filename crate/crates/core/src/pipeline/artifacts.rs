//! Readers and writers for every file the stages exchange. Floats are written
//! with Rust's shortest round-trip formatting so re-reading is lossless.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::corpus::acl_year;
use crate::error::{Error, Result};
use crate::metrics::{countcitations_l, paper_polarity, pratio_l, GlobalScores, Icss};
use crate::sequence::{plot_csv, to_json_map, Gcss};
use crate::turbulence::EdrFeatures;

pub const FEATURES_HEADER: [&str; 8] = [
    "cited_id", "var_np", "psd_np", "d2_np", "d3_np", "psd_p", "d2_p", "d3_p",
];
pub const LOCAL_HEADER: [&str; 9] = [
    "cited_id",
    "citing_id",
    "year",
    "n_citations",
    "n_pos",
    "n_neg",
    "countcitations_l",
    "pratio_l",
    "paper_polarity",
];
pub const GLOBAL_HEADER: [&str; 7] = [
    "cited_id",
    "n_citing",
    "m_pos",
    "m_neg",
    "countcitations_g",
    "countpapers_g",
    "pratiopaper_g",
];
pub const NA: &str = "NA";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Excluded {
    pub cited_id: String,
    pub length: usize,
}

pub fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Error::json(path, e))?;
    text.push('\n');
    write_text(path, &text)
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::json(path, e))
}

fn csv_io(path: &Path, e: csv::Error) -> Error {
    match e.position() {
        Some(p) => Error::Parse {
            line: p.line() as usize,
            message: format!("{}: {e}", path.display()),
        },
        None => Error::io(path, std::io::Error::other(e.to_string())),
    }
}

pub fn write_csv<I>(path: &Path, header: &[&str], rows: I) -> Result<()>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_io(path, e))?;
    w.write_record(header).map_err(|e| csv_io(path, e))?;
    for row in rows {
        w.write_record(&row).map_err(|e| csv_io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Reads a CSV whose header must start with `header`.
fn read_csv(path: &Path, header: &[&str]) -> Result<Vec<(usize, csv::StringRecord)>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| csv_io(path, e))?;
    let found = r.headers().map_err(|e| csv_io(path, e))?.clone();
    if found.len() < header.len() || header.iter().zip(found.iter()).any(|(a, b)| *a != b.trim()) {
        return Err(Error::Parse {
            line: 1,
            message: format!(
                "{}: expected header `{}`, found `{}`",
                path.display(),
                header.join(","),
                found.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| csv_io(path, e))?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        out.push((line, rec));
    }
    Ok(out)
}

fn field<T: std::str::FromStr>(
    path: &Path,
    line: usize,
    rec: &csv::StringRecord,
    i: usize,
) -> Result<T> {
    let raw = rec.get(i).unwrap_or("").trim();
    raw.parse().map_err(|_| Error::Parse {
        line,
        message: format!(
            "{}: cannot parse column {} value {raw:?}",
            path.display(),
            i + 1
        ),
    })
}

pub fn write_local_metrics(path: &Path, grouped: &BTreeMap<String, Vec<Icss>>) -> Result<()> {
    let mut rows = Vec::new();
    for list in grouped.values() {
        for icss in list {
            rows.push(vec![
                icss.cited_id.clone(),
                icss.citing_id.clone(),
                acl_year(&icss.citing_id)?.to_string(),
                icss.len().to_string(),
                icss.n_pos.to_string(),
                icss.n_neg.to_string(),
                countcitations_l(icss).to_string(),
                pratio_l(icss).to_string(),
                paper_polarity(icss).value().to_string(),
            ]);
        }
    }
    write_csv(path, &LOCAL_HEADER, rows)
}

pub fn write_global_metrics(path: &Path, globals: &BTreeMap<String, GlobalScores>) -> Result<()> {
    let rows = globals.values().map(|g| {
        vec![
            g.cited_id.clone(),
            g.n_citing.to_string(),
            g.m_pos.to_string(),
            g.m_neg.to_string(),
            g.countcitations_g.to_string(),
            g.countpapers_g.to_string(),
            g.pratiopaper_g
                .map_or_else(|| NA.to_string(), |v| v.to_string()),
        ]
    });
    write_csv(path, &GLOBAL_HEADER, rows)
}

pub fn read_global_metrics(path: &Path) -> Result<BTreeMap<String, GlobalScores>> {
    let mut out = BTreeMap::new();
    for (line, rec) in read_csv(path, &GLOBAL_HEADER)? {
        let cited_id = rec.get(0).unwrap_or("").trim().to_string();
        let ratio = rec.get(6).unwrap_or("").trim();
        let pratiopaper_g = if ratio == NA {
            None
        } else {
            Some(field::<f64>(path, line, &rec, 6)?)
        };
        let g = GlobalScores {
            cited_id: cited_id.clone(),
            n_citing: field(path, line, &rec, 1)?,
            m_pos: field(path, line, &rec, 2)?,
            m_neg: field(path, line, &rec, 3)?,
            countcitations_g: field(path, line, &rec, 4)?,
            countpapers_g: field(path, line, &rec, 5)?,
            pratiopaper_g,
        };
        if out.insert(cited_id.clone(), g).is_some() {
            return Err(Error::Parse {
                line,
                message: format!("{}: duplicate paper {cited_id}", path.display()),
            });
        }
    }
    Ok(out)
}

/// One `<cited_id>.gcss.csv` per sequence in `dir/gcss/`, plus `dir/gcss.json`.
pub fn write_gcss(dir: &Path, sequences: &[Gcss]) -> Result<()> {
    let sub = dir.join("gcss");
    ensure_dir(&sub)?;
    for g in sequences {
        write_text(&sub.join(format!("{}.gcss.csv", g.cited_id)), &plot_csv(g))?;
    }
    write_json(&dir.join("gcss.json"), &to_json_map(sequences))
}

pub fn read_gcss_json(path: &Path) -> Result<BTreeMap<String, Vec<f64>>> {
    read_json(path)
}

pub fn write_features(path: &Path, features: &BTreeMap<String, EdrFeatures>) -> Result<()> {
    let rows = features.iter().map(|(id, f)| {
        std::iter::once(id.clone())
            .chain(f.to_array().iter().map(f64::to_string))
            .collect()
    });
    write_csv(path, &FEATURES_HEADER, rows)
}

pub fn read_features(path: &Path) -> Result<BTreeMap<String, EdrFeatures>> {
    let mut out = BTreeMap::new();
    for (line, rec) in read_csv(path, &FEATURES_HEADER)? {
        let id = rec.get(0).unwrap_or("").trim().to_string();
        let mut a = [0.0; 7];
        for (j, slot) in a.iter_mut().enumerate() {
            *slot = field(path, line, &rec, j + 1)?;
        }
        if out.insert(id.clone(), EdrFeatures::from_array(a)).is_some() {
            return Err(Error::Parse {
                line,
                message: format!("{}: duplicate paper {id}", path.display()),
            });
        }
    }
    Ok(out)
}

pub fn write_excluded(path: &Path, excluded: &[Excluded]) -> Result<()> {
    write_csv(
        path,
        &["cited_id", "length"],
        excluded
            .iter()
            .map(|e| vec![e.cited_id.clone(), e.length.to_string()]),
    )
}

pub fn write_si_csv(path: &Path, table: &[(usize, f64)]) -> Result<()> {
    write_csv(
        path,
        &["k", "silhouette_avg"],
        table
            .iter()
            .map(|(k, s)| vec![k.to_string(), s.to_string()]),
    )
}
