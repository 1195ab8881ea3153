//! Annotated citation corpus: records, ACL-style paper identifiers, and the
//! canonical TSV format.
//!
//! The canonical file is UTF-8, tab separated, with a header naming the
//! columns. `cited_id`, `citing_id` and `polarity` are required; `position`
//! and `text` may be missing from the header or left empty on a line.
//!
//! Shown with spaces for readability:
//!
//! ```text
//! cited_id  citing_id  position  polarity  text
//! W06-1615  E09-3005   0         p         SCL has been applied successfully in NLP ...
//! ```

mod upstream;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub use upstream::convert_upstream;

pub const TSV_HEADER: &str = "cited_id\tciting_id\tposition\tpolarity\ttext";

/// Sentence-level citation polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Polarity {
    Negative,
    Neutral,
    Positive,
}

impl Polarity {
    pub fn value(self) -> i8 {
        match self {
            Polarity::Negative => -1,
            Polarity::Neutral => 0,
            Polarity::Positive => 1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Polarity::Negative => Polarity::Positive,
            Polarity::Neutral => Polarity::Neutral,
            Polarity::Positive => Polarity::Negative,
        }
    }

    /// Accepts `p`/`1`, `n`/`-1`, `o`/`0`.
    pub fn from_token(token: &str) -> Option<Self> {
        match token {
            "p" | "1" => Some(Polarity::Positive),
            "n" | "-1" => Some(Polarity::Negative),
            "o" | "0" => Some(Polarity::Neutral),
            _ => None,
        }
    }
}

impl From<Polarity> for i8 {
    fn from(p: Polarity) -> i8 {
        p.value()
    }
}

impl TryFrom<i8> for Polarity {
    type Error = String;

    fn try_from(v: i8) -> std::result::Result<Self, String> {
        match v {
            -1 => Ok(Polarity::Negative),
            0 => Ok(Polarity::Neutral),
            1 => Ok(Polarity::Positive),
            other => Err(format!("polarity {other} not in {{-1, 0, 1}}")),
        }
    }
}

/// One labeled citation sentence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CitationRecord {
    pub cited_id: String,
    pub citing_id: String,
    /// 0-based order of the sentence inside the citing paper.
    pub position: u32,
    pub polarity: Polarity,
    pub text: Option<String>,
}

/// A validated ACL Anthology identifier such as `W06-1615`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PaperId {
    raw: String,
    year: i32,
}

impl PaperId {
    pub fn parse(raw: &str) -> Result<Self> {
        let b = raw.as_bytes();
        let ok = b.len() == 8
            && b[0].is_ascii_uppercase()
            && b[1].is_ascii_digit()
            && b[2].is_ascii_digit()
            && b[3] == b'-'
            && b[4..].iter().all(u8::is_ascii_digit);
        if !ok {
            return Err(Error::PaperId(raw.to_string()));
        }
        let two = i32::from(b[1] - b'0') * 10 + i32::from(b[2] - b'0');
        let year = if two >= 60 { 1900 + two } else { 2000 + two };
        Ok(PaperId {
            raw: raw.to_string(),
            year,
        })
    }

    pub fn as_str(&self) -> &str {
        &self.raw
    }

    pub fn year(&self) -> i32 {
        self.year
    }
}

impl fmt::Display for PaperId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.raw)
    }
}

impl FromStr for PaperId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PaperId::parse(s)
    }
}

impl Ord for PaperId {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.year
            .cmp(&other.year)
            .then_with(|| self.raw.cmp(&other.raw))
    }
}

impl PartialOrd for PaperId {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Publication year encoded in an ACL identifier. `NN >= 60` maps to 19NN,
/// anything lower to 20NN.
pub fn acl_year(id: &str) -> Result<i32> {
    PaperId::parse(id).map(|p| p.year)
}

/// Orders citing papers by publication year, then by raw identifier.
/// Duplicates collapse to one entry.
pub fn order_citing_papers<'a, I>(citing_ids: I) -> Result<Vec<PaperId>>
where
    I: IntoIterator<Item = &'a str>,
{
    let set: BTreeSet<PaperId> = citing_ids
        .into_iter()
        .map(PaperId::parse)
        .collect::<Result<_>>()?;
    Ok(set.into_iter().collect())
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub n_cited: usize,
    pub n_citing: usize,
    pub n_records: usize,
    pub n_pos: usize,
    pub n_neg: usize,
    pub n_neutral: usize,
}

pub fn corpus_stats(records: &[CitationRecord]) -> CorpusStats {
    let mut cited = HashSet::new();
    let mut citing = HashSet::new();
    let mut stats = CorpusStats {
        n_records: records.len(),
        ..CorpusStats::default()
    };
    for r in records {
        cited.insert(r.cited_id.as_str());
        citing.insert(r.citing_id.as_str());
        match r.polarity {
            Polarity::Positive => stats.n_pos += 1,
            Polarity::Negative => stats.n_neg += 1,
            Polarity::Neutral => stats.n_neutral += 1,
        }
    }
    stats.n_cited = cited.len();
    stats.n_citing = citing.len();
    stats
}

#[derive(Debug, Clone, Copy)]
struct Columns {
    cited: usize,
    citing: usize,
    polarity: usize,
    position: Option<usize>,
    text: Option<usize>,
    count: usize,
}

impl Columns {
    fn from_header(header: &str) -> Result<Self> {
        let names: Vec<&str> = header.split('\t').map(str::trim).collect();
        let find = |name: &str| names.iter().position(|n| *n == name);
        let require = |name: &str| {
            find(name).ok_or_else(|| Error::Parse {
                line: 1,
                message: format!("header lacks required column `{name}`"),
            })
        };
        let text = find("text");
        if let Some(t) = text {
            if t + 1 != names.len() {
                return Err(Error::Parse {
                    line: 1,
                    message: "`text` must be the last column".into(),
                });
            }
        }
        Ok(Columns {
            cited: require("cited_id")?,
            citing: require("citing_id")?,
            polarity: require("polarity")?,
            position: find("position"),
            text,
            count: names.len(),
        })
    }
}

/// Parses the canonical TSV corpus. Record order follows the file.
pub fn parse_corpus(source: &str) -> Result<Vec<CitationRecord>> {
    let mut lines = source.lines().enumerate();
    let cols = loop {
        match lines.next() {
            None => return Ok(Vec::new()),
            Some((_, l)) if l.trim().is_empty() => continue,
            Some((_, l)) => break Columns::from_header(l.trim_start_matches('\u{feff}'))?,
        }
    };

    let mut out = Vec::new();
    let mut next_position: HashMap<(String, String), u32> = HashMap::new();
    let mut seen: HashSet<(String, String, u32)> = HashSet::new();

    for (idx, line) in lines {
        let lineno = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.splitn(cols.count, '\t').collect();
        if fields.len() != cols.count {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected {} columns, found {}", cols.count, fields.len()),
            });
        }
        let cited_id = fields[cols.cited].trim().to_string();
        let citing_id = fields[cols.citing].trim().to_string();
        if cited_id.is_empty() || citing_id.is_empty() {
            return Err(Error::Parse {
                line: lineno,
                message: "empty paper identifier".into(),
            });
        }
        let token = fields[cols.polarity].trim();
        let polarity = Polarity::from_token(token).ok_or_else(|| Error::Parse {
            line: lineno,
            message: format!("unknown polarity token {token:?}"),
        })?;

        let key = (cited_id.clone(), citing_id.clone());
        let counter = next_position.entry(key).or_insert(0);
        let explicit = cols
            .position
            .map(|c| fields[c].trim())
            .filter(|s| !s.is_empty());
        let position = match explicit {
            Some(s) => s.parse::<u32>().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("invalid position {s:?}"),
            })?,
            None => *counter,
        };
        *counter = (*counter).max(position.saturating_add(1));

        if !seen.insert((cited_id.clone(), citing_id.clone(), position)) {
            return Err(Error::Parse {
                line: lineno,
                message: format!("duplicate position {position} for ({cited_id}, {citing_id})"),
            });
        }

        let text = cols
            .text
            .map(|c| fields[c])
            .filter(|s| !s.is_empty())
            .map(str::to_string);

        out.push(CitationRecord {
            cited_id,
            citing_id,
            position,
            polarity,
            text,
        });
    }
    Ok(out)
}

/// Serializes records to the canonical TSV with all five columns.
/// Line breaks inside `text` become spaces.
pub fn write_corpus(records: &[CitationRecord]) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(TSV_HEADER);
    out.push('\n');
    for r in records {
        let text = r.text.as_deref().unwrap_or("").replace(['\n', '\r'], " ");
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            r.cited_id,
            r.citing_id,
            r.position,
            r.polarity.value(),
            text
        ));
    }
    out
}

pub fn read_corpus(path: &Path) -> Result<Vec<CitationRecord>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_corpus(&text)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Checks `path` against a hex SHA-256 digest. Only the first
/// whitespace-separated token of `expected` is used, so `sha256sum`
/// output can be passed through unchanged.
pub fn verify_checksum(path: &Path, expected: &str) -> Result<()> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let actual = sha256_hex(&bytes);
    let expected = expected
        .split_whitespace()
        .next()
        .unwrap_or("")
        .to_ascii_lowercase();
    if actual == expected {
        Ok(())
    } else {
        Err(Error::Checksum {
            path: path.to_path_buf(),
            expected,
            actual,
        })
    }
}
