//! Converter for the tab-separated layout the annotated citation corpora are
//! distributed in: one sentence per line with a header such as
//! `Source_Paper_ID<TAB>Target_Paper_ID<TAB>Sentiment<TAB>Citation_Text`.
//!
//! The source paper is the citing paper and the target paper the cited one.
//! Sentences labelled `x` (no mention of the cited work) are dropped.
//! Positions are assigned from line order within each (cited, citing) pair.

use std::collections::HashMap;

use super::{CitationRecord, Polarity};
use crate::error::{Error, Result};

fn normalize(name: &str) -> String {
    name.trim()
        .chars()
        .filter(|c| c.is_ascii_alphanumeric())
        .collect::<String>()
        .to_ascii_lowercase()
}

fn column(names: &[String], aliases: &[&str]) -> Option<usize> {
    names
        .iter()
        .position(|n| aliases.iter().any(|a| n.starts_with(a)))
}

pub fn convert_upstream(source: &str) -> Result<Vec<CitationRecord>> {
    let mut lines = source
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let Some((_, header)) = lines.next() else {
        return Ok(Vec::new());
    };
    let names: Vec<String> = header
        .trim_start_matches('\u{feff}')
        .split('\t')
        .map(normalize)
        .collect();
    let missing = |what: &str| Error::Parse {
        line: 1,
        message: format!("cannot locate the {what} column in header {header:?}"),
    };
    let citing = column(&names, &["source", "citing"]).ok_or_else(|| missing("citing paper"))?;
    let cited = column(&names, &["target", "cited"]).ok_or_else(|| missing("cited paper"))?;
    let label =
        column(&names, &["sentiment", "polarity", "label"]).ok_or_else(|| missing("sentiment"))?;
    let text = column(&names, &["citationtext", "text", "sentence"]);
    let count = names.len();

    let mut out = Vec::new();
    let mut next: HashMap<(String, String), u32> = HashMap::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        let fields: Vec<&str> = line.splitn(count, '\t').collect();
        if fields.len() <= label.max(cited).max(citing) {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected {count} columns, found {}", fields.len()),
            });
        }
        let token = fields[label].trim().to_ascii_lowercase();
        if token == "x" {
            continue;
        }
        let polarity = Polarity::from_token(&token).ok_or_else(|| Error::Parse {
            line: lineno,
            message: format!("unknown sentiment label {token:?}"),
        })?;
        let cited_id = fields[cited].trim().to_string();
        let citing_id = fields[citing].trim().to_string();
        let slot = next
            .entry((cited_id.clone(), citing_id.clone()))
            .or_insert(0);
        let position = *slot;
        *slot += 1;
        let text = text
            .and_then(|t| fields.get(t))
            .map(|s| s.trim())
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maps_source_to_citing_and_drops_excluded() {
        let src = "Source_Paper ID\tTarget_Paper ID\tSentiment\tCitation_Text
E09-3005\tW06-1615\tp\tSCL has been applied successfully.
E09-3005\tW06-1615\tx\tUnrelated sentence.
E09-3005\tW06-1615\tn\tAn attempt was made.
D08-1105\tP07-1033\to\tNeutral mention.
";
        let recs = convert_upstream(src).unwrap();
        assert_eq!(recs.len(), 3);
        assert_eq!(recs[0].cited_id, "W06-1615");
        assert_eq!(recs[0].citing_id, "E09-3005");
        assert_eq!(recs[1].position, 1);
        assert_eq!(recs[1].polarity, Polarity::Negative);
        assert_eq!(recs[2].position, 0);
    }

    #[test]
    fn rejects_unknown_label() {
        let src = "Source_Paper_ID\tTarget_Paper_ID\tSentiment\nE09-3005\tW06-1615\t?\n";
        assert!(matches!(
            convert_upstream(src),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn rejects_header_without_ids() {
        assert!(convert_upstream("a\tb\tc\n").is_err());
    }
}
