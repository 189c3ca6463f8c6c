//! Line handling shared by the split and family file formats.

use crate::error::{Error, Result};
use crate::taxa::TaxonSet;

const TAXA_HEADER: &str = "taxa:";

/// Content lines (1-based line number, trimmed text) plus the taxon list
/// from a `# taxa: a,b,c` header if one is present.
pub(crate) fn content_lines(text: &str) -> Result<(Option<TaxonSet>, Vec<(usize, &str)>)> {
    let mut header = None;
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(list) = comment.trim().strip_prefix(TAXA_HEADER) {
                if header.is_some() {
                    return Err(Error::Parse {
                        line: i + 1,
                        message: "repeated taxa header".into(),
                    });
                }
                let labels = list.split(',').map(str::trim).filter(|l| !l.is_empty());
                header = Some(TaxonSet::new(labels).map_err(|e| Error::Parse {
                    line: i + 1,
                    message: e.to_string(),
                })?);
            }
            continue;
        }
        if !line.is_empty() {
            lines.push((i + 1, line));
        }
    }
    Ok((header, lines))
}

pub(crate) fn taxa_header(taxa: &TaxonSet) -> String {
    format!("# {TAXA_HEADER} {}", taxa.labels().join(","))
}

/// Resolves a comma-separated label list, reporting failures against `line`.
pub(crate) fn labels_at(taxa: &TaxonSet, text: &str, line: usize) -> Result<Vec<usize>> {
    taxa.parse_list(text).map_err(|e| Error::Parse {
        line,
        message: e.to_string(),
    })
}
