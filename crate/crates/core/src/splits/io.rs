//! Split file format: one `a,b|c,d` split per line with an optional weight.

use std::fmt;

use super::{Split, SplitSystem, WeightedSplitSystem};
use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::taxa::{Subset, TaxonSet};
use crate::textio::{content_lines, labels_at, taxa_header};

struct Entry {
    split: Split,
    weight: Option<Rational>,
}

/// Taxa come from `taxa`, else the header, else the labels of the first
/// split in the order written.
fn parse_entries(text: &str, taxa: Option<&TaxonSet>) -> Result<(TaxonSet, Vec<Entry>)> {
    let (header, lines) = content_lines(text)?;
    let taxa = match (taxa, header) {
        (Some(t), Some(h)) if *t != h => return Err(Error::TaxaMismatch),
        (Some(t), _) => t.clone(),
        (None, Some(h)) => h,
        (None, None) => {
            let Some((line, first)) = lines.first() else {
                return Err(Error::Parse {
                    line: 1,
                    message: "no splits and no taxa header".into(),
                });
            };
            let blocks = first.split_whitespace().next().unwrap_or_default();
            let labels = blocks.split(['|', ',']).map(str::trim).filter(|l| !l.is_empty());
            TaxonSet::new(labels).map_err(|e| Error::Parse {
                line: *line,
                message: e.to_string(),
            })?
        }
    };
    let mut entries = Vec::with_capacity(lines.len());
    for (line, body) in lines {
        let mut fields = body.split_whitespace();
        let blocks = fields.next().unwrap_or_default();
        let weight = fields
            .next()
            .map(|w| {
                parse_rational(w).map_err(|message| Error::Parse { line, message })
            })
            .transpose()?;
        if let Some(extra) = fields.next() {
            return Err(Error::Parse {
                line,
                message: format!("unexpected field `{extra}`"),
            });
        }
        let Some((a, b)) = blocks.split_once('|') else {
            return Err(Error::Parse {
                line,
                message: format!("expected `block|block`, found `{blocks}`"),
            });
        };
        let (a, b) = (labels_at(&taxa, a, line)?, labels_at(&taxa, b, line)?);
        let block: Subset = a.iter().copied().collect();
        let other: Subset = b.iter().copied().collect();
        if a.len() + b.len() != taxa.len()
            || block.len() != a.len()
            || other.len() != b.len()
            || !(block & other).is_empty()
        {
            return Err(Error::Parse {
                line,
                message: "blocks must partition the taxa".into(),
            });
        }
        let split = Split::new(block, taxa.len()).map_err(|e| Error::Parse {
            line,
            message: e.to_string(),
        })?;
        entries.push(Entry { split, weight });
    }
    Ok((taxa, entries))
}

impl SplitSystem {
    /// Reads a split file; weights, if present, are ignored.
    pub fn parse(text: &str, taxa: Option<&TaxonSet>) -> Result<Self> {
        let (taxa, entries) = parse_entries(text, taxa)?;
        Self::new(taxa, entries.into_iter().map(|e| e.split))
    }
}

impl WeightedSplitSystem {
    /// Reads a split file; a split without a weight gets weight 0.
    pub fn parse(text: &str, taxa: Option<&TaxonSet>) -> Result<Self> {
        let (taxa, entries) = parse_entries(text, taxa)?;
        Self::new(
            taxa,
            entries
                .into_iter()
                .map(|e| (e.split, e.weight.unwrap_or_default())),
        )
    }
}

impl fmt::Display for SplitSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", taxa_header(&self.taxa))?;
        for s in self.iter() {
            writeln!(f, "{}", s.format(&self.taxa))?;
        }
        Ok(())
    }
}

impl fmt::Display for WeightedSplitSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", taxa_header(self.taxa()))?;
        for (s, w) in self.iter() {
            writeln!(f, "{} {}", s.format(self.taxa()), format_rational(&w))?;
        }
        Ok(())
    }
}
