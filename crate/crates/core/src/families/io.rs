//! Family file format: one member per line as comma-separated labels, with
//! an optional `: value` index.

use std::fmt;

use super::{IndexedFamily, SetFamily};
use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::taxa::{Subset, TaxonSet};
use crate::textio::{content_lines, labels_at, taxa_header};

/// Taxa come from `taxa`, else the header, else every label in order of
/// first appearance.
fn parse_members(
    text: &str,
    taxa: Option<&TaxonSet>,
) -> Result<(TaxonSet, Vec<(Subset, Option<Rational>)>)> {
    let (header, lines) = content_lines(text)?;
    let split_line = |body: &str| -> (String, Option<String>) {
        match body.split_once(':') {
            Some((m, v)) => (m.trim().to_string(), Some(v.trim().to_string())),
            None => (body.to_string(), None),
        }
    };
    let taxa = match (taxa, header) {
        (Some(t), Some(h)) if *t != h => return Err(Error::TaxaMismatch),
        (Some(t), _) => t.clone(),
        (None, Some(h)) => h,
        (None, None) => {
            let mut labels: Vec<String> = Vec::new();
            for (_, body) in &lines {
                for l in split_line(body).0.split(',').map(str::trim) {
                    if !l.is_empty() && !labels.iter().any(|x| x == l) {
                        labels.push(l.to_string());
                    }
                }
            }
            TaxonSet::new(labels).map_err(|e| Error::Parse {
                line: 1,
                message: e.to_string(),
            })?
        }
    };
    let mut members = Vec::with_capacity(lines.len());
    for (line, body) in lines {
        let (list, value) = split_line(body);
        let idx = labels_at(&taxa, &list, line)?;
        let member: Subset = idx.iter().copied().collect();
        if member.is_empty() || member.len() != idx.len() {
            return Err(Error::Parse {
                line,
                message: "a member lists distinct labels and is non-empty".into(),
            });
        }
        let value = value
            .map(|v| parse_rational(&v).map_err(|message| Error::Parse { line, message }))
            .transpose()?;
        members.push((member, value));
    }
    Ok((taxa, members))
}

impl SetFamily {
    /// Reads a family file; index values, if present, are ignored.
    pub fn parse(text: &str, taxa: Option<&TaxonSet>) -> Result<Self> {
        let (taxa, members) = parse_members(text, taxa)?;
        Self::new(taxa, members.into_iter().map(|(m, _)| m))
    }
}

impl IndexedFamily {
    /// Reads a family file in which every member carries a value.
    pub fn parse(text: &str, taxa: Option<&TaxonSet>) -> Result<Self> {
        let (taxa, members) = parse_members(text, taxa)?;
        let indexed = members
            .into_iter()
            .map(|(m, v)| {
                v.map(|v| (m, v)).ok_or_else(|| {
                    Error::InvalidMember(format!("{} has no index value", taxa.format_subset(m)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(taxa, indexed)
    }
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", taxa_header(self.taxa()))?;
        for m in self.iter() {
            writeln!(f, "{}", self.format_member(m))?;
        }
        Ok(())
    }
}

impl fmt::Display for IndexedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", taxa_header(self.taxa()))?;
        for (m, v) in self.iter() {
            writeln!(f, "{}: {}", self.family().format_member(m), format_rational(&v))?;
        }
        Ok(())
    }
}
