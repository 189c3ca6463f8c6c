//! Square matrix text format: a line holding `n`, then `n` rows of a label
//! followed by `n` rationals.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::taxa::TaxonSet;

pub(super) fn parse_square(text: &str) -> Result<(TaxonSet, Vec<Rational>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (first_line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty input".into(),
    })?;
    let n: usize = header.parse().map_err(|_| Error::Parse {
        line: first_line,
        message: format!("expected the taxon count, found `{header}`"),
    })?;
    if n == 0 {
        return Err(Error::TooFewTaxa { needed: 1, found: 0 });
    }

    let mut labels = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n * n);
    for row in 1..=n {
        let (line, body) = lines.next().ok_or(Error::Parse {
            line: first_line + row,
            message: format!("missing row {row} of {n}"),
        })?;
        let mut fields = body.split_whitespace();
        let label = fields.next().unwrap_or_default();
        labels.push(label.to_string());
        let entries: Vec<&str> = fields.collect();
        if entries.len() != n {
            return Err(Error::Parse {
                line,
                message: format!("row {row} has {} entries, expected {n}", entries.len()),
            });
        }
        for (col, field) in entries.into_iter().enumerate() {
            let v = parse_rational(field).map_err(|message| Error::Entry {
                row,
                col: col + 1,
                message,
            })?;
            values.push(v);
        }
    }
    if let Some((line, extra)) = lines.next() {
        return Err(Error::Parse {
            line,
            message: format!("unexpected trailing content `{extra}`"),
        });
    }
    Ok((TaxonSet::new(labels)?, values))
}

pub(super) fn write_square(
    f: &mut fmt::Formatter<'_>,
    taxa: &TaxonSet,
    values: &[Rational],
) -> fmt::Result {
    let n = taxa.len();
    writeln!(f, "{n}")?;
    for i in 0..n {
        write!(f, "{}", taxa.label(i))?;
        for v in &values[i * n..(i + 1) * n] {
            write!(f, " {}", format_rational(v))?;
        }
        writeln!(f)?;
    }
    Ok(())
}
