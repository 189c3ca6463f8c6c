//! Text form of an [`AnalysisReport`]: sections headed `== name ==`, each
//! holding the artifact in its own file format.

use std::fmt;

use super::{AnalysisReport, DiagramCheck};
use crate::error::{Error, Result};
use crate::matrices::DissimilarityMap;
use crate::splits::{SplitSystem, WeightedSplitSystem};
use crate::taxa::CircularOrdering;
use crate::trees::PcTree;

const SECTIONS: [&str; 7] = ["map", "base", "ring", "decomposition", "closure", "tree", "checks"];

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let taxa = self.taxa();
        writeln!(f, "== map ==")?;
        write!(f, "{}", self.map)?;
        writeln!(f, "== base ==")?;
        writeln!(f, "{}", taxa.label(self.base))?;
        writeln!(f, "== ring ==")?;
        writeln!(f, "{}", self.ring.format(taxa))?;
        writeln!(f, "== decomposition ==")?;
        write!(f, "{}", self.decomposition)?;
        writeln!(f, "== closure ==")?;
        for s in &self.closure_additions {
            writeln!(f, "{}", s.format(taxa))?;
        }
        writeln!(f, "== tree ==")?;
        writeln!(f, "{}", self.tree)?;
        writeln!(f, "== checks ==")?;
        for c in &self.checks {
            match &c.witness {
                None => writeln!(f, "{}: pass", c.name)?,
                Some(w) => writeln!(f, "{}: fail: {w}", c.name)?,
            }
        }
        Ok(())
    }
}

/// Moves a parse error inside a section to the line number in the whole
/// report.
fn shift(e: Error, offset: usize) -> Error {
    match e {
        Error::Parse { line, message } => Error::Parse {
            line: line + offset,
            message,
        },
        other => other,
    }
}

fn fail(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

impl AnalysisReport {
    /// Reads the text written by `Display`.
    pub fn parse(text: &str) -> Result<Self> {
        // (name, line number of the header, body)
        let mut sections: Vec<(String, usize, String)> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if let Some(name) = trimmed.strip_prefix("== ").and_then(|r| r.strip_suffix(" ==")) {
                sections.push((name.to_string(), i + 1, String::new()));
            } else if let Some((_, _, body)) = sections.last_mut() {
                body.push_str(line);
                body.push('\n');
            } else if !trimmed.is_empty() {
                return Err(fail(i + 1, "content before the first section"));
            }
        }
        let names: Vec<&str> = sections.iter().map(|(n, _, _)| n.as_str()).collect();
        if names != SECTIONS {
            return Err(fail(1, format!("expected sections {SECTIONS:?}, found {names:?}")));
        }
        let body = |k: usize| (sections[k].2.as_str(), sections[k].1);
        let single = |k: usize| -> Result<String> {
            let (text, at) = body(k);
            let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
            match lines.as_slice() {
                [one] => Ok(one.to_string()),
                _ => Err(fail(at, format!("section {} must hold one line", SECTIONS[k]))),
            }
        };

        let (map_text, at) = body(0);
        let map = DissimilarityMap::parse(map_text).map_err(|e| shift(e, at))?;
        let taxa = map.taxa().clone();
        let base = taxa.require(&single(1)?)?;
        let ring = CircularOrdering::parse(&taxa, &single(2)?)?;
        let (dec_text, at) = body(3);
        let decomposition = WeightedSplitSystem::parse(dec_text, Some(&taxa)).map_err(|e| shift(e, at))?;
        let (closure_text, at) = body(4);
        let closure = if closure_text.trim().is_empty() {
            Vec::new()
        } else {
            let header = format!("# taxa: {}\n", taxa.labels().join(","));
            let parsed = SplitSystem::parse(&(header + closure_text), Some(&taxa)).map_err(|e| shift(e, at - 1))?;
            parsed.nontrivial().collect()
        };
        let tree = PcTree::parse(&single(5)?, Some(&taxa))?;
        let (checks_text, at) = body(6);
        let mut checks = Vec::new();
        for (k, line) in checks_text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (name, rest) = line.split_once(": ").ok_or_else(|| fail(at + k + 1, "expected `name: pass|fail`"))?;
            let witness = match rest.split_once(": ") {
                None if rest == "pass" => None,
                Some(("fail", w)) => Some(w.to_string()),
                _ => return Err(fail(at + k + 1, format!("bad check status `{rest}`"))),
            };
            checks.push(DiagramCheck {
                name: name.to_string(),
                passed: witness.is_none(),
                witness,
            });
        }
        Ok(Self {
            map,
            base,
            ring,
            decomposition,
            closure_additions: closure,
            tree,
            checks,
        })
    }
}
