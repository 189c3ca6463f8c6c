//! Extended Newick: `(child,…)K` with `K` one of `P`, `Q`, `C`. Rooted trees
//! end with `;`, unrooted ones with `!;`.

use std::fmt;

use super::{PcKind, PcTree, PqKind, PqNode, PqTree};
use crate::error::{Error, Result};
use crate::taxa::TaxonSet;

/// A parsed tree of either flavour.
#[derive(Clone, Debug)]
pub enum Tree {
    Pq(PqTree),
    Pc(PcTree),
}

impl Tree {
    pub fn taxa(&self) -> &TaxonSet {
        match self {
            Tree::Pq(t) => t.taxa(),
            Tree::Pc(t) => t.taxa(),
        }
    }

    pub fn canonical_form(&self) -> String {
        match self {
            Tree::Pq(t) => t.canonical_form(),
            Tree::Pc(t) => t.canonical_form(),
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_form())
    }
}

/// Two trees are equivalent when their canonical forms coincide.
pub fn trees_equivalent(a: &Tree, b: &Tree) -> bool {
    a.canonical_form() == b.canonical_form()
}

fn min_direction(children: Vec<String>) -> Vec<String> {
    let mut reversed = children.clone();
    reversed.reverse();
    if reversed.join(",") < children.join(",") {
        reversed
    } else {
        children
    }
}

fn wrap(children: &[String], kind: char) -> String {
    format!("({}){kind}", children.join(","))
}

impl PqTree {
    /// Least serialization over P-permutations and Q-reversals.
    pub fn canonical_form(&self) -> String {
        fn canon(t: &PqTree, v: &PqNode) -> String {
            match v {
                PqNode::Leaf(i) => t.taxa.label(*i).to_string(),
                PqNode::Internal(kind, children) => {
                    let mut parts: Vec<String> = children.iter().map(|c| canon(t, c)).collect();
                    match kind {
                        PqKind::P => {
                            parts.sort();
                            wrap(&parts, 'P')
                        }
                        PqKind::Q => wrap(&min_direction(parts), 'Q'),
                    }
                }
            }
        }
        format!("{};", canon(self, &self.root))
    }

    pub fn parse(text: &str, taxa: Option<&TaxonSet>) -> Result<Self> {
        match parse_newick(text, taxa)? {
            Tree::Pq(t) => Ok(t),
            Tree::Pc(_) => Err(Error::InvalidTree("expected a rooted tree ending in ';'".into())),
        }
    }
}

impl fmt::Display for PqTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_form())
    }
}

impl PcTree {
    /// Least serialization rooted at the internal vertex next to the least
    /// label, over P-permutations and C-reversals; a C-vertex at the root is
    /// also minimised over rotations.
    pub fn canonical_form(&self) -> String {
        let n = self.taxa.len();
        if n == 1 {
            return format!("{}!;", self.taxa.label(0));
        }
        if n == 2 {
            let mut labels = self.taxa.labels().to_vec();
            labels.sort();
            return format!("({},{})!;", labels[0], labels[1]);
        }
        fn canon(t: &PcTree, v: usize, parent: usize) -> String {
            match t.kinds[v] {
                None => t.taxa.label(v).to_string(),
                Some(kind) => {
                    let mut parts: Vec<String> = t
                        .rotation_after(v, parent)
                        .into_iter()
                        .map(|w| canon(t, w, v))
                        .collect();
                    match kind {
                        PcKind::P => {
                            parts.sort();
                            wrap(&parts, 'P')
                        }
                        PcKind::C => wrap(&min_direction(parts), 'C'),
                    }
                }
            }
        }
        let least = (0..n)
            .min_by(|&a, &b| self.taxa.label(a).cmp(self.taxa.label(b)))
            .expect("non-empty");
        let root = self.adj[least][0];
        let mut parts: Vec<String> = self.adj[root].iter().map(|&w| canon(self, w, root)).collect();
        let body = match self.kinds[root] {
            Some(PcKind::C) => {
                let d = parts.len();
                let mut best: Option<Vec<String>> = None;
                for dir in 0..2 {
                    for s in 0..d {
                        let cand: Vec<String> = (0..d).map(|k| parts[(s + k) % d].clone()).collect();
                        if best.as_ref().is_none_or(|b| cand.join(",") < b.join(",")) {
                            best = Some(cand);
                        }
                    }
                    if dir == 0 {
                        parts.reverse();
                    }
                }
                wrap(&best.expect("degree at least 4"), 'C')
            }
            _ => {
                parts.sort();
                wrap(&parts, 'P')
            }
        };
        format!("{body}!;")
    }

    pub fn parse(text: &str, taxa: Option<&TaxonSet>) -> Result<Self> {
        match parse_newick(text, taxa)? {
            Tree::Pc(t) => Ok(t),
            Tree::Pq(_) => Err(Error::InvalidTree("expected an unrooted tree ending in '!;'".into())),
        }
    }
}

impl fmt::Display for PcTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_form())
    }
}

enum Raw {
    Leaf(String),
    Internal(Option<char>, Vec<Raw>),
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::InvalidTree(format!("{msg} at offset {} in {:?}", self.pos, self.text))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn node(&mut self) -> Result<Raw> {
        if self.eat('(') {
            let mut children = vec![self.node()?];
            while self.eat(',') {
                children.push(self.node()?);
            }
            if !self.eat(')') {
                return Err(self.err("expected ')' or ','"));
            }
            let kind = match self.peek() {
                Some(c @ ('P' | 'Q' | 'C')) => {
                    self.pos += 1;
                    Some(c)
                }
                _ => None,
            };
            return Ok(Raw::Internal(kind, children));
        }
        let start = self.pos;
        while self.pos < self.chars.len() {
            let c = self.chars[self.pos];
            if c.is_whitespace() || "(),;:!".contains(c) {
                break;
            }
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a label"));
        }
        Ok(Raw::Leaf(self.chars[start..self.pos].iter().collect()))
    }
}

fn collect_labels(raw: &Raw, out: &mut Vec<String>) {
    match raw {
        Raw::Leaf(l) => out.push(l.clone()),
        Raw::Internal(_, children) => children.iter().for_each(|c| collect_labels(c, out)),
    }
}

fn resolve_taxa(raw: &Raw, taxa: Option<&TaxonSet>) -> Result<(TaxonSet, Vec<String>)> {
    let mut labels = Vec::new();
    collect_labels(raw, &mut labels);
    let taxa = match taxa {
        Some(t) => t.clone(),
        None => TaxonSet::new(labels.iter().cloned())?,
    };
    let mut seen = vec![false; taxa.len()];
    for l in &labels {
        let i = taxa.require(l)?;
        if seen[i] {
            return Err(Error::InvalidTree(format!("label {l} appears twice")));
        }
        seen[i] = true;
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(Error::InvalidTree(format!("taxon {} has no leaf", taxa.label(i))));
    }
    Ok((taxa, labels))
}

fn to_pq(raw: &Raw, taxa: &TaxonSet) -> Result<PqNode> {
    match raw {
        Raw::Leaf(l) => Ok(PqNode::Leaf(taxa.require(l)?)),
        Raw::Internal(kind, children) => {
            let kind = match kind {
                None | Some('P') => PqKind::P,
                Some('Q') => PqKind::Q,
                Some(c) => return Err(Error::InvalidTree(format!("vertex kind {c} in a rooted tree"))),
            };
            let nodes = children.iter().map(|c| to_pq(c, taxa)).collect::<Result<_>>()?;
            Ok(PqNode::Internal(kind, nodes))
        }
    }
}

fn add_pc(
    raw: &Raw,
    parent: Option<usize>,
    taxa: &TaxonSet,
    kinds: &mut Vec<Option<PcKind>>,
    adj: &mut Vec<Vec<usize>>,
) -> Result<usize> {
    match raw {
        Raw::Leaf(l) => {
            let id = taxa.require(l)?;
            adj[id].extend(parent);
            Ok(id)
        }
        Raw::Internal(kind, children) => {
            let kind = match kind {
                None | Some('P') => PcKind::P,
                Some('C') => PcKind::C,
                Some(c) => return Err(Error::InvalidTree(format!("vertex kind {c} in an unrooted tree"))),
            };
            let id = adj.len();
            kinds.push(Some(kind));
            adj.push(Vec::new());
            let mut rotation = Vec::with_capacity(children.len() + 1);
            for c in children {
                rotation.push(add_pc(c, Some(id), taxa, kinds, adj)?);
            }
            rotation.extend(parent);
            adj[id] = rotation;
            Ok(id)
        }
    }
}

/// Reads a tree. Taxa are taken from `taxa` if given, otherwise from the
/// leaf labels in order of appearance. A missing kind letter means `P`.
pub fn parse_newick(text: &str, taxa: Option<&TaxonSet>) -> Result<Tree> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0, text };
    let raw = p.node()?;
    let unrooted = p.eat('!');
    if !p.eat(';') {
        return Err(p.err("expected ';'"));
    }
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    let (taxa, _) = resolve_taxa(&raw, taxa)?;
    if !unrooted {
        let root = to_pq(&raw, &taxa)?;
        return PqTree::new(taxa, root).map(Tree::Pq);
    }
    let n = taxa.len();
    if n == 2 {
        if let Raw::Internal(None | Some('P'), children) = &raw {
            if children.len() == 2 {
                return PcTree::new(taxa, Vec::new()).map(Tree::Pc);
            }
        }
    }
    let mut kinds = vec![None; n];
    let mut adj = vec![Vec::new(); n];
    add_pc(&raw, None, &taxa, &mut kinds, &mut adj)?;
    PcTree::checked(taxa, kinds, adj).map(Tree::Pc)
}
