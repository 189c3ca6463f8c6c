//! Exhaustive searches: rings, maximally linked sets and least closures.

use itertools::Itertools;
use kalmanson::{
    CircularOrdering, DissimilarityMap, IndexedFamily, Rational, SetFamily, Split, SplitSystem, Subset,
    SymmetricMatrix, TaxonSet,
};

use crate::{refuse, Result, MAX_RING_TAXA, MAX_ROOTED_CLOSURE_TAXA, MAX_SPLIT_CLOSURE_TAXA, MAX_SUBSET_TAXA};

/// One representative per circular ordering of `n` taxa: starts at 0, and
/// for `n ≥ 3` the second entry is smaller than the last.
pub fn all_rings(n: usize) -> Result<Vec<CircularOrdering>> {
    refuse("ring enumeration", n, MAX_RING_TAXA)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    Ok((1..n)
        .permutations(n - 1)
        .filter(|p| p.len() < 2 || p[0] < p[p.len() - 1])
        .map(|p| CircularOrdering::new(std::iter::once(0).chain(p).collect()).expect("permutation"))
        .collect())
}

/// The crossing-sum inequality over every quadruple of ring positions.
pub fn is_kalmanson_brute(d: &DissimilarityMap, ring: &[usize]) -> bool {
    let n = ring.len();
    let at = |a: usize, b: usize| d.get(ring[a], ring[b]);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let cross = at(i, k) + at(j, l);
                    if at(i, j) + at(k, l) > cross || at(l, i) + at(j, k) > cross {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Every ring (as in [`all_rings`]) for which `d` is Kalmanson.
pub fn kalmanson_rings(d: &DissimilarityMap) -> Result<Vec<CircularOrdering>> {
    Ok(all_rings(d.len())?
        .into_iter()
        .filter(|r| is_kalmanson_brute(d, r.as_slice()))
        .collect())
}

/// Subsets whose diameter (diagonal included) grows on adding any outside
/// taxon, each indexed by that diameter.
pub fn brute_maximally_linked(r: &SymmetricMatrix) -> Result<IndexedFamily> {
    let n = r.len();
    refuse("maximally linked scan", n, MAX_SUBSET_TAXA)?;
    let diam = |s: Subset| {
        s.iter()
            .flat_map(|x| s.iter().map(move |y| (x, y)))
            .map(|(x, y)| r.get(x, y))
            .max()
            .expect("non-empty")
    };
    let mut members = Vec::new();
    for bits in 1..1u128 << n {
        let s = Subset::from_bits(bits);
        let d = diam(s);
        let maximal = (0..n).filter(|x| !s.contains(*x)).all(|x| {
            let mut t = s;
            t.insert(x);
            diam(t) > d
        });
        if maximal {
            members.push((s, d));
        }
    }
    Ok(IndexedFamily::new(r.taxa().clone(), members)?)
}

/// Shortest-path sums between leaves `0..n` of a weighted tree given by its
/// edge list.
pub fn path_sum_metric(taxa: &TaxonSet, edges: &[(usize, usize, Rational)]) -> Result<DissimilarityMap> {
    let n = taxa.len();
    let vertices = edges.iter().map(|&(u, v, _)| u.max(v) + 1).max().unwrap_or(n).max(n);
    let mut adj = vec![Vec::new(); vertices];
    for &(u, v, w) in edges {
        adj[u].push((v, w));
        adj[v].push((u, w));
    }
    let mut dist = vec![vec![Rational::from_integer(0); n]; n];
    for (s, row) in dist.iter_mut().enumerate() {
        let mut stack = vec![(s, usize::MAX, Rational::from_integer(0))];
        while let Some((v, parent, acc)) = stack.pop() {
            if v < n {
                row[v] = acc;
            }
            for &(w, len) in &adj[v] {
                if w != parent {
                    stack.push((w, v, acc + len));
                }
            }
        }
    }
    Ok(DissimilarityMap::from_fn(taxa.clone(), |i, j| dist[i][j])?)
}

/// Intersection of every family between `base` and the universe in which
/// each `(pair, needed)` rule holds: if both of `pair` are present, so is
/// all of `needed`. Families are bitmasks over universe indices.
fn least_closed(universe_len: usize, base: u64, violations: &[(u64, u64)]) -> u64 {
    let free: Vec<usize> = (0..universe_len).filter(|k| base & (1 << k) == 0).collect();
    let mut meet = u64::MAX;
    for pick in 0..1u64 << free.len() {
        let mut g = base;
        for (b, &k) in free.iter().enumerate() {
            if pick & (1 << b) != 0 {
                g |= 1 << k;
            }
        }
        let closed = violations
            .iter()
            .all(|&(pair, needed)| g & pair != pair || g & needed == needed);
        if closed {
            meet &= g;
        }
    }
    meet
}

/// The intersection of all unrooted split families containing `s`, found
/// by testing every superset of `s` within the full split universe.
pub fn minimal_split_closure_bruteforce(s: &SplitSystem) -> Result<SplitSystem> {
    let n = s.taxa().len();
    refuse("split closure brute force", n, MAX_SPLIT_CLOSURE_TAXA)?;
    if n < 2 {
        return Ok(s.clone());
    }
    let full = (1u128 << n) - 1;
    // blocks containing taxon 0 other than the full set
    let universe: Vec<u128> = (0..(1u128 << (n - 1)) - 1).map(|b| (b << 1) | 1).collect();
    let index = |block: u128| {
        let canon = if block & 1 == 1 { block } else { full & !block };
        universe.iter().position(|&u| u == canon).expect("proper block")
    };
    let mut violations = Vec::new();
    for (i, &a1) in universe.iter().enumerate() {
        for (j, &a2) in universe.iter().enumerate().skip(i + 1) {
            let (b1, b2) = (full & !a1, full & !a2);
            let parts = [a1 & a2, a1 & b2, b1 & a2, b1 & b2];
            if parts.iter().all(|p| *p != 0) {
                let needed = parts.iter().fold(0u64, |m, p| m | 1 << index(*p));
                violations.push(((1u64 << i) | (1u64 << j), needed));
            }
        }
    }
    let base = s.iter().fold(0u64, |m, sp| m | 1 << index(sp.block_a().bits()));
    let meet = least_closed(universe.len(), base, &violations);
    let splits = (0..universe.len())
        .filter(|k| meet & (1 << k) != 0)
        .map(|k| Split::new(Subset::from_bits(universe[k]), n))
        .collect::<kalmanson::Result<Vec<_>>>()?;
    Ok(SplitSystem::new(s.taxa().clone(), splits)?)
}

/// The intersection of all rooted families containing `f`, found by testing
/// every superset of `f` among the non-empty subsets.
pub fn minimal_rooted_closure_bruteforce(f: &SetFamily) -> Result<SetFamily> {
    let n = f.taxa().len();
    refuse("rooted closure brute force", n, MAX_ROOTED_CLOSURE_TAXA)?;
    let universe: Vec<u128> = (1..1u128 << n).collect();
    let index = |s: u128| (s - 1) as usize;
    let mut violations = Vec::new();
    for (i, &a) in universe.iter().enumerate() {
        for (j, &b) in universe.iter().enumerate().skip(i + 1) {
            let overlap = a & b != 0 && a & !b != 0 && b & !a != 0;
            if overlap {
                let needed = [a & b, a & !b, b & !a, a | b]
                    .iter()
                    .fold(0u64, |m, s| m | 1 << index(*s));
                violations.push(((1u64 << i) | (1u64 << j), needed));
            }
        }
    }
    let base = f.iter().fold(0u64, |m, s| m | 1 << index(s.bits()));
    let meet = least_closed(universe.len(), base, &violations);
    let members = (0..universe.len())
        .filter(|k| meet & (1 << k) != 0)
        .map(|k| Subset::from_bits(universe[k]));
    Ok(SetFamily::new(f.taxa().clone(), members)?)
}
