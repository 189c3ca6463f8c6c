//! From a Kalmanson map to its best-fit PC-tree, with the diagram checks
//! that tie the affine and projective routes together.

mod dot;
mod report;

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::families::{IndexedFamily, SetFamily};
use crate::matrices::{DissimilarityMap, SymmetricMatrix};
use crate::splits::{Split, SplitSystem, WeightedSplitSystem};
use crate::taxa::{CircularOrdering, Rooting, Subset, TaxonSet};
use crate::trees::{PcTree, PqTree};

/// Largest map for which a ring is searched when none is supplied.
pub const RING_SEARCH_LIMIT: usize = 10;

/// Outcome of one commuting-diagram identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramCheck {
    pub name: String,
    pub passed: bool,
    /// What differed, when the check failed.
    pub witness: Option<String>,
}

impl DiagramCheck {
    fn from_outcome(name: &str, outcome: Result<Option<String>>) -> Self {
        let witness = match outcome {
            Ok(w) => w,
            Err(e) => Some(e.to_string()),
        };
        Self {
            name: name.to_string(),
            passed: witness.is_none(),
            witness,
        }
    }
}

/// Everything produced by [`best_fit_pc_tree`].
#[derive(Clone, Debug)]
pub struct AnalysisReport {
    pub map: DissimilarityMap,
    /// Index of the base taxon in the map's taxa.
    pub base: usize,
    pub ring: CircularOrdering,
    /// The split decomposition of the map along `ring`.
    pub decomposition: WeightedSplitSystem,
    /// Splits added by the closure, each carrying weight zero, sorted.
    pub closure_additions: Vec<Split>,
    pub tree: PcTree,
    pub checks: Vec<DiagramCheck>,
}

impl AnalysisReport {
    pub fn taxa(&self) -> &TaxonSet {
        self.map.taxa()
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// The decomposition with every closure addition at weight zero.
    pub fn padded(&self) -> Result<WeightedSplitSystem> {
        self.decomposition.pad(self.closure_additions.iter().copied())
    }
}

/// The intermediate objects of the affine route.
struct Affine {
    rooting: Rooting,
    gromov: SymmetricMatrix,
    pyramid: IndexedFamily,
    pq: PqTree,
    tree: PcTree,
}

fn resolve_ring(d: &DissimilarityMap, ring: Option<&CircularOrdering>) -> Result<CircularOrdering> {
    let ring = match ring {
        Some(r) => r.clone(),
        None => d
            .find_kalmanson_ordering(RING_SEARCH_LIMIT)?
            .ok_or(Error::NoKalmansonOrdering)?,
    };
    d.require_kalmanson(&ring)?;
    Ok(ring)
}

/// Adds the singletons and the whole set. A singleton `{x}` is not
/// maximally linked when the pendant weight at `x` is zero, but every
/// PQ-tree has it, and both lift to trivial splits.
fn with_leaves(f: &SetFamily) -> Result<SetFamily> {
    let n = f.taxa().len();
    let extra = (0..n).map(Subset::singleton).chain([Subset::full(n)]);
    SetFamily::new(f.taxa().clone(), f.iter().chain(extra))
}

fn affine_route(d: &DissimilarityMap, rooting: Rooting, ring: &CircularOrdering) -> Result<Affine> {
    let gromov = d.gromov_product(&rooting)?;
    let ord = rooting.cut(ring)?;
    let pyramid = gromov.maximally_linked_sets(&ord)?;
    let closed = with_leaves(&pyramid.family().rooted_closure())?;
    let pq = PqTree::from_family(&closed, &ord)?;
    let tree = pq.unroot(&rooting)?;
    Ok(Affine {
        rooting,
        gromov,
        pyramid,
        pq,
        tree,
    })
}

fn compare_maps(expected: &DissimilarityMap, got: &DissimilarityMap) -> Option<String> {
    let taxa = expected.taxa();
    for i in 0..expected.len() {
        for j in i..expected.len() {
            let (a, b) = (expected.get(i, j), got.get(i, j));
            if a != b {
                return Some(format!("({},{}): expected {a}, got {b}", taxa.label(i), taxa.label(j)));
            }
        }
    }
    None
}

fn compare_matrices(expected: &SymmetricMatrix, got: &SymmetricMatrix) -> Option<String> {
    let taxa = expected.taxa();
    for i in 0..expected.len() {
        for j in i..expected.len() {
            let (a, b) = (expected.get(i, j), got.get(i, j));
            if a != b {
                return Some(format!("({},{}): expected {a}, got {b}", taxa.label(i), taxa.label(j)));
            }
        }
    }
    None
}

fn compare_systems(left: &SplitSystem, right: &SplitSystem) -> Option<String> {
    let taxa = left.taxa();
    if let Some(s) = left.iter().find(|s| !right.contains(*s)) {
        return Some(format!("{} only on the left", s.format(taxa)));
    }
    right
        .iter()
        .find(|s| !left.contains(*s))
        .map(|s| format!("{} only on the right", s.format(taxa)))
}

fn diagram_checks(d: &DissimilarityMap, affine: &Affine, xi: &WeightedSplitSystem) -> Vec<DiagramCheck> {
    let rooting = &affine.rooting;
    let mut checks = vec![
        DiagramCheck::from_outcome(
            "psi o phi = id",
            affine.gromov.inverse_gromov(rooting).map(|back| compare_maps(d, &back)),
        ),
        DiagramCheck::from_outcome("nu o xi = id", Ok(compare_maps(d, &xi.evaluate()))),
        DiagramCheck::from_outcome(
            "mu o tau = id",
            affine.pyramid.to_matrix().map(|m| compare_matrices(&affine.gromov, &m)),
        ),
        DiagramCheck::from_outcome(
            "nu o eta o tau o phi = id",
            affine
                .pyramid
                .to_weighted_splits(rooting)
                .map(|w| compare_maps(d, &w.evaluate())),
        ),
    ];
    checks.push(DiagramCheck::from_outcome(
        "delta o theta o tau o phi = iota o xi",
        affine
            .pyramid
            .family()
            .rooted_closure()
            .to_split_system(rooting)
            .map(|left| compare_systems(&left, &xi.system().closure())),
    ));
    checks.push(DiagramCheck::from_outcome(
        "beta o kappa = delta o alpha",
        affine
            .pq
            .alpha()
            .to_split_system(rooting)
            .map(|right| compare_systems(&affine.tree.beta(), &right)),
    ));
    checks
}

/// Runs every identity of the commuting diagram for `d`, based at taxon `r`
/// (default: the ring's last taxon) along `ring` (default: searched).
pub fn verify_diagram(
    d: &DissimilarityMap,
    r: Option<usize>,
    ring: Option<&CircularOrdering>,
) -> Result<Vec<DiagramCheck>> {
    let ring = resolve_ring(d, ring)?;
    let rooting = Rooting::new(d.taxa(), r.unwrap_or_else(|| ring.last().expect("non-empty ring")))?;
    let affine = affine_route(d, rooting, &ring)?;
    let xi = d.kalmanson_decompose(&ring)?;
    Ok(diagram_checks(d, &affine, &xi))
}

/// The PC-tree whose split system is the least unrooted family containing
/// the splits of `d`. Built along the affine route through the Gromov
/// product, maximally linked sets, rooted closure and PQ-tree, and compared
/// with the tree of the closed split decomposition.
pub fn best_fit_pc_tree(
    d: &DissimilarityMap,
    r: Option<usize>,
    ring: Option<&CircularOrdering>,
) -> Result<AnalysisReport> {
    if d.len() < 2 {
        return Err(Error::TooFewTaxa { needed: 2, found: d.len() });
    }
    let ring = resolve_ring(d, ring)?;
    let base = r.unwrap_or_else(|| ring.last().expect("non-empty ring"));
    let rooting = Rooting::new(d.taxa(), base)?;
    let affine = affine_route(d, rooting, &ring)?;
    let xi = d.kalmanson_decompose(&ring)?;
    let mut checks = diagram_checks(d, &affine, &xi);

    let closed = xi.system().closure();
    let mut closure_additions = xi.system().closure_additions();
    closure_additions.sort();
    let projective = closed.to_pc_tree(&ring);
    checks.push(DiagramCheck::from_outcome(
        "affine route = projective route",
        projective.map(|p| {
            let (a, b) = (affine.tree.canonical_form(), p.canonical_form());
            (a != b).then(|| format!("{a} vs {b}"))
        }),
    ));
    let beta = affine.tree.beta();
    let positive: BTreeSet<Split> = xi.positive();
    checks.push(DiagramCheck::from_outcome(
        "beta(T) contains the positive splits",
        Ok(positive
            .iter()
            .find(|s| !beta.contains(**s))
            .map(|s| format!("{} missing", s.format(d.taxa())))),
    ));
    let mut report = AnalysisReport {
        map: d.clone(),
        base,
        ring,
        decomposition: xi,
        closure_additions,
        tree: affine.tree,
        checks,
    };
    let padded = report.padded().map(|w| compare_maps(d, &w.evaluate()));
    report.checks.push(DiagramCheck::from_outcome("padded evaluation = map", padded));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::tests::{dq, q};
    use crate::splits::tests::{e5_system, ring, split};
    use crate::trees::PcKind;

    #[test]
    fn quartet_map() {
        let report = best_fit_pc_tree(&dq(), None, None).unwrap();
        assert!(report.all_passed(), "{:?}", report.checks);
        assert_eq!(report.ring.as_slice(), &[0, 1, 2, 3]);
        assert_eq!(report.base, 3);
        assert!(report.closure_additions.is_empty());
        assert_eq!(report.tree.count_kind(PcKind::C), 0);
        assert_eq!(report.tree.count_kind(PcKind::P), 2);
        assert_eq!(report.tree.canonical_form(), "((3,4)P,1,2)P!;");
        assert!(report.decomposition.iter().all(|(_, w)| w == q(1)));
        assert_eq!(report.decomposition.positive().len(), 5);
    }

    #[test]
    fn e5_map() {
        let d = e5_system().evaluate();
        let report = best_fit_pc_tree(&d, None, Some(&ring(&[0, 1, 2, 3, 4]))).unwrap();
        assert!(report.all_passed(), "{:?}", report.checks);
        let t = d.taxa();
        assert_eq!(report.closure_additions, vec![split(t, "1,2,3")]);
        assert_eq!(report.tree.count_kind(PcKind::C), 1);
        let c = report.tree.internal_vertices().find(|&v| report.tree.kind(v) == Some(PcKind::C)).unwrap();
        assert_eq!(report.tree.neighbors(c).len(), 4);
        for base in 0..5 {
            let other = best_fit_pc_tree(&d, Some(base), Some(&ring(&[0, 1, 2, 3, 4]))).unwrap();
            assert_eq!(other.tree.canonical_form(), report.tree.canonical_form());
        }
    }

    #[test]
    fn zero_pendant_weights() {
        // only 12|34 carries weight, so no singleton is maximally linked
        let t = dq().taxa().clone();
        let w = WeightedSplitSystem::new(t.clone(), [(split(&t, "1,2"), q(1))]).unwrap();
        let d = w.evaluate();
        let report = best_fit_pc_tree(&d, None, Some(&ring(&[0, 1, 2, 3]))).unwrap();
        assert!(report.all_passed(), "{:?}", report.checks);
        assert_eq!(report.tree.canonical_form(), "((3,4)P,1,2)P!;");
    }

    #[test]
    fn verify_cases() {
        assert!(verify_diagram(&dq(), None, None).unwrap().iter().all(|c| c.passed));
        let d = e5_system().evaluate();
        let checks = verify_diagram(&d, Some(0), None).unwrap();
        assert_eq!(checks.len(), 6);
        assert!(checks.iter().all(|c| c.passed));
        // raising D(1,3) keeps the map Kalmanson for (1,2,3,4)
        let bumped = DissimilarityMap::from_fn(dq().taxa().clone(), |i, j| {
            dq().get(i, j) + if (i, j) == (0, 2) || (i, j) == (2, 0) { q(1) } else { q(0) }
        })
        .unwrap();
        assert!(verify_diagram(&bumped, None, Some(&ring(&[0, 1, 2, 3]))).unwrap().iter().all(|c| c.passed));
        assert!(matches!(
            verify_diagram(&dq(), None, Some(&ring(&[0, 2, 1, 3]))),
            Err(Error::NotKalmanson(_))
        ));
    }

    #[test]
    fn refusals() {
        let five = DissimilarityMap::from_fn(crate::taxa::TaxonSet::numbered(5), |i, j| {
            if i == j {
                q(0)
            } else if (i, j) == (0, 1) || (i, j) == (1, 0) {
                q(2)
            } else {
                q(1)
            }
        })
        .unwrap();
        assert_eq!(best_fit_pc_tree(&five, None, None).unwrap_err(), Error::NoKalmansonOrdering);
        let big = DissimilarityMap::zero(crate::taxa::TaxonSet::numbered(11));
        assert!(matches!(best_fit_pc_tree(&big, None, None), Err(Error::SearchRefused { .. })));
        let one = DissimilarityMap::zero(crate::taxa::TaxonSet::numbered(1));
        assert!(matches!(best_fit_pc_tree(&one, None, None), Err(Error::TooFewTaxa { .. })));
    }
}
