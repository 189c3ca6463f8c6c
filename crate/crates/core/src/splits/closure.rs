use std::collections::BTreeSet;

use super::{Split, SplitSystem};

impl SplitSystem {
    /// The least unrooted split family containing this system: for every
    /// incompatible pair the four derived splits are added until nothing
    /// changes.
    pub fn closure(&self) -> SplitSystem {
        let mut present: BTreeSet<Split> = self.splits.clone();
        let mut list: Vec<Split> = present.iter().copied().collect();
        // each split meets every split that precedes it in `list` exactly once
        let mut k = 0;
        while k < list.len() {
            let s = list[k];
            for m in 0..k {
                if let Some(derived) = s.derived(list[m]) {
                    for d in derived {
                        if present.insert(d) {
                            list.push(d);
                        }
                    }
                }
            }
            k += 1;
        }
        SplitSystem::from_set(self.taxa.clone(), present)
    }

    /// Splits of the closure that are not already present.
    pub fn closure_additions(&self) -> Vec<Split> {
        self.closure().iter().filter(|s| !self.contains(*s)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::splits::tests::{e5_system, ring, split};
    use crate::taxa::TaxonSet;

    #[test]
    fn compatible_system_is_closed() {
        let t = TaxonSet::numbered(5);
        let s = SplitSystem::new(t.clone(), [split(&t, "1,2"), split(&t, "4,5")]).unwrap();
        assert_eq!(s.closure(), s);
    }

    #[test]
    fn crossing_quartet_closes_to_all_circular_splits() {
        let t = TaxonSet::numbered(4);
        let s = SplitSystem::new(t.clone(), [split(&t, "1,2"), split(&t, "2,3")]).unwrap();
        let c = SplitSystem::circular_splits_of(t, &ring(&[0, 1, 2, 3])).unwrap();
        assert_eq!(s.closure(), c);
        assert!(s.closure_additions().is_empty());
    }

    #[test]
    fn e5_gains_one_split() {
        let t = TaxonSet::numbered(5);
        let s = e5_system().system().clone();
        assert_eq!(s.closure_additions(), vec![split(&t, "1,2,3")]);
        assert!(s.closure().is_unrooted_family().is_ok());
    }

    #[test]
    fn closure_is_idempotent_and_extensive() {
        let t = TaxonSet::numbered(6);
        let s = SplitSystem::new(
            t.clone(),
            [split(&t, "1,2"), split(&t, "2,3,4"), split(&t, "4,5"), split(&t, "3,4")],
        )
        .unwrap();
        let c = s.closure();
        assert!(s.is_subset(&c));
        assert_eq!(c.closure(), c);
        assert!(c.is_unrooted_family().is_ok());
        assert!(c.is_circular(&ring(&[0, 1, 2, 3, 4, 5])).is_ok());
    }
}
