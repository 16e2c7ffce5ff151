use super::{sort_sets, Matroid};
use crate::bitset::{all_subsets, ElementSet};

impl Matroid {
    /// Flats `Z` such that `M|Z` has no coloops.
    pub fn cyclic_flats(&self) -> Vec<ElementSet> {
        let mut out: Vec<ElementSet> = all_subsets(self.len())
            .filter(|&z| self.is_cyclic_flat(z))
            .collect();
        sort_sets(&mut out);
        out
    }

    pub fn is_cyclic_flat(&self, z: ElementSet) -> bool {
        let r = self.rank(z);
        self.is_flat(z) && z.iter().all(|e| self.rank(z.without(e)) == r)
    }

    /// Every cyclic flat containing one of `e`, `f` contains both.
    pub fn are_clones(&self, e: usize, f: usize) -> bool {
        self.cyclic_flats()
            .iter()
            .all(|z| z.contains(e) == z.contains(f))
    }

    /// Maximal sets of pairwise clones. Cloning is an equivalence relation, so
    /// these partition the ground set.
    pub fn clonal_classes(&self) -> Vec<ElementSet> {
        let flats = self.cyclic_flats();
        let signature = |e: usize| -> Vec<bool> { flats.iter().map(|z| z.contains(e)).collect() };
        let mut classes: Vec<(Vec<bool>, ElementSet)> = Vec::new();
        for e in 0..self.len() {
            let sig = signature(e);
            match classes.iter_mut().find(|(s, _)| *s == sig) {
                Some((_, set)) => *set = set.with(e),
                None => classes.push((sig, ElementSet::singleton(e))),
            }
        }
        classes.into_iter().map(|(_, s)| s).collect()
    }

    /// Clonal classes of rank exactly 2.
    pub fn rank2_clonal_classes(&self) -> Vec<ElementSet> {
        let mut out: Vec<ElementSet> = self
            .clonal_classes()
            .into_iter()
            .filter(|c| self.rank(*c) == 2)
            .collect();
        sort_sets(&mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::m_from_circuits;
    use super::*;

    #[test]
    fn uniform_examples() {
        let u24 = Matroid::uniform_abc(2, 4);
        assert_eq!(u24.cyclic_flats(), vec![ElementSet::EMPTY, u24.ground()]);
        assert_eq!(u24.rank2_clonal_classes(), vec![u24.ground()]);
        let u12 = Matroid::uniform_abc(1, 2);
        assert!(u12.are_clones(0, 1));
    }

    #[test]
    fn clones_are_an_equivalence() {
        // a, b parallel; c, d, e a triangle through the pair's closure.
        let m = m_from_circuits("a b c d e", &["a b", "c d e"]);
        for e in 0..m.len() {
            for f in 0..m.len() {
                assert_eq!(m.are_clones(e, f), m.are_clones(f, e));
                for g in 0..m.len() {
                    if m.are_clones(e, f) && m.are_clones(f, g) {
                        assert!(m.are_clones(e, g));
                    }
                }
            }
        }
        let classes = m.clonal_classes();
        assert_eq!(classes.iter().map(|c| c.len()).sum::<usize>(), m.len());
    }
}
