use super::{sort_sets, Matroid};
use crate::bitset::{all_subsets, ElementSet};
use crate::error::{Error, Result};

/// A partition `(side_a, side_b)` of the ground set with its order `λ(side_a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Separation {
    pub side_a: ElementSet,
    pub side_b: ElementSet,
    pub order: usize,
}

impl Separation {
    /// Order-insensitive key: the side holding the smallest element comes first.
    pub fn normalized(self) -> Separation {
        let least = (self.side_a | self.side_b).first();
        if least.is_some_and(|f| !self.side_a.contains(f)) {
            Separation {
                side_a: self.side_b,
                side_b: self.side_a,
                order: self.order,
            }
        } else {
            self
        }
    }
}

impl Matroid {
    /// `r(A) + r(E - A) - r(M)`.
    pub fn lambda(&self, a: ElementSet) -> usize {
        self.rank(a) + self.rank(self.ground() - a) - self.full_rank()
    }

    pub fn is_k_separating(&self, a: ElementSet, k: usize) -> bool {
        self.lambda(a) < k
    }

    /// Whether `(A, E - A)` is a k-separation.
    pub fn is_k_separation(&self, a: ElementSet, k: usize) -> bool {
        let b = self.ground() - a;
        a.len() >= k && b.len() >= k && self.lambda(a) < k
    }

    /// All k-separations, each listed once with the smallest element in
    /// `side_a`, in increasing numeric order of `side_a`.
    pub fn k_separations(&self, k: usize) -> Result<Vec<Separation>> {
        if k == 0 {
            return Err(Error::pre("k must be at least 1"));
        }
        let n = self.len();
        if n == 0 {
            return Ok(Vec::new());
        }
        let ground = self.ground();
        Ok(all_subsets(n)
            .filter(|a| a.contains(0) && self.is_k_separation(*a, k))
            .map(|a| Separation {
                side_a: a,
                side_b: ground - a,
                order: self.lambda(a),
            })
            .collect())
    }

    /// True if the matroid has no k-separation for any `k < n`.
    pub fn is_n_connected(&self, n: usize) -> bool {
        (1..n).all(|k| self.k_separations(k).map_or(true, |s| s.is_empty()))
    }

    /// Connected components, ordered by their smallest element. Two elements
    /// share a component exactly when some circuit contains both.
    pub fn components(&self) -> Vec<ElementSet> {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for c in self.circuits() {
            let mut it = c.iter();
            if let Some(first) = it.next() {
                for other in it {
                    let (a, b) = (find(&mut parent, first), find(&mut parent, other));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut blocks: Vec<ElementSet> = Vec::new();
        let mut root_block = vec![usize::MAX; n];
        for e in 0..n {
            let r = find(&mut parent, e);
            if root_block[r] == usize::MAX {
                root_block[r] = blocks.len();
                blocks.push(ElementSet::EMPTY);
            }
            blocks[root_block[r]] = blocks[root_block[r]].with(e);
        }
        blocks
    }

    /// At most one component. The empty matroid and single loops or coloops
    /// count as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Components that are minimal non-empty separators, computed from `λ`
    /// alone. Used to cross-check [`Matroid::components`].
    pub fn minimal_separators(&self) -> Vec<ElementSet> {
        let seps: Vec<ElementSet> = all_subsets(self.len())
            .filter(|s| !s.is_empty() && self.lambda(*s) == 0)
            .collect();
        let mut out: Vec<ElementSet> = seps
            .iter()
            .copied()
            .filter(|s| !seps.iter().any(|t| t != s && t.is_subset(*s)))
            .collect();
        out.sort_by_key(|s| s.first());
        out
    }

    /// No circuit of `M|(X ∪ Y)` meets both `X` and `Y`.
    pub fn skew(&self, x: ElementSet, y: ElementSet) -> Result<bool> {
        if x.meets(y) {
            return Err(Error::pre("skew: sets must be disjoint"));
        }
        Ok(self.rank(x) + self.rank(y) == self.rank(x | y))
    }

    /// Skew in the dual matroid.
    pub fn coskew(&self, x: ElementSet, y: ElementSet) -> Result<bool> {
        if x.meets(y) {
            return Err(Error::pre("coskew: sets must be disjoint"));
        }
        Ok(self.corank(x) + self.corank(y) == self.corank(x | y))
    }

    fn require_cocircuit(&self, c: ElementSet) -> Result<()> {
        if self.is_cocircuit(c) {
            Ok(())
        } else {
            Err(Error::pre(format!("{:?} is not a cocircuit", self.names_of(c))))
        }
    }

    /// `M \ C` is connected.
    pub fn is_nonseparating_cocircuit(&self, c: ElementSet) -> Result<bool> {
        self.require_cocircuit(c)?;
        Ok(self.delete(c).is_connected())
    }

    /// Strict reading: `M \ C` must have exactly one component `D` with more
    /// than one element, and every coloop `x` of `M \ C` needs a rank-2 clonal
    /// class `F ⊆ C` and a circuit through `x` meeting `C` in two elements of
    /// `F` and meeting `D`.
    pub fn is_good_cocircuit(&self, c: ElementSet) -> Result<bool> {
        self.require_cocircuit(c)?;
        let rest = self.ground() - c;
        let deletion = self.restrict(rest);
        let positions: Vec<usize> = rest.iter().collect();
        let lift = |s: ElementSet| super::pull_back(s, &positions);
        let big: Vec<ElementSet> = deletion
            .components()
            .into_iter()
            .filter(|b| b.len() > 1)
            .map(lift)
            .collect();
        let [d] = big[..] else {
            return Ok(false);
        };
        let coloops: Vec<usize> = (0..deletion.len())
            .filter(|&i| deletion.is_coloop(i))
            .map(|i| positions[i])
            .collect();
        if coloops.is_empty() {
            return Ok(true);
        }
        let classes: Vec<ElementSet> = self
            .rank2_clonal_classes()
            .into_iter()
            .filter(|f| f.is_subset(c))
            .collect();
        let circuits = self.circuits();
        Ok(coloops.iter().all(|&x| {
            circuits.iter().any(|&circ| {
                let meet = circ & c;
                circ.contains(x)
                    && circ.meets(d)
                    && meet.len() == 2
                    && classes.iter().any(|f| meet.is_subset(*f))
            })
        }))
    }

    /// Maximal 2-separating non-empty proper subsets of `E - A`.
    pub fn wedges(&self, a: ElementSet) -> Result<Vec<ElementSet>> {
        if !self.is_k_separating(a, 2) {
            return Err(Error::pre("wedges: A is not 2-separating"));
        }
        let b = self.ground() - a;
        let candidates: Vec<ElementSet> = b
            .subsets()
            .filter(|z| !z.is_empty() && *z != b && self.is_k_separating(*z, 2))
            .collect();
        let mut out: Vec<ElementSet> = candidates
            .iter()
            .copied()
            .filter(|z| !candidates.iter().any(|w| w != z && z.is_subset(*w)))
            .collect();
        sort_sets(&mut out);
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::super::m_from_circuits;
    use super::*;

    /// U_{2,4} on {a,b,c,e} 2-summed with U_{2,4} on {e,d,f,g}.
    fn double_u24() -> Matroid {
        let mut cs: Vec<String> = Vec::new();
        for side in [["a", "b", "c"], ["d", "f", "g"]] {
            cs.push(side.join(" "));
        }
        for (x, y) in [("a", "b"), ("a", "c"), ("b", "c")] {
            for (u, v) in [("d", "f"), ("d", "g"), ("f", "g")] {
                cs.push(format!("{x} {y} {u} {v}"));
            }
        }
        let refs: Vec<&str> = cs.iter().map(String::as_str).collect();
        m_from_circuits("a b c d f g", &refs)
    }

    #[test]
    fn lambda_examples() {
        let u34 = Matroid::uniform_abc(3, 4);
        assert_eq!(u34.lambda(u34.set_of(&["a", "b"]).unwrap()), 1);
        assert_eq!(u34.lambda(ElementSet::EMPTY), 0);
        let m = double_u24();
        assert_eq!(m.lambda(m.set_of(&["a", "b", "c"]).unwrap()), 1);
    }

    #[test]
    fn k_separation_examples() {
        let seps = Matroid::uniform_abc(3, 4).k_separations(2).unwrap();
        assert_eq!(seps.len(), 3);
        assert!(seps.iter().all(|s| s.side_a.len() == 2 && s.order == 1));
        assert!(Matroid::uniform_abc(2, 4).k_separations(2).unwrap().is_empty());
        assert!(Matroid::uniform_abc(1, 2).k_separations(1).unwrap().is_empty());
        assert!(Matroid::uniform_abc(1, 2).k_separations(0).is_err());
    }

    #[test]
    fn component_examples() {
        assert_eq!(Matroid::uniform_abc(2, 4).components().len(), 1);
        let two_coloops = Matroid::uniform_abc(2, 2);
        assert_eq!(two_coloops.components().len(), 2);
        let l = Matroid::uniform(0, &["l"]).unwrap();
        let t = Matroid::uniform(2, &["a", "b", "c"]).unwrap();
        let s = l.direct_sum(&t).unwrap();
        let comps = s.components();
        assert_eq!(comps, vec![s.set_of(&["a", "b", "c"]).unwrap(), s.set_of(&["l"]).unwrap()]);
        assert_eq!(s.minimal_separators(), comps);
    }

    #[test]
    fn skew_examples() {
        let u24 = Matroid::uniform_abc(2, 4);
        let set = |m: &Matroid, xs: &[&str]| m.set_of(xs).unwrap();
        assert!(u24.skew(set(&u24, &["a"]), set(&u24, &["b"])).unwrap());
        let u34 = Matroid::uniform_abc(3, 4);
        assert!(!u34.skew(set(&u34, &["a", "b"]), set(&u34, &["c", "d"])).unwrap());
        assert!(u34.skew(ElementSet::EMPTY, u34.ground()).unwrap());
        assert!(u34.skew(set(&u34, &["a"]), set(&u34, &["a"])).is_err());
    }

    #[test]
    fn skew_matches_circuit_scan() {
        let m = double_u24();
        let circuits = m.circuits();
        for x in all_subsets(m.len()) {
            for y in (m.ground() - x).subsets() {
                let scan = !circuits
                    .iter()
                    .any(|c| c.is_subset(x | y) && c.meets(x) && c.meets(y));
                assert_eq!(m.skew(x, y).unwrap(), scan);
            }
        }
    }

    #[test]
    fn cocircuit_predicates() {
        let u24 = Matroid::uniform_abc(2, 4);
        let abc = u24.set_of(&["a", "b", "c"]).unwrap();
        assert!(u24.is_nonseparating_cocircuit(abc).unwrap());
        assert!(!u24.is_good_cocircuit(abc).unwrap());
        assert!(u24.is_nonseparating_cocircuit(u24.set_of(&["a"]).unwrap()).is_err());
        assert!(u24.is_good_cocircuit(u24.set_of(&["a", "b"]).unwrap()).is_err());
    }

    #[test]
    fn wedge_examples() {
        let u34 = Matroid::uniform_abc(3, 4);
        let w = u34.wedges(u34.set_of(&["a", "b"]).unwrap()).unwrap();
        assert_eq!(w, vec![u34.set_of(&["c"]).unwrap(), u34.set_of(&["d"]).unwrap()]);
        let m = double_u24();
        let w = m.wedges(m.set_of(&["a", "b", "c"]).unwrap()).unwrap();
        assert_eq!(w.len(), 3);
        assert!(w.iter().all(|z| z.len() == 1));
        let abc = u34.set_of(&["a", "b", "c"]).unwrap();
        assert!(u34.wedges(abc).unwrap().is_empty());
        let u24 = Matroid::uniform_abc(2, 4);
        assert!(u24.wedges(u24.set_of(&["a", "b"]).unwrap()).is_err());
    }
}
