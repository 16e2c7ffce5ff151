//! Finite matroids stored explicitly over a small ground set.
//!
//! Element names are kept sorted, so bit `i` of an [`ElementSet`] always means
//! the `i`-th smallest name. Everything derives from a full rank table, which
//! keeps every predicate exact at the sizes this crate targets.

mod clones;
mod connectivity;
pub mod io;
mod sum;

pub use connectivity::*;
pub use sum::*;

use crate::bitset::{all_subsets, ElementSet, Family, MAX_ELEMENTS};
use crate::error::{Error, Result};
use std::collections::BTreeSet;
use std::fmt;

/// Sorted, duplicate-free element names.
fn normalize_names<S: AsRef<str>>(names: &[S]) -> Result<Vec<String>> {
    if names.len() > MAX_ELEMENTS {
        return Err(Error::TooManyElements(names.len()));
    }
    let mut out: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
    out.sort();
    for w in out.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicateElement(w[0].clone()));
        }
    }
    Ok(out)
}

fn lookup(names: &[String], name: &str) -> Result<usize> {
    names
        .binary_search_by(|n| n.as_str().cmp(name))
        .map_err(|_| Error::UnknownElement(name.to_string()))
}

/// A ground set together with an arbitrary family of its subsets.
#[derive(Clone, PartialEq, Eq)]
pub struct SetSystem {
    names: Vec<String>,
    family: Family,
}

impl SetSystem {
    /// Builds a set-system from element names and member sets given by name.
    pub fn from_sets<S: AsRef<str>, T: AsRef<str>>(ground: &[S], sets: &[Vec<T>]) -> Result<Self> {
        let names = normalize_names(ground)?;
        let mut family = Family::empty(names.len());
        for set in sets {
            let mut mask = ElementSet::EMPTY;
            for name in set {
                mask = mask.with(lookup(&names, name.as_ref())?);
            }
            family.insert(mask);
        }
        Ok(SetSystem { names, family })
    }

    /// Builds a set-system from already-sorted names and a family over their
    /// positions.
    pub fn from_family(names: Vec<String>, family: Family) -> Result<Self> {
        let sorted = normalize_names(&names)?;
        if sorted != names {
            return Err(Error::pre("element names must be sorted"));
        }
        if family.ground_size() != names.len() {
            return Err(Error::pre("family ground size does not match names"));
        }
        Ok(SetSystem { names, family })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn ground(&self) -> ElementSet {
        ElementSet::full(self.names.len())
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    #[inline]
    pub fn contains(&self, s: ElementSet) -> bool {
        self.family.contains(s)
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        lookup(&self.names, name)
    }

    pub fn set_of<S: AsRef<str>>(&self, names: &[S]) -> Result<ElementSet> {
        names
            .iter()
            .try_fold(ElementSet::EMPTY, |acc, n| Ok(acc.with(self.index_of(n.as_ref())?)))
    }

    pub fn names_of(&self, set: ElementSet) -> Vec<&str> {
        set.iter().map(|i| self.names[i].as_str()).collect()
    }
}

impl fmt::Debug for SetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sets: Vec<Vec<&str>> = self.family.iter().map(|s| self.names_of(s)).collect();
        f.debug_struct("SetSystem")
            .field("elements", &self.names)
            .field("family", &sets)
            .finish()
    }
}

/// Largest member-of-family subset size for every subset: `table[X]` is the
/// size of a largest `I ⊆ X` with `I` in the family.
fn max_member_table(n: usize, is_member: impl Fn(ElementSet) -> bool) -> Vec<u8> {
    let mut table = vec![0u8; 1 << n];
    for s in all_subsets(n) {
        table[s.index()] = if is_member(s) {
            s.len() as u8
        } else {
            s.iter()
                .map(|i| table[s.without(i).index()])
                .max()
                .unwrap_or(0)
        };
    }
    table
}

/// Decides whether a set-system satisfies the independence axioms.
///
/// Uses the equivalent form "for every set, all maximal members inside it have
/// the same size": for each member `X` the largest set in which `X` is maximal
/// is `E` minus the elements that extend `X`.
pub fn check_matroid(s: &SetSystem) -> bool {
    not_a_matroid_reason(s).is_none()
}

pub(crate) fn not_a_matroid_reason(s: &SetSystem) -> Option<String> {
    let n = s.len();
    if !s.contains(ElementSet::EMPTY) {
        return Some("the empty set is not independent".into());
    }
    for x in s.family.iter() {
        for i in x.iter() {
            if !s.contains(x.without(i)) {
                return Some(format!(
                    "not closed under subsets: {:?} is missing",
                    s.names_of(x.without(i))
                ));
            }
        }
    }
    let table = max_member_table(n, |x| s.contains(x));
    let ground = s.ground();
    for x in s.family.iter() {
        let extenders: ElementSet = (ground - x).iter().filter(|&e| s.contains(x.with(e))).collect();
        let blocker = ground - extenders;
        if table[blocker.index()] as usize != x.len() {
            return Some(format!(
                "augmentation fails: {:?} is maximal in {:?} but not largest",
                s.names_of(x),
                s.names_of(blocker)
            ));
        }
    }
    None
}

/// A matroid with its full rank table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matroid {
    names: Vec<String>,
    rank: Vec<u8>,
}

impl Matroid {
    /// Validates the independence axioms and builds the rank table.
    pub fn new(s: SetSystem) -> Result<Self> {
        if let Some(reason) = not_a_matroid_reason(&s) {
            return Err(Error::NotAMatroid(reason));
        }
        let rank = max_member_table(s.len(), |x| s.contains(x));
        Ok(Matroid {
            names: s.names,
            rank,
        })
    }

    /// Matroid whose dependent sets are exactly the supersets of `circuits`.
    /// The family must satisfy the circuit axioms.
    pub fn from_circuits<S: AsRef<str>>(names: &[S], circuits: &[Vec<S>]) -> Result<Self> {
        let sorted = normalize_names(names)?;
        let masks = circuits
            .iter()
            .map(|c| {
                c.iter()
                    .try_fold(ElementSet::EMPTY, |acc, n| Ok(acc.with(lookup(&sorted, n.as_ref())?)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_circuit_masks(sorted, &masks)
    }

    /// Like [`Matroid::from_circuits`] with sorted names and circuits as masks.
    pub fn from_circuit_masks(names: Vec<String>, circuits: &[ElementSet]) -> Result<Self> {
        let n = names.len();
        let mut dependent = vec![false; 1 << n];
        for c in circuits {
            dependent[c.index()] = true;
        }
        for s in all_subsets(n) {
            if !dependent[s.index()] && s.iter().any(|i| dependent[s.without(i).index()]) {
                dependent[s.index()] = true;
            }
        }
        let mut family = Family::empty(n);
        for s in all_subsets(n) {
            if !dependent[s.index()] {
                family.insert(s);
            }
        }
        Self::new(SetSystem::from_family(names, family)?)
    }

    /// Builds a matroid from a rank function that is already known to be one.
    pub(crate) fn from_rank_fn(names: Vec<String>, f: impl Fn(ElementSet) -> usize) -> Self {
        let n = names.len();
        let rank = all_subsets(n).map(|s| f(s) as u8).collect();
        let m = Matroid { names, rank };
        debug_assert!(m.rank_axioms_hold(), "rank function is not a matroid rank function");
        m
    }

    fn rank_axioms_hold(&self) -> bool {
        let n = self.len();
        all_subsets(n).all(|s| {
            let r = self.rank(s);
            r <= s.len()
                && s.iter().all(|i| {
                    let d = r - self.rank(s.without(i)).min(r);
                    d <= 1 && self.rank(s.without(i)) <= r
                })
        })
    }

    /// The uniform matroid `U_{r,n}` on the given names.
    pub fn uniform<S: AsRef<str>>(r: usize, names: &[S]) -> Result<Self> {
        let names = normalize_names(names)?;
        if r > names.len() {
            return Err(Error::pre(format!("rank {r} exceeds {} elements", names.len())));
        }
        Ok(Self::from_rank_fn(names, |s| s.len().min(r)))
    }

    /// `U_{r,n}` on the names `a`, `b`, `c`, ...
    pub fn uniform_abc(r: usize, n: usize) -> Self {
        let names: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
        Self::uniform(r, &names).expect("valid uniform matroid")
    }

    /// Direct sum of two matroids on disjoint ground sets.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Self> {
        let mut all: Vec<&str> = self.names.iter().map(String::as_str).collect();
        all.extend(other.names.iter().map(String::as_str));
        let names = normalize_names(&all)?;
        let left = self.embedding_into(&names)?;
        let right = other.embedding_into(&names)?;
        Ok(Self::from_rank_fn(names, |s| {
            self.rank(restrict_to(s, &left)) + other.rank(restrict_to(s, &right))
        }))
    }

    /// Position of each of our elements inside `names`.
    fn embedding_into(&self, names: &[String]) -> Result<Vec<usize>> {
        self.names.iter().map(|n| lookup(names, n)).collect()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn ground(&self) -> ElementSet {
        ElementSet::full(self.names.len())
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        lookup(&self.names, name)
    }

    pub fn set_of<S: AsRef<str>>(&self, names: &[S]) -> Result<ElementSet> {
        names
            .iter()
            .try_fold(ElementSet::EMPTY, |acc, n| Ok(acc.with(self.index_of(n.as_ref())?)))
    }

    pub fn names_of(&self, set: ElementSet) -> Vec<&str> {
        set.iter().map(|i| self.names[i].as_str()).collect()
    }

    pub fn names_of_owned(&self, set: ElementSet) -> Vec<String> {
        set.iter().map(|i| self.names[i].clone()).collect()
    }

    #[inline]
    pub fn rank(&self, s: ElementSet) -> usize {
        self.rank[s.index()] as usize
    }

    /// Rank of a set given by names.
    pub fn rank_of<S: AsRef<str>>(&self, names: &[S]) -> Result<usize> {
        Ok(self.rank(self.set_of(names)?))
    }

    pub fn full_rank(&self) -> usize {
        self.rank(self.ground())
    }

    /// Rank in the dual matroid.
    #[inline]
    pub fn corank(&self, s: ElementSet) -> usize {
        s.len() + self.rank(self.ground() - s) - self.full_rank()
    }

    #[inline]
    pub fn is_independent(&self, s: ElementSet) -> bool {
        self.rank(s) == s.len()
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.rank(ElementSet::singleton(e)) == 0
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        self.rank(self.ground().without(e)) < self.full_rank()
    }

    /// Loops or coloops.
    pub fn is_separator_element(&self, e: usize) -> bool {
        self.is_loop(e) || self.is_coloop(e)
    }

    pub fn set_system(&self) -> SetSystem {
        let mut family = Family::empty(self.len());
        for s in all_subsets(self.len()) {
            if self.is_independent(s) {
                family.insert(s);
            }
        }
        SetSystem {
            names: self.names.clone(),
            family,
        }
    }

    pub fn independent_sets(&self) -> impl Iterator<Item = ElementSet> + '_ {
        all_subsets(self.len()).filter(move |&s| self.is_independent(s))
    }

    pub fn bases(&self) -> Vec<ElementSet> {
        let r = self.full_rank();
        all_subsets(self.len())
            .filter(|&s| s.len() == r && self.is_independent(s))
            .collect()
    }

    /// `{e : r(X ∪ e) = r(X)}`.
    pub fn closure(&self, x: ElementSet) -> ElementSet {
        let r = self.rank(x);
        self.ground().iter().filter(|&e| self.rank(x.with(e)) == r).collect()
    }

    /// Closure in the dual matroid.
    pub fn coclosure(&self, x: ElementSet) -> ElementSet {
        let r = self.corank(x);
        self.ground().iter().filter(|&e| self.corank(x.with(e)) == r).collect()
    }

    pub fn is_flat(&self, x: ElementSet) -> bool {
        self.closure(x) == x
    }

    pub fn dual(&self) -> Matroid {
        Matroid::from_rank_fn(self.names.clone(), |s| self.corank(s))
    }

    /// Restriction to `keep`.
    pub fn restrict(&self, keep: ElementSet) -> Matroid {
        let positions: Vec<usize> = keep.iter().collect();
        let names = positions.iter().map(|&i| self.names[i].clone()).collect();
        Matroid::from_rank_fn(names, |s| self.rank(pull_back(s, &positions)))
    }

    pub fn delete(&self, x: ElementSet) -> Matroid {
        self.restrict(self.ground() - x)
    }

    pub fn contract(&self, x: ElementSet) -> Matroid {
        let keep = self.ground() - x;
        let positions: Vec<usize> = keep.iter().collect();
        let names = positions.iter().map(|&i| self.names[i].clone()).collect();
        let rx = self.rank(x);
        Matroid::from_rank_fn(names, |s| self.rank(pull_back(s, &positions) | x) - rx)
    }

    /// Minimal dependent sets, ordered by size then lexicographically.
    pub fn circuits(&self) -> Vec<ElementSet> {
        let mut out: Vec<ElementSet> = all_subsets(self.len())
            .filter(|&s| self.is_circuit(s))
            .collect();
        sort_sets(&mut out);
        out
    }

    #[inline]
    pub fn is_circuit(&self, s: ElementSet) -> bool {
        !s.is_empty() && self.rank(s) + 1 == s.len() && s.iter().all(|i| self.is_independent(s.without(i)))
    }

    pub fn cocircuits(&self) -> Vec<ElementSet> {
        let mut out: Vec<ElementSet> = all_subsets(self.len())
            .filter(|&s| self.is_cocircuit(s))
            .collect();
        sort_sets(&mut out);
        out
    }

    /// Complement of a hyperplane.
    #[inline]
    pub fn is_cocircuit(&self, s: ElementSet) -> bool {
        let h = self.ground() - s;
        !s.is_empty() && self.rank(h) + 1 == self.full_rank() && self.is_flat(h)
    }

    /// Gives every element a new name (`new_names[i]` replaces element `i`).
    pub fn renamed<S: AsRef<str>>(&self, new_names: &[S]) -> Result<Matroid> {
        if new_names.len() != self.len() {
            return Err(Error::pre("renaming must cover every element"));
        }
        let names = normalize_names(new_names)?;
        let target: Vec<usize> = new_names
            .iter()
            .map(|n| lookup(&names, n.as_ref()))
            .collect::<Result<_>>()?;
        // New position j holds old element inverse[j].
        let mut inverse = vec![0; self.len()];
        for (old, &new) in target.iter().enumerate() {
            inverse[new] = old;
        }
        Ok(Matroid::from_rank_fn(names, |s| self.rank(pull_back(s, &inverse))))
    }

    /// Renames a single element.
    pub fn rename_element(&self, from: &str, to: &str) -> Result<Matroid> {
        let i = self.index_of(from)?;
        let mut names = self.names.clone();
        names[i] = to.to_string();
        self.renamed(&names)
    }

    /// Brute-force isomorphism test; only sensible for small ground sets.
    pub fn is_isomorphic(&self, other: &Matroid) -> bool {
        if self.len() != other.len() || self.full_rank() != other.full_rank() {
            return false;
        }
        let n = self.len();
        let profile = |m: &Matroid, i: usize| {
            let mut p: Vec<usize> = m.circuits().iter().filter(|c| c.contains(i)).map(|c| c.len()).collect();
            p.sort();
            p
        };
        let mine: Vec<_> = (0..n).map(|i| profile(self, i)).collect();
        let theirs: Vec<_> = (0..n).map(|i| profile(other, i)).collect();
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn go(
            k: usize,
            a: &Matroid,
            b: &Matroid,
            mine: &[Vec<usize>],
            theirs: &[Vec<usize>],
            perm: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            let n = a.len();
            if k == n {
                return all_subsets(n).all(|s| a.rank(s) == b.rank(pull_back(s, perm)));
            }
            for j in 0..n {
                if used[j] || mine[k] != theirs[j] {
                    continue;
                }
                perm[k] = j;
                used[j] = true;
                // Check every subset of the first k+1 elements that contains k.
                let prefix = ElementSet::full(k);
                let ok = prefix
                    .subsets()
                    .all(|s| a.rank(s.with(k)) == b.rank(pull_back(s.with(k), perm)));
                if ok && go(k + 1, a, b, mine, theirs, perm, used) {
                    return true;
                }
                used[j] = false;
            }
            false
        }
        go(0, self, other, &mine, &theirs, &mut perm, &mut used)
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let circuits: Vec<Vec<&str>> = self.circuits().into_iter().map(|c| self.names_of(c)).collect();
        f.debug_struct("Matroid")
            .field("elements", &self.names)
            .field("rank", &self.full_rank())
            .field("circuits", &circuits)
            .finish()
    }
}

/// Maps a subset of a re-indexed ground set back to the original positions:
/// bit `j` of `s` becomes bit `positions[j]`.
#[inline]
pub(crate) fn pull_back(s: ElementSet, positions: &[usize]) -> ElementSet {
    s.iter().map(|j| positions[j]).collect()
}

/// Inverse of [`pull_back`]: the positions `i` with `s` containing `positions[i]`.
#[inline]
pub(crate) fn restrict_to(s: ElementSet, positions: &[usize]) -> ElementSet {
    positions
        .iter()
        .enumerate()
        .filter(|(_, &p)| s.contains(p))
        .map(|(i, _)| i)
        .collect()
}

/// Deterministic order: size first, then lexicographic on positions.
pub fn sort_sets(sets: &mut [ElementSet]) {
    sets.sort_by_cached_key(|s| s.lex_key());
}

/// Names of a set, sorted, as an owned collection.
pub fn name_set(m: &Matroid, s: ElementSet) -> BTreeSet<String> {
    s.iter().map(|i| m.name(i).to_string()).collect()
}

/// Convenience: a matroid given by name lists, panicking on bad input.
#[cfg(test)]
pub(crate) fn m_from_circuits(ground: &str, circuits: &[&str]) -> Matroid {
    let names: Vec<&str> = ground.split_whitespace().collect();
    let cs: Vec<Vec<&str>> = circuits.iter().map(|c| c.split_whitespace().collect()).collect();
    Matroid::from_circuits(&names, &cs).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ss(ground: &str, sets: &[&str]) -> SetSystem {
        let g: Vec<&str> = ground.split_whitespace().collect();
        let s: Vec<Vec<&str>> = sets.iter().map(|x| x.split_whitespace().collect()).collect();
        SetSystem::from_sets(&g, &s).unwrap()
    }

    /// Literal independence axioms, quantifying over every pair of members.
    fn axioms_brute_force(s: &SetSystem) -> bool {
        let members: Vec<ElementSet> = s.family().iter().collect();
        if !s.contains(ElementSet::EMPTY) {
            return false;
        }
        for &x in &members {
            for sub in x.subsets() {
                if !s.contains(sub) {
                    return false;
                }
            }
        }
        for &x in &members {
            for &y in &members {
                if x.len() < y.len() && !(y - x).iter().any(|e| s.contains(x.with(e))) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn check_matroid_examples() {
        assert!(check_matroid(&ss("a b", &["", "a", "b"])));
        assert!(!check_matroid(&ss("a b", &["", "a b"])));
        // a and b parallel, c free: a valid matroid, as the brute-force
        // axiom check confirms.
        let s = ss("a b c", &["", "a", "b", "c", "a c", "b c"]);
        assert!(axioms_brute_force(&s));
        assert!(check_matroid(&s));
        // Genuine augmentation failure: {c} cannot be extended from {a, b}.
        let bad = ss("a b c", &["", "a", "b", "c", "a b"]);
        assert!(!axioms_brute_force(&bad));
        assert!(!check_matroid(&bad));
    }

    #[test]
    fn check_matroid_agrees_with_axioms_exhaustively_up_to_three() {
        for n in 0..=3usize {
            let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
            let universe = 1u64 << (1 << n);
            for fam in 0..universe {
                let mut family = Family::empty(n);
                for s in all_subsets(n) {
                    if fam >> s.index() & 1 == 1 {
                        family.insert(s);
                    }
                }
                let s = SetSystem::from_family(names.clone(), family).unwrap();
                assert_eq!(check_matroid(&s), axioms_brute_force(&s), "{s:?}");
            }
        }
    }

    #[test]
    fn rank_examples() {
        let u24 = Matroid::uniform_abc(2, 4);
        assert_eq!(u24.rank_of(&["a", "b", "c"]).unwrap(), 2);
        assert_eq!(u24.rank(ElementSet::EMPTY), 0);
        assert!(matches!(u24.rank_of(&["z"]), Err(Error::UnknownElement(_))));
    }

    #[test]
    fn closure_examples() {
        let u24 = Matroid::uniform_abc(2, 4);
        let ab = u24.set_of(&["a", "b"]).unwrap();
        assert_eq!(u24.closure(ab), u24.ground());
        assert_eq!(u24.closure(u24.ground()), u24.ground());
        let u34 = Matroid::uniform_abc(3, 4);
        assert_eq!(u34.closure(ab), ab);
    }

    #[test]
    fn dual_examples() {
        let u24 = Matroid::uniform_abc(2, 4);
        assert_eq!(u24.dual(), u24);
        assert_eq!(Matroid::uniform_abc(3, 4).dual(), Matroid::uniform_abc(1, 4));
        assert_eq!(Matroid::uniform_abc(0, 1).dual(), Matroid::uniform_abc(1, 1));
    }

    #[test]
    fn minor_examples() {
        let u24 = Matroid::uniform_abc(2, 4);
        let d = u24.set_of(&["d"]).unwrap();
        assert_eq!(u24.delete(d), Matroid::uniform_abc(2, 3));
        assert_eq!(u24.contract(d), Matroid::uniform_abc(1, 3));
        assert_eq!(u24.delete(ElementSet::EMPTY), u24);
    }

    #[test]
    fn circuit_examples() {
        let u24 = Matroid::uniform_abc(2, 4);
        let threes: Vec<ElementSet> = all_subsets(4).filter(|s| s.len() == 3).collect();
        let mut sorted = threes.clone();
        sort_sets(&mut sorted);
        assert_eq!(u24.circuits(), sorted);
        assert_eq!(u24.cocircuits(), sorted);
        assert_eq!(Matroid::uniform_abc(3, 4).circuits(), vec![ElementSet::full(4)]);
    }

    #[test]
    fn rename_and_isomorphism() {
        let m = m_from_circuits("a b c d", &["a b", "a c d", "b c d"]);
        let r = m.renamed(&["w", "x", "y", "z"]).unwrap();
        assert_eq!(r.names(), &["w", "x", "y", "z"]);
        assert!(m.is_isomorphic(&r));
        let shuffled = m.renamed(&["d", "c", "b", "a"]).unwrap();
        assert!(shuffled.is_isomorphic(&m));
        assert_ne!(shuffled, m);
        assert!(!m.is_isomorphic(&Matroid::uniform_abc(2, 4)));
    }

    #[test]
    fn from_circuits_rejects_non_matroid_families() {
        let err = Matroid::from_circuits(&["a", "b", "c"], &[vec!["a", "b"], vec!["b", "c"]]);
        assert!(matches!(err, Err(Error::NotAMatroid(_))));
    }
}
