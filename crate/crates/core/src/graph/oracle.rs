//! Brute-force search for bicircular representations.
//!
//! Every edge is assigned an unordered vertex pair on labelled vertices
//! `1..n`, pairs ordered `(1,1) < (1,2) < .. < (1,n) < (2,2) < ..`, and
//! assignments compared lexicographically with the first edge most
//! significant. The search returns the least assignment whose bicycles are
//! exactly the circuits of the target matroid.
//!
//! Two prunings keep this tractable, and neither changes the first witness:
//!
//! * Vertex labels must appear in order of first use. Relabelling any witness
//!   into that form never makes it lexicographically larger, so the least
//!   witness already has this form.
//! * After placing edge `k`, every subset of placed edges containing `k` must
//!   be a bicycle exactly when it is a circuit. Later edges cannot change that.

use super::{is_bicycle, Multigraph};
use crate::bitset::{all_subsets, ElementSet, Family};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::matroid::Matroid;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

/// Number of labelled multigraphs with `edges` named edges on `vertices`
/// vertices: `(n(n+1)/2)^edges`.
pub fn search_space_size(edges: usize, vertices: usize) -> u128 {
    let pairs = (vertices * (vertices + 1) / 2) as u128;
    pairs.pow(edges as u32)
}

fn vertex_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect()
}

fn vertex_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

pub(crate) fn build(names: &[String], n: usize, ends: &[(usize, usize)]) -> Multigraph {
    let edges = names.iter().zip(ends).map(|(e, &(u, v))| (e.clone(), u, v)).collect();
    Multigraph::from_indexed(vertex_names(n), edges).expect("valid enumerated graph")
}

/// Every multigraph on vertices `1..n` with the given edge names, in
/// lexicographic order of the assignment vector.
pub fn enumerate_graphs<S: AsRef<str>>(edge_names: &[S], n: usize) -> impl Iterator<Item = Multigraph> {
    let names: Vec<String> = edge_names.iter().map(|s| s.as_ref().to_string()).collect();
    let pairs = vertex_pairs(n);
    let k = names.len();
    let mut digits: Option<Vec<usize>> = (n > 0 || k == 0).then(|| vec![0; k]);
    std::iter::from_fn(move || {
        let current = digits.clone()?;
        let ends: Vec<(usize, usize)> = current.iter().map(|&d| pairs[d]).collect();
        let graph = build(&names, n, &ends);
        // Odometer increment, last edge least significant.
        let d = digits.as_mut().expect("present");
        let mut i = k;
        loop {
            if i == 0 {
                digits = None;
                break;
            }
            i -= 1;
            d[i] += 1;
            if d[i] < pairs.len() {
                break;
            }
            d[i] = 0;
        }
        Some(graph)
    })
}

#[derive(Debug, Clone)]
pub struct OracleReport {
    pub witness: Option<Multigraph>,
    /// Size of the full (unpruned) search space.
    pub space_size: u128,
    /// Search-tree nodes actually expanded. Depends on scheduling when run in
    /// parallel.
    pub nodes_visited: u64,
}

/// A search problem: edge `e` may take any pair in `options[e]`. Labels below
/// `fixed` are distinguished; the rest are interchangeable and must appear in
/// order of first use along `order`.
pub(crate) struct Constraint {
    pub n: usize,
    pub fixed: usize,
    pub options: Vec<Vec<(usize, usize)>>,
    pub order: Vec<usize>,
}

impl Constraint {
    /// Every pair on `n` interchangeable labels, loops forced on `loops`.
    pub fn free(edges: usize, n: usize, loops: ElementSet) -> Self {
        let pairs = vertex_pairs(n);
        let options = (0..edges)
            .map(|e| {
                pairs
                    .iter()
                    .copied()
                    .filter(|&(a, b)| !loops.contains(e) || a == b)
                    .collect()
            })
            .collect();
        Constraint {
            n,
            fixed: 0,
            options,
            order: (0..edges).collect(),
        }
    }
}

struct Search<'a> {
    circuits: Family,
    c: &'a Constraint,
    visited: &'a AtomicU64,
}

impl Search<'_> {
    /// Labels introduced after placing the first `k` edges of the order.
    fn labels_used(&self, ends: &[(usize, usize)], k: usize) -> usize {
        self.c.order[..k]
            .iter()
            .map(|&e| ends[e].1 + 1)
            .max()
            .unwrap_or(0)
            .max(self.c.fixed)
    }

    fn allowed(&self, k: usize, used: usize, (a, b): (usize, usize)) -> bool {
        if b >= used && !(a < used && b == used || a == used && b <= used + 1) {
            return false;
        }
        let now = used.max(b + 1);
        // Each later edge can introduce at most two new labels.
        self.c.n - now <= 2 * (self.c.order.len() - k - 1)
    }

    /// Subsets of the placed edges through the newest one agree with `M`.
    fn consistent(&self, ends: &[(usize, usize)], placed: ElementSet, newest: usize) -> bool {
        for t in placed.subsets() {
            let s = t.with(newest);
            let circuit = self.circuits.contains(s);
            let verts = s.iter().fold(0u32, |acc, i| acc | 1 << ends[i].0 | 1 << ends[i].1);
            let count_ok = s.len() == verts.count_ones() as usize + 1;
            if !circuit && !count_ok {
                continue;
            }
            if circuit != (count_ok && is_bicycle(ends, s)) {
                return false;
            }
        }
        true
    }

    /// Depth-first completion of the first `k` placed edges. `stop` bounds the
    /// depth, for collecting prefixes.
    fn dfs(&self, ends: &mut [(usize, usize)], k: usize, stop: usize, out: &mut dyn FnMut(&[(usize, usize)]) -> bool) -> bool {
        self.visited.fetch_add(1, Ordering::Relaxed);
        if k == stop {
            return out(ends);
        }
        let used = self.labels_used(ends, k);
        let e = self.c.order[k];
        let placed: ElementSet = self.c.order[..k].iter().copied().collect();
        for &p in &self.c.options[e] {
            if !self.allowed(k, used, p) {
                continue;
            }
            ends[e] = p;
            if self.consistent(ends, placed, e) && self.dfs(ends, k + 1, stop, out) {
                return true;
            }
        }
        false
    }
}

/// Runs a constrained search and returns the first complete assignment (in
/// the lexicographic order induced by `order` and each option list) together
/// with the number of search nodes expanded.
pub(crate) fn constrained_search(m: &Matroid, c: &Constraint, exec: Exec) -> (Option<Vec<(usize, usize)>>, u64) {
    let mut circuits = Family::empty(m.len());
    for s in all_subsets(m.len()) {
        if m.is_circuit(s) {
            circuits.insert(s);
        }
    }
    let visited = AtomicU64::new(0);
    let search = Search {
        circuits,
        c,
        visited: &visited,
    };
    let edges = c.order.len();
    if c.n == 0 {
        // Only the empty matroid has a representation without vertices.
        return (m.is_empty().then(Vec::new), 0);
    }
    let mut ends = vec![(0usize, 0usize); m.len()];
    let found = if exec.is_parallel() && edges >= 4 {
        let depth = prefix_depth(edges);
        let mut prefixes: Vec<Vec<(usize, usize)>> = Vec::new();
        search.dfs(&mut ends, 0, depth, &mut |e| {
            prefixes.push(e.to_vec());
            false
        });
        let best = AtomicUsize::new(usize::MAX);
        let results = exec.map_range(prefixes.len(), |i| {
            if best.load(Ordering::Relaxed) < i {
                return None;
            }
            let mut ends = prefixes[i].clone();
            let mut found = None;
            let mut keep = |e: &[(usize, usize)]| {
                found = Some(e.to_vec());
                true
            };
            if search.dfs(&mut ends, depth, edges, &mut keep) {
                best.fetch_min(i, Ordering::Relaxed);
            }
            found
        });
        results.into_iter().flatten().next()
    } else {
        let mut found = None;
        search.dfs(&mut ends, 0, edges, &mut |e| {
            found = Some(e.to_vec());
            true
        });
        found
    };
    (found, visited.into_inner())
}

/// Searches graphs on exactly `r(M)` vertices for one whose bicircular
/// matroid is `M` and in which every element of `loops` is a loop.
///
/// `M` must be connected, loopless and have at least two elements; for such a
/// matroid every representing graph is connected and has a cycle, so it has
/// exactly `r(M)` vertices.
pub fn oracle_find_representation(m: &Matroid, loops: ElementSet, exec: Exec) -> Result<OracleReport> {
    if m.len() < 2 || !m.is_connected() || (0..m.len()).any(|e| m.is_loop(e)) {
        return Err(Error::pre(
            "oracle search needs a connected loopless matroid with at least two elements",
        ));
    }
    if !loops.is_subset(m.ground()) {
        return Err(Error::pre("loop set is not a subset of the ground set"));
    }
    search_on(m, loops, m.full_rank(), exec)
}

/// The search on a fixed number of vertices, without the structural
/// preconditions. Used by the rooted 3-connected test for small graphs.
pub(crate) fn search_on(m: &Matroid, loops: ElementSet, n: usize, exec: Exec) -> Result<OracleReport> {
    if n > super::MAX_VERTICES {
        return Err(Error::pre("too many vertices for the oracle"));
    }
    let constraint = Constraint::free(m.len(), n, loops);
    let (found, nodes_visited) = constrained_search(m, &constraint, exec);
    let witness = found.map(|ends| build(m.names(), n, &ends));
    if let Some(g) = &witness {
        let b = g.bicircular()?;
        if b != *m || loops.iter().any(|e| !g.is_loop(e)) {
            return Err(Error::Defect("oracle witness does not recompute to the matroid".into()));
        }
    }
    Ok(OracleReport {
        witness,
        space_size: search_space_size(m.len(), n),
        nodes_visited,
    })
}

fn prefix_depth(edges: usize) -> usize {
    (edges / 2).clamp(2, 4)
}

/// Outcome of the oracle applied component by component.
#[derive(Debug, Clone)]
pub struct OracleDecision {
    pub bicircular: bool,
    /// One entry per component: `(component, witness graph)`. Loops of the
    /// matroid get an empty graph; coloops a single link.
    pub witnesses: Vec<(ElementSet, Option<Multigraph>)>,
    pub graphs_searched: u128,
}

/// Decides bicircularity with the oracle alone. Components are handled
/// separately: a matroid loop is the rank-zero part, a coloop is a single
/// link, and anything else is searched.
pub fn oracle_decide(m: &Matroid, exec: Exec) -> Result<OracleDecision> {
    let mut witnesses = Vec::new();
    let mut searched = 0u128;
    let mut all = true;
    for comp in m.components() {
        let sub = m.restrict(comp);
        let witness = if comp.len() == 1 {
            let name = sub.name(0).to_string();
            if sub.full_rank() == 0 {
                Some(Multigraph::from_indexed(Vec::new(), Vec::new())?)
            } else {
                Some(Multigraph::from_indexed(vertex_names(2), vec![(name, 0, 1)])?)
            }
        } else {
            let report = oracle_find_representation(&sub, ElementSet::EMPTY, exec)?;
            searched += report.space_size;
            report.witness
        };
        all &= witness.is_some();
        witnesses.push((comp, witness));
    }
    Ok(OracleDecision {
        bicircular: all,
        witnesses,
        graphs_searched: searched,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts_and_order() {
        let gs: Vec<Multigraph> = enumerate_graphs(&["a"], 2).collect();
        assert_eq!(gs.len(), 3);
        assert_eq!(gs[0].edge(0).u, 0);
        assert!(gs[0].is_loop(0));
        assert!(!gs[1].is_loop(0));
        assert!(gs[2].is_loop(0) && gs[2].edge(0).u == 1);
        assert_eq!(enumerate_graphs(&["a", "b"], 1).count(), 1);
        assert_eq!(search_space_size(7, 3), 279_936);
        assert_eq!(enumerate_graphs(&["a", "b", "c"], 3).count() as u128, search_space_size(3, 3));
    }

    #[test]
    fn u24_first_witness() {
        let m = Matroid::uniform_abc(2, 4);
        for exec in [Exec::Sequential, Exec::Parallel] {
            let r = oracle_find_representation(&m, ElementSet::EMPTY, exec).unwrap();
            let g = r.witness.unwrap();
            // Least assignment: a loop at 1, then three parallel links.
            assert!(g.is_loop(0));
            assert!((1..4).all(|i| (g.edge(i).u, g.edge(i).v) == (0, 1)));
        }
        let three_loops = m.set_of(&["a", "b", "c"]).unwrap();
        assert!(oracle_find_representation(&m, three_loops, Exec::Sequential)
            .unwrap()
            .witness
            .is_none());
    }

    /// Literal search over every enumerated graph, no pruning.
    fn first_by_enumeration(m: &Matroid, loops: ElementSet) -> Option<Multigraph> {
        enumerate_graphs(m.names(), m.full_rank()).find(|g| {
            loops.iter().all(|e| g.is_loop(e)) && g.bicircular().map_or(false, |b| b == *m)
        })
    }

    #[test]
    fn pruned_search_finds_the_same_first_witness() {
        let cases = [
            Matroid::uniform_abc(2, 4),
            Matroid::uniform_abc(2, 5),
            Matroid::uniform_abc(3, 5),
            Matroid::uniform_abc(2, 3),
            Matroid::uniform_abc(3, 6),
        ];
        for m in &cases {
            for loops in [ElementSet::EMPTY, ElementSet::singleton(1), ElementSet::from_indices([0, 2])] {
                let brute = first_by_enumeration(m, loops);
                for exec in [Exec::Sequential, Exec::Parallel] {
                    let fast = oracle_find_representation(m, loops, exec).unwrap().witness;
                    assert_eq!(fast, brute, "{m:?} loops {loops:?}");
                }
            }
        }
    }

    #[test]
    fn preconditions() {
        assert!(oracle_find_representation(&Matroid::uniform_abc(2, 2), ElementSet::EMPTY, Exec::Sequential).is_err());
        let d = oracle_decide(&Matroid::uniform_abc(2, 2), Exec::Sequential).unwrap();
        assert!(d.bicircular);
        assert_eq!(d.witnesses.len(), 2);
    }
}
