//! Rooted bicircular representations of 3-connected matroids.

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::oracle::{build, constrained_search, search_on, Constraint};
use crate::graph::Multigraph;
use crate::matroid::{sort_sets, Matroid};

/// Which strategy produced a representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootedCase {
    /// Vertex stars are exactly the good cocircuits.
    GoodCocircuits,
    /// Committed stars plus at most three more vertices.
    FewUncommitted,
    /// Exhaustive search on at most four vertices.
    SmallRank,
}

/// `G(F)`: one vertex per member of `F`, edge `e` joining the members that
/// contain it (a loop when only one does). `None` unless every element lies
/// in one or two members.
pub fn graph_of_family(m: &Matroid, family: &[ElementSet]) -> Option<Multigraph> {
    let mut members = family.to_vec();
    sort_sets(&mut members);
    members.dedup();
    let mut ends = Vec::with_capacity(m.len());
    for e in 0..m.len() {
        let at: Vec<usize> = (0..members.len()).filter(|&v| members[v].contains(e)).collect();
        match at[..] {
            [v] => ends.push((v, v)),
            [u, v] => ends.push((u, v)),
            _ => return None,
        }
    }
    if members.len() > crate::graph::MAX_VERTICES {
        return None;
    }
    Some(build(m.names(), members.len(), &ends))
}

fn realises(g: &Multigraph, n: &Matroid, loops: ElementSet) -> Result<bool> {
    Ok(loops.iter().all(|e| g.is_loop(e)) && g.bicircular()? == *n)
}

fn check_pre(n: &Matroid, loops: ElementSet) -> Result<()> {
    if !loops.is_subset(n.ground()) {
        return Err(Error::pre("L must be a subset of E(N)"));
    }
    let r = n.full_rank();
    if r < 2 || n.len() - r < 2 || !n.is_n_connected(3) {
        return Err(Error::pre("N must be 3-connected with rank and corank at least two"));
    }
    Ok(())
}

/// Case with few uncommitted vertices: the committed stars are fixed
/// vertices, and the remaining `r - |F|` vertices are found by search.
fn few_uncommitted(n: &Matroid, loops: ElementSet, exec: Exec) -> Result<Option<Multigraph>> {
    let mut fixed: Vec<ElementSet> = Vec::new();
    for c in n.cocircuits() {
        if n.is_nonseparating_cocircuit(c)? {
            fixed.push(c);
        }
    }
    let r = n.full_rank();
    if fixed.len() > r || r - fixed.len() > 3 {
        return Ok(None);
    }
    let f = fixed.len();
    let mut options = Vec::with_capacity(n.len());
    for e in 0..n.len() {
        let at: Vec<usize> = (0..f).filter(|&v| fixed[v].contains(e)).collect();
        let is_loop = loops.contains(e);
        let opts: Vec<(usize, usize)> = match at[..] {
            [u, v] if !is_loop => vec![(u, v)],
            [_, _] => return Ok(None),
            [u] => std::iter::once((u, u))
                .chain((f..r).filter(|_| !is_loop).map(|j| (u, j)))
                .collect(),
            [] => (f..r)
                .flat_map(|a| (a..r).map(move |b| (a, b)))
                .filter(|&(a, b)| !is_loop || a == b)
                .collect(),
            _ => return Ok(None),
        };
        if opts.is_empty() {
            return Ok(None);
        }
        options.push(opts);
    }
    // Most constrained edges first.
    let mut order: Vec<usize> = (0..n.len()).collect();
    order.sort_by_key(|&e| options[e].len());
    let constraint = Constraint {
        n: r,
        fixed: f,
        options,
        order,
    };
    let (found, _) = constrained_search(n, &constraint, exec);
    Ok(found.map(|ends| build(n.names(), r, &ends)))
}

/// A graph `G` with `B(G) = N` in which every element of `L` is a loop, with
/// the strategy that found it.
pub fn rooted_representation(n: &Matroid, loops: ElementSet, exec: Exec) -> Result<Option<(Multigraph, RootedCase)>> {
    check_pre(n, loops)?;
    let mut good = Vec::new();
    for c in n.cocircuits() {
        if n.is_good_cocircuit(c)? {
            good.push(c);
        }
    }
    if let Some(g) = graph_of_family(n, &good) {
        if realises(&g, n, loops)? {
            return Ok(Some((g, RootedCase::GoodCocircuits)));
        }
    }
    if let Some(g) = few_uncommitted(n, loops, exec)? {
        if !realises(&g, n, loops)? {
            return Err(Error::Defect("constrained search returned a wrong graph".into()));
        }
        return Ok(Some((g, RootedCase::FewUncommitted)));
    }
    if n.full_rank() <= 4 {
        if let Some(g) = search_on(n, loops, n.full_rank(), exec)?.witness {
            return Ok(Some((g, RootedCase::SmallRank)));
        }
    }
    Ok(None)
}

/// [`rooted_representation`] without the strategy tag.
pub fn rooted_bicircular_3conn(n: &Matroid, loops: ElementSet, exec: Exec) -> Result<Option<Multigraph>> {
    Ok(rooted_representation(n, loops, exec)?.map(|(g, _)| g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(g: &Multigraph) -> (usize, Vec<(String, bool)>) {
        (
            g.vertex_count(),
            g.edges().iter().map(|e| (e.name.clone(), e.is_loop())).collect(),
        )
    }

    #[test]
    fn u24_with_roots() {
        let u = Matroid::uniform_abc(2, 4);
        let one = rooted_bicircular_3conn(&u, u.set_of(&["a"]).unwrap(), Exec::Sequential)
            .unwrap()
            .unwrap();
        let (v, es) = shape(&one);
        assert_eq!(v, 2);
        assert_eq!(es.iter().filter(|(_, l)| *l).count(), 1);
        assert!(one.is_loop(0));
        let two = rooted_bicircular_3conn(&u, u.set_of(&["a", "b"]).unwrap(), Exec::Sequential)
            .unwrap()
            .unwrap();
        assert!(two.is_loop(0) && two.is_loop(1) && !two.is_loop(2) && !two.is_loop(3));
        assert_ne!(two.edge(0).u, two.edge(1).u);
        assert!(rooted_bicircular_3conn(&u, u.set_of(&["a", "b", "c"]).unwrap(), Exec::Sequential)
            .unwrap()
            .is_none());
    }

    #[test]
    fn preconditions() {
        let u = Matroid::uniform_abc(3, 4);
        assert!(matches!(
            rooted_bicircular_3conn(&u, ElementSet::EMPTY, Exec::Sequential),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn k5_uses_good_cocircuits() {
        let vs = ["1", "2", "3", "4", "5"];
        let mut es = Vec::new();
        for i in 0..5 {
            for j in i + 1..5 {
                es.push((format!("e{i}{j}"), vs[i], vs[j]));
            }
        }
        let es: Vec<(&str, &str, &str)> = es.iter().map(|(a, b, c)| (a.as_str(), *b, *c)).collect();
        let k5 = Multigraph::new(&vs, &es).unwrap();
        let b = k5.bicircular().unwrap();
        let (g, case) = rooted_representation(&b, ElementSet::EMPTY, Exec::Sequential).unwrap().unwrap();
        assert_eq!(case, RootedCase::GoodCocircuits);
        assert_eq!(g.bicircular().unwrap(), b);
    }

    #[test]
    fn wheel_needs_an_uncommitted_vertex() {
        // In the 4-spoke wheel the hub is uncommitted.
        let k = Multigraph::new(
            &["h", "1", "2", "3", "4"],
            &[
                ("s1", "h", "1"),
                ("s2", "h", "2"),
                ("s3", "h", "3"),
                ("s4", "h", "4"),
                ("w1", "1", "2"),
                ("w2", "2", "3"),
                ("w3", "3", "4"),
                ("w4", "4", "1"),
            ],
        )
        .unwrap();
        let b = k.bicircular().unwrap();
        assert!(b.is_n_connected(3));
        let (g, _) = rooted_representation(&b, ElementSet::EMPTY, Exec::Sequential).unwrap().unwrap();
        assert_eq!(g.bicircular().unwrap(), b);
    }
}
