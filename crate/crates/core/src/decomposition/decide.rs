//! Deciding bicircularity through the canonical decomposition tree.

use super::canonical::canonical_tree;
use super::rooted::rooted_bicircular_3conn;
use super::separation::circuit_node_degree;
use super::tree::{DecompositionTree, NodeKind};
use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::{link_sum, loop_sum, Multigraph};
use crate::matroid::Matroid;
use std::collections::VecDeque;

/// A representation of one connected component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentWitness {
    pub elements: Vec<String>,
    /// `None` for a single loop, which no edge of a graph can represent.
    pub graph: Option<Multigraph>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub components: Vec<ComponentWitness>,
    /// A graph on the non-loop elements whose bicircular matroid is `M`
    /// with its loops deleted. Coloops share one path.
    pub graph: Multigraph,
    pub loops: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Yes(Witness),
    No(String),
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }
}

fn graph(vertices: usize, edges: Vec<(String, usize, usize)>) -> Result<Multigraph> {
    Multigraph::from_indexed((1..=vertices).map(|i| i.to_string()).collect(), edges)
}

/// A path on the `links`, with `first` and `last` as loops at its ends.
fn path_with_end_loops(first: &str, links: &[String], last: &str) -> Result<Multigraph> {
    let mut edges = vec![(first.to_string(), 0, 0)];
    for (i, e) in links.iter().enumerate() {
        edges.push((e.clone(), i, i + 1));
    }
    let end = links.len();
    edges.push((last.to_string(), end, end));
    graph(end + 1, edges)
}

/// A cycle through `names` in order.
fn cycle(names: &[String]) -> Result<Multigraph> {
    let k = names.len();
    let edges = names.iter().enumerate().map(|(i, e)| (e.clone(), i, (i + 1) % k)).collect();
    graph(k, edges)
}

fn is_leaf_circuit(t: &DecompositionTree, id: usize) -> bool {
    t.node(id).kind == NodeKind::Circuit && t.degree(id) == 1
}

/// Graph for a node that is not a leaf circuit.
fn node_graph(t: &DecompositionTree, id: usize, exec: Exec) -> Result<std::result::Result<Multigraph, String>> {
    let node = t.node(id);
    let m = &node.matroid;
    let names = m.names().to_vec();
    Ok(Ok(match node.kind {
        NodeKind::Cocircuit => graph(1, names.into_iter().map(|e| (e, 0, 0)).collect())?,
        NodeKind::Singleton => {
            return Err(Error::Defect("singleton node in a tree with two or more elements".into()));
        }
        NodeKind::Circuit => {
            let basepoints: Vec<String> = t.incident(id).into_iter().map(|(i, _)| t.edges()[i].basepoint.clone()).collect();
            match basepoints.len() {
                0 => path_with_end_loops(&names[0], &names[1..names.len() - 1], &names[names.len() - 1])?,
                2 => {
                    let links: Vec<String> = names.iter().filter(|n| !basepoints.contains(n)).cloned().collect();
                    path_with_end_loops(&basepoints[0], &links, &basepoints[1])?
                }
                d => return Ok(Err(format!("circuit node of degree {d}"))),
            }
        }
        NodeKind::ThreeConnected => {
            let loops: ElementSet = t
                .incident(id)
                .into_iter()
                .filter(|&(_, w)| !is_leaf_circuit(t, w))
                .map(|(i, _)| m.index_of(&t.edges()[i].basepoint).expect("basepoint labels its node"))
                .collect();
            match rooted_bicircular_3conn(m, loops, exec)? {
                Some(g) => g,
                None => {
                    let real = t.real_elements(id);
                    let what: Vec<&str> = real.iter().map(|i| t.elements()[i].as_str()).collect();
                    return Ok(Err(format!(
                        "3-connected component with elements {{{}}} has no rooted representation",
                        what.join(",")
                    )));
                }
            }
        }
    }))
}

/// Representation of a connected matroid with at least two elements.
fn decide_connected(m: &Matroid, exec: Exec) -> Result<std::result::Result<Multigraph, String>> {
    let t = canonical_tree(m)?;
    if let Some(d) = circuit_node_degree(&t) {
        return Ok(Err(format!("circuit node of degree {d}")));
    }
    let root = (0..t.nodes().len())
        .find(|&i| !is_leaf_circuit(&t, i))
        .ok_or_else(|| Error::Defect("tree has only leaf circuit nodes".into()))?;
    let mut acc = match node_graph(&t, root, exec)? {
        Ok(g) => g,
        Err(reason) => return Ok(Err(reason)),
    };
    let mut seen = vec![false; t.nodes().len()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for (edge, w) in t.incident(v) {
            if seen[w] {
                continue;
            }
            seen[w] = true;
            queue.push_back(w);
            let bp = t.edges()[edge].basepoint.as_str();
            if is_leaf_circuit(&t, w) {
                let names = t.node(w).matroid.names().to_vec();
                let on_link = !acc.is_loop(acc.edge_index(bp)?);
                acc = if on_link {
                    // The circuit becomes a path replacing the link.
                    let mut order: Vec<String> = vec![bp.to_string()];
                    order.extend(names.iter().filter(|n| *n != bp).cloned());
                    link_sum(&acc, &cycle(&order)?, bp)?
                } else {
                    // A cycle on the rest, with `bp` a loop at its least vertex.
                    let rest: Vec<String> = names.iter().filter(|n| *n != bp).cloned().collect();
                    let c = cycle(&rest)?;
                    let mut edges: Vec<(String, usize, usize)> =
                        c.edges().iter().map(|e| (e.name.clone(), e.u, e.v)).collect();
                    edges.push((bp.to_string(), 0, 0));
                    loop_sum(&acc, &graph(c.vertex_count(), edges)?, bp)?
                };
            } else {
                let g = match node_graph(&t, w, exec)? {
                    Ok(g) => g,
                    Err(reason) => return Ok(Err(reason)),
                };
                acc = loop_sum(&acc, &g, bp)?;
            }
        }
    }
    if acc.bicircular()? != *m {
        return Err(Error::Defect("assembled graph does not represent the component".into()));
    }
    Ok(Ok(acc))
}

/// Disjoint union, vertices renumbered `1..`.
fn disjoint_union(parts: &[&Multigraph]) -> Result<Multigraph> {
    let mut edges = Vec::new();
    let mut offset = 0;
    for g in parts {
        edges.extend(g.edges().iter().map(|e| (e.name.clone(), e.u + offset, e.v + offset)));
        offset += g.vertex_count();
    }
    graph(offset, edges)
}

/// Decides whether `M` is bicircular (up to loops, which are allowed as a
/// rank-zero direct summand). A positive answer carries a graph that has been
/// checked to recompute to `M`.
pub fn is_bicircular(m: &Matroid, exec: Exec) -> Result<Decision> {
    let mut components = Vec::new();
    let mut loops = Vec::new();
    let mut coloops = Vec::new();
    let mut graphs = Vec::new();
    for comp in m.components() {
        let names = m.names_of_owned(comp);
        if comp.len() == 1 {
            let e = comp.first().expect("non-empty");
            let g = if m.is_loop(e) {
                loops.push(names[0].clone());
                None
            } else {
                coloops.push(names[0].clone());
                Some(graph(2, vec![(names[0].clone(), 0, 1)])?)
            };
            components.push(ComponentWitness { elements: names, graph: g });
            continue;
        }
        match decide_connected(&m.restrict(comp), exec)? {
            Ok(g) => {
                graphs.push(g.clone());
                components.push(ComponentWitness {
                    elements: names,
                    graph: Some(g),
                });
            }
            Err(reason) => return Ok(Decision::No(reason)),
        }
    }
    let path = graph(
        coloops.len() + 1,
        coloops.iter().enumerate().map(|(i, e)| (e.clone(), i, i + 1)).collect(),
    )?;
    let mut parts: Vec<&Multigraph> = graphs.iter().collect();
    if !coloops.is_empty() {
        parts.push(&path);
    }
    let whole = disjoint_union(&parts)?;
    let loop_set: ElementSet = loops.iter().map(|n| m.index_of(n)).collect::<Result<_>>()?;
    if whole.bicircular()? != m.delete(loop_set) {
        return Err(Error::Defect("combined witness does not represent the matroid".into()));
    }
    Ok(Decision::Yes(Witness {
        components,
        graph: whole,
        loops,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::oracle::oracle_decide;

    fn yes(m: &Matroid) -> Multigraph {
        match is_bicircular(m, Exec::Sequential).unwrap() {
            Decision::Yes(w) => w.graph,
            Decision::No(r) => panic!("expected bicircular, got: {r}"),
        }
    }

    #[test]
    fn small_examples() {
        assert_eq!(yes(&Matroid::uniform_abc(2, 4)).edge_count(), 4);
        assert_eq!(yes(&Matroid::uniform_abc(3, 4)).edge_count(), 4);
        assert_eq!(yes(&Matroid::uniform_abc(1, 4)).vertex_count(), 1);
        assert_eq!(yes(&Matroid::uniform_abc(0, 2)).edge_count(), 0);
        assert_eq!(yes(&Matroid::uniform_abc(3, 3)).vertex_count(), 4);
        let d = crate::corpus::double_u24();
        assert_eq!(yes(&d).bicircular().unwrap(), d);
    }

    #[test]
    fn degree_three_is_rejected() {
        let m = crate::corpus::triangle_of_u24s();
        assert_eq!(
            is_bicircular(&m, Exec::Sequential).unwrap(),
            Decision::No("circuit node of degree 3".into())
        );
    }

    #[test]
    fn fano_is_not_bicircular() {
        let f7 = crate::corpus::fano();
        assert!(!is_bicircular(&f7, Exec::Sequential).unwrap().is_yes());
        assert!(!oracle_decide(&f7, Exec::Sequential).unwrap().bicircular);
    }

    #[test]
    fn every_three_vertex_graph_round_trips() {
        use crate::graph::enumerate_graphs;
        for k in 1..=4 {
            let names: Vec<String> = (0..k).map(|i| format!("e{i}")).collect();
            for g in enumerate_graphs(&names, 3) {
                let b = g.bicircular().unwrap();
                let w = yes(&b);
                assert_eq!(w.bicircular().unwrap(), b.delete(ElementSet::from_indices((0..b.len()).filter(|&e| b.is_loop(e)))));
            }
        }
    }
}
