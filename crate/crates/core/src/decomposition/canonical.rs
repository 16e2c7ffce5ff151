//! Building the canonical decomposition tree by repeated splitting.

use super::tree::{DecompositionTree, NodeKind, TreeEdge};
use crate::bitset::{all_subsets, ElementSet};
use crate::error::{Error, Result};
use crate::matroid::{two_sum, Matroid, TwoSumSpec};
use rand::Rng;
use std::collections::VecDeque;

/// Names `{prefix}K`, skipping any that clash with `taken`.
struct Namer<'a> {
    prefix: &'static str,
    taken: &'a [String],
    next: usize,
}

impl Namer<'_> {
    fn fresh(&mut self) -> String {
        loop {
            let name = format!("{}{}", self.prefix, self.next);
            self.next += 1;
            if self.taken.binary_search(&name).is_err() {
                return name;
            }
        }
    }
}

/// Exact 2-separations `(A, E - A)` with `2 <= |A| <= |E - A|`, least
/// (by size, then elements) first.
fn small_sides(m: &Matroid) -> Vec<ElementSet> {
    let n = m.len();
    let mut out: Vec<ElementSet> = all_subsets(n)
        .filter(|a| a.len() >= 2 && 2 * a.len() <= n && m.lambda(*a) == 1)
        .collect();
    out.sort_by_cached_key(|a| a.lex_key());
    out
}

fn split_all(
    m: Matroid,
    namer: &mut Namer,
    choose: &mut dyn FnMut(&[ElementSet]) -> usize,
    leaves: &mut Vec<Matroid>,
) -> Result<()> {
    let sides = small_sides(&m);
    if sides.is_empty() {
        leaves.push(m);
        return Ok(());
    }
    let a = sides[choose(&sides)];
    let bp = namer.fresh();
    let (left, right) = m.split_along_named(a, &bp)?;
    split_all(left, namer, choose, leaves)?;
    split_all(right, namer, choose, leaves)
}

fn build(m: &Matroid, choose: &mut dyn FnMut(&[ElementSet]) -> usize) -> Result<DecompositionTree> {
    if m.is_empty() {
        return Err(Error::pre("canonical_tree needs a non-empty matroid"));
    }
    if !m.is_connected() {
        return Err(Error::pre("canonical_tree needs a connected matroid"));
    }
    let mut leaves = Vec::new();
    let mut namer = Namer {
        prefix: "__split",
        taken: m.names(),
        next: 0,
    };
    split_all(m.clone(), &mut namer, choose, &mut leaves)?;

    let mut nodes: Vec<Option<(Matroid, NodeKind)>> = leaves
        .into_iter()
        .map(|l| {
            let kind = NodeKind::classify(&l);
            Some((l, kind))
        })
        .collect();
    let owner = |nodes: &[Option<(Matroid, NodeKind)>], name: &str| -> Vec<usize> {
        (0..nodes.len())
            .filter(|&i| nodes[i].as_ref().is_some_and(|(x, _)| x.index_of(name).is_ok()))
            .collect()
    };
    let mut edges: Vec<(usize, usize, String)> = (0..namer.next)
        .map(|k| format!("__split{k}"))
        .filter(|n| m.index_of(n).is_err())
        .map(|n| {
            let o = owner(&nodes, &n);
            (o[0], o[1], n)
        })
        .collect();

    // Series and parallel pieces glue into bigger ones of the same kind.
    while let Some(pos) = edges.iter().position(|(a, b, _)| {
        let (ka, kb) = (nodes[*a].as_ref().unwrap().1, nodes[*b].as_ref().unwrap().1);
        ka == kb && matches!(ka, NodeKind::Circuit | NodeKind::Cocircuit)
    }) {
        let (a, b, bp) = edges.remove(pos);
        let (ma, kind) = nodes[a].take().unwrap();
        let (mb, _) = nodes[b].take().unwrap();
        nodes[a] = Some((two_sum(&TwoSumSpec::new(ma, mb, &bp))?, kind));
        for e in &mut edges {
            if e.0 == b {
                e.0 = a;
            }
            if e.1 == b {
                e.1 = a;
            }
        }
    }

    // Deterministic numbering: breadth-first from the node holding the least
    // element, neighbours in order of their least element.
    let alive: Vec<usize> = (0..nodes.len()).filter(|&i| nodes[i].is_some()).collect();
    let least = |i: usize| -> (usize, String) {
        let (x, _) = nodes[i].as_ref().unwrap();
        let real = x.names().iter().filter(|n| m.index_of(n).is_ok()).min().cloned();
        (usize::from(real.is_none()), real.unwrap_or_default())
    };
    let start = *alive.iter().min_by_key(|&&i| least(i)).expect("at least one node");
    let mut order = vec![start];
    let mut edge_order = Vec::new();
    let mut seen = vec![false; nodes.len()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        let mut next: Vec<(usize, usize)> = edges
            .iter()
            .enumerate()
            .filter(|(_, e)| (e.0 == v || e.1 == v) && !seen[if e.0 == v { e.1 } else { e.0 }])
            .map(|(i, e)| (i, if e.0 == v { e.1 } else { e.0 }))
            .collect();
        next.sort_by_key(|&(_, w)| subtree_key(&nodes, &edges, w, v, m));
        for (i, w) in next {
            seen[w] = true;
            order.push(w);
            edge_order.push(i);
            queue.push_back(w);
        }
    }
    let mut id = vec![usize::MAX; nodes.len()];
    for (k, &v) in order.iter().enumerate() {
        id[v] = k;
    }

    let mut final_names = Namer {
        prefix: "__bp",
        taken: m.names(),
        next: 0,
    };
    let mut out_nodes: Vec<(Matroid, NodeKind)> = order.iter().map(|&v| nodes[v].clone().unwrap()).collect();
    let mut out_edges = Vec::new();
    for i in edge_order {
        let (a, b, old) = &edges[i];
        let new = final_names.fresh();
        for v in [id[*a], id[*b]] {
            out_nodes[v].0 = out_nodes[v].0.rename_element(old, &new)?;
        }
        let (a, b) = (id[*a].min(id[*b]), id[*a].max(id[*b]));
        out_edges.push(TreeEdge { a, b, basepoint: new });
    }
    let tree = DecompositionTree::new(m.names().to_vec(), out_nodes, out_edges)?;
    if tree.compose()? != *m {
        return Err(Error::Defect("decomposition tree does not recompose to the matroid".into()));
    }
    Ok(tree)
}

/// Least element name in the subtree hanging off `w` away from `from`.
fn subtree_key(
    nodes: &[Option<(Matroid, NodeKind)>],
    edges: &[(usize, usize, String)],
    w: usize,
    from: usize,
    m: &Matroid,
) -> String {
    let mut best: Option<String> = None;
    let mut stack = vec![(w, from)];
    while let Some((v, parent)) = stack.pop() {
        let (x, _) = nodes[v].as_ref().unwrap();
        for n in x.names().iter().filter(|n| m.index_of(n).is_ok()) {
            if best.as_ref().is_none_or(|b| n < b) {
                best = Some(n.clone());
            }
        }
        for e in edges {
            let u = if e.0 == v { e.1 } else if e.1 == v { e.0 } else { continue };
            if u != parent {
                stack.push((u, v));
            }
        }
    }
    best.unwrap_or_default()
}

/// The canonical decomposition tree, always splitting along the least
/// 2-separation. The result is checked to recompose to `m`.
pub fn canonical_tree(m: &Matroid) -> Result<DecompositionTree> {
    build(m, &mut |_| 0)
}

/// Same tree (up to basepoint names), built with random split choices.
pub fn canonical_tree_with<R: Rng>(m: &Matroid, rng: &mut R) -> Result<DecompositionTree> {
    build(m, &mut |sides| rng.gen_range(0..sides.len()))
}
