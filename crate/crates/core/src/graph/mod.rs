//! Multigraphs with labelled vertices and edges (loops and parallel edges
//! allowed), and the bicircular matroids they define.

mod bicircular;
pub mod io;
pub mod oracle;
mod sums;

pub use bicircular::*;
pub use oracle::{enumerate_graphs, oracle_find_representation, search_space_size, OracleReport};
pub use sums::{link_sum, loop_sum};

use crate::bitset::{ElementSet, MAX_ELEMENTS};
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// Vertex sets share the bitset type, so the vertex count is capped too.
pub const MAX_VERTICES: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub name: String,
    /// Endpoint positions with `u <= v`; `u == v` is a loop.
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }
}

/// A multigraph. Vertices keep their declaration order; edges are sorted by
/// name so edge `i` is element `i` of the bicircular matroid.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl Multigraph {
    pub fn new<V: AsRef<str>, S: AsRef<str>>(vertices: &[V], edges: &[(S, S, S)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.as_str(), i).is_some() {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let find = |name: &str| index.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()));
        let indexed = edges
            .iter()
            .map(|(e, u, v)| Ok((e.as_ref().to_string(), find(u.as_ref())?, find(v.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_indexed(vertices, indexed)
    }

    /// Builds from vertex names and edges given by endpoint positions.
    pub fn from_indexed(vertices: Vec<String>, edges: Vec<(String, usize, usize)>) -> Result<Self> {
        if vertices.len() > MAX_VERTICES {
            return Err(Error::pre(format!("at most {MAX_VERTICES} vertices are supported")));
        }
        if edges.len() > MAX_ELEMENTS {
            return Err(Error::TooManyElements(edges.len()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let mut out: Vec<Edge> = Vec::with_capacity(edges.len());
        for (name, u, v) in edges {
            if u >= vertices.len() || v >= vertices.len() {
                return Err(Error::UnknownVertex(format!("#{}", u.max(v))));
            }
            out.push(Edge {
                name,
                u: u.min(v),
                v: u.max(v),
            });
        }
        out.sort_by(|a, b| a.name.cmp(&b.name));
        if let Some(w) = out.windows(2).find(|w| w[0].name == w[1].name) {
            return Err(Error::DuplicateEdge(w[0].name.clone()));
        }
        Ok(Multigraph { vertices, edges: out })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &Edge {
        &self.edges[i]
    }

    pub fn edge_names(&self) -> Vec<String> {
        self.edges.iter().map(|e| e.name.clone()).collect()
    }

    pub fn all_edges(&self) -> ElementSet {
        ElementSet::full(self.edges.len())
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edge_index(&self, name: &str) -> Result<usize> {
        self.edges
            .binary_search_by(|e| e.name.as_str().cmp(name))
            .map_err(|_| Error::UnknownElement(name.to_string()))
    }

    pub fn edge_set_of<S: AsRef<str>>(&self, names: &[S]) -> Result<ElementSet> {
        names
            .iter()
            .try_fold(ElementSet::EMPTY, |acc, n| Ok(acc.with(self.edge_index(n.as_ref())?)))
    }

    pub fn edge_names_of(&self, s: ElementSet) -> Vec<&str> {
        s.iter().map(|i| self.edges[i].name.as_str()).collect()
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.edges[e].is_loop()
    }

    /// Endpoint pairs indexed by edge position.
    pub fn ends(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| (e.u, e.v)).collect()
    }

    /// `V(X)`: vertices incident with some edge of `X`.
    pub fn vertices_of(&self, x: ElementSet) -> ElementSet {
        x.iter().fold(ElementSet::EMPTY, |acc, i| {
            acc.with(self.edges[i].u).with(self.edges[i].v)
        })
    }

    /// Degree in `G[X]`, loops counting twice.
    pub fn degree_in(&self, v: usize, x: ElementSet) -> usize {
        x.iter()
            .map(|i| {
                let e = &self.edges[i];
                (e.u == v) as usize + (e.v == v) as usize
            })
            .sum()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degree_in(v, self.all_edges())
    }

    /// Edges incident with the vertex at position `v`.
    pub fn star(&self, v: usize) -> ElementSet {
        (0..self.edges.len())
            .filter(|&i| self.edges[i].u == v || self.edges[i].v == v)
            .collect()
    }

    /// `star(v)` by vertex name.
    pub fn vertex_star(&self, name: &str) -> Result<ElementSet> {
        Ok(self.star(self.vertex_index(name)?))
    }

    /// `G - v`: the vertex and its incident edges removed.
    pub fn delete_vertex(&self, v: usize) -> Multigraph {
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != v)
            .map(|(_, n)| n.clone())
            .collect();
        let shift = |x: usize| if x > v { x - 1 } else { x };
        let edges = self
            .edges
            .iter()
            .filter(|e| e.u != v && e.v != v)
            .map(|e| Edge {
                name: e.name.clone(),
                u: shift(e.u),
                v: shift(e.v),
            })
            .collect();
        Multigraph { vertices, edges }
    }

    /// `G \ X`: edges removed, vertices kept.
    pub fn delete_edges(&self, x: ElementSet) -> Multigraph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| !x.contains(*i))
            .map(|(_, e)| e.clone())
            .collect();
        Multigraph {
            vertices: self.vertices.clone(),
            edges,
        }
    }

    /// Drops vertices with no incident edge.
    pub fn without_isolated_vertices(&self) -> Multigraph {
        let used = self.vertices_of(self.all_edges());
        let keep: Vec<usize> = (0..self.vertices.len()).filter(|&v| used.contains(v)).collect();
        let mut new_pos = vec![usize::MAX; self.vertices.len()];
        for (i, &v) in keep.iter().enumerate() {
            new_pos[v] = i;
        }
        Multigraph {
            vertices: keep.iter().map(|&v| self.vertices[v].clone()).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    name: e.name.clone(),
                    u: new_pos[e.u],
                    v: new_pos[e.v],
                })
                .collect(),
        }
    }

    /// Vertex sets of the connected components of the whole graph, isolated
    /// vertices included.
    pub fn vertex_components(&self) -> Vec<ElementSet> {
        let mut comps: Vec<ElementSet> = Vec::new();
        let mut seen = ElementSet::EMPTY;
        for start in 0..self.vertices.len() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = ElementSet::singleton(start);
            loop {
                let grown = self
                    .edges
                    .iter()
                    .filter(|e| comp.contains(e.u) || comp.contains(e.v))
                    .fold(comp, |acc, e| acc.with(e.u).with(e.v));
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            seen = seen | comp;
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_components().len() <= 1
    }

    /// Connected with at least two vertices and no cut vertex.
    pub fn is_two_connected(&self) -> bool {
        self.vertices.len() >= 2
            && self.is_connected()
            && (self.vertices.len() == 2 || (0..self.vertices.len()).all(|v| self.delete_vertex(v).is_connected()))
    }

    pub fn cut_vertices(&self) -> Vec<usize> {
        let base = self.vertex_components().len();
        (0..self.vertices.len())
            .filter(|&v| self.delete_vertex(v).vertex_components().len() > base)
            .collect()
    }

    /// The whole graph is one cycle (a single loop, a digon, or a polygon).
    pub fn is_cycle(&self) -> bool {
        !self.edges.is_empty()
            && self.is_connected()
            && self.edges.len() == self.vertices.len()
            && (0..self.vertices.len()).all(|v| self.degree(v) == 2)
    }

    /// Some vertex of degree one.
    pub fn has_pendent_edge(&self) -> bool {
        (0..self.vertices.len()).any(|v| self.degree(v) == 1)
    }

    /// Edge sets of cycles: connected, non-empty, every vertex of degree two.
    pub fn cycles(&self) -> Vec<ElementSet> {
        let mut out: Vec<ElementSet> = self.all_edges().subsets().filter(|&x| self.is_cycle_set(x)).collect();
        crate::matroid::sort_sets(&mut out);
        out
    }

    pub fn is_cycle_set(&self, x: ElementSet) -> bool {
        let ends = self.ends();
        !x.is_empty()
            && edge_components(&ends, x).len() == 1
            && self.vertices_of(x).iter().all(|v| self.degree_in(v, x) == 2)
    }

    pub fn has_cycle(&self) -> bool {
        self.edges.len() + self.vertex_components().len() > self.vertices.len()
    }

    /// Replaces edge names (`names[i]` renames edge `i`).
    pub fn with_edge_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Multigraph> {
        if names.len() != self.edges.len() {
            return Err(Error::pre("renaming must cover every edge"));
        }
        let edges = self
            .edges
            .iter()
            .zip(names)
            .map(|(e, n)| (n.as_ref().to_string(), e.u, e.v))
            .collect();
        Multigraph::from_indexed(self.vertices.clone(), edges)
    }

    /// Replaces vertex names (`names[i]` renames vertex `i`).
    pub fn with_vertex_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Multigraph> {
        if names.len() != self.vertices.len() {
            return Err(Error::pre("renaming must cover every vertex"));
        }
        let edges = self.edges.iter().map(|e| (e.name.clone(), e.u, e.v)).collect();
        Multigraph::from_indexed(names.iter().map(|s| s.as_ref().to_string()).collect(), edges)
    }

    /// Isomorphism-invariant key ignoring edge and vertex names: the least
    /// sorted endpoint list over all vertex permutations.
    pub fn canonical_form(&self) -> Vec<(usize, usize)> {
        let n = self.vertices.len();
        let mut best: Option<Vec<(usize, usize)>> = None;
        let mut perm: Vec<usize> = (0..n).collect();
        permutations(&mut perm, 0, &mut |p| {
            let mut key: Vec<(usize, usize)> = self
                .edges
                .iter()
                .map(|e| {
                    let (a, b) = (p[e.u], p[e.v]);
                    (a.min(b), a.max(b))
                })
                .collect();
            key.sort();
            if best.as_ref().map_or(true, |b| key < *b) {
                best = Some(key);
            }
        });
        best.unwrap_or_default()
    }

    /// Same multigraph up to vertex relabelling, with edge names fixed.
    pub fn is_isomorphic_fixing_edges(&self, other: &Multigraph) -> bool {
        if self.vertex_count() != other.vertex_count() || self.edge_names() != other.edge_names() {
            return false;
        }
        let n = self.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut found = false;
        permutations(&mut perm, 0, &mut |p| {
            if !found {
                found = self.edges.iter().zip(&other.edges).all(|(a, b)| {
                    let (x, y) = (p[a.u], p[a.v]);
                    (x.min(y), x.max(y)) == (b.u, b.v)
                });
            }
        });
        found
    }
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Connected components of the edge-induced subgraph `G[X]`, as
/// `(vertex set, edge set)` pairs.
pub(crate) fn edge_components(ends: &[(usize, usize)], x: ElementSet) -> Vec<(ElementSet, ElementSet)> {
    let mut out = Vec::new();
    let mut rest = x;
    while let Some(first) = rest.first() {
        let (u, v) = ends[first];
        let mut verts = ElementSet::singleton(u).with(v);
        let mut edges = ElementSet::singleton(first);
        rest = rest.without(first);
        loop {
            let touching: ElementSet = rest
                .iter()
                .filter(|&i| verts.contains(ends[i].0) || verts.contains(ends[i].1))
                .collect();
            if touching.is_empty() {
                break;
            }
            for i in touching.iter() {
                verts = verts.with(ends[i].0).with(ends[i].1);
            }
            edges = edges | touching;
            rest = rest - touching;
        }
        out.push((verts, edges));
    }
    out
}

impl fmt::Debug for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multigraph {{ vertices: {:?}, edges: [", self.vertices)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}: {}-{}", e.name, self.vertices[e.u], self.vertices[e.v])?;
        }
        write!(f, "] }}")
    }
}

#[cfg(test)]
pub(crate) fn g(vertices: &str, edges: &[&str]) -> Multigraph {
    let vs: Vec<&str> = vertices.split_whitespace().collect();
    let es: Vec<(&str, &str, &str)> = edges
        .iter()
        .map(|e| {
            let t: Vec<&str> = e.split_whitespace().collect();
            (t[0], t[1], t[2])
        })
        .collect();
    Multigraph::new(&vs, &es).unwrap()
}
