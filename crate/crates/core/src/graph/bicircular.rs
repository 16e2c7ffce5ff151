use super::{edge_components, Multigraph};
use crate::bitset::{all_subsets, ElementSet};
use crate::error::{Error, Result};
use crate::matroid::Matroid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BicycleKind {
    Theta,
    LooseHandcuff,
    TightHandcuff,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bicycle {
    pub edges: ElementSet,
    pub kind: BicycleKind,
}

/// Degree of every vertex in `G[X]`, loops counting twice.
fn degrees(ends: &[(usize, usize)], x: ElementSet) -> [u8; super::MAX_VERTICES] {
    let mut d = [0u8; super::MAX_VERTICES];
    for i in x.iter() {
        d[ends[i].0] += 1;
        d[ends[i].1] += 1;
    }
    d
}

fn vertices_of(ends: &[(usize, usize)], x: ElementSet) -> ElementSet {
    x.iter().fold(ElementSet::EMPTY, |acc, i| acc.with(ends[i].0).with(ends[i].1))
}

/// `G[X]` is connected with one more edge than vertex and no vertex of degree
/// below two: exactly a theta or a handcuff.
pub fn is_bicycle(ends: &[(usize, usize)], x: ElementSet) -> bool {
    let verts = vertices_of(ends, x);
    if x.len() != verts.len() + 1 {
        return false;
    }
    let d = degrees(ends, x);
    verts.iter().all(|v| d[v] >= 2) && edge_components(ends, x).len() == 1
}

pub fn bicycle_kind(ends: &[(usize, usize)], x: ElementSet) -> Option<BicycleKind> {
    if !is_bicycle(ends, x) {
        return None;
    }
    let d = degrees(ends, x);
    if vertices_of(ends, x).iter().any(|v| d[v] >= 4) {
        return Some(BicycleKind::TightHandcuff);
    }
    let has_bridge = x
        .iter()
        .filter(|&i| ends[i].0 != ends[i].1)
        .any(|i| edge_components(ends, x.without(i)).len() > 1);
    Some(if has_bridge {
        BicycleKind::LooseHandcuff
    } else {
        BicycleKind::Theta
    })
}

/// Number of acyclic components of `G[X]`.
pub fn acyclic_components(ends: &[(usize, usize)], x: ElementSet) -> usize {
    edge_components(ends, x)
        .iter()
        .filter(|(v, e)| e.len() + 1 == v.len())
        .count()
}

/// `|V(X)| - a(X)`.
pub fn bicircular_rank(ends: &[(usize, usize)], x: ElementSet) -> usize {
    vertices_of(ends, x).len() - acyclic_components(ends, x)
}

/// Three-way connectivity class of `B(G)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connectivity {
    Disconnected,
    Connected,
    ThreeConnected,
}

impl Multigraph {
    pub fn bicycles(&self) -> Vec<Bicycle> {
        let ends = self.ends();
        let mut out: Vec<Bicycle> = all_subsets(self.edge_count())
            .filter_map(|x| bicycle_kind(&ends, x).map(|kind| Bicycle { edges: x, kind }))
            .collect();
        out.sort_by_cached_key(|b| b.edges.lex_key());
        out
    }

    /// `B(G)`, built from the bicycles and checked against the rank formula.
    pub fn bicircular(&self) -> Result<Matroid> {
        let ends = self.ends();
        let circuits: Vec<ElementSet> = all_subsets(self.edge_count())
            .filter(|&x| is_bicycle(&ends, x))
            .collect();
        let m = Matroid::from_circuit_masks(self.edge_names(), &circuits)
            .map_err(|e| Error::Defect(format!("bicycles of a graph do not form a matroid: {e}")))?;
        if let Some(x) = all_subsets(self.edge_count()).find(|&x| m.rank(x) != bicircular_rank(&ends, x)) {
            return Err(Error::Defect(format!(
                "rank of {:?} disagrees with |V(X)| - a(X)",
                self.edge_names_of(x)
            )));
        }
        Ok(m)
    }

    /// Whether `star(v)` is a cocircuit, by the graph criterion "G - v contains
    /// a cycle". Requires `G` 2-connected; the answer is checked against the
    /// cocircuits of `B(G)`.
    pub fn star_is_cocircuit(&self, name: &str) -> Result<bool> {
        let v = self.vertex_index(name)?;
        if !self.is_two_connected() {
            return Err(Error::pre("star_is_cocircuit needs a 2-connected graph"));
        }
        let graph_side = self.delete_vertex(v).has_cycle();
        let m = self.bicircular()?;
        if m.is_cocircuit(self.star(v)) != graph_side {
            return Err(Error::Defect(format!("star({name}) cocircuit criterion disagrees with B(G)")));
        }
        Ok(graph_side)
    }

    /// Connectivity of `B(G)` from the graph when `G` is connected with at
    /// least three vertices, otherwise from the matroid.
    pub fn bicircular_connectivity(&self) -> Result<Connectivity> {
        let g = self.without_isolated_vertices();
        if g.is_connected() && g.vertex_count() >= 3 {
            let n = g.vertex_count();
            let many_loops = (0..n).any(|v| {
                g.edges().iter().filter(|e| e.is_loop() && e.u == v).count() > 1
            });
            let min_degree = (0..n).map(|v| g.degree(v)).min().unwrap_or(0);
            if min_degree >= 3 && g.cut_vertices().is_empty() && !many_loops {
                return Ok(Connectivity::ThreeConnected);
            }
            if !g.is_cycle() && !g.has_pendent_edge() {
                return Ok(Connectivity::Connected);
            }
            return Ok(Connectivity::Disconnected);
        }
        let m = self.bicircular()?;
        Ok(if !m.is_connected() {
            Connectivity::Disconnected
        } else if m.is_n_connected(3) {
            Connectivity::ThreeConnected
        } else {
            Connectivity::Connected
        })
    }

    /// `star(v)` is a non-separating cocircuit of `B(G)`, decided by the graph
    /// criterion "G - v is not a cycle and has no pendent edge" and checked
    /// against the matroid. Requires `B(G)` 3-connected and four vertices.
    pub fn is_committed(&self, name: &str) -> Result<bool> {
        let v = self.vertex_index(name)?;
        if self.vertex_count() < 4 {
            return Err(Error::pre("is_committed needs at least four vertices"));
        }
        let m = self.bicircular()?;
        if !m.is_n_connected(3) {
            return Err(Error::pre("is_committed needs B(G) to be 3-connected"));
        }
        let rest = self.delete_vertex(v);
        let graph_side = !rest.is_cycle() && !rest.has_pendent_edge();
        let star = self.star(v);
        let matroid_side = m.is_cocircuit(star) && m.is_nonseparating_cocircuit(star)?;
        if graph_side != matroid_side {
            return Err(Error::Defect(format!("committedness of {name} disagrees with B(G)")));
        }
        Ok(graph_side)
    }
}

#[cfg(test)]
mod tests {
    use super::super::g;
    use super::*;

    #[test]
    fn bicycle_examples() {
        let theta = g("u v", &["a u v", "b u v", "c u v"]);
        let bs = theta.bicycles();
        assert_eq!(bs.len(), 1);
        assert_eq!(bs[0].kind, BicycleKind::Theta);
        let tight = g("u", &["e u u", "f u u"]);
        assert_eq!(tight.bicycles()[0].kind, BicycleKind::TightHandcuff);
        let loose = g("u v", &["e u u", "f v v", "g u v"]);
        let bs = loose.bicycles();
        assert_eq!(bs.len(), 1);
        assert_eq!(bs[0].kind, BicycleKind::LooseHandcuff);
        assert_eq!(bs[0].edges, loose.all_edges());
    }

    #[test]
    fn bicircular_examples() {
        let four = g("u v", &["a u v", "b u v", "c u v", "d u v"]);
        assert_eq!(four.bicircular().unwrap(), Matroid::uniform_abc(2, 4));
        let handcuff = g("u v", &["a u u", "b u v", "c v v"]);
        assert_eq!(handcuff.bicircular().unwrap(), Matroid::uniform_abc(2, 3));
        let single = g("u", &["a u u"]);
        assert_eq!(single.bicircular().unwrap(), Matroid::uniform_abc(1, 1));
        // Loose handcuff e, f, g: {e, g} has rank 2.
        let m = g("u v", &["e u u", "f v v", "g u v"]).bicircular().unwrap();
        assert_eq!(m.rank_of(&["e", "g"]).unwrap(), 2);
    }

    #[test]
    fn star_examples() {
        let four = g("u v", &["a u v", "b u v", "c u v", "d u v"]);
        assert_eq!(four.vertex_star("u").unwrap().len(), 4);
        assert!(!four.star_is_cocircuit("u").unwrap());
        let k4 = g(
            "1 2 3 4",
            &["a 1 2", "b 1 3", "c 1 4", "d 2 3", "e 2 4", "f 3 4", "h 1 2"],
        );
        for v in ["1", "2", "3", "4"] {
            assert!(k4.star_is_cocircuit(v).unwrap());
        }
        let with_loop = g("u v w", &["a u v", "b v w", "l w w"]);
        assert_eq!(with_loop.edge_names_of(with_loop.vertex_star("w").unwrap()), vec!["b", "l"]);
        assert!(matches!(four.vertex_star("z"), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn connectivity_examples() {
        let c4 = g("1 2 3 4", &["a 1 2", "b 2 3", "c 3 4", "d 4 1"]);
        assert_eq!(c4.bicircular().unwrap(), Matroid::uniform_abc(4, 4));
        assert_eq!(c4.bicircular_connectivity().unwrap(), Connectivity::Disconnected);
        let k4 = g("1 2 3 4", &["a 1 2", "b 1 3", "c 1 4", "d 2 3", "e 2 4", "f 3 4"]);
        assert_eq!(k4.bicircular_connectivity().unwrap(), Connectivity::ThreeConnected);
        assert!(k4.bicircular().unwrap().is_n_connected(3));
        let pendant = g("1 2 3 4", &["a 1 2", "b 2 3", "c 3 1", "d 3 4"]);
        assert_eq!(pendant.bicircular_connectivity().unwrap(), Connectivity::Disconnected);
        assert!(!pendant.bicircular().unwrap().is_connected());
    }

    fn wheel(rim: usize, doubled: bool) -> Multigraph {
        let mut vs = vec!["h".to_string()];
        vs.extend((0..rim).map(|i| format!("r{i}")));
        let mut es = Vec::new();
        for i in 0..rim {
            es.push((format!("s{i}"), "h".to_string(), format!("r{i}")));
            if doubled {
                es.push((format!("t{i}"), "h".to_string(), format!("r{i}")));
            }
            es.push((format!("w{i}"), format!("r{i}"), format!("r{}", (i + 1) % rim)));
        }
        Multigraph::new(&vs, &es.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect::<Vec<_>>())
            .unwrap()
    }

    #[test]
    fn committed_examples() {
        let w = wheel(4, false);
        assert!(!w.is_committed("h").unwrap());
        for i in 0..4 {
            assert!(w.is_committed(&format!("r{i}")).unwrap());
        }
        let k5 = {
            let vs = ["1", "2", "3", "4", "5"];
            let mut es = Vec::new();
            for i in 0..5 {
                for j in i + 1..5 {
                    es.push((format!("e{i}{j}"), vs[i], vs[j]));
                }
            }
            Multigraph::new(&vs, &es.iter().map(|(a, b, c)| (a.as_str(), *b, *c)).collect::<Vec<_>>()).unwrap()
        };
        for v in ["1", "2", "3", "4", "5"] {
            assert!(k5.is_committed(v).unwrap());
        }
        assert!(g("u v", &["a u v", "b u v", "c u v"]).is_committed("u").is_err());
    }
}
