//! Matroid-labelled trees.

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::matroid::io::lines;
use crate::matroid::{two_sum, Matroid, Separation, TwoSumSpec};
use std::collections::{BTreeSet, HashMap};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    ThreeConnected,
    Circuit,
    Cocircuit,
    Singleton,
}

impl NodeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            NodeKind::ThreeConnected => "three_connected",
            NodeKind::Circuit => "circuit",
            NodeKind::Cocircuit => "cocircuit",
            NodeKind::Singleton => "singleton",
        }
    }

    pub fn parse(s: &str) -> Option<NodeKind> {
        Some(match s {
            "three_connected" => NodeKind::ThreeConnected,
            "circuit" => NodeKind::Circuit,
            "cocircuit" => NodeKind::Cocircuit,
            "singleton" => NodeKind::Singleton,
            _ => return None,
        })
    }

    /// Kind of a matroid with no 2-separation.
    pub fn classify(m: &Matroid) -> NodeKind {
        if m.len() == 1 {
            NodeKind::Singleton
        } else if m.is_circuit(m.ground()) {
            NodeKind::Circuit
        } else if m.is_cocircuit(m.ground()) {
            NodeKind::Cocircuit
        } else {
            NodeKind::ThreeConnected
        }
    }
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub id: usize,
    pub matroid: Matroid,
    pub kind: NodeKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeEdge {
    pub a: usize,
    pub b: usize,
    pub basepoint: String,
}

impl TreeEdge {
    pub fn other(&self, v: usize) -> usize {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }
}

/// A tree of matroids whose 2-sums along the edge basepoints compose to a
/// matroid on `elements`. Node ids are indices into `nodes`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionTree {
    elements: Vec<String>,
    nodes: Vec<TreeNode>,
    edges: Vec<TreeEdge>,
}

impl DecompositionTree {
    /// Assembles and validates a tree. `elements` are the names of the
    /// composed matroid; every other name must be a basepoint.
    pub fn new(elements: Vec<String>, nodes: Vec<(Matroid, NodeKind)>, edges: Vec<TreeEdge>) -> Result<Self> {
        let mut elements = elements;
        elements.sort();
        let nodes = nodes
            .into_iter()
            .enumerate()
            .map(|(id, (matroid, kind))| TreeNode { id, matroid, kind })
            .collect();
        let t = DecompositionTree { elements, nodes, edges };
        t.validate()?;
        Ok(t)
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &TreeNode {
        &self.nodes[id]
    }

    pub fn edges(&self) -> &[TreeEdge] {
        &self.edges
    }

    /// Tree edges at `id`, as `(edge index, neighbour)`.
    pub fn incident(&self, id: usize) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.a == id || e.b == id)
            .map(|(i, e)| (i, e.other(id)))
            .collect()
    }

    pub fn degree(&self, id: usize) -> usize {
        self.incident(id).len()
    }

    fn element_index(&self, name: &str) -> Option<usize> {
        self.elements.binary_search_by(|x| x.as_str().cmp(name)).ok()
    }

    /// Elements of `M` (not basepoints) labelling node `id`.
    pub fn real_elements(&self, id: usize) -> ElementSet {
        self.nodes[id]
            .matroid
            .names()
            .iter()
            .filter_map(|n| self.element_index(n))
            .collect()
    }

    /// `E(T')` for the component `T'` of `T \ edge` that contains `toward`.
    pub fn side(&self, edge: usize, toward: usize) -> ElementSet {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![toward];
        seen[toward] = true;
        let mut out = ElementSet::EMPTY;
        while let Some(v) = stack.pop() {
            out = out | self.real_elements(v);
            for (i, w) in self.incident(v) {
                if i != edge && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        out
    }

    /// The separation displayed by an edge, smallest element on side A.
    pub fn displayed_by_edge(&self, edge: usize) -> Separation {
        let e = &self.edges[edge];
        let a = self.side(edge, e.a);
        let b = self.side(edge, e.b);
        Separation {
            side_a: a,
            side_b: b,
            order: 1,
        }
        .normalized()
    }

    /// Every partition into two non-empty sides displayed by node `id`:
    /// each component of `T - N` stays whole, elements of `N` go anywhere.
    pub fn displayed_by_node(&self, id: usize) -> Vec<Separation> {
        let mut parts: Vec<ElementSet> = self
            .incident(id)
            .into_iter()
            .map(|(edge, w)| self.side(edge, w))
            .collect();
        parts.extend(self.real_elements(id).iter().map(ElementSet::singleton));
        let ground = ElementSet::full(self.elements.len());
        let mut out = BTreeSet::new();
        for pick in ElementSet::full(parts.len()).subsets() {
            let a = pick.iter().fold(ElementSet::EMPTY, |acc, i| acc | parts[i]);
            if !a.is_empty() && a != ground {
                let s = Separation {
                    side_a: a,
                    side_b: ground - a,
                    order: 1,
                }
                .normalized();
                out.insert((s.side_a.bits(), s.side_b.bits()));
            }
        }
        out.into_iter()
            .map(|(a, b)| Separation {
                side_a: ElementSet(a),
                side_b: ElementSet(b),
                order: 1,
            })
            .collect()
    }

    /// Checks the matroid-labelled tree conditions.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::pre(format!("invalid decomposition tree: {msg}")));
        let n = self.nodes.len();
        if n == 0 {
            return bad("no nodes".into());
        }
        if self.edges.len() + 1 != n {
            return bad("edge count is not nodes - 1".into());
        }
        for e in &self.edges {
            if e.a >= n || e.b >= n || e.a == e.b {
                return bad(format!("edge {}-{} has a bad endpoint", e.a, e.b));
            }
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for (_, w) in self.incident(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if seen.contains(&false) {
            return bad("not connected".into());
        }
        let mut owner: HashMap<&str, Vec<usize>> = HashMap::new();
        for node in &self.nodes {
            if n > 1 && node.matroid.len() < 3 {
                return bad(format!("node {} has fewer than three elements", node.id));
            }
            for name in node.matroid.names() {
                owner.entry(name.as_str()).or_default().push(node.id);
            }
        }
        let mut basepoints = BTreeSet::new();
        for e in &self.edges {
            if self.element_index(&e.basepoint).is_some() || !basepoints.insert(e.basepoint.as_str()) {
                return bad(format!("basepoint `{}` is reused", e.basepoint));
            }
            let mut ends = owner.get(e.basepoint.as_str()).cloned().unwrap_or_default();
            ends.sort();
            if ends != [e.a.min(e.b), e.a.max(e.b)] {
                return bad(format!("basepoint `{}` must label exactly its two endpoints", e.basepoint));
            }
            for v in [e.a, e.b] {
                let m = &self.nodes[v].matroid;
                if m.is_separator_element(m.index_of(&e.basepoint)?) {
                    return bad(format!("basepoint `{}` is a separator of node {v}", e.basepoint));
                }
            }
            let kinds = (self.nodes[e.a].kind, self.nodes[e.b].kind);
            if kinds == (NodeKind::Circuit, NodeKind::Circuit) || kinds == (NodeKind::Cocircuit, NodeKind::Cocircuit) {
                return bad(format!("edge {}-{} joins two nodes of the same series/parallel kind", e.a, e.b));
            }
        }
        for (name, ids) in &owner {
            if !basepoints.contains(name) && (ids.len() != 1 || self.element_index(name).is_none()) {
                return bad(format!("element `{name}` must label exactly one node"));
            }
        }
        if owner.len() != self.elements.len() + basepoints.len() {
            return bad("some element labels no node".into());
        }
        Ok(())
    }

    /// `M(T)`: folds 2-sums outward from node 0.
    pub fn compose(&self) -> Result<Matroid> {
        let mut acc = self.nodes[0].matroid.clone();
        let mut seen = vec![false; self.nodes.len()];
        seen[0] = true;
        let mut queue = std::collections::VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for (edge, w) in self.incident(v) {
                if !seen[w] {
                    seen[w] = true;
                    let spec = TwoSumSpec::new(acc, self.nodes[w].matroid.clone(), &self.edges[edge].basepoint);
                    acc = two_sum(&spec)?;
                    queue.push_back(w);
                }
            }
        }
        Ok(acc)
    }

    /// Relabels each basepoint by the element set it stands for (the side of
    /// its edge away from the least element), so trees built in different
    /// split orders can be compared.
    fn canonical_labels(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .nodes
            .iter()
            .map(|node| {
                let label = |name: &str| -> String {
                    match self.edges.iter().position(|e| e.basepoint == name) {
                        Some(i) => {
                            let side = self.displayed_by_edge(i).side_b;
                            let names: Vec<&str> = side.iter().map(|j| self.elements[j].as_str()).collect();
                            format!("<{}>", names.join(","))
                        }
                        None => name.to_string(),
                    }
                };
                let mut circuits: Vec<Vec<String>> = node
                    .matroid
                    .circuits()
                    .into_iter()
                    .map(|c| {
                        let mut v: Vec<String> = c.iter().map(|i| label(node.matroid.name(i))).collect();
                        v.sort();
                        v
                    })
                    .collect();
                circuits.sort();
                let mut ground: Vec<String> = node.matroid.names().iter().map(|n| label(n)).collect();
                ground.sort();
                format!("{} {:?} {:?}", node.kind, ground, circuits)
            })
            .collect();
        out.sort();
        out
    }

    /// Equal up to renaming basepoints and renumbering nodes.
    pub fn is_isomorphic(&self, other: &DecompositionTree) -> bool {
        self.elements == other.elements
            && self.edges.len() == other.edges.len()
            && self.canonical_labels() == other.canonical_labels()
    }

    /// Text form: `node`, `node-circuit` (for 3-connected nodes) and
    /// `tree-edge` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for node in &self.nodes {
            out.push_str(&format!(
                "node {} {} ground={} rank={}\n",
                node.id,
                node.kind,
                node.matroid.names().join(","),
                node.matroid.full_rank()
            ));
            if node.kind == NodeKind::ThreeConnected {
                for c in node.matroid.circuits() {
                    out.push_str(&format!("node-circuit {} {}\n", node.id, node.matroid.names_of(c).join(" ")));
                }
            }
        }
        for e in &self.edges {
            out.push_str(&format!("tree-edge {} {} basepoint={}\n", e.a, e.b, e.basepoint));
        }
        out
    }

    pub fn parse(text: &str) -> Result<DecompositionTree> {
        struct Pending {
            kind: NodeKind,
            ground: Vec<String>,
            rank: Option<usize>,
            circuits: Vec<Vec<String>>,
            line: usize,
        }
        let mut nodes: Vec<Pending> = Vec::new();
        let mut edges = Vec::new();
        let field = |tok: &str, key: &str, line: usize, col: usize| -> Result<String> {
            tok.strip_prefix(key)
                .and_then(|r| r.strip_prefix('='))
                .map(str::to_string)
                .ok_or_else(|| Error::syntax(line, col, format!("expected `{key}=...`")))
        };
        let id_of = |tok: &str, line: usize, col: usize| -> Result<usize> {
            tok.parse()
                .map_err(|_| Error::syntax(line, col, format!("bad node id `{tok}`")))
        };
        for (line, col, tokens) in lines(text) {
            match tokens[0] {
                "node" if (4..=5).contains(&tokens.len()) => {
                    if id_of(tokens[1], line, col)? != nodes.len() {
                        return Err(Error::syntax(line, col, "node ids must be 0, 1, 2, ... in order"));
                    }
                    let kind = NodeKind::parse(tokens[2])
                        .ok_or_else(|| Error::syntax(line, col, format!("unknown node kind `{}`", tokens[2])))?;
                    let ground: Vec<String> = field(tokens[3], "ground", line, col)?
                        .split(',')
                        .filter(|s| !s.is_empty())
                        .map(str::to_string)
                        .collect();
                    let rank = match tokens.get(4) {
                        Some(t) => Some(
                            field(t, "rank", line, col)?
                                .parse()
                                .map_err(|_| Error::syntax(line, col, "bad rank"))?,
                        ),
                        None => None,
                    };
                    nodes.push(Pending {
                        kind,
                        ground,
                        rank,
                        circuits: Vec::new(),
                        line,
                    });
                }
                "node-circuit" if tokens.len() >= 2 => {
                    let id = id_of(tokens[1], line, col)?;
                    let node = nodes
                        .get_mut(id)
                        .ok_or_else(|| Error::syntax(line, col, format!("unknown node {id}")))?;
                    node.circuits.push(tokens[2..].iter().map(|s| s.to_string()).collect());
                }
                "tree-edge" if tokens.len() == 4 => {
                    edges.push(TreeEdge {
                        a: id_of(tokens[1], line, col)?,
                        b: id_of(tokens[2], line, col)?,
                        basepoint: field(tokens[3], "basepoint", line, col)?,
                    });
                }
                other => return Err(Error::syntax(line, col, format!("unexpected `{other}` line"))),
            }
        }
        let basepoints: BTreeSet<&str> = edges.iter().map(|e| e.basepoint.as_str()).collect();
        let mut elements = Vec::new();
        let mut built = Vec::new();
        for p in &nodes {
            let at = |e: Error| match e {
                Error::Syntax { .. } => e,
                other => Error::syntax(p.line, 1, other.to_string()),
            };
            elements.extend(p.ground.iter().filter(|n| !basepoints.contains(n.as_str())).cloned());
            let n = p.ground.len();
            let m = match p.kind {
                NodeKind::Circuit => Matroid::uniform(n.saturating_sub(1), &p.ground),
                NodeKind::Cocircuit => Matroid::uniform(1.min(n), &p.ground),
                NodeKind::Singleton => Matroid::uniform(p.rank.unwrap_or(1).min(1), &p.ground),
                NodeKind::ThreeConnected => Matroid::from_circuits(&p.ground, &p.circuits),
            }
            .map_err(at)?;
            if p.rank.is_some_and(|r| r != m.full_rank()) {
                return Err(Error::syntax(p.line, 1, "rank does not match the node matroid"));
            }
            built.push((m, p.kind));
        }
        DecompositionTree::new(elements, built, edges)
    }
}
