//! 2-separations seen from one side: good separations, wedges, and the
//! quotient set-system they induce.

use super::canonical::canonical_tree;
use super::tree::{DecompositionTree, NodeKind};
use crate::bitset::{all_subsets, ElementSet, Family};
use crate::error::{Error, Result};
use crate::matroid::{check_matroid, Matroid, SetSystem};

/// `(A, E - A)` is a 2-separation with `cl(A)` and `cl*(A)` missing `B`, and
/// whose wedges are pairwise disjoint, skew and coskew. Assumes `m` is
/// connected.
pub fn good_separation(m: &Matroid, a: ElementSet) -> bool {
    if !m.is_k_separation(a, 2) {
        return false;
    }
    let b = m.ground() - a;
    if m.closure(a).meets(b) || m.coclosure(a).meets(b) {
        return false;
    }
    let Ok(wedges) = m.wedges(a) else {
        return false;
    };
    wedges.iter().enumerate().all(|(i, &x)| {
        wedges[i + 1..].iter().all(|&y| {
            x.is_disjoint(y) && m.skew(x, y).unwrap_or(false) && m.coskew(x, y).unwrap_or(false)
        })
    })
}

/// Tree-based test: some circuit node has degree three or more.
pub fn has_degree3_circuit_node(m: &Matroid) -> Result<bool> {
    Ok(circuit_node_degree(&canonical_tree(m)?).is_some())
}

/// The largest degree of a circuit node, if it is at least three.
pub(crate) fn circuit_node_degree(t: &DecompositionTree) -> Option<usize> {
    t.nodes()
        .iter()
        .filter(|n| n.kind == NodeKind::Circuit)
        .map(|n| t.degree(n.id))
        .filter(|&d| d >= 3)
        .max()
}

/// Wedge-based test: a 2-separation `(A, B)` with wedges `B1`, `B2` covering
/// `B`, such that `B - B1` and `B - B2` have two or more elements and are not
/// coskew, and `A` misses `cl*(B1)`.
pub fn has_degree3_circuit_node_by_wedges(m: &Matroid) -> Result<bool> {
    if !m.is_connected() {
        return Err(Error::pre("degree-three test needs a connected matroid"));
    }
    let ground = m.ground();
    for a in all_subsets(m.len()) {
        if !m.is_k_separation(a, 2) {
            continue;
        }
        let b = ground - a;
        let wedges = m.wedges(a)?;
        for &b1 in &wedges {
            if m.coclosure(b1).meets(a) {
                continue;
            }
            for &b2 in &wedges {
                if b1 | b2 != b {
                    continue;
                }
                let (x, y) = (b - b1, b - b2);
                if x.len() >= 2 && y.len() >= 2 && !m.coskew(x, y)? {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// The set-system on `{A} ∪ wedges(A)`: a set of blocks is independent when
/// every circuit inside its union lies inside one block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransducedMatroid {
    /// `blocks[0]` is `A`; the rest are the wedges, least first.
    pub blocks: Vec<ElementSet>,
    /// Independent sets of blocks, as sets of block indices.
    pub independent: Family,
    /// The element of the adjacent 3-connected component each block stands
    /// for.
    pub sigma: Vec<Option<String>>,
}

impl TransducedMatroid {
    /// Block names: the element each stands for when known, otherwise the
    /// block's members joined by `+`.
    pub fn block_names(&self, m: &Matroid) -> Vec<String> {
        self.blocks
            .iter()
            .zip(&self.sigma)
            .map(|(&b, s)| s.clone().unwrap_or_else(|| m.names_of(b).join("+")))
            .collect()
    }

    /// The set-system with blocks renamed per [`TransducedMatroid::block_names`].
    pub fn set_system(&self, m: &Matroid) -> Result<SetSystem> {
        let names = self.block_names(m);
        let sets: Vec<Vec<&str>> = self
            .independent
            .iter()
            .map(|x| x.iter().map(|i| names[i].as_str()).collect())
            .collect();
        SetSystem::from_sets(&names, &sets)
    }
}

fn independent_blocks(m: &Matroid, blocks: &[ElementSet]) -> Family {
    let block_of = |c: ElementSet| -> ElementSet {
        (0..blocks.len()).filter(|&i| c.meets(blocks[i])).collect()
    };
    let crossing: Vec<ElementSet> = m
        .circuits()
        .into_iter()
        .map(block_of)
        .filter(|bs| bs.len() > 1)
        .collect();
    let mut fam = Family::empty(blocks.len());
    for x in all_subsets(blocks.len()) {
        if !crossing.iter().any(|c| c.is_subset(x)) {
            fam.insert(x);
        }
    }
    fam
}

/// Builds the transduced set-system for a good separation, then checks that
/// it is a matroid isomorphic, via `σ`, to the 3-connected component on the
/// `B` side of the tree edge displaying `A`.
pub fn transduce(m: &Matroid, a: ElementSet) -> Result<TransducedMatroid> {
    if !m.is_connected() {
        return Err(Error::pre("transduce needs a connected matroid"));
    }
    if !good_separation(m, a) {
        return Err(Error::pre(format!("{:?} is not a good separation", m.names_of(a))));
    }
    let mut blocks = vec![a];
    blocks.extend(m.wedges(a)?);
    let independent = independent_blocks(m, &blocks);

    let tree = canonical_tree(m)?;
    let (edge, node) = (0..tree.edges().len())
        .find_map(|i| {
            let e = &tree.edges()[i];
            [(e.a, e.b), (e.b, e.a)]
                .into_iter()
                .find(|&(x, y)| tree.side(i, x) == a && tree.node(y).kind == NodeKind::ThreeConnected)
                .map(|(_, y)| (i, y))
        })
        .ok_or_else(|| Error::Defect("good separation is not displayed next to a 3-connected node".into()))?;

    let n = &tree.node(node).matroid;
    let mut to_block = vec![usize::MAX; n.len()];
    let mut sigma = vec![None; blocks.len()];
    for x in 0..n.len() {
        let name = n.name(x);
        let image = match tree.edges().iter().position(|e| e.basepoint == name) {
            Some(i) if i == edge => a,
            Some(i) => tree.side(i, tree.edges()[i].other(node)),
            None => ElementSet::singleton(m.index_of(name)?),
        };
        let k = blocks
            .iter()
            .position(|&b| b == image)
            .ok_or_else(|| Error::Defect(format!("no block corresponds to `{name}`")))?;
        to_block[x] = k;
        sigma[k] = Some(name.to_string());
    }
    if sigma.iter().any(Option::is_none) {
        return Err(Error::Defect("blocks and component elements do not match".into()));
    }
    let out = TransducedMatroid {
        blocks,
        independent,
        sigma,
    };
    if !check_matroid(&out.set_system(m)?) {
        return Err(Error::Defect("transduced set-system is not a matroid".into()));
    }
    for x in all_subsets(n.len()) {
        let image: ElementSet = x.iter().map(|i| to_block[i]).collect();
        if n.is_independent(x) != out.independent.contains(image) {
            return Err(Error::Defect("sigma is not an isomorphism".into()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{double_u24, triangle_of_u24s};
    use crate::matroid::m_from_circuits;

    #[test]
    fn good_separation_examples() {
        let m = double_u24();
        assert!(good_separation(&m, m.set_of(&["a", "b", "c"]).unwrap()));
        let u34 = Matroid::uniform_abc(3, 4);
        assert!(!good_separation(&u34, u34.set_of(&["a", "b"]).unwrap()));
        assert!(!good_separation(&m, ElementSet::EMPTY));
    }

    #[test]
    fn degree_three_examples() {
        let m = triangle_of_u24s();
        assert_eq!(m.len(), 9);
        assert_eq!(m.full_rank(), 5);
        assert!(has_degree3_circuit_node(&m).unwrap());
        assert!(has_degree3_circuit_node_by_wedges(&m).unwrap());
        let d = double_u24();
        assert!(!has_degree3_circuit_node(&d).unwrap());
        assert!(!has_degree3_circuit_node_by_wedges(&d).unwrap());
        let u = Matroid::uniform_abc(2, 5);
        assert!(!has_degree3_circuit_node(&u).unwrap());
        assert!(!has_degree3_circuit_node_by_wedges(&u).unwrap());
    }

    #[test]
    fn transduce_double_u24() {
        let m = double_u24();
        let a = m.set_of(&["a", "b", "c"]).unwrap();
        let t = transduce(&m, a).unwrap();
        let names: Vec<Vec<&str>> = t.blocks.iter().map(|&b| m.names_of(b)).collect();
        assert_eq!(names, vec![vec!["a", "b", "c"], vec!["d"], vec!["f"], vec!["g"]]);
        assert_eq!(t.sigma[0].as_deref(), Some("__bp0"));
        let ss = t.set_system(&m).unwrap();
        assert!(Matroid::new(ss).unwrap().is_isomorphic(&Matroid::uniform_abc(2, 4)));
        let other = transduce(&m, m.set_of(&["d", "f", "g"]).unwrap()).unwrap();
        assert_eq!(other.blocks.len(), 4);
        assert!(matches!(
            transduce(&m, m.set_of(&["a", "d"]).unwrap()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn parallel_pair() {
        // U_{2,4} with x parallel to a: the tree is a cocircuit node on
        // {a, x, bp} next to U_{2,4} on {bp, b, c, d}.
        let m = m_from_circuits("a b c d x", &["a x", "b c d", "a b c", "a b d", "a c d", "b c x", "b d x", "c d x"]);
        let s = m.set_of(&["a", "x"]).unwrap();
        assert!(good_separation(&m, s));
        assert!(!good_separation(&m, m.ground() - s));
        let t = transduce(&m, s).unwrap();
        assert_eq!(t.blocks.len(), 4);
    }
}
