//! Named matroids and generated graph and matroid collections used by tests,
//! benches and the CLI.

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::{ElementSet, Family};
use crate::exec::Exec;
use crate::graph::Multigraph;
use crate::matroid::{two_sum, Matroid, SetSystem, TwoSumSpec};

fn from_circuit_strs(ground: &str, circuits: &[&str]) -> Matroid {
    let names: Vec<&str> = ground.split_whitespace().collect();
    let cs: Vec<Vec<&str>> = circuits.iter().map(|c| c.split_whitespace().collect()).collect();
    Matroid::from_circuits(&names, &cs).expect("named matroid is valid")
}

/// The Fano plane on `a..g`.
pub fn fano() -> Matroid {
    from_circuit_strs(
        "a b c d e f g",
        &[
            "a b c", "a d e", "a f g", "b d f", "b e g", "c d g", "c e f", //
            "a b d g", "a b e f", "a c d f", "a c e g", "b c d e", "b c f g", "d e f g",
        ],
    )
}

/// `U_{2,4}` on `{a,b,c,bp}` 2-summed with `U_{2,4}` on `{bp,d,f,g}`.
pub fn double_u24() -> Matroid {
    let left = Matroid::uniform(2, &["a", "b", "c", "bp"]).expect("uniform");
    let right = Matroid::uniform(2, &["bp", "d", "f", "g"]).expect("uniform");
    two_sum(&TwoSumSpec::new(left, right, "bp")).expect("valid 2-sum")
}

/// A triangle `{p1,p2,p3}` with `U_{2,4}` on `{pi, x1, x2, x3}` 2-summed
/// along each `pi` (`x` = `a`, `b`, `c`). Nine elements, rank five.
pub fn triangle_of_u24s() -> Matroid {
    let mut m = Matroid::uniform(2, &["p1", "p2", "p3"]).expect("uniform");
    for (p, tag) in [("p1", "a"), ("p2", "b"), ("p3", "c")] {
        let names: Vec<String> = std::iter::once(p.to_string())
            .chain((1..=3).map(|i| format!("{tag}{i}")))
            .collect();
        let u = Matroid::uniform(2, &names).expect("uniform");
        m = two_sum(&TwoSumSpec::new(m, u, p)).expect("valid 2-sum");
    }
    m
}

fn edge_names(k: usize) -> Vec<String> {
    (0..k).map(|i| format!("e{i}")).collect()
}

fn vertex_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

fn graph_from_pairs(n: usize, pairs: &[(usize, usize)]) -> Multigraph {
    let edges = pairs
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| (format!("e{i}"), a, b))
        .collect();
    Multigraph::from_indexed(vertex_names(n), edges).expect("generated graph is valid")
}

/// Every multigraph on exactly `n` vertices with `edges` edges and no
/// isolated vertex, one per isomorphism class. Edges are `e0, e1, ...`.
pub fn graphs_on(n: usize, edges: usize) -> Vec<Multigraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for choice in pairs.iter().copied().combinations_with_replacement(edges) {
        let covered: ElementSet = choice.iter().flat_map(|&(a, b)| [a, b]).collect();
        if covered.len() != n {
            continue;
        }
        let g = graph_from_pairs(n, &choice);
        if seen.insert(g.canonical_form()) {
            out.push(g);
        }
    }
    out
}

/// All multigraphs with `1..=max_vertices` vertices and `1..=max_edges`
/// edges, without isolated vertices, up to isomorphism.
pub fn small_graphs(max_vertices: usize, max_edges: usize) -> Vec<Multigraph> {
    (1..=max_vertices)
        .flat_map(|n| (1..=max_edges).flat_map(move |k| graphs_on(n, k)))
        .collect()
}

/// Every vertex star is a non-separating cocircuit of `B(G)`.
pub fn all_vertices_committed(g: &Multigraph) -> bool {
    let Ok(m) = g.bicircular() else { return false };
    m.is_connected()
        && (0..g.vertex_count()).all(|v| {
            let s = g.star(v);
            m.is_cocircuit(s) && m.is_nonseparating_cocircuit(s).unwrap_or(false)
        })
}

/// Connected graphs on 3 or 4 vertices with at most `max_edges` edges in
/// which every vertex is committed.
pub fn committed_graphs(max_edges: usize) -> Vec<Multigraph> {
    (3..=4)
        .flat_map(|n| (1..=max_edges).flat_map(move |k| graphs_on(n, k)))
        .filter(all_vertices_committed)
        .collect()
}

/// Seeded random multigraphs on `n` vertices with `edges` edges, connected
/// and without isolated vertices, deduplicated up to isomorphism.
pub fn random_graphs(n: usize, edges: usize, count: usize, seed: u64) -> Vec<Multigraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for _ in 0..count * 20 {
        if out.len() == count {
            break;
        }
        let pairs: Vec<(usize, usize)> = (0..edges)
            .map(|_| {
                let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
                (a.min(b), a.max(b))
            })
            .collect();
        let g = graph_from_pairs(n, &pairs);
        if g.without_isolated_vertices().vertex_count() == n && g.is_connected() && seen.insert(g.canonical_form()) {
            out.push(g);
        }
    }
    out
}

/// Graphs with 4 to 6 vertices whose bicircular matroids exercise the
/// structural lemmas: wheels, prisms, and random dense multigraphs.
pub fn structural_graphs() -> Vec<Multigraph> {
    let named: &[(usize, &[(usize, usize)])] = &[
        // K4 with a loop at each vertex.
        (4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 0), (1, 1)]),
        // Wheel W4.
        (5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (1, 4)]),
        // W4 with a doubled spoke.
        (5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (1, 4), (0, 1)]),
        // Triangular prism.
        (6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]),
        // K5 minus an edge.
        (5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]),
        // A 5-cycle with every edge doubled.
        (5, &[(0, 1), (0, 1), (1, 2), (1, 2), (2, 3), (2, 3), (3, 4), (3, 4), (0, 4), (0, 4)]),
        // A 5-cycle with a loop at every vertex.
        (5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 0), (1, 1), (2, 2), (3, 3), (4, 4)]),
    ];
    let mut out: Vec<Multigraph> = named.iter().map(|(n, p)| graph_from_pairs(*n, p)).collect();
    for (n, e, seed) in [(4, 8, 41), (5, 8, 51), (5, 9, 52), (5, 10, 53), (6, 10, 61)] {
        out.extend(random_graphs(n, e, 12, seed));
    }
    out
}

/// A random paving matroid of rank `r` on `n` elements: random sets of size
/// `r..=max_line` meeting pairwise in at most `r - 2` elements become the
/// dependent hyperplanes.
pub fn paving<R: Rng>(r: usize, n: usize, max_line: usize, rng: &mut R) -> Matroid {
    let mut lines: Vec<ElementSet> = ElementSet::full(n)
        .subsets()
        .filter(|s| (r..=max_line).contains(&s.len()))
        .collect();
    lines.shuffle(rng);
    let mut chosen: Vec<ElementSet> = Vec::new();
    let want = rng.gen_range(0..=n);
    for t in lines {
        if chosen.len() == want {
            break;
        }
        if chosen.iter().all(|c| (*c & t).len() + 2 <= r) {
            chosen.push(t);
        }
    }
    let mut fam = Family::empty(n);
    for s in ElementSet::full(n).subsets() {
        if s.len() < r || s.len() == r && !chosen.iter().any(|c| s.is_subset(*c)) {
            fam.insert(s);
        }
    }
    Matroid::new(SetSystem::from_family(edge_names(n), fam).expect("family")).expect("paving matroid")
}

/// A rank-3 sparse paving matroid on `n` elements.
pub fn sparse_paving<R: Rng>(n: usize, rng: &mut R) -> Matroid {
    paving(3, n, 3, rng)
}

/// A random rank-`r` matroid of a different flavour: truncation of a random
/// bicircular or uniform matroid, or a direct sum of two uniform ones.
fn random_assorted<R: Rng>(n: usize, rng: &mut R) -> Matroid {
    match rng.gen_range(0..3) {
        0 => {
            let r = rng.gen_range(1..=3.min(n));
            Matroid::uniform(r, &edge_names(n)).expect("uniform")
        }
        1 => {
            let k = rng.gen_range(1..n);
            let names = edge_names(n);
            let a = Matroid::uniform(rng.gen_range(0..=k.min(2)), &names[..k]).expect("uniform");
            let b = Matroid::uniform(rng.gen_range(0..=(n - k).min(1)), &names[k..]).expect("uniform");
            a.direct_sum(&b).expect("disjoint names")
        }
        _ => {
            // Rank-2 truncation of a bicircular matroid.
            let g = random_graphs(3, n, 1, rng.gen()).pop().unwrap_or_else(|| graphs_on(3, n).remove(0));
            let m = g.bicircular().expect("bicircular");
            let fam = m.independent_sets().filter(|s| s.len() <= 2).fold(Family::empty(n), |mut f, s| {
                f.insert(s);
                f
            });
            Matroid::new(SetSystem::from_family(m.names().to_vec(), fam).expect("family")).expect("truncation")
        }
    }
}

/// `count` seeded random matroids with rank at most 3 and 4 to 7 elements:
/// bicircular matroids of random 3-vertex graphs, sparse paving matroids,
/// and an assortment of uniform matroids, direct sums and truncations.
pub fn random_matroids(count: usize, seed: u64) -> Vec<Matroid> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(4..=7);
            match i % 3 {
                0 => {
                    let mut g = random_graphs(rng.gen_range(2..=3), n, 1, rng.gen());
                    match g.pop() {
                        Some(g) => g.bicircular().expect("bicircular"),
                        None => sparse_paving(n, &mut rng),
                    }
                }
                1 => sparse_paving(n, &mut rng),
                _ => random_assorted(n, &mut rng),
            }
        })
        .collect()
}

/// Up to `count` pairwise non-isomorphic non-bicircular matroids, starting
/// with `F7`: seeded paving matroids on 5 to 7 elements, contractions,
/// parallel extensions and duals of them, then single-element extensions up
/// to 8 elements once those run dry. Each one is confirmed by exhaustive
/// graph search.
pub fn non_bicircular_matroids(count: usize, seed: u64) -> Vec<Matroid> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![fano()];
    let mut seen: Vec<Matroid> = out.clone();
    for _ in 0..count * 200 {
        if out.len() >= count {
            break;
        }
        let n = rng.gen_range(5..=7);
        let mut m = match rng.gen_range(0..5) {
            0 => paving(3, n, 4, &mut rng),
            3 | 4 => {
                let r = rng.gen_range(2..=3);
                let base = paving(r, n - 1, r + 1, &mut rng);
                let e = rng.gen_range(0..n - 1);
                parallel_extension(&base, e, &format!("e{}", n - 1))
            }
            // Contracting a point of a rank-4 paving matroid gives rank 3.
            1 => paving(4, n + 1, 5, &mut rng).contract(ElementSet::singleton(n)),
            _ => paving(4, n, 4, &mut rng),
        };
        if rng.gen_bool(0.3) {
            m = m.dual();
        }
        if seen.iter().any(|s| s.is_isomorphic(&m)) {
            continue;
        }
        seen.push(m.clone());
        let bic = crate::graph::oracle::oracle_decide(&m, Exec::Parallel).expect("oracle runs");
        if !bic.bicircular {
            out.push(m);
        }
    }
    // Bicircularity is closed under deletion, so every single-element
    // extension of a small non-bicircular matroid is non-bicircular too. The
    // oracle still confirms each one.
    let mut i = 0;
    while out.len() < count && i < out.len() {
        let base = out[i].clone();
        i += 1;
        if base.len() >= 8 {
            continue;
        }
        let n = base.len();
        let name = format!("z{n}");
        let mut ext = vec![
            base.direct_sum(&Matroid::uniform(0, &[&name]).expect("loop")).expect("names"),
            base.direct_sum(&Matroid::uniform(1, &[&name]).expect("coloop")).expect("names"),
        ];
        ext.extend((0..n).map(|e| parallel_extension(&base, e, &name)));
        for m in ext {
            if out.len() >= count || seen.iter().any(|s| s.is_isomorphic(&m)) {
                continue;
            }
            seen.push(m.clone());
            let bic = crate::graph::oracle::oracle_decide(&m, Exec::Parallel).expect("oracle runs");
            if !bic.bicircular {
                out.push(m);
            }
        }
    }
    out
}

/// `m` with a new element `name` parallel to `e`. `name` must sort after
/// every existing name.
pub fn parallel_extension(m: &Matroid, e: usize, name: &str) -> Matroid {
    let n = m.len();
    let mut fam = Family::empty(n + 1);
    for s in m.independent_sets() {
        fam.insert(s);
        if s.contains(e) {
            fam.insert(s.without(e).with(n));
        } else if m.is_independent(s.with(e)) {
            fam.insert(s.with(n));
        }
    }
    let mut names = m.names().to_vec();
    names.push(name.to_string());
    Matroid::new(SetSystem::from_family(names, fam).expect("family")).expect("parallel extension")
}

/// Every set-system on `n <= 3` elements.
pub fn all_set_systems(n: usize) -> Vec<SetSystem> {
    assert!(n <= 3, "2^(2^n) systems");
    let subsets = 1usize << n;
    (0u32..1 << subsets)
        .map(|bits| {
            let mut fam = Family::empty(n);
            for s in 0..subsets {
                if bits >> s & 1 == 1 {
                    fam.insert(ElementSet::from_bits(s as u32));
                }
            }
            SetSystem::from_family(edge_names(n), fam).expect("family")
        })
        .collect()
}

/// Seeded set-systems on `n` elements, in turn: uniformly random families,
/// down-closures of a few random sets, and random paving matroids.
pub fn sampled_set_systems(n: usize, count: usize, seed: u64) -> Vec<SetSystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all: Vec<ElementSet> = ElementSet::full(n).subsets().collect();
    (0..count)
        .map(|i| {
            if i % 3 == 2 && n > 0 {
                let r = rng.gen_range(1..=n.min(3));
                return paving(r, n, r + 1, &mut rng).set_system();
            }
            let mut fam = Family::empty(n);
            if i % 3 == 0 {
                for &s in &all {
                    if rng.gen_bool(0.5) {
                        fam.insert(s);
                    }
                }
            } else {
                let tops = rng.gen_range(1..=3);
                for _ in 0..tops {
                    let top = all[rng.gen_range(0..all.len())];
                    for s in top.subsets() {
                        fam.insert(s);
                    }
                }
            }
            SetSystem::from_family(edge_names(n), fam).expect("family")
        })
        .collect()
}

/// `count` seeded connected matroids built by 2-summing two to four small
/// pieces (uniform matroids, circuits, cocircuits, occasionally `F7`), with
/// at most 11 elements. Their decomposition trees have several nodes.
pub fn random_two_sums(count: usize, seed: u64) -> Vec<Matroid> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shapes: &[(usize, usize)] = &[(2, 4), (2, 3), (1, 3), (2, 5), (3, 5), (1, 4), (3, 4)];
    let mut out = Vec::new();
    while out.len() < count {
        let pieces = rng.gen_range(2..=4);
        let mut m: Option<Matroid> = None;
        let mut fresh = 0usize;
        let mut names = |k: usize| -> Vec<String> {
            let v = (fresh..fresh + k).map(|i| format!("x{i:02}")).collect();
            fresh += k;
            v
        };
        for _ in 0..pieces {
            let piece = if rng.gen_bool(0.1) {
                fano().renamed(&names(7)).expect("renaming")
            } else {
                let (r, n) = shapes[rng.gen_range(0..shapes.len())];
                Matroid::uniform(r, &names(n)).expect("uniform")
            };
            m = Some(match m {
                None => piece,
                Some(left) => {
                    let e = left.name(rng.gen_range(0..left.len())).to_string();
                    let f = piece.name(rng.gen_range(0..piece.len())).to_string();
                    let right = piece.rename_element(&f, &e).expect("fresh name");
                    two_sum(&TwoSumSpec::new(left, right, e)).expect("valid 2-sum")
                }
            });
        }
        let m = m.expect("at least two pieces");
        if m.len() <= 11 && m.is_connected() {
            out.push(m);
        }
    }
    out
}
