use super::Multigraph;
use crate::error::{Error, Result};
use crate::matroid::{two_sum, Matroid, TwoSumSpec};

/// Glues `G1 - e` and `G2 - e` after identifying the vertex pairs in `glue`.
/// Vertices of `G2` whose names clash with `G1` get a numeric suffix.
fn glue(g1: &Multigraph, g2: &Multigraph, e: &str, glue: &[(usize, usize)]) -> Result<Multigraph> {
    let mut vertices: Vec<String> = g1.vertices().to_vec();
    let mut map = vec![usize::MAX; g2.vertex_count()];
    for &(v1, v2) in glue {
        map[v2] = v1;
    }
    for (i, name) in g2.vertices().iter().enumerate() {
        if map[i] != usize::MAX {
            continue;
        }
        let mut fresh = name.clone();
        let mut k = 2;
        while vertices.contains(&fresh) {
            fresh = format!("{name}_{k}");
            k += 1;
        }
        map[i] = vertices.len();
        vertices.push(fresh);
    }
    let mut edges: Vec<(String, usize, usize)> = g1
        .edges()
        .iter()
        .filter(|x| x.name != e)
        .map(|x| (x.name.clone(), x.u, x.v))
        .collect();
    edges.extend(
        g2.edges()
            .iter()
            .filter(|x| x.name != e)
            .map(|x| (x.name.clone(), map[x.u], map[x.v])),
    );
    Multigraph::from_indexed(vertices, edges)
}

fn shared_edge(g1: &Multigraph, g2: &Multigraph, e: &str) -> Result<(usize, usize)> {
    let i1 = g1.edge_index(e)?;
    let i2 = g2.edge_index(e)?;
    let shared = g1.edges().iter().filter(|x| g2.edge_index(&x.name).is_ok()).count();
    if shared != 1 {
        return Err(Error::pre(format!("graphs must share only the edge `{e}`")));
    }
    Ok((i1, i2))
}

fn check_sum(result: &Multigraph, expected: &Matroid) -> Result<()> {
    if result.bicircular()? != *expected {
        return Err(Error::Defect("graph sum does not realise the matroid 2-sum".into()));
    }
    Ok(())
}

/// Identifies the vertices carrying the loop `e` in each graph and drops `e`.
/// The bicircular matroid of the result is the 2-sum along `e`.
pub fn loop_sum(g1: &Multigraph, g2: &Multigraph, e: &str) -> Result<Multigraph> {
    let (i1, i2) = shared_edge(g1, g2, e)?;
    if !g1.is_loop(i1) || !g2.is_loop(i2) {
        return Err(Error::pre(format!("loop-sum: `{e}` must be a loop in both graphs")));
    }
    let m1 = g1.bicircular()?;
    let m2 = g2.bicircular()?;
    if m1.is_separator_element(i1) {
        return Err(Error::pre(format!("loop-sum: `{e}` is a separator of B(G1)")));
    }
    if m2.is_separator_element(i2) && !g2.without_isolated_vertices().is_cycle() {
        return Err(Error::pre(format!("loop-sum: `{e}` is a separator of B(G2)")));
    }
    let result = glue(g1, g2, e, &[(g1.edge(i1).u, g2.edge(i2).u)])?;
    let expected = two_sum(&TwoSumSpec::new(m1, m2, e))?;
    check_sum(&result, &expected)?;
    Ok(result)
}

/// `G2` must be a cycle through the link `e`; its ends are identified with the
/// ends of `e` in `G1`. The bicircular matroid of the result is the 2-sum of
/// `B(G1)` with a circuit on `E(G2)`.
pub fn link_sum(g1: &Multigraph, g2: &Multigraph, e: &str) -> Result<Multigraph> {
    let (i1, i2) = shared_edge(g1, g2, e)?;
    let cycle = g2.without_isolated_vertices();
    if !cycle.is_cycle() {
        return Err(Error::pre("link-sum: second graph must be a cycle"));
    }
    if g1.is_loop(i1) || g2.is_loop(i2) {
        return Err(Error::pre(format!("link-sum: `{e}` must be a link in both graphs")));
    }
    let m1 = g1.bicircular()?;
    if m1.is_separator_element(i1) {
        return Err(Error::pre(format!("link-sum: `{e}` is a separator of B(G1)")));
    }
    let (a1, b1) = (g1.edge(i1).u, g1.edge(i1).v);
    let (a2, b2) = (g2.edge(i2).u, g2.edge(i2).v);
    let result = glue(g1, g2, e, &[(a1, a2), (b1, b2)])?;
    let names = g2.edge_names();
    let circuit = Matroid::uniform(names.len() - 1, &names)?;
    let expected = two_sum(&TwoSumSpec::new(m1, circuit, e))?;
    check_sum(&result, &expected)?;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::super::g;
    use super::*;

    #[test]
    fn loop_sum_of_two_u24s() {
        let g1 = g("u v", &["e u u", "a u v", "b u v", "c u v"]);
        let g2 = g("u v", &["e u u", "d u v", "f u v", "h u v"]);
        let s = loop_sum(&g1, &g2, "e").unwrap();
        assert_eq!(s.vertex_count(), 3);
        let expected = two_sum(&TwoSumSpec::new(
            g1.bicircular().unwrap(),
            g2.bicircular().unwrap(),
            "e",
        ))
        .unwrap();
        assert_eq!(s.bicircular().unwrap(), expected);
    }

    #[test]
    fn link_sum_with_triangle() {
        let g1 = g("1 2 3", &["a 1 2", "b 1 2", "e 1 2", "c 2 3", "d 3 1", "f 3 3"]);
        let tri = g("x y z", &["e x y", "p y z", "q z x"]);
        let s = link_sum(&g1, &tri, "e").unwrap();
        assert_eq!(s.edge_count(), 7);
    }

    #[test]
    fn mismatched_edge_kinds_are_rejected() {
        let g1 = g("u v", &["e u u", "a u v", "b u v", "c u v"]);
        let g2 = g("u v", &["e u v", "d u v", "f u v", "h u v"]);
        assert!(matches!(loop_sum(&g1, &g2, "e"), Err(Error::Precondition(_))));
    }
}
