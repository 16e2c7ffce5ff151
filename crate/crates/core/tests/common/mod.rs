//! Brute-force reference predicates shared by the integration tests. Nothing
//! here calls the library's own rank or connectivity code.

#![allow(dead_code)]

use bicircular::bitset::all_subsets;
use bicircular::logic::{build, Evaluator, Formula, Interpretation, Params};
use bicircular::{ElementSet, SetSystem};

/// Largest member of the family inside `x`.
pub fn rank(s: &SetSystem, x: ElementSet) -> usize {
    x.subsets().filter(|y| s.contains(*y)).map(|y| y.len()).max().unwrap_or(0)
}

/// The three independence axioms, checked literally.
pub fn is_matroid(s: &SetSystem) -> bool {
    let n = s.len();
    let members: Vec<ElementSet> = all_subsets(n).filter(|x| s.contains(*x)).collect();
    if !s.contains(ElementSet::EMPTY) {
        return false;
    }
    let hereditary = members.iter().all(|x| x.subsets().all(|y| s.contains(y)));
    let exchange = members.iter().all(|&i| {
        members
            .iter()
            .filter(|j| j.len() > i.len())
            .all(|&j| (j - i).iter().any(|e| s.contains(i.with(e))))
    });
    hereditary && exchange
}

pub fn lambda(s: &SetSystem, x: ElementSet) -> usize {
    rank(s, x) + rank(s, s.ground() - x) - rank(s, s.ground())
}

pub fn is_k_separation(s: &SetSystem, x: ElementSet, k: usize) -> bool {
    is_matroid(s) && x.len() >= k && (s.ground() - x).len() >= k && lambda(s, x) < k
}

pub fn is_n_connected(s: &SetSystem, n: usize) -> bool {
    is_matroid(s) && (1..n).all(|k| all_subsets(s.len()).all(|x| !is_k_separation(s, x, k)))
}

pub fn is_basis_of(s: &SetSystem, x: ElementSet, y: ElementSet) -> bool {
    x.is_subset(y) && s.contains(x) && y.subsets().all(|z| !x.is_subset(z) || z == x || !s.contains(z))
}

pub fn formula(name: &str, params: Params) -> Formula {
    build(name, &params).unwrap()
}

/// Every assignment of subsets to `vars`.
pub fn assignments(n: usize, vars: &[&str]) -> Vec<Interpretation> {
    let mut out = vec![Interpretation::new()];
    for v in vars {
        out = out
            .into_iter()
            .flat_map(|th| all_subsets(n).map(move |x| th.clone().with(v, x)))
            .collect();
    }
    out
}

/// Evaluates `f` on `s` under every assignment to `vars` and compares with
/// `native`. Returns the number of cases checked.
pub fn agree(
    s: &SetSystem,
    f: &Formula,
    vars: &[&str],
    mut native: impl FnMut(&Interpretation) -> bool,
) -> Result<usize, String> {
    let mut e = Evaluator::new(s, f).map_err(|e| e.to_string())?;
    let all = assignments(s.len(), vars);
    for th in &all {
        let got = e.eval(th).map_err(|e| e.to_string())?;
        if got != native(th) {
            let shown: Vec<String> = th.iter().map(|(v, x)| format!("{v}={:?}", s.names_of(x))).collect();
            return Err(format!(
                "formula says {got} on {:?} with {}",
                s.names(),
                shown.join(" ")
            ));
        }
    }
    Ok(all.len())
}
