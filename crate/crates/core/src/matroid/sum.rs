use super::{lookup, normalize_names, Matroid};
use crate::bitset::ElementSet;
use crate::error::{Error, Result};

/// Two matroids glued along a shared basepoint.
#[derive(Debug, Clone)]
pub struct TwoSumSpec {
    pub left: Matroid,
    pub right: Matroid,
    pub basepoint: String,
}

impl TwoSumSpec {
    pub fn new(left: Matroid, right: Matroid, basepoint: impl Into<String>) -> Self {
        TwoSumSpec {
            left,
            right,
            basepoint: basepoint.into(),
        }
    }
}

/// Maps circuits of `m` into the index space of `names`, dropping `skip`.
fn lift_circuits(m: &Matroid, names: &[String], skip: Option<usize>) -> Result<Vec<(ElementSet, bool)>> {
    let map: Vec<Option<usize>> = (0..m.len())
        .map(|i| {
            if Some(i) == skip {
                Ok(None)
            } else {
                lookup(names, m.name(i)).map(Some)
            }
        })
        .collect::<Result<_>>()?;
    Ok(m.circuits()
        .into_iter()
        .map(|c| {
            let through = skip.is_some_and(|e| c.contains(e));
            (c.iter().filter_map(|i| map[i]).collect(), through)
        })
        .collect())
}

/// The 2-sum: circuits avoiding the basepoint on either side, plus
/// `(C1 - e) ∪ (C2 - e)` for circuits through it.
pub fn two_sum(spec: &TwoSumSpec) -> Result<Matroid> {
    let TwoSumSpec { left, right, basepoint } = spec;
    let e1 = left.index_of(basepoint)?;
    let e2 = right.index_of(basepoint)?;
    let shared: Vec<&String> = left
        .names()
        .iter()
        .filter(|n| right.index_of(n).is_ok())
        .collect();
    if shared.len() != 1 {
        return Err(Error::pre(format!(
            "2-sum summands must share only the basepoint `{basepoint}`"
        )));
    }
    for (m, e, side) in [(left, e1, "left"), (right, e2, "right")] {
        if m.is_separator_element(e) {
            return Err(Error::pre(format!(
                "basepoint `{basepoint}` is a loop or coloop of the {side} summand"
            )));
        }
    }
    let all: Vec<&str> = left
        .names()
        .iter()
        .chain(right.names())
        .map(String::as_str)
        .filter(|n| n != basepoint)
        .collect();
    let names = normalize_names(&all)?;
    let c1 = lift_circuits(left, &names, Some(e1))?;
    let c2 = lift_circuits(right, &names, Some(e2))?;
    let mut circuits: Vec<ElementSet> = Vec::new();
    circuits.extend(c1.iter().chain(&c2).filter(|(_, t)| !t).map(|(c, _)| *c));
    for (a, _) in c1.iter().filter(|(_, t)| *t) {
        for (b, _) in c2.iter().filter(|(_, t)| *t) {
            circuits.push(*a | *b);
        }
    }
    Matroid::from_circuit_masks(names, &circuits)
}

/// Smallest `__bpK` not already used as an element name.
pub fn fresh_basepoint(m: &Matroid) -> String {
    (0..)
        .map(|k| format!("__bp{k}"))
        .find(|n| m.index_of(n).is_err())
        .expect("unbounded search")
}

impl Matroid {
    /// Inverse of the 2-sum along the 2-separation `(A, E - A)`, using a fresh
    /// `__bpK` basepoint.
    pub fn split_along(&self, a: ElementSet) -> Result<(Matroid, Matroid, String)> {
        let name = fresh_basepoint(self);
        let (l, r) = self.split_along_named(a, &name)?;
        Ok((l, r, name))
    }

    /// Like [`Matroid::split_along`] with a caller-chosen basepoint name.
    pub fn split_along_named(&self, a: ElementSet, basepoint: &str) -> Result<(Matroid, Matroid)> {
        let b = self.ground() - a;
        if !(self.is_k_separation(a, 2) && self.lambda(a) == 1) {
            return Err(Error::pre("split_along: not an exact 2-separation"));
        }
        if !self.is_connected() {
            return Err(Error::pre("split_along: matroid is not connected"));
        }
        if self.index_of(basepoint).is_ok() {
            return Err(Error::pre(format!("basepoint `{basepoint}` already in use")));
        }
        let circuits = self.circuits();
        Ok((
            self.side_of_split(a, &circuits, basepoint)?,
            self.side_of_split(b, &circuits, basepoint)?,
        ))
    }

    fn side_of_split(&self, side: ElementSet, circuits: &[ElementSet], basepoint: &str) -> Result<Matroid> {
        let mut all: Vec<&str> = self.names_of(side);
        all.push(basepoint);
        let names = normalize_names(&all)?;
        let to_new = |s: ElementSet| -> ElementSet {
            s.iter()
                .map(|i| lookup(&names, self.name(i)).expect("element present"))
                .collect()
        };
        let e = ElementSet::singleton(lookup(&names, basepoint)?);
        let mut inside = Vec::new();
        let mut crossing = Vec::new();
        for &c in circuits {
            if c.is_subset(side) {
                inside.push(to_new(c));
            } else if c.meets(side) {
                crossing.push(to_new(c & side) | e);
            }
        }
        crossing.sort_by_key(|s| s.len());
        crossing.dedup();
        let minimal: Vec<ElementSet> = crossing
            .iter()
            .copied()
            .filter(|s| !crossing.iter().any(|t| t != s && t.is_subset(*s)))
            .collect();
        inside.extend(minimal);
        Matroid::from_circuit_masks(names, &inside)
    }
}
