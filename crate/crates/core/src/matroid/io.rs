//! Line-based set-system text format.
//!
//! ```text
//! ground a b c d
//! ind
//! ind a
//! ind a b
//! ```
//!
//! A bare `ind` is the empty set. Instead of `ind` lines a file may list
//! `circuit` lines; the independent sets are then those containing no listed
//! circuit. `#` starts a comment.

use super::{SetSystem, Matroid};
use crate::bitset::{all_subsets, ElementSet, Family};
use crate::error::{Error, Result};

/// Tokenized non-blank lines: (1-based line number, column of first token, tokens).
pub(crate) fn lines(text: &str) -> impl Iterator<Item = (usize, usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens.is_empty() {
            return None;
        }
        let col = body.len() - body.trim_start().len() + 1;
        Some((i + 1, col, tokens))
    })
}

pub fn parse_set_system(text: &str) -> Result<SetSystem> {
    let mut ground: Option<Vec<String>> = None;
    let mut inds: Vec<(usize, Vec<&str>)> = Vec::new();
    let mut circuits: Vec<(usize, Vec<&str>)> = Vec::new();
    for (line, col, tokens) in lines(text) {
        match tokens[0] {
            "ground" => {
                if ground.is_some() {
                    return Err(Error::syntax(line, col, "duplicate `ground` line"));
                }
                let mut names: Vec<String> = tokens[1..].iter().map(|s| s.to_string()).collect();
                names.sort();
                if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
                    return Err(Error::syntax(line, col, format!("duplicate element `{}`", w[0])));
                }
                if names.len() > crate::bitset::MAX_ELEMENTS {
                    return Err(Error::syntax(line, col, Error::TooManyElements(names.len()).to_string()));
                }
                ground = Some(names);
            }
            "ind" => inds.push((line, tokens[1..].to_vec())),
            "circuit" => circuits.push((line, tokens[1..].to_vec())),
            other => {
                return Err(Error::syntax(line, col, format!("unknown statement `{other}`")));
            }
        }
    }
    let names = ground.ok_or_else(|| Error::syntax(1, 1, "missing `ground` line"))?;
    if !inds.is_empty() && !circuits.is_empty() {
        return Err(Error::syntax(circuits[0].0, 1, "cannot mix `ind` and `circuit` lines"));
    }
    let mask = |line: usize, set: &[&str]| -> Result<ElementSet> {
        set.iter().try_fold(ElementSet::EMPTY, |acc, n| {
            let i = names
                .binary_search_by(|x| x.as_str().cmp(n))
                .map_err(|_| Error::syntax(line, 1, format!("unknown element `{n}`")))?;
            Ok(acc.with(i))
        })
    };
    let mut family = Family::empty(names.len());
    if circuits.is_empty() {
        for (line, set) in &inds {
            family.insert(mask(*line, set)?);
        }
    } else {
        let cs: Vec<ElementSet> = circuits
            .iter()
            .map(|(line, set)| mask(*line, set))
            .collect::<Result<_>>()?;
        for s in all_subsets(names.len()) {
            if !cs.iter().any(|c| c.is_subset(s)) {
                family.insert(s);
            }
        }
    }
    SetSystem::from_family(names, family)
}

/// Canonical text: ground line, then `ind` lines by size, then lexicographic.
pub fn write_set_system(s: &SetSystem) -> String {
    let mut out = String::new();
    push_line(&mut out, "ground", s.names().iter().map(String::as_str));
    let mut members: Vec<ElementSet> = s.family().iter().collect();
    super::sort_sets(&mut members);
    for m in members {
        push_line(&mut out, "ind", s.names_of(m).into_iter());
    }
    out
}

/// Compact text listing circuits instead of independent sets.
pub fn write_circuits(m: &Matroid) -> String {
    let mut out = String::new();
    push_line(&mut out, "ground", m.names().iter().map(String::as_str));
    for c in m.circuits() {
        push_line(&mut out, "circuit", m.names_of(c).into_iter());
    }
    out
}

fn push_line<'a>(out: &mut String, keyword: &str, items: impl Iterator<Item = &'a str>) {
    out.push_str(keyword);
    for it in items {
        out.push(' ');
        out.push_str(it);
    }
    out.push('\n');
}
