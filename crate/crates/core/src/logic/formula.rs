use std::collections::BTreeSet;
use std::fmt;

/// A monadic second-order formula over the predicates `Ind` and `⊆`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Ind(String),
    Sub(String, String),
    /// Sugar for mutual inclusion.
    Eq(String, String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
    /// Exactly `k` subsets satisfy the body.
    ExistsExactly(usize, String, Box<Formula>),
}

use Formula::*;

pub fn ind(x: &str) -> Formula {
    Ind(x.to_string())
}

pub fn sub(x: &str, y: &str) -> Formula {
    Sub(x.to_string(), y.to_string())
}

pub fn eq(x: &str, y: &str) -> Formula {
    Eq(x.to_string(), y.to_string())
}

pub fn not(f: Formula) -> Formula {
    Not(Box::new(f))
}

pub fn and(f: Formula, g: Formula) -> Formula {
    And(Box::new(f), Box::new(g))
}

pub fn or(f: Formula, g: Formula) -> Formula {
    Or(Box::new(f), Box::new(g))
}

pub fn implies(f: Formula, g: Formula) -> Formula {
    Implies(Box::new(f), Box::new(g))
}

pub fn iff(f: Formula, g: Formula) -> Formula {
    Iff(Box::new(f), Box::new(g))
}

pub fn exists(x: &str, f: Formula) -> Formula {
    Exists(x.to_string(), Box::new(f))
}

pub fn forall(x: &str, f: Formula) -> Formula {
    Forall(x.to_string(), Box::new(f))
}

pub fn exists_exactly(k: usize, x: &str, f: Formula) -> Formula {
    ExistsExactly(k, x.to_string(), Box::new(f))
}

/// Right-nested conjunction. Panics on an empty list.
pub fn and_all(fs: impl IntoIterator<Item = Formula>) -> Formula {
    fold_right(fs.into_iter().collect(), and)
}

/// Right-nested disjunction. Panics on an empty list.
pub fn or_any(fs: impl IntoIterator<Item = Formula>) -> Formula {
    fold_right(fs.into_iter().collect(), or)
}

fn fold_right(mut fs: Vec<Formula>, op: fn(Formula, Formula) -> Formula) -> Formula {
    let mut acc = fs.pop().expect("at least one operand");
    while let Some(f) = fs.pop() {
        acc = op(f, acc);
    }
    acc
}

impl Formula {
    pub fn is_quantifier(&self) -> bool {
        matches!(self, Exists(..) | Forall(..) | ExistsExactly(..))
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Ind(_) | Sub(..) | Eq(..) => 1,
            Not(f) | Exists(_, f) | Forall(_, f) | ExistsExactly(_, _, f) => 1 + f.size(),
            And(f, g) | Or(f, g) | Implies(f, g) | Iff(f, g) => 1 + f.size() + g.size(),
        }
    }

    /// Longest root-to-leaf path, counting nodes.
    pub fn depth(&self) -> usize {
        match self {
            Ind(_) | Sub(..) | Eq(..) => 1,
            Not(f) | Exists(_, f) | Forall(_, f) | ExistsExactly(_, _, f) => 1 + f.depth(),
            And(f, g) | Or(f, g) | Implies(f, g) | Iff(f, g) => 1 + f.depth().max(g.depth()),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        let mut see = |x: &str, bound: &Vec<&str>| {
            if !bound.contains(&x) {
                out.insert(x.to_string());
            }
        };
        match self {
            Ind(x) => see(x, bound),
            Sub(x, y) | Eq(x, y) => {
                see(x, bound);
                see(y, bound);
            }
            Not(f) => f.collect_free(bound, out),
            And(f, g) | Or(f, g) | Implies(f, g) | Iff(f, g) => {
                f.collect_free(bound, out);
                g.collect_free(bound, out);
            }
            Exists(x, f) | Forall(x, f) | ExistsExactly(_, x, f) => {
                bound.push(x);
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit_vars(&mut |x| {
            out.insert(x.to_string());
        });
        out
    }

    fn visit_vars(&self, f: &mut dyn FnMut(&str)) {
        match self {
            Ind(x) => f(x),
            Sub(x, y) | Eq(x, y) => {
                f(x);
                f(y);
            }
            Not(g) => g.visit_vars(f),
            And(g, h) | Or(g, h) | Implies(g, h) | Iff(g, h) => {
                g.visit_vars(f);
                h.visit_vars(f);
            }
            Exists(x, g) | Forall(x, g) | ExistsExactly(_, x, g) => {
                f(x);
                g.visit_vars(f);
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Replaces free occurrences of `from` by `to`, renaming any binder that
    /// would capture `to`.
    pub fn rename_free(&self, from: &str, to: &str, fresh: &mut Fresh) -> Formula {
        let r = |x: &String| if x == from { to.to_string() } else { x.clone() };
        match self {
            Ind(x) => Ind(r(x)),
            Sub(x, y) => Sub(r(x), r(y)),
            Eq(x, y) => Eq(r(x), r(y)),
            Not(f) => not(f.rename_free(from, to, fresh)),
            And(f, g) => and(f.rename_free(from, to, fresh), g.rename_free(from, to, fresh)),
            Or(f, g) => or(f.rename_free(from, to, fresh), g.rename_free(from, to, fresh)),
            Implies(f, g) => implies(f.rename_free(from, to, fresh), g.rename_free(from, to, fresh)),
            Iff(f, g) => iff(f.rename_free(from, to, fresh), g.rename_free(from, to, fresh)),
            Exists(..) | Forall(..) | ExistsExactly(..) => {
                let (x, body) = self.binder().expect("quantifier");
                if x == from {
                    return self.clone();
                }
                let (x, body) = if x == to && body.free_vars().contains(from) {
                    let y = fresh.next();
                    (y.clone(), body.rename_free(x, &y, fresh))
                } else {
                    (x.to_string(), body.clone())
                };
                self.with_binder(&x, body.rename_free(from, to, fresh))
            }
        }
    }

    /// Bound variable and body of a quantifier node.
    pub fn binder(&self) -> Option<(&str, &Formula)> {
        match self {
            Exists(x, f) | Forall(x, f) | ExistsExactly(_, x, f) => Some((x, f)),
            _ => None,
        }
    }

    /// The same quantifier over a new variable and body.
    pub(crate) fn with_binder(&self, x: &str, body: Formula) -> Formula {
        match self {
            Exists(..) => exists(x, body),
            Forall(..) => forall(x, body),
            ExistsExactly(k, ..) => exists_exactly(*k, x, body),
            _ => panic!("with_binder on a non-quantifier"),
        }
    }

    /// Renames every bound variable to a fresh name, so no name is bound
    /// twice or both bound and free.
    pub fn freshen(&self, fresh: &mut Fresh) -> Formula {
        match self {
            Ind(_) | Sub(..) | Eq(..) => self.clone(),
            Not(f) => not(f.freshen(fresh)),
            And(f, g) => and(f.freshen(fresh), g.freshen(fresh)),
            Or(f, g) => or(f.freshen(fresh), g.freshen(fresh)),
            Implies(f, g) => implies(f.freshen(fresh), g.freshen(fresh)),
            Iff(f, g) => iff(f.freshen(fresh), g.freshen(fresh)),
            _ => {
                let (x, body) = self.binder().expect("quantifier");
                let y = fresh.next();
                let body = body.freshen(fresh).rename_free(x, &y, fresh);
                self.with_binder(&y, body)
            }
        }
    }

    /// Bound variables renamed `_0`, `_1`, … in order of appearance; equal
    /// results mean the formulas are alpha-equivalent.
    pub fn normalize_bound(&self) -> Formula {
        fn go(f: &Formula, scope: &mut Vec<(String, String)>, next: &mut usize) -> Formula {
            let r = |x: &String, scope: &Vec<(String, String)>| {
                scope
                    .iter()
                    .rev()
                    .find(|(from, _)| from == x)
                    .map_or_else(|| x.clone(), |(_, to)| to.clone())
            };
            match f {
                Ind(x) => Ind(r(x, scope)),
                Sub(x, y) => Sub(r(x, scope), r(y, scope)),
                Eq(x, y) => Eq(r(x, scope), r(y, scope)),
                Not(g) => not(go(g, scope, next)),
                And(g, h) => and(go(g, scope, next), go(h, scope, next)),
                Or(g, h) => or(go(g, scope, next), go(h, scope, next)),
                Implies(g, h) => implies(go(g, scope, next), go(h, scope, next)),
                Iff(g, h) => iff(go(g, scope, next), go(h, scope, next)),
                _ => {
                    let (x, body) = f.binder().expect("quantifier");
                    let y = format!("_{next}");
                    *next += 1;
                    scope.push((x.to_string(), y.clone()));
                    let body = go(body, scope, next);
                    scope.pop();
                    f.with_binder(&y, body)
                }
            }
        }
        go(self, &mut Vec::new(), &mut 0)
    }

    pub fn alpha_eq(&self, other: &Formula) -> bool {
        self.normalize_bound() == other.normalize_bound()
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::syntax::print(self))
    }
}

/// Source of fresh variable names `{base}_{n}`.
#[derive(Debug, Clone)]
pub struct Fresh {
    base: String,
    next: usize,
}

impl Fresh {
    pub fn new(base: &str) -> Self {
        Fresh {
            base: base.to_string(),
            next: 0,
        }
    }

    /// Starts past every `{base}_{n}` already used in `f`.
    pub fn avoiding(base: &str, f: &Formula) -> Self {
        let prefix = format!("{base}_");
        let next = f
            .all_vars()
            .iter()
            .filter_map(|v| v.strip_prefix(&prefix)?.parse::<usize>().ok())
            .map(|n| n + 1)
            .max()
            .unwrap_or(0);
        Fresh {
            base: base.to_string(),
            next,
        }
    }

    pub fn next(&mut self) -> String {
        let v = format!("{}_{}", self.base, self.next);
        self.next += 1;
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_variables() {
        let f = and(exists("X", sub("X", "Y")), ind("X"));
        assert_eq!(f.free_vars().into_iter().collect::<Vec<_>>(), vec!["X", "Y"]);
        assert!(forall("Y", exists("X", sub("X", "Y"))).is_sentence());
    }

    #[test]
    fn renaming_avoids_capture() {
        let f = exists("Y", sub("X", "Y"));
        let mut fresh = Fresh::new("V");
        let g = f.rename_free("X", "Y", &mut fresh);
        assert_eq!(g, exists("V_0", sub("Y", "V_0")));
        // Bound occurrences are untouched.
        assert_eq!(f.rename_free("Y", "Z", &mut fresh), f);
    }

    #[test]
    fn alpha_equivalence() {
        let a = forall("A", exists("B", sub("A", "B")));
        let b = forall("P", exists("Q", sub("P", "Q")));
        assert!(a.alpha_eq(&b));
        assert!(!a.alpha_eq(&forall("P", exists("Q", sub("Q", "P")))));
        let mut fresh = Fresh::avoiding("X", &a);
        assert!(a.freshen(&mut fresh).alpha_eq(&a));
    }
}
