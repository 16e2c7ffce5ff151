//! Satisfaction of formulas over a set-system.
//!
//! Formulas are compiled into a hash-consed node arena. Variables live in
//! slots: free variables first, then one slot per quantifier depth, so
//! alpha-equivalent subformulas at the same depth share a node. Quantifier
//! nodes memoize their value keyed on the values of their free slots, which
//! stays valid across calls with different interpretations.

use super::formula::Formula;
use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::matroid::SetSystem;
use rustc_hash::FxHashMap;
use std::collections::BTreeMap;

/// Values for the free variables of a formula.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Interpretation {
    map: BTreeMap<String, ElementSet>,
}

impl Interpretation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, var: &str, value: ElementSet) -> Self {
        self.insert(var, value);
        self
    }

    pub fn insert(&mut self, var: &str, value: ElementSet) {
        self.map.insert(var.to_string(), value);
    }

    pub fn get(&self, var: &str) -> Option<ElementSet> {
        self.map.get(var).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, ElementSet)> {
        self.map.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// Binds each variable to the set of named elements.
    pub fn from_names<S: AsRef<str>>(s: &SetSystem, bindings: &[(&str, Vec<S>)]) -> Result<Self> {
        let mut out = Self::new();
        for (var, names) in bindings {
            let mut set = ElementSet::EMPTY;
            for n in names {
                set = set.with(s.index_of(n.as_ref())?);
            }
            out.insert(var, set);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EvalMode {
    #[default]
    Memoized,
    /// Plain recursion, kept as a reference.
    Naive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Quant {
    Exists,
    Forall,
    Exactly(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Node {
    Ind(u16),
    Sub(u16, u16),
    Eq(u16, u16),
    Not(u32),
    And(u32, u32),
    Or(u32, u32),
    Implies(u32, u32),
    Iff(u32, u32),
    Quant(Quant, u16, u32),
}

/// Memo tables smaller than this many key bits are dense arrays.
const DENSE_BITS: usize = 12;

/// Sparse memo entries kept across all tables before they are all dropped.
const SPARSE_BUDGET: usize = 1 << 22;

enum Memo {
    None,
    Dense(Vec<u8>),
    Sparse(FxHashMap<u128, bool>),
}

/// A formula compiled against one set-system.
pub struct Evaluator<'a> {
    system: &'a SetSystem,
    n: usize,
    nodes: Vec<Node>,
    free_slots: Vec<Vec<u16>>,
    memo: Vec<Memo>,
    root: u32,
    inputs: Vec<String>,
    slots: usize,
    mode: EvalMode,
    steps: u64,
    sparse_entries: usize,
}

struct Compiler {
    nodes: Vec<Node>,
    free_slots: Vec<Vec<u16>>,
    index: FxHashMap<Node, u32>,
    max_slot: usize,
}

impl Compiler {
    fn intern(&mut self, node: Node, free: Vec<u16>) -> u32 {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let id = self.nodes.len() as u32;
        self.nodes.push(node.clone());
        self.free_slots.push(free);
        self.index.insert(node, id);
        id
    }

    fn union(&self, a: u32, b: u32) -> Vec<u16> {
        let mut v = self.free_slots[a as usize].clone();
        v.extend_from_slice(&self.free_slots[b as usize]);
        v.sort_unstable();
        v.dedup();
        v
    }

    fn compile(&mut self, f: &Formula, scope: &mut Vec<(String, u16)>, depth: usize, base: usize) -> Result<u32> {
        let slot = |x: &str, scope: &Vec<(String, u16)>| -> Result<u16> {
            scope
                .iter()
                .rev()
                .find(|(name, _)| name == x)
                .map(|&(_, s)| s)
                .ok_or_else(|| Error::UnboundVariable(x.to_string()))
        };
        let pair = |a: u16, b: u16| {
            let mut v = vec![a, b];
            v.sort_unstable();
            v.dedup();
            v
        };
        Ok(match f {
            Formula::Ind(x) => {
                let s = slot(x, scope)?;
                self.intern(Node::Ind(s), vec![s])
            }
            Formula::Sub(x, y) => {
                let (a, b) = (slot(x, scope)?, slot(y, scope)?);
                self.intern(Node::Sub(a, b), pair(a, b))
            }
            Formula::Eq(x, y) => {
                let (a, b) = (slot(x, scope)?, slot(y, scope)?);
                self.intern(Node::Eq(a, b), pair(a, b))
            }
            Formula::Not(g) => {
                let g = self.compile(g, scope, depth, base)?;
                let free = self.free_slots[g as usize].clone();
                self.intern(Node::Not(g), free)
            }
            Formula::And(g, h) | Formula::Or(g, h) | Formula::Implies(g, h) | Formula::Iff(g, h) => {
                let a = self.compile(g, scope, depth, base)?;
                let b = self.compile(h, scope, depth, base)?;
                let free = self.union(a, b);
                let node = match f {
                    Formula::And(..) => Node::And(a, b),
                    Formula::Or(..) => Node::Or(a, b),
                    Formula::Implies(..) => Node::Implies(a, b),
                    _ => Node::Iff(a, b),
                };
                self.intern(node, free)
            }
            Formula::Exists(x, g) | Formula::Forall(x, g) | Formula::ExistsExactly(_, x, g) => {
                let q = match f {
                    Formula::Exists(..) => Quant::Exists,
                    Formula::Forall(..) => Quant::Forall,
                    Formula::ExistsExactly(k, ..) => Quant::Exactly(*k),
                    _ => unreachable!(),
                };
                let s = u16::try_from(base + depth).map_err(|_| Error::pre("formula nests too deeply"))?;
                self.max_slot = self.max_slot.max(s as usize + 1);
                scope.push((x.clone(), s));
                let body = self.compile(g, scope, depth + 1, base);
                scope.pop();
                let body = body?;
                let free: Vec<u16> = self.free_slots[body as usize].iter().copied().filter(|&t| t != s).collect();
                self.intern(Node::Quant(q, s, body), free)
            }
        })
    }
}

impl<'a> Evaluator<'a> {
    pub fn new(system: &'a SetSystem, f: &Formula) -> Result<Self> {
        Self::with_mode(system, f, EvalMode::Memoized)
    }

    pub fn with_mode(system: &'a SetSystem, f: &Formula, mode: EvalMode) -> Result<Self> {
        let inputs: Vec<String> = f.free_vars().into_iter().collect();
        let mut scope: Vec<(String, u16)> = inputs.iter().enumerate().map(|(i, x)| (x.clone(), i as u16)).collect();
        let mut c = Compiler {
            nodes: Vec::new(),
            free_slots: Vec::new(),
            index: FxHashMap::default(),
            max_slot: inputs.len(),
        };
        let root = c.compile(f, &mut scope, 0, inputs.len())?;
        let n = system.len();
        let memo = c
            .nodes
            .iter()
            .zip(&c.free_slots)
            .map(|(node, free)| match node {
                Node::Quant(..) if mode == EvalMode::Memoized => {
                    let bits = free.len() * n;
                    if bits <= DENSE_BITS {
                        Memo::Dense(Vec::new())
                    } else if bits <= 128 {
                        Memo::Sparse(FxHashMap::default())
                    } else {
                        Memo::None
                    }
                }
                _ => Memo::None,
            })
            .collect();
        Ok(Evaluator {
            system,
            n,
            nodes: c.nodes,
            free_slots: c.free_slots,
            memo,
            root,
            inputs,
            slots: c.max_slot,
            mode,
            steps: 0,
            sparse_entries: 0,
        })
    }

    pub fn mode(&self) -> EvalMode {
        self.mode
    }

    /// Distinct compiled nodes after sharing.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Quantifier bodies evaluated so far.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn eval(&mut self, theta: &Interpretation) -> Result<bool> {
        let mut env = vec![0u32; self.slots.max(1)];
        for (i, x) in self.inputs.iter().enumerate() {
            let v = theta.get(x).ok_or_else(|| Error::UnboundVariable(x.clone()))?;
            if !v.is_subset(self.system.ground()) {
                return Err(Error::pre(format!("value of `{x}` is not a subset of the ground set")));
            }
            env[i] = v.bits();
        }
        Ok(self.go(self.root, &mut env))
    }

    fn key(&self, id: u32, env: &[u32]) -> u128 {
        let mut k: u128 = 0;
        for (i, &s) in self.free_slots[id as usize].iter().enumerate() {
            k |= (env[s as usize] as u128) << (i * self.n);
        }
        k
    }

    fn go(&mut self, id: u32, env: &mut [u32]) -> bool {
        match self.nodes[id as usize] {
            Node::Ind(x) => self.system.contains(ElementSet::from_bits(env[x as usize])),
            Node::Sub(x, y) => env[x as usize] & !env[y as usize] == 0,
            Node::Eq(x, y) => env[x as usize] == env[y as usize],
            Node::Not(g) => !self.go(g, env),
            Node::And(g, h) => self.go(g, env) && self.go(h, env),
            Node::Or(g, h) => self.go(g, env) || self.go(h, env),
            Node::Implies(g, h) => !self.go(g, env) || self.go(h, env),
            Node::Iff(g, h) => self.go(g, env) == self.go(h, env),
            Node::Quant(q, slot, body) => {
                let key = self.key(id, env);
                match &self.memo[id as usize] {
                    Memo::Dense(t) if !t.is_empty() && t[key as usize] != 0 => return t[key as usize] == 2,
                    Memo::Sparse(m) => {
                        if let Some(&v) = m.get(&key) {
                            return v;
                        }
                    }
                    _ => {}
                }
                let saved = env[slot as usize];
                let v = self.quantify(q, slot, body, env);
                env[slot as usize] = saved;
                let bits = self.free_slots[id as usize].len() * self.n;
                match &mut self.memo[id as usize] {
                    Memo::Dense(t) => {
                        if t.is_empty() {
                            *t = vec![0; 1 << bits];
                        }
                        t[key as usize] = 1 + v as u8;
                    }
                    Memo::Sparse(m) => {
                        m.insert(key, v);
                        self.sparse_entries += 1;
                    }
                    Memo::None => {}
                }
                if self.sparse_entries > SPARSE_BUDGET {
                    self.drop_sparse();
                }
                v
            }
        }
    }

    fn drop_sparse(&mut self) {
        for m in &mut self.memo {
            if let Memo::Sparse(t) = m {
                *t = FxHashMap::default();
            }
        }
        self.sparse_entries = 0;
    }

    fn quantify(&mut self, q: Quant, slot: u16, body: u32, env: &mut [u32]) -> bool {
        let total = 1u32 << self.n;
        let mut count = 0usize;
        for s in 0..total {
            env[slot as usize] = s;
            self.steps += 1;
            let b = self.go(body, env);
            match q {
                Quant::Exists if b => return true,
                Quant::Forall if !b => return false,
                Quant::Exactly(k) if b => {
                    count += 1;
                    if count > k {
                        return false;
                    }
                }
                _ => {}
            }
        }
        match q {
            Quant::Exists => false,
            Quant::Forall => true,
            Quant::Exactly(k) => count == k,
        }
    }
}

/// Whether `(S, θ)` satisfies `f`.
pub fn eval(s: &SetSystem, f: &Formula, theta: &Interpretation) -> Result<bool> {
    Evaluator::new(s, f)?.eval(theta)
}

pub fn eval_with(s: &SetSystem, f: &Formula, theta: &Interpretation, mode: EvalMode) -> Result<bool> {
    Evaluator::with_mode(s, f, mode)?.eval(theta)
}

#[cfg(test)]
mod tests {
    use super::super::formula::*;
    use super::super::syntax::parse;
    use super::*;
    use crate::matroid::Matroid;

    fn u(r: usize, n: usize) -> SetSystem {
        Matroid::uniform_abc(r, n).set_system()
    }

    #[test]
    fn atoms() {
        let s = u(1, 2);
        let th = Interpretation::from_names(&s, &[("X", vec!["a", "b"])]).unwrap();
        assert!(!eval(&s, &ind("X"), &th).unwrap());
        assert!(eval(&s, &sub("X", "X"), &th).unwrap());
    }

    #[test]
    fn exists_nonempty_independent() {
        let s = u(1, 2);
        let f = parse("(exists X (and (ind X) (not (exists= 1 Y (sub Y X)))))").unwrap();
        assert!(eval(&s, &f, &Interpretation::new()).unwrap());
        assert!(!eval(&u(0, 2), &f, &Interpretation::new()).unwrap());
    }

    #[test]
    fn sing_counts_subsets() {
        let s = u(2, 3);
        let sing = exists_exactly(2, "Y", sub("Y", "X"));
        for x in 0..8u32 {
            let th = Interpretation::new().with("X", ElementSet::from_bits(x));
            assert_eq!(eval(&s, &sing, &th).unwrap(), x.count_ones() == 1);
            assert_eq!(eval_with(&s, &sing, &th, EvalMode::Naive).unwrap(), x.count_ones() == 1);
        }
    }

    #[test]
    fn unbound_variable_is_an_error() {
        let s = u(1, 2);
        assert_eq!(
            eval(&s, &ind("X"), &Interpretation::new()),
            Err(Error::UnboundVariable("X".into()))
        );
    }

    #[test]
    fn shadowing_and_sharing() {
        // The inner X shadows the outer one.
        let s = u(1, 2);
        let f = parse("(exists X (and (ind X) (forall X (sub X X))))").unwrap();
        assert!(eval(&s, &f, &Interpretation::new()).unwrap());
        // Two alpha-equivalent conjuncts compile to one node.
        let g = parse("(and (exists A (ind A)) (exists B (ind B)))").unwrap();
        let e = Evaluator::new(&s, &g).unwrap();
        assert_eq!(e.node_count(), 3);
    }
}
