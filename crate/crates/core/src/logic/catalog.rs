//! Named formulas, built from the atoms `Ind` and `⊆`.
//!
//! Every builder method takes the names of its free variables and introduces
//! fresh bound variables `X_0`, `X_1`, … from one counter, so formulas built by
//! the same [`Builder`] never clash. Methods ending in `_body` leave out the
//! `Matroid` conjunct so larger sentences state it once.

use super::formula::*;
use super::transform::transduce_in_place;
use crate::error::{Error, Result};
use std::fmt;

/// The formula that picks out vertex sets beyond the explicit ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Phi {
    /// Satisfied by nothing: `Ind[X] ∧ ¬Ind[X]`.
    #[default]
    False,
    NonSepCocircuit,
    GoodCocircuit,
}

impl Phi {
    pub fn parse(s: &str) -> Result<Phi> {
        match s {
            "false" | "none" | "False" => Ok(Phi::False),
            "NonSepCocircuit" => Ok(Phi::NonSepCocircuit),
            "GoodCocircuit" => Ok(Phi::GoodCocircuit),
            other => Err(Error::UnknownFormula(other.to_string())),
        }
    }
}

impl fmt::Display for Phi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phi::False => "false",
            Phi::NonSepCocircuit => "NonSepCocircuit",
            Phi::GoodCocircuit => "GoodCocircuit",
        })
    }
}

/// The vertex family `F_φ ∪ {X_1, …, X_k}` of a graph on the ground set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertices {
    pub phi: Phi,
    pub xs: Vec<String>,
}

pub struct Builder {
    fresh: Fresh,
}

impl Default for Builder {
    fn default() -> Self {
        Self::new()
    }
}

impl Builder {
    pub fn new() -> Self {
        Builder { fresh: Fresh::new("X") }
    }

    /// A builder whose fresh names avoid every variable of `f`.
    pub fn avoiding(f: &Formula) -> Self {
        Builder {
            fresh: Fresh::avoiding("X", f),
        }
    }

    pub fn var(&mut self) -> String {
        self.fresh.next()
    }

    fn vars(&mut self, k: usize) -> Vec<String> {
        (0..k).map(|_| self.var()).collect()
    }

    fn falsum(x: &str) -> Formula {
        and(ind(x), not(ind(x)))
    }

    // ---- sets ----

    pub fn empty(&mut self, x: &str) -> Formula {
        let y = self.var();
        exists_exactly(1, &y, sub(&y, x))
    }

    pub fn sing(&mut self, x: &str) -> Formula {
        let y = self.var();
        exists_exactly(2, &y, sub(&y, x))
    }

    /// `x` has exactly two elements.
    fn pair(&mut self, x: &str) -> Formula {
        let y = self.var();
        exists_exactly(4, &y, sub(&y, x))
    }

    pub fn basis(&mut self, x: &str, y: &str) -> Formula {
        let z = self.var();
        and_all([
            sub(x, y),
            ind(x),
            forall(&z, implies(and(sub(x, &z), sub(&z, y)), or(eq(&z, x), not(ind(&z))))),
        ])
    }

    pub fn n_union(&mut self, xs: &[String], x: &str) -> Formula {
        let s = self.var();
        let sing = self.sing(&s);
        forall(&s, implies(sing, iff(sub(&s, x), or_any(xs.iter().map(|xi| sub(&s, xi))))))
    }

    pub fn rel_diff(&mut self, x1: &str, x2: &str, x: &str) -> Formula {
        let s = self.var();
        let sing = self.sing(&s);
        forall(&s, implies(sing, iff(sub(&s, x), and(sub(&s, x1), not(sub(&s, x2))))))
    }

    fn disjoint(&mut self, x: &str, y: &str) -> Formula {
        let s = self.var();
        let sing = self.sing(&s);
        forall(&s, implies(and(sing, sub(&s, x)), not(sub(&s, y))))
    }

    fn meets(&mut self, x: &str, y: &str) -> Formula {
        let s = self.var();
        let sing = self.sing(&s);
        exists(&s, and_all([sing, sub(&s, x), sub(&s, y)]))
    }

    /// Some element lies in neither `x` nor `y`.
    fn misses_some(&mut self, x: &str, y: &str) -> Formula {
        let s = self.var();
        let sing = self.sing(&s);
        exists(&s, and_all([sing, not(sub(&s, x)), not(sub(&s, y))]))
    }

    /// At least `k` elements inside `x` (or outside it).
    fn at_least(&mut self, k: usize, x: &str, inside: bool) -> Formula {
        let ss = self.vars(k);
        let mut body: Option<Formula> = None;
        for i in (0..k).rev() {
            let mut parts = vec![self.sing(&ss[i])];
            parts.push(if inside { sub(&ss[i], x) } else { not(sub(&ss[i], x)) });
            parts.extend(ss[..i].iter().map(|p| not(eq(&ss[i], p))));
            parts.extend(body.take());
            body = Some(exists(&ss[i], and_all(parts)));
        }
        body.unwrap_or_else(|| sub(x, x))
    }

    fn ground_empty(&mut self) -> Formula {
        let y = self.var();
        exists_exactly(1, &y, sub(&y, &y))
    }

    // ---- matroids ----

    fn is_basis(&mut self, b: &str) -> Formula {
        let z = self.var();
        and(ind(b), forall(&z, implies(and(sub(b, &z), ind(&z)), eq(&z, b))))
    }

    pub fn circuit(&mut self, c: &str) -> Formula {
        let z = self.var();
        and(not(ind(c)), forall(&z, implies(and(sub(&z, c), not(eq(&z, c))), ind(&z))))
    }

    fn meets_all_bases(&mut self, x: &str) -> Formula {
        let b = self.var();
        let basis = self.is_basis(&b);
        let meets = self.meets(&b, x);
        forall(&b, implies(basis, meets))
    }

    /// Minimal sets meeting every basis.
    pub fn cocircuit(&mut self, x: &str) -> Formula {
        let y = self.var();
        let here = self.meets_all_bases(x);
        let smaller = self.meets_all_bases(&y);
        and(
            here,
            forall(&y, implies(and(sub(&y, x), not(eq(&y, x))), not(smaller))),
        )
    }

    /// Empty set independent, independence hereditary, and circuit
    /// elimination. A hereditary family whose minimal non-members satisfy
    /// elimination is exactly the family of independent sets of a matroid.
    pub fn matroid(&mut self) -> Formula {
        let z = self.var();
        let empty = self.empty(&z);
        let has_empty = exists(&z, and(empty, ind(&z)));
        let (x, y) = (self.var(), self.var());
        let hereditary = forall(&x, implies(ind(&x), forall(&y, implies(sub(&y, &x), ind(&y)))));
        let (c1, c2, e, c3, t) = (self.var(), self.var(), self.var(), self.var(), self.var());
        let circ1 = self.circuit(&c1);
        let circ2 = self.circuit(&c2);
        let circ3 = self.circuit(&c3);
        let sing_e = self.sing(&e);
        let sing_t = self.sing(&t);
        let inside = forall(
            &t,
            implies(
                and(sing_t, sub(&t, &c3)),
                and(or(sub(&t, &c1), sub(&t, &c2)), not(sub(&t, &e))),
            ),
        );
        let elimination = forall(
            &c1,
            implies(
                circ1,
                forall(
                    &c2,
                    implies(
                        and(circ2, not(eq(&c1, &c2))),
                        forall(
                            &e,
                            implies(
                                and_all([sing_e, sub(&e, &c1), sub(&e, &c2)]),
                                exists(&c3, and(circ3, inside)),
                            ),
                        ),
                    ),
                ),
            ),
        );
        and_all([has_empty, hereditary, elimination])
    }

    /// `r(Y) + r(E - Y) - r(M) < k`: for every basis `B_Y` of `Y` and basis
    /// `B ⊇ B_Y`, some `i < k` singletons outside `Y` extend `B - Y` to a
    /// maximal independent subset of `E - Y`.
    pub fn lambda_lt(&mut self, y: &str, k: usize) -> Formula {
        let (by, b) = (self.var(), self.var());
        let basis_y = self.basis(&by, y);
        let basis = self.is_basis(&b);
        let witnesses: Vec<Formula> = (0..k).map(|i| self.lambda_witness(y, &b, i)).collect();
        let any = if witnesses.is_empty() { Self::falsum(y) } else { or_any(witnesses) };
        forall(&by, implies(basis_y, forall(&b, implies(and(basis, sub(&by, &b)), any))))
    }

    fn lambda_witness(&mut self, y: &str, b: &str, i: usize) -> Formula {
        let ys = self.vars(i);
        let (yy, s, z) = (self.var(), self.var(), self.var());
        let sing_s = self.sing(&s);
        let mut parts = vec![and(sub(&s, b), not(sub(&s, y)))];
        parts.extend(ys.iter().map(|yj| sub(&s, yj)));
        let is_union = forall(&s, implies(sing_s, iff(sub(&s, &yy), or_any(parts))));
        let outside = self.disjoint(&z, y);
        let maximal = forall(
            &z,
            implies(and_all([sub(&yy, &z), not(eq(&z, &yy)), outside]), not(ind(&z))),
        );
        let mut body = exists(&yy, and_all([is_union, ind(&yy), maximal]));
        for j in (0..i).rev() {
            let mut parts = vec![self.sing(&ys[j]), not(sub(&ys[j], y))];
            parts.extend(ys[..j].iter().map(|p| not(eq(&ys[j], p))));
            parts.push(body);
            body = exists(&ys[j], and_all(parts));
        }
        body
    }

    pub fn k_separation_body(&mut self, x: &str, k: usize) -> Formula {
        let inside = self.at_least(k, x, true);
        let outside = self.at_least(k, x, false);
        let lambda = self.lambda_lt(x, k);
        and_all([inside, outside, lambda])
    }

    pub fn k_separation(&mut self, x: &str, k: usize) -> Formula {
        let m = self.matroid();
        and(m, self.k_separation_body(x, k))
    }

    /// No `k`-separation for `k < n`.
    pub fn n_connected_body(&mut self, n: usize) -> Option<Formula> {
        let parts: Vec<Formula> = (1..n)
            .map(|k| {
                let x = self.var();
                let sep = self.k_separation_body(&x, k);
                forall(&x, not(sep))
            })
            .collect();
        (!parts.is_empty()).then(|| and_all(parts))
    }

    pub fn n_connected(&mut self, n: usize) -> Formula {
        let m = self.matroid();
        match self.n_connected_body(n) {
            Some(b) => and(m, b),
            None => m,
        }
    }

    /// A connected component, or the empty set on an empty ground set.
    pub fn component(&mut self, x: &str) -> Formula {
        let m = self.matroid();
        let ge = self.ground_empty();
        let ex = self.empty(x);
        let nx = self.empty(x);
        let sep = self.lambda_lt(x, 1);
        let y = self.var();
        let ny = self.empty(&y);
        let sep_y = self.lambda_lt(&y, 1);
        let minimal = forall(
            &y,
            implies(and_all([sub(&y, x), not(eq(&y, x)), not(ny)]), not(sep_y)),
        );
        and(m, or(and(ge, ex), and_all([not(nx), sep, minimal])))
    }

    // ---- graphs from vertex families ----

    pub fn phi(&mut self, phi: Phi, x: &str) -> Formula {
        match phi {
            Phi::False => Self::falsum(x),
            Phi::NonSepCocircuit => self.nonsep_cocircuit(x),
            Phi::GoodCocircuit => self.good_cocircuit(x),
        }
    }

    pub fn vertex(&mut self, g: &Vertices, x: &str) -> Formula {
        let mut parts = vec![self.phi(g.phi, x)];
        parts.extend(g.xs.iter().map(|xi| eq(x, xi)));
        or_any(parts)
    }

    /// Every element lies in one or two vertex sets.
    pub fn graphical(&mut self, g: &Vertices) -> Formula {
        let (x, x1, x2) = (self.var(), self.var(), self.var());
        let sing = self.sing(&x);
        let v1 = self.vertex(g, &x1);
        let v2 = self.vertex(g, &x2);
        forall(
            &x,
            implies(
                sing,
                or(
                    exists_exactly(1, &x1, and(sub(&x, &x1), v1)),
                    exists_exactly(2, &x2, and(sub(&x, &x2), v2)),
                ),
            ),
        )
    }

    /// The singleton `s` is a loop: exactly one vertex contains it.
    fn loop_edge(&mut self, g: &Vertices, s: &str) -> Formula {
        let v = self.var();
        let vert = self.vertex(g, &v);
        exists_exactly(1, &v, and(sub(s, &v), vert))
    }

    /// Every split of `x` into two non-empty parts has a vertex meeting both.
    pub fn connected_body(&mut self, g: &Vertices, x: &str) -> Formula {
        let (p, q, v) = (self.var(), self.var(), self.var());
        let np = self.empty(&p);
        let diff = self.rel_diff(x, &p, &q);
        let vert = self.vertex(g, &v);
        let mp = self.meets(&v, &p);
        let mq = self.meets(&v, &q);
        forall(
            &p,
            implies(
                and_all([sub(&p, x), not(np), not(eq(&p, x))]),
                exists(&q, and(diff, exists(&v, and_all([vert, mp, mq])))),
            ),
        )
    }

    /// A non-empty connected edge set that is a single loop, or has no loops
    /// and meets every vertex in zero or two edges.
    pub fn cycle_body(&mut self, g: &Vertices, x: &str) -> Formula {
        let nonempty = self.empty(x);
        let conn = self.connected_body(g, x);
        let sing = self.sing(x);
        let lp = self.loop_edge(g, x);
        let s = self.var();
        let sing_s = self.sing(&s);
        let lp_s = self.loop_edge(g, &s);
        let no_loops = forall(&s, implies(and(sub(&s, x), sing_s), not(lp_s)));
        let (v, t, u) = (self.var(), self.var(), self.var());
        let vert = self.vertex(g, &v);
        let sing_t = self.sing(&t);
        let sing_u = self.sing(&u);
        let degrees = forall(
            &v,
            implies(
                vert,
                or(
                    exists_exactly(2, &t, and_all([sing_t, sub(&t, &v), sub(&t, x)])),
                    exists_exactly(0, &u, and_all([sing_u, sub(&u, &v), sub(&u, x)])),
                ),
            ),
        );
        and_all([not(nonempty), conn, or(and(sing, lp), and(no_loops, degrees))])
    }

    /// Connected with two distinct cycles inside.
    fn two_cycles(&mut self, g: &Vertices, y: &str) -> Formula {
        let conn = self.connected_body(g, y);
        let (c1, c2) = (self.var(), self.var());
        let cy1 = self.cycle_body(g, &c1);
        let cy2 = self.cycle_body(g, &c2);
        and(
            conn,
            exists(
                &c1,
                and_all([
                    sub(&c1, y),
                    cy1,
                    exists(&c2, and_all([sub(&c2, y), not(eq(&c1, &c2)), cy2])),
                ]),
            ),
        )
    }

    pub fn bicycle_body(&mut self, g: &Vertices, x: &str) -> Formula {
        let here = self.two_cycles(g, x);
        let y = self.var();
        let smaller = self.two_cycles(g, &y);
        and(here, forall(&y, implies(and(sub(&y, x), not(eq(&y, x))), not(smaller))))
    }

    pub fn connected(&mut self, g: &Vertices, x: &str) -> Formula {
        let gr = self.graphical(g);
        and(gr, self.connected_body(g, x))
    }

    pub fn cycle(&mut self, g: &Vertices, x: &str) -> Formula {
        let gr = self.graphical(g);
        and(gr, self.cycle_body(g, x))
    }

    pub fn bicycle(&mut self, g: &Vertices, x: &str) -> Formula {
        let gr = self.graphical(g);
        and(gr, self.bicycle_body(g, x))
    }

    fn bicircular_body(&mut self, g: &Vertices) -> Formula {
        let gr = self.graphical(g);
        let x = self.var();
        let circ = self.circuit(&x);
        let bic = self.bicycle_body(g, &x);
        and(gr, forall(&x, iff(circ, bic)))
    }

    /// `M = B(G(F))`.
    pub fn bicircular(&mut self, g: &Vertices) -> Formula {
        let m = self.matroid();
        and(m, self.bicircular_body(g))
    }

    // ---- cocircuits ----

    fn disjoint_circuit_through(&mut self, e: &str, f: &str, x: &str) -> Formula {
        let c = self.var();
        let circ = self.circuit(&c);
        let dis = self.disjoint(&c, x);
        exists(&c, and_all([circ, sub(e, &c), sub(f, &c), dis]))
    }

    /// A cocircuit whose deletion leaves a connected matroid: any two other
    /// elements share a circuit avoiding it.
    pub fn nonsep_cocircuit(&mut self, x: &str) -> Formula {
        let co = self.cocircuit(x);
        let (e, f) = (self.var(), self.var());
        let sing_e = self.sing(&e);
        let sing_f = self.sing(&f);
        let link = self.disjoint_circuit_through(&e, &f, x);
        and(
            co,
            forall(
                &e,
                implies(
                    and(sing_e, not(sub(&e, x))),
                    forall(&f, implies(and_all([sing_f, not(sub(&f, x)), not(eq(&e, &f))]), link)),
                ),
            ),
        )
    }

    /// Any two elements of `d` share a circuit inside `d`.
    fn linked(&mut self, d: &str) -> Formula {
        let (e, f, c) = (self.var(), self.var(), self.var());
        let sing_e = self.sing(&e);
        let sing_f = self.sing(&f);
        let circ = self.circuit(&c);
        forall(
            &e,
            implies(
                and(sing_e, sub(&e, d)),
                forall(
                    &f,
                    implies(
                        and_all([sing_f, sub(&f, d), not(eq(&e, &f))]),
                        exists(&c, and_all([circ, sub(&c, d), sub(&e, &c), sub(&f, &c)])),
                    ),
                ),
            ),
        )
    }

    /// `d` is a connected component of `M \ x`.
    fn deletion_component(&mut self, x: &str, d: &str) -> Formula {
        let dis = self.disjoint(d, x);
        let nonempty = self.empty(d);
        let here = self.linked(d);
        let w = self.var();
        let dis_w = self.disjoint(&w, x);
        let bigger = self.linked(&w);
        and_all([
            dis,
            not(nonempty),
            here,
            forall(&w, implies(and_all([sub(d, &w), not(eq(&w, d)), dis_w]), not(bigger))),
        ])
    }

    fn big_component(&mut self, x: &str, d: &str) -> Formula {
        let comp = self.deletion_component(x, d);
        let one = self.sing(d);
        and(comp, not(one))
    }

    fn is_flat(&mut self, z: &str) -> Formula {
        let (b, s, u) = (self.var(), self.var(), self.var());
        let basis = self.basis(&b, z);
        let sing = self.sing(&s);
        let union = self.n_union(&[b.clone(), s.clone()], &u);
        forall(
            &b,
            implies(
                basis,
                forall(&s, implies(and(sing, not(sub(&s, z))), exists(&u, and(union, ind(&u))))),
            ),
        )
    }

    fn union_of_circuits(&mut self, z: &str) -> Formula {
        let (s, c) = (self.var(), self.var());
        let sing = self.sing(&s);
        let circ = self.circuit(&c);
        forall(
            &s,
            implies(and(sing, sub(&s, z)), exists(&c, and_all([circ, sub(&s, &c), sub(&c, z)]))),
        )
    }

    /// Every cyclic flat containing one of the singletons contains both.
    fn clones(&mut self, e: &str, f: &str) -> Formula {
        let z = self.var();
        let flat = self.is_flat(&z);
        let cyc = self.union_of_circuits(&z);
        forall(&z, implies(and(flat, cyc), iff(sub(e, &z), sub(f, &z))))
    }

    fn rank2_clonal_class(&mut self, f: &str) -> Formula {
        let nonempty = self.empty(f);
        let (e, g) = (self.var(), self.var());
        let sing_e = self.sing(&e);
        let sing_g = self.sing(&g);
        let cl = self.clones(&e, &g);
        let pairwise = forall(
            &e,
            implies(
                and(sing_e, sub(&e, f)),
                forall(&g, implies(and(sing_g, sub(&g, f)), cl)),
            ),
        );
        let (e2, g2) = (self.var(), self.var());
        let sing_e2 = self.sing(&e2);
        let sing_g2 = self.sing(&g2);
        let cl2 = self.clones(&e2, &g2);
        let closed = forall(
            &e2,
            implies(
                and(sing_e2, not(sub(&e2, f))),
                forall(&g2, implies(and(sing_g2, sub(&g2, f)), not(cl2))),
            ),
        );
        let b = self.var();
        let basis = self.basis(&b, f);
        let two = self.pair(&b);
        let rank2 = exists(&b, and(basis, two));
        and_all([not(nonempty), pairwise, closed, rank2])
    }

    /// Every circuit through the singleton `s` meets `x`.
    fn coloop_of_deletion(&mut self, s: &str, x: &str) -> Formula {
        let c = self.var();
        let circ = self.circuit(&c);
        let meets = self.meets(&c, x);
        and(not(sub(s, x)), forall(&c, implies(and(circ, sub(s, &c)), meets)))
    }

    /// A cocircuit `C*` whose deletion has exactly one component `D` with two
    /// or more elements, and each coloop `s` of the deletion lies in a circuit
    /// meeting `D` whose intersection with `C*` is a pair inside a rank-2
    /// clonal class contained in `C*`.
    pub fn good_cocircuit(&mut self, x: &str) -> Formula {
        let co = self.cocircuit(x);
        let (d, d2) = (self.var(), self.var());
        let big = self.big_component(x, &d);
        let big2 = self.big_component(x, &d2);
        let unique = forall(&d2, implies(big2, eq(&d2, &d)));
        let (s, f, c, m) = (self.var(), self.var(), self.var(), self.var());
        let sing_s = self.sing(&s);
        let coloop = self.coloop_of_deletion(&s, x);
        let class = self.rank2_clonal_class(&f);
        let circ = self.circuit(&c);
        let meets_d = self.meets(&c, &d);
        let t = self.var();
        let sing_t = self.sing(&t);
        let meet_is = forall(&t, implies(sing_t, iff(sub(&t, &m), and(sub(&t, &c), sub(&t, x)))));
        let two = self.pair(&m);
        let witnessed = exists(
            &f,
            and_all([
                class,
                sub(&f, x),
                exists(
                    &c,
                    and_all([
                        circ,
                        sub(&s, &c),
                        meets_d,
                        exists(&m, and_all([meet_is, two, sub(&m, &f)])),
                    ]),
                ),
            ]),
        );
        let coloops = forall(&s, implies(and(sing_s, coloop), witnessed));
        and(co, exists(&d, and_all([big, unique, coloops])))
    }

    // ---- rooted 3-connected bicircular matroids ----

    /// Each singleton inside `x` lies in exactly one vertex set.
    fn loops_ok(&mut self, g: &Vertices, x: &str) -> Formula {
        let s = self.var();
        let sing = self.sing(&s);
        let lp = self.loop_edge(g, &s);
        forall(&s, implies(and(sing, sub(&s, x)), lp))
    }

    fn rooted_case(&mut self, phi: Phi, i: usize, x: &str) -> Formula {
        let g = Vertices { phi, xs: self.vars(i) };
        let body = self.bicircular_body(&g);
        let loops = self.loops_ok(&g, x);
        let mut f = and(body, loops);
        for xi in g.xs.iter().rev() {
            f = exists(xi, f);
        }
        f
    }

    /// `(M, x)` is a 3-connected rooted bicircular matroid: at most four
    /// vertices, or non-separating cocircuit stars plus at most three more
    /// vertices, or good cocircuit stars.
    pub fn bicircular_loops(&mut self, x: &str) -> Formula {
        let three = self.n_connected(3);
        let mut cases = Vec::new();
        for i in 1..=4 {
            cases.push(self.rooted_case(Phi::False, i, x));
        }
        for i in 0..=3 {
            cases.push(self.rooted_case(Phi::NonSepCocircuit, i, x));
        }
        cases.push(self.rooted_case(Phi::GoodCocircuit, 0, x));
        and(three, or_any(cases))
    }

    // ---- 2-separations ----

    /// No element outside `a` is spanned (or cospanned) by `a`.
    fn closure_misses(&mut self, a: &str, dual: bool) -> Formula {
        let (s, c, t) = (self.var(), self.var(), self.var());
        let sing_s = self.sing(&s);
        let circ = if dual { self.cocircuit(&c) } else { self.circuit(&c) };
        let sing_t = self.sing(&t);
        let within = forall(&t, implies(and(sing_t, sub(&t, &c)), or(sub(&t, a), eq(&t, &s))));
        forall(
            &s,
            implies(and(sing_s, not(sub(&s, a))), not(exists(&c, and_all([circ, sub(&s, &c), within])))),
        )
    }

    /// A maximal 2-separating non-empty proper subset of `E - a`.
    pub fn wedge(&mut self, a: &str, z: &str) -> Formula {
        let dis = self.disjoint(z, a);
        let nonempty = self.empty(z);
        let proper = self.misses_some(z, a);
        let sep = self.lambda_lt(z, 2);
        let w = self.var();
        let dis_w = self.disjoint(&w, a);
        let proper_w = self.misses_some(&w, a);
        let sep_w = self.lambda_lt(&w, 2);
        let maximal = forall(
            &w,
            implies(and_all([sub(z, &w), not(eq(&w, z)), dis_w, proper_w]), not(sep_w)),
        );
        and_all([dis, not(nonempty), proper, sep, maximal])
    }

    fn skew_like(&mut self, x: &str, y: &str, dual: bool) -> Formula {
        let (c, s) = (self.var(), self.var());
        let circ = if dual { self.cocircuit(&c) } else { self.circuit(&c) };
        let sing = self.sing(&s);
        let inside = forall(&s, implies(and(sing, sub(&s, &c)), or(sub(&s, x), sub(&s, y))));
        forall(&c, implies(and(circ, inside), or(sub(&c, x), sub(&c, y))))
    }

    pub fn good_separation_body(&mut self, a: &str) -> Formula {
        let sep = self.k_separation_body(a, 2);
        let cl = self.closure_misses(a, false);
        let cocl = self.closure_misses(a, true);
        let (z1, z2) = (self.var(), self.var());
        let w1 = self.wedge(a, &z1);
        let w2 = self.wedge(a, &z2);
        let dis = self.disjoint(&z1, &z2);
        let skew = self.skew_like(&z1, &z2, false);
        let coskew = self.skew_like(&z1, &z2, true);
        let wedges = forall(
            &z1,
            implies(w1, forall(&z2, implies(and(w2, not(eq(&z1, &z2))), and_all([dis, skew, coskew])))),
        );
        and_all([sep, cl, cocl, wedges])
    }

    pub fn good_separation(&mut self, a: &str) -> Formula {
        let m = self.matroid();
        and(m, self.good_separation_body(a))
    }

    /// `z` is a union of blocks: `a` and the wedges of `a`.
    pub fn good_set(&mut self, a: &str, z: &str) -> Formula {
        let good = self.good_separation_body(a);
        and(good, self.block_union(a, z))
    }

    /// The block part of [`Builder::good_set`], for use under an assumed
    /// good separation `a`.
    pub fn block_union(&mut self, a: &str, z: &str) -> Formula {
        let (s, w) = (self.var(), self.var());
        let sing = self.sing(&s);
        let wedge = self.wedge(a, &w);
        forall(
            &s,
            implies(
                and(sing, sub(&s, z)),
                or(
                    and(sub(&s, a), sub(a, z)),
                    exists(&w, and_all([wedge, sub(&s, &w), sub(&w, z)])),
                ),
            ),
        )
    }

    /// A union of blocks in which every circuit stays inside one block.
    pub fn independent(&mut self, a: &str, z: &str) -> Formula {
        let gs = self.good_set(a, z);
        and(gs, self.blocks_independent(a, z))
    }

    /// The circuit part of [`Builder::independent`], for `z` already known
    /// to be a union of blocks.
    pub fn blocks_independent(&mut self, a: &str, z: &str) -> Formula {
        let (c, w) = (self.var(), self.var());
        let circ = self.circuit(&c);
        let wedge = self.wedge(a, &w);
        forall(
            &c,
            implies(and(circ, sub(&c, z)), or(sub(&c, a), exists(&w, and(wedge, sub(&c, &w))))),
        )
    }

    /// `x` is the union of the dependent wedges, plus `a` when `a` is
    /// dependent.
    pub fn loop_wedges(&mut self, a: &str, x: &str) -> Formula {
        let good = self.good_separation_body(a);
        let (s, w, z) = (self.var(), self.var(), self.var());
        let sing = self.sing(&s);
        let wedge_w = self.wedge(a, &w);
        let wedge_z = self.wedge(a, &z);
        let only = forall(
            &s,
            implies(
                and(sing, sub(&s, x)),
                or(
                    and(sub(&s, a), not(ind(a))),
                    exists(&w, and_all([wedge_w, not(ind(&w)), sub(&s, &w)])),
                ),
            ),
        );
        let all = forall(&z, implies(and(wedge_z, not(ind(&z))), sub(&z, x)));
        and_all([good, only, all, implies(not(ind(a)), sub(a, x))])
    }

    /// `x = E - a - b`.
    fn rest_of_b(&mut self, x: &str, a: &str, b: &str) -> Formula {
        let s = self.var();
        let sing = self.sing(&s);
        forall(&s, implies(sing, iff(sub(&s, x), and(not(sub(&s, a)), not(sub(&s, b))))))
    }

    /// A 2-separation `(A, B)` with wedges `B1`, `B2` covering `B`, where
    /// `B - B1` and `B - B2` have two or more elements and are not coskew,
    /// and no element of `A` is cospanned by `B1`.
    pub fn degree3_circuit_node_body(&mut self) -> Formula {
        let (a, b1, b2, x, y) = (self.var(), self.var(), self.var(), self.var(), self.var());
        let sep = self.k_separation_body(&a, 2);
        let w1 = self.wedge(&a, &b1);
        let w2 = self.wedge(&a, &b2);
        let (s, c, t) = (self.var(), self.var(), self.var());
        let sing_s = self.sing(&s);
        let coc = self.cocircuit(&c);
        let sing_t = self.sing(&t);
        let within = forall(&t, implies(and(sing_t, sub(&t, &c)), or(sub(&t, &b1), eq(&t, &s))));
        let a_not_cospanned = forall(
            &s,
            implies(and(sing_s, sub(&s, &a)), not(exists(&c, and_all([coc, sub(&s, &c), within])))),
        );
        let u = self.var();
        let sing_u = self.sing(&u);
        let covers = forall(&u, implies(and(sing_u, not(sub(&u, &a))), or(sub(&u, &b1), sub(&u, &b2))));
        let rx = self.rest_of_b(&x, &a, &b1);
        let ry = self.rest_of_b(&y, &a, &b2);
        let two_x = self.at_least(2, &x, true);
        let two_y = self.at_least(2, &y, true);
        let coskew = self.skew_like(&x, &y, true);
        exists(
            &a,
            and(
                sep,
                exists(
                    &b1,
                    and_all([
                        w1,
                        a_not_cospanned,
                        exists(
                            &b2,
                            and_all([
                                w2,
                                covers,
                                exists(
                                    &x,
                                    and_all([rx, two_x, exists(&y, and_all([ry, two_y, not(coskew)]))]),
                                ),
                            ]),
                        ),
                    ]),
                ),
            ),
        )
    }

    pub fn degree3_circuit_node(&mut self) -> Formula {
        let m = self.matroid();
        and(m, self.degree3_circuit_node_body())
    }

    /// Connected bicircular matroids: `U_{0,1}`, a 3-connected bicircular
    /// matroid, or a connected matroid whose decomposition has no circuit node
    /// of degree three and whose 3-connected pieces, seen through every good
    /// separation, are rooted bicircular with the dependent wedges as loops.
    pub fn connected_bicircular(&mut self) -> Formula {
        let m = self.matroid();
        let (one, s) = (self.var(), self.var());
        let sing = self.sing(&s);
        let u01 = and(
            exists_exactly(2, &one, sub(&one, &one)),
            forall(&s, implies(sing, not(ind(&s)))),
        );
        let conn = self.n_connected_body(2).expect("n >= 2");
        let three = self.n_connected_body(3).expect("n >= 2");
        let three_again = self.n_connected_body(3).expect("n >= 2");
        let e = self.var();
        let empty = self.empty(&e);
        let bl_empty = self.bicircular_loops(&e);
        let deg3 = self.degree3_circuit_node_body();
        let (a, x) = (self.var(), self.var());
        let good = self.good_separation_body(&a);
        let lw = self.loop_wedges(&a, &x);
        let bl = self.bicircular_loops(&x);
        let transduced = transduce_in_place(&bl, &a, self);
        let pieces = forall(&a, forall(&x, implies(and(good, lw), transduced)));
        and(
            m,
            or(
                u01,
                and(
                    conn,
                    or(
                        and(three, exists(&e, and(empty, bl_empty))),
                        and_all([not(three_again), not(deg3), pieces]),
                    ),
                ),
            ),
        )
    }
}

/// Parameters for [`build`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Params {
    pub k: Option<usize>,
    pub n: Option<usize>,
    pub phi: Option<Phi>,
    /// Names for the free variables; defaults depend on the entry.
    pub vars: Vec<String>,
}

/// Catalog entries with their free variables (for the defaults).
pub const CATALOG: &[&str] = &[
    "Empty",
    "Sing",
    "Basis",
    "n_union",
    "RelDiff",
    "Matroid",
    "Circuit",
    "Cocircuit",
    "k_separation",
    "n_connected",
    "Component",
    "Graphical",
    "Vertex",
    "Connected",
    "Cycle",
    "Bicycle",
    "Bicircular",
    "NonSepCocircuit",
    "GoodCocircuit",
    "BicircularLoops",
    "GoodSeparation",
    "GoodSet",
    "Independent",
    "LoopWedges",
    "Degree3CircuitNode",
    "ConnectedBicircular",
    "MainSentence",
];

fn numbered(prefix: &str, k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("{prefix}{i}")).collect()
}

/// Default free variables of a catalog entry.
pub fn default_vars(name: &str, params: &Params) -> Result<Vec<String>> {
    let k = params.k.unwrap_or(0);
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    Ok(match name {
        "Empty" | "Sing" | "Circuit" | "Cocircuit" | "k_separation" | "Component" | "NonSepCocircuit"
        | "GoodCocircuit" | "BicircularLoops" => s(&["X"]),
        "Basis" => s(&["X", "Y"]),
        "n_union" => {
            let mut v = numbered("X", params.n.unwrap_or(2));
            v.push("X".into());
            v
        }
        "RelDiff" => s(&["X1", "X2", "X"]),
        "Matroid" | "n_connected" | "Degree3CircuitNode" | "ConnectedBicircular" | "MainSentence" => vec![],
        "Graphical" | "Bicircular" => numbered("X", k),
        "Vertex" | "Connected" | "Cycle" | "Bicycle" => {
            let mut v = numbered("X", k);
            v.push("Xp".into());
            v
        }
        "GoodSeparation" => s(&["A"]),
        "GoodSet" | "Independent" => s(&["A", "Z"]),
        "LoopWedges" => s(&["A", "X"]),
        other => return Err(Error::UnknownFormula(other.to_string())),
    })
}

/// Builds a named formula. Fresh variables are numbered from `X_0`.
pub fn build(name: &str, params: &Params) -> Result<Formula> {
    let defaults = default_vars(name, params)?;
    let vars = if params.vars.is_empty() {
        defaults
    } else if params.vars.len() == defaults.len() {
        params.vars.clone()
    } else {
        return Err(Error::BadArity {
            name: name.to_string(),
            message: format!("expected {} variables, got {}", defaults.len(), params.vars.len()),
        });
    };
    let bad = |message: &str| Error::BadArity {
        name: name.to_string(),
        message: message.to_string(),
    };
    let k = params.k.unwrap_or(0);
    let phi = params.phi.unwrap_or_default();
    let mut b = Builder::new();
    let v = |i: usize| vars[i].as_str();
    let g = |n: usize| Vertices {
        phi,
        xs: vars[..n].to_vec(),
    };
    Ok(match name {
        "Empty" => b.empty(v(0)),
        "Sing" => b.sing(v(0)),
        "Basis" => b.basis(v(0), v(1)),
        "n_union" => {
            if vars.len() < 2 {
                return Err(bad("n must be at least 1"));
            }
            b.n_union(&vars[..vars.len() - 1], v(vars.len() - 1))
        }
        "RelDiff" => b.rel_diff(v(0), v(1), v(2)),
        "Matroid" => b.matroid(),
        "Circuit" => b.circuit(v(0)),
        "Cocircuit" => b.cocircuit(v(0)),
        "k_separation" => {
            let k = params.k.unwrap_or(2);
            if k == 0 {
                return Err(bad("k must be at least 1"));
            }
            b.k_separation(v(0), k)
        }
        "n_connected" => b.n_connected(params.n.unwrap_or(3)),
        "Component" => b.component(v(0)),
        "Graphical" => b.graphical(&g(k)),
        "Vertex" => b.vertex(&g(k), v(k)),
        "Connected" => b.connected(&g(k), v(k)),
        "Cycle" => b.cycle(&g(k), v(k)),
        "Bicycle" => b.bicycle(&g(k), v(k)),
        "Bicircular" => b.bicircular(&g(k)),
        "NonSepCocircuit" => b.nonsep_cocircuit(v(0)),
        "GoodCocircuit" => b.good_cocircuit(v(0)),
        "BicircularLoops" => b.bicircular_loops(v(0)),
        "GoodSeparation" => b.good_separation(v(0)),
        "GoodSet" => {
            let m = b.matroid();
            and(m, b.good_set(v(0), v(1)))
        }
        "Independent" => {
            let m = b.matroid();
            and(m, b.independent(v(0), v(1)))
        }
        "LoopWedges" => {
            let m = b.matroid();
            and(m, b.loop_wedges(v(0), v(1)))
        }
        "Degree3CircuitNode" => b.degree3_circuit_node(),
        "ConnectedBicircular" => b.connected_bicircular(),
        "MainSentence" => {
            let c = b.connected_bicircular();
            super::transform::relativize_components_in_place(&c)?
        }
        other => return Err(Error::UnknownFormula(other.to_string())),
    })
}
