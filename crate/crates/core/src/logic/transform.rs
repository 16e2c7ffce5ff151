//! Syntactic transforms: counting-quantifier expansion, prenex form, and
//! relativization to components or to the blocks of a good separation.

use super::catalog::Builder;
use super::formula::*;
use crate::error::{Error, Result};

/// Replaces every `∃_k X ψ` with first-order quantifiers:
/// `∃X_1…∃X_k (ψ[X_1] ∧ … ∧ ψ[X_k] ∧ X_i ≠ X_j ∧ ∀Y (ψ[Y] → Y = X_1 ∨ …))`,
/// and `∃_0 X ψ` with `¬∃X ψ`.
pub fn expand_exists_exactly(f: &Formula) -> Formula {
    let mut fresh = Fresh::avoiding("X", f);
    expand(f, &mut fresh)
}

fn expand(f: &Formula, fresh: &mut Fresh) -> Formula {
    use Formula::*;
    match f {
        Ind(_) | Sub(..) | Eq(..) => f.clone(),
        Not(g) => not(expand(g, fresh)),
        And(g, h) => and(expand(g, fresh), expand(h, fresh)),
        Or(g, h) => or(expand(g, fresh), expand(h, fresh)),
        Implies(g, h) => implies(expand(g, fresh), expand(h, fresh)),
        Iff(g, h) => iff(expand(g, fresh), expand(h, fresh)),
        Exists(x, g) => exists(x, expand(g, fresh)),
        Forall(x, g) => forall(x, expand(g, fresh)),
        ExistsExactly(k, x, g) => {
            let psi = expand(g, fresh);
            if *k == 0 {
                return not(exists(x, psi));
            }
            let xs: Vec<String> = (0..*k).map(|_| fresh.next()).collect();
            let y = fresh.next();
            let mut parts: Vec<Formula> = xs.iter().map(|xi| psi.rename_free(x, xi, fresh)).collect();
            for i in 0..xs.len() {
                for j in i + 1..xs.len() {
                    parts.push(not(eq(&xs[i], &xs[j])));
                }
            }
            let only = or_any(xs.iter().map(|xi| eq(&y, xi)));
            parts.push(forall(&y, implies(psi.rename_free(x, &y, fresh), only)));
            let mut out = and_all(parts);
            for xi in xs.iter().rev() {
                out = exists(xi, out);
            }
            out
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Q {
    Exists,
    Forall,
}

fn quantifier_free(f: &Formula) -> bool {
    use Formula::*;
    match f {
        Ind(_) | Sub(..) | Eq(..) => true,
        Not(g) => quantifier_free(g),
        And(g, h) | Or(g, h) | Implies(g, h) | Iff(g, h) => quantifier_free(g) && quantifier_free(h),
        _ => false,
    }
}

/// A block of `∃`/`∀` quantifiers over a quantifier-free matrix.
pub fn is_prenex(f: &Formula) -> bool {
    match f {
        Formula::Exists(_, g) | Formula::Forall(_, g) => is_prenex(g),
        Formula::ExistsExactly(..) => false,
        g => quantifier_free(g),
    }
}

/// Equivalent formula of the shape `Q_1 X_1 … Q_n X_n ω`. Counting
/// quantifiers are expanded and bound variables renamed apart first.
pub fn to_prenex(f: &Formula) -> Formula {
    let mut fresh = Fresh::avoiding("X", f);
    let g = expand(f, &mut fresh).freshen(&mut fresh);
    let (prefix, matrix) = pull(&g, &mut fresh);
    let mut out = matrix;
    for (q, x) in prefix.into_iter().rev() {
        out = match q {
            Q::Exists => exists(&x, out),
            Q::Forall => forall(&x, out),
        };
    }
    out
}

fn flip(prefix: Vec<(Q, String)>) -> Vec<(Q, String)> {
    prefix
        .into_iter()
        .map(|(q, x)| (if q == Q::Exists { Q::Forall } else { Q::Exists }, x))
        .collect()
}

/// Assumes every bound name is distinct and not free anywhere.
fn pull(f: &Formula, fresh: &mut Fresh) -> (Vec<(Q, String)>, Formula) {
    use Formula::*;
    match f {
        Ind(_) | Sub(..) | Eq(..) => (vec![], f.clone()),
        Not(g) => {
            let (p, m) = pull(g, fresh);
            (flip(p), not(m))
        }
        And(g, h) | Or(g, h) => {
            let (mut p, a) = pull(g, fresh);
            let (q, b) = pull(h, fresh);
            p.extend(q);
            (p, if matches!(f, And(..)) { and(a, b) } else { or(a, b) })
        }
        Implies(g, h) => {
            let (p, a) = pull(g, fresh);
            let (q, b) = pull(h, fresh);
            let mut p = flip(p);
            p.extend(q);
            (p, implies(a, b))
        }
        Iff(g, h) => {
            if quantifier_free(g) && quantifier_free(h) {
                return (vec![], f.clone());
            }
            // Each side is needed twice, with opposite polarity.
            let g2 = g.freshen(fresh);
            let h2 = h.freshen(fresh);
            pull(&and(implies((**g).clone(), (**h).clone()), implies(h2, g2)), fresh)
        }
        Exists(x, g) | Forall(x, g) => {
            let (mut p, m) = pull(g, fresh);
            let q = if matches!(f, Exists(..)) { Q::Exists } else { Q::Forall };
            p.insert(0, (q, x.clone()));
            (p, m)
        }
        ExistsExactly(..) => unreachable!("expanded before pulling"),
    }
}

/// Guards every quantifier in place: `∃X (guard[X] ∧ ψ)`,
/// `∀X (guard[X] → ψ)`, and `∃_k X (guard[X] ∧ ψ)`.
fn guard_all(f: &Formula, guard: &mut dyn FnMut(&str) -> Formula) -> Formula {
    use Formula::*;
    match f {
        Ind(_) | Sub(..) | Eq(..) => f.clone(),
        Not(g) => not(guard_all(g, guard)),
        And(g, h) => and(guard_all(g, guard), guard_all(h, guard)),
        Or(g, h) => or(guard_all(g, guard), guard_all(h, guard)),
        Implies(g, h) => implies(guard_all(g, guard), guard_all(h, guard)),
        Iff(g, h) => iff(guard_all(g, guard), guard_all(h, guard)),
        Exists(x, g) => exists(x, and(guard(x), guard_all(g, guard))),
        Forall(x, g) => forall(x, implies(guard(x), guard_all(g, guard))),
        ExistsExactly(k, x, g) => exists_exactly(*k, x, and(guard(x), guard_all(g, guard))),
    }
}

fn require_sentence(phi: &Formula) -> Result<()> {
    let free = phi.free_vars();
    if free.is_empty() {
        Ok(())
    } else {
        let names: Vec<String> = free.into_iter().collect();
        Err(Error::pre(format!("expected a sentence; free variables: {}", names.join(", "))))
    }
}

/// A variable named like `want` that does not occur in `f`.
fn unused(want: &str, f: &Formula, b: &mut Builder) -> String {
    if f.all_vars().contains(want) {
        b.var()
    } else {
        want.to_string()
    }
}

/// `Matroid ∧ ∀A (Component[A] → φ^A)` with `φ` put in prenex form and each
/// of its quantifiers restricted to subsets of `A`.
pub fn relativize_components(phi: &Formula) -> Result<Formula> {
    require_sentence(phi)?;
    let p = to_prenex(phi);
    relativize_components_of(&p)
}

/// As [`relativize_components`], but guards the quantifiers where they stand
/// instead of converting to prenex form first. Equivalent, and far cheaper to
/// evaluate.
pub fn relativize_components_in_place(phi: &Formula) -> Result<Formula> {
    require_sentence(phi)?;
    relativize_components_of(phi)
}

fn relativize_components_of(phi: &Formula) -> Result<Formula> {
    let mut b = Builder::avoiding(phi);
    let a = unused("A", phi, &mut b);
    let m = b.matroid();
    let comp = b.component(&a);
    let body = guard_all(phi, &mut |x| sub(x, &a));
    Ok(and(m, forall(&a, implies(comp, body))))
}

/// Reads `ω` in the matroid on the blocks of the good separation `A`:
/// quantifiers range over unions of blocks and `Ind` becomes the block
/// independence test. Only the nodes of `ω` are rewritten, never the guards
/// inserted along the way. The caller asserts that `a` is a good separation,
/// so the guards only restate the block conditions.
pub(crate) fn transduce_in_place(omega: &Formula, a: &str, b: &mut Builder) -> Formula {
    use Formula::*;
    match omega {
        Ind(x) => b.blocks_independent(a, x),
        Sub(..) | Eq(..) => omega.clone(),
        Not(g) => not(transduce_in_place(g, a, b)),
        And(g, h) => and(transduce_in_place(g, a, b), transduce_in_place(h, a, b)),
        Or(g, h) => or(transduce_in_place(g, a, b), transduce_in_place(h, a, b)),
        Implies(g, h) => implies(transduce_in_place(g, a, b), transduce_in_place(h, a, b)),
        Iff(g, h) => iff(transduce_in_place(g, a, b), transduce_in_place(h, a, b)),
        Exists(x, g) => {
            let guard = b.block_union(a, x);
            exists(x, and(guard, transduce_in_place(g, a, b)))
        }
        Forall(x, g) => {
            let guard = b.block_union(a, x);
            forall(x, implies(guard, transduce_in_place(g, a, b)))
        }
        ExistsExactly(k, x, g) => {
            let guard = b.block_union(a, x);
            exists_exactly(*k, x, and(guard, transduce_in_place(g, a, b)))
        }
    }
}

/// `∀A (GoodSeparation[A] → ω')`, or with `loops = Some(X)`,
/// `∀A ∀X (GoodSeparation[A] ∧ LoopWedges[A, X] → ω')`, where `ω'` is the
/// prenex `ω` read in the block matroid of `A`.
pub fn relativize_transduction(omega: &Formula, loops: Option<&str>) -> Result<Formula> {
    if !is_prenex(omega) {
        return Err(Error::pre("relativize_transduction needs a prenex formula"));
    }
    transduction_of(omega, loops)
}

/// As [`relativize_transduction`], for any formula, guarding quantifiers in
/// place.
pub fn relativize_transduction_in_place(omega: &Formula, loops: Option<&str>) -> Result<Formula> {
    transduction_of(omega, loops)
}

fn transduction_of(omega: &Formula, loops: Option<&str>) -> Result<Formula> {
    let free: Vec<String> = omega.free_vars().into_iter().collect();
    let allowed: Vec<&str> = loops.into_iter().collect();
    if let Some(x) = free.iter().find(|x| !allowed.contains(&x.as_str())) {
        return Err(Error::pre(format!("unexpected free variable `{x}`")));
    }
    let mut b = Builder::avoiding(omega);
    let a = unused("A", omega, &mut b);
    let good = b.good_separation_body(&a);
    let body = transduce_in_place(omega, &a, &mut b);
    Ok(match loops {
        None => forall(&a, implies(good, body)),
        Some(x) => {
            let lw = b.loop_wedges(&a, x);
            forall(&a, forall(x, implies(and(good, lw), body)))
        }
    })
}
