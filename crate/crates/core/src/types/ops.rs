use std::collections::{BTreeSet, HashMap, HashSet};

use super::{TypeExpr, VarContext};
use crate::ident::Ident;

/// Binder environment mapping a name to the stack of binding levels it has.
#[derive(Default)]
struct Levels {
    map: HashMap<Ident, Vec<usize>>,
    depth: usize,
}

impl Levels {
    fn enter(&mut self, x: Ident) {
        self.map.entry(x).or_default().push(self.depth);
        self.depth += 1;
    }

    fn leave(&mut self, x: Ident) {
        self.depth -= 1;
        self.map.get_mut(&x).unwrap().pop();
    }

    fn lookup(&self, x: Ident) -> Option<usize> {
        self.map.get(&x).and_then(|v| v.last().copied())
    }
}

/// Equality up to consistent renaming of bound variables.
pub fn alpha_eq(a: &TypeExpr, b: &TypeExpr) -> bool {
    fn go(a: &TypeExpr, b: &TypeExpr, la: &mut Levels, lb: &mut Levels) -> bool {
        match (a, b) {
            (TypeExpr::Top, TypeExpr::Top) | (TypeExpr::Bot, TypeExpr::Bot) => true,
            (TypeExpr::Var(x), TypeExpr::Var(y)) => match (la.lookup(*x), lb.lookup(*y)) {
                (Some(i), Some(j)) => i == j,
                (None, None) => x == y,
                _ => false,
            },
            (TypeExpr::Prod(a1, a2), TypeExpr::Prod(b1, b2))
            | (TypeExpr::Arrow(a1, a2), TypeExpr::Arrow(b1, b2))
            | (TypeExpr::Par(a1, a2), TypeExpr::Par(b1, b2)) => {
                go(a1, b1, la, lb) && go(a2, b2, la, lb)
            }
            (TypeExpr::Forall(x, a1), TypeExpr::Forall(y, b1)) => {
                la.enter(*x);
                lb.enter(*y);
                let r = go(a1, b1, la, lb);
                la.leave(*x);
                lb.leave(*y);
                r
            }
            _ => false,
        }
    }
    go(a, b, &mut Levels::default(), &mut Levels::default())
}

pub(crate) fn collect_ftv(t: &TypeExpr, bound: &mut Vec<Ident>, out: &mut HashSet<Ident>) {
    match t {
        TypeExpr::Top | TypeExpr::Bot => {}
        TypeExpr::Var(x) => {
            if !bound.contains(x) {
                out.insert(*x);
            }
        }
        TypeExpr::Prod(a, b) | TypeExpr::Arrow(a, b) | TypeExpr::Par(a, b) => {
            collect_ftv(a, bound, out);
            collect_ftv(b, bound, out);
        }
        TypeExpr::Forall(x, a) => {
            bound.push(*x);
            collect_ftv(a, bound, out);
            bound.pop();
        }
    }
}

pub(crate) fn ftv_set(t: &TypeExpr) -> HashSet<Ident> {
    let mut out = HashSet::new();
    collect_ftv(t, &mut Vec::new(), &mut out);
    out
}

pub fn free_type_vars(t: &TypeExpr) -> BTreeSet<Ident> {
    ftv_set(t).into_iter().collect()
}

pub(crate) fn occurs_free(x: Ident, t: &TypeExpr) -> bool {
    match t {
        TypeExpr::Top | TypeExpr::Bot => false,
        TypeExpr::Var(y) => *y == x,
        TypeExpr::Prod(a, b) | TypeExpr::Arrow(a, b) | TypeExpr::Par(a, b) => {
            occurs_free(x, a) || occurs_free(x, b)
        }
        TypeExpr::Forall(y, a) => *y != x && occurs_free(x, a),
    }
}

/// All identifiers occurring in `t`, bound or free.
pub(crate) fn all_vars(t: &TypeExpr, out: &mut HashSet<Ident>) {
    match t {
        TypeExpr::Top | TypeExpr::Bot => {}
        TypeExpr::Var(x) => {
            out.insert(*x);
        }
        TypeExpr::Prod(a, b) | TypeExpr::Arrow(a, b) | TypeExpr::Par(a, b) => {
            all_vars(a, out);
            all_vars(b, out);
        }
        TypeExpr::Forall(x, a) => {
            out.insert(*x);
            all_vars(a, out);
        }
    }
}

/// Capture-avoiding substitution `a[b/x]`.
pub fn subst_type(a: &TypeExpr, b: &TypeExpr, x: Ident) -> TypeExpr {
    let fv_b = ftv_set(b);
    subst_with(a, b, x, &fv_b)
}

fn subst_with(a: &TypeExpr, b: &TypeExpr, x: Ident, fv_b: &HashSet<Ident>) -> TypeExpr {
    match a {
        TypeExpr::Top | TypeExpr::Bot => a.clone(),
        TypeExpr::Var(y) => {
            if *y == x {
                b.clone()
            } else {
                a.clone()
            }
        }
        TypeExpr::Prod(a1, a2) => {
            TypeExpr::prod(subst_with(a1, b, x, fv_b), subst_with(a2, b, x, fv_b))
        }
        TypeExpr::Arrow(a1, a2) => {
            TypeExpr::arrow(subst_with(a1, b, x, fv_b), subst_with(a2, b, x, fv_b))
        }
        TypeExpr::Par(a1, a2) => {
            TypeExpr::par(subst_with(a1, b, x, fv_b), subst_with(a2, b, x, fv_b))
        }
        TypeExpr::Forall(y, body) => {
            if *y == x || !occurs_free(x, body) {
                return a.clone();
            }
            if fv_b.contains(y) {
                let body_fv = ftv_set(body);
                let y2 = y.fresh(|c| fv_b.contains(&c) || body_fv.contains(&c) || c == x);
                let renamed = subst_with(body, &TypeExpr::Var(y2), *y, &HashSet::from([y2]));
                TypeExpr::forall(y2, subst_with(&renamed, b, x, fv_b))
            } else {
                TypeExpr::forall(*y, subst_with(body, b, x, fv_b))
            }
        }
    }
}

/// `X⃗ ⊩ A`: every free variable of `t` is listed in `ctx`.
pub fn enabling_check(ctx: &VarContext, t: &TypeExpr) -> bool {
    match t {
        TypeExpr::Top | TypeExpr::Bot => true,
        TypeExpr::Var(x) => ctx.contains(*x),
        TypeExpr::Prod(a, b) | TypeExpr::Arrow(a, b) | TypeExpr::Par(a, b) => {
            enabling_check(ctx, a) && enabling_check(ctx, b)
        }
        TypeExpr::Forall(x, a) => {
            let mut inner = ctx.clone();
            inner.push(*x);
            enabling_check(&inner, a)
        }
    }
}

/// α-renames every binder of `t` to a name outside `avoid`, recording new
/// names in `avoid` so binders end up pairwise distinct.
pub fn rename_apart(t: &TypeExpr, avoid: &mut HashSet<Ident>) -> TypeExpr {
    fn go(t: &TypeExpr, avoid: &mut HashSet<Ident>, env: &mut Vec<(Ident, Ident)>) -> TypeExpr {
        match t {
            TypeExpr::Top | TypeExpr::Bot => t.clone(),
            TypeExpr::Var(x) => match env.iter().rev().find(|(old, _)| old == x) {
                Some(&(_, new)) => TypeExpr::Var(new),
                None => t.clone(),
            },
            TypeExpr::Prod(a, b) => TypeExpr::prod(go(a, avoid, env), go(b, avoid, env)),
            TypeExpr::Arrow(a, b) => TypeExpr::arrow(go(a, avoid, env), go(b, avoid, env)),
            TypeExpr::Par(a, b) => TypeExpr::par(go(a, avoid, env), go(b, avoid, env)),
            TypeExpr::Forall(x, a) => {
                let fresh = x.fresh(|c| avoid.contains(&c));
                avoid.insert(fresh);
                env.push((*x, fresh));
                let body = go(a, avoid, env);
                env.pop();
                TypeExpr::forall(fresh, body)
            }
        }
    }
    avoid.extend(ftv_set(t));
    go(t, avoid, &mut Vec::new())
}
