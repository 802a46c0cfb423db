//! The equational theory read left to right, applied leftmost-outermost.

use std::sync::Arc;

use super::subst::{fresh_for, rename_names2};
use super::{contextual_subst, rename_name, subst_term, subst_type_in_term, NamedCtx, Term, TypingContext};
use crate::ident::Ident;
use crate::types::{subst_type, TypeExpr};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizeResult {
    pub term: Term,
    pub steps: usize,
    /// The budget ran out before a normal form was reached.
    pub exhausted: bool,
}

/// Names in scope, with whether they are declared at `⊥`.
type Scope = Vec<(Ident, bool)>;

fn is_bot_name(scope: &Scope, a: Ident) -> bool {
    scope.iter().rev().find(|(b, _)| *b == a).is_some_and(|(_, bot)| *bot)
}

fn root(t: &Term, scope: &Scope) -> Option<Term> {
    match t {
        Term::App(f, u) => match &**f {
            Term::Lam(x, _, body) => Some(subst_term(body, u, *x)),
            Term::Mu(a, ty @ TypeExpr::Arrow(_, cod), body) => {
                let b = fresh_for(*a, &[t], &[]);
                let c = NamedCtx::App(b, (**u).clone());
                Some(Term::mu(b, (**cod).clone(), contextual_subst(body, *a, ty, &c)))
            }
            _ => None,
        },
        Term::Proj(i, p) => match &**p {
            Term::Pair(l, r) => Some(if *i == 1 { (**l).clone() } else { (**r).clone() }),
            Term::Mu(a, ty @ TypeExpr::Prod(l, r), body) => {
                let b = fresh_for(*a, &[t], &[]);
                let comp = if *i == 1 { l } else { r };
                let c = NamedCtx::Proj(b, *i);
                Some(Term::mu(b, (**comp).clone(), contextual_subst(body, *a, ty, &c)))
            }
            _ => None,
        },
        Term::Pair(l, r) => match (&**l, &**r) {
            (Term::Proj(1, u), Term::Proj(2, v)) if u == v => Some((**u).clone()),
            _ => None,
        },
        Term::Lam(x, _, body) => match &**body {
            Term::App(f, a) if **a == Term::Var(*x) && !f.free_vars().contains(x) => Some((**f).clone()),
            _ => None,
        },
        Term::TApp(f, b) => match &**f {
            Term::TLam(x, body) => Some(subst_type_in_term(body, b, *x)),
            Term::Mu(a, ty @ TypeExpr::Forall(x, inner), body) => {
                let c = fresh_for(*a, &[t], &[]);
                let ctx = NamedCtx::TApp(c, b.clone());
                Some(Term::mu(c, subst_type(inner, b, *x), contextual_subst(body, *a, ty, &ctx)))
            }
            _ => None,
        },
        Term::TLam(x, body) => match &**body {
            Term::TApp(f, TypeExpr::Var(y)) if y == x && !f.free_type_vars().contains(x) => Some((**f).clone()),
            _ => None,
        },
        Term::Name2(b, c, body) => match &**body {
            Term::Mu2(a1, _, a2, _, inner) => Some(rename_names2(inner, *a1, *b, *a2, *c)),
            Term::Mu(a, ty @ TypeExpr::Par(..), inner) => {
                // `[β,γ]μα.[α,δ]N` is its own contractum; treat it as normal
                let r = contextual_subst(inner, *a, ty, &NamedCtx::Double(*b, *c));
                (r != *t).then_some(r)
            }
            _ => None,
        },
        Term::Name(b, body) => match &**body {
            Term::Mu(a, _, inner) => Some(rename_name(inner, *a, *b)),
            _ if is_bot_name(scope, *b) => Some((**body).clone()),
            _ => None,
        },
        Term::Mu(a, _, body) => match &**body {
            Term::Name(a2, inner) if a2 == a && !inner.free_names().contains(a) => Some((**inner).clone()),
            _ => None,
        },
        Term::Mu2(a, _, b, _, body) => match &**body {
            Term::Name2(a2, b2, inner)
                if a2 == a && b2 == b && a != b && {
                    let fns = inner.free_names();
                    !fns.contains(a) && !fns.contains(b)
                } =>
            {
                Some((**inner).clone())
            }
            _ => None,
        },
        _ => None,
    }
}

/// One leftmost-outermost step.
fn step(t: &Term, scope: &mut Scope) -> Option<Term> {
    if let Some(u) = root(t, scope) {
        return Some(u);
    }
    let a = Arc::new;
    match t {
        Term::Var(_) | Term::Star => None,
        Term::Pair(l, r) => match step(l, scope) {
            Some(l) => Some(Term::Pair(a(l), r.clone())),
            None => step(r, scope).map(|r| Term::Pair(l.clone(), a(r))),
        },
        Term::App(l, r) => match step(l, scope) {
            Some(l) => Some(Term::App(a(l), r.clone())),
            None => step(r, scope).map(|r| Term::App(l.clone(), a(r))),
        },
        Term::Proj(i, p) => step(p, scope).map(|p| Term::Proj(*i, a(p))),
        Term::Lam(x, ty, b) => step(b, scope).map(|b| Term::Lam(*x, ty.clone(), a(b))),
        Term::Name(n, b) => step(b, scope).map(|b| Term::Name(*n, a(b))),
        Term::Name2(n, m, b) => step(b, scope).map(|b| Term::Name2(*n, *m, a(b))),
        Term::Mu(n, ty, b) => {
            scope.push((*n, *ty == TypeExpr::Bot));
            let r = step(b, scope);
            scope.pop();
            r.map(|b| Term::Mu(*n, ty.clone(), a(b)))
        }
        Term::Mu2(n, tn, m, tm, b) => {
            scope.push((*n, *tn == TypeExpr::Bot));
            scope.push((*m, *tm == TypeExpr::Bot));
            let r = step(b, scope);
            scope.truncate(scope.len() - 2);
            r.map(|b| Term::Mu2(*n, tn.clone(), *m, tm.clone(), a(b)))
        }
        Term::TLam(x, b) => step(b, scope).map(|b| Term::TLam(*x, a(b))),
        Term::TApp(f, ty) => step(f, scope).map(|f| Term::TApp(a(f), ty.clone())),
    }
}

/// Normalizes a closed-name term; `[ξ]t = t` only fires for names bound
/// by an enclosing `μξ^⊥`.
pub fn normalize(t: &Term, fuel: usize) -> NormalizeResult {
    run(t, fuel, Vec::new())
}

/// Normalizes in a context: names of `ctx.delta` declared at `⊥` also
/// count for `[ξ]t = t`.
pub fn normalize_in(ctx: &TypingContext, t: &Term, fuel: usize) -> NormalizeResult {
    let scope = ctx.delta.iter().map(|(a, ty)| (*a, *ty == TypeExpr::Bot)).collect();
    run(t, fuel, scope)
}

fn run(t: &Term, fuel: usize, mut scope: Scope) -> NormalizeResult {
    let mut cur = t.clone();
    let mut steps = 0;
    while steps < fuel {
        match step(&cur, &mut scope) {
            None => return NormalizeResult { term: cur, steps, exhausted: false },
            Some(next) => {
                steps += 1;
                cur = next;
            }
        }
    }
    let exhausted = step(&cur, &mut scope).is_some();
    NormalizeResult { term: cur, steps, exhausted }
}
