//! Checking that two terms form an isomorphism: both composites must equal
//! the identity. Equality is decided by normalizing and η-expanding along
//! the type, which also gives `t = ⋆` at `⊤`.

use std::collections::BTreeSet;

use super::subst::fresh_for;
use super::{normalize_in, typecheck, Term, TypingContext};
use crate::ident::Ident;
use crate::types::{alpha_eq, free_type_vars, subst_type, CalculusMode, TypeExpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyStatus {
    Verified,
    TypecheckedOnly,
    Failed,
}

impl std::fmt::Display for VerifyStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            VerifyStatus::Verified => "verified",
            VerifyStatus::TypecheckedOnly => "typechecked-only",
            VerifyStatus::Failed => "failed",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub status: VerifyStatus,
    pub detail: String,
    pub fuel_used: usize,
}

/// α-equivalence of terms, including the annotations.
pub(crate) fn alpha_eq_term(a: &Term, b: &Term) -> bool {
    #[derive(Default)]
    struct Env {
        vars: Vec<(Ident, Ident)>,
        names: Vec<(Ident, Ident)>,
        tvars: Vec<(Ident, Ident)>,
    }
    fn same(env: &[(Ident, Ident)], x: Ident, y: Ident) -> bool {
        let i = env.iter().rposition(|p| p.0 == x);
        let j = env.iter().rposition(|p| p.1 == y);
        match (i, j) {
            (None, None) => x == y,
            (i, j) => i == j,
        }
    }
    fn ty_eq(env: &[(Ident, Ident)], s: &TypeExpr, t: &TypeExpr) -> bool {
        let (mut s, mut t) = (s.clone(), t.clone());
        let (mut seen_a, mut seen_b) = (BTreeSet::new(), BTreeSet::new());
        for (k, &(x, y)) in env.iter().enumerate().rev() {
            let c = TypeExpr::Var(Ident::new(&format!("%{k}")));
            if seen_a.insert(x) {
                s = subst_type(&s, &c, x);
            }
            if seen_b.insert(y) {
                t = subst_type(&t, &c, y);
            }
        }
        alpha_eq(&s, &t)
    }
    fn go(a: &Term, b: &Term, e: &mut Env) -> bool {
        use Term as T;
        match (a, b) {
            (T::Var(x), T::Var(y)) => same(&e.vars, *x, *y),
            (T::Star, T::Star) => true,
            (T::Pair(a1, a2), T::Pair(b1, b2)) | (T::App(a1, a2), T::App(b1, b2)) => go(a1, b1, e) && go(a2, b2, e),
            (T::Proj(i, s), T::Proj(j, t)) => i == j && go(s, t, e),
            (T::Lam(x, s1, s), T::Lam(y, t1, t)) => {
                if !ty_eq(&e.tvars, s1, t1) {
                    return false;
                }
                e.vars.push((*x, *y));
                let r = go(s, t, e);
                e.vars.pop();
                r
            }
            (T::Name(x, s), T::Name(y, t)) => same(&e.names, *x, *y) && go(s, t, e),
            (T::Name2(x1, x2, s), T::Name2(y1, y2, t)) => {
                same(&e.names, *x1, *y1) && same(&e.names, *x2, *y2) && go(s, t, e)
            }
            (T::Mu(x, s1, s), T::Mu(y, t1, t)) => {
                if !ty_eq(&e.tvars, s1, t1) {
                    return false;
                }
                e.names.push((*x, *y));
                let r = go(s, t, e);
                e.names.pop();
                r
            }
            (T::Mu2(x1, s1, x2, s2, s), T::Mu2(y1, t1, y2, t2, t)) => {
                if !ty_eq(&e.tvars, s1, t1) || !ty_eq(&e.tvars, s2, t2) {
                    return false;
                }
                e.names.push((*x1, *y1));
                e.names.push((*x2, *y2));
                let r = go(s, t, e);
                e.names.truncate(e.names.len() - 2);
                r
            }
            (T::TLam(x, s), T::TLam(y, t)) => {
                e.tvars.push((*x, *y));
                let r = go(s, t, e);
                e.tvars.pop();
                r
            }
            (T::TApp(s, s1), T::TApp(t, t1)) => ty_eq(&e.tvars, s1, t1) && go(s, t, e),
            _ => false,
        }
    }
    go(a, b, &mut Env::default())
}

struct Budget {
    left: usize,
    used: usize,
    exhausted: bool,
}

impl Budget {
    fn norm(&mut self, ctx: &TypingContext, t: &Term) -> Term {
        let r = normalize_in(ctx, t, self.left);
        self.left -= r.steps;
        self.used += r.steps;
        self.exhausted |= r.exhausted;
        r.term
    }
}

fn fresh_ident(base: &str, ctx: &TypingContext, terms: &[&Term]) -> Ident {
    let mut extra: Vec<Ident> = ctx.tvars.vars().to_vec();
    extra.extend(ctx.gamma.iter().map(|p| p.0));
    extra.extend(ctx.delta.iter().map(|p| p.0));
    for (_, t) in ctx.gamma.iter().chain(&ctx.delta) {
        extra.extend(free_type_vars(t));
    }
    fresh_for(Ident::new(base), terms, &extra)
}

fn eq_at(ctx: &mut TypingContext, ty: &TypeExpr, s: &Term, t: &Term, fuel: &mut Budget) -> bool {
    let s = fuel.norm(ctx, s);
    let t = fuel.norm(ctx, t);
    if alpha_eq_term(&s, &t) {
        return true;
    }
    if fuel.exhausted {
        return false;
    }
    match ty {
        TypeExpr::Top => true,
        TypeExpr::Prod(a, b) => {
            eq_at(ctx, a, &Term::proj(1, s.clone()), &Term::proj(1, t.clone()), fuel)
                && eq_at(ctx, b, &Term::proj(2, s), &Term::proj(2, t), fuel)
        }
        TypeExpr::Arrow(a, b) => {
            let x = fresh_ident("x", ctx, &[&s, &t]);
            ctx.gamma.push((x, (**a).clone()));
            let r = eq_at(ctx, b, &Term::app(s, Term::Var(x)), &Term::app(t, Term::Var(x)), fuel);
            ctx.gamma.pop();
            r
        }
        TypeExpr::Forall(x, a) => {
            let y = fresh_ident(&x.name(), ctx, &[&s, &t]);
            let saved = ctx.tvars.clone();
            ctx.tvars.push(y);
            let v = TypeExpr::Var(y);
            let r = eq_at(ctx, &subst_type(a, &v, *x), &Term::tapp(s, v.clone()), &Term::tapp(t, v), fuel);
            ctx.tvars = saved;
            r
        }
        TypeExpr::Par(a, b) => {
            let n1 = fresh_ident("a", ctx, &[&s, &t]);
            ctx.delta.push((n1, (**a).clone()));
            let n2 = fresh_ident("b", ctx, &[&s, &t]);
            ctx.delta.push((n2, (**b).clone()));
            let r = eq_at(ctx, &TypeExpr::Bot, &Term::name2(n1, n2, s), &Term::name2(n1, n2, t), fuel);
            ctx.delta.truncate(ctx.delta.len() - 2);
            r
        }
        TypeExpr::Var(_) if s.uses_control() || t.uses_control() => {
            let n = fresh_ident("a", ctx, &[&s, &t]);
            ctx.delta.push((n, ty.clone()));
            let r = eq_at(ctx, &TypeExpr::Bot, &Term::name(n, s), &Term::name(n, t), fuel);
            ctx.delta.pop();
            r
        }
        TypeExpr::Var(_) | TypeExpr::Bot => eq_base(ctx, &s, &t, fuel),
    }
}

/// Normal terms at an atomic type or `⊥`: commands to the same name, or
/// neutral terms with the same head and equal arguments.
fn eq_base(ctx: &mut TypingContext, s: &Term, t: &Term, fuel: &mut Budget) -> bool {
    match (s, t) {
        (Term::Name(a, u), Term::Name(b, v)) if a == b => match ctx.lookup_name(*a).cloned() {
            // a normal command never names a μ at an atom, so wrapping again would loop
            Some(TypeExpr::Var(_) | TypeExpr::Bot) => eq_neutral(ctx, u, v, fuel).is_some(),
            Some(ty) => eq_at(ctx, &ty, u, v, fuel),
            None => false,
        },
        (Term::Name2(a1, a2, u), Term::Name2(b1, b2, v)) if a1 == b1 && a2 == b2 => {
            eq_neutral(ctx, u, v, fuel).is_some()
        }
        _ => eq_neutral(ctx, s, t, fuel).is_some(),
    }
}

/// The type of two equal neutral terms, comparing arguments at their types.
fn eq_neutral(ctx: &mut TypingContext, s: &Term, t: &Term, fuel: &mut Budget) -> Option<TypeExpr> {
    match (s, t) {
        (Term::Var(x), Term::Var(y)) if x == y => ctx.lookup_var(*x).cloned(),
        (Term::App(f, u), Term::App(g, v)) => match eq_neutral(ctx, f, g, fuel)? {
            TypeExpr::Arrow(a, b) => eq_at(ctx, &a, u, v, fuel).then(|| (*b).clone()),
            _ => None,
        },
        (Term::Proj(i, m), Term::Proj(j, n)) if i == j => match eq_neutral(ctx, m, n, fuel)? {
            TypeExpr::Prod(a, b) => Some(if *i == 1 { (*a).clone() } else { (*b).clone() }),
            _ => None,
        },
        (Term::TApp(m, b1), Term::TApp(n, b2)) if alpha_eq(b1, b2) => match eq_neutral(ctx, m, n, fuel)? {
            TypeExpr::Forall(x, a) => Some(subst_type(&a, b1, x)),
            _ => None,
        },
        _ => None,
    }
}

/// Decides `s = t : ty` in `ctx` as far as `fuel` normalization steps
/// allow. `None` means the budget ran out first.
pub fn terms_equal_at(ctx: &TypingContext, ty: &TypeExpr, s: &Term, t: &Term, fuel: usize) -> Option<bool> {
    let mut b = Budget { left: fuel, used: 0, exhausted: false };
    let r = eq_at(&mut ctx.clone(), ty, s, t, &mut b);
    if b.exhausted && !r {
        None
    } else {
        Some(r)
    }
}

/// Checks `t : A → B`, `u : B → A` and that both composites are the
/// identity. Free type variables of `A` and `B` form the type context.
pub fn verify_iso_pair(
    t: &Term,
    u: &Term,
    a: &TypeExpr,
    b: &TypeExpr,
    mode: CalculusMode,
    fuel: usize,
) -> VerificationReport {
    let failed = |detail: String| VerificationReport { status: VerifyStatus::Failed, detail, fuel_used: 0 };
    let mut tv: BTreeSet<Ident> = free_type_vars(a);
    tv.extend(free_type_vars(b));
    let ctx = TypingContext::with_tvars(mode, tv);
    for (term, want, which) in [
        (t, TypeExpr::arrow(a.clone(), b.clone()), "forward"),
        (u, TypeExpr::arrow(b.clone(), a.clone()), "backward"),
    ] {
        match typecheck(&ctx, term) {
            Ok(got) if alpha_eq(&got, &want) => {}
            Ok(got) => return failed(format!("{which} term has type {got}, expected {want}")),
            Err(e) => return failed(format!("{which} term: {e}")),
        }
    }
    let mut budget = Budget { left: fuel, used: 0, exhausted: false };
    let mut results = Vec::new();
    for (f, g, dom) in [(t, u, b), (u, t, a)] {
        let x = fresh_for(Ident::new("x"), &[f, g], &[]);
        let comp = Term::lam(x, dom.clone(), Term::app(f.clone(), Term::app(g.clone(), Term::Var(x))));
        let id = Term::lam(x, dom.clone(), Term::Var(x));
        let ty = TypeExpr::arrow(dom.clone(), dom.clone());
        results.push(eq_at(&mut ctx.clone(), &ty, &comp, &id, &mut budget));
    }
    let (status, detail) = if results.iter().all(|&r| r) {
        (VerifyStatus::Verified, "both composites reduce to the identity".to_string())
    } else if budget.exhausted {
        (VerifyStatus::TypecheckedOnly, format!("fuel of {fuel} steps exhausted"))
    } else {
        (VerifyStatus::TypecheckedOnly, "a composite has a normal form other than the identity".to_string())
    };
    VerificationReport { status, detail, fuel_used: budget.used }
}
