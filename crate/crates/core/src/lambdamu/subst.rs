//! Capture-avoiding substitutions on terms.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::Term;
use crate::ident::Ident;
use crate::types::{free_type_vars, subst_type, TypeExpr};

/// Every identifier occurring in `t`, in any namespace, bound or free.
pub(crate) fn all_idents(t: &Term, out: &mut BTreeSet<Ident>) {
    let ty = |a: &TypeExpr, out: &mut BTreeSet<Ident>| {
        let mut s = std::collections::HashSet::new();
        crate::types::ops::all_vars(a, &mut s);
        out.extend(s);
    };
    match t {
        Term::Var(x) => {
            out.insert(*x);
        }
        Term::Star => {}
        Term::Pair(a, b) | Term::App(a, b) => {
            all_idents(a, out);
            all_idents(b, out);
        }
        Term::Proj(_, a) => all_idents(a, out),
        Term::Lam(x, a, b) | Term::Mu(x, a, b) => {
            out.insert(*x);
            ty(a, out);
            all_idents(b, out);
        }
        Term::Name(x, b) | Term::TLam(x, b) => {
            out.insert(*x);
            all_idents(b, out);
        }
        Term::Name2(x, y, b) => {
            out.insert(*x);
            out.insert(*y);
            all_idents(b, out);
        }
        Term::Mu2(x, a, y, c, b) => {
            out.insert(*x);
            out.insert(*y);
            ty(a, out);
            ty(c, out);
            all_idents(b, out);
        }
        Term::TApp(b, a) => {
            all_idents(b, out);
            ty(a, out);
        }
    }
}

pub(crate) fn fresh_for(x: Ident, terms: &[&Term], extra: &[Ident]) -> Ident {
    let mut avoid: BTreeSet<Ident> = extra.iter().copied().collect();
    for t in terms {
        all_idents(t, &mut avoid);
    }
    x.fresh(|c| avoid.contains(&c))
}

/// `t[u/x]`.
pub fn subst_term(t: &Term, u: &Term, x: Ident) -> Term {
    let fv = u.free_vars();
    let fn_ = u.free_names();
    let ftv = u.free_type_vars();
    go_var(t, u, x, &fv, &fn_, &ftv)
}

fn go_var(
    t: &Term,
    u: &Term,
    x: Ident,
    fv: &BTreeSet<Ident>,
    fn_: &BTreeSet<Ident>,
    ftv: &BTreeSet<Ident>,
) -> Term {
    let rec = |s: &Term| go_var(s, u, x, fv, fn_, ftv);
    match t {
        Term::Var(y) if *y == x => u.clone(),
        Term::Var(_) | Term::Star => t.clone(),
        Term::Pair(a, b) => Term::pair(rec(a), rec(b)),
        Term::App(a, b) => Term::app(rec(a), rec(b)),
        Term::Proj(i, a) => Term::proj(*i, rec(a)),
        Term::Lam(y, _, _) if *y == x => t.clone(),
        Term::Lam(y, ty, b) => {
            if fv.contains(y) {
                let y2 = fresh_for(*y, &[b, u], &[x]);
                let b = subst_term(b, &Term::Var(y2), *y);
                Term::lam(y2, ty.clone(), rec(&b))
            } else {
                Term::lam(*y, ty.clone(), rec(b))
            }
        }
        Term::Name(a, b) => Term::name(*a, rec(b)),
        Term::Name2(a, c, b) => Term::name2(*a, *c, rec(b)),
        Term::Mu(a, ty, b) => {
            let (a, b) = avoid_name(*a, b, fn_, u);
            Term::mu(a, ty.clone(), rec(&b))
        }
        Term::Mu2(a, ta, c, tc, b) => {
            let (a, b) = avoid_name(*a, b, fn_, u);
            let (c, b) = avoid_name(*c, &b, fn_, u);
            Term::mu2(a, ta.clone(), c, tc.clone(), rec(&b))
        }
        Term::TLam(v, b) => {
            if ftv.contains(v) {
                let v2 = fresh_for(*v, &[b, u], &[]);
                let b = subst_type_in_term(b, &TypeExpr::Var(v2), *v);
                Term::tlam(v2, rec(&b))
            } else {
                Term::tlam(*v, rec(b))
            }
        }
        Term::TApp(a, ty) => Term::tapp(rec(a), ty.clone()),
    }
}

fn avoid_name(a: Ident, body: &Term, taken: &BTreeSet<Ident>, other: &Term) -> (Ident, Term) {
    if taken.contains(&a) {
        let a2 = fresh_for(a, &[body, other], &[]);
        (a2, rename_name(body, a, a2))
    } else {
        (a, body.clone())
    }
}

/// `t[B/X]`, acting on annotations and type applications.
pub fn subst_type_in_term(t: &Term, b: &TypeExpr, x: Ident) -> Term {
    let fv_b = free_type_vars(b);
    go_ty(t, b, x, &fv_b)
}

fn go_ty(t: &Term, b: &TypeExpr, x: Ident, fv_b: &BTreeSet<Ident>) -> Term {
    let rec = |s: &Term| go_ty(s, b, x, fv_b);
    let ty = |a: &TypeExpr| subst_type(a, b, x);
    match t {
        Term::Var(_) | Term::Star => t.clone(),
        Term::Pair(p, q) => Term::pair(rec(p), rec(q)),
        Term::App(p, q) => Term::app(rec(p), rec(q)),
        Term::Proj(i, p) => Term::proj(*i, rec(p)),
        Term::Lam(y, a, body) => Term::lam(*y, ty(a), rec(body)),
        Term::Name(a, body) => Term::name(*a, rec(body)),
        Term::Name2(a, c, body) => Term::name2(*a, *c, rec(body)),
        Term::Mu(a, ta, body) => Term::mu(*a, ty(ta), rec(body)),
        Term::Mu2(a, ta, c, tc, body) => Term::mu2(*a, ty(ta), *c, ty(tc), rec(body)),
        Term::TLam(v, _) if *v == x => t.clone(),
        Term::TLam(v, body) => {
            if fv_b.contains(v) {
                let mut extra: Vec<Ident> = fv_b.iter().copied().collect();
                extra.push(x);
                let v2 = fresh_for(*v, &[body], &extra);
                let body = subst_type_in_term(body, &TypeExpr::Var(v2), *v);
                Term::tlam(v2, rec(&body))
            } else {
                Term::tlam(*v, rec(body))
            }
        }
        Term::TApp(p, a) => Term::tapp(rec(p), ty(a)),
    }
}

/// Replaces the free name `from` by `to`.
pub fn rename_name(t: &Term, from: Ident, to: Ident) -> Term {
    if from == to {
        return t.clone();
    }
    let rec = |s: &Term| rename_name(s, from, to);
    let sw = |a: Ident| if a == from { to } else { a };
    match t {
        Term::Var(_) | Term::Star => t.clone(),
        Term::Pair(p, q) => Term::pair(rec(p), rec(q)),
        Term::App(p, q) => Term::app(rec(p), rec(q)),
        Term::Proj(i, p) => Term::proj(*i, rec(p)),
        Term::Lam(y, a, body) => Term::Lam(*y, a.clone(), Arc::new(rec(body))),
        Term::TLam(v, body) => Term::tlam(*v, rec(body)),
        Term::TApp(p, a) => Term::tapp(rec(p), a.clone()),
        Term::Name(a, body) => Term::name(sw(*a), rec(body)),
        Term::Name2(a, c, body) => Term::name2(sw(*a), sw(*c), rec(body)),
        Term::Mu(a, _, _) if *a == from => t.clone(),
        Term::Mu(a, ta, body) => {
            let (a, body) = if *a == to {
                let a2 = fresh_for(*a, &[body], &[from, to]);
                (a2, rename_name(body, *a, a2))
            } else {
                (*a, (**body).clone())
            };
            Term::mu(a, ta.clone(), rec(&body))
        }
        Term::Mu2(a, _, c, _, _) if *a == from || *c == from => t.clone(),
        Term::Mu2(a, ta, c, tc, body) => {
            let mut body = (**body).clone();
            let fix = |x: Ident, body: &mut Term| {
                if x == to {
                    let x2 = fresh_for(x, &[body], &[from, to, *a, *c]);
                    *body = rename_name(body, x, x2);
                    x2
                } else {
                    x
                }
            };
            let a = fix(*a, &mut body);
            let c = fix(*c, &mut body);
            Term::mu2(a, ta.clone(), c, tc.clone(), rec(&body))
        }
    }
}

/// Simultaneous renaming of two names.
pub(crate) fn rename_names2(t: &Term, a: Ident, a2: Ident, b: Ident, b2: Ident) -> Term {
    let ta = fresh_for(a, &[t], &[a2, b2, b]);
    let tb = fresh_for(b, &[t], &[a2, b2, a, ta]);
    let s = rename_name(t, a, ta);
    let s = rename_name(&s, b, tb);
    let s = rename_name(&s, ta, a2);
    rename_name(&s, tb, b2)
}

/// The operation `C` of a contextual substitution, turning a term of the
/// substituted name's type into a command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedCtx {
    /// `[β](− u)`
    App(Ident, Term),
    /// `[β]πᵢ(−)`
    Proj(Ident, u8),
    /// `[β](−){B}`
    TApp(Ident, TypeExpr),
    /// `[β,γ](−)`
    Double(Ident, Ident),
}

impl NamedCtx {
    fn plug(&self, n: Term) -> Term {
        match self {
            NamedCtx::App(b, u) => Term::name(*b, Term::app(n, u.clone())),
            NamedCtx::Proj(b, i) => Term::name(*b, Term::proj(*i, n)),
            NamedCtx::TApp(b, ty) => Term::name(*b, Term::tapp(n, ty.clone())),
            NamedCtx::Double(b, c) => Term::name2(*b, *c, n),
        }
    }

    fn names(&self) -> BTreeSet<Ident> {
        match self {
            NamedCtx::App(b, u) => {
                let mut s = u.free_names();
                s.insert(*b);
                s
            }
            NamedCtx::Proj(b, _) | NamedCtx::TApp(b, _) => BTreeSet::from([*b]),
            NamedCtx::Double(b, c) => BTreeSet::from([*b, *c]),
        }
    }

    fn vars(&self) -> BTreeSet<Ident> {
        match self {
            NamedCtx::App(_, u) => u.free_vars(),
            _ => BTreeSet::new(),
        }
    }

    fn type_vars(&self) -> BTreeSet<Ident> {
        match self {
            NamedCtx::App(_, u) => u.free_type_vars(),
            NamedCtx::TApp(_, ty) => free_type_vars(ty),
            _ => BTreeSet::new(),
        }
    }

    fn as_term(&self) -> Term {
        // a carrier for the identifiers of the context, used when picking fresh names
        match self {
            NamedCtx::App(b, u) => Term::name(*b, u.clone()),
            NamedCtx::Proj(b, _) => Term::name(*b, Term::Star),
            NamedCtx::TApp(b, ty) => Term::name(*b, Term::tapp(Term::Star, ty.clone())),
            NamedCtx::Double(b, c) => Term::name2(*b, *c, Term::Star),
        }
    }
}

/// `s_{α,C}(m)`: every `[α]N` becomes `C(N)`; a two-name command using `α`
/// is first wrapped as `μα^A.[α,β]N`, with `A` the type of `α`.
pub fn contextual_subst(m: &Term, alpha: Ident, alpha_ty: &TypeExpr, c: &NamedCtx) -> Term {
    let mut ftv = c.type_vars();
    ftv.extend(free_type_vars(alpha_ty));
    let env = Env { alpha, alpha_ty, c, names: c.names(), vars: c.vars(), ftv, carrier: c.as_term() };
    env.go(m)
}

struct Env<'a> {
    alpha: Ident,
    alpha_ty: &'a TypeExpr,
    c: &'a NamedCtx,
    names: BTreeSet<Ident>,
    vars: BTreeSet<Ident>,
    ftv: BTreeSet<Ident>,
    carrier: Term,
}

impl Env<'_> {
    fn go(&self, t: &Term) -> Term {
        let alpha = self.alpha;
        match t {
            Term::Var(_) | Term::Star => t.clone(),
            Term::Pair(p, q) => Term::pair(self.go(p), self.go(q)),
            Term::App(p, q) => Term::app(self.go(p), self.go(q)),
            Term::Proj(i, p) => Term::proj(*i, self.go(p)),
            Term::TApp(p, a) => Term::tapp(self.go(p), a.clone()),
            Term::Name(a, body) if *a == alpha => self.c.plug(self.go(body)),
            Term::Name(a, body) => Term::name(*a, self.go(body)),
            Term::Name2(a, b, body) if *a == alpha || *b == alpha => {
                let inner = Term::name2(*a, *b, self.go(body));
                self.c.plug(Term::mu(alpha, self.alpha_ty.clone(), inner))
            }
            Term::Name2(a, b, body) => Term::name2(*a, *b, self.go(body)),
            Term::Lam(y, ty, body) => {
                if self.vars.contains(y) {
                    let y2 = fresh_for(*y, &[body, &self.carrier], &[]);
                    let body = subst_term(body, &Term::Var(y2), *y);
                    Term::lam(y2, ty.clone(), self.go(&body))
                } else {
                    Term::lam(*y, ty.clone(), self.go(body))
                }
            }
            Term::TLam(v, body) => {
                if self.ftv.contains(v) {
                    let extra: Vec<Ident> = self.ftv.iter().copied().collect();
                    let v2 = fresh_for(*v, &[body, &self.carrier], &extra);
                    let body = subst_type_in_term(body, &TypeExpr::Var(v2), *v);
                    Term::tlam(v2, self.go(&body))
                } else {
                    Term::tlam(*v, self.go(body))
                }
            }
            Term::Mu(a, _, _) if *a == alpha => t.clone(),
            Term::Mu(a, ty, body) => {
                let (a, body) = self.avoid(*a, body);
                Term::mu(a, ty.clone(), self.go(&body))
            }
            Term::Mu2(a, _, b, _, _) if *a == alpha || *b == alpha => t.clone(),
            Term::Mu2(a, ta, b, tb, body) => {
                let (a, body) = self.avoid(*a, body);
                let (b, body) = self.avoid(*b, &body);
                Term::mu2(a, ta.clone(), b, tb.clone(), self.go(&body))
            }
        }
    }

    fn avoid(&self, a: Ident, body: &Term) -> (Ident, Term) {
        if self.names.contains(&a) {
            let a2 = fresh_for(a, &[body, &self.carrier], &[self.alpha]);
            (a2, rename_name(body, a, a2))
        } else {
            (a, body.clone())
        }
    }
}
