//! Terms of the second-order λμ-calculus with disjunction: syntax,
//! typing, substitutions, a fuel-bounded normalizer and the check that a
//! pair of terms is an isomorphism.

mod normalize;
mod parse;
mod print;
mod subst;
mod typing;
pub(crate) mod verify;

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::ident::Ident;
use crate::types::{free_type_vars, TypeExpr};

pub use normalize::{normalize, normalize_in, NormalizeResult};
pub use parse::parse_term;
pub use print::print_term;
pub(crate) use subst::all_idents;
pub use subst::{contextual_subst, rename_name, subst_term, subst_type_in_term, NamedCtx};
pub use typing::{typecheck, TypingContext};
pub use verify::{terms_equal_at, verify_iso_pair, VerificationReport, VerifyStatus};

/// Term variables and names share the identifier type but never meet:
/// names only occur in `[α]`, `[α,β]` and μ binders.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Ident),
    Star,
    Pair(Arc<Term>, Arc<Term>),
    /// `π₁` or `π₂`; the index is 1 or 2.
    Proj(u8, Arc<Term>),
    App(Arc<Term>, Arc<Term>),
    Lam(Ident, TypeExpr, Arc<Term>),
    Name(Ident, Arc<Term>),
    Mu(Ident, TypeExpr, Arc<Term>),
    Name2(Ident, Ident, Arc<Term>),
    Mu2(Ident, TypeExpr, Ident, TypeExpr, Arc<Term>),
    TLam(Ident, Arc<Term>),
    TApp(Arc<Term>, TypeExpr),
}

impl Term {
    pub fn var(x: impl Into<Ident>) -> Term {
        Term::Var(x.into())
    }

    pub fn pair(a: Term, b: Term) -> Term {
        Term::Pair(Arc::new(a), Arc::new(b))
    }

    pub fn proj(i: u8, t: Term) -> Term {
        debug_assert!(i == 1 || i == 2);
        Term::Proj(i, Arc::new(t))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Arc::new(f), Arc::new(a))
    }

    pub fn lam(x: impl Into<Ident>, ty: TypeExpr, body: Term) -> Term {
        Term::Lam(x.into(), ty, Arc::new(body))
    }

    pub fn name(a: impl Into<Ident>, t: Term) -> Term {
        Term::Name(a.into(), Arc::new(t))
    }

    pub fn mu(a: impl Into<Ident>, ty: TypeExpr, body: Term) -> Term {
        Term::Mu(a.into(), ty, Arc::new(body))
    }

    pub fn name2(a: impl Into<Ident>, b: impl Into<Ident>, t: Term) -> Term {
        Term::Name2(a.into(), b.into(), Arc::new(t))
    }

    pub fn mu2(a: impl Into<Ident>, ta: TypeExpr, b: impl Into<Ident>, tb: TypeExpr, body: Term) -> Term {
        Term::Mu2(a.into(), ta, b.into(), tb, Arc::new(body))
    }

    pub fn tlam(x: impl Into<Ident>, body: Term) -> Term {
        Term::TLam(x.into(), Arc::new(body))
    }

    pub fn tapp(t: Term, ty: TypeExpr) -> Term {
        Term::TApp(Arc::new(t), ty)
    }

    pub fn size(&self) -> usize {
        1 + match self {
            Term::Var(_) | Term::Star => 0,
            Term::Pair(a, b) | Term::App(a, b) => a.size() + b.size(),
            Term::Proj(_, t)
            | Term::Lam(_, _, t)
            | Term::Name(_, t)
            | Term::Mu(_, _, t)
            | Term::Name2(_, _, t)
            | Term::Mu2(_, _, _, _, t)
            | Term::TLam(_, t)
            | Term::TApp(t, _) => t.size(),
        }
    }

    /// True if the term uses μ, naming or their two-name forms.
    pub fn uses_control(&self) -> bool {
        match self {
            Term::Name(..) | Term::Mu(..) | Term::Name2(..) | Term::Mu2(..) => true,
            Term::Var(_) | Term::Star => false,
            Term::Pair(a, b) | Term::App(a, b) => a.uses_control() || b.uses_control(),
            Term::Proj(_, t) | Term::Lam(_, _, t) | Term::TLam(_, t) | Term::TApp(t, _) => t.uses_control(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Ident> {
        let mut out = BTreeSet::new();
        walk_free(self, &mut out, Kind::Var, &mut Vec::new());
        out
    }

    /// `FN(t)`.
    pub fn free_names(&self) -> BTreeSet<Ident> {
        let mut out = BTreeSet::new();
        walk_free(self, &mut out, Kind::Name, &mut Vec::new());
        out
    }

    /// `FTV(t)`, including variables of type annotations.
    pub fn free_type_vars(&self) -> BTreeSet<Ident> {
        let mut out = BTreeSet::new();
        walk_free(self, &mut out, Kind::TypeVar, &mut Vec::new());
        out
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Var,
    Name,
    TypeVar,
}

fn walk_free(t: &Term, out: &mut BTreeSet<Ident>, kind: Kind, bound: &mut Vec<Ident>) {
    let add = |x: Ident, bound: &Vec<Ident>, out: &mut BTreeSet<Ident>| {
        if !bound.contains(&x) {
            out.insert(x);
        }
    };
    let add_ty = |ty: &TypeExpr, bound: &Vec<Ident>, out: &mut BTreeSet<Ident>| {
        if kind == Kind::TypeVar {
            out.extend(free_type_vars(ty).into_iter().filter(|x| !bound.contains(x)));
        }
    };
    let under = |xs: &[Ident], body: &Term, k: Kind, bound: &mut Vec<Ident>, out: &mut BTreeSet<Ident>| {
        if k == kind {
            bound.extend_from_slice(xs);
            walk_free(body, out, kind, bound);
            bound.truncate(bound.len() - xs.len());
        } else {
            walk_free(body, out, kind, bound);
        }
    };
    match t {
        Term::Var(x) => {
            if kind == Kind::Var {
                add(*x, bound, out)
            }
        }
        Term::Star => {}
        Term::Pair(a, b) | Term::App(a, b) => {
            walk_free(a, out, kind, bound);
            walk_free(b, out, kind, bound);
        }
        Term::Proj(_, a) => walk_free(a, out, kind, bound),
        Term::Lam(x, ty, body) => {
            add_ty(ty, bound, out);
            under(&[*x], body, Kind::Var, bound, out);
        }
        Term::Name(a, body) => {
            if kind == Kind::Name {
                add(*a, bound, out);
            }
            walk_free(body, out, kind, bound);
        }
        Term::Name2(a, b, body) => {
            if kind == Kind::Name {
                add(*a, bound, out);
                add(*b, bound, out);
            }
            walk_free(body, out, kind, bound);
        }
        Term::Mu(a, ty, body) => {
            add_ty(ty, bound, out);
            under(&[*a], body, Kind::Name, bound, out);
        }
        Term::Mu2(a, ta, b, tb, body) => {
            add_ty(ta, bound, out);
            add_ty(tb, bound, out);
            under(&[*a, *b], body, Kind::Name, bound, out);
        }
        Term::TLam(x, body) => under(&[*x], body, Kind::TypeVar, bound, out),
        Term::TApp(a, ty) => {
            walk_free(a, out, kind, bound);
            add_ty(ty, bound, out);
        }
    }
}

impl std::fmt::Display for Term {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&print_term(self))
    }
}
