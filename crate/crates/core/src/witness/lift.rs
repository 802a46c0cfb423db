//! Coercions for single rewrite steps: the rule's axiom chain at the redex,
//! carried to the root through one congruence per constructor.

use super::axioms::{axiom_iso, AxiomId, Instantiation};
use super::Iso;
use crate::canon::{RewriteStep, RuleId};
use crate::error::{Error, Result};
use crate::ident::Ident;
use crate::lambdamu::{subst_type_in_term, Term};
use crate::types::{alpha_eq, TypeExpr};

fn inst(a: &TypeExpr, b: &TypeExpr, c: &TypeExpr) -> Instantiation {
    Instantiation::new(a.clone(), b.clone(), c.clone())
}

fn ax(id: AxiomId, i: &Instantiation) -> Iso {
    axiom_iso(id, i)
}

fn bad(step: &RewriteStep) -> Error {
    Error::Internal(format!("rule {} does not match {}", step.rule, step.before))
}

/// The coercion for one rewrite at the root of `step.before`.
pub(crate) fn rule_iso(step: &RewriteStep) -> Result<Iso> {
    use TypeExpr as T;
    let top = T::Top;
    let (before, after) = (&step.before, &step.after);
    let par = |t: &T| match t {
        T::Par(a, b) => Some(((**a).clone(), (**b).clone())),
        _ => None,
    };
    let two = |t: &T| match t {
        T::Prod(a, b) | T::Arrow(a, b) | T::Par(a, b) => Some(((**a).clone(), (**b).clone())),
        _ => None,
    };
    let forall = |t: &T| match t {
        T::Forall(x, a) => Some((*x, (**a).clone())),
        _ => None,
    };
    let iso = match step.rule {
        RuleId::TopPar => {
            let (_, a) = par(before).ok_or_else(|| bad(step))?;
            ax(AxiomId::TopPar, &inst(&a, &top, &top))
        }
        RuleId::ParTop => {
            let (a, _) = par(before).ok_or_else(|| bad(step))?;
            ax(AxiomId::ParComm, &inst(&a, &top, &top)).then(ax(AxiomId::TopPar, &inst(&a, &top, &top)))?
        }
        RuleId::BotPar => {
            let (_, a) = par(before).ok_or_else(|| bad(step))?;
            ax(AxiomId::BotPar, &inst(&a, &top, &top))
        }
        RuleId::ParBot => {
            let (a, _) = par(before).ok_or_else(|| bad(step))?;
            ax(AxiomId::ParComm, &inst(&a, &T::Bot, &top)).then(ax(AxiomId::BotPar, &inst(&a, &top, &top)))?
        }
        RuleId::ProdTop => {
            let (a, _) = two(before).ok_or_else(|| bad(step))?;
            ax(AxiomId::ProdTop, &inst(&a, &top, &top))
        }
        RuleId::TopProd => {
            let (_, a) = two(before).ok_or_else(|| bad(step))?;
            ax(AxiomId::ProdComm, &inst(&top, &a, &top)).then(ax(AxiomId::ProdTop, &inst(&a, &top, &top)))?
        }
        RuleId::ArrowTop => {
            let (a, _) = two(before).ok_or_else(|| bad(step))?;
            ax(AxiomId::ArrowTop, &inst(&a, &top, &top))
        }
        RuleId::TopArrow => {
            let (_, a) = two(before).ok_or_else(|| bad(step))?;
            ax(AxiomId::TopArrow, &inst(&a, &top, &top))
        }
        RuleId::ForallTop => {
            let (x, _) = forall(before).ok_or_else(|| bad(step))?;
            ax(AxiomId::ForallTop, &inst(&top, &top, &top).with_binders(x, x))
        }
        RuleId::ProdPar | RuleId::ArrowPar => {
            let (ab, c) = par(before).ok_or_else(|| bad(step))?;
            let (a, b) = two(&ab).ok_or_else(|| bad(step))?;
            let id = if step.rule == RuleId::ProdPar { AxiomId::ProdPar } else { AxiomId::ArrowPar };
            ax(id, &inst(&a, &b, &c))
        }
        RuleId::ParProd => {
            // A⅋(B×C) → (B×C)⅋A → (B⅋A)×(C⅋A) → (A⅋B)×(A⅋C)
            let (a, bc) = par(before).ok_or_else(|| bad(step))?;
            let (b, c) = two(&bc).ok_or_else(|| bad(step))?;
            let mid = T::prod(T::par(b.clone(), a.clone()), T::par(c.clone(), a.clone()));
            ax(AxiomId::ParComm, &inst(&a, &bc, &top))
                .then(ax(AxiomId::ProdPar, &inst(&b, &c, &a)))?
                .then(lift(&mid, &[0], ax(AxiomId::ParComm, &inst(&b, &a, &top)))?)?
                .then(lift(
                    &T::prod(T::par(a.clone(), b.clone()), T::par(c.clone(), a.clone())),
                    &[1],
                    ax(AxiomId::ParComm, &inst(&c, &a, &top)),
                )?)?
        }
        RuleId::ParArrow => {
            // A⅋(B→C) → (B→C)⅋A → B→(C⅋A) → B→(A⅋C)
            let (a, bc) = par(before).ok_or_else(|| bad(step))?;
            let (b, c) = two(&bc).ok_or_else(|| bad(step))?;
            let mid = T::arrow(b.clone(), T::par(c.clone(), a.clone()));
            ax(AxiomId::ParComm, &inst(&a, &bc, &top))
                .then(ax(AxiomId::ArrowPar, &inst(&b, &c, &a)))?
                .then(lift(&mid, &[1], ax(AxiomId::ParComm, &inst(&c, &a, &top)))?)?
        }
        RuleId::ForallPar => {
            // (∀X.A)⅋B → B⅋∀X.A → ∀X.(B⅋A) → ∀X.(A⅋B), binder taken from the result
            let (xa, b) = par(before).ok_or_else(|| bad(step))?;
            let (y, body) = forall(after).ok_or_else(|| bad(step))?;
            let (a, _) = par(&body).ok_or_else(|| bad(step))?;
            let mid = T::forall(y, T::par(b.clone(), a.clone()));
            ax(AxiomId::ParComm, &inst(&xa, &b, &top))
                .then(ax(AxiomId::ParForall, &inst(&b, &a, &top).with_binders(y, y)))?
                .then(lift(&mid, &[0], ax(AxiomId::ParComm, &inst(&b, &a, &top)))?)?
        }
        RuleId::ParForall | RuleId::ArrowForall => {
            let (y, body) = forall(after).ok_or_else(|| bad(step))?;
            let (a, b) = two(&body).ok_or_else(|| bad(step))?;
            let id = if step.rule == RuleId::ParForall { AxiomId::ParForall } else { AxiomId::ArrowForall };
            ax(id, &inst(&a, &b, &top).with_binders(y, y))
        }
        RuleId::ArrowProd | RuleId::Curry => {
            let (a, bc) = two(before).ok_or_else(|| bad(step))?;
            let (b, c) = two(&bc).ok_or_else(|| bad(step))?;
            let id = if step.rule == RuleId::Curry { AxiomId::Curry } else { AxiomId::ArrowProd };
            ax(id, &inst(&a, &b, &c))
        }
        RuleId::ForallProd => {
            let (x, ab) = forall(before).ok_or_else(|| bad(step))?;
            let (a, b) = two(&ab).ok_or_else(|| bad(step))?;
            ax(AxiomId::ForallProd, &inst(&a, &b, &top).with_binders(x, x))
        }
    };
    if !alpha_eq(&iso.a, before) || !alpha_eq(&iso.b, after) {
        return Err(Error::Internal(format!(
            "coercion for {} relates {} and {}, not {before} and {after}",
            step.rule, iso.a, iso.b
        )));
    }
    Ok(iso)
}

/// Carries `inner`, a coercion on the subterm of `whole` at `path`, to a
/// coercion on `whole`.
pub(crate) fn lift(whole: &TypeExpr, path: &[u8], inner: Iso) -> Result<Iso> {
    use TypeExpr as T;
    let Some((&i, rest)) = path.split_first() else {
        if !alpha_eq(whole, &inner.a) {
            return Err(Error::Internal(format!("coercion from {} used at {whole}", inner.a)));
        }
        return Ok(inner);
    };
    let child = *whole
        .children()
        .get(i as usize)
        .ok_or_else(|| Error::Internal(format!("no child {i} in {whole}")))?;
    let li = lift(child, rest, inner)?;
    let new = crate::canon::replace_at(whole, &[i], li.b.clone()).expect("child exists");
    let (Some(f), Some(g)) = (li.fwd.clone(), li.bwd.clone()) else {
        return Ok(Iso { a: whole.clone(), b: new, fwd: None, bwd: None });
    };
    let app = Term::app;
    let v = Term::var;
    let (fwd, bwd) = match (whole, &new, i) {
        (T::Prod(..), _, 0) => {
            let on = |h: Term, ty: &T| Term::lam("p", ty.clone(), Term::pair(app(h, Term::proj(1, v("p"))), Term::proj(2, v("p"))));
            (on(f, whole), on(g, &new))
        }
        (T::Prod(..), _, _) => {
            let on = |h: Term, ty: &T| Term::lam("p", ty.clone(), Term::pair(Term::proj(1, v("p")), app(h, Term::proj(2, v("p")))));
            (on(f, whole), on(g, &new))
        }
        (T::Arrow(a, _), T::Arrow(a2, _), 0) => {
            // contravariant: precompose with the opposite direction
            let on = |h: Term, ty: &T, dom: &T| Term::lam("h", ty.clone(), Term::lam("y", dom.clone(), app(v("h"), app(h, v("y")))));
            (on(g, whole, a2), on(f, &new, a))
        }
        (T::Arrow(a, _), _, _) => {
            let on = |h: Term, ty: &T| Term::lam("h", ty.clone(), Term::lam("y", (**a).clone(), app(h, app(v("h"), v("y")))));
            (on(f, whole), on(g, &new))
        }
        (T::Par(a, b), T::Par(a2, _), 0) => {
            // λp.μ(α,β).[α](h(μγ.[γ,β]p))
            let on = |h: Term, ty: &T, from: &T, to: &T| {
                Term::lam(
                    "p",
                    ty.clone(),
                    Term::mu2(
                        "al",
                        to.clone(),
                        "be",
                        (**b).clone(),
                        Term::name("al", app(h, Term::mu("ga", from.clone(), Term::name2("ga", "be", v("p"))))),
                    ),
                )
            };
            (on(f, whole, a, a2), on(g, &new, a2, a))
        }
        (T::Par(a, b), T::Par(_, b2), _) => {
            let on = |h: Term, ty: &T, from: &T, to: &T| {
                Term::lam(
                    "p",
                    ty.clone(),
                    Term::mu2(
                        "al",
                        (**a).clone(),
                        "be",
                        to.clone(),
                        Term::name("be", app(h, Term::mu("ga", from.clone(), Term::name2("al", "ga", v("p"))))),
                    ),
                )
            };
            (on(f, whole, b, b2), on(g, &new, b2, b))
        }
        (T::Forall(x, _), _, _) => {
            let on = |h: Term, ty: &T| Term::lam("p", ty.clone(), Term::tlam(*x, app(h, Term::tapp(v("p"), T::Var(*x)))));
            (on(f, whole), on(g, &new))
        }
        _ => return Err(Error::Internal(format!("cannot lift through {whole}"))),
    };
    Ok(Iso { a: whole.clone(), b: new, fwd: Some(fwd), bwd: Some(bwd) })
}

/// Renames every `ΛX` whose `X` is free in the types of the enclosing
/// variables and names, so the generalization side condition holds.
/// Pieces built separately are closed, but composing them puts them under
/// binders whose types may mention a reused type variable.
pub(crate) fn separate_type_binders(t: &Term) -> Term {
    fn ftv(ty: &TypeExpr) -> Vec<Ident> {
        crate::types::free_type_vars(ty).into_iter().collect()
    }
    fn go(t: &Term, scope: &mut Vec<Ident>) -> Term {
        let under = |vars: Vec<Ident>, body: &Term, scope: &mut Vec<Ident>| {
            let n = scope.len();
            scope.extend(vars);
            let r = go(body, scope);
            scope.truncate(n);
            r
        };
        match t {
            Term::Var(_) | Term::Star => t.clone(),
            Term::Pair(a, b) => Term::pair(go(a, scope), go(b, scope)),
            Term::App(a, b) => Term::app(go(a, scope), go(b, scope)),
            Term::Proj(i, a) => Term::proj(*i, go(a, scope)),
            Term::Name(a, b) => Term::name(*a, go(b, scope)),
            Term::Name2(a, c, b) => Term::name2(*a, *c, go(b, scope)),
            Term::TApp(a, ty) => Term::tapp(go(a, scope), ty.clone()),
            Term::Lam(x, ty, b) => Term::lam(*x, ty.clone(), under(ftv(ty), b, scope)),
            Term::Mu(x, ty, b) => Term::mu(*x, ty.clone(), under(ftv(ty), b, scope)),
            Term::Mu2(x, tx, y, ty, b) => {
                let mut vs = ftv(tx);
                vs.extend(ftv(ty));
                Term::mu2(*x, tx.clone(), *y, ty.clone(), under(vs, b, scope))
            }
            Term::TLam(x, b) if scope.contains(x) => {
                let mut ids = std::collections::BTreeSet::new();
                crate::lambdamu::all_idents(b, &mut ids);
                let z = x.fresh(|c| scope.contains(&c) || ids.contains(&c));
                let b = subst_type_in_term(b, &TypeExpr::Var(z), *x);
                Term::tlam(z, under(vec![z], &b, scope))
            }
            Term::TLam(x, b) => Term::tlam(*x, under(vec![*x], b, scope)),
        }
    }
    go(t, &mut Vec::new())
}
