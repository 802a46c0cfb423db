//! Coercion terms realizing isomorphisms: one pair per axiom, lifted along
//! rewrite traces and joined by the matching of the two canonical forms.

mod axioms;
mod lift;
mod matching;

use std::collections::BTreeSet;

use crate::canon::{normalize_type, RewriteTrace};
use crate::error::{Error, Result};
use crate::ident::Ident;
use crate::iso::decide_iso;
use crate::lambdamu::{typecheck, verify_iso_pair, Term, TypingContext, VerificationReport};
use crate::types::{alpha_eq, free_type_vars, CalculusMode, TypeExpr};

pub use axioms::{AxiomId, Instantiation};
pub use matching::Matching;

/// `forward : source → target` and `backward : target → source`, both
/// typechecked when the pair is built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoercionPair {
    pub forward: Term,
    pub backward: Term,
    pub source: TypeExpr,
    pub target: TypeExpr,
    pub mode: CalculusMode,
}

impl CoercionPair {
    pub fn new(forward: Term, backward: Term, source: TypeExpr, target: TypeExpr, mode: CalculusMode) -> Result<CoercionPair> {
        let mut tv: BTreeSet<Ident> = free_type_vars(&source);
        tv.extend(free_type_vars(&target));
        let ctx = TypingContext::with_tvars(mode, tv);
        for (term, want) in [
            (&forward, TypeExpr::arrow(source.clone(), target.clone())),
            (&backward, TypeExpr::arrow(target.clone(), source.clone())),
        ] {
            let got = typecheck(&ctx, term)?;
            if !alpha_eq(&got, &want) {
                return Err(Error::Typing {
                    path: "root".into(),
                    msg: format!("coercion has type {got}, expected {want}"),
                });
            }
        }
        Ok(CoercionPair { forward, backward, source, target, mode })
    }

    /// `(λx.x, λx.x)`.
    pub fn identity(t: &TypeExpr, mode: CalculusMode) -> Result<CoercionPair> {
        Iso::id(t.clone()).into_pair(mode)
    }

    pub fn inverse(&self) -> CoercionPair {
        CoercionPair {
            forward: self.backward.clone(),
            backward: self.forward.clone(),
            source: self.target.clone(),
            target: self.source.clone(),
            mode: self.mode,
        }
    }

    pub fn verify(&self, fuel: usize) -> VerificationReport {
        verify_iso_pair(&self.forward, &self.backward, &self.source, &self.target, self.mode, fuel)
    }
}

/// A coercion pair under construction. `None` stands for the identity, so
/// composing with it adds nothing.
#[derive(Clone, Debug)]
pub(crate) struct Iso {
    pub a: TypeExpr,
    pub b: TypeExpr,
    pub fwd: Option<Term>,
    pub bwd: Option<Term>,
}

fn id_term(t: &TypeExpr) -> Term {
    Term::lam("x", t.clone(), Term::var("x"))
}

fn then_term(first: Option<Term>, second: Option<Term>, dom: &TypeExpr) -> Option<Term> {
    match (first, second) {
        (None, g) => g,
        (f, None) => f,
        (Some(f), Some(g)) => Some(Term::lam("x", dom.clone(), Term::app(g, Term::app(f, Term::var("x"))))),
    }
}

impl Iso {
    pub fn id(t: TypeExpr) -> Iso {
        Iso { a: t.clone(), b: t, fwd: None, bwd: None }
    }

    pub fn inverse(self) -> Iso {
        Iso { a: self.b, b: self.a, fwd: self.bwd, bwd: self.fwd }
    }

    /// `self` followed by `next`.
    pub fn then(self, next: Iso) -> Result<Iso> {
        if !alpha_eq(&self.b, &next.a) {
            return Err(Error::Internal(format!("cannot compose: {} is not {}", self.b, next.a)));
        }
        Ok(Iso {
            fwd: then_term(self.fwd, next.fwd, &self.a),
            bwd: then_term(next.bwd, self.bwd, &next.b),
            a: self.a,
            b: next.b,
        })
    }

    fn into_pair(self, mode: CalculusMode) -> Result<CoercionPair> {
        let fix = |t: Option<Term>, dom: &TypeExpr| t.map_or_else(|| id_term(dom), |t| lift::separate_type_binders(&t));
        let forward = fix(self.fwd, &self.a);
        let backward = fix(self.bwd, &self.b);
        CoercionPair::new(forward, backward, self.a, self.b, mode)
    }
}

/// The schema pair of an axiom at an instance, typechecked.
pub fn axiom_witness(id: AxiomId, inst: &Instantiation, mode: CalculusMode) -> Result<CoercionPair> {
    if !id.allowed_in(mode) {
        return Err(Error::ForbiddenInMode { construct: id.name(), mode });
    }
    axioms::axiom_iso(id, inst).into_pair(mode)
}

/// The coercion from `source` to the end of `trace`, step by step.
fn along(source: &TypeExpr, trace: &RewriteTrace) -> Result<Iso> {
    let mut acc = Iso::id(source.clone());
    for step in &trace.steps {
        let here = lift::rule_iso(step)?;
        let whole = acc.b.clone();
        acc = acc.then(lift::lift(&whole, &step.path, here)?)?;
    }
    Ok(acc)
}

/// Joins `a` rewritten along `trace_a`, the matching of the two normal
/// forms, and `trace_b` walked backwards to `b`.
pub fn compose_witnesses(
    trace_a: &RewriteTrace,
    matching: &Matching,
    trace_b: &RewriteTrace,
    a: &TypeExpr,
    b: &TypeExpr,
    mode: CalculusMode,
) -> Result<CoercionPair> {
    let left = along(a, trace_a)?;
    let right = along(b, trace_b)?.inverse();
    left.then(matching.iso()?)?.then(right)?.into_pair(mode)
}

/// A coercion pair for `a ≃ b`, or `None` when they are not isomorphic.
pub fn witness_for_iso(a: &TypeExpr, b: &TypeExpr, mode: CalculusMode) -> Result<Option<CoercionPair>> {
    if !decide_iso(a, b, mode)?.isomorphic {
        return Ok(None);
    }
    let (na, ta) = normalize_type(a, mode);
    let (nb, tb) = normalize_type(b, mode);
    let m = Matching::between(&na, &nb)
        .ok_or_else(|| Error::Internal(format!("normal forms {na} and {nb} do not match")))?;
    compose_witnesses(&ta, &m, &tb, a, b, mode).map(Some)
}

#[cfg(test)]
mod tests;
