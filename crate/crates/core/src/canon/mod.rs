//! Canonical forms `∏ᵢ ∀X⃗ᵢ.Nᵢ → αᵢ` reached by the oriented rewrite system,
//! and a key identifying them up to the remaining symmetries.

mod key;
mod rules;

use std::fmt;

use crate::error::{Error, Result};
use crate::ident::Ident;
use crate::types::{alpha_eq, CalculusMode, TypeExpr};

pub use key::{canonical_key, canonical_labeling, LabeledFactor, LabeledForm, Labeling};
pub use rules::{
    apply_rule, psi, replace_at, rewrite_step, root_step, subterm_at, RuleId, PSI_MAX_EXPONENT,
};

/// One factor `∀X⃗.N → α`. An empty `arg` means there is no `N → ` part;
/// an empty `tail` stands for `⊥`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Factor {
    pub binders: Vec<Ident>,
    pub arg: CanonicalForm,
    pub tail: Vec<Ident>,
}

/// A product of factors; the empty product is `⊤`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    pub factors: Vec<Factor>,
}

impl Factor {
    pub fn to_type(&self) -> TypeExpr {
        let tail = TypeExpr::disjunction(self.tail.iter().map(|&x| TypeExpr::Var(x)));
        let body = if self.arg.factors.is_empty() {
            tail
        } else {
            TypeExpr::arrow(self.arg.to_type(), tail)
        };
        TypeExpr::foralls(&self.binders, body)
    }
}

impl CanonicalForm {
    pub fn to_type(&self) -> TypeExpr {
        TypeExpr::product(self.factors.iter().map(Factor::to_type))
    }

    /// Reads a normal form of the rewrite system; `None` if `t` is outside
    /// the canonical grammar.
    pub fn from_normal(t: &TypeExpr) -> Option<CanonicalForm> {
        fn factors(t: &TypeExpr, out: &mut Vec<Factor>) -> Option<()> {
            match t {
                TypeExpr::Prod(a, b) => {
                    factors(a, out)?;
                    factors(b, out)
                }
                _ => {
                    out.push(factor(t)?);
                    Some(())
                }
            }
        }
        fn factor(t: &TypeExpr) -> Option<Factor> {
            let mut binders = Vec::new();
            let mut body = t;
            while let TypeExpr::Forall(x, b) = body {
                binders.push(*x);
                body = b;
            }
            let (arg, tail_t) = match body {
                TypeExpr::Arrow(a, r) => {
                    let arg = CanonicalForm::from_normal(a)?;
                    if arg.factors.is_empty() {
                        return None;
                    }
                    (arg, &**r)
                }
                _ => (CanonicalForm::default(), body),
            };
            let mut tail = Vec::new();
            collect_tail(tail_t, &mut tail)?;
            Some(Factor { binders, arg, tail })
        }
        fn collect_tail(t: &TypeExpr, out: &mut Vec<Ident>) -> Option<()> {
            match t {
                TypeExpr::Bot if out.is_empty() => Some(()),
                TypeExpr::Var(x) => {
                    out.push(*x);
                    Some(())
                }
                TypeExpr::Par(a, b) => {
                    if matches!(**a, TypeExpr::Bot) || matches!(**b, TypeExpr::Bot) {
                        return None;
                    }
                    collect_tail(a, out)?;
                    collect_tail(b, out)
                }
                _ => None,
            }
        }
        let mut out = Vec::new();
        if *t != TypeExpr::Top {
            factors(t, &mut out)?;
        }
        Some(CanonicalForm { factors: out })
    }

    /// Number of type constructors, a rough size.
    pub fn size(&self) -> usize {
        self.factors
            .iter()
            .map(|f| 1 + f.binders.len() + f.tail.len() + f.arg.size())
            .sum()
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_type())
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_type())
    }
}

impl fmt::Debug for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_type())
    }
}

/// One rewrite: `before` at `path` was replaced by `after`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteStep {
    pub rule: RuleId,
    pub path: Vec<u8>,
    pub before: TypeExpr,
    pub after: TypeExpr,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RewriteTrace {
    pub steps: Vec<RewriteStep>,
}

impl RewriteTrace {
    /// Applies the recorded steps to `source`, checking each redex.
    pub fn replay(&self, source: &TypeExpr) -> Result<TypeExpr> {
        let mut t = source.clone();
        for (i, s) in self.steps.iter().enumerate() {
            let here = subterm_at(&t, &s.path)
                .ok_or_else(|| Error::Internal(format!("step {i}: bad path {:?}", s.path)))?;
            if !alpha_eq(here, &s.before) {
                return Err(Error::Internal(format!("step {i}: expected {} at {:?}, found {here}", s.before, s.path)));
            }
            t = replace_at(&t, &s.path, s.after.clone()).expect("path checked above");
        }
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Leftmost-innermost normalization. Produces the same step sequence as
/// iterating [`rewrite_step`], without re-scanning normal subterms.
pub fn normalize_type(t: &TypeExpr, mode: CalculusMode) -> (TypeExpr, RewriteTrace) {
    fn go(t: &TypeExpr, mode: CalculusMode, path: &mut Vec<u8>, trace: &mut RewriteTrace) -> TypeExpr {
        let mut cur = t.clone();
        let n = t.children().len();
        for i in 0..n {
            path.push(i as u8);
            let c = go(cur.children()[i], mode, path, trace);
            path.pop();
            cur = rules::with_child(&cur, i, c);
        }
        match root_step(&cur, mode) {
            None => cur,
            Some((rule, next)) => {
                trace.steps.push(RewriteStep {
                    rule,
                    path: path.clone(),
                    before: cur,
                    after: next.clone(),
                });
                go(&next, mode, path, trace)
            }
        }
    }
    let mut trace = RewriteTrace::default();
    let nf = go(t, mode, &mut Vec::new(), &mut trace);
    (nf, trace)
}

/// Rewrites `t` to its canonical form.
pub fn canonicalize(t: &TypeExpr, mode: CalculusMode) -> Result<(CanonicalForm, RewriteTrace)> {
    let (nf, trace) = normalize_type(t, mode);
    let cf = CanonicalForm::from_normal(&nf)
        .ok_or_else(|| Error::Internal(format!("normal form {nf} is not canonical")))?;
    Ok((cf, trace))
}
