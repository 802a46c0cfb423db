//! The syntax-directed typing rules. Types are compared up to α.

use std::borrow::Cow;

use super::{subst_type_in_term, Term};
use crate::error::{Error, Result};
use crate::ident::Ident;
use crate::types::{alpha_eq, enabling_check, free_type_vars, subst_type, CalculusMode, TypeExpr, VarContext};

/// `X⃗; Γ ⊢ − | Δ` together with the calculus the term must belong to.
/// Later entries of `gamma` and `delta` shadow earlier ones.
#[derive(Clone, Debug, Default)]
pub struct TypingContext {
    pub tvars: VarContext,
    pub gamma: Vec<(Ident, TypeExpr)>,
    pub delta: Vec<(Ident, TypeExpr)>,
    pub mode: CalculusMode,
}

impl TypingContext {
    pub fn new(mode: CalculusMode) -> TypingContext {
        TypingContext { mode, ..Default::default() }
    }

    pub fn with_tvars(mode: CalculusMode, tvars: impl IntoIterator<Item = Ident>) -> TypingContext {
        TypingContext { tvars: VarContext::from_vars(tvars), mode, ..Default::default() }
    }

    pub fn lookup_var(&self, x: Ident) -> Option<&TypeExpr> {
        self.gamma.iter().rev().find(|(y, _)| *y == x).map(|(_, t)| t)
    }

    pub fn lookup_name(&self, a: Ident) -> Option<&TypeExpr> {
        self.delta.iter().rev().find(|(y, _)| *y == a).map(|(_, t)| t)
    }

    fn mentions(&self, x: Ident) -> bool {
        self.gamma
            .iter()
            .chain(&self.delta)
            .any(|(_, t)| free_type_vars(t).contains(&x))
    }
}

struct Checker {
    ctx: TypingContext,
    path: Vec<&'static str>,
}

impl Checker {
    fn err(&self, msg: impl Into<String>) -> Error {
        let path = if self.path.is_empty() { "root".to_string() } else { self.path.join(".") };
        Error::Typing { path, msg: msg.into() }
    }

    fn under<R>(&mut self, step: &'static str, f: impl FnOnce(&mut Self) -> R) -> R {
        self.path.push(step);
        let r = f(self);
        self.path.pop();
        r
    }

    fn check_annot(&self, a: &TypeExpr) -> Result<()> {
        self.ctx.mode.check_type(a)?;
        if !enabling_check(&self.ctx.tvars, a) {
            return Err(self.err(format!("type {a} mentions variables outside the context")));
        }
        Ok(())
    }

    fn control(&self, what: &str, needs_par: bool) -> Result<()> {
        let ok = if needs_par { self.ctx.mode.allows_par() } else { self.ctx.mode.allows_bot() };
        if ok {
            Ok(())
        } else {
            Err(self.err(format!("{what} is not available in {}", self.ctx.mode)))
        }
    }

    fn name_type(&self, a: Ident) -> Result<TypeExpr> {
        self.ctx.lookup_name(a).cloned().ok_or_else(|| self.err(format!("unbound name {a}")))
    }

    fn expect(&self, want: &TypeExpr, got: &TypeExpr, what: &str) -> Result<()> {
        if alpha_eq(want, got) {
            Ok(())
        } else {
            Err(self.err(format!("{what}: expected {want}, found {got}")))
        }
    }

    fn check(&mut self, t: &Term) -> Result<TypeExpr> {
        match t {
            Term::Var(x) => self
                .ctx
                .lookup_var(*x)
                .cloned()
                .ok_or_else(|| self.err(format!("unbound variable {x}"))),
            Term::Star => Ok(TypeExpr::Top),
            Term::Pair(a, b) => {
                let ta = self.under("fst", |c| c.check(a))?;
                let tb = self.under("snd", |c| c.check(b))?;
                Ok(TypeExpr::prod(ta, tb))
            }
            Term::Proj(i, a) => match self.under("proj", |c| c.check(a))? {
                TypeExpr::Prod(l, r) => Ok(if *i == 1 { (*l).clone() } else { (*r).clone() }),
                other => Err(self.err(format!("projection from non-product {other}"))),
            },
            Term::App(f, a) => {
                let tf = self.under("fun", |c| c.check(f))?;
                let ta = self.under("arg", |c| c.check(a))?;
                match tf {
                    TypeExpr::Arrow(dom, cod) => {
                        self.expect(&dom, &ta, "argument type")?;
                        Ok((*cod).clone())
                    }
                    other => Err(self.err(format!("applying a term of non-arrow type {other}"))),
                }
            }
            Term::Lam(x, a, body) => {
                self.check_annot(a)?;
                self.ctx.gamma.push((*x, a.clone()));
                let tb = self.under("body", |c| c.check(body));
                self.ctx.gamma.pop();
                Ok(TypeExpr::arrow(a.clone(), tb?))
            }
            Term::Name(a, body) => {
                self.control("naming", false)?;
                let ta = self.name_type(*a)?;
                let tb = self.under("body", |c| c.check(body))?;
                self.expect(&ta, &tb, &format!("named by {a}"))?;
                Ok(TypeExpr::Bot)
            }
            Term::Mu(a, ty, body) => {
                self.control("mu", false)?;
                self.check_annot(ty)?;
                self.ctx.delta.push((*a, ty.clone()));
                let tb = self.under("body", |c| c.check(body));
                self.ctx.delta.pop();
                self.expect(&TypeExpr::Bot, &tb?, "mu body")?;
                Ok(ty.clone())
            }
            Term::Name2(a, b, body) => {
                self.control("double naming", true)?;
                let (ta, tb) = (self.name_type(*a)?, self.name_type(*b)?);
                let want = TypeExpr::par(ta, tb);
                let got = self.under("body", |c| c.check(body))?;
                self.expect(&want, &got, &format!("named by {a}, {b}"))?;
                Ok(TypeExpr::Bot)
            }
            Term::Mu2(a, ta, b, tb, body) => {
                self.control("double mu", true)?;
                self.check_annot(ta)?;
                self.check_annot(tb)?;
                self.ctx.delta.push((*a, ta.clone()));
                self.ctx.delta.push((*b, tb.clone()));
                let got = self.under("body", |c| c.check(body));
                self.ctx.delta.truncate(self.ctx.delta.len() - 2);
                self.expect(&TypeExpr::Bot, &got?, "double mu body")?;
                Ok(TypeExpr::par(ta.clone(), tb.clone()))
            }
            Term::TLam(x, body) => {
                // terms are taken up to renaming of bound type variables, so a
                // binder clashing with the context is renamed rather than refused
                let (x, body) = if self.ctx.mentions(*x) {
                    let mut ids = std::collections::BTreeSet::new();
                    super::all_idents(body, &mut ids);
                    let z = x.fresh(|c| ids.contains(&c) || self.ctx.tvars.contains(c) || self.ctx.mentions(c));
                    (z, Cow::Owned(subst_type_in_term(body, &TypeExpr::Var(z), *x)))
                } else {
                    (*x, Cow::Borrowed(&**body))
                };
                let saved = self.ctx.tvars.clone();
                self.ctx.tvars.push(x);
                let tb = self.under("body", |c| c.check(&body));
                self.ctx.tvars = saved;
                Ok(TypeExpr::forall(x, tb?))
            }
            Term::TApp(f, b) => {
                self.check_annot(b)?;
                match self.under("fun", |c| c.check(f))? {
                    TypeExpr::Forall(x, a) => Ok(subst_type(&a, b, x)),
                    other => Err(self.err(format!("type application to non-universal {other}"))),
                }
            }
        }
    }
}

/// The type of `t` in `ctx`, or the first rule that fails.
pub fn typecheck(ctx: &TypingContext, t: &Term) -> Result<TypeExpr> {
    for (_, a) in ctx.gamma.iter().chain(&ctx.delta) {
        ctx.mode.check_type(a)?;
        if !enabling_check(&ctx.tvars, a) {
            return Err(Error::Typing { path: "context".into(), msg: format!("{a} is not enabled") });
        }
    }
    Checker { ctx: ctx.clone(), path: Vec::new() }.check(t)
}
