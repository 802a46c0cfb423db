//! Second-order types: `⊤ | ⊥ | X | A × B | A → B | A ⅋ B | ∀X.A`.

mod json;
pub(crate) mod ops;
pub(crate) mod parse;
mod print;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ident::Ident;

pub use json::{type_from_json, type_to_json};
pub use ops::{alpha_eq, enabling_check, free_type_vars, rename_apart, subst_type};
pub use parse::{parse_type, parse_type_unchecked};
pub use print::print_type;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum TypeExpr {
    Top,
    Bot,
    Var(Ident),
    Prod(Arc<TypeExpr>, Arc<TypeExpr>),
    Arrow(Arc<TypeExpr>, Arc<TypeExpr>),
    Par(Arc<TypeExpr>, Arc<TypeExpr>),
    Forall(Ident, Arc<TypeExpr>),
}

impl TypeExpr {
    pub fn var(name: impl Into<Ident>) -> TypeExpr {
        TypeExpr::Var(name.into())
    }

    pub fn prod(a: TypeExpr, b: TypeExpr) -> TypeExpr {
        TypeExpr::Prod(Arc::new(a), Arc::new(b))
    }

    pub fn arrow(a: TypeExpr, b: TypeExpr) -> TypeExpr {
        TypeExpr::Arrow(Arc::new(a), Arc::new(b))
    }

    pub fn par(a: TypeExpr, b: TypeExpr) -> TypeExpr {
        TypeExpr::Par(Arc::new(a), Arc::new(b))
    }

    pub fn forall(x: impl Into<Ident>, body: TypeExpr) -> TypeExpr {
        TypeExpr::Forall(x.into(), Arc::new(body))
    }

    /// `∀X₁…∀Xₙ.body`, outermost binder first.
    pub fn foralls(binders: &[Ident], body: TypeExpr) -> TypeExpr {
        binders
            .iter()
            .rev()
            .fold(body, |acc, &x| TypeExpr::forall(x, acc))
    }

    /// Left-nested product, `⊤` when empty.
    pub fn product(items: impl IntoIterator<Item = TypeExpr>) -> TypeExpr {
        items
            .into_iter()
            .reduce(TypeExpr::prod)
            .unwrap_or(TypeExpr::Top)
    }

    /// Left-nested disjunction, `⊥` when empty.
    pub fn disjunction(items: impl IntoIterator<Item = TypeExpr>) -> TypeExpr {
        items
            .into_iter()
            .reduce(TypeExpr::par)
            .unwrap_or(TypeExpr::Bot)
    }

    pub fn children(&self) -> Vec<&TypeExpr> {
        match self {
            TypeExpr::Top | TypeExpr::Bot | TypeExpr::Var(_) => vec![],
            TypeExpr::Prod(a, b) | TypeExpr::Arrow(a, b) | TypeExpr::Par(a, b) => vec![a, b],
            TypeExpr::Forall(_, a) => vec![a],
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self
            .children()
            .iter()
            .map(|c| c.depth())
            .max()
            .unwrap_or(0)
    }

    pub fn tag(&self) -> &'static str {
        match self {
            TypeExpr::Top => "Top",
            TypeExpr::Bot => "Bot",
            TypeExpr::Var(_) => "Var",
            TypeExpr::Prod(..) => "Prod",
            TypeExpr::Arrow(..) => "Arrow",
            TypeExpr::Par(..) => "Par",
            TypeExpr::Forall(..) => "Forall",
        }
    }
}

impl fmt::Display for TypeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_type(self))
    }
}

impl fmt::Debug for TypeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_type(self))
    }
}

/// Which calculus a type or term is read in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CalculusMode {
    /// System F: no `⊥`, no `⅋`, no control operators.
    SystemF,
    /// λμ2′: `⊥` and single-name μ, but no `⅋`.
    LmuTwoPrime,
    /// Full λμ2.
    #[default]
    LmuTwo,
}

impl CalculusMode {
    pub const ALL: [CalculusMode; 3] = [
        CalculusMode::SystemF,
        CalculusMode::LmuTwoPrime,
        CalculusMode::LmuTwo,
    ];

    /// Short name used by the CLI and the index header.
    pub fn short_name(self) -> &'static str {
        match self {
            CalculusMode::SystemF => "f",
            CalculusMode::LmuTwoPrime => "lmu2p",
            CalculusMode::LmuTwo => "lmu2",
        }
    }

    pub fn from_short_name(s: &str) -> Option<CalculusMode> {
        CalculusMode::ALL
            .into_iter()
            .find(|m| m.short_name() == s)
    }

    pub fn allows_bot(self) -> bool {
        self != CalculusMode::SystemF
    }

    pub fn allows_par(self) -> bool {
        self == CalculusMode::LmuTwo
    }

    pub fn check_type(self, t: &TypeExpr) -> Result<()> {
        match t {
            TypeExpr::Bot if !self.allows_bot() => Err(Error::ForbiddenInMode {
                construct: "_|_",
                mode: self,
            }),
            TypeExpr::Par(..) if !self.allows_par() => Err(Error::ForbiddenInMode {
                construct: "/\\ (par)",
                mode: self,
            }),
            _ => t.children().into_iter().try_for_each(|c| self.check_type(c)),
        }
    }
}

impl fmt::Display for CalculusMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CalculusMode::SystemF => "System F",
            CalculusMode::LmuTwoPrime => "lmu2'",
            CalculusMode::LmuTwo => "lmu2",
        })
    }
}

/// An ordered list of type variables without duplicates.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VarContext(Vec<Ident>);

impl VarContext {
    pub fn new() -> Self {
        VarContext(Vec::new())
    }

    pub fn from_vars(vars: impl IntoIterator<Item = Ident>) -> Self {
        let mut ctx = VarContext::new();
        for v in vars {
            ctx.push(v);
        }
        ctx
    }

    /// Adds `x` unless already present.
    pub fn push(&mut self, x: Ident) {
        if !self.0.contains(&x) {
            self.0.push(x);
        }
    }

    pub fn contains(&self, x: Ident) -> bool {
        self.0.contains(&x)
    }

    pub fn vars(&self) -> &[Ident] {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mode_rules() {
        let bot = TypeExpr::Bot;
        let par = TypeExpr::par(TypeExpr::var("A"), TypeExpr::var("B"));
        assert!(CalculusMode::SystemF.check_type(&bot).is_err());
        assert!(CalculusMode::LmuTwoPrime.check_type(&bot).is_ok());
        assert!(CalculusMode::LmuTwoPrime.check_type(&par).is_err());
        assert!(CalculusMode::LmuTwo.check_type(&par).is_ok());
    }

    #[test]
    fn var_context_rejects_duplicates() {
        let ctx = VarContext::from_vars([Ident::new("X"), Ident::new("X"), Ident::new("Y")]);
        assert_eq!(ctx.vars().len(), 2);
    }
}
