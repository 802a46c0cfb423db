//! The oriented rewrite system and its termination measure.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::ident::Ident;
use crate::types::ops::ftv_set;
use crate::types::{subst_type, CalculusMode, TypeExpr};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    /// `⊤ ⅋ A ⇒ ⊤`
    TopPar,
    /// `A ⅋ ⊤ ⇒ ⊤`
    ParTop,
    /// `⊥ ⅋ A ⇒ A`
    BotPar,
    /// `A ⅋ ⊥ ⇒ A`
    ParBot,
    /// `A × ⊤ ⇒ A`
    ProdTop,
    /// `⊤ × A ⇒ A`
    TopProd,
    /// `A → ⊤ ⇒ ⊤`
    ArrowTop,
    /// `⊤ → A ⇒ A`
    TopArrow,
    /// `∀X.⊤ ⇒ ⊤`
    ForallTop,
    /// `(A × B) ⅋ C ⇒ (A ⅋ C) × (B ⅋ C)`
    ProdPar,
    /// `A ⅋ (B × C) ⇒ (A ⅋ B) × (A ⅋ C)`
    ParProd,
    /// `(A → B) ⅋ C ⇒ A → (B ⅋ C)`
    ArrowPar,
    /// `A ⅋ (B → C) ⇒ B → (A ⅋ C)`
    ParArrow,
    /// `(∀X.A) ⅋ B ⇒ ∀X.(A ⅋ B)`
    ForallPar,
    /// `A ⅋ ∀X.B ⇒ ∀X.(A ⅋ B)`
    ParForall,
    /// `A → (B × C) ⇒ (A → B) × (A → C)`
    ArrowProd,
    /// `A → (B → C) ⇒ (A × B) → C`
    Curry,
    /// `∀X.(A × B) ⇒ (∀X.A) × (∀X.B)`
    ForallProd,
    /// `A → ∀X.B ⇒ ∀X.(A → B)`
    ArrowForall,
}

impl RuleId {
    pub const ALL: [RuleId; 19] = [
        RuleId::TopPar,
        RuleId::ParTop,
        RuleId::BotPar,
        RuleId::ParBot,
        RuleId::ProdTop,
        RuleId::TopProd,
        RuleId::ArrowTop,
        RuleId::TopArrow,
        RuleId::ForallTop,
        RuleId::ProdPar,
        RuleId::ParProd,
        RuleId::ArrowPar,
        RuleId::ParArrow,
        RuleId::ForallPar,
        RuleId::ParForall,
        RuleId::ArrowProd,
        RuleId::Curry,
        RuleId::ForallProd,
        RuleId::ArrowForall,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::TopPar => "top-par",
            RuleId::ParTop => "par-top",
            RuleId::BotPar => "bot-par",
            RuleId::ParBot => "par-bot",
            RuleId::ProdTop => "prod-top",
            RuleId::TopProd => "top-prod",
            RuleId::ArrowTop => "arrow-top",
            RuleId::TopArrow => "top-arrow",
            RuleId::ForallTop => "forall-top",
            RuleId::ProdPar => "prod-par",
            RuleId::ParProd => "par-prod",
            RuleId::ArrowPar => "arrow-par",
            RuleId::ParArrow => "par-arrow",
            RuleId::ForallPar => "forall-par",
            RuleId::ParForall => "par-forall",
            RuleId::ArrowProd => "arrow-prod",
            RuleId::Curry => "curry",
            RuleId::ForallProd => "forall-prod",
            RuleId::ArrowForall => "arrow-forall",
        }
    }

    pub fn uses_par(self) -> bool {
        matches!(
            self,
            RuleId::TopPar
                | RuleId::ParTop
                | RuleId::BotPar
                | RuleId::ParBot
                | RuleId::ProdPar
                | RuleId::ParProd
                | RuleId::ArrowPar
                | RuleId::ParArrow
                | RuleId::ForallPar
                | RuleId::ParForall
        )
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleId {
    type Err = String;

    fn from_str(s: &str) -> Result<RuleId, String> {
        RuleId::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown rule {s}"))
    }
}

/// Moves the binder of `∀x.body` out of the way of `other`'s free variables.
fn freshen(x: Ident, body: &TypeExpr, other: &TypeExpr) -> (Ident, TypeExpr) {
    let fv_other = ftv_set(other);
    if !fv_other.contains(&x) {
        return (x, body.clone());
    }
    let fv_body = ftv_set(body);
    let y = x.fresh(|c| fv_other.contains(&c) || fv_body.contains(&c));
    (y, subst_type(body, &TypeExpr::Var(y), x))
}

/// Tries `rule` at the root of `t`.
pub fn apply_rule(rule: RuleId, t: &TypeExpr) -> Option<TypeExpr> {
    use TypeExpr as T;
    let out = match (rule, t) {
        (RuleId::TopPar, T::Par(a, _)) if **a == T::Top => T::Top,
        (RuleId::ParTop, T::Par(_, b)) if **b == T::Top => T::Top,
        (RuleId::BotPar, T::Par(a, b)) if **a == T::Bot => (**b).clone(),
        (RuleId::ParBot, T::Par(a, b)) if **b == T::Bot => (**a).clone(),
        (RuleId::ProdTop, T::Prod(a, b)) if **b == T::Top => (**a).clone(),
        (RuleId::TopProd, T::Prod(a, b)) if **a == T::Top => (**b).clone(),
        (RuleId::ArrowTop, T::Arrow(_, b)) if **b == T::Top => T::Top,
        (RuleId::TopArrow, T::Arrow(a, b)) if **a == T::Top => (**b).clone(),
        (RuleId::ForallTop, T::Forall(_, a)) if **a == T::Top => T::Top,
        (RuleId::ProdPar, T::Par(ab, c)) => match &**ab {
            T::Prod(a, b) => T::prod(
                T::par((**a).clone(), (**c).clone()),
                T::par((**b).clone(), (**c).clone()),
            ),
            _ => return None,
        },
        (RuleId::ParProd, T::Par(a, bc)) => match &**bc {
            T::Prod(b, c) => T::prod(
                T::par((**a).clone(), (**b).clone()),
                T::par((**a).clone(), (**c).clone()),
            ),
            _ => return None,
        },
        (RuleId::ArrowPar, T::Par(ab, c)) => match &**ab {
            T::Arrow(a, b) => T::arrow((**a).clone(), T::par((**b).clone(), (**c).clone())),
            _ => return None,
        },
        (RuleId::ParArrow, T::Par(a, bc)) => match &**bc {
            T::Arrow(b, c) => T::arrow((**b).clone(), T::par((**a).clone(), (**c).clone())),
            _ => return None,
        },
        (RuleId::ForallPar, T::Par(xa, b)) => match &**xa {
            T::Forall(x, a) => {
                let (y, a) = freshen(*x, a, b);
                T::forall(y, T::par(a, (**b).clone()))
            }
            _ => return None,
        },
        (RuleId::ParForall, T::Par(a, xb)) => match &**xb {
            T::Forall(x, b) => {
                let (y, b) = freshen(*x, b, a);
                T::forall(y, T::par((**a).clone(), b))
            }
            _ => return None,
        },
        (RuleId::ArrowProd, T::Arrow(a, bc)) => match &**bc {
            T::Prod(b, c) => T::prod(
                T::arrow((**a).clone(), (**b).clone()),
                T::arrow((**a).clone(), (**c).clone()),
            ),
            _ => return None,
        },
        (RuleId::Curry, T::Arrow(a, bc)) => match &**bc {
            T::Arrow(b, c) => T::arrow(T::prod((**a).clone(), (**b).clone()), (**c).clone()),
            _ => return None,
        },
        (RuleId::ForallProd, T::Forall(x, ab)) => match &**ab {
            T::Prod(a, b) => T::prod(T::forall(*x, (**a).clone()), T::forall(*x, (**b).clone())),
            _ => return None,
        },
        (RuleId::ArrowForall, T::Arrow(a, xb)) => match &**xb {
            T::Forall(x, b) => {
                let (y, b) = freshen(*x, b, a);
                T::forall(y, T::arrow((**a).clone(), b))
            }
            _ => return None,
        },
        _ => return None,
    };
    Some(out)
}

/// The first rule (in [`RuleId::ALL`] order) applying at the root.
pub fn root_step(t: &TypeExpr, mode: CalculusMode) -> Option<(RuleId, TypeExpr)> {
    RuleId::ALL
        .into_iter()
        .filter(|r| mode.allows_par() || !r.uses_par())
        .find_map(|r| apply_rule(r, t).map(|u| (r, u)))
}

/// One leftmost-innermost step: the result, the rule and the path to the
/// redex (child indices from the root).
pub fn rewrite_step(t: &TypeExpr, mode: CalculusMode) -> Option<(TypeExpr, RuleId, Vec<u8>)> {
    fn go(t: &TypeExpr, mode: CalculusMode, path: &mut Vec<u8>) -> Option<(TypeExpr, RuleId)> {
        for (i, c) in t.children().into_iter().enumerate() {
            path.push(i as u8);
            if let Some((c2, r)) = go(c, mode, path) {
                return Some((with_child(t, i, c2), r));
            }
            path.pop();
        }
        root_step(t, mode).map(|(r, u)| (u, r))
    }
    let mut path = Vec::new();
    go(t, mode, &mut path).map(|(u, r)| (u, r, path))
}

pub(crate) fn with_child(t: &TypeExpr, i: usize, c: TypeExpr) -> TypeExpr {
    match (t, i) {
        (TypeExpr::Prod(_, b), 0) => TypeExpr::prod(c, (**b).clone()),
        (TypeExpr::Prod(a, _), 1) => TypeExpr::prod((**a).clone(), c),
        (TypeExpr::Arrow(_, b), 0) => TypeExpr::arrow(c, (**b).clone()),
        (TypeExpr::Arrow(a, _), 1) => TypeExpr::arrow((**a).clone(), c),
        (TypeExpr::Par(_, b), 0) => TypeExpr::par(c, (**b).clone()),
        (TypeExpr::Par(a, _), 1) => TypeExpr::par((**a).clone(), c),
        (TypeExpr::Forall(x, _), 0) => TypeExpr::forall(*x, c),
        _ => panic!("no child {i} in {t}"),
    }
}

pub fn subterm_at<'a>(t: &'a TypeExpr, path: &[u8]) -> Option<&'a TypeExpr> {
    match path.split_first() {
        None => Some(t),
        Some((&i, rest)) => t.children().get(i as usize).and_then(|c| subterm_at(c, rest)),
    }
}

pub fn replace_at(t: &TypeExpr, path: &[u8], new: TypeExpr) -> Option<TypeExpr> {
    match path.split_first() {
        None => Some(new),
        Some((&i, rest)) => {
            let c = t.children().get(i as usize).copied()?;
            Some(with_child(t, i as usize, replace_at(c, rest, new)?))
        }
    }
}

/// Largest exponent materialized by [`psi`].
pub const PSI_MAX_EXPONENT: u64 = 1 << 22;

/// The termination measure. `None` when a `⅋` would need an exponent
/// beyond [`PSI_MAX_EXPONENT`].
pub fn psi(t: &TypeExpr) -> Option<BigUint> {
    Some(match t {
        TypeExpr::Top | TypeExpr::Bot | TypeExpr::Var(_) => BigUint::from(2u32),
        TypeExpr::Prod(a, b) => psi(a)? + psi(b)? + 1u32,
        TypeExpr::Forall(_, a) => psi(a)? * 2u32,
        TypeExpr::Arrow(a, b) => psi(a)? * psi(b)? + 1u32,
        TypeExpr::Par(a, b) => {
            let e = (psi(a)? * psi(b)?).to_u64().filter(|&e| e <= PSI_MAX_EXPONENT)?;
            BigUint::one() << e
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::parse_type_unchecked as p;

    fn psi_of(s: &str) -> BigUint {
        psi(&p(s).unwrap()).unwrap()
    }

    #[test]
    fn psi_values() {
        assert_eq!(psi_of("_|_"), BigUint::from(2u32));
        assert_eq!(psi_of("_|_ * _|_"), BigUint::from(5u32));
        assert_eq!(psi_of("(_|_ -> _|_) /\\ _|_"), BigUint::from(1024u32));
        assert_eq!(psi_of("_|_ -> _|_ /\\ _|_"), BigUint::from(33u32));
        assert_eq!(psi_of("forall X. X"), BigUint::from(4u32));
    }

    #[test]
    fn psi_gives_up_on_towers() {
        assert!(psi(&p("((A /\\ B) /\\ C) /\\ D").unwrap()).is_none());
    }

    #[test]
    fn listed_examples() {
        let m = CalculusMode::LmuTwo;
        let (u, r, path) = rewrite_step(&p("T -> A").unwrap(), m).unwrap();
        assert_eq!((u, r, path), (p("A").unwrap(), RuleId::TopArrow, vec![]));
        let (u, r, _) = rewrite_step(&p("A -> B -> C").unwrap(), m).unwrap();
        assert_eq!((u, r), (p("A * B -> C").unwrap(), RuleId::Curry));
        assert!(rewrite_step(&TypeExpr::Bot, m).is_none());
    }

    #[test]
    fn distribution_follows_the_axiom() {
        let t = p("(A * B) /\\ C").unwrap();
        let (u, r, _) = rewrite_step(&t, CalculusMode::LmuTwo).unwrap();
        assert_eq!(r, RuleId::ProdPar);
        assert_eq!(u, p("(A /\\ C) * (B /\\ C)").unwrap());
    }

    #[test]
    fn leftmost_innermost() {
        // both factors are redexes; the left one goes first, at path [0]
        let t = p("(T * A) * (T * B)").unwrap();
        let (u, r, path) = rewrite_step(&t, CalculusMode::LmuTwo).unwrap();
        assert_eq!(path, vec![0]);
        assert_eq!(r, RuleId::TopProd);
        assert_eq!(u, p("A * (T * B)").unwrap());
    }

    #[test]
    fn quantifier_extrusion_renames() {
        let t = p("X -> forall X. X").unwrap();
        let (u, _, _) = rewrite_step(&t, CalculusMode::LmuTwo).unwrap();
        assert_eq!(u, p("forall X1. X -> X1").unwrap());
    }

    #[test]
    fn par_rules_are_off_without_par() {
        assert!(root_step(&p("T /\\ A").unwrap(), CalculusMode::SystemF).is_none());
    }
}
