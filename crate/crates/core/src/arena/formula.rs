//! Formulas over `¬`, `⅋`, `×`, `∀`, the syntax that describes arenas.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::ident::Ident;
use crate::types::TypeExpr;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Top,
    Bot,
    Var(Ident),
    Neg(Arc<Formula>),
    Par(Arc<Formula>, Arc<Formula>),
    Prod(Arc<Formula>, Arc<Formula>),
    Forall(Ident, Arc<Formula>),
}

impl Formula {
    pub fn var(x: impl Into<Ident>) -> Formula {
        Formula::Var(x.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Formula) -> Formula {
        Formula::Neg(Arc::new(a))
    }

    pub fn par(a: Formula, b: Formula) -> Formula {
        Formula::Par(Arc::new(a), Arc::new(b))
    }

    pub fn prod(a: Formula, b: Formula) -> Formula {
        Formula::Prod(Arc::new(a), Arc::new(b))
    }

    pub fn forall(x: impl Into<Ident>, a: Formula) -> Formula {
        Formula::Forall(x.into(), Arc::new(a))
    }

    pub fn free_vars(&self) -> HashSet<Ident> {
        fn go(f: &Formula, bound: &mut Vec<Ident>, out: &mut HashSet<Ident>) {
            match f {
                Formula::Top | Formula::Bot => {}
                Formula::Var(x) => {
                    if !bound.contains(x) {
                        out.insert(*x);
                    }
                }
                Formula::Neg(a) => go(a, bound, out),
                Formula::Par(a, b) | Formula::Prod(a, b) => {
                    go(a, bound, out);
                    go(b, bound, out);
                }
                Formula::Forall(x, a) => {
                    bound.push(*x);
                    go(a, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = HashSet::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    fn occurs_free(&self, x: Ident) -> bool {
        match self {
            Formula::Top | Formula::Bot => false,
            Formula::Var(y) => *y == x,
            Formula::Neg(a) => a.occurs_free(x),
            Formula::Par(a, b) | Formula::Prod(a, b) => a.occurs_free(x) || b.occurs_free(x),
            Formula::Forall(y, a) => *y != x && a.occurs_free(x),
        }
    }

    /// Capture-avoiding substitution `self[g/x]`.
    pub fn subst(&self, g: &Formula, x: Ident) -> Formula {
        let fv = g.free_vars();
        self.subst_with(g, x, &fv)
    }

    fn subst_with(&self, g: &Formula, x: Ident, fv: &HashSet<Ident>) -> Formula {
        match self {
            Formula::Top | Formula::Bot => self.clone(),
            Formula::Var(y) if *y == x => g.clone(),
            Formula::Var(_) => self.clone(),
            Formula::Neg(a) => Formula::neg(a.subst_with(g, x, fv)),
            Formula::Par(a, b) => Formula::par(a.subst_with(g, x, fv), b.subst_with(g, x, fv)),
            Formula::Prod(a, b) => Formula::prod(a.subst_with(g, x, fv), b.subst_with(g, x, fv)),
            Formula::Forall(y, a) => {
                if *y == x || !a.occurs_free(x) {
                    self.clone()
                } else if fv.contains(y) {
                    let inner = a.free_vars();
                    let y2 = y.fresh(|c| fv.contains(&c) || inner.contains(&c) || c == x);
                    let renamed = a.subst_with(&Formula::Var(y2), *y, &HashSet::from([y2]));
                    Formula::forall(y2, renamed.subst_with(g, x, fv))
                } else {
                    Formula::forall(*y, a.subst_with(g, x, fv))
                }
            }
        }
    }
}

/// `A → B` becomes `¬A ⅋ B`; everything else is kept.
pub fn type_to_formula(t: &TypeExpr) -> Formula {
    match t {
        TypeExpr::Top => Formula::Top,
        TypeExpr::Bot => Formula::Bot,
        TypeExpr::Var(x) => Formula::Var(*x),
        TypeExpr::Prod(a, b) => Formula::prod(type_to_formula(a), type_to_formula(b)),
        TypeExpr::Par(a, b) => Formula::par(type_to_formula(a), type_to_formula(b)),
        TypeExpr::Arrow(a, b) => {
            Formula::par(Formula::neg(type_to_formula(a)), type_to_formula(b))
        }
        TypeExpr::Forall(x, a) => Formula::forall(*x, type_to_formula(a)),
    }
}

/// Exhaustive innermost application of the ⊤-absorption rules
/// `⊤⅋A = A⅋⊤ = ⊤`, `⊤×⊤ = ⊤`, `¬⊤ = ⊥`, `∀X.⊤ = ⊤`.
pub fn rho_normalize(f: &Formula) -> Formula {
    match f {
        Formula::Top | Formula::Bot | Formula::Var(_) => f.clone(),
        Formula::Neg(a) => match rho_normalize(a) {
            Formula::Top => Formula::Bot,
            a => Formula::neg(a),
        },
        Formula::Par(a, b) => match (rho_normalize(a), rho_normalize(b)) {
            (Formula::Top, _) | (_, Formula::Top) => Formula::Top,
            (a, b) => Formula::par(a, b),
        },
        Formula::Prod(a, b) => match (rho_normalize(a), rho_normalize(b)) {
            (Formula::Top, Formula::Top) => Formula::Top,
            (a, b) => Formula::prod(a, b),
        },
        Formula::Forall(x, a) => match rho_normalize(a) {
            Formula::Top => Formula::Top,
            a => Formula::forall(*x, a),
        },
    }
}

pub fn formula_alpha_eq(f: &Formula, g: &Formula) -> bool {
    fn lookup(env: &[Ident], x: Ident) -> Option<usize> {
        env.iter().rposition(|&y| y == x)
    }
    fn go(f: &Formula, g: &Formula, ef: &mut Vec<Ident>, eg: &mut Vec<Ident>) -> bool {
        match (f, g) {
            (Formula::Top, Formula::Top) | (Formula::Bot, Formula::Bot) => true,
            (Formula::Var(x), Formula::Var(y)) => match (lookup(ef, *x), lookup(eg, *y)) {
                (Some(i), Some(j)) => i == j,
                (None, None) => x == y,
                _ => false,
            },
            (Formula::Neg(a), Formula::Neg(b)) => go(a, b, ef, eg),
            (Formula::Par(a1, a2), Formula::Par(b1, b2))
            | (Formula::Prod(a1, a2), Formula::Prod(b1, b2)) => {
                go(a1, b1, ef, eg) && go(a2, b2, ef, eg)
            }
            (Formula::Forall(x, a), Formula::Forall(y, b)) => {
                ef.push(*x);
                eg.push(*y);
                let r = go(a, b, ef, eg);
                ef.pop();
                eg.pop();
                r
            }
            _ => false,
        }
    }
    go(f, g, &mut Vec::new(), &mut Vec::new())
}

/// Equality up to α-renaming and the ⊤-absorption rules.
pub fn alpharho_eq(f: &Formula, g: &Formula) -> bool {
    formula_alpha_eq(&rho_normalize(f), &rho_normalize(g))
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn level(g: &Formula) -> u8 {
            match g {
                Formula::Forall(..) => 0,
                Formula::Par(..) => 1,
                Formula::Prod(..) => 2,
                _ => 3,
            }
        }
        fn go(g: &Formula, ctx: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
            let paren = level(g) < ctx;
            if paren {
                write!(out, "(")?;
            }
            match g {
                Formula::Top => write!(out, "T")?,
                Formula::Bot => write!(out, "_|_")?,
                Formula::Var(x) => write!(out, "{x}")?,
                Formula::Neg(a) => {
                    write!(out, "~")?;
                    go(a, 3, out)?;
                }
                Formula::Par(a, b) => {
                    go(a, 1, out)?;
                    write!(out, " /\\ ")?;
                    go(b, 2, out)?;
                }
                Formula::Prod(a, b) => {
                    go(a, 2, out)?;
                    write!(out, " * ")?;
                    go(b, 3, out)?;
                }
                Formula::Forall(x, a) => {
                    write!(out, "forall {x}. ")?;
                    go(a, 0, out)?;
                }
            }
            if paren {
                write!(out, ")")?;
            }
            Ok(())
        }
        go(self, 0, f)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
