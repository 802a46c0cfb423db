//! The axioms of the isomorphism theory and one coercion pair per axiom.

use std::fmt;
use std::str::FromStr;

use super::Iso;
use crate::ident::Ident;
use crate::lambdamu::Term;
use crate::types::{CalculusMode, TypeExpr};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomId {
    /// `A × B ≃ B × A`
    ProdComm,
    /// `A × (B × C) ≃ (A × B) × C`
    ProdAssoc,
    /// `A → (B → C) ≃ (A × B) → C`
    Curry,
    /// `(A → B) ⅋ C ≃ A → (B ⅋ C)`
    ArrowPar,
    /// `(A × B) ⅋ C ≃ (A ⅋ C) × (B ⅋ C)`
    ProdPar,
    /// `A × ⊤ ≃ A`
    ProdTop,
    /// `∀X.⊤ ≃ ⊤`
    ForallTop,
    /// `⊤ → A ≃ A`
    TopArrow,
    /// `A → ⊤ ≃ ⊤`
    ArrowTop,
    /// `⊤ ⅋ A ≃ ⊤`
    TopPar,
    /// `⊥ ⅋ A ≃ A`
    BotPar,
    /// `∀X.∀Y.A ≃ ∀Y.∀X.A`
    ForallComm,
    /// `∀X.(A × B) ≃ (∀X.A) × (∀X.B)`
    ForallProd,
    /// `A ⅋ B ≃ B ⅋ A`
    ParComm,
    /// `A ⅋ (B ⅋ C) ≃ (A ⅋ B) ⅋ C`
    ParAssoc,
    /// `A ⅋ ∀X.B ≃ ∀X.(A ⅋ B)`, X not free in A
    ParForall,
    /// `A → (B × C) ≃ (A → B) × (A → C)`
    ArrowProd,
    /// `A → ∀X.B ≃ ∀X.(A → B)`, X not free in A
    ArrowForall,
}

impl AxiomId {
    /// The axioms of full λμ2.
    pub const LMU2: [AxiomId; 16] = [
        AxiomId::ProdComm,
        AxiomId::ProdAssoc,
        AxiomId::Curry,
        AxiomId::ArrowPar,
        AxiomId::ProdPar,
        AxiomId::ProdTop,
        AxiomId::ForallTop,
        AxiomId::TopArrow,
        AxiomId::ArrowTop,
        AxiomId::TopPar,
        AxiomId::BotPar,
        AxiomId::ForallComm,
        AxiomId::ForallProd,
        AxiomId::ParComm,
        AxiomId::ParAssoc,
        AxiomId::ParForall,
    ];

    /// The axioms of System F, also complete for λμ2′.
    pub const SYSTEM_F: [AxiomId; 11] = [
        AxiomId::ProdComm,
        AxiomId::ProdAssoc,
        AxiomId::Curry,
        AxiomId::ArrowProd,
        AxiomId::ProdTop,
        AxiomId::ForallTop,
        AxiomId::TopArrow,
        AxiomId::ArrowTop,
        AxiomId::ForallComm,
        AxiomId::ForallProd,
        AxiomId::ArrowForall,
    ];

    pub const ALL: [AxiomId; 18] = [
        AxiomId::ProdComm,
        AxiomId::ProdAssoc,
        AxiomId::Curry,
        AxiomId::ArrowPar,
        AxiomId::ProdPar,
        AxiomId::ProdTop,
        AxiomId::ForallTop,
        AxiomId::TopArrow,
        AxiomId::ArrowTop,
        AxiomId::TopPar,
        AxiomId::BotPar,
        AxiomId::ForallComm,
        AxiomId::ForallProd,
        AxiomId::ParComm,
        AxiomId::ParAssoc,
        AxiomId::ParForall,
        AxiomId::ArrowProd,
        AxiomId::ArrowForall,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxiomId::ProdComm => "prod-comm",
            AxiomId::ProdAssoc => "prod-assoc",
            AxiomId::Curry => "curry",
            AxiomId::ArrowPar => "arrow-par",
            AxiomId::ProdPar => "prod-par",
            AxiomId::ProdTop => "prod-top",
            AxiomId::ForallTop => "forall-top",
            AxiomId::TopArrow => "top-arrow",
            AxiomId::ArrowTop => "arrow-top",
            AxiomId::TopPar => "top-par",
            AxiomId::BotPar => "bot-par",
            AxiomId::ForallComm => "forall-comm",
            AxiomId::ForallProd => "forall-prod",
            AxiomId::ParComm => "par-comm",
            AxiomId::ParAssoc => "par-assoc",
            AxiomId::ParForall => "par-forall",
            AxiomId::ArrowProd => "arrow-prod",
            AxiomId::ArrowForall => "arrow-forall",
        }
    }

    /// ⅋ axioms need full λμ2; the two System F distributivity axioms are
    /// derivable there and accepted as well.
    pub fn allowed_in(self, mode: CalculusMode) -> bool {
        mode.allows_par() || AxiomId::SYSTEM_F.contains(&self)
    }

    /// Both sides at an instance.
    pub fn sides(self, inst: &Instantiation) -> (TypeExpr, TypeExpr) {
        let s = axiom_iso(self, inst);
        (s.a, s.b)
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AxiomId {
    type Err = String;

    fn from_str(s: &str) -> Result<AxiomId, String> {
        AxiomId::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown axiom {s}"))
    }
}

/// Values for the metavariables `A`, `B`, `C` and the names of the bound
/// variables `X`, `Y`. Axioms ignore the metavariables they do not use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instantiation {
    pub a: TypeExpr,
    pub b: TypeExpr,
    pub c: TypeExpr,
    pub x: Ident,
    pub y: Ident,
}

impl Instantiation {
    pub fn new(a: TypeExpr, b: TypeExpr, c: TypeExpr) -> Instantiation {
        Instantiation { a, b, c, x: Ident::new("X"), y: Ident::new("Y") }
    }

    pub fn with_binders(mut self, x: impl Into<Ident>, y: impl Into<Ident>) -> Instantiation {
        self.x = x.into();
        self.y = y.into();
        self
    }
}

fn v(x: &str) -> Term {
    Term::var(x)
}

fn app(f: Term, a: Term) -> Term {
    Term::app(f, a)
}

fn pi(i: u8, t: Term) -> Term {
    Term::proj(i, t)
}

/// The schema pair of an axiom, unchecked.
pub(crate) fn axiom_iso(id: AxiomId, inst: &Instantiation) -> Iso {
    use TypeExpr as T;
    let (a, b, c) = (inst.a.clone(), inst.b.clone(), inst.c.clone());
    let (x, y) = (inst.x, inst.y);
    let tx = T::Var(x);
    let (l, r, f, g) = match id {
        AxiomId::ProdComm => {
            let l = T::prod(a.clone(), b.clone());
            let r = T::prod(b, a);
            let swap = |ty: &T| Term::lam("p", ty.clone(), Term::pair(pi(2, v("p")), pi(1, v("p"))));
            let (f, g) = (swap(&l), swap(&r));
            (l, r, f, g)
        }
        AxiomId::ProdAssoc => {
            let l = T::prod(a.clone(), T::prod(b.clone(), c.clone()));
            let r = T::prod(T::prod(a, b), c);
            let f = Term::lam(
                "p",
                l.clone(),
                Term::pair(Term::pair(pi(1, v("p")), pi(1, pi(2, v("p")))), pi(2, pi(2, v("p")))),
            );
            let g = Term::lam(
                "q",
                r.clone(),
                Term::pair(pi(1, pi(1, v("q"))), Term::pair(pi(2, pi(1, v("q"))), pi(2, v("q")))),
            );
            (l, r, f, g)
        }
        AxiomId::Curry => {
            let l = T::arrow(a.clone(), T::arrow(b.clone(), c.clone()));
            let ab = T::prod(a.clone(), b.clone());
            let r = T::arrow(ab.clone(), c);
            let f = Term::lam(
                "f",
                l.clone(),
                Term::lam("p", ab, app(app(v("f"), pi(1, v("p"))), pi(2, v("p")))),
            );
            let g = Term::lam(
                "g",
                r.clone(),
                Term::lam("a", a, Term::lam("b", b, app(v("g"), Term::pair(v("a"), v("b"))))),
            );
            (l, r, f, g)
        }
        AxiomId::ArrowPar => {
            let ab = T::arrow(a.clone(), b.clone());
            let l = T::par(ab.clone(), c.clone());
            let r = T::arrow(a.clone(), T::par(b.clone(), c.clone()));
            // λp.λa.μ(β,γ).[β]((μδ.[δ,γ]p) a)
            let f = Term::lam(
                "p",
                l.clone(),
                Term::lam(
                    "a",
                    a.clone(),
                    Term::mu2(
                        "be",
                        b.clone(),
                        "ga",
                        c.clone(),
                        Term::name("be", app(Term::mu("de", ab.clone(), Term::name2("de", "ga", v("p"))), v("a"))),
                    ),
                ),
            );
            // λh.μ(δ,γ).[δ](λa.μβ.[β,γ](h a))
            let g = Term::lam(
                "h",
                r.clone(),
                Term::mu2(
                    "de",
                    ab,
                    "ga",
                    c,
                    Term::name(
                        "de",
                        Term::lam("a", a, Term::mu("be", b, Term::name2("be", "ga", app(v("h"), v("a"))))),
                    ),
                ),
            );
            (l, r, f, g)
        }
        AxiomId::ProdPar => {
            let ab = T::prod(a.clone(), b.clone());
            let l = T::par(ab.clone(), c.clone());
            let r = T::prod(T::par(a.clone(), c.clone()), T::par(b.clone(), c.clone()));
            let split = |i: u8| Term::proj(i, Term::mu("de", ab.clone(), Term::name2("de", "ga", v("p"))));
            let f = Term::lam(
                "p",
                l.clone(),
                Term::pair(
                    Term::mu2("al", a.clone(), "ga", c.clone(), Term::name("al", split(1))),
                    Term::mu2("be", b.clone(), "ga", c.clone(), Term::name("be", split(2))),
                ),
            );
            let g = Term::lam(
                "q",
                r.clone(),
                Term::mu2(
                    "de",
                    ab,
                    "ga",
                    c,
                    Term::name(
                        "de",
                        Term::pair(
                            Term::mu("al", a, Term::name2("al", "ga", pi(1, v("q")))),
                            Term::mu("be", b, Term::name2("be", "ga", pi(2, v("q")))),
                        ),
                    ),
                ),
            );
            (l, r, f, g)
        }
        AxiomId::ProdTop => {
            let l = T::prod(a.clone(), T::Top);
            let f = Term::lam("p", l.clone(), pi(1, v("p")));
            let g = Term::lam("a", a.clone(), Term::pair(v("a"), Term::Star));
            (l, a, f, g)
        }
        AxiomId::ForallTop => {
            let l = T::forall(x, T::Top);
            let f = Term::lam("p", l.clone(), Term::Star);
            let g = Term::lam("u", T::Top, Term::tlam(x, Term::Star));
            (l, T::Top, f, g)
        }
        AxiomId::TopArrow => {
            let l = T::arrow(T::Top, a.clone());
            let f = Term::lam("f", l.clone(), app(v("f"), Term::Star));
            let g = Term::lam("a", a.clone(), Term::lam("z", T::Top, v("a")));
            (l, a, f, g)
        }
        AxiomId::ArrowTop => {
            let l = T::arrow(a.clone(), T::Top);
            let f = Term::lam("f", l.clone(), Term::Star);
            let g = Term::lam("u", T::Top, Term::lam("a", a, Term::Star));
            (l, T::Top, f, g)
        }
        AxiomId::TopPar => {
            let l = T::par(T::Top, a.clone());
            let f = Term::lam("p", l.clone(), Term::Star);
            let g = Term::lam("u", T::Top, Term::mu2("al", T::Top, "be", a, Term::name("al", Term::Star)));
            (l, T::Top, f, g)
        }
        AxiomId::BotPar => {
            let l = T::par(T::Bot, a.clone());
            let f = Term::lam("p", l.clone(), Term::mu("be", a.clone(), Term::mu("de", T::Bot, Term::name2("de", "be", v("p")))));
            let g = Term::lam("a", a.clone(), Term::mu2("de", T::Bot, "be", a.clone(), Term::name("be", v("a"))));
            (l, a, f, g)
        }
        AxiomId::ForallComm => {
            let l = T::forall(x, T::forall(y, a.clone()));
            let r = T::forall(y, T::forall(x, a));
            let f = Term::lam("p", l.clone(), Term::tlam(y, Term::tlam(x, Term::tapp(Term::tapp(v("p"), tx.clone()), T::Var(y)))));
            let g = Term::lam("q", r.clone(), Term::tlam(x, Term::tlam(y, Term::tapp(Term::tapp(v("q"), T::Var(y)), tx))));
            (l, r, f, g)
        }
        AxiomId::ForallProd => {
            let l = T::forall(x, T::prod(a.clone(), b.clone()));
            let r = T::prod(T::forall(x, a), T::forall(x, b));
            let f = Term::lam(
                "p",
                l.clone(),
                Term::pair(
                    Term::tlam(x, pi(1, Term::tapp(v("p"), tx.clone()))),
                    Term::tlam(x, pi(2, Term::tapp(v("p"), tx.clone()))),
                ),
            );
            let g = Term::lam(
                "q",
                r.clone(),
                Term::tlam(
                    x,
                    Term::pair(Term::tapp(pi(1, v("q")), tx.clone()), Term::tapp(pi(2, v("q")), tx)),
                ),
            );
            (l, r, f, g)
        }
        AxiomId::ParComm => {
            let l = T::par(a.clone(), b.clone());
            let r = T::par(b.clone(), a.clone());
            let f = Term::lam("p", l.clone(), Term::mu2("be", b.clone(), "al", a.clone(), Term::name2("al", "be", v("p"))));
            let g = Term::lam("p", r.clone(), Term::mu2("al", a, "be", b, Term::name2("be", "al", v("p"))));
            (l, r, f, g)
        }
        AxiomId::ParAssoc => {
            let bc = T::par(b.clone(), c.clone());
            let ab = T::par(a.clone(), b.clone());
            let l = T::par(a.clone(), bc.clone());
            let r = T::par(ab.clone(), c.clone());
            // λx.μ(α₂,β₁).[α₂]μ(α₀,α₁).[α₁,β₁]μβ₀.[α₀,β₀]x
            let f = Term::lam(
                "x",
                l.clone(),
                Term::mu2(
                    "a2",
                    ab.clone(),
                    "b1",
                    c.clone(),
                    Term::name(
                        "a2",
                        Term::mu2(
                            "a0",
                            a.clone(),
                            "a1",
                            b.clone(),
                            Term::name2("a1", "b1", Term::mu("b0", bc.clone(), Term::name2("a0", "b0", v("x")))),
                        ),
                    ),
                ),
            );
            // λx.μ(α₁,α₂).[α₂]μ(β₁,β₀).[α₁,β₁]μα₀.[α₀,β₀]x
            let g = Term::lam(
                "x",
                r.clone(),
                Term::mu2(
                    "a1",
                    a,
                    "a2",
                    bc,
                    Term::name(
                        "a2",
                        Term::mu2(
                            "b1",
                            b,
                            "b0",
                            c,
                            Term::name2("a1", "b1", Term::mu("a0", ab, Term::name2("a0", "b0", v("x")))),
                        ),
                    ),
                ),
            );
            (l, r, f, g)
        }
        AxiomId::ParForall => {
            let xb = T::forall(x, b.clone());
            let l = T::par(a.clone(), xb.clone());
            let r = T::forall(x, T::par(a.clone(), b.clone()));
            // λp.ΛX.μ(α,β).[β]((μγ.[α,γ]p){X})
            let f = Term::lam(
                "p",
                l.clone(),
                Term::tlam(
                    x,
                    Term::mu2(
                        "al",
                        a.clone(),
                        "be",
                        b.clone(),
                        Term::name("be", Term::tapp(Term::mu("ga", xb.clone(), Term::name2("al", "ga", v("p"))), tx.clone())),
                    ),
                ),
            );
            // λq.μ(α,γ).[γ]ΛX.μβ.[α,β](q{X})
            let g = Term::lam(
                "q",
                r.clone(),
                Term::mu2(
                    "al",
                    a,
                    "ga",
                    xb,
                    Term::name("ga", Term::tlam(x, Term::mu("be", b, Term::name2("al", "be", Term::tapp(v("q"), tx))))),
                ),
            );
            (l, r, f, g)
        }
        AxiomId::ArrowProd => {
            let l = T::arrow(a.clone(), T::prod(b.clone(), c.clone()));
            let r = T::prod(T::arrow(a.clone(), b), T::arrow(a.clone(), c));
            let f = Term::lam(
                "f",
                l.clone(),
                Term::pair(
                    Term::lam("a", a.clone(), pi(1, app(v("f"), v("a")))),
                    Term::lam("a", a.clone(), pi(2, app(v("f"), v("a")))),
                ),
            );
            let g = Term::lam(
                "q",
                r.clone(),
                Term::lam("a", a, Term::pair(app(pi(1, v("q")), v("a")), app(pi(2, v("q")), v("a")))),
            );
            (l, r, f, g)
        }
        AxiomId::ArrowForall => {
            let l = T::arrow(a.clone(), T::forall(x, b.clone()));
            let r = T::forall(x, T::arrow(a.clone(), b));
            let f = Term::lam(
                "f",
                l.clone(),
                Term::tlam(x, Term::lam("a", a.clone(), Term::tapp(app(v("f"), v("a")), tx.clone()))),
            );
            let g = Term::lam(
                "g",
                r.clone(),
                Term::lam("a", a, Term::tlam(x, app(Term::tapp(v("g"), tx), v("a")))),
            );
            (l, r, f, g)
        }
    };
    Iso { a: l, b: r, fwd: Some(f), bwd: Some(g) }
}
