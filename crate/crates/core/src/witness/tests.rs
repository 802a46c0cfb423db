use proptest::prelude::*;
use rand::{rngs::StdRng, SeedableRng};

use super::*;
use crate::canon::{apply_rule, RewriteStep, RuleId};
use crate::lambdamu::{parse_term, VerifyStatus};
use crate::testutil::{scramble, type_strategy};
use crate::types::parse_type_unchecked as p;

const M: CalculusMode = CalculusMode::LmuTwo;
const F: CalculusMode = CalculusMode::SystemF;
const FUEL: usize = 10_000;

fn same(a: &Term, b: &str) -> bool {
    crate::lambdamu::verify::alpha_eq_term(a, &parse_term(b).unwrap())
}

fn at(a: &str, b: &str, c: &str) -> Instantiation {
    Instantiation::new(p(a).unwrap(), p(b).unwrap(), p(c).unwrap())
}

#[test]
fn listed_axiom_pairs() {
    let w = axiom_witness(AxiomId::ProdComm, &at("_|_", "_|_", "T"), M).unwrap();
    assert!(same(&w.forward, "lam x : _|_ * _|_. (pi2 x, pi1 x)"));
    assert!(same(&w.backward, "lam x : _|_ * _|_. (pi2 x, pi1 x)"));

    let w = axiom_witness(AxiomId::TopArrow, &at("_|_", "T", "T"), M).unwrap();
    assert!(same(&w.forward, "lam x : T -> _|_. x *"));
    assert!(same(&w.backward, "lam y : _|_. lam z : T. y"));

    // the associativity pair, with the second term's stray superscript read
    // as the subscript it stands for
    let w = axiom_witness(AxiomId::ParAssoc, &at("_|_", "_|_", "_|_"), M).unwrap();
    assert!(same(
        &w.forward,
        "lam x : _|_ /\\ (_|_ /\\ _|_). mu (a2 : _|_ /\\ _|_, b1 : _|_). [a2] mu (a0 : _|_, a1 : _|_). [a1, b1] mu b0 : _|_ /\\ _|_. [a0, b0] x"
    ));
    assert!(same(
        &w.backward,
        "lam x : (_|_ /\\ _|_) /\\ _|_. mu (a1 : _|_, a2 : _|_ /\\ _|_). [a2] mu (b1 : _|_, b0 : _|_). [a1, b1] mu a0 : _|_ /\\ _|_. [a0, b0] x"
    ));
}

#[test]
fn axioms_respect_modes() {
    let e = axiom_witness(AxiomId::ParComm, &at("X", "Y", "T"), F).unwrap_err();
    assert!(matches!(e, Error::ForbiddenInMode { .. }), "{e}");
    assert!(axiom_witness(AxiomId::ArrowProd, &at("X", "Y", "Z"), M).is_ok());
    assert_eq!(AxiomId::LMU2.len(), 16);
    assert_eq!(AxiomId::SYSTEM_F.len(), 11);
    for a in AxiomId::ALL {
        assert_eq!(a.name().parse::<AxiomId>().unwrap(), a);
    }
}

#[test]
fn axiom_sides_are_isomorphic() {
    let inst = at("X -> Y", "Z * X", "Y").with_binders("U", "V");
    for id in AxiomId::ALL {
        let (l, r) = id.sides(&inst);
        assert!(decide_iso(&l, &r, M).unwrap().isomorphic, "{id}");
    }
}

#[test]
fn system_f_axioms_verify() {
    for inst in [at("X", "Y", "Z"), at("X -> Y", "forall W. W", "T"), at("Y * Y", "X", "X -> X")] {
        let inst = inst.with_binders("U", "V");
        for id in AxiomId::SYSTEM_F {
            let w = axiom_witness(id, &inst, F).unwrap();
            let r = w.verify(FUEL);
            assert_eq!(r.status, VerifyStatus::Verified, "{id}: {}", r.detail);
        }
    }
}

#[test]
fn control_axioms_never_fail_verification() {
    let inst = at("X", "Y", "Z").with_binders("U", "V");
    for id in AxiomId::LMU2 {
        let w = axiom_witness(id, &inst, M).unwrap();
        let r = w.verify(FUEL);
        assert_ne!(r.status, VerifyStatus::Failed, "{id}: {}", r.detail);
    }
}

#[test]
fn trivial_compositions() {
    let a = p("X -> Y").unwrap();
    let m = Matching::identity(&a).unwrap();
    let empty = RewriteTrace::default();
    let w = compose_witnesses(&empty, &m, &empty, &a, &a, F).unwrap();
    assert!(same(&w.forward, "lam x : X -> Y. x"));
    assert!(same(&w.backward, "lam x : X -> Y. x"));

    let t = p("T -> _|_").unwrap();
    let (nf, trace) = normalize_type(&t, M);
    assert_eq!(trace.len(), 1);
    let w = compose_witnesses(&trace, &Matching::identity(&nf).unwrap(), &empty, &t, &nf, M).unwrap();
    let ax = axiom_witness(AxiomId::TopArrow, &at("_|_", "T", "T"), M).unwrap();
    assert_eq!(w, ax);
}

#[test]
fn commuted_product_verifies() {
    let w = witness_for_iso(&p("A * B").unwrap(), &p("B * A").unwrap(), F).unwrap().unwrap();
    assert_eq!(w.verify(FUEL).status, VerifyStatus::Verified);
}

#[test]
fn listed_witnesses() {
    assert!(witness_for_iso(&p("forall X. _|_").unwrap(), &p("forall X Y. _|_").unwrap(), M)
        .unwrap()
        .is_none());
    let a = p("X * (Y -> X)").unwrap();
    let w = witness_for_iso(&a, &a, M).unwrap().unwrap();
    assert!(same(&w.forward, "lam x : X * (Y -> X). x"));
    let (l, r) = (
        p("forall X Y. ((forall Z. _|_ * Z -> X) * (forall U. U)) -> _|_").unwrap(),
        p("(forall X. X) -> (forall Y. (forall Z. _|_ -> Z -> Y) -> (forall U. _|_))").unwrap(),
    );
    let w = witness_for_iso(&l, &r, M).unwrap().unwrap();
    assert_eq!((w.source.clone(), w.target.clone()), (l, r));
}

#[test]
fn matching_permutes_tails_and_binders() {
    for (a, b) in [
        ("X /\\ Y /\\ Z", "Z /\\ (X /\\ Y)"),
        ("forall X Y. X -> Y -> Y /\\ X", "forall Y X. Y * X -> X /\\ Y"),
        ("X /\\ X /\\ Y", "Y /\\ X /\\ X"),
        ("(forall X. X -> Z) * Y", "Y * (forall W. W -> Z)"),
    ] {
        let (a, b) = (p(a).unwrap(), p(b).unwrap());
        let w = witness_for_iso(&a, &b, M).unwrap().expect("isomorphic");
        assert_ne!(w.verify(FUEL).status, VerifyStatus::Failed);
    }
}

#[test]
fn reused_binder_names_are_separated() {
    // the rewrite freshens ∀X to a name that is free elsewhere
    let a = p("X1 * (X -> forall X. X -> X1)").unwrap();
    let b = p("(forall Y. X * Y -> X1) * X1").unwrap();
    let w = witness_for_iso(&a, &b, F).unwrap().expect("isomorphic");
    assert_eq!(w.verify(FUEL).status, VerifyStatus::Verified);
}

fn rule_instance(rule: RuleId, a: TypeExpr, b: TypeExpr, c: TypeExpr) -> TypeExpr {
    use TypeExpr as T;
    match rule {
        RuleId::TopPar => T::par(T::Top, a),
        RuleId::ParTop => T::par(a, T::Top),
        RuleId::BotPar => T::par(T::Bot, a),
        RuleId::ParBot => T::par(a, T::Bot),
        RuleId::ProdTop => T::prod(a, T::Top),
        RuleId::TopProd => T::prod(T::Top, a),
        RuleId::ArrowTop => T::arrow(a, T::Top),
        RuleId::TopArrow => T::arrow(T::Top, a),
        RuleId::ForallTop => T::forall("X", T::Top),
        RuleId::ProdPar => T::par(T::prod(a, b), c),
        RuleId::ParProd => T::par(a, T::prod(b, c)),
        RuleId::ArrowPar => T::par(T::arrow(a, b), c),
        RuleId::ParArrow => T::par(a, T::arrow(b, c)),
        RuleId::ForallPar => T::par(T::forall("X", a), b),
        RuleId::ParForall => T::par(a, T::forall("X", b)),
        RuleId::ArrowProd => T::arrow(a, T::prod(b, c)),
        RuleId::Curry => T::arrow(a, T::arrow(b, c)),
        RuleId::ForallProd => T::forall("X", T::prod(a, b)),
        RuleId::ArrowForall => T::arrow(a, T::forall("X", b)),
    }
}

fn scrambled(t: &TypeExpr, seed: u64) -> TypeExpr {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..3).fold(t.clone(), |acc, _| scramble(&acc, &mut rng))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn every_rule_step_typechecks(
        rule in prop::sample::select(RuleId::ALL.to_vec()),
        a in type_strategy(M, 2),
        b in type_strategy(M, 2),
        c in type_strategy(M, 2),
    ) {
        let before = rule_instance(rule, a, b, c);
        let after = apply_rule(rule, &before).unwrap();
        let step = RewriteStep { rule, path: vec![], before: before.clone(), after: after.clone() };
        let iso = lift::rule_iso(&step).unwrap();
        let w = iso.into_pair(M).unwrap();
        prop_assert!(alpha_eq(&w.source, &before) && alpha_eq(&w.target, &after));
    }

    #[test]
    fn witnesses_exist_exactly_for_isomorphic_pairs(a in type_strategy(M, 3), b in type_strategy(M, 3)) {
        let v = decide_iso(&a, &b, M).unwrap();
        let w = witness_for_iso(&a, &b, M).unwrap();
        prop_assert_eq!(v.isomorphic, w.is_some());
    }
}

// witnesses for scrambled types run to a thousand nodes, so fewer cases
proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn scrambled_pairs_get_typed_witnesses(t in type_strategy(M, 4), seed in any::<u64>()) {
        let u = scrambled(&t, seed);
        let w = witness_for_iso(&t, &u, M).unwrap().expect("scrambling preserves isomorphism");
        prop_assert_ne!(w.verify(500).status, VerifyStatus::Failed);
    }

    #[test]
    fn system_f_witnesses_verify(t in type_strategy(F, 3), seed in any::<u64>()) {
        let u = scrambled(&t, seed);
        let w = witness_for_iso(&t, &u, F).unwrap().expect("scrambling preserves isomorphism");
        let r = w.verify(FUEL);
        prop_assert_eq!(r.status, VerifyStatus::Verified, "{} vs {}: {}", t, u, r.detail);
    }
}
