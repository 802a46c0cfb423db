use std::collections::HashSet;

use proptest::prelude::*;

use super::*;

fn x(i: &str) -> Formula {
    Formula::var(i)
}

/// ∀X₃.(¬⊥ ⅋ X₃) ⅋ ∀X₃.(¬X₂ ⅋ X₃)
fn quantified_copies() -> Formula {
    Formula::par(
        Formula::forall("X3", Formula::par(Formula::neg(Formula::Bot), x("X3"))),
        Formula::forall("X3", Formula::par(Formula::neg(x("X2")), x("X3"))),
    )
}

fn printed(a: &Arena) -> Vec<String> {
    a.names().iter().map(|n| n.to_string()).collect()
}

#[test]
fn quantified_copies_node_names() {
    let a = build_arena(&quantified_copies());
    let names = printed(&a);
    let c1 = "∀(⋆⅋x^(0,⋆⅋⋆))⅋∀(⋆⅋x^(0,⋆⅋⋆))";
    let c2 = "((¬(⋆),x^(0,⋆⅋⋆),1),∀(⋆⅋x^(0,⋆⅋⋆)),1)";
    let c3 = "((¬(x_X2),x^(0,⋆⅋⋆),1),∀(⋆⅋x^(0,⋆⅋⋆)),2)";
    assert_eq!(names, vec![c1, c2, c3]);
    assert_eq!(a.roots(), vec![0]);
    assert_eq!(a.parent(1), Some(0));
    assert_eq!(a.parent(2), Some(0));
}

#[test]
fn quantified_copies_reconstruct() {
    let a = build_arena(&quantified_copies());
    let f = arena_to_formula(&a).unwrap();
    assert!(alpharho_eq(&f, &quantified_copies()), "{f}");
    assert_eq!(build_arena(&f), a);
}

#[test]
fn quantified_copies_hyperforest() {
    let h = extract_hyperforest(&build_arena(&quantified_copies())).unwrap();
    let root = Hyperedge { target: 0, sources: vec![0] };
    assert_eq!(h.edges, vec![root.clone(), root]);
    assert!(h.nodes[0].decorations.is_empty());
    assert!(h.nodes[1].decorations.is_empty());
    assert_eq!(h.nodes[2].decorations, vec![Ident::new("X2")]);
}

#[test]
fn substitution_into_copies() {
    let a = build_arena(&quantified_copies());
    let b = build_arena(&Formula::par(Formula::neg(x("X1")), x("X1")));
    let s = arena_subst(&a, &b, Ident::new("X2")).unwrap();
    let names: HashSet<String> = printed(&s).into_iter().collect();
    let tag = "∀(⋆⅋x^(0,⋆⅋⋆))";
    let expected: HashSet<String> = [
        format!("∀(⋆⅋x^(0,⋆⅋⋆))⅋{tag}"),
        format!("((¬(⋆),x^(0,⋆⅋⋆),1),{tag},1)"),
        format!("((¬(⋆⅋x_X1),x^(0,⋆⅋⋆),1),{tag},2)"),
        format!("((¬((¬(x_X1),x_X1,1)),x^(0,⋆⅋⋆),1),{tag},2)"),
    ]
    .into_iter()
    .collect();
    assert_eq!(names, expected);
    // d₄ hangs below d₃, which hangs below d₁
    let idx = |s3: &str| printed(&s).iter().position(|n| n.contains(s3)).unwrap();
    let d3 = idx("⋆⅋x_X1");
    let d4 = idx("(¬(x_X1),x_X1,1)");
    assert_eq!(s.parent(d4), Some(d3));
    assert_eq!(s.parent(d3), Some(0));
}

#[test]
fn small_cases() {
    assert!(build_arena(&Formula::Top).is_empty());
    assert_eq!(arena_to_formula(&Arena::default()).unwrap(), Formula::Top);
    let bot = build_arena(&Formula::Bot);
    assert_eq!(arena_to_formula(&bot).unwrap(), Formula::Bot);
    let h = extract_hyperforest(&bot).unwrap();
    assert!(h.edges.is_empty());
    assert!(h.nodes[0].decorations.is_empty());

    // ∀X.¬X: root ∀(⋆) with child ¬(x^(1,⋆)); the hyperedge points at the root
    let h = Hyperforest::of_formula(&Formula::forall("X", Formula::neg(x("X"))));
    assert_eq!(h.len(), 2);
    assert_eq!(h.nodes[1].name.to_string(), "¬(x^(1,⋆))");
    assert_eq!(h.edges, vec![Hyperedge { target: 0, sources: vec![1] }]);

    let s = arena_subst(&build_arena(&x("X")), &bot, Ident::new("X")).unwrap();
    assert_eq!(s, bot);
}

#[test]
fn malformed_arenas_are_rejected() {
    let bound = Name::new(NodeName::Bound(0, Name::new(NodeName::Star)));
    let a = Arena::from_nodes(vec![(bound, None)]).unwrap();
    assert!(matches!(arena_to_formula(&a), Err(Error::MalformedArena(_))));
    let two_vars = Arena::from_nodes(vec![
        (Name::new(NodeName::Free(Ident::new("X"))), None),
        (Name::new(NodeName::Free(Ident::new("Y"))), None),
    ])
    .unwrap();
    assert!(arena_to_formula(&two_vars).is_err());
}

#[test]
fn dumps() {
    let h = extract_hyperforest(&build_arena(&quantified_copies())).unwrap();
    let j = hyperforest_to_json(&h);
    assert_eq!(j["nodes"].as_array().unwrap().len(), 3);
    assert_eq!(j["hyperedges"][0]["sources"][0], 0);
    assert_eq!(j["nodes"][2]["decorations"][0], "X2");
    let dot = hyperforest_to_dot(&h);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("n0 -> n1 [dir=none]"));
    assert!(dot.contains("style=dashed"));
}

pub(crate) fn formula_strategy() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::Top),
        Just(Formula::Bot),
        prop::sample::select(vec!["X", "Y", "Z"]).prop_map(Formula::var),
    ];
    leaf.prop_recursive(5, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::neg),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::par(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::prod(a, b)),
            (prop::sample::select(vec!["X", "Y", "Z"]), inner).prop_map(|(v, a)| Formula::forall(v, a)),
        ]
    })
}

fn roots_and_nonroots(a: &Arena) -> (usize, usize) {
    let r = a.roots().len();
    (r, a.len() - r)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn round_trip(f in formula_strategy()) {
        let a = build_arena(&f);
        let g = arena_to_formula(&a).unwrap();
        prop_assert!(alpharho_eq(&g, &f), "{} vs {}", g, f);
        prop_assert_eq!(build_arena(&g), a);
    }

    #[test]
    fn names_are_distinct_and_depths_match(f in formula_strategy()) {
        let a = build_arena(&f);
        let set: HashSet<&Name> = a.names().iter().collect();
        prop_assert_eq!(set.len(), a.len());
        for i in 0..a.len() {
            prop_assert_eq!(a.names()[i].depth(), a.depth(i));
        }
    }

    #[test]
    fn hyperedge_sources_lie_below_targets(f in formula_strategy()) {
        let h = extract_hyperforest(&build_arena(&f)).unwrap();
        for e in &h.edges {
            for &s in &e.sources {
                prop_assert!(h.is_ancestor(e.target, s));
            }
        }
        prop_assert_eq!(h, Hyperforest::of_formula(&f));
    }

    #[test]
    fn par_node_count(a in formula_strategy(), b in formula_strategy()) {
        let (ea, eb) = (build_arena(&a), build_arena(&b));
        prop_assume!(!ea.is_empty() && !eb.is_empty());
        let (r1, n1) = roots_and_nonroots(&ea);
        let (r2, n2) = roots_and_nonroots(&eb);
        let p = build_arena(&Formula::par(a, b));
        prop_assert_eq!(p.len(), r1 * r2 + n1 * r2 + n2 * r1);
    }

    #[test]
    fn substitution_distributes(a in formula_strategy(), b in formula_strategy(), c in formula_strategy()) {
        let v = Ident::new("X");
        let lhs = build_arena(&Formula::par(a.clone(), b.clone()).subst(&c, v));
        let rhs = build_arena(&Formula::par(a.subst(&c, v), b.subst(&c, v)));
        prop_assert_eq!(lhs, rhs);
        let lhs = build_arena(&Formula::prod(a.clone(), b.clone()).subst(&c, v));
        let rhs = build_arena(&Formula::prod(a.subst(&c, v), b.subst(&c, v)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn arena_subst_matches_formula_subst(a in formula_strategy(), c in formula_strategy()) {
        let v = Ident::new("Y");
        let s = arena_subst(&build_arena(&a), &build_arena(&c), v).unwrap();
        prop_assert_eq!(s, build_arena(&a.subst(&c, v)));
    }

    #[test]
    fn rho_equal_formulas_share_arenas(f in formula_strategy()) {
        prop_assert_eq!(build_arena(&rho_normalize(&f)), build_arena(&f));
    }
}
