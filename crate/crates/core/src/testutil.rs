//! Generators shared by unit tests.

use proptest::prelude::*;

use crate::types::{CalculusMode, TypeExpr};

/// Types over the variables `X`, `Y`, `Z`, restricted to `mode`.
pub fn type_strategy(mode: CalculusMode, depth: u32) -> impl Strategy<Value = TypeExpr> {
    let mut leaves = vec![Just(TypeExpr::Top).boxed(), prop::sample::select(vec!["X", "Y", "Z"]).prop_map(TypeExpr::var).boxed()];
    if mode.allows_bot() {
        leaves.push(Just(TypeExpr::Bot).boxed());
    }
    let leaf = prop::strategy::Union::new(leaves);
    leaf.prop_recursive(depth, 20, 2, move |inner| {
        let mut opts = vec![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| TypeExpr::prod(a, b)).boxed(),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| TypeExpr::arrow(a, b)).boxed(),
            (prop::sample::select(vec!["X", "Y", "Z"]), inner.clone())
                .prop_map(|(v, a)| TypeExpr::forall(v, a))
                .boxed(),
        ];
        if mode.allows_par() {
            opts.push((inner.clone(), inner).prop_map(|(a, b)| TypeExpr::par(a, b)).boxed());
        }
        prop::strategy::Union::new(opts)
    })
}

/// Rewrites `t` at random positions with isomorphisms valid in every mode:
/// commuting `×` and `⅋`, (un)currying, swapping and renaming binders,
/// pulling `∀` out of a codomain, splitting `A → B×C`, and adding `×⊤`.
pub fn scramble(t: &TypeExpr, rng: &mut impl rand::Rng) -> TypeExpr {
    use std::sync::Arc;
    use TypeExpr as T;
    let t = match t {
        T::Prod(a, b) => T::prod(scramble(a, rng), scramble(b, rng)),
        T::Arrow(a, b) => T::arrow(scramble(a, rng), scramble(b, rng)),
        T::Par(a, b) => T::par(scramble(a, rng), scramble(b, rng)),
        T::Forall(x, b) => T::Forall(*x, Arc::new(scramble(b, rng))),
        _ => t.clone(),
    };
    let fresh = |avoid: &[&TypeExpr]| {
        let taken: std::collections::BTreeSet<_> =
            avoid.iter().flat_map(|a| crate::types::free_type_vars(a)).collect();
        crate::ident::Ident::new("W").fresh(|i| taken.contains(&i))
    };
    let mut options: Vec<TypeExpr> = Vec::new();
    match &t {
        T::Prod(a, b) => options.push(T::Prod(b.clone(), a.clone())),
        T::Par(a, b) => options.push(T::Par(b.clone(), a.clone())),
        _ => {}
    }
    if let T::Arrow(a, r) = &t {
        match &**r {
            T::Arrow(b, c) => options.push(T::arrow(T::Prod(a.clone(), b.clone()), (**c).clone())),
            T::Prod(b, c) => options.push(T::Prod(
                Arc::new(T::Arrow(a.clone(), b.clone())),
                Arc::new(T::Arrow(a.clone(), c.clone())),
            )),
            T::Forall(x, b) => {
                let y = fresh(&[a, r]);
                let b = crate::types::subst_type(b, &T::Var(y), *x);
                options.push(T::forall(y, T::Arrow(a.clone(), Arc::new(b))));
            }
            _ => {}
        }
        if let T::Prod(a1, a2) = &**a {
            options.push(T::Arrow(a1.clone(), Arc::new(T::Arrow(a2.clone(), r.clone()))));
        }
    }
    if let T::Forall(x, b) = &t {
        let y = fresh(&[&t]);
        options.push(T::forall(y, crate::types::subst_type(b, &T::Var(y), *x)));
        if let T::Forall(z, c) = &**b {
            if z != x {
                options.push(T::Forall(*z, Arc::new(T::Forall(*x, c.clone()))));
            }
        }
    }
    options.push(T::prod(t.clone(), T::Top));
    if rng.gen_bool(0.5) {
        let k = rng.gen_range(0..options.len());
        options.swap_remove(k)
    } else {
        t
    }
}
