//! Generators shared by the integration tests. Everything is driven by a
//! seeded rng so failures replay.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use typeiso::arena::Formula;
use typeiso::types::{free_type_vars, subst_type};
use typeiso::{CalculusMode, Ident, TypeExpr};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub const VARS: [&str; 3] = ["X", "Y", "Z"];

/// A random type of depth at most `depth` over [`VARS`].
pub fn random_type(rng: &mut StdRng, mode: CalculusMode, depth: u32) -> TypeExpr {
    if depth <= 1 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..5) {
            0 => TypeExpr::Top,
            1 if mode.allows_bot() => TypeExpr::Bot,
            _ => TypeExpr::var(VARS[rng.gen_range(0..VARS.len())]),
        };
    }
    let d = depth - 1;
    let kinds = if mode.allows_par() { 4 } else { 3 };
    match rng.gen_range(0..kinds) {
        0 => TypeExpr::prod(random_type(rng, mode, d), random_type(rng, mode, d)),
        1 => TypeExpr::arrow(random_type(rng, mode, d), random_type(rng, mode, d)),
        2 => TypeExpr::forall(VARS[rng.gen_range(0..VARS.len())], random_type(rng, mode, d)),
        _ => TypeExpr::par(random_type(rng, mode, d), random_type(rng, mode, d)),
    }
}

pub fn random_formula(rng: &mut StdRng, depth: u32) -> Formula {
    if depth <= 1 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..5) {
            0 => Formula::Top,
            1 => Formula::Bot,
            _ => Formula::var(VARS[rng.gen_range(0..VARS.len())]),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..4) {
        0 => Formula::neg(random_formula(rng, d)),
        1 => Formula::par(random_formula(rng, d), random_formula(rng, d)),
        2 => Formula::prod(random_formula(rng, d), random_formula(rng, d)),
        _ => Formula::forall(VARS[rng.gen_range(0..VARS.len())], random_formula(rng, d)),
    }
}

fn fresh(avoid: &[&TypeExpr]) -> Ident {
    let taken: BTreeSet<Ident> = avoid.iter().flat_map(|t| free_type_vars(t)).collect();
    Ident::new("V").fresh(|i| taken.contains(&i))
}

/// Every way of applying one axiom, in either direction, at the root.
/// Only axioms of `mode` are used.
pub fn axiom_moves(t: &TypeExpr, mode: CalculusMode) -> Vec<TypeExpr> {
    use TypeExpr as T;
    let mut out = Vec::new();
    // introductions that fit anywhere
    out.push(T::prod(t.clone(), T::Top));
    out.push(T::arrow(T::Top, t.clone()));
    if mode.allows_par() {
        out.push(T::par(T::Bot, t.clone()));
    }
    match t {
        T::Prod(a, b) => {
            out.push(T::prod((**b).clone(), (**a).clone()));
            if let T::Prod(b1, b2) = &**b {
                out.push(T::prod(T::prod((**a).clone(), (**b1).clone()), (**b2).clone()));
            }
            if let T::Prod(a1, a2) = &**a {
                out.push(T::prod((**a1).clone(), T::prod((**a2).clone(), (**b).clone())));
            }
            if **b == T::Top {
                out.push((**a).clone());
            }
            if let (T::Arrow(a1, b1), T::Arrow(a2, c)) = (&**a, &**b) {
                if a1 == a2 {
                    out.push(T::arrow((**a1).clone(), T::prod((**b1).clone(), (**c).clone())));
                }
            }
            if let (T::Forall(x, a1), T::Forall(y, b1)) = (&**a, &**b) {
                if x == y {
                    out.push(T::forall(*x, T::prod((**a1).clone(), (**b1).clone())));
                }
            }
            if mode.allows_par() {
                if let (T::Par(a1, c1), T::Par(b1, c2)) = (&**a, &**b) {
                    if c1 == c2 {
                        out.push(T::par(T::prod((**a1).clone(), (**b1).clone()), (**c1).clone()));
                    }
                }
            }
        }
        T::Arrow(a, r) => {
            if **a == T::Top {
                out.push((**r).clone());
            }
            if **r == T::Top {
                out.push(T::Top);
            }
            match &**r {
                T::Arrow(b, c) => out.push(T::arrow(T::prod((**a).clone(), (**b).clone()), (**c).clone())),
                T::Prod(b, c) => out.push(T::prod(
                    T::arrow((**a).clone(), (**b).clone()),
                    T::arrow((**a).clone(), (**c).clone()),
                )),
                T::Forall(x, b) => {
                    let y = fresh(&[a, r]);
                    out.push(T::forall(y, T::arrow((**a).clone(), subst_type(b, &T::Var(y), *x))));
                }
                T::Par(b, c) if mode.allows_par() => {
                    out.push(T::par(T::arrow((**a).clone(), (**b).clone()), (**c).clone()))
                }
                _ => {}
            }
            if let T::Prod(a1, a2) = &**a {
                out.push(T::arrow((**a1).clone(), T::arrow((**a2).clone(), (**r).clone())));
            }
        }
        T::Forall(x, b) => {
            let y = fresh(&[t]);
            out.push(T::forall(y, subst_type(b, &T::Var(y), *x)));
            match &**b {
                T::Forall(z, c) if z != x => out.push(T::forall(*z, T::forall(*x, (**c).clone()))),
                T::Prod(c, d) => out.push(T::prod(T::forall(*x, (**c).clone()), T::forall(*x, (**d).clone()))),
                T::Top => out.push(T::Top),
                T::Arrow(c, d) if !free_type_vars(c).contains(x) => {
                    out.push(T::arrow((**c).clone(), T::forall(*x, (**d).clone())))
                }
                T::Par(c, d) if mode.allows_par() && !free_type_vars(c).contains(x) => {
                    out.push(T::par((**c).clone(), T::forall(*x, (**d).clone())))
                }
                _ => {}
            }
        }
        T::Par(a, b) => {
            out.push(T::par((**b).clone(), (**a).clone()));
            if let T::Par(b1, b2) = &**b {
                out.push(T::par(T::par((**a).clone(), (**b1).clone()), (**b2).clone()));
            }
            if let T::Par(a1, a2) = &**a {
                out.push(T::par((**a1).clone(), T::par((**a2).clone(), (**b).clone())));
            }
            if **a == T::Top {
                out.push(T::Top);
            }
            if **a == T::Bot {
                out.push((**b).clone());
            }
            match &**a {
                T::Arrow(a1, b1) => out.push(T::arrow((**a1).clone(), T::par((**b1).clone(), (**b).clone()))),
                T::Prod(a1, b1) => out.push(T::prod(
                    T::par((**a1).clone(), (**b).clone()),
                    T::par((**b1).clone(), (**b).clone()),
                )),
                _ => {}
            }
            if let T::Forall(x, b1) = &**b {
                let y = fresh(&[a, b]);
                out.push(T::forall(y, T::par((**a).clone(), subst_type(b1, &T::Var(y), *x))));
            }
        }
        T::Top if mode.allows_par() => out.push(T::par(T::Top, T::var("X"))),
        _ => {}
    }
    out
}

/// Applies one random axiom move at a random position.
pub fn axiom_step(t: &TypeExpr, mode: CalculusMode, rng: &mut StdRng) -> TypeExpr {
    let n = t.size();
    let target = rng.gen_range(0..n);
    fn go(t: &TypeExpr, mode: CalculusMode, rng: &mut StdRng, target: usize, seen: &mut usize) -> TypeExpr {
        if *seen == target {
            *seen += t.size();
            let moves = axiom_moves(t, mode);
            return moves[rng.gen_range(0..moves.len())].clone();
        }
        *seen += 1;
        match t {
            TypeExpr::Prod(a, b) => {
                let a = go(a, mode, rng, target, seen);
                TypeExpr::prod(a, go(b, mode, rng, target, seen))
            }
            TypeExpr::Arrow(a, b) => {
                let a = go(a, mode, rng, target, seen);
                TypeExpr::arrow(a, go(b, mode, rng, target, seen))
            }
            TypeExpr::Par(a, b) => {
                let a = go(a, mode, rng, target, seen);
                TypeExpr::par(a, go(b, mode, rng, target, seen))
            }
            TypeExpr::Forall(x, a) => TypeExpr::forall(*x, go(a, mode, rng, target, seen)),
            _ => t.clone(),
        }
    }
    go(t, mode, rng, target, &mut 0)
}

pub fn axiom_walk(t: &TypeExpr, mode: CalculusMode, rng: &mut StdRng, steps: usize) -> TypeExpr {
    (0..steps).fold(t.clone(), |acc, _| axiom_step(&acc, mode, rng))
}

/// Changes one leaf, which usually breaks isomorphism.
pub fn mutate(t: &TypeExpr, mode: CalculusMode, rng: &mut StdRng) -> TypeExpr {
    let n = t.size();
    let target = rng.gen_range(0..n);
    fn go(t: &TypeExpr, mode: CalculusMode, rng: &mut StdRng, target: usize, seen: &mut usize) -> TypeExpr {
        if *seen == target {
            *seen += t.size();
            return random_type(rng, mode, 2);
        }
        *seen += 1;
        match t {
            TypeExpr::Prod(a, b) => {
                let a = go(a, mode, rng, target, seen);
                TypeExpr::prod(a, go(b, mode, rng, target, seen))
            }
            TypeExpr::Arrow(a, b) => {
                let a = go(a, mode, rng, target, seen);
                TypeExpr::arrow(a, go(b, mode, rng, target, seen))
            }
            TypeExpr::Par(a, b) => {
                let a = go(a, mode, rng, target, seen);
                TypeExpr::par(a, go(b, mode, rng, target, seen))
            }
            TypeExpr::Forall(x, a) => TypeExpr::forall(*x, go(a, mode, rng, target, seen)),
            _ => t.clone(),
        }
    }
    go(t, mode, rng, target, &mut 0)
}
