//! Arenas: forests of named nodes built from formulas, and the decorated
//! hyperforests read off them.

mod build;
mod dump;
mod formula;
mod node;
mod reconstruct;

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ident::Ident;
use crate::types::TypeExpr;

pub use build::build_arena;
pub use dump::{hyperforest_to_dot, hyperforest_to_json};
pub use formula::{alpharho_eq, formula_alpha_eq, rho_normalize, type_to_formula, Formula};
pub use node::{Name, NodeName};

use build::build_tracked;
use reconstruct::{reconstruct, Forest};

/// A finite forest of named nodes. Parents are listed before children.
/// Equality compares the set of names and the parent relation.
#[derive(Clone, Default)]
pub struct Arena {
    names: Vec<Name>,
    parent: Vec<Option<usize>>,
}

impl Arena {
    /// Builds from `(name, parent index)` pairs.
    pub fn from_nodes(nodes: Vec<(Name, Option<usize>)>) -> Result<Arena> {
        let mut a = Arena::default();
        let mut seen = std::collections::HashSet::new();
        for (i, (n, p)) in nodes.into_iter().enumerate() {
            if p.is_some_and(|p| p >= i) {
                return Err(Error::MalformedArena(format!("parent of node {i} is not listed before it")));
            }
            if !seen.insert(n.clone()) {
                return Err(Error::MalformedArena(format!("duplicate node {n}")));
            }
            a.names.push(n);
            a.parent.push(p);
        }
        Ok(a)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[Name] {
        &self.names
    }

    pub fn parent(&self, i: usize) -> Option<usize> {
        self.parent[i]
    }

    pub fn roots(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.parent[i].is_none()).collect()
    }

    pub fn depth(&self, mut i: usize) -> u32 {
        let mut d = 0;
        while let Some(p) = self.parent[i] {
            d += 1;
            i = p;
        }
        d
    }

    fn edges(&self) -> HashMap<&Name, Option<&Name>> {
        (0..self.len())
            .map(|i| (&self.names[i], self.parent[i].map(|p| &self.names[p])))
            .collect()
    }
}

impl PartialEq for Arena {
    fn eq(&self, other: &Arena) -> bool {
        self.len() == other.len() && self.edges() == other.edges()
    }
}

impl Eq for Arena {}

impl fmt::Debug for Arena {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for i in 0..self.len() {
            m.entry(&self.names[i], &self.parent[i].map(|p| &self.names[p]));
        }
        m.finish()
    }
}

pub fn type_arena(t: &TypeExpr) -> Arena {
    build_arena(&type_to_formula(t))
}

/// Recovers a formula whose arena is exactly `a`.
pub fn arena_to_formula(a: &Arena) -> Result<Formula> {
    let f = reconstruct(&Forest { names: a.names.clone(), parent: a.parent.clone() })?;
    if build_arena(&f) != *a {
        return Err(Error::MalformedArena("node names do not determine a formula".into()));
    }
    Ok(f)
}

/// `a[b/x]`, computed through formulas.
pub fn arena_subst(a: &Arena, b: &Arena, x: Ident) -> Result<Arena> {
    let f = arena_to_formula(a)?;
    let g = arena_to_formula(b)?;
    Ok(build_arena(&f.subst(&g, x)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HNode {
    pub name: Name,
    pub parent: Option<usize>,
    /// Free variables published by the node, sorted, with multiplicity.
    pub decorations: Vec<Ident>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperedge {
    pub target: usize,
    /// Sorted, with multiplicity.
    pub sources: Vec<usize>,
}

/// An arena with its hyperedges and decorations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Hyperforest {
    pub nodes: Vec<HNode>,
    pub edges: Vec<Hyperedge>,
}

impl Hyperforest {
    pub fn of_formula(f: &Formula) -> Hyperforest {
        let t = build_tracked(f);
        let map: Vec<usize> = (0..t.names.len()).collect();
        assemble(&t.names, &t.parent, &t.edges, &map)
    }

    pub fn of_type(t: &TypeExpr) -> Hyperforest {
        Hyperforest::of_formula(&type_to_formula(t))
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn roots(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.nodes[i].parent.is_none()).collect()
    }

    pub fn children(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.nodes[j].parent == Some(i)).collect()
    }

    /// Hyperedges grouped by target.
    pub fn edges_at(&self, target: usize) -> Vec<&Hyperedge> {
        self.edges.iter().filter(|e| e.target == target).collect()
    }

    pub fn arena(&self) -> Arena {
        Arena {
            names: self.nodes.iter().map(|n| n.name.clone()).collect(),
            parent: self.nodes.iter().map(|n| n.parent).collect(),
        }
    }

    pub fn depth(&self, mut i: usize) -> u32 {
        let mut d = 0;
        while let Some(p) = self.nodes[i].parent {
            d += 1;
            i = p;
        }
        d
    }

    /// `a ≤ b`: `a` is an ancestor of `b` or `b` itself.
    pub fn is_ancestor(&self, a: usize, mut b: usize) -> bool {
        loop {
            if a == b {
                return true;
            }
            match self.nodes[b].parent {
                Some(p) => b = p,
                None => return false,
            }
        }
    }
}

fn assemble(names: &[Name], parent: &[Option<usize>], edges: &[(usize, Vec<usize>)], map: &[usize]) -> Hyperforest {
    let mut nodes: Vec<Option<HNode>> = vec![None; names.len()];
    for i in 0..names.len() {
        let mut decorations = names[i].decorations();
        decorations.sort();
        nodes[map[i]] = Some(HNode {
            name: names[i].clone(),
            parent: parent[i].map(|p| map[p]),
            decorations,
        });
    }
    let mut edges: Vec<Hyperedge> = edges
        .iter()
        .map(|(t, s)| {
            let mut sources: Vec<usize> = s.iter().map(|&x| map[x]).collect();
            sources.sort();
            Hyperedge { target: map[*t], sources }
        })
        .collect();
    edges.sort();
    Hyperforest { nodes: nodes.into_iter().map(Option::unwrap).collect(), edges }
}

/// Attaches hyperedges and decorations to an arena, keeping its node order.
pub fn extract_hyperforest(a: &Arena) -> Result<Hyperforest> {
    let f = arena_to_formula(a)?;
    let t = build_tracked(&f);
    let index: HashMap<&Name, usize> = a.names.iter().enumerate().map(|(i, n)| (n, i)).collect();
    let map = t
        .names
        .iter()
        .map(|n| index.get(n).copied())
        .collect::<Option<Vec<usize>>>()
        .ok_or_else(|| Error::Internal("rebuilt arena has unknown nodes".into()))?;
    Ok(assemble(&t.names, &t.parent, &t.edges, &map))
}

#[cfg(test)]
mod tests;
