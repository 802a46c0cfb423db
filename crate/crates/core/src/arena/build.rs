use std::collections::HashMap;
use std::sync::Arc;

use super::formula::Formula;
use super::node::{Name, NodeName};
use super::Arena;
use crate::ident::Ident;

/// An arena together with the hyperedges its construction introduced.
/// Node `i`'s parent always has a smaller index.
#[derive(Clone, Debug, Default)]
pub(crate) struct Tracked {
    pub names: Vec<Name>,
    pub parent: Vec<Option<usize>>,
    /// `(target root, sources)`, sources with multiplicity.
    pub edges: Vec<(usize, Vec<usize>)>,
}

impl Tracked {
    fn leaf(name: NodeName) -> Tracked {
        Tracked {
            names: vec![Arc::new(name)],
            parent: vec![None],
            edges: Vec::new(),
        }
    }

    fn roots(&self) -> Vec<usize> {
        (0..self.names.len()).filter(|&i| self.parent[i].is_none()).collect()
    }

    fn root_of(&self) -> Vec<usize> {
        let mut r = vec![0; self.names.len()];
        for i in 0..self.names.len() {
            r[i] = match self.parent[i] {
                None => i,
                Some(p) => r[p],
            };
        }
        r
    }

    fn depths(&self) -> Vec<u32> {
        let mut d = vec![0; self.names.len()];
        for i in 0..self.names.len() {
            if let Some(p) = self.parent[i] {
                d[i] = d[p] + 1;
            }
        }
        d
    }

    pub fn into_arena(self) -> Arena {
        Arena {
            names: self.names,
            parent: self.parent,
        }
    }
}

pub(crate) fn build_tracked(f: &Formula) -> Tracked {
    match f {
        Formula::Top => Tracked::default(),
        Formula::Bot => Tracked::leaf(NodeName::Star),
        Formula::Var(x) => Tracked::leaf(NodeName::Free(*x)),
        Formula::Prod(a, b) => prod(build_tracked(a), build_tracked(b)),
        Formula::Neg(a) => neg(build_tracked(a)),
        Formula::Par(a, b) => par(build_tracked(a), build_tracked(b)),
        Formula::Forall(x, a) => forall(*x, build_tracked(a)),
    }
}

fn prod(a: Tracked, b: Tracked) -> Tracked {
    let off = a.names.len();
    let mut out = Tracked::default();
    for (side, t, shift) in [(1u8, &a, 0), (2u8, &b, off)] {
        for (i, n) in t.names.iter().enumerate() {
            out.names.push(Arc::new(NodeName::Inj(n.clone(), side)));
            out.parent.push(t.parent[i].map(|p| p + shift));
        }
        for (tgt, srcs) in &t.edges {
            out.edges.push((tgt + shift, srcs.iter().map(|s| s + shift).collect()));
        }
    }
    out
}

fn neg(a: Tracked) -> Tracked {
    let mut out = Tracked::leaf(NodeName::Star);
    for (i, n) in a.names.iter().enumerate() {
        out.names.push(Arc::new(NodeName::Neg(n.clone())));
        out.parent.push(Some(a.parent[i].map_or(0, |p| p + 1)));
    }
    for (tgt, srcs) in &a.edges {
        out.edges.push((tgt + 1, srcs.iter().map(|s| s + 1).collect()));
    }
    out
}

fn par(a: Tracked, b: Tracked) -> Tracked {
    let mut out = Tracked::default();
    if a.names.is_empty() || b.names.is_empty() {
        return out;
    }
    let (ra, rb) = (a.roots(), b.roots());
    // index of the copy of (node of a, root of b) and (node of b, root of a)
    let mut map_a: HashMap<(usize, usize), usize> = HashMap::new();
    let mut map_b: HashMap<(usize, usize), usize> = HashMap::new();
    for &x in &ra {
        for &y in &rb {
            let i = out.names.len();
            out.names.push(Arc::new(NodeName::Pair(a.names[x].clone(), b.names[y].clone())));
            out.parent.push(None);
            map_a.insert((x, y), i);
            map_b.insert((y, x), i);
        }
    }
    for &y in &rb {
        for i in 0..a.names.len() {
            if let Some(p) = a.parent[i] {
                let idx = out.names.len();
                out.names.push(Arc::new(NodeName::Copy(a.names[i].clone(), b.names[y].clone(), 1)));
                out.parent.push(Some(map_a[&(p, y)]));
                map_a.insert((i, y), idx);
            }
        }
    }
    for &x in &ra {
        for i in 0..b.names.len() {
            if let Some(p) = b.parent[i] {
                let idx = out.names.len();
                out.names.push(Arc::new(NodeName::Copy(b.names[i].clone(), a.names[x].clone(), 2)));
                out.parent.push(Some(map_b[&(p, x)]));
                map_b.insert((i, x), idx);
            }
        }
    }
    for &y in &rb {
        for (tgt, srcs) in &a.edges {
            out.edges.push((map_a[&(*tgt, y)], srcs.iter().map(|s| map_a[&(*s, y)]).collect()));
        }
    }
    for &x in &ra {
        for (tgt, srcs) in &b.edges {
            out.edges.push((map_b[&(*tgt, x)], srcs.iter().map(|s| map_b[&(*s, x)]).collect()));
        }
    }
    out
}

fn forall(x: Ident, a: Tracked) -> Tracked {
    let root = a.root_of();
    let depth = a.depths();
    let erasures: HashMap<usize, Name> = a.roots().into_iter().map(|r| (r, a.names[r].erase())).collect();
    let mut out = Tracked {
        names: Vec::with_capacity(a.names.len()),
        parent: a.parent.clone(),
        edges: a.edges.clone(),
    };
    let mut sources: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, n) in a.names.iter().enumerate() {
        let r = root[i];
        let count = n.decorations().iter().filter(|&&y| y == x).count();
        sources.entry(r).or_default().extend(std::iter::repeat_n(i, count));
        let bound = n.bind(x, depth[i], &erasures[&r]);
        out.names.push(if i == r { Arc::new(NodeName::Forall(bound)) } else { bound });
    }
    for r in a.roots() {
        out.edges.push((r, sources.remove(&r).unwrap_or_default()));
    }
    out
}

/// The arena of a formula.
pub fn build_arena(f: &Formula) -> Arena {
    build_tracked(f).into_arena()
}
