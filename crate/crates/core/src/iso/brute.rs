//! Backtracking search for a hyperforest isomorphism, independent of the
//! rewrite system.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use super::ArenaIsoWitness;
use crate::arena::{Hyperedge, Hyperforest};
use crate::error::{Error, Result};

pub const DEFAULT_NODE_LIMIT: usize = 20;

/// Invariants of each node that any isomorphism preserves, folded over
/// the subtree.
fn signatures(h: &Hyperforest) -> Vec<u64> {
    let n = h.len();
    let depth: Vec<u32> = (0..n).map(|i| h.depth(i)).collect();
    // depth, sizes of the hyperedges it targets, and the ones it is a source of
    type Local = (u32, Vec<usize>, Vec<(u32, usize, usize)>);
    let mut local: Vec<Local> =
        (0..n).map(|i| (depth[i], Vec::new(), Vec::new())).collect();
    for e in &h.edges {
        local[e.target].1.push(e.sources.len());
        let mut s = e.sources.clone();
        s.dedup();
        for &x in &s {
            let mult = e.sources.iter().filter(|&&y| y == x).count();
            local[x].2.push((depth[e.target], mult, e.sources.len()));
        }
    }
    let mut children = vec![Vec::new(); n];
    for (i, node) in h.nodes.iter().enumerate() {
        if let Some(p) = node.parent {
            children[p].push(i);
        }
    }
    let mut sig = vec![0u64; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(depth[i]));
    for i in order {
        let (d, ref mut t, ref mut s) = local[i];
        t.sort_unstable();
        s.sort_unstable();
        let mut kids: Vec<u64> = children[i].iter().map(|&c| sig[c]).collect();
        kids.sort_unstable();
        let mut hs = DefaultHasher::new();
        (d, &h.nodes[i].decorations, &*t, &*s, kids).hash(&mut hs);
        sig[i] = hs.finish();
    }
    sig
}

fn preorder(h: &Hyperforest, children: &[Vec<usize>]) -> Vec<usize> {
    let mut out = Vec::with_capacity(h.len());
    let mut stack: Vec<usize> = h.roots().into_iter().rev().collect();
    while let Some(i) = stack.pop() {
        out.push(i);
        stack.extend(children[i].iter().rev());
    }
    out
}

struct Search<'a> {
    h1: &'a Hyperforest,
    sig1: Vec<u64>,
    sig2: Vec<u64>,
    order: Vec<usize>,
    roots2: Vec<usize>,
    children2: Vec<Vec<usize>>,
    /// Edges of `h1` whose last node is mapped at each step.
    closing: Vec<Vec<usize>>,
    remaining: HashMap<Hyperedge, usize>,
    g: Vec<Option<usize>>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn image(&self, e: &Hyperedge) -> Hyperedge {
        let g = |x: usize| self.g[x].expect("closed edge is mapped");
        let mut sources: Vec<usize> = e.sources.iter().map(|&x| g(x)).collect();
        sources.sort_unstable();
        Hyperedge { target: g(e.target), sources }
    }

    fn go(&mut self, step: usize) -> bool {
        if step == self.order.len() {
            return true;
        }
        let u = self.order[step];
        let cands = match self.h1.nodes[u].parent {
            None => self.roots2.clone(),
            Some(p) => self.children2[self.g[p].expect("parents come first")].clone(),
        };
        for v in cands {
            if self.used[v] || self.sig2[v] != self.sig1[u] {
                continue;
            }
            self.g[u] = Some(v);
            self.used[v] = true;
            let mut taken = Vec::new();
            let mut ok = true;
            for &k in &self.closing[step].clone() {
                let img = self.image(&self.h1.edges[k]);
                match self.remaining.get_mut(&img) {
                    Some(c) if *c > 0 => {
                        *c -= 1;
                        taken.push(img);
                    }
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok && self.go(step + 1) {
                return true;
            }
            for img in taken {
                *self.remaining.get_mut(&img).expect("taken above") += 1;
            }
            self.g[u] = None;
            self.used[v] = false;
        }
        false
    }
}

pub fn brute_force_iso(h1: &Hyperforest, h2: &Hyperforest) -> Result<Option<ArenaIsoWitness>> {
    brute_force_iso_with_limit(h1, h2, DEFAULT_NODE_LIMIT)
}

/// Searches parent-respecting node bijections, pruning by subtree
/// signatures and by hyperedges as soon as all their nodes are placed.
pub fn brute_force_iso_with_limit(
    h1: &Hyperforest,
    h2: &Hyperforest,
    limit: usize,
) -> Result<Option<ArenaIsoWitness>> {
    let nodes = h1.len().max(h2.len());
    if nodes > limit {
        return Err(Error::SizeLimit { nodes, limit });
    }
    if h1.len() != h2.len() || h1.edges.len() != h2.edges.len() {
        return Ok(None);
    }
    let (sig1, sig2) = (signatures(h1), signatures(h2));
    let mut s1 = sig1.clone();
    let mut s2 = sig2.clone();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return Ok(None);
    }
    let kids = |h: &Hyperforest| {
        let mut c = vec![Vec::new(); h.len()];
        for (i, node) in h.nodes.iter().enumerate() {
            if let Some(p) = node.parent {
                c[p].push(i);
            }
        }
        c
    };
    let children1 = kids(h1);
    let order = preorder(h1, &children1);
    let mut pos = vec![0; h1.len()];
    for (k, &u) in order.iter().enumerate() {
        pos[u] = k;
    }
    let mut closing = vec![Vec::new(); order.len()];
    for (k, e) in h1.edges.iter().enumerate() {
        let last = e.sources.iter().map(|&x| pos[x]).fold(pos[e.target], usize::max);
        closing[last].push(k);
    }
    let mut remaining = HashMap::new();
    for e in &h2.edges {
        *remaining.entry(e.clone()).or_insert(0) += 1;
    }
    let mut s = Search {
        h1,
        sig1,
        sig2,
        order,
        roots2: h2.roots(),
        children2: kids(h2),
        closing,
        remaining,
        g: vec![None; h1.len()],
        used: vec![false; h1.len()],
    };
    if !s.go(0) {
        return Ok(None);
    }
    let g: Vec<usize> = s.g.iter().map(|x| x.expect("complete")).collect();
    // pair edges with equal images, first come first served
    let mut free: HashMap<&Hyperedge, Vec<usize>> = HashMap::new();
    for (j, e) in h2.edges.iter().enumerate().rev() {
        free.entry(e).or_default().push(j);
    }
    let mut psi = Vec::with_capacity(h1.edges.len());
    for e in &h1.edges {
        let img = s.image(e);
        let j = free.get_mut(&img).and_then(Vec::pop).ok_or_else(|| {
            Error::Internal("edge accounting out of step with the search".into())
        })?;
        psi.push(j);
    }
    Ok(Some(ArenaIsoWitness { g, psi }))
}
