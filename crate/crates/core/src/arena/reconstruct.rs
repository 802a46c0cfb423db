//! Reading a formula back off an arena by case analysis on root names.

use std::collections::{HashMap, HashSet};

use super::formula::Formula;
use super::node::{Name, NodeName};
use crate::error::{Error, Result};
use crate::ident::Ident;

/// A forest of named nodes with parents listed before children.
pub(crate) struct Forest {
    pub names: Vec<Name>,
    pub parent: Vec<Option<usize>>,
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedArena(msg.into())
}

impl Forest {
    fn depths(&self) -> Vec<u32> {
        let mut d = vec![0; self.names.len()];
        for i in 0..self.names.len() {
            if let Some(p) = self.parent[i] {
                d[i] = d[p] + 1;
            }
        }
        d
    }

    fn root_of(&self) -> Vec<usize> {
        let mut r = vec![0; self.names.len()];
        for i in 0..self.names.len() {
            r[i] = self.parent[i].map_or(i, |p| r[p]);
        }
        r
    }

    /// Keeps the nodes selected by `f`, renamed; parents are remapped and
    /// must themselves be kept (otherwise the node becomes a root).
    fn project(&self, mut keep: impl FnMut(usize, &Name) -> Option<Name>) -> Forest {
        let mut index = vec![None; self.names.len()];
        let mut out = Forest { names: Vec::new(), parent: Vec::new() };
        for (i, n) in self.names.iter().enumerate() {
            if let Some(m) = keep(i, n) {
                index[i] = Some(out.names.len());
                out.names.push(m);
                out.parent.push(self.parent[i].and_then(|p| index[p]));
            }
        }
        out
    }
}

pub(crate) fn reconstruct(f: &Forest) -> Result<Formula> {
    if f.names.is_empty() {
        return Ok(Formula::Top);
    }
    let roots: Vec<usize> = (0..f.names.len()).filter(|&i| f.parent[i].is_none()).collect();
    if f.parent.iter().enumerate().any(|(i, p)| p.is_some_and(|p| p >= i)) {
        return Err(malformed("parents must precede children"));
    }
    match &*f.names[roots[0]] {
        NodeName::Free(x) => {
            if f.names.len() != 1 {
                return Err(malformed(format!("variable node x_{x} is not alone")));
            }
            Ok(Formula::Var(*x))
        }
        NodeName::Star => {
            if f.names.len() == 1 {
                return Ok(Formula::Bot);
            }
            if roots.len() != 1 {
                return Err(malformed("a ⋆ root beside other roots"));
            }
            let mut bad = false;
            let sub = f.project(|i, n| match &**n {
                _ if i == roots[0] => None,
                NodeName::Neg(c) => Some(c.clone()),
                _ => {
                    bad = true;
                    None
                }
            });
            if bad || sub.names.len() + 1 != f.names.len() {
                return Err(malformed("expected ¬(c) below a ⋆ root"));
            }
            Ok(Formula::neg(reconstruct(&sub)?))
        }
        NodeName::Inj(..) => {
            if f.names.iter().any(|n| !matches!(&**n, NodeName::Inj(..))) {
                return Err(malformed("mixed product and non-product nodes"));
            }
            let side = |k: u8| {
                f.project(|_, n| match &**n {
                    NodeName::Inj(c, j) if *j == k => Some(c.clone()),
                    _ => None,
                })
            };
            let (l, r) = (side(1), side(2));
            if l.names.len() + r.names.len() != f.names.len() {
                return Err(malformed("product tag other than 1 or 2"));
            }
            for (i, n) in f.names.iter().enumerate() {
                if let (NodeName::Inj(_, k), Some(p)) = (&**n, f.parent[i]) {
                    if !matches!(&*f.names[p], NodeName::Inj(_, j) if j == k) {
                        return Err(malformed("product edge crosses sides"));
                    }
                }
            }
            Ok(Formula::prod(reconstruct(&l)?, reconstruct(&r)?))
        }
        NodeName::Pair(..) => {
            let (l, r) = split_par(f, &roots)?;
            Ok(Formula::par(reconstruct(&l)?, reconstruct(&r)?))
        }
        NodeName::Forall(_) => {
            let mut avoid = HashSet::new();
            for n in &f.names {
                n.all_free(&mut avoid);
            }
            let x = Ident::new("X").fresh(|c| avoid.contains(&c));
            let depth = f.depths();
            let root = f.root_of();
            let mut inner = Vec::with_capacity(f.names.len());
            let mut erasure: HashMap<usize, Name> = HashMap::new();
            for &r in &roots {
                match &*f.names[r] {
                    NodeName::Forall(c) => {
                        erasure.insert(r, c.erase());
                    }
                    _ => return Err(malformed("mixed ∀ and non-∀ roots")),
                }
            }
            for (i, n) in f.names.iter().enumerate() {
                let c = if i == root[i] {
                    match &**n {
                        NodeName::Forall(c) => c.clone(),
                        _ => unreachable!(),
                    }
                } else {
                    n.clone()
                };
                if c.depth() != depth[i] {
                    return Err(malformed(format!("node {n} sits at depth {}", depth[i])));
                }
                inner.push(c.unbind(x, depth[i], &erasure[&root[i]]));
            }
            let sub = Forest { names: inner, parent: f.parent.clone() };
            Ok(Formula::forall(x, reconstruct(&sub)?))
        }
        other => Err(malformed(format!("{other} cannot be a root"))),
    }
}

fn split_par(f: &Forest, roots: &[usize]) -> Result<(Forest, Forest)> {
    // Rebuild each factor as a name-indexed forest.
    struct Side {
        index: HashMap<Name, usize>,
        names: Vec<Name>,
        parent: Vec<Option<usize>>,
    }
    impl Side {
        fn add(&mut self, n: &Name, parent: Option<&Name>) -> Result<()> {
            let p = match parent {
                None => None,
                Some(p) => Some(*self.index.get(p).ok_or_else(|| malformed(format!("unknown parent {p}")))?),
            };
            match self.index.get(n) {
                Some(&i) if self.parent[i] == p => Ok(()),
                Some(_) => Err(malformed(format!("{n} has inconsistent parents"))),
                None => {
                    self.index.insert(n.clone(), self.names.len());
                    self.names.push(n.clone());
                    self.parent.push(p);
                    Ok(())
                }
            }
        }
        fn forest(self) -> Forest {
            Forest { names: self.names, parent: self.parent }
        }
    }
    let new_side = || Side { index: HashMap::new(), names: Vec::new(), parent: Vec::new() };
    let (mut l, mut r) = (new_side(), new_side());
    for &i in roots {
        match &*f.names[i] {
            NodeName::Pair(a, b) => {
                l.add(a, None)?;
                r.add(b, None)?;
            }
            _ => return Err(malformed("mixed ⅋ and non-⅋ roots")),
        }
    }
    let factor = |n: &Name, k: u8| -> Option<Name> {
        match &**n {
            NodeName::Pair(a, b) => Some(if k == 1 { a.clone() } else { b.clone() }),
            NodeName::Copy(c, _, j) if *j == k => Some(c.clone()),
            _ => None,
        }
    };
    for (i, n) in f.names.iter().enumerate() {
        let Some(p) = f.parent[i] else { continue };
        let NodeName::Copy(c, _, k) = &**n else {
            return Err(malformed(format!("{n} below a ⅋ root")));
        };
        let pn = factor(&f.names[p], *k).ok_or_else(|| malformed(format!("{n} under a node of the other side")))?;
        match k {
            1 => l.add(c, Some(&pn))?,
            2 => r.add(c, Some(&pn))?,
            _ => return Err(malformed("⅋ tag other than 1 or 2")),
        }
    }
    let (l, r) = (l.forest(), r.forest());
    let nl = l.names.len();
    let nr = r.names.len();
    let rl = l.parent.iter().filter(|p| p.is_none()).count();
    let rr = r.parent.iter().filter(|p| p.is_none()).count();
    if rl * rr + (nl - rl) * rr + (nr - rr) * rl != f.names.len() {
        return Err(malformed("⅋ node count does not factor"));
    }
    Ok((l, r))
}
