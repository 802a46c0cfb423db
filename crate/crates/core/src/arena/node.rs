//! Node names.
//!
//! ```text
//! c ::= ⋆ | x_i | x^(j,c) | ∀(c) | (c,1) | (c,2) | ¬(c) | (c⅋c) | (c,c,1) | (c,c,2)
//! ```

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::ident::Ident;

pub type Name = Arc<NodeName>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeName {
    Star,
    Free(Ident),
    /// `x^(j,c)`: a variable bound `j` levels up by the binder whose root
    /// has erasure `c`.
    Bound(u32, Name),
    Forall(Name),
    Inj(Name, u8),
    Neg(Name),
    Pair(Name, Name),
    /// `(a,b,k)`: `a` is a node from side `k`, `b` a root from the other side.
    Copy(Name, Name, u8),
}

pub fn star() -> Name {
    Arc::new(NodeName::Star)
}

impl NodeName {
    /// Position of the node below its root, read off the name.
    pub fn depth(&self) -> u32 {
        match self {
            NodeName::Star | NodeName::Free(_) | NodeName::Bound(..) | NodeName::Pair(..) => 0,
            NodeName::Neg(c) => c.depth() + 1,
            NodeName::Forall(c) | NodeName::Inj(c, _) | NodeName::Copy(c, _, _) => c.depth(),
        }
    }

    /// Replaces every variable leaf by `⋆`.
    pub fn erase(self: &Name) -> Name {
        match &**self {
            NodeName::Star | NodeName::Free(_) | NodeName::Bound(..) => star(),
            NodeName::Forall(c) => Arc::new(NodeName::Forall(c.erase())),
            NodeName::Inj(c, k) => Arc::new(NodeName::Inj(c.erase(), *k)),
            NodeName::Neg(c) => Arc::new(NodeName::Neg(c.erase())),
            NodeName::Pair(a, b) => Arc::new(NodeName::Pair(a.erase(), b.erase())),
            NodeName::Copy(a, b, k) => Arc::new(NodeName::Copy(a.erase(), b.erase(), *k)),
        }
    }

    /// Free variables this node publishes, with multiplicity.
    pub fn decorations(&self) -> Vec<Ident> {
        fn go(c: &NodeName, out: &mut Vec<Ident>) {
            match c {
                NodeName::Star | NodeName::Bound(..) => {}
                NodeName::Free(x) => out.push(*x),
                NodeName::Forall(c) | NodeName::Inj(c, _) | NodeName::Neg(c) => go(c, out),
                NodeName::Pair(a, b) => {
                    go(a, out);
                    go(b, out);
                }
                NodeName::Copy(a, _, _) => go(a, out),
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    /// Every free variable mentioned anywhere in the name.
    pub fn all_free(&self, out: &mut HashSet<Ident>) {
        match self {
            NodeName::Star => {}
            NodeName::Free(x) => {
                out.insert(*x);
            }
            NodeName::Bound(_, c)
            | NodeName::Forall(c)
            | NodeName::Inj(c, _)
            | NodeName::Neg(c) => c.all_free(out),
            NodeName::Pair(a, b) | NodeName::Copy(a, b, _) => {
                a.all_free(out);
                b.all_free(out);
            }
        }
    }

    /// Binds `x`: a leaf `x_i` at level `l` becomes `x^(l, erasure)`.
    ///
    /// Inside the root component of a copy `(a,b,k)` the level drops by the
    /// depth of `a`, since that component names a root.
    pub fn bind(self: &Name, x: Ident, level: u32, erasure: &Name) -> Name {
        match &**self {
            NodeName::Star | NodeName::Bound(..) => self.clone(),
            NodeName::Free(y) if *y == x => Arc::new(NodeName::Bound(level, erasure.clone())),
            NodeName::Free(_) => self.clone(),
            NodeName::Forall(c) => Arc::new(NodeName::Forall(c.bind(x, level, erasure))),
            NodeName::Inj(c, k) => Arc::new(NodeName::Inj(c.bind(x, level, erasure), *k)),
            NodeName::Neg(c) => Arc::new(NodeName::Neg(c.bind(x, level, erasure))),
            NodeName::Pair(a, b) => Arc::new(NodeName::Pair(
                a.bind(x, level, erasure),
                b.bind(x, level, erasure),
            )),
            NodeName::Copy(a, b, k) => Arc::new(NodeName::Copy(
                a.bind(x, level, erasure),
                b.bind(x, level - a.depth(), erasure),
                *k,
            )),
        }
    }

    /// Inverse of [`NodeName::bind`].
    pub fn unbind(self: &Name, x: Ident, level: u32, erasure: &Name) -> Name {
        match &**self {
            NodeName::Bound(j, e) if *j == level && e == erasure => Arc::new(NodeName::Free(x)),
            NodeName::Star | NodeName::Free(_) | NodeName::Bound(..) => self.clone(),
            NodeName::Forall(c) => Arc::new(NodeName::Forall(c.unbind(x, level, erasure))),
            NodeName::Inj(c, k) => Arc::new(NodeName::Inj(c.unbind(x, level, erasure), *k)),
            NodeName::Neg(c) => Arc::new(NodeName::Neg(c.unbind(x, level, erasure))),
            NodeName::Pair(a, b) => Arc::new(NodeName::Pair(
                a.unbind(x, level, erasure),
                b.unbind(x, level, erasure),
            )),
            NodeName::Copy(a, b, k) => {
                let d = a.depth();
                if d > level {
                    return self.clone();
                }
                Arc::new(NodeName::Copy(
                    a.unbind(x, level, erasure),
                    b.unbind(x, level - d, erasure),
                    *k,
                ))
            }
        }
    }
}

impl fmt::Display for NodeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeName::Star => write!(f, "⋆"),
            NodeName::Free(x) => write!(f, "x_{x}"),
            NodeName::Bound(j, c) => write!(f, "x^({j},{c})"),
            NodeName::Forall(c) => write!(f, "∀({c})"),
            NodeName::Inj(c, k) => write!(f, "({c},{k})"),
            NodeName::Neg(c) => write!(f, "¬({c})"),
            NodeName::Pair(a, b) => {
                // bare, except when nested directly in another ⅋
                let side = |c: &Name| match &**c {
                    NodeName::Pair(..) => format!("({c})"),
                    _ => c.to_string(),
                };
                write!(f, "{}⅋{}", side(a), side(b))
            }
            NodeName::Copy(a, b, k) => write!(f, "({a},{b},{k})"),
        }
    }
}

impl fmt::Debug for NodeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
