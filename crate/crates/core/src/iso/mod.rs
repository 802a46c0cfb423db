//! Isomorphism of types: the decision through canonical keys, witnesses on
//! hyperforests, and a brute-force matcher used as an oracle.

mod brute;
mod read;

use std::fmt;

use serde_json::{json, Value};

use crate::arena::Hyperforest;
use crate::canon::{canonical_labeling, canonicalize, LabeledForm};
use crate::error::{Error, Result};
use crate::types::{CalculusMode, TypeExpr};

pub use brute::{brute_force_iso, brute_force_iso_with_limit, DEFAULT_NODE_LIMIT};
pub use read::{hyperforest_witness, read_canonical};

/// A node bijection `g` and a hyperedge bijection `psi`, both indexed by the
/// left hyperforest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArenaIsoWitness {
    pub g: Vec<usize>,
    pub psi: Vec<usize>,
}

impl ArenaIsoWitness {
    pub fn identity(h: &Hyperforest) -> ArenaIsoWitness {
        ArenaIsoWitness { g: (0..h.len()).collect(), psi: (0..h.edges.len()).collect() }
    }

    pub fn to_json(&self, h1: &Hyperforest, h2: &Hyperforest) -> Value {
        let g: Vec<Value> = self
            .g
            .iter()
            .enumerate()
            .map(|(i, &j)| {
                json!({
                    "from": i, "to": j,
                    "from_name": h1.nodes[i].name.to_string(),
                    "to_name": h2.nodes[j].name.to_string(),
                })
            })
            .collect();
        let psi: Vec<Value> = self
            .psi
            .iter()
            .enumerate()
            .map(|(i, &j)| json!({"from": i, "to": j}))
            .collect();
        json!({"g": g, "psi": psi})
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mismatch {
    TreeCount { left: usize, right: usize },
    RootHyperedges { left: usize, right: usize },
    Decorations { left: Vec<String>, right: Vec<String> },
    /// The parts agree but the factors still differ, through bound labels.
    Factor { left: String, right: String },
}

/// The first mismatch between the canonical forms. `path` lists the
/// positions of factors (in key order) descended through.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonIsoReason {
    pub path: Vec<usize>,
    pub mismatch: Mismatch,
}

impl fmt::Display for NonIsoReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.path.is_empty() {
            write!(f, "under factor path {:?}: ", self.path)?;
        }
        match &self.mismatch {
            Mismatch::TreeCount { left, right } => write!(f, "tree count differs ({left} vs {right})"),
            Mismatch::RootHyperedges { left, right } => {
                write!(f, "root hyperedge count differs ({left} vs {right})")
            }
            Mismatch::Decorations { left, right } => write!(
                f,
                "decoration multiset differs ([{}] vs [{}])",
                left.join(", "),
                right.join(", ")
            ),
            Mismatch::Factor { left, right } => write!(f, "factors differ ({left} vs {right})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    /// Present iff `isomorphic`; relative to `left` and `right`.
    pub witness: Option<ArenaIsoWitness>,
    pub reason: Option<NonIsoReason>,
    pub left: Hyperforest,
    pub right: Hyperforest,
}

fn diagnose(a: &LabeledForm, b: &LabeledForm, path: &mut Vec<usize>) -> Option<NonIsoReason> {
    let here = |path: &Vec<usize>, mismatch| Some(NonIsoReason { path: path.clone(), mismatch });
    if a.order.len() != b.order.len() {
        return here(path, Mismatch::TreeCount { left: a.order.len(), right: b.order.len() });
    }
    for k in 0..a.order.len() {
        let fa = &a.factors[a.order[k]];
        let fb = &b.factors[b.order[k]];
        if fa.encoding == fb.encoding {
            continue;
        }
        path.push(k);
        let (na, nb) = (fa.binder_order.len(), fb.binder_order.len());
        let r = if na != nb {
            here(path, Mismatch::RootHyperedges { left: na, right: nb })
        } else if fa.tail_labels != fb.tail_labels {
            here(path, Mismatch::Decorations { left: fa.tail_labels.clone(), right: fb.tail_labels.clone() })
        } else {
            diagnose(&fa.arg, &fb.arg, path).or_else(|| {
                here(path, Mismatch::Factor { left: fa.encoding.clone(), right: fb.encoding.clone() })
            })
        };
        path.pop();
        return r;
    }
    None
}

/// Decides `a ≃ b` by comparing canonical keys. On success the witness is a
/// bijection between the hyperforests of `a` and `b` themselves.
pub fn decide_iso(a: &TypeExpr, b: &TypeExpr, mode: CalculusMode) -> Result<IsoVerdict> {
    mode.check_type(a)?;
    mode.check_type(b)?;
    let la = canonical_labeling(&canonicalize(a, mode)?.0);
    let lb = canonical_labeling(&canonicalize(b, mode)?.0);
    let left = Hyperforest::of_type(a);
    let right = Hyperforest::of_type(b);
    if la.key != lb.key {
        let reason = diagnose(&la.form, &lb.form, &mut Vec::new())
            .ok_or_else(|| Error::Internal("keys differ but no mismatch found".into()))?;
        return Ok(IsoVerdict { isomorphic: false, witness: None, reason: Some(reason), left, right });
    }
    // the forms read off the arenas must land on the same key
    let (ra, _) = read_canonical(&left);
    if canonical_labeling(&ra).key != la.key {
        return Err(Error::Internal(format!("arena of {a} reads as {ra}, off its canonical form")));
    }
    let w = hyperforest_witness(&left, &right)
        .ok_or_else(|| Error::Internal(format!("no arena witness for {a} and {b}")))?;
    if !check_bijection(&left, &right, &w) {
        return Err(Error::Internal("emitted witness fails the bijection check".into()));
    }
    Ok(IsoVerdict { isomorphic: true, witness: Some(w), reason: None, left, right })
}

fn is_permutation(v: &[usize], n: usize) -> bool {
    if v.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    v.iter().all(|&j| j < n && !std::mem::replace(&mut seen[j], true))
}

/// Checks that `w` is a forest isomorphism carrying hyperedges onto
/// hyperedges and preserving decorations.
pub fn check_bijection(h1: &Hyperforest, h2: &Hyperforest, w: &ArenaIsoWitness) -> bool {
    if h1.len() != h2.len() || h1.edges.len() != h2.edges.len() {
        return false;
    }
    if !is_permutation(&w.g, h1.len()) || !is_permutation(&w.psi, h1.edges.len()) {
        return false;
    }
    let g = &w.g;
    let nodes_ok = (0..h1.len()).all(|i| {
        let (n1, n2) = (&h1.nodes[i], &h2.nodes[g[i]]);
        n1.parent.map(|p| g[p]) == n2.parent && n1.decorations == n2.decorations
    });
    nodes_ok
        && h1.edges.iter().zip(&w.psi).all(|(e, &j)| {
            let f = &h2.edges[j];
            let mut s: Vec<usize> = e.sources.iter().map(|&x| g[x]).collect();
            s.sort_unstable();
            f.target == g[e.target] && f.sources == s
        })
}
