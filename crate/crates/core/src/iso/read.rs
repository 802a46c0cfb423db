//! Reading a canonical form straight off a hyperforest: each tree is a
//! factor, its root hyperedges are the binders, the root decorations form
//! the tail, and the subtrees form the argument.

use super::ArenaIsoWitness;
use crate::arena::Hyperforest;
use crate::canon::{canonical_labeling, CanonicalForm, Factor, LabeledForm};
use crate::ident::Ident;

/// Which node and hyperedges each factor and binder came from.
#[derive(Clone, Debug, Default)]
pub struct ReadForm {
    pub factors: Vec<ReadFactor>,
}

#[derive(Clone, Debug)]
pub struct ReadFactor {
    pub node: usize,
    pub edges: Vec<usize>,
    pub arg: ReadForm,
}

struct Reader<'a> {
    h: &'a Hyperforest,
    children: Vec<Vec<usize>>,
    at: Vec<Vec<usize>>,
    extra: Vec<Vec<Ident>>,
}

impl Reader<'_> {
    fn form(&mut self, nodes: &[usize]) -> (CanonicalForm, ReadForm) {
        let mut cf = CanonicalForm::default();
        let mut rf = ReadForm::default();
        for &r in nodes {
            let (f, m) = self.factor(r);
            cf.factors.push(f);
            rf.factors.push(m);
        }
        (cf, rf)
    }

    fn factor(&mut self, r: usize) -> (Factor, ReadFactor) {
        let edges = self.at[r].clone();
        let mut binders = Vec::with_capacity(edges.len());
        for &e in &edges {
            // names no parsed variable can have
            let x = Ident::new(&format!("'h{e}"));
            binders.push(x);
            for &s in &self.h.edges[e].sources {
                self.extra[s].push(x);
            }
        }
        let mut tail = self.h.nodes[r].decorations.clone();
        tail.extend(self.extra[r].iter().copied());
        let kids = self.children[r].clone();
        let (arg, arg_m) = self.form(&kids);
        (Factor { binders, arg, tail }, ReadFactor { node: r, edges, arg: arg_m })
    }
}

/// The canonical form denoted by `h`, with the provenance of every factor.
pub fn read_canonical(h: &Hyperforest) -> (CanonicalForm, ReadForm) {
    let n = h.len();
    let mut children = vec![Vec::new(); n];
    let mut roots = Vec::new();
    for (i, node) in h.nodes.iter().enumerate() {
        match node.parent {
            Some(p) => children[p].push(i),
            None => roots.push(i),
        }
    }
    let mut at = vec![Vec::new(); n];
    for (k, e) in h.edges.iter().enumerate() {
        at[e.target].push(k);
    }
    let mut r = Reader { h, children, at, extra: vec![Vec::new(); n] };
    r.form(&roots)
}

fn zip(
    ra: &ReadForm,
    la: &LabeledForm,
    rb: &ReadForm,
    lb: &LabeledForm,
    w: &mut ArenaIsoWitness,
) {
    for (&ia, &ib) in la.order.iter().zip(&lb.order) {
        let (fa, fb) = (&ra.factors[ia], &rb.factors[ib]);
        let (ga, gb) = (&la.factors[ia], &lb.factors[ib]);
        w.g[fa.node] = fb.node;
        for (&ba, &bb) in ga.binder_order.iter().zip(&gb.binder_order) {
            w.psi[fa.edges[ba]] = fb.edges[bb];
        }
        zip(&fa.arg, &ga.arg, &fb.arg, &gb.arg, w);
    }
}

/// A witness found by labeling both readings canonically and pairing
/// positions; `None` when the keys differ.
pub fn hyperforest_witness(h1: &Hyperforest, h2: &Hyperforest) -> Option<ArenaIsoWitness> {
    let (ca, ra) = read_canonical(h1);
    let (cb, rb) = read_canonical(h2);
    let (la, lb) = (canonical_labeling(&ca), canonical_labeling(&cb));
    if la.key != lb.key {
        return None;
    }
    let mut w = ArenaIsoWitness { g: vec![0; h1.len()], psi: vec![0; h1.edges.len()] };
    zip(&ra, &la.form, &rb, &lb.form, &mut w);
    Some(w)
}
