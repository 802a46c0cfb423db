//! The coercion between two normal forms with equal canonical keys.
//!
//! Factors are paired by their position in the sorted order, binders by
//! their canonical numbering and tail variables by their sorted position.
//! A factor `∀X⃗.N → T` is sent to `ΛY⃗.λm.tail((y{Y⃗'}) (m coerced back))`,
//! so argument forms are matched in the opposite direction.

use std::collections::{HashMap, HashSet};

use super::Iso;
use crate::canon::{canonical_labeling, CanonicalForm, LabeledFactor, LabeledForm};
use crate::error::{Error, Result};
use crate::ident::Ident;
use crate::lambdamu::Term;
use crate::types::{alpha_eq, free_type_vars, rename_apart, subst_type, TypeExpr};

/// Two normal forms and how their parts correspond.
#[derive(Clone, Debug)]
pub struct Matching {
    pub source: TypeExpr,
    pub target: TypeExpr,
    source_labels: LabeledForm,
    target_labels: LabeledForm,
}

impl Matching {
    /// `None` unless both are normal forms with the same canonical key.
    pub fn between(source: &TypeExpr, target: &TypeExpr) -> Option<Matching> {
        let mut avoid: HashSet<Ident> = free_type_vars(source).into_iter().collect();
        avoid.extend(free_type_vars(target));
        let s = rename_apart(source, &mut avoid);
        let t = rename_apart(target, &mut avoid);
        let ls = canonical_labeling(&CanonicalForm::from_normal(&s)?);
        let lt = canonical_labeling(&CanonicalForm::from_normal(&t)?);
        (ls.key == lt.key).then_some(Matching {
            source: s,
            target: t,
            source_labels: ls.form,
            target_labels: lt.form,
        })
    }

    /// The trivial matching of a normal form with itself.
    pub fn identity(t: &TypeExpr) -> Option<Matching> {
        Matching::between(t, t)
    }

    pub(crate) fn iso(&self) -> Result<Iso> {
        if alpha_eq(&self.source, &self.target) {
            // equal forms get equal labelings, so the coercion is an η-expanded identity
            return Ok(Iso::id(self.source.clone()));
        }
        let mut b = Builder::default();
        let s = Side { ty: &self.source, sub: HashMap::new() };
        let t = Side { ty: &self.target, sub: HashMap::new() };
        let x = Ident::new("x");
        let fwd = Term::lam(x, self.source.clone(), b.form(Term::Var(x), &s, &self.source_labels, &t, &self.target_labels)?);
        let bwd = Term::lam(x, self.target.clone(), b.form(Term::Var(x), &t, &self.target_labels, &s, &self.source_labels)?);
        Ok(Iso { a: self.source.clone(), b: self.target.clone(), fwd: Some(fwd), bwd: Some(bwd) })
    }
}

/// One side's type, with its bound variables mapped to the ones in scope.
#[derive(Clone)]
struct Side<'a> {
    ty: &'a TypeExpr,
    sub: HashMap<Ident, Ident>,
}

impl Side<'_> {
    fn at<'b>(&self, ty: &'b TypeExpr) -> Side<'b> {
        Side { ty, sub: self.sub.clone() }
    }

    fn show(&self, ty: &TypeExpr) -> TypeExpr {
        self.sub
            .iter()
            .fold(ty.clone(), |acc, (&from, &to)| subst_type(&acc, &TypeExpr::Var(to), from))
    }
}

fn prod_leaves(t: &TypeExpr) -> Vec<(Vec<u8>, &TypeExpr)> {
    fn go<'a>(t: &'a TypeExpr, path: &mut Vec<u8>, out: &mut Vec<(Vec<u8>, &'a TypeExpr)>) {
        match t {
            TypeExpr::Prod(a, b) => {
                for (i, c) in [a, b].into_iter().enumerate() {
                    path.push(i as u8 + 1);
                    go(c, path, out);
                    path.pop();
                }
            }
            _ => out.push((path.clone(), t)),
        }
    }
    let mut out = Vec::new();
    if *t != TypeExpr::Top {
        go(t, &mut Vec::new(), &mut out);
    }
    out
}

fn par_leaves(t: &TypeExpr) -> Vec<&TypeExpr> {
    match t {
        TypeExpr::Bot => Vec::new(),
        TypeExpr::Par(a, b) => {
            let mut v = par_leaves(a);
            v.extend(par_leaves(b));
            v
        }
        _ => vec![t],
    }
}

fn strip(t: &TypeExpr) -> (Vec<Ident>, Option<&TypeExpr>, &TypeExpr) {
    let mut xs = Vec::new();
    let mut body = t;
    while let TypeExpr::Forall(x, b) = body {
        xs.push(*x);
        body = b;
    }
    match body {
        TypeExpr::Arrow(n, tail) => (xs, Some(n), tail),
        _ => (xs, None, body),
    }
}

/// For each target position, the source position sent there.
fn pairing(src_order: &[usize], dst_order: &[usize]) -> Result<Vec<usize>> {
    if src_order.len() != dst_order.len() {
        return Err(Error::Internal("matched forms differ in size".into()));
    }
    let mut from = vec![0; dst_order.len()];
    for (k, &j) in dst_order.iter().enumerate() {
        from[j] = src_order[k];
    }
    Ok(from)
}

#[derive(Default)]
struct Builder {
    counter: usize,
}

impl Builder {
    fn fresh(&mut self, stem: &str) -> Ident {
        self.counter += 1;
        Ident::new(&format!("{stem}{}", self.counter))
    }

    /// Sends `x` of product type `s.ty` to `t.ty`; `x` may be duplicated.
    fn form(&mut self, x: Term, s: &Side, sl: &LabeledForm, t: &Side, tl: &LabeledForm) -> Result<Term> {
        let sleaves = prod_leaves(s.ty);
        let tleaves = prod_leaves(t.ty);
        let from = pairing(&sl.order, &tl.order)?;
        let mut parts = Vec::with_capacity(tleaves.len());
        for (j, (_, tty)) in tleaves.iter().enumerate() {
            let i = from[j];
            let (path, sty) = &sleaves[i];
            let y = path.iter().fold(x.clone(), |acc, &p| Term::proj(p, acc));
            parts.push(self.factor(y, &s.at(sty), &sl.factors[i], &t.at(tty), &tl.factors[j])?);
        }
        let mut parts = parts.into_iter();
        Ok(rebuild(t.ty, &mut parts))
    }

    fn factor(&mut self, y: Term, s: &Side, sf: &LabeledFactor, t: &Side, tf: &LabeledFactor) -> Result<Term> {
        let (sxs, sarg, stail) = strip(s.ty);
        let (txs, targ, ttail) = strip(t.ty);
        if sxs.len() != txs.len() || sarg.is_some() != targ.is_some() {
            return Err(Error::Internal(format!("cannot match {} with {}", s.ty, t.ty)));
        }
        let mut s2 = s.clone();
        for (k, &i) in sf.binder_order.iter().enumerate() {
            s2.sub.insert(sxs[i], txs[tf.binder_order[k]]);
        }
        let inst = sxs
            .iter()
            .fold(y, |acc, &x| Term::tapp(acc, TypeExpr::Var(s2.sub[&x])));
        let body = match (sarg, targ) {
            (Some(sn), Some(tn)) => {
                let m = self.fresh("m");
                let back = self.form(Term::Var(m), &t.at(tn), &tf.arg, &s2.at(sn), &sf.arg)?;
                let core = Term::app(inst, back);
                Term::lam(m, t.show(tn), self.tail(core, &s2.at(stail), sf, &t.at(ttail), tf))
            }
            _ => self.tail(inst, &s2.at(stail), sf, &t.at(ttail), tf),
        };
        Ok(txs.iter().rev().fold(body, |acc, &x| Term::tlam(x, acc)))
    }

    fn tail(&mut self, w: Term, s: &Side, sf: &LabeledFactor, t: &Side, tf: &LabeledFactor) -> Term {
        let sl = par_leaves(s.ty);
        let tl = par_leaves(t.ty);
        if sl.len() <= 1 && tl.len() <= 1 {
            return w;
        }
        let names: Vec<Ident> = (0..tl.len()).map(|_| self.fresh("k")).collect();
        // the source leaf at sorted position k goes to the target leaf there
        let mut dest = vec![Ident::new("_"); sl.len()];
        for (k, &i) in sf.tail_order.iter().enumerate() {
            dest[i] = names[tf.tail_order[k]];
        }
        let mut leaf = 0;
        let cmd = self.send(w, s.ty, s, &dest, &mut leaf);
        let mut leaf = 0;
        self.intro(t.ty, t, &names, &mut leaf, cmd)
    }

    /// A command passing each leaf of `w : ty` to its name in `dest`.
    fn send(&mut self, w: Term, ty: &TypeExpr, side: &Side, dest: &[Ident], leaf: &mut usize) -> Term {
        match ty {
            TypeExpr::Bot => w,
            TypeExpr::Par(a, b) => {
                let (al, be) = (self.fresh("l"), self.fresh("r"));
                let left = Term::mu(al, side.show(a), Term::name2(al, be, w));
                let cmd_a = self.send(left, a, side, dest, leaf);
                let right = Term::mu(be, side.show(b), cmd_a);
                self.send(right, b, side, dest, leaf)
            }
            _ => {
                let n = dest[*leaf];
                *leaf += 1;
                Term::name(n, w)
            }
        }
    }

    /// A term of type `ty` binding the names of its leaves around `cmd`.
    fn intro(&mut self, ty: &TypeExpr, side: &Side, names: &[Ident], leaf: &mut usize, cmd: Term) -> Term {
        match ty {
            TypeExpr::Bot => cmd,
            TypeExpr::Par(a, b) => {
                let (al, be) = (self.fresh("l"), self.fresh("r"));
                let before = *leaf;
                let na = par_leaves(a).len();
                *leaf += na;
                let inner_b = self.intro(b, side, names, leaf, cmd);
                let after = *leaf;
                *leaf = before;
                let inner_a = self.intro(a, side, names, leaf, Term::name(be, inner_b));
                *leaf = after;
                Term::mu2(al, side.show(a), be, side.show(b), Term::name(al, inner_a))
            }
            _ => {
                let n = names[*leaf];
                *leaf += 1;
                Term::mu(n, side.show(ty), cmd)
            }
        }
    }
}

fn rebuild(shape: &TypeExpr, parts: &mut impl Iterator<Item = Term>) -> Term {
    match shape {
        TypeExpr::Top => Term::Star,
        TypeExpr::Prod(a, b) => {
            let l = rebuild(a, parts);
            let r = rebuild(b, parts);
            Term::pair(l, r)
        }
        _ => parts.next().expect("one part per factor"),
    }
}
