//! Canonical labeling of canonical forms.
//!
//! Factors are sorted by their encoding, tails by variable label, and the
//! binders of each block are numbered by partition refinement followed by
//! individualization, keeping the smallest encoding. Bound variables are
//! written `b<level>.<index>`, free ones `f:<name>`.

use super::{CanonicalForm, Factor};
use crate::ident::Ident;

/// Where every factor, binder and tail variable of a form ended up.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LabeledForm {
    /// `order[k]` is the index of the factor placed k-th.
    pub order: Vec<usize>,
    /// Per original factor index.
    pub factors: Vec<LabeledFactor>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LabeledFactor {
    /// `binder_order[k]` is the index of the binder numbered k.
    pub binder_order: Vec<usize>,
    pub arg: LabeledForm,
    /// `tail_order[k]` is the index of the tail variable placed k-th.
    pub tail_order: Vec<usize>,
    /// Sorted labels of the tail variables.
    pub tail_labels: Vec<String>,
    pub encoding: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    pub key: Vec<u8>,
    pub form: LabeledForm,
}

struct Env(Vec<(Ident, String)>);

impl Env {
    fn label(&self, x: Ident) -> String {
        match self.0.iter().rev().find(|(y, _)| *y == x) {
            Some((_, l)) => l.clone(),
            None => format!("f:{x}"),
        }
    }
}

fn enc_form(cf: &CanonicalForm, env: &mut Env, level: usize) -> (String, LabeledForm) {
    let parts: Vec<(String, LabeledFactor)> =
        cf.factors.iter().map(|f| enc_factor(f, env, level)).collect();
    let mut order: Vec<usize> = (0..parts.len()).collect();
    order.sort_by(|&i, &j| parts[i].0.cmp(&parts[j].0));
    let mut s = String::from("(");
    for &i in &order {
        s.push_str(&parts[i].0);
    }
    s.push(')');
    let factors = parts.into_iter().map(|(_, l)| l).collect();
    (s, LabeledForm { order, factors })
}

/// Encodes a factor whose binders already carry labels in `env`.
fn enc_body(f: &Factor, env: &mut Env, level: usize) -> (String, LabeledForm, Vec<usize>, Vec<String>) {
    let (arg, arg_l) = enc_form(&f.arg, env, level + 1);
    let labels: Vec<String> = f.tail.iter().map(|&x| env.label(x)).collect();
    let mut tail_order: Vec<usize> = (0..labels.len()).collect();
    tail_order.sort_by(|&i, &j| labels[i].cmp(&labels[j]));
    let tail: Vec<&str> = tail_order.iter().map(|&i| labels[i].as_str()).collect();
    let s = format!("[{}|{}|{}]", f.binders.len(), arg, tail.join(","));
    let tail_labels = tail.into_iter().map(str::to_string).collect();
    (s, arg_l, tail_order, tail_labels)
}

fn with_labels<R>(f: &Factor, env: &mut Env, labels: &[String], body: impl FnOnce(&mut Env) -> R) -> R {
    let n = env.0.len();
    for (x, l) in f.binders.iter().zip(labels) {
        env.0.push((*x, l.clone()));
    }
    let r = body(env);
    env.0.truncate(n);
    r
}

/// Splits classes by the encoding seen from each binder until stable.
/// Class ids are ranks, so they only depend on the structure.
fn refine(f: &Factor, env: &mut Env, level: usize, mut classes: Vec<usize>) -> Vec<usize> {
    let k = classes.len();
    loop {
        let before = count_distinct(&classes);
        let mut sigs: Vec<(usize, String)> = Vec::with_capacity(k);
        for i in 0..k {
            let labels: Vec<String> = (0..k)
                .map(|j| if j == i { "m".to_string() } else { format!("c{}", classes[j]) })
                .collect();
            let (s, ..) = with_labels(f, env, &labels, |env| enc_body(f, env, level));
            sigs.push((classes[i], s));
        }
        let mut sorted = sigs.clone();
        sorted.sort();
        sorted.dedup();
        classes = sigs
            .iter()
            .map(|s| sorted.binary_search(s).expect("present"))
            .collect();
        if count_distinct(&classes) == before {
            return classes;
        }
    }
}

fn count_distinct(v: &[usize]) -> usize {
    let mut w = v.to_vec();
    w.sort_unstable();
    w.dedup();
    w.len()
}

fn search(f: &Factor, env: &mut Env, level: usize, classes: Vec<usize>) -> (String, LabeledFactor) {
    let classes = refine(f, env, level, classes);
    let k = classes.len();
    let target = (0..k).map(|c| classes.iter().filter(|&&x| x == c).count()).position(|n| n > 1);
    match target {
        None => {
            // classes are a permutation of 0..k
            let mut binder_order = vec![0; k];
            for (i, &c) in classes.iter().enumerate() {
                binder_order[c] = i;
            }
            let labels: Vec<String> = classes.iter().map(|c| format!("b{level}.{c}")).collect();
            let (s, arg, tail_order, tail_labels) =
                with_labels(f, env, &labels, |env| enc_body(f, env, level));
            let encoding = s.clone();
            (s, LabeledFactor { binder_order, arg, tail_order, tail_labels, encoding })
        }
        Some(c) => {
            let mut best: Option<(String, LabeledFactor)> = None;
            for m in (0..k).filter(|&i| classes[i] == c) {
                let split: Vec<usize> = (0..k)
                    .map(|i| 2 * classes[i] + usize::from(classes[i] == c && i != m))
                    .collect();
                let cand = search(f, env, level, split);
                if best.as_ref().is_none_or(|b| cand.0 < b.0) {
                    best = Some(cand);
                }
            }
            best.expect("class has members")
        }
    }
}

fn enc_factor(f: &Factor, env: &mut Env, level: usize) -> (String, LabeledFactor) {
    if f.binders.is_empty() {
        let (s, arg, tail_order, tail_labels) = enc_body(f, env, level);
        let encoding = s.clone();
        return (s, LabeledFactor { binder_order: Vec::new(), arg, tail_order, tail_labels, encoding });
    }
    search(f, env, level, vec![0; f.binders.len()])
}

pub fn canonical_labeling(cf: &CanonicalForm) -> Labeling {
    let (s, form) = enc_form(cf, &mut Env(Vec::new()), 0);
    Labeling { key: s.into_bytes(), form }
}

/// Equal exactly when the forms agree up to reordering factors and tails,
/// permuting each binder block, and renaming bound variables.
pub fn canonical_key(cf: &CanonicalForm) -> Vec<u8> {
    canonical_labeling(cf).key
}
