use std::collections::BTreeSet;
use std::fmt;

use super::term::layer_code;
use super::{Signature, WTerm};
use crate::hfcore::{FinFunction, HfSet};

/// Every `k`-tuple of members of `x`, in lexicographic order.
pub(crate) fn tuples(x: &[HfSet], k: usize) -> Vec<Vec<HfSet>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                x.iter().map(move |a| {
                    let mut t = t.clone();
                    t.push(a.clone());
                    t
                })
            })
            .collect();
    }
    out
}

/// `P_F(x) = Σ_a x^{arity(a)}`, as the set of one-layer terms
/// `<a, seq(x_1, ..., x_k)>`.
pub fn poly_apply(sig: &Signature, x: &HfSet) -> HfSet {
    HfSet::from_members(sig.operators().iter().flat_map(|op| {
        tuples(x.members(), op.arity)
            .into_iter()
            .map(|args| layer_code(&op.code, args))
    }))
}

/// `P^0(∅) ⊆ P^1(∅) ⊆ ... ⊆ P^n(∅)`.
#[derive(Clone, Debug)]
pub struct Iterates {
    pub stages: Vec<HfSet>,
    /// `inclusions[i] : P^i(∅) -> P^{i+1}(∅)`.
    pub inclusions: Vec<FinFunction>,
    /// The first `i` with `P^i(∅) = P^{i+1}(∅)`, when the signature forces one.
    pub stabilizes_at: Option<usize>,
}

impl Iterates {
    pub fn sizes(&self) -> Vec<usize> {
        self.stages.iter().map(|s| s.len()).collect()
    }
}

/// Iterates the polynomial functor `n` times from the empty set.
///
/// Since the one-layer terms over a set of term codes are again term codes,
/// each inclusion is the literal subset inclusion.
pub fn poly_iterate(sig: &Signature, n: usize) -> Iterates {
    let mut stages = vec![HfSet::empty()];
    let mut inclusions = Vec::new();
    for i in 0..n {
        let next = poly_apply(sig, &stages[i]);
        let inclusion =
            FinFunction::from_fn(stages[i].clone(), next.clone(), |t| t.clone()).expect("iterates are increasing");
        inclusions.push(inclusion);
        stages.push(next);
    }
    let stabilizes_at = if sig.constants().next().is_none() {
        Some(0)
    } else if sig.max_arity() == 0 {
        Some(1)
    } else {
        None
    };
    Iterates {
        stages,
        inclusions,
        stabilizes_at,
    }
}

/// All terms of height at most `depth`, sorted by code, built as trees.
pub fn enumerate_wterms(sig: &Signature, depth: usize) -> Vec<WTerm> {
    let mut level: Vec<WTerm> = Vec::new();
    for _ in 0..depth {
        let mut next = BTreeSet::new();
        for op in sig.operators() {
            let mut partial: Vec<Vec<WTerm>> = vec![Vec::new()];
            for _ in 0..op.arity {
                partial = partial
                    .into_iter()
                    .flat_map(|t| {
                        level.iter().map(move |c| {
                            let mut t = t.clone();
                            t.push(c.clone());
                            t
                        })
                    })
                    .collect();
            }
            next.extend(
                partial
                    .into_iter()
                    .map(|args| WTerm::new_unchecked(op.code.clone(), args)),
            );
        }
        level = next.into_iter().collect();
    }
    level
}

/// Finiteness data for the terms up to a depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KonigReport {
    /// `counts[h - 1]` terms of height exactly `h`.
    pub counts: Vec<usize>,
    /// `|P^h(∅)|` for `h = 1..=depth`.
    pub bounds: Vec<usize>,
    pub max_height: usize,
    pub max_size: usize,
    /// Every term has finite height at most the depth, and the cumulative
    /// counts stay within the iterate sizes.
    pub within_bounds: bool,
}

impl fmt::Display for KonigReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (h, (c, b)) in self.counts.iter().zip(&self.bounds).enumerate() {
            writeln!(f, "height {}: {c} terms (cumulative bound {b})", h + 1)?;
        }
        writeln!(f, "max height: {}", self.max_height)?;
        writeln!(f, "max size: {}", self.max_size)?;
        write!(f, "within bounds: {}", self.within_bounds)
    }
}

pub fn konig_report(sig: &Signature, depth: usize) -> KonigReport {
    let terms = enumerate_wterms(sig, depth);
    let iterates = poly_iterate(sig, depth);
    let max_height = terms.iter().map(|t| t.height()).max().unwrap_or(0);
    let mut counts = vec![0; max_height];
    for t in &terms {
        counts[t.height() - 1] += 1;
    }
    let bounds: Vec<usize> = iterates.sizes()[1..=max_height].to_vec();
    let mut cumulative = 0;
    let within_bounds = max_height <= depth
        && counts.iter().zip(&bounds).all(|(c, b)| {
            cumulative += c;
            cumulative <= *b
        });
    KonigReport {
        counts,
        bounds,
        max_height,
        max_size: terms.iter().map(|t| t.size()).max().unwrap_or(0),
        within_bounds,
    }
}
