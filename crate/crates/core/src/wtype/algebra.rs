use std::collections::HashMap;

use super::poly::tuples;
use super::term::layer_code;
use super::{enumerate_wterms, Operator, Signature, WTerm};
use crate::error::{Error, Result};
use crate::hfcore::HfSet;

/// A `P_F`-algebra on a finite carrier: a value for each one-layer term over
/// the carrier. Missing entries make the algebra partial.
#[derive(Clone, Debug)]
pub struct Algebra {
    carrier: HfSet,
    structure: HashMap<HfSet, HfSet>,
}

impl Algebra {
    /// Tabulates `f` on every one-layer term over `carrier`; `None` leaves the
    /// entry undefined. Values outside the carrier are rejected.
    pub fn from_fn<F>(sig: &Signature, carrier: HfSet, f: F) -> Result<Self>
    where
        F: Fn(&Operator, &[HfSet]) -> Option<HfSet>,
    {
        let mut structure = HashMap::new();
        for op in sig.operators() {
            for args in tuples(carrier.members(), op.arity) {
                if let Some(v) = f(op, &args) {
                    if !carrier.contains(&v) {
                        return Err(Error::InvalidFunction(format!("{v} is outside the carrier")));
                    }
                    structure.insert(layer_code(&op.code, args), v);
                }
            }
        }
        Ok(Self { carrier, structure })
    }

    pub fn carrier(&self) -> &HfSet {
        &self.carrier
    }

    pub fn is_total(&self, sig: &Signature) -> bool {
        let n = self.carrier.len();
        let needed: usize = sig.operators().iter().map(|op| n.pow(op.arity as u32)).sum();
        self.structure.len() == needed
    }

    pub fn apply(&self, head: &HfSet, args: &[HfSet]) -> Result<HfSet> {
        let layer = layer_code(head, args.iter().cloned());
        self.structure
            .get(&layer)
            .cloned()
            .ok_or_else(|| Error::PartialAlgebra(layer.to_string()))
    }
}

/// The unique algebra map out of the terms, by structural recursion.
pub fn fold_wterm(algebra: &Algebra, t: &WTerm) -> Result<HfSet> {
    let args = t
        .children()
        .iter()
        .map(|c| fold_wterm(algebra, c))
        .collect::<Result<Vec<_>>>()?;
    algebra.apply(t.head(), &args)
}

/// Counts, by trying every function from the terms of height at most `depth`
/// to the carrier, those commuting with the algebra structure on those terms.
pub fn count_algebra_maps(sig: &Signature, algebra: &Algebra, depth: usize) -> usize {
    let terms = enumerate_wterms(sig, depth);
    let index: HashMap<&HfSet, usize> = terms.iter().enumerate().map(|(i, t)| (t.code(), i)).collect();
    let shapes: Vec<(&HfSet, Vec<usize>)> = terms
        .iter()
        .map(|t| (t.head(), t.children().iter().map(|c| index[c.code()]).collect()))
        .collect();
    let values = algebra.carrier().members();
    if values.is_empty() {
        return usize::from(terms.is_empty());
    }
    let mut assignment = vec![0usize; terms.len()];
    let mut count = 0;
    loop {
        let commutes = shapes.iter().enumerate().all(|(i, (head, children))| {
            let args: Vec<HfSet> = children.iter().map(|&c| values[assignment[c]].clone()).collect();
            algebra.apply(head, &args).is_ok_and(|v| v == values[assignment[i]])
        });
        count += usize::from(commutes);
        // next function in odometer order
        let mut k = 0;
        loop {
            if k == assignment.len() {
                return count;
            }
            assignment[k] += 1;
            if assignment[k] < values.len() {
                break;
            }
            assignment[k] = 0;
            k += 1;
        }
    }
}
