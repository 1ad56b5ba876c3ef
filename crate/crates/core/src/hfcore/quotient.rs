use super::HfSet;
use crate::error::{Error, Result};

/// Quotient of `a` by an equivalence relation, keeping the member of each
/// class that is least in the Ackermann order.
///
/// The relation is checked for reflexivity, symmetry and transitivity on the
/// members of `a` first; a failure names a witness.
pub fn quotient_min<R>(a: &HfSet, related: R) -> Result<HfSet>
where
    R: Fn(&HfSet, &HfSet) -> bool,
{
    let xs = a.members();
    let n = xs.len();
    let table: Vec<Vec<bool>> = xs.iter().map(|x| xs.iter().map(|y| related(x, y)).collect()).collect();
    for i in 0..n {
        if !table[i][i] {
            return Err(Error::NotEquivalence {
                property: "reflexive",
                witness: format!("{} is not related to itself", xs[i]),
            });
        }
    }
    for i in 0..n {
        for j in 0..n {
            if table[i][j] && !table[j][i] {
                return Err(Error::NotEquivalence {
                    property: "symmetric",
                    witness: format!("{} ~ {} but not conversely", xs[i], xs[j]),
                });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !table[i][j] {
                continue;
            }
            for k in 0..n {
                if table[j][k] && !table[i][k] {
                    return Err(Error::NotEquivalence {
                        property: "transitive",
                        witness: format!("{} ~ {} ~ {} but not {} ~ {}", xs[i], xs[j], xs[k], xs[i], xs[k]),
                    });
                }
            }
        }
    }
    // Members are visited in increasing order, so the first member seen in
    // each class is its minimum.
    let mut reps: Vec<usize> = Vec::new();
    for (i, x) in xs.iter().enumerate() {
        if !reps.iter().any(|&r| related(&xs[r], x)) {
            reps.push(i);
        }
    }
    Ok(HfSet::from_members(reps.into_iter().map(|i| xs[i].clone())))
}
