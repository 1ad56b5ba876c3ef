use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hfcore::HfSet;
use crate::sset::{SSetBuilder, SimplicialMap, TruncatedSimplicialSet};

/// The selected pullback of `h : z -> y` along `f : x -> y`.
///
/// Its `n`-simplices are the pairs `(a, c)` of `n`-simplices with
/// `f(a) = h(c)`. They are labelled `#0, #1, ...` in order of dimension, then
/// of `a`, then of `c`, and the action is taken componentwise.
#[derive(Clone, Debug)]
pub struct SSetPullback {
    pub object: Arc<TruncatedSimplicialSet>,
    /// `object -> x`.
    pub leg: SimplicialMap,
    /// `object -> z`.
    pub top: SimplicialMap,
    /// The pair of simplex indices behind each simplex.
    pub pairs: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

impl SSetPullback {
    pub fn index_of(&self, a: usize, c: usize) -> Option<usize> {
        self.index.get(&(a, c)).copied()
    }

    /// The unique map `w -> object` with `leg ∘ u = p` and `top ∘ u = q`.
    pub fn factor(&self, p: &SimplicialMap, q: &SimplicialMap) -> Result<SimplicialMap> {
        if p.source() != q.source() {
            return Err(Error::Mismatch("cone legs have different sources".into()));
        }
        let carrier = (0..p.source().len())
            .map(|s| {
                self.index_of(p.apply(s), q.apply(s))
                    .ok_or_else(|| Error::Mismatch(format!("{} does not land in the pullback", p.source().id(s))))
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialMap::new(p.source().clone(), self.object.clone(), carrier)
    }
}

pub fn selected_pullback_sset(f: &SimplicialMap, h: &SimplicialMap) -> Result<SSetPullback> {
    let y = f.target();
    if **y != **h.target() {
        return Err(Error::Mismatch("maps have different targets".into()));
    }
    let (x, z) = (f.source(), h.source());
    let d = y.truncation();
    let mut over: HashMap<usize, Vec<usize>> = HashMap::new();
    for c in 0..z.len() {
        over.entry(h.apply(c)).or_default().push(c);
    }
    let mut pairs = Vec::new();
    for n in 0..=d {
        for a in x.range(n) {
            if let Some(cs) = over.get(&f.apply(a)) {
                pairs.extend(cs.iter().map(|&c| (a, c)));
            }
        }
    }
    let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut b = SSetBuilder::new(d);
    for (i, &(a, _)) in pairs.iter().enumerate() {
        b.add_simplex(HfSet::ordinal(i), x.dim(a))?;
    }
    for (i, &(a, c)) in pairs.iter().enumerate() {
        let faces = (0..x.faces_of(a).len())
            .map(|k| index[&(x.face(a, k), z.face(c, k))])
            .collect();
        let degens = (0..x.degeneracies_of(a).len())
            .map(|k| index[&(x.degeneracy(a, k), z.degeneracy(c, k))])
            .collect();
        b.set_faces(i, faces);
        b.set_degeneracies(i, degens);
    }
    // labels already follow dimension order, so build() keeps the indices
    let object = Arc::new(b.build()?);
    let leg = SimplicialMap::new_unchecked(object.clone(), x.clone(), pairs.iter().map(|p| p.0).collect())?;
    let top = SimplicialMap::new_unchecked(object.clone(), z.clone(), pairs.iter().map(|p| p.1).collect())?;
    Ok(SSetPullback {
        object,
        leg,
        top,
        pairs,
        index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{coproduct_sset, representable, validate_presheaf};

    fn to_point(x: &Arc<TruncatedSimplicialSet>) -> SimplicialMap {
        let pt = Arc::new(representable(0, x.truncation()).unwrap());
        let carrier = (0..x.len()).map(|s| x.dim(s)).collect();
        SimplicialMap::new(x.clone(), pt, carrier).unwrap()
    }

    #[test]
    fn two_points_squared() {
        let pt = Arc::new(representable(0, 3).unwrap());
        let two = coproduct_sset(&pt, &pt).unwrap().object;
        let p = to_point(&two);
        let pb = selected_pullback_sset(&p, &p).unwrap();
        assert_eq!(pb.object.count(0), 4);
        assert!(validate_presheaf(&pb.object).is_empty());
        let diag = pb
            .factor(
                &SimplicialMap::identity(two.clone()),
                &SimplicialMap::identity(two.clone()),
            )
            .unwrap();
        assert_eq!(diag.carrier().iter().filter(|&&t| pb.object.dim(t) == 0).count(), 2);
    }

    #[test]
    fn along_identity_and_disjoint() {
        let d1 = Arc::new(representable(1, 3).unwrap());
        let id = SimplicialMap::identity(d1.clone());
        let pb = selected_pullback_sset(&id, &id).unwrap();
        assert!(pb.leg.is_monic());
        assert_eq!(pb.object.len(), d1.len());

        let pt = Arc::new(representable(0, 3).unwrap());
        let c = coproduct_sset(&pt, &pt).unwrap();
        let pb = selected_pullback_sset(&c.left, &c.right).unwrap();
        assert!(pb.object.is_empty());
    }
}
