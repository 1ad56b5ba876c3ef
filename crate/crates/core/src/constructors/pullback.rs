use crate::error::{Error, Result};
use crate::hfcore::{canonical_over_base, FinFunction, HfSet};

/// The selected pullback of `h : C -> B` along `f : A -> B`.
///
/// The apex is an ordinal. Its `i`-th element stands for the `i`-th pair
/// `(a, c)` with `f(a) = h(c)` in lexicographic order, which groups labels by
/// fiber of `leg` in the order of `A`, so `leg` is the canonical function over
/// `A` with the fiber cardinalities `|h⁻¹(f(a))|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackCone {
    pub apex: HfSet,
    /// `apex -> A`.
    pub leg: FinFunction,
    /// `apex -> C`.
    pub top: FinFunction,
    /// The pair named by each apex label.
    pub pairs: Vec<(HfSet, HfSet)>,
}

impl PullbackCone {
    /// The unique map `X -> apex` with `leg ∘ u = p` and `top ∘ u = q`.
    pub fn factor(&self, p: &FinFunction, q: &FinFunction) -> Result<FinFunction> {
        if p.domain() != q.domain() {
            return Err(Error::Mismatch("cone legs have different domains".into()));
        }
        FinFunction::new(
            p.domain().clone(),
            self.apex.clone(),
            p.pairs()
                .map(|(x, a)| {
                    let c = q.apply(x).expect("same domain");
                    let i = self
                        .pairs
                        .binary_search_by(|(a2, c2)| a2.cmp(a).then_with(|| c2.cmp(c)))
                        .map_err(|_| Error::Mismatch(format!("{x} does not land in the pullback")))?;
                    Ok((x.clone(), HfSet::ordinal(i)))
                })
                .collect::<Result<Vec<_>>>()?,
        )
    }
}

pub fn selected_pullback(f: &FinFunction, h: &FinFunction) -> Result<PullbackCone> {
    if f.codomain() != h.codomain() {
        return Err(Error::Mismatch(format!(
            "codomains differ: {} vs {}",
            f.codomain(),
            h.codomain()
        )));
    }
    let mut pairs = Vec::new();
    for (a, b) in f.pairs() {
        for (c, b2) in h.pairs() {
            if b == b2 {
                pairs.push((a.clone(), c.clone()));
            }
        }
    }
    let apex = HfSet::ordinal(pairs.len());
    let label = |i: usize| HfSet::ordinal(i);
    let first = FinFunction::new(
        apex.clone(),
        f.domain().clone(),
        pairs.iter().enumerate().map(|(i, (a, _))| (label(i), a.clone())),
    )?;
    let leg = canonical_over_base(&first);
    debug_assert_eq!(leg, first);
    let top = FinFunction::new(
        apex.clone(),
        h.domain().clone(),
        pairs.iter().enumerate().map(|(i, (_, c))| (label(i), c.clone())),
    )?;
    Ok(PullbackCone { apex, leg, top, pairs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(n: usize) -> HfSet {
        HfSet::ordinal(n)
    }

    fn func(dom: usize, cod: usize, values: &[usize]) -> FinFunction {
        FinFunction::new(
            ord(dom),
            ord(cod),
            values.iter().enumerate().map(|(i, &v)| (ord(i), ord(v))),
        )
        .unwrap()
    }

    #[test]
    fn along_identity() {
        let h = func(3, 2, &[1, 0, 1]);
        let cone = selected_pullback(&FinFunction::identity(&ord(2)), &h).unwrap();
        assert_eq!(cone.leg, canonical_over_base(&h));
        let cone = selected_pullback(&h, &FinFunction::identity(&ord(2))).unwrap();
        assert_eq!(cone.apex, ord(3));
        assert_eq!(cone.leg, FinFunction::identity(&ord(3)));
    }

    #[test]
    fn constant_square() {
        let f = func(2, 1, &[0, 0]);
        let h = func(1, 1, &[0]);
        let cone = selected_pullback(&f, &h).unwrap();
        assert_eq!(cone.apex.len(), 2);
        assert!(cone.leg.is_injective());
        assert_eq!(cone.leg.image(), ord(2));
        let empty = selected_pullback(&f, &FinFunction::new(ord(0), ord(1), []).unwrap()).unwrap();
        assert!(empty.apex.is_empty() && empty.leg.domain().is_empty());
        assert!(selected_pullback(&f, &func(1, 2, &[0])).is_err());
    }

    #[test]
    fn factorization_is_unique_map() {
        let f = func(2, 2, &[0, 1]);
        let h = func(3, 2, &[1, 1, 0]);
        let cone = selected_pullback(&f, &h).unwrap();
        let p = func(1, 2, &[1]);
        let q = func(1, 3, &[0]);
        let u = cone.factor(&p, &q).unwrap();
        assert_eq!(cone.leg.after(&u).unwrap(), p);
        assert_eq!(cone.top.after(&u).unwrap(), q);
        assert!(cone.factor(&func(1, 2, &[0]), &q).is_err());
    }
}
