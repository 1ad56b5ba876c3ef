use std::fmt;

use super::HfSet;
use crate::error::{Error, Result};

/// A function between finite sets, coded as the triple `<domain, graph, codomain>`.
///
/// `values[i]` is the image of the `i`-th member of `domain` in canonical order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinFunction {
    domain: HfSet,
    codomain: HfSet,
    values: Vec<HfSet>,
}

impl FinFunction {
    /// Builds a function from its graph pairs. Every member of `domain` must
    /// receive exactly one value in `codomain`.
    pub fn new<I>(domain: HfSet, codomain: HfSet, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (HfSet, HfSet)>,
    {
        let mut values: Vec<Option<HfSet>> = vec![None; domain.len()];
        for (x, y) in pairs {
            let i = domain
                .position(&x)
                .ok_or_else(|| Error::InvalidFunction(format!("{x} is not in the domain")))?;
            if !codomain.contains(&y) {
                return Err(Error::InvalidFunction(format!("{y} is not in the codomain")));
            }
            match &values[i] {
                Some(prev) if *prev != y => {
                    return Err(Error::InvalidFunction(format!("{x} has two values {prev} and {y}")))
                }
                _ => values[i] = Some(y),
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::InvalidFunction(format!("{} has no value", domain.members()[i]))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            domain,
            codomain,
            values,
        })
    }

    pub fn from_fn(domain: HfSet, codomain: HfSet, f: impl Fn(&HfSet) -> HfSet) -> Result<Self> {
        let pairs: Vec<_> = domain.members().iter().map(|x| (x.clone(), f(x))).collect();
        Self::new(domain, codomain, pairs)
    }

    /// Builds a function from a set of Kuratowski pairs.
    pub fn from_graph(domain: HfSet, codomain: HfSet, graph: &HfSet) -> Result<Self> {
        let pairs = graph
            .members()
            .iter()
            .map(|p| {
                p.as_pair()
                    .ok_or_else(|| Error::InvalidFunction(format!("{p} is not a pair")))
            })
            .collect::<Result<Vec<_>>>()?;
        if pairs.len() != domain.len() {
            return Err(Error::InvalidFunction(format!(
                "graph has {} pairs for a domain of size {}",
                pairs.len(),
                domain.len()
            )));
        }
        Self::new(domain, codomain, pairs)
    }

    /// Decodes the triple `<domain, <graph, codomain>>`.
    pub fn decode(code: &HfSet) -> Result<Self> {
        let bad = || Error::InvalidFunction(format!("{code} is not a coded function"));
        let (domain, rest) = code.as_pair().ok_or_else(bad)?;
        let (graph, codomain) = rest.as_pair().ok_or_else(bad)?;
        Self::from_graph(domain, codomain, &graph)
    }

    pub fn identity(set: &HfSet) -> Self {
        Self {
            domain: set.clone(),
            codomain: set.clone(),
            values: set.members().to_vec(),
        }
    }

    pub fn domain(&self) -> &HfSet {
        &self.domain
    }

    pub fn codomain(&self) -> &HfSet {
        &self.codomain
    }

    /// Images of the domain members, in domain order.
    pub fn values(&self) -> &[HfSet] {
        &self.values
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&HfSet, &HfSet)> {
        self.domain.members().iter().zip(&self.values)
    }

    pub fn apply(&self, x: &HfSet) -> Option<&HfSet> {
        self.domain.position(x).map(|i| &self.values[i])
    }

    pub fn graph(&self) -> HfSet {
        HfSet::from_members(self.pairs().map(|(x, y)| HfSet::pair(x.clone(), y.clone())))
    }

    /// The triple `<domain, <graph, codomain>>`.
    pub fn encode(&self) -> HfSet {
        HfSet::pair(self.domain.clone(), HfSet::pair(self.graph(), self.codomain.clone()))
    }

    /// `self` after `inner`, i.e. `x -> self(inner(x))`.
    pub fn after(&self, inner: &FinFunction) -> Result<FinFunction> {
        if inner.codomain != self.domain {
            return Err(Error::Mismatch(format!(
                "cannot compose: codomain {} differs from domain {}",
                inner.codomain, self.domain
            )));
        }
        let values = inner
            .values
            .iter()
            .map(|y| self.apply(y).expect("codomain checked").clone())
            .collect();
        Ok(FinFunction {
            domain: inner.domain.clone(),
            codomain: self.codomain.clone(),
            values,
        })
    }

    pub fn fiber(&self, y: &HfSet) -> HfSet {
        HfSet::from_members(self.pairs().filter(|(_, v)| *v == y).map(|(x, _)| x.clone()))
    }

    pub fn fiber_size(&self, y: &HfSet) -> usize {
        self.values.iter().filter(|v| *v == y).count()
    }

    /// Fiber cardinalities, listed in codomain order.
    pub fn fiber_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.codomain.len()];
        for v in &self.values {
            sizes[self.codomain.position(v).expect("value in codomain")] += 1;
        }
        sizes
    }

    pub fn image(&self) -> HfSet {
        HfSet::from_members(self.values.iter().cloned())
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.values.len()
    }

    /// Restriction to a subset of the domain.
    pub fn restrict(&self, subset: &HfSet) -> Result<FinFunction> {
        let pairs = subset
            .members()
            .iter()
            .map(|x| {
                self.apply(x)
                    .map(|y| (x.clone(), y.clone()))
                    .ok_or_else(|| Error::Mismatch(format!("{x} is not in the domain")))
            })
            .collect::<Result<Vec<_>>>()?;
        FinFunction::new(subset.clone(), self.codomain.clone(), pairs)
    }

    /// Replaces the domain by its image under a bijection `relabel`.
    pub fn relabel(&self, relabel: &FinFunction) -> Result<FinFunction> {
        if relabel.domain != self.domain || !relabel.is_injective() {
            return Err(Error::Mismatch("relabeling must be injective on the domain".into()));
        }
        FinFunction::new(
            relabel.image(),
            self.codomain.clone(),
            relabel.values.iter().cloned().zip(self.values.iter().cloned()),
        )
    }
}

impl fmt::Display for FinFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.encode())
    }
}

impl fmt::Debug for FinFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} : {}", self.domain, self.codomain, self.graph())
    }
}

/// The fixed representative of the isomorphism class of `f` over its codomain.
///
/// The domain becomes the ordinal `|domain(f)|`; labels are handed out fiber
/// by fiber, with fibers taken in codomain order. The result depends only on
/// the codomain and the fiber cardinalities of `f`.
pub fn canonical_over_base(f: &FinFunction) -> FinFunction {
    let sizes = f.fiber_sizes();
    let values: Vec<HfSet> = f
        .codomain
        .members()
        .iter()
        .zip(&sizes)
        .flat_map(|(b, &k)| std::iter::repeat_n(b.clone(), k))
        .collect();
    FinFunction {
        domain: HfSet::ordinal(values.len()),
        codomain: f.codomain.clone(),
        values,
    }
}

/// Brute-force minimum, under the Ackermann order of encoded triples, over all
/// relabelings of the domain of `f` by distinct members of `pool`.
///
/// Exponential in `|domain(f)|`; meant for domains of at most five elements.
pub fn min_iso_oracle(f: &FinFunction, pool: &HfSet) -> Result<FinFunction> {
    let n = f.domain.len();
    if pool.len() < n {
        return Err(Error::PoolTooSmall {
            pool: pool.len(),
            needed: n,
        });
    }
    let labels = pool.members();
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; labels.len()];
    let mut best: Option<(HfSet, FinFunction)> = None;

    fn search(
        f: &FinFunction,
        labels: &[HfSet],
        chosen: &mut Vec<usize>,
        used: &mut [bool],
        best: &mut Option<(HfSet, FinFunction)>,
    ) {
        if chosen.len() == f.domain.len() {
            let candidate = FinFunction::new(
                HfSet::from_members(chosen.iter().map(|&i| labels[i].clone())),
                f.codomain.clone(),
                chosen.iter().map(|&i| labels[i].clone()).zip(f.values.iter().cloned()),
            )
            .expect("injective relabeling of a valid function");
            let code = candidate.encode();
            if best.as_ref().is_none_or(|(b, _)| code < *b) {
                *best = Some((code, candidate));
            }
            return;
        }
        for i in 0..labels.len() {
            if !used[i] {
                used[i] = true;
                chosen.push(i);
                search(f, labels, chosen, used, best);
                chosen.pop();
                used[i] = false;
            }
        }
    }

    search(f, labels, &mut chosen, &mut used, &mut best);
    Ok(best.expect("at least one relabeling").1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(n: usize) -> HfSet {
        HfSet::ordinal(n)
    }

    #[test]
    fn rejects_partial_and_multivalued() {
        let dom = ord(2);
        let cod = ord(1);
        assert!(FinFunction::new(dom.clone(), cod.clone(), [(ord(0), ord(0))]).is_err());
        assert!(FinFunction::new(ord(1), ord(2), [(ord(0), ord(0)), (ord(0), ord(1))]).is_err());
        assert!(FinFunction::new(ord(1), cod, [(ord(0), ord(5))]).is_err());
    }

    #[test]
    fn encode_decode() {
        let f = FinFunction::from_fn(ord(3), ord(2), |x| if x.len() % 2 == 0 { ord(0) } else { ord(1) }).unwrap();
        assert_eq!(FinFunction::decode(&f.encode()).unwrap(), f);
        assert_eq!(f.fiber(&ord(0)), HfSet::from_members([ord(0), ord(2)]));
        assert_eq!(f.fiber_sizes(), vec![2, 1]);
    }

    #[test]
    fn canonical_of_singleton_identity() {
        let one = HfSet::singleton(HfSet::empty());
        let id = FinFunction::identity(&one);
        let c = canonical_over_base(&id);
        assert_eq!(c.domain(), &ord(1));
        assert_eq!(c.apply(&ord(0)), Some(&HfSet::empty()));
    }

    #[test]
    fn canonical_relabels_five_seven() {
        let b = ord(9);
        let f = FinFunction::new(
            HfSet::from_members([ord(5), ord(7)]),
            HfSet::singleton(b.clone()),
            [(ord(5), b.clone()), (ord(7), b.clone())],
        )
        .unwrap();
        let c = canonical_over_base(&f);
        assert_eq!(c.domain(), &ord(2));
        assert!(c.values().iter().all(|v| *v == b));
        assert_eq!(canonical_over_base(&c), c);
    }

    #[test]
    fn oracle_pool_too_small() {
        let f = FinFunction::identity(&ord(3));
        assert_eq!(
            min_iso_oracle(&f, &ord(2)),
            Err(Error::PoolTooSmall { pool: 2, needed: 3 })
        );
    }

    #[test]
    fn oracle_singleton_picks_zero() {
        let b = ord(4);
        let f = FinFunction::new(HfSet::singleton(ord(2)), HfSet::singleton(b.clone()), [(ord(2), b)]).unwrap();
        let m = min_iso_oracle(&f, &ord(3)).unwrap();
        assert_eq!(m.domain(), &ord(1));
    }
}
