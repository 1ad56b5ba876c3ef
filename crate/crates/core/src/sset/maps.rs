use std::collections::HashMap;
use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use super::TruncatedSimplicialSet;
use crate::error::{Error, Result};
use crate::hfcore::{FinFunction, HfSet};

/// A dimension-preserving function on simplices commuting with the action.
///
/// `carrier[x]` is the index in `target` of the image of simplex `x` of `source`.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    source: Arc<TruncatedSimplicialSet>,
    target: Arc<TruncatedSimplicialSet>,
    carrier: Vec<usize>,
}

impl fmt::Debug for SimplicialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialMap({:?} -> {:?})", self.source, self.target)
    }
}

impl SimplicialMap {
    /// Validates dimensions and commutation with every generator.
    pub fn new(
        source: Arc<TruncatedSimplicialSet>,
        target: Arc<TruncatedSimplicialSet>,
        carrier: Vec<usize>,
    ) -> Result<Self> {
        let map = Self::new_unchecked(source, target, carrier)?;
        map.check()?;
        Ok(map)
    }

    pub(crate) fn new_unchecked(
        source: Arc<TruncatedSimplicialSet>,
        target: Arc<TruncatedSimplicialSet>,
        carrier: Vec<usize>,
    ) -> Result<Self> {
        if source.truncation() != target.truncation() {
            return Err(Error::Mismatch(format!(
                "truncations differ: {} vs {}",
                source.truncation(),
                target.truncation()
            )));
        }
        if carrier.len() != source.len() {
            return Err(Error::InvalidMap(format!(
                "carrier has {} entries for {} simplices",
                carrier.len(),
                source.len()
            )));
        }
        Ok(Self {
            source,
            target,
            carrier,
        })
    }

    fn check(&self) -> Result<()> {
        let (s, t) = (&*self.source, &*self.target);
        for x in 0..s.len() {
            let fx = self.carrier[x];
            if fx >= t.len() || t.dim(fx) != s.dim(x) {
                return Err(Error::InvalidMap(format!(
                    "{} is not sent to a simplex of dimension {}",
                    s.id(x),
                    s.dim(x)
                )));
            }
        }
        for x in 0..s.len() {
            let fx = self.carrier[x];
            for (i, &y) in s.faces_of(x).iter().enumerate() {
                if t.face(fx, i) != self.carrier[y] {
                    return Err(Error::InvalidMap(format!("does not commute with d_{i} at {}", s.id(x))));
                }
            }
            for (i, &y) in s.degeneracies_of(x).iter().enumerate() {
                if t.degeneracy(fx, i) != self.carrier[y] {
                    return Err(Error::InvalidMap(format!("does not commute with s_{i} at {}", s.id(x))));
                }
            }
        }
        Ok(())
    }

    /// Builds a map from identifier pairs.
    pub fn from_ids<I>(
        source: Arc<TruncatedSimplicialSet>,
        target: Arc<TruncatedSimplicialSet>,
        pairs: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (HfSet, HfSet)>,
    {
        let mut carrier = vec![usize::MAX; source.len()];
        for (a, b) in pairs {
            let x = source
                .index_of(&a)
                .ok_or_else(|| Error::InvalidMap(format!("{a} is not a simplex of the source")))?;
            let y = target
                .index_of(&b)
                .ok_or_else(|| Error::InvalidMap(format!("{b} is not a simplex of the target")))?;
            if carrier[x] != usize::MAX && carrier[x] != y {
                return Err(Error::InvalidMap(format!("{a} is sent twice")));
            }
            carrier[x] = y;
        }
        if let Some(x) = carrier.iter().position(|&y| y == usize::MAX) {
            return Err(Error::InvalidMap(format!("{} has no image", source.id(x))));
        }
        Self::new(source, target, carrier)
    }

    pub fn identity(x: Arc<TruncatedSimplicialSet>) -> Self {
        let carrier = (0..x.len()).collect();
        Self {
            source: x.clone(),
            target: x,
            carrier,
        }
    }

    pub fn source(&self) -> &Arc<TruncatedSimplicialSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<TruncatedSimplicialSet> {
        &self.target
    }

    pub fn carrier(&self) -> &[usize] {
        &self.carrier
    }

    pub fn apply(&self, x: usize) -> usize {
        self.carrier[x]
    }

    pub fn apply_id(&self, id: &HfSet) -> Option<&HfSet> {
        self.source.index_of(id).map(|x| self.target.id(self.carrier[x]))
    }

    /// `self` after `inner`.
    pub fn after(&self, inner: &SimplicialMap) -> Result<SimplicialMap> {
        if *inner.target != *self.source {
            return Err(Error::Mismatch("cannot compose: target and source differ".into()));
        }
        Ok(SimplicialMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            carrier: inner.carrier.iter().map(|&y| self.carrier[y]).collect(),
        })
    }

    pub fn is_monic(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.carrier.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    /// The carrier as a function between total sets.
    pub fn to_fin_function(&self) -> FinFunction {
        let dom = HfSet::from_members(self.source.ids().iter().cloned());
        let cod = HfSet::from_members(self.target.ids().iter().cloned());
        FinFunction::new(
            dom,
            cod,
            (0..self.source.len()).map(|x| (self.source.id(x).clone(), self.target.id(self.carrier[x]).clone())),
        )
        .expect("carrier is total")
    }

    /// The graph `{<x, f(x)>}` on identifiers.
    pub fn graph_hf(&self) -> HfSet {
        HfSet::from_members(
            (0..self.source.len())
                .map(|x| HfSet::pair(self.source.id(x).clone(), self.target.id(self.carrier[x]).clone())),
        )
    }
}

/// Constraints for a search over maps `source -> target`.
pub(crate) struct MapSearch<'a> {
    pub source: &'a TruncatedSimplicialSet,
    pub target: &'a TruncatedSimplicialSet,
    /// Prescribed images.
    pub fixed: Vec<Option<usize>>,
    /// When present, `over.0` is a map `target -> base` and `over.1[x]` the
    /// base simplex that the image of `x` must lie over.
    pub over: Option<(&'a SimplicialMap, Vec<usize>)>,
}

impl<'a> MapSearch<'a> {
    pub fn new(source: &'a TruncatedSimplicialSet, target: &'a TruncatedSimplicialSet) -> Self {
        Self {
            source,
            target,
            fixed: vec![None; source.len()],
            over: None,
        }
    }

    /// Visits every map satisfying the constraints, in a deterministic order.
    pub fn for_each<F>(&self, mut visit: F)
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let s = self.source;
        let t = self.target;
        if s.truncation() != t.truncation() {
            return;
        }
        // Candidates per (dim, base simplex) when lying over a base.
        let mut by_base: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        if let Some((right, _)) = &self.over {
            for y in 0..t.len() {
                by_base.entry((t.dim(y), right.apply(y))).or_default().push(y);
            }
        }
        let forced: Vec<Option<(usize, usize)>> = (0..s.len()).map(|x| s.degenerate_source(x)).collect();
        let mut assignment = vec![usize::MAX; s.len()];
        let all: Vec<Vec<usize>> = (0..=s.truncation()).map(|n| t.range(n).collect()).collect();

        struct Ctx<'b> {
            s: &'b TruncatedSimplicialSet,
            t: &'b TruncatedSimplicialSet,
            fixed: &'b [Option<usize>],
            over: Option<&'b (&'b SimplicialMap, Vec<usize>)>,
            by_base: &'b HashMap<(usize, usize), Vec<usize>>,
            forced: &'b [Option<(usize, usize)>],
            all: &'b [Vec<usize>],
        }

        fn fits(ctx: &Ctx, assignment: &[usize], x: usize, c: usize) -> bool {
            if let Some(f) = ctx.fixed[x] {
                if f != c {
                    return false;
                }
            }
            if let Some((right, bottom)) = ctx.over {
                if right.apply(c) != bottom[x] {
                    return false;
                }
            }
            ctx.s
                .faces_of(x)
                .iter()
                .enumerate()
                .all(|(i, &y)| ctx.t.face(c, i) == assignment[y])
        }

        fn go<F: FnMut(&[usize]) -> ControlFlow<()>>(
            ctx: &Ctx,
            x: usize,
            assignment: &mut Vec<usize>,
            visit: &mut F,
        ) -> ControlFlow<()> {
            if x == ctx.s.len() {
                // faces were checked on the way down; degeneracies are checked here
                let commutes = (0..ctx.s.len()).all(|z| {
                    ctx.s
                        .degeneracies_of(z)
                        .iter()
                        .enumerate()
                        .all(|(i, &w)| ctx.t.degeneracy(assignment[z], i) == assignment[w])
                });
                return if commutes {
                    visit(assignment)
                } else {
                    ControlFlow::Continue(())
                };
            }
            if let Some((y, i)) = ctx.forced[x] {
                let c = ctx.t.degeneracy(assignment[y], i);
                if !fits(ctx, assignment, x, c) {
                    return ControlFlow::Continue(());
                }
                assignment[x] = c;
                return go(ctx, x + 1, assignment, visit);
            }
            let n = ctx.s.dim(x);
            let candidates: &[usize] = if let Some(f) = ctx.fixed[x].as_ref() {
                std::slice::from_ref(f)
            } else if let Some((_, bottom)) = ctx.over {
                ctx.by_base.get(&(n, bottom[x])).map(|v| v.as_slice()).unwrap_or(&[])
            } else {
                &ctx.all[n]
            };
            for &c in candidates {
                if fits(ctx, assignment, x, c) {
                    assignment[x] = c;
                    go(ctx, x + 1, assignment, visit)?;
                }
            }
            assignment[x] = usize::MAX;
            ControlFlow::Continue(())
        }

        let ctx = Ctx {
            s,
            t,
            fixed: &self.fixed,
            over: self.over.as_ref(),
            by_base: &by_base,
            forced: &forced,
            all: &all,
        };
        let _ = go(&ctx, 0, &mut assignment, &mut visit);
    }

    pub fn first(&self) -> Option<Vec<usize>> {
        let mut found = None;
        self.for_each(|a| {
            found = Some(a.to_vec());
            ControlFlow::Break(())
        });
        found
    }

    pub fn count(&self) -> usize {
        let mut n = 0;
        self.for_each(|_| {
            n += 1;
            ControlFlow::Continue(())
        });
        n
    }
}

/// Every simplicial map `source -> target`, found by exhaustive search.
pub fn simplicial_maps(
    source: &Arc<TruncatedSimplicialSet>,
    target: &Arc<TruncatedSimplicialSet>,
) -> Vec<SimplicialMap> {
    let mut out = Vec::new();
    MapSearch::new(source, target).for_each(|a| {
        out.push(
            SimplicialMap::new(source.clone(), target.clone(), a.to_vec()).expect("search yields simplicial maps"),
        );
        ControlFlow::Continue(())
    });
    out
}

/// Number of simplicial maps `source -> target`.
pub fn count_maps(source: &TruncatedSimplicialSet, target: &TruncatedSimplicialSet) -> usize {
    MapSearch::new(source, target).count()
}
