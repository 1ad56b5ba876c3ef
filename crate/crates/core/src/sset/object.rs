use std::collections::HashMap;
use std::fmt;

use crate::delta::{DeltaMap, Generator};
use crate::error::{Error, Result};
use crate::hfcore::{FinFunction, HfSet};

/// A simplicial set cut off at dimension `truncation`, stored as a total set
/// of simplices with a projection to dimensions and an action of the
/// generating maps.
///
/// Every simplex is explicit, degenerate ones included. Simplices are kept
/// sorted by dimension and then by identifier, so equal objects have equal
/// tables.
#[derive(Clone)]
pub struct TruncatedSimplicialSet {
    truncation: usize,
    ids: Vec<HfSet>,
    dims: Vec<usize>,
    offsets: Vec<usize>,
    faces: Vec<Vec<usize>>,
    degeneracies: Vec<Vec<usize>>,
    index: HashMap<HfSet, usize>,
}

impl PartialEq for TruncatedSimplicialSet {
    fn eq(&self, other: &Self) -> bool {
        self.truncation == other.truncation
            && self.ids == other.ids
            && self.dims == other.dims
            && self.faces == other.faces
            && self.degeneracies == other.degeneracies
    }
}

impl Eq for TruncatedSimplicialSet {}

impl fmt::Debug for TruncatedSimplicialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: Vec<usize> = (0..=self.truncation).map(|n| self.count(n)).collect();
        write!(f, "TruncatedSimplicialSet(d={}, counts={counts:?})", self.truncation)
    }
}

impl TruncatedSimplicialSet {
    pub fn empty(truncation: usize) -> Self {
        SSetBuilder::new(truncation).build().expect("empty object")
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Number of simplices of all dimensions.
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, x: usize) -> &HfSet {
        &self.ids[x]
    }

    pub fn ids(&self) -> &[HfSet] {
        &self.ids
    }

    pub fn dim(&self, x: usize) -> usize {
        self.dims[x]
    }

    pub fn index_of(&self, id: &HfSet) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Indices of the `n`-simplices. Empty above the truncation.
    pub fn range(&self, n: usize) -> std::ops::Range<usize> {
        if n > self.truncation {
            return 0..0;
        }
        self.offsets[n]..self.offsets[n + 1]
    }

    pub fn count(&self, n: usize) -> usize {
        self.range(n).len()
    }

    /// Largest dimension holding a nondegenerate simplex, if any simplex exists.
    pub fn max_nondegenerate_dim(&self) -> Option<usize> {
        (0..self.len())
            .filter(|&x| !self.is_degenerate(x))
            .map(|x| self.dims[x])
            .max()
    }

    /// `d_i x`.
    pub fn face(&self, x: usize, i: usize) -> usize {
        self.faces[x][i]
    }

    /// All faces of `x`, in index order.
    pub fn faces_of(&self, x: usize) -> &[usize] {
        &self.faces[x]
    }

    /// `s_i x`; panics at the top dimension.
    pub fn degeneracy(&self, x: usize, i: usize) -> usize {
        self.degeneracies[x][i]
    }

    pub fn degeneracies_of(&self, x: usize) -> &[usize] {
        &self.degeneracies[x]
    }

    pub fn apply_generator(&self, g: Generator, x: usize) -> Result<usize> {
        if g.acts_on() != self.dims[x] {
            return Err(Error::Mismatch(format!(
                "{g} cannot act on the {}-simplex {}",
                self.dims[x], self.ids[x]
            )));
        }
        match g {
            Generator::Face { index, .. } => Ok(self.faces[x][index]),
            Generator::Degeneracy { index, dim } => {
                if dim >= self.truncation {
                    return Err(Error::Truncation {
                        dim: dim + 1,
                        truncation: self.truncation,
                    });
                }
                Ok(self.degeneracies[x][index])
            }
        }
    }

    /// Acts by a word of generators, applied left to right.
    pub fn act_word(&self, word: &[Generator], x: usize) -> Result<usize> {
        word.iter().try_fold(x, |acc, &g| self.apply_generator(g, acc))
    }

    /// `f^* x` for `f : [n] -> [m]` and an `m`-simplex `x`, computed through
    /// the epi-mono generator word of `f`.
    pub fn act(&self, f: &DeltaMap, x: usize) -> Result<usize> {
        if f.target() != self.dims[x] {
            return Err(Error::Mismatch(format!(
                "{f} cannot act on the {}-simplex {}",
                self.dims[x], self.ids[x]
            )));
        }
        if f.source() > self.truncation {
            return Err(Error::Truncation {
                dim: f.source(),
                truncation: self.truncation,
            });
        }
        self.act_word(&f.generator_word(), x)
    }

    /// A simplex is degenerate when it is some `s_i y`.
    pub fn is_degenerate(&self, x: usize) -> bool {
        self.degenerate_source(x).is_some()
    }

    /// Some `(y, i)` with `s_i y = x`.
    pub fn degenerate_source(&self, x: usize) -> Option<(usize, usize)> {
        let n = self.dims[x];
        if n == 0 {
            return None;
        }
        // if x = s_i y then y = d_i x
        (0..n).find_map(|i| {
            let y = self.faces[x][i];
            (self.degeneracies[y].get(i) == Some(&x)).then_some((y, i))
        })
    }

    pub fn nondegenerate(&self, n: usize) -> Vec<usize> {
        self.range(n).filter(|&x| !self.is_degenerate(x)).collect()
    }

    /// Restricts to a smaller truncation.
    pub fn truncate(&self, truncation: usize) -> Result<Self> {
        if truncation > self.truncation {
            return Err(Error::Truncation {
                dim: truncation,
                truncation: self.truncation,
            });
        }
        let keep: Vec<usize> = (0..self.len()).filter(|&x| self.dims[x] <= truncation).collect();
        let mut b = SSetBuilder::new(truncation);
        for &x in &keep {
            b.add_simplex(self.ids[x].clone(), self.dims[x])?;
        }
        for &x in &keep {
            b.set_faces(x, self.faces[x].clone());
            if self.dims[x] < truncation {
                b.set_degeneracies(x, self.degeneracies[x].clone());
            }
        }
        b.build()
    }

    /// The sub-object on the simplices satisfying `keep`, which must be closed
    /// under faces and degeneracies. Returns it with the old index of each new simplex.
    pub fn restrict<F: Fn(usize) -> bool>(&self, keep: F) -> Result<(Self, Vec<usize>)> {
        let kept: Vec<usize> = (0..self.len()).filter(|&x| keep(x)).collect();
        let mut new_index = vec![usize::MAX; self.len()];
        let mut b = SSetBuilder::new(self.truncation);
        for (i, &x) in kept.iter().enumerate() {
            new_index[x] = i;
            b.add_simplex(self.ids[x].clone(), self.dims[x])?;
        }
        let remap = |ys: &[usize], x: usize| -> Result<Vec<usize>> {
            ys.iter()
                .map(|&y| {
                    (new_index[y] != usize::MAX).then_some(new_index[y]).ok_or_else(|| {
                        Error::InvalidSimplicialSet(format!(
                            "subset is not closed: {} leads to {}",
                            self.ids[x], self.ids[y]
                        ))
                    })
                })
                .collect()
        };
        for (i, &x) in kept.iter().enumerate() {
            b.set_faces(i, remap(&self.faces[x], x)?);
            b.set_degeneracies(i, remap(&self.degeneracies[x], x)?);
        }
        let sub = b.build()?;
        // build() re-sorts, but a subsequence of a sorted list is sorted already
        Ok((sub, kept))
    }

    /// The projection to dimensions and the generator action, each as a
    /// function between finite sets.
    ///
    /// The action's domain is the set of pairs `<g, x>` where `g` is the graph
    /// of a generating map that can act on `x`.
    pub fn to_fin_functions(&self) -> (FinFunction, FinFunction) {
        let total = HfSet::from_members(self.ids.iter().cloned());
        let dims = HfSet::ordinal(self.truncation + 1);
        let proj = FinFunction::new(
            total.clone(),
            dims,
            (0..self.len()).map(|x| (self.ids[x].clone(), HfSet::ordinal(self.dims[x]))),
        )
        .expect("projection is total");
        let mut pairs = Vec::new();
        for x in 0..self.len() {
            let n = self.dims[x];
            for (i, &y) in self.faces[x].iter().enumerate() {
                let g = DeltaMap::face(n, i).unwrap().graph_hf();
                pairs.push((HfSet::pair(g, self.ids[x].clone()), self.ids[y].clone()));
            }
            for (i, &y) in self.degeneracies[x].iter().enumerate() {
                let g = DeltaMap::degeneracy(n, i).unwrap().graph_hf();
                pairs.push((HfSet::pair(g, self.ids[x].clone()), self.ids[y].clone()));
            }
        }
        let domain = HfSet::from_members(pairs.iter().map(|(k, _)| k.clone()));
        let action = FinFunction::new(domain, total, pairs).expect("action is a function");
        (proj, action)
    }
}

/// Incremental construction of a [`TruncatedSimplicialSet`].
///
/// Simplices are addressed by insertion index until [`SSetBuilder::build`]
/// sorts them into canonical order.
#[derive(Clone, Debug)]
pub struct SSetBuilder {
    truncation: usize,
    ids: Vec<HfSet>,
    dims: Vec<usize>,
    faces: Vec<Vec<usize>>,
    degeneracies: Vec<Vec<usize>>,
    index: HashMap<HfSet, usize>,
}

pub(crate) const UNSET: usize = usize::MAX;

impl SSetBuilder {
    pub fn new(truncation: usize) -> Self {
        Self {
            truncation,
            ids: Vec::new(),
            dims: Vec::new(),
            faces: Vec::new(),
            degeneracies: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn add_simplex(&mut self, id: HfSet, dim: usize) -> Result<usize> {
        if dim > self.truncation {
            return Err(Error::Truncation {
                dim,
                truncation: self.truncation,
            });
        }
        if self.index.contains_key(&id) {
            return Err(Error::InvalidSimplicialSet(format!("duplicate simplex {id}")));
        }
        let x = self.ids.len();
        self.index.insert(id.clone(), x);
        self.ids.push(id);
        self.dims.push(dim);
        self.faces.push(vec![UNSET; if dim == 0 { 0 } else { dim + 1 }]);
        self.degeneracies
            .push(vec![UNSET; if dim < self.truncation { dim + 1 } else { 0 }]);
        Ok(x)
    }

    pub fn index_of(&self, id: &HfSet) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn id(&self, x: usize) -> &HfSet {
        &self.ids[x]
    }

    pub fn dim(&self, x: usize) -> usize {
        self.dims[x]
    }

    pub fn face(&self, x: usize, i: usize) -> usize {
        self.faces[x][i]
    }

    pub fn degeneracy(&self, x: usize, i: usize) -> usize {
        self.degeneracies[x][i]
    }

    pub fn set_faces(&mut self, x: usize, faces: Vec<usize>) {
        self.faces[x] = faces;
    }

    pub fn set_degeneracies(&mut self, x: usize, degeneracies: Vec<usize>) {
        self.degeneracies[x] = degeneracies;
    }

    pub fn set_action(&mut self, g: Generator, x: usize, y: usize) -> Result<()> {
        if g.acts_on() != self.dims[x] {
            return Err(Error::InvalidSimplicialSet(format!(
                "{g} cannot act on the {}-simplex {}",
                self.dims[x], self.ids[x]
            )));
        }
        let slot = match g {
            Generator::Face { index, .. } => self.faces[x].get_mut(index),
            Generator::Degeneracy { index, .. } => self.degeneracies[x].get_mut(index),
        }
        .ok_or_else(|| Error::Truncation {
            dim: g.lands_in(),
            truncation: self.truncation,
        })?;
        if *slot != UNSET && *slot != y {
            return Err(Error::InvalidSimplicialSet(format!(
                "{g} on {} given twice",
                self.ids[x]
            )));
        }
        *slot = y;
        Ok(())
    }

    /// Acts by a word on simplices whose tables are already filled.
    pub fn act_word(&self, word: &[Generator], x: usize) -> usize {
        word.iter().fold(x, |acc, g| match *g {
            Generator::Face { index, .. } => self.faces[acc][index],
            Generator::Degeneracy { index, .. } => self.degeneracies[acc][index],
        })
    }

    /// Checks that every table entry is present and lands in the right
    /// dimension, then sorts into canonical order.
    pub fn build(self) -> Result<TruncatedSimplicialSet> {
        let n = self.ids.len();
        for x in 0..n {
            let dim = self.dims[x];
            for (i, &y) in self.faces[x].iter().enumerate() {
                let g = Generator::Face { dim, index: i };
                if y == UNSET {
                    return Err(Error::InvalidSimplicialSet(format!("missing {g} on {}", self.ids[x])));
                }
                if self.dims[y] + 1 != dim {
                    return Err(Error::InvalidSimplicialSet(format!(
                        "{g} on {} lands in dimension {}",
                        self.ids[x], self.dims[y]
                    )));
                }
            }
            for (i, &y) in self.degeneracies[x].iter().enumerate() {
                let g = Generator::Degeneracy { dim, index: i };
                if y == UNSET {
                    return Err(Error::InvalidSimplicialSet(format!("missing {g} on {}", self.ids[x])));
                }
                if self.dims[y] != dim + 1 {
                    return Err(Error::InvalidSimplicialSet(format!(
                        "{g} on {} lands in dimension {}",
                        self.ids[x], self.dims[y]
                    )));
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            self.dims[a]
                .cmp(&self.dims[b])
                .then_with(|| self.ids[a].cmp(&self.ids[b]))
        });
        let mut rank = vec![0; n];
        for (r, &x) in order.iter().enumerate() {
            rank[x] = r;
        }
        let ids: Vec<HfSet> = order.iter().map(|&x| self.ids[x].clone()).collect();
        let dims: Vec<usize> = order.iter().map(|&x| self.dims[x]).collect();
        let faces = order
            .iter()
            .map(|&x| self.faces[x].iter().map(|&y| rank[y]).collect())
            .collect();
        let degeneracies = order
            .iter()
            .map(|&x| self.degeneracies[x].iter().map(|&y| rank[y]).collect())
            .collect();
        let mut offsets = vec![0; self.truncation + 2];
        for &d in &dims {
            offsets[d + 1] += 1;
        }
        for k in 1..offsets.len() {
            offsets[k] += offsets[k - 1];
        }
        let index = ids.iter().cloned().enumerate().map(|(i, id)| (id, i)).collect();
        Ok(TruncatedSimplicialSet {
            truncation: self.truncation,
            ids,
            dims,
            offsets,
            faces,
            degeneracies,
            index,
        })
    }
}

impl TruncatedSimplicialSet {
    /// Reopens the object for extension; indices are preserved.
    pub fn to_builder(&self) -> SSetBuilder {
        SSetBuilder {
            truncation: self.truncation,
            ids: self.ids.clone(),
            dims: self.dims.clone(),
            faces: self.faces.clone(),
            degeneracies: self.degeneracies.clone(),
            index: self.index.clone(),
        }
    }
}
