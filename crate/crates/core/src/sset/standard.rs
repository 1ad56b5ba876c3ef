use std::fmt;
use std::sync::Arc;

use super::{SSetBuilder, SimplicialMap, TruncatedSimplicialSet};
use crate::delta::{monotone_maps, DeltaMap};
use crate::error::{Error, Result};
use crate::hfcore::HfSet;

/// Builds a sub-object of `Δ[n]` from the monotone maps accepted by `keep`.
/// Simplices are named by the graph of their map.
fn simplex_subobject<F: Fn(&DeltaMap) -> bool>(n: usize, truncation: usize, keep: F) -> Result<TruncatedSimplicialSet> {
    let mut b = SSetBuilder::new(truncation);
    let mut maps = Vec::new();
    for m in 0..=truncation {
        for alpha in monotone_maps(m, n) {
            if keep(&alpha) {
                b.add_simplex(alpha.graph_hf(), m)?;
                maps.push(alpha);
            }
        }
    }
    for (x, alpha) in maps.iter().enumerate() {
        let m = alpha.source();
        let lookup = |beta: DeltaMap| b.index_of(&beta.graph_hf()).expect("sub-object is closed");
        let faces: Vec<usize> = if m == 0 {
            Vec::new()
        } else {
            (0..=m)
                .map(|i| lookup(alpha.after(&DeltaMap::face(m, i).unwrap()).unwrap()))
                .collect()
        };
        let degeneracies: Vec<usize> = if m < truncation {
            (0..=m)
                .map(|i| lookup(alpha.after(&DeltaMap::degeneracy(m, i).unwrap()).unwrap()))
                .collect()
        } else {
            Vec::new()
        };
        b.set_faces(x, faces);
        b.set_degeneracies(x, degeneracies);
    }
    b.build()
}

/// The standard simplex `Δ[n] = Hom(-, [n])`; its `m`-simplices are the
/// monotone maps `[m] -> [n]` and the action is precomposition.
pub fn representable(n: usize, truncation: usize) -> Result<TruncatedSimplicialSet> {
    if n > truncation {
        return Err(Error::Truncation { dim: n, truncation });
    }
    simplex_subobject(n, truncation, |_| true)
}

/// The identifier of the simplex `alpha : [m] -> [n]` of `Δ[n]`.
pub fn representable_id(alpha: &DeltaMap) -> HfSet {
    alpha.graph_hf()
}

pub fn terminal_sset(truncation: usize) -> TruncatedSimplicialSet {
    representable(0, truncation).expect("Δ[0] fits any truncation")
}

pub fn initial_sset(truncation: usize) -> TruncatedSimplicialSet {
    TruncatedSimplicialSet::empty(truncation)
}

/// The fiber of the dimension projection over `n`, as identifiers.
pub fn simplices_at(x: &TruncatedSimplicialSet, n: usize) -> Result<Vec<HfSet>> {
    if n > x.truncation() {
        return Err(Error::Truncation {
            dim: n,
            truncation: x.truncation(),
        });
    }
    Ok(x.range(n).map(|s| x.id(s).clone()).collect())
}

/// The map `Δ[n] -> x` classifying the `n`-simplex `s`: `alpha ↦ alpha^* s`.
pub fn yoneda_map(x: &Arc<TruncatedSimplicialSet>, n: usize, s: usize) -> Result<SimplicialMap> {
    if x.dim(s) != n {
        return Err(Error::Mismatch(format!("{} is not an {n}-simplex", x.id(s))));
    }
    let delta = Arc::new(representable(n, x.truncation())?);
    let mut carrier = vec![0; delta.len()];
    for m in 0..=x.truncation() {
        for alpha in monotone_maps(m, n) {
            carrier[delta.index_of(&alpha.graph_hf()).unwrap()] = x.act(&alpha, s)?;
        }
    }
    SimplicialMap::new(delta, x.clone(), carrier)
}

/// All maps `Δ[n] -> x`, one per `n`-simplex, in simplex order.
pub fn natural_maps(n: usize, x: &Arc<TruncatedSimplicialSet>) -> Result<Vec<SimplicialMap>> {
    if n > x.truncation() {
        return Err(Error::Truncation {
            dim: n,
            truncation: x.truncation(),
        });
    }
    x.range(n).map(|s| yoneda_map(x, n, s)).collect()
}

/// The cell inclusions used as lifting test objects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    /// `Λ^k[n] ⊂ Δ[n]`: all faces but the `k`-th.
    Horn { n: usize, k: usize },
    /// `∂Δ[n] ⊂ Δ[n]`: all faces. `∂Δ[0]` is empty.
    Boundary { n: usize },
}

impl Cell {
    pub fn dim(self) -> usize {
        match self {
            Cell::Horn { n, .. } | Cell::Boundary { n } => n,
        }
    }

    /// Indices `i` of the faces `d_i` making up the cell.
    pub fn face_indices(self) -> Vec<usize> {
        match self {
            Cell::Horn { n, k } => (0..=n).filter(|&i| i != k).collect(),
            Cell::Boundary { n: 0 } => Vec::new(),
            Cell::Boundary { n } => (0..=n).collect(),
        }
    }

    /// The face of the filler not in the cell, if any.
    pub fn missing_face(self) -> Option<usize> {
        match self {
            Cell::Horn { k, .. } => Some(k),
            Cell::Boundary { .. } => None,
        }
    }

    fn check(self, truncation: usize) -> Result<()> {
        match self {
            Cell::Horn { n, k } if n == 0 || k > n => Err(Error::OutOfRange(format!("no horn Λ^{k}[{n}]"))),
            _ if self.dim() > truncation => Err(Error::Truncation {
                dim: self.dim(),
                truncation,
            }),
            _ => Ok(()),
        }
    }

    fn contains(self, alpha: &DeltaMap) -> bool {
        let image = alpha.image();
        let misses = |j: usize| image.binary_search(&j).is_err();
        match self {
            Cell::Horn { n, k } => (0..=n).any(|j| j != k && misses(j)),
            Cell::Boundary { n } => (0..=n).any(misses),
        }
    }

    pub fn horns(n: usize) -> impl Iterator<Item = Cell> {
        (0..=n).map(move |k| Cell::Horn { n, k })
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Horn { n, k } => write!(f, "horn({n},{k})"),
            Cell::Boundary { n } => write!(f, "boundary({n})"),
        }
    }
}

/// The cell as a sub-object of `Δ[n]`, with its inclusion.
///
/// `Boundary { n: 0 }` is accepted and gives the empty sub-object, which is
/// what makes acyclic fibrations surjective on vertices.
pub fn cell_subobject(cell: Cell, truncation: usize) -> Result<(TruncatedSimplicialSet, SimplicialMap)> {
    cell.check(truncation)?;
    let n = cell.dim();
    let sub = Arc::new(simplex_subobject(n, truncation, |alpha| cell.contains(alpha))?);
    let delta = Arc::new(representable(n, truncation)?);
    let inclusion = SimplicialMap::from_ids(sub.clone(), delta, sub.ids().iter().map(|id| (id.clone(), id.clone())))?;
    Ok(((*sub).clone(), inclusion))
}
