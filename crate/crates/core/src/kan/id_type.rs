use super::factorize::{factorize, CellKind, Factorization};
use super::square::is_fibration;
use crate::constructors::{selected_pullback_sset, SSetPullback};
use crate::error::{Error, Result};
use crate::sset::SimplicialMap;

/// The identity type of a fibration `p : x -> y`: the diagonal
/// `x -> x ×_y x` factored as `endpoints ∘ r` with `endpoints` a fibration.
#[derive(Clone, Debug)]
pub struct IdType {
    pub pullback: SSetPullback,
    pub diagonal: SimplicialMap,
    pub factorization: Factorization,
}

impl IdType {
    /// `x -> path object`.
    pub fn r(&self) -> &SimplicialMap {
        &self.factorization.j
    }

    /// `path object -> x ×_y x`.
    pub fn endpoints(&self) -> &SimplicialMap {
        &self.factorization.p
    }
}

pub fn id_type(p: &SimplicialMap, stages: usize, nmax: usize) -> Result<IdType> {
    let check = is_fibration(p, nmax)?;
    if let Some(w) = &check.witness {
        return Err(Error::NotFibration(w.display(p).to_string()));
    }
    let pullback = selected_pullback_sset(p, p)?;
    let id = SimplicialMap::identity(p.source().clone());
    let diagonal = pullback.factor(&id, &id)?;
    let factorization = factorize(&diagonal, CellKind::Horn, stages, nmax)?;
    Ok(IdType {
        pullback,
        diagonal,
        factorization,
    })
}
