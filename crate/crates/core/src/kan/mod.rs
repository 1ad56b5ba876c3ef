//! Lifting problems against horn and boundary inclusions, fibration checks,
//! the small-object factorization and identity types of fibrations.

mod factorize;
mod id_type;
mod square;

pub use factorize::{factorization_signature, factorize, AdjoinedCell, CellKind, Factorization};
pub use id_type::{id_type, IdType};
pub use square::{
    boundary_cells, find_lift, horn_cells, is_acyclic_fibration, is_fibration, unfilled_squares, CellSquare, LiftCheck,
    LiftingSquare,
};

#[cfg(test)]
mod tests;
