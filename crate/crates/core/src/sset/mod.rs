//! Truncated simplicial sets stored as a total set of simplices with a
//! dimension projection and a generator action table.

mod limits;
mod maps;
mod object;
mod standard;
mod text;
mod validate;

pub use limits::{coproduct_sset, exponential_sset, product_sset, Coproduct, Exponential, Product};
pub(crate) use maps::MapSearch;
pub use maps::{count_maps, simplicial_maps, SimplicialMap};
pub use object::{SSetBuilder, TruncatedSimplicialSet};
pub use standard::{
    cell_subobject, initial_sset, natural_maps, representable, representable_id, simplices_at, terminal_sset,
    yoneda_map, Cell,
};
pub use text::{parse_sset, parse_sset_document, print_sset, print_sset_document, SSetDocument};
pub use validate::{validate_presheaf, Violation};
