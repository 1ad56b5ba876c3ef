//! Signatures, polynomial functors and their W-types as well-founded trees.

mod algebra;
mod poly;
mod seq;
mod signature;
mod term;

pub use algebra::{count_algebra_maps, fold_wterm, Algebra};
pub use poly::{enumerate_wterms, konig_report, poly_apply, poly_iterate, Iterates, KonigReport};
pub use seq::{seq_decode, seq_encode};
pub use signature::{parse_signature, Operator, Signature};
pub use term::{parse_term, WTerm};
