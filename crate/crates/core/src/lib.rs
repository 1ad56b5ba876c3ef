//! Set-level models of homotopy type theory at finite scale.
//!
//! Everything is built over hereditarily finite sets ([`hfcore::HfSet`]) with
//! the Ackermann order as the global well-order. Simplicial sets are stored as
//! a total set of simplices with a dimension projection and an action table,
//! and fibrant replacement runs the staged horn-filling construction with every
//! new simplex named by a term of a W-type.

pub mod cli;
pub mod constructors;
pub mod delta;
pub mod error;
pub mod hfcore;
pub mod kan;
pub mod sset;
mod textline;
pub mod wtype;

pub use error::{Error, Result};
