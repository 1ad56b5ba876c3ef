//! Hereditarily finite sets with the Ackermann well-order, bounded formulas,
//! minimal-representative quotients and canonical functions over a base.

mod formula;
mod function;
mod funtext;
pub(crate) mod literal;
mod quotient;
mod set;

pub use formula::{eval_bounded, parse_formula, separation, Env, Formula, Term};
pub use function::{canonical_over_base, min_iso_oracle, FinFunction};
pub use funtext::{parse_functions, print_functions};
pub use literal::parse_literal;
pub use quotient::quotient_min;
pub use set::{hf_compare, HfSet};
