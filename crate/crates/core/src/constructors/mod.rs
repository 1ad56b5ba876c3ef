//! Selected pullbacks, dependent sums and products with canonical
//! representatives, and windowed checks on class functions.

mod dependent;
mod pullback;
mod sset_pullback;
mod window;

pub use dependent::{pi_dependent, sections_over, sigma_dependent, slice_hom_count};
pub use pullback::{selected_pullback, PullbackCone};
pub use sset_pullback::{selected_pullback_sset, SSetPullback};
pub use window::{is_bounded_window, is_locally_small_window, ClassFunctionView, WindowAnswer};
