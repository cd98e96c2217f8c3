//! Mixed complexes, the circle-action constructions (fixed points, orbits,
//! Tate) in their small `u`-models, and the filtered variants for the
//! filtered circle.

mod circle;
mod complex;
mod filtered;

pub use circle::{
    fixed_points, norm_and_tate, orbits, tate, windowed_homology, NormTate, WindowCell,
};
pub use complex::{tensor_mixed, MixedComplex};
pub use filtered::{
    colimit_comparison, fattened_point, filtered_fixed, filtered_orbits_tate, ColimitReport,
    FilteredMixedComplex,
};
