//! Bigraded chain complexes of free modules and the basic operations on them.

mod complex;
mod map;
mod ops;

pub use complex::{Cell, ChainComplex, ComplexBuilder};
pub use map::{homology_basis, ChainMap, InducedMap};
pub use ops::{
    cone, direct_sum, good_truncation, homology_in_window, quotient, shift, swap_map, tensor,
    tensor_operator,
};
