//! Exact linear algebra over ℤ and ℚ.

pub mod elim;
pub mod group;
pub mod homology;
pub mod kernel;
pub mod matrix;
pub mod scalar;
pub mod snf;

pub use group::FgAbGroup;
pub use homology::{homology_of_pair, rank_nullity, HomologyBasis};
pub use kernel::AdaptedBasis;
pub use matrix::{Matrix, SparseVec};
pub use scalar::{Ring, Scalar};
pub use snf::{smith_normal_form, Snf};
