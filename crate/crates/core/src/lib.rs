//! Exact, desk-scale computations around Hochschild homology of weight-graded
//! commutative rings: chain complexes over ℤ and ℚ, filtered complexes and
//! multicomplexes, mixed complexes with their orbits, fixed points and Tate
//! constructions, the HKR filtration and the de Rham complex, and Adams
//! operations via Eulerian idempotents.

pub mod adams;
pub mod cli;
pub mod complexes;
pub mod error;
pub mod exact;
pub mod filtered;
pub mod hochschild;
pub mod mixed;
pub mod random;

pub use error::{Error, Result};
