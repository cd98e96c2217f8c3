//! Eulerian idempotents in `ℚ[S_n]`, their place-permutation action on the
//! bar complex and the Adams operations `ψ^ℓ = Σ ℓ^i e^{(i)}`.

pub mod group;
mod ops;

pub use group::{
    adams_element, all_permutations, eulerian_idempotent, eulerian_idempotents, lambda_family,
    shuffle_element, GroupAlgebraElement, Permutation, MAX_N,
};
pub use ops::{
    act, adams_on_filtration, adams_operation, eulerian_projector, AdamsCell, AdamsReport,
    HodgeDecomposition,
};
