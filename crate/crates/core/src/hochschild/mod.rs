//! Presented weight-graded commutative rings, their normalized cyclic bar
//! complexes, de Rham complexes and the HKR comparison.

mod bar;
mod derham;
mod hkr;
mod poly;
mod ring;

pub use bar::{Factor, HochschildData, MAX_BASIS};
pub use derham::{de_rham_complex, derived_de_rham_gr, DeRhamComplex, Form};
pub use hkr::{
    connecting_is_universal_derivation, epsilon, hkr_filtration, hkr_heart, hkr_isomorphism,
    hkr_map, lambda_filtration, postnikov_hkr_filtration, DerivationReport, HeartComparison, Hkr,
    HkrCell, HkrFiltration, HkrMethod,
};
pub use poly::{format_monomial, parse_polynomial, Monomial, Polynomial};
pub use ring::{Generator, GradedRing, RingPresentation};
