//! Graded and filtered complexes, multicomplexes, the Beilinson heart and
//! the shear between the two sign conventions for graded objects.

mod filtration;
mod graded;
mod heart;
mod multicomplex;

pub use filtration::{
    brutal_filtration, rees, split, CochainComplex, FilteredComplex, PostnikovFiltration,
    ReesModule,
};
pub use graded::{GradedComplex, Shear};
pub use heart::{beilinson_heart, beilinson_heart_with_bases, CochainComplexHeart};
pub use multicomplex::{split_multicomplex, totalize_multicomplex, Multicomplex};

/// `F ↦ gr F`.
pub fn associated_graded(f: &FilteredComplex) -> GradedComplex {
    f.associated_graded()
}

/// `(|M|^{≥★}, |M|)` of a multicomplex.
pub fn cohomology_type(m: &Multicomplex) -> (FilteredComplex, crate::complexes::ChainComplex) {
    m.cohomology_type()
}

/// Postnikov filtration `τ_{≥★}` of a complex.
pub fn postnikov_filtration(
    c: &crate::complexes::ChainComplex,
) -> crate::Result<PostnikovFiltration> {
    PostnikovFiltration::new(c)
}
