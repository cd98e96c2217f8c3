use num_traits::One;

use super::elim::Rref;
use super::matrix::{Matrix, SparseVec};
use super::scalar::{Ring, Scalar};
use super::snf::column_echelon;
use crate::error::Result;

/// A basis of the source of `d` adapted to its kernel: `[complement | kernel]`,
/// together with the inverse change of basis.
///
/// Over ℤ the kernel is a saturated sublattice, so the basis is unimodular
/// and the kernel is a direct summand.
#[derive(Clone, Debug)]
pub struct AdaptedBasis {
    pub complement: Vec<SparseVec>,
    pub kernel: Vec<SparseVec>,
    /// `inverse * [complement | kernel] = identity`.
    pub inverse: Matrix,
}

impl AdaptedBasis {
    pub fn new(d: &Matrix, ring: Ring) -> Result<Self> {
        let n = d.ncols();
        match ring {
            Ring::Integers => {
                let (r, v, v_inv) = column_echelon(d)?;
                let cols = v.columns();
                Ok(AdaptedBasis {
                    complement: cols[..r].to_vec(),
                    kernel: cols[r..].to_vec(),
                    inverse: v_inv,
                })
            }
            Ring::Rationals => {
                let rref = Rref::new(d);
                let pivots = rref.pivot_columns();
                let null = rref.nullspace();
                let complement: Vec<SparseVec> =
                    pivots.iter().map(|&p| vec![(p, Scalar::one())]).collect();
                let mut triplets = Vec::new();
                for (row, &p) in pivots.iter().enumerate() {
                    triplets.push((row, p, Scalar::one()));
                    for (f, v) in &null {
                        if let Ok(k) = v.binary_search_by_key(&p, |(i, _)| *i) {
                            triplets.push((row, *f, -v[k].1.clone()));
                        }
                    }
                }
                for (k, (f, _)) in null.iter().enumerate() {
                    triplets.push((pivots.len() + k, *f, Scalar::one()));
                }
                let inverse = Matrix::from_triplets(n, n, triplets);
                Ok(AdaptedBasis {
                    complement,
                    kernel: null.into_iter().map(|(_, v)| v).collect(),
                    inverse,
                })
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.complement.len()
    }

    pub fn dim(&self) -> usize {
        self.complement.len() + self.kernel.len()
    }

    /// Basis matrix `[complement | kernel]`.
    pub fn basis_matrix(&self) -> Matrix {
        let cols: Vec<SparseVec> = self
            .complement
            .iter()
            .chain(&self.kernel)
            .cloned()
            .collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    pub fn kernel_matrix(&self) -> Matrix {
        Matrix::from_columns(self.dim(), &self.kernel)
    }

    /// Rows of the inverse giving kernel coordinates of a kernel vector.
    pub fn kernel_coordinates(&self) -> Matrix {
        let idx: Vec<usize> = (self.rank()..self.dim()).collect();
        self.inverse.select_rows(&idx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn check(d: &Matrix, ring: Ring) {
        let a = AdaptedBasis::new(d, ring).unwrap();
        let p = a.basis_matrix();
        assert_eq!(a.inverse.mul(&p), Matrix::identity(d.ncols()));
        assert!(d.mul(&a.kernel_matrix()).is_zero());
        assert_eq!(a.rank(), super::super::elim::rank(d));
        if ring == Ring::Integers {
            assert!(p.determinant().numer().magnitude().is_one());
        }
        assert!(!a.inverse.get(0, 0).is_zero() || d.ncols() == 0 || true);
    }

    #[test]
    fn adapted_bases_invert() {
        let d = Matrix::from_i64(&[vec![2, 4, 6, 0], vec![1, 1, 1, 3]]);
        check(&d, Ring::Integers);
        check(&d, Ring::Rationals);
        check(&Matrix::zeros(0, 3), Ring::Integers);
        check(&Matrix::zeros(2, 3), Ring::Rationals);
    }
}
