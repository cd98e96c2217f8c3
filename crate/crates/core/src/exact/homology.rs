use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::elim;
use super::group::FgAbGroup;
use super::matrix::{Matrix, SparseVec};
use super::scalar::{Ring, Scalar};
use super::snf::{invariant_factors, smith_normal_form};
use crate::error::{Error, Result};

/// Exact rank over the fraction field and nullity `cols - rank`.
pub fn rank_nullity(m: &Matrix) -> (usize, usize) {
    let r = elim::rank(m);
    (r, m.ncols() - r)
}

fn check_pair(d_in: &Matrix, d_out: &Matrix) -> Result<()> {
    if d_in.nrows() != d_out.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "incoming map has {} rows but outgoing map has {} columns",
            d_in.nrows(),
            d_out.ncols()
        )));
    }
    if !d_out.mul(d_in).is_zero() {
        return Err(Error::CompositeNonzero(
            "outgoing differential after incoming differential".into(),
        ));
    }
    Ok(())
}

/// Scales a rational matrix column-wise to an integer matrix with the same
/// column space over ℚ.
fn integral_columns(m: &Matrix) -> Matrix {
    if m.is_integral() {
        return m.clone();
    }
    let cols: Vec<SparseVec> = m
        .columns()
        .into_iter()
        .map(|c| {
            let den = super::scalar::common_denominator(c.iter().map(|(_, v)| v));
            let den = Scalar::from_integer(den);
            c.into_iter().map(|(i, v)| (i, v * &den)).collect()
        })
        .collect();
    Matrix::from_columns(m.nrows(), &cols)
}

fn integral_rows(m: &Matrix) -> Matrix {
    integral_columns(&m.transpose()).transpose()
}

/// `ker(d_out) / im(d_in)` as a finitely generated abelian group.
///
/// Over ℤ the torsion is read off the invariant factors of `d_in` (its image
/// lies in the saturated sublattice `ker d_out`); over ℚ only ranks matter.
pub fn homology_of_pair(d_in: &Matrix, d_out: &Matrix, ring: Ring) -> Result<FgAbGroup> {
    check_pair(d_in, d_out)?;
    let (_, nullity) = rank_nullity(d_out);
    match ring {
        Ring::Rationals => {
            let (r_in, _) = rank_nullity(d_in);
            Ok(FgAbGroup::free(nullity - r_in))
        }
        Ring::Integers => {
            let factors = invariant_factors(d_in)?;
            Ok(FgAbGroup::from_parts(nullity - factors.len(), factors))
        }
    }
}

/// Homology with explicit generators and a coordinate map for cycles.
///
/// Built from the Smith form of `d_out` (kernel basis) and of `d_in` written
/// in kernel coordinates; this is an independent route from
/// [`homology_of_pair`].
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub ring: Ring,
    pub group: FgAbGroup,
    /// Orders of the generators in order: torsion generators (orders ≥ 2)
    /// followed by free generators (order 0).
    pub orders: Vec<BigInt>,
    /// Cycle representatives, one dense vector per generator.
    pub generators: Vec<Vec<Scalar>>,
    kernel_coords: Matrix,
    change: Matrix,
    kept: Vec<usize>,
}

impl HomologyBasis {
    pub fn new(d_in: &Matrix, d_out: &Matrix, ring: Ring) -> Result<Self> {
        check_pair(d_in, d_out)?;
        let (d_in, d_out) = match ring {
            Ring::Integers => {
                if !d_in.is_integral() || !d_out.is_integral() {
                    return Err(Error::RationalEntries);
                }
                (d_in.clone(), d_out.clone())
            }
            Ring::Rationals => (integral_columns(d_in), integral_rows(d_out)),
        };
        let n = d_out.ncols();
        let out = smith_normal_form(&d_out)?;
        let r_out = out.rank();
        let ker_idx: Vec<usize> = (r_out..n).collect();
        let kernel = out.v.select_cols(&ker_idx);
        let kernel_coords = out.v_inv.select_rows(&ker_idx);
        let a = kernel_coords.mul(&d_in);
        let snf = smith_normal_form(&a)?;
        let k = ker_idx.len();
        let diag: Vec<BigInt> = (0..k)
            .map(|i| {
                if i < a.ncols() {
                    snf.d.get(i, i).numer().clone()
                } else {
                    BigInt::zero()
                }
            })
            .collect();
        let keep = |d: &BigInt| match ring {
            Ring::Integers => !d.abs().is_one(),
            Ring::Rationals => d.is_zero(),
        };
        let kept: Vec<usize> = (0..k).filter(|&i| keep(&diag[i])).collect();
        let gen_matrix = kernel.mul(&snf.u_inv);
        let generators = kept
            .iter()
            .map(|&i| super::matrix::densify(&gen_matrix.column(i), n))
            .collect();
        let orders: Vec<BigInt> = kept.iter().map(|&i| diag[i].clone()).collect();
        let group = FgAbGroup::from_parts(0, orders.iter().cloned());
        Ok(HomologyBasis {
            ring,
            group,
            orders,
            generators,
            kernel_coords,
            change: snf.u,
            kept,
        })
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Coordinates of the class of a cycle in terms of the generators; torsion
    /// coordinates are reduced into `[0, order)`.
    pub fn coordinates(&self, cycle: &[Scalar]) -> Result<Vec<Scalar>> {
        if self.ring == Ring::Integers && cycle.iter().any(|x| !x.denom().is_one()) {
            return Err(Error::RationalEntries);
        }
        let k = self.kernel_coords.apply(cycle);
        let y = self.change.apply(&k);
        Ok(self
            .kept
            .iter()
            .zip(&self.orders)
            .map(|(&i, d)| {
                if d.is_zero() {
                    y[i].clone()
                } else {
                    let m = Scalar::from_integer(d.clone());
                    let q = (&y[i] / &m).floor();
                    &y[i] - q * m
                }
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_middle_rank_one() {
        let h = homology_of_pair(&Matrix::zeros(1, 0), &Matrix::zeros(0, 1), Ring::Integers);
        assert_eq!(h.unwrap(), FgAbGroup::free(1));
    }

    #[test]
    fn multiplication_by_two() {
        let d_in = Matrix::from_i64(&[vec![2]]);
        let h = homology_of_pair(&d_in, &Matrix::zeros(0, 1), Ring::Integers).unwrap();
        assert_eq!(h, FgAbGroup::cyclic(2));
        let hq = homology_of_pair(&d_in, &Matrix::zeros(0, 1), Ring::Rationals).unwrap();
        assert_eq!(hq, FgAbGroup::zero());
    }

    #[test]
    fn real_projective_plane_degree_one() {
        // one 0-cell v, 1-cells a, b, one 2-cell with boundary 2a + 2b... use the
        // standard minimal CW structure: one cell per dimension, ∂2 = 2, ∂1 = 0
        let d2 = Matrix::from_i64(&[vec![2]]);
        let d1 = Matrix::zeros(1, 1);
        let h = homology_of_pair(&d2, &d1, Ring::Integers).unwrap();
        assert_eq!(h, FgAbGroup::cyclic(2));
        let basis = HomologyBasis::new(&d2, &d1, Ring::Integers).unwrap();
        assert_eq!(basis.group, h);
    }

    #[test]
    fn composite_nonzero_rejected() {
        let a = Matrix::from_i64(&[vec![1]]);
        assert!(matches!(
            homology_of_pair(&a, &a, Ring::Integers),
            Err(Error::CompositeNonzero(_))
        ));
        assert!(matches!(
            homology_of_pair(&Matrix::zeros(2, 1), &a, Ring::Integers),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn coordinates_of_boundaries_vanish() {
        // C1 = Z^2 --d1 = [1 -1]--> Z ; C2 = Z --d2 = [1,1]^T--> C1
        let d2 = Matrix::from_i64(&[vec![1], vec![1]]);
        let d1 = Matrix::from_i64(&[vec![1, -1]]);
        let b = HomologyBasis::new(&d2, &d1, Ring::Integers).unwrap();
        assert_eq!(b.group, FgAbGroup::zero());
        let d1 = Matrix::zeros(0, 2);
        let b = HomologyBasis::new(&d2, &d1, Ring::Integers).unwrap();
        assert_eq!(b.group, FgAbGroup::free(1));
        let c = b.coordinates(&[Scalar::one(), Scalar::one()]).unwrap();
        assert_eq!(c, vec![Scalar::zero()]);
        let c = b.coordinates(&[Scalar::one(), Scalar::zero()]).unwrap();
        assert_eq!(c.len(), 1);
        assert!(!c[0].is_zero());
    }
}
