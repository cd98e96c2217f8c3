use std::collections::BTreeMap;

use crate::complexes::{tensor, tensor_operator, Cell, ChainComplex, ComplexBuilder};
use crate::error::{Error, Result};
use crate::exact::{Matrix, Ring};

/// A chain complex `(X, b)` with a degree `+1` operator `B` such that
/// `B² = 0` and `bB + Bb = 0`. `B` blocks are keyed by source cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedComplex {
    complex: ChainComplex,
    b_op: BTreeMap<Cell, Matrix>,
}

impl MixedComplex {
    pub fn new(complex: ChainComplex, b_op: BTreeMap<Cell, Matrix>) -> Result<Self> {
        let x = MixedComplex::new_unchecked(complex, b_op);
        x.validate()?;
        Ok(x)
    }

    pub(crate) fn new_unchecked(complex: ChainComplex, mut b_op: BTreeMap<Cell, Matrix>) -> Self {
        b_op.retain(|_, m| !m.is_zero());
        MixedComplex { complex, b_op }
    }

    pub fn validate(&self) -> Result<()> {
        self.complex.validate()?;
        validate_mixed(&self.complex, &self.b_op)
    }

    /// `B = 0`.
    pub fn trivial(complex: ChainComplex) -> Self {
        MixedComplex::new_unchecked(complex, BTreeMap::new())
    }

    /// The coefficient ring in degree 0 with `B = 0`.
    pub fn point(ring: Ring) -> Self {
        MixedComplex::trivial(ChainComplex::unit(ring))
    }

    /// `D₊ = ℤ·e₀ ⊕ ℤ·e₁` in degrees 0 and 1 with `B e₀ = e₁`.
    pub fn circle_algebra(ring: Ring) -> Self {
        let c = ComplexBuilder::new(ring)
            .cell(0, 0, ["e0"])
            .cell(1, 0, ["e1"])
            .build()
            .expect("two cells");
        MixedComplex::new_unchecked(c, BTreeMap::from([((0, 0), Matrix::identity(1))]))
    }

    /// The induced module `D₊ ⊗ C`.
    pub fn induced(c: &ChainComplex) -> Result<Self> {
        tensor_mixed(
            &MixedComplex::circle_algebra(c.ring()),
            &MixedComplex::trivial(c.clone()),
        )
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn ring(&self) -> Ring {
        self.complex.ring()
    }

    /// `B` at `(n, w)`, a map to `(n + 1, w)`.
    pub fn b_operator(&self, n: i64, w: i64) -> Matrix {
        self.b_op
            .get(&(n, w))
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.complex.dim(n + 1, w), self.complex.dim(n, w)))
    }

    pub fn b_blocks(&self) -> &BTreeMap<Cell, Matrix> {
        &self.b_op
    }

    pub fn weight_strand(&self, w: i64) -> MixedComplex {
        MixedComplex::new_unchecked(
            self.complex.weight_strand(w),
            self.b_op
                .iter()
                .filter(|((_, ww), _)| *ww == w)
                .map(|(c, m)| (*c, m.clone()))
                .collect(),
        )
    }

    /// Smallest and largest degree with a nonzero module in weight `w`.
    pub fn degree_bounds(&self, w: i64) -> Option<(i64, i64)> {
        let degs: Vec<i64> = self
            .complex
            .cells()
            .filter(|&(_, ww)| ww == w)
            .map(|(n, _)| n)
            .collect();
        Some((*degs.iter().min()?, *degs.iter().max()?))
    }
}

pub(crate) fn validate_mixed(c: &ChainComplex, b_op: &BTreeMap<Cell, Matrix>) -> Result<()> {
    let op = |n: i64, w: i64| {
        b_op.get(&(n, w))
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(c.dim(n + 1, w), c.dim(n, w)))
    };
    for (&(n, w), m) in b_op {
        if m.shape() != (c.dim(n + 1, w), c.dim(n, w)) {
            return Err(Error::InvalidMixed(format!(
                "B at ({n}, {w}) has shape {:?}",
                m.shape()
            )));
        }
        if c.ring() == Ring::Integers && !m.is_integral() {
            return Err(Error::InvalidMixed(format!(
                "B at ({n}, {w}) has non-integral entries over Z"
            )));
        }
    }
    for (n, w) in c.cells() {
        if !op(n + 1, w).mul(&op(n, w)).is_zero() {
            return Err(Error::InvalidMixed(format!("B² ≠ 0 at ({n}, {w})")));
        }
        let anti = c
            .differential(n + 1, w)
            .mul(&op(n, w))
            .add(&op(n - 1, w).mul(&c.differential(n, w)));
        if !anti.is_zero() {
            return Err(Error::InvalidMixed(format!("bB + Bb ≠ 0 at ({n}, {w})")));
        }
    }
    Ok(())
}

/// `X ⊗ Y` with `B(x ⊗ y) = Bx ⊗ y + (-1)^{|x|} x ⊗ By`.
pub fn tensor_mixed(x: &MixedComplex, y: &MixedComplex) -> Result<MixedComplex> {
    let c = tensor(&x.complex, &y.complex)?;
    let b = tensor_operator(&x.complex, &y.complex, &x.b_op, &y.b_op);
    Ok(MixedComplex::new_unchecked(c, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_algebra_squared() {
        let d = MixedComplex::circle_algebra(Ring::Integers);
        d.validate().unwrap();
        let dd = tensor_mixed(&d, &d).unwrap();
        dd.validate().unwrap();
        assert_eq!(dd.complex().total_rank(), 4);
    }

    #[test]
    fn unit_law() {
        let d = MixedComplex::circle_algebra(Ring::Integers);
        let t = tensor_mixed(&d, &MixedComplex::point(Ring::Integers)).unwrap();
        assert_eq!(t.b_blocks(), d.b_blocks());
    }

    #[test]
    fn rejects_non_mixed() {
        let c = ComplexBuilder::new(Ring::Integers)
            .cell(0, 0, ["a"])
            .cell(1, 0, ["b"])
            .differential(1, 0, Matrix::from_i64(&[vec![1]]))
            .build()
            .unwrap();
        let b = BTreeMap::from([((0, 0), Matrix::from_i64(&[vec![1]]))]);
        assert!(MixedComplex::new(c, b).is_err());
    }
}
