use std::collections::BTreeMap;

use super::complex::{Cell, ChainComplex};
use crate::error::{Error, Result};
use crate::exact::{HomologyBasis, Matrix, Scalar};

/// Degree- and weight-preserving chain map, one matrix block per cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    blocks: BTreeMap<Cell, Matrix>,
}

impl ChainMap {
    /// Checks block shapes, coefficients and `d f = f d` on every cell.
    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        blocks: BTreeMap<Cell, Matrix>,
    ) -> Result<Self> {
        let f = ChainMap::new_unchecked(source, target, blocks);
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(
        source: ChainComplex,
        target: ChainComplex,
        mut blocks: BTreeMap<Cell, Matrix>,
    ) -> Self {
        blocks.retain(|_, m| !m.is_zero());
        ChainMap {
            source,
            target,
            blocks,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.source.ring() != self.target.ring() {
            return Err(Error::RingMismatch(format!(
                "map from a complex over {} to one over {}",
                self.source.ring(),
                self.target.ring()
            )));
        }
        for (&(n, w), m) in &self.blocks {
            let expected = (self.target.dim(n, w), self.source.dim(n, w));
            if m.shape() != expected {
                return Err(Error::InvalidChainMap(format!(
                    "block at ({n}, {w}) has shape {:?}, expected {expected:?}",
                    m.shape()
                )));
            }
            if self.source.ring() == crate::exact::Ring::Integers && !m.is_integral() {
                return Err(Error::InvalidChainMap(format!(
                    "block at ({n}, {w}) has non-integral entries over Z"
                )));
            }
        }
        let cells: std::collections::BTreeSet<Cell> =
            self.source.cells().chain(self.target.cells()).collect();
        for (n, w) in cells {
            let lhs = self.target.differential(n, w).mul(&self.block(n, w));
            let rhs = self.block(n - 1, w).mul(&self.source.differential(n, w));
            if lhs != rhs {
                return Err(Error::InvalidChainMap(format!(
                    "map does not commute with differentials at ({n}, {w})"
                )));
            }
        }
        Ok(())
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let blocks = c
            .cells()
            .map(|(n, w)| ((n, w), Matrix::identity(c.dim(n, w))))
            .collect();
        ChainMap::new_unchecked(c.clone(), c.clone(), blocks)
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        ChainMap::new_unchecked(source.clone(), target.clone(), BTreeMap::new())
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn block(&self, n: i64, w: i64) -> Matrix {
        self.blocks
            .get(&(n, w))
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.target.dim(n, w), self.source.dim(n, w)))
    }

    pub fn blocks(&self) -> &BTreeMap<Cell, Matrix> {
        &self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.target != other.source {
            return Err(Error::InvalidChainMap(
                "composition of maps with mismatched middle complex".into(),
            ));
        }
        let blocks = self
            .source
            .cells()
            .map(|(n, w)| ((n, w), other.block(n, w).mul(&self.block(n, w))))
            .collect();
        Ok(ChainMap::new_unchecked(
            self.source.clone(),
            other.target.clone(),
            blocks,
        ))
    }

    /// `self - other` for parallel maps.
    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::InvalidChainMap("maps are not parallel".into()));
        }
        let blocks = self
            .source
            .cells()
            .map(|(n, w)| ((n, w), self.block(n, w).sub(&other.block(n, w))))
            .collect();
        Ok(ChainMap::new_unchecked(
            self.source.clone(),
            self.target.clone(),
            blocks,
        ))
    }

    /// `self - c · id`, for endomorphisms.
    pub fn minus_scalar(&self, c: &Scalar) -> Result<ChainMap> {
        if self.source != self.target {
            return Err(Error::InvalidChainMap("not an endomorphism".into()));
        }
        let blocks = self
            .source
            .cells()
            .map(|(n, w)| {
                let id = Matrix::scalar_identity(self.source.dim(n, w), c);
                ((n, w), self.block(n, w).sub(&id))
            })
            .collect();
        Ok(ChainMap::new_unchecked(
            self.source.clone(),
            self.target.clone(),
            blocks,
        ))
    }

    /// Matrix of the induced map `H_n(source) → H_n(target)` in the generator
    /// bases of [`HomologyBasis`]; torsion coordinates are reduced.
    pub fn on_homology(&self, n: i64, w: i64) -> Result<InducedMap> {
        let src = homology_basis(&self.source, n, w)?;
        let tgt = homology_basis(&self.target, n, w)?;
        let block = self.block(n, w);
        let mut cols = Vec::with_capacity(src.len());
        for g in &src.generators {
            let image = block.apply(g);
            cols.push(tgt.coordinates(&image)?);
        }
        let dense: Vec<Vec<Scalar>> = (0..tgt.len())
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        Ok(InducedMap {
            matrix: Matrix::from_dense(tgt.len(), src.len(), &dense),
            source: src,
            target: tgt,
        })
    }
}

/// The map induced on one homology cell.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub matrix: Matrix,
    pub source: HomologyBasis,
    pub target: HomologyBasis,
}

impl InducedMap {
    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

pub fn homology_basis(c: &ChainComplex, n: i64, w: i64) -> Result<HomologyBasis> {
    HomologyBasis::new(&c.differential(n + 1, w), &c.differential(n, w), c.ring())
}
