use std::collections::BTreeMap;

use crate::complexes::{shift, tensor, ChainComplex};
use crate::error::{Error, Result};
use crate::exact::Ring;

/// Direction of the shear `X^s ↦ X^s[±2s]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shear {
    Plus,
    Minus,
}

/// Finitely many complexes indexed by a filtration weight `s`, separate
/// from the internal weight of each complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComplex {
    ring: Ring,
    pieces: BTreeMap<i64, ChainComplex>,
}

impl GradedComplex {
    pub fn new(ring: Ring, pieces: BTreeMap<i64, ChainComplex>) -> Result<Self> {
        if let Some(c) = pieces.values().find(|c| c.ring() != ring) {
            return Err(Error::RingMismatch(format!(
                "graded piece over {} in a graded complex over {ring}",
                c.ring()
            )));
        }
        let pieces = pieces.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(GradedComplex { ring, pieces })
    }

    pub fn zero(ring: Ring) -> Self {
        GradedComplex {
            ring,
            pieces: BTreeMap::new(),
        }
    }

    /// A single complex placed in weight `s`.
    pub fn concentrated(c: ChainComplex, s: i64) -> Self {
        GradedComplex::new(c.ring(), BTreeMap::from([(s, c)])).expect("single piece")
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn piece(&self, s: i64) -> ChainComplex {
        self.pieces
            .get(&s)
            .cloned()
            .unwrap_or_else(|| ChainComplex::zero(self.ring))
    }

    pub fn pieces(&self) -> &BTreeMap<i64, ChainComplex> {
        &self.pieces
    }

    /// Smallest and largest weight with a nonzero piece.
    pub fn support(&self) -> Option<(i64, i64)> {
        Some((
            *self.pieces.keys().next()?,
            *self.pieces.keys().next_back()?,
        ))
    }

    /// Weight `s` piece shifted by `[±2s]`; the shift sign `(-1)^{2s}` is trivial.
    pub fn shear(&self, dir: Shear) -> GradedComplex {
        let k = match dir {
            Shear::Plus => 2,
            Shear::Minus => -2,
        };
        GradedComplex {
            ring: self.ring,
            pieces: self
                .pieces
                .iter()
                .map(|(&s, c)| (s, shift(c, k * s)))
                .collect(),
        }
    }

    /// Day convolution: `(G ⊗ H)^s = ⊕_{a+b=s} G^a ⊗ H^b`, summands in
    /// increasing `a`.
    pub fn tensor(&self, other: &GradedComplex) -> Result<GradedComplex> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch("graded tensor".into()));
        }
        let mut pieces: BTreeMap<i64, ChainComplex> = BTreeMap::new();
        for (&a, x) in &self.pieces {
            for (&b, y) in &other.pieces {
                let t = tensor(x, y)?;
                let entry = pieces.remove(&(a + b));
                let merged = match entry {
                    None => t,
                    Some(prev) => concat(&prev, &t),
                };
                pieces.insert(a + b, merged);
            }
        }
        GradedComplex::new(self.ring, pieces)
    }
}

/// Direct sum keeping labels as they are (they are already distinct because
/// tensor labels record both factors).
fn concat(a: &ChainComplex, b: &ChainComplex) -> ChainComplex {
    let mut bases = a.bases().clone();
    for (cell, labels) in b.bases() {
        bases
            .entry(*cell)
            .or_default()
            .extend(labels.iter().cloned());
    }
    let mut diffs = BTreeMap::new();
    for &(n, w) in bases.keys() {
        let rows = a.dim(n - 1, w) + b.dim(n - 1, w);
        let cols = a.dim(n, w) + b.dim(n, w);
        let m = crate::exact::Matrix::embed(rows, cols, 0, 0, &a.differential(n, w)).add(
            &crate::exact::Matrix::embed(
                rows,
                cols,
                a.dim(n - 1, w),
                a.dim(n, w),
                &b.differential(n, w),
            ),
        );
        diffs.insert((n, w), m);
    }
    ChainComplex::new_unchecked(a.ring(), bases, diffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::ComplexBuilder;
    use crate::exact::Matrix;

    fn sample() -> GradedComplex {
        let a = ComplexBuilder::new(Ring::Integers)
            .cell(1, 0, ["a"])
            .cell(0, 0, ["b"])
            .differential(1, 0, Matrix::from_i64(&[vec![3]]))
            .build()
            .unwrap();
        let c = ComplexBuilder::new(Ring::Integers)
            .cell(2, 1, ["c"])
            .build()
            .unwrap();
        GradedComplex::new(
            Ring::Integers,
            BTreeMap::from([(0, a.clone()), (1, a), (-2, c)]),
        )
        .unwrap()
    }

    #[test]
    fn shear_is_invertible() {
        let g = sample();
        assert_eq!(g.shear(Shear::Minus).shear(Shear::Plus), g);
        assert_eq!(g.shear(Shear::Plus).piece(0), g.piece(0));
        assert_eq!(g.shear(Shear::Plus).piece(1).dim(3, 0), 1);
    }

    #[test]
    fn shear_is_monoidal() {
        let g = sample();
        let lhs = g.tensor(&g).unwrap().shear(Shear::Plus);
        let rhs = g.shear(Shear::Plus).tensor(&g.shear(Shear::Plus)).unwrap();
        assert_eq!(lhs, rhs);
    }
}
