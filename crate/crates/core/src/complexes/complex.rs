use std::collections::{BTreeMap, BTreeSet, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{homology_of_pair, FgAbGroup, Matrix, Ring};

/// `(homological degree, internal weight)`.
pub type Cell = (i64, i64);

/// Bounded chain complex of finite free modules over ℤ or ℚ, bigraded by
/// homological degree and internal weight.
///
/// The differential at `(n, w)` maps the `(n, w)` module to the `(n - 1, w)`
/// module; its matrix has one column per source basis element.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainComplex {
    ring: Ring,
    bases: BTreeMap<Cell, Vec<String>>,
    diffs: BTreeMap<Cell, Matrix>,
}

impl ChainComplex {
    /// Validates shapes, label uniqueness, coefficients and `d² = 0`.
    pub fn new(
        ring: Ring,
        bases: BTreeMap<Cell, Vec<String>>,
        diffs: BTreeMap<Cell, Matrix>,
    ) -> Result<Self> {
        let c = ChainComplex::new_unchecked(ring, bases, diffs);
        c.validate()?;
        Ok(c)
    }

    /// Drops empty cells and zero differentials without checking anything
    /// else. Used by constructions whose output is correct by design; tests
    /// run [`ChainComplex::validate`] on them.
    pub(crate) fn new_unchecked(
        ring: Ring,
        mut bases: BTreeMap<Cell, Vec<String>>,
        mut diffs: BTreeMap<Cell, Matrix>,
    ) -> Self {
        bases.retain(|_, b| !b.is_empty());
        diffs.retain(|_, d| !d.is_zero());
        ChainComplex { ring, bases, diffs }
    }

    pub fn validate(&self) -> Result<()> {
        for (cell, labels) in &self.bases {
            let mut seen = HashSet::new();
            for l in labels {
                if !seen.insert(l) {
                    return Err(Error::InvalidComplex(format!(
                        "duplicate basis label {l:?} in cell {cell:?}"
                    )));
                }
            }
        }
        for (&(n, w), d) in &self.diffs {
            let expected = (self.dim(n - 1, w), self.dim(n, w));
            if d.shape() != expected {
                return Err(Error::InvalidComplex(format!(
                    "differential at ({n}, {w}) has shape {:?}, expected {expected:?}",
                    d.shape()
                )));
            }
            if self.ring == Ring::Integers && !d.is_integral() {
                return Err(Error::InvalidComplex(format!(
                    "differential at ({n}, {w}) has non-integral entries over Z"
                )));
            }
        }
        for &(n, w) in self.diffs.keys() {
            if let Some(prev) = self.diffs.get(&(n - 1, w)) {
                if !prev.mul(&self.diffs[&(n, w)]).is_zero() {
                    return Err(Error::InvalidComplex(format!(
                        "d∘d is nonzero at ({n}, {w})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn zero(ring: Ring) -> Self {
        ChainComplex::new_unchecked(ring, BTreeMap::new(), BTreeMap::new())
    }

    /// The coefficient ring in degree 0, weight 0.
    pub fn unit(ring: Ring) -> Self {
        ChainComplex::concentrated(ring, 0, 0, vec!["1".to_string()])
    }

    /// A complex with a single nonzero cell.
    pub fn concentrated(ring: Ring, n: i64, w: i64, labels: Vec<String>) -> Self {
        ChainComplex::new_unchecked(ring, BTreeMap::from([((n, w), labels)]), BTreeMap::new())
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dim(&self, n: i64, w: i64) -> usize {
        self.bases.get(&(n, w)).map_or(0, Vec::len)
    }

    pub fn basis(&self, n: i64, w: i64) -> &[String] {
        self.bases.get(&(n, w)).map_or(&[], Vec::as_slice)
    }

    pub fn index_of(&self, n: i64, w: i64, label: &str) -> Option<usize> {
        self.basis(n, w).iter().position(|l| l == label)
    }

    /// Differential `(n, w) → (n - 1, w)`, zero if not stored.
    pub fn differential(&self, n: i64, w: i64) -> Matrix {
        self.diffs
            .get(&(n, w))
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dim(n - 1, w), self.dim(n, w)))
    }

    pub fn differential_ref(&self, n: i64, w: i64) -> Option<&Matrix> {
        self.diffs.get(&(n, w))
    }

    /// Nonzero cells in increasing order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.bases.keys().copied()
    }

    pub fn bases(&self) -> &BTreeMap<Cell, Vec<String>> {
        &self.bases
    }

    pub fn differentials(&self) -> &BTreeMap<Cell, Matrix> {
        &self.diffs
    }

    pub fn is_zero(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn weights(&self) -> BTreeSet<i64> {
        self.bases.keys().map(|&(_, w)| w).collect()
    }

    /// Smallest and largest degree with a nonzero module, over all weights.
    pub fn degree_bounds(&self) -> Option<(i64, i64)> {
        let lo = self.bases.keys().map(|&(n, _)| n).min()?;
        let hi = self.bases.keys().map(|&(n, _)| n).max()?;
        Some((lo, hi))
    }

    pub fn total_rank(&self) -> usize {
        self.bases.values().map(Vec::len).sum()
    }

    /// `H_n` of the weight-`w` strand.
    pub fn homology(&self, n: i64, w: i64) -> FgAbGroup {
        homology_of_pair(
            &self.differential(n + 1, w),
            &self.differential(n, w),
            self.ring,
        )
        .expect("chain complex invariants guarantee a valid pair")
    }

    /// All nonzero homology groups, computed in parallel over cells.
    pub fn homology_table(&self) -> BTreeMap<Cell, FgAbGroup> {
        let cells: Vec<Cell> = self.cells().collect();
        cells
            .into_par_iter()
            .map(|(n, w)| ((n, w), self.homology(n, w)))
            .filter(|(_, h)| !h.is_zero())
            .collect()
    }

    /// Alternating sum of chain ranks in weight `w`.
    pub fn euler_characteristic(&self, w: i64) -> i64 {
        self.bases
            .iter()
            .filter(|((_, ww), _)| *ww == w)
            .map(|(&(n, _), b)| {
                if n.rem_euclid(2) == 0 {
                    b.len() as i64
                } else {
                    -(b.len() as i64)
                }
            })
            .sum()
    }

    /// Alternating sum of homology ranks in weight `w`.
    pub fn homology_euler_characteristic(&self, w: i64) -> i64 {
        self.cells()
            .filter(|&(_, ww)| ww == w)
            .map(|(n, _)| {
                let r = self.homology(n, w).rank as i64;
                if n.rem_euclid(2) == 0 {
                    r
                } else {
                    -r
                }
            })
            .sum()
    }

    pub fn weight_strand(&self, w: i64) -> ChainComplex {
        self.filter_cells(|(_, ww)| ww == w)
    }

    /// Brutal truncation to degrees `lo..=hi`.
    pub fn degree_window(&self, lo: i64, hi: i64) -> ChainComplex {
        let c = self.filter_cells(|(n, _)| lo <= n && n <= hi);
        let diffs = c.diffs.into_iter().filter(|((n, _), _)| *n > lo).collect();
        ChainComplex::new_unchecked(c.ring, c.bases, diffs)
    }

    fn filter_cells(&self, keep: impl Fn(Cell) -> bool) -> ChainComplex {
        ChainComplex::new_unchecked(
            self.ring,
            self.bases
                .iter()
                .filter(|(c, _)| keep(**c))
                .map(|(c, b)| (*c, b.clone()))
                .collect(),
            self.diffs
                .iter()
                .filter(|(c, _)| keep(**c))
                .map(|(c, d)| (*c, d.clone()))
                .collect(),
        )
    }

    /// The same complex viewed over ℚ.
    pub fn rationalize(&self) -> ChainComplex {
        ChainComplex {
            ring: Ring::Rationals,
            ..self.clone()
        }
    }

    /// Relabels every basis element through `f(n, w, label)`.
    pub fn relabel(&self, f: impl Fn(i64, i64, &str) -> String) -> ChainComplex {
        ChainComplex {
            ring: self.ring,
            bases: self
                .bases
                .iter()
                .map(|(&(n, w), b)| ((n, w), b.iter().map(|l| f(n, w, l)).collect()))
                .collect(),
            diffs: self.diffs.clone(),
        }
    }
}

impl std::fmt::Debug for ChainComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ChainComplex over {} {{", self.ring)?;
        for ((n, w), b) in &self.bases {
            writeln!(f, "  ({n}, {w}): {b:?}")?;
        }
        for ((n, w), d) in &self.diffs {
            writeln!(f, "  d({n}, {w}) = {d:?}")?;
        }
        write!(f, "}}")
    }
}

/// Incremental construction of a complex.
#[derive(Clone, Debug)]
pub struct ComplexBuilder {
    ring: Ring,
    bases: BTreeMap<Cell, Vec<String>>,
    diffs: BTreeMap<Cell, Matrix>,
}

impl ComplexBuilder {
    pub fn new(ring: Ring) -> Self {
        ComplexBuilder {
            ring,
            bases: BTreeMap::new(),
            diffs: BTreeMap::new(),
        }
    }

    pub fn cell<S: Into<String>>(
        mut self,
        n: i64,
        w: i64,
        labels: impl IntoIterator<Item = S>,
    ) -> Self {
        self.bases
            .insert((n, w), labels.into_iter().map(Into::into).collect());
        self
    }

    pub fn differential(mut self, n: i64, w: i64, d: Matrix) -> Self {
        self.diffs.insert((n, w), d);
        self
    }

    pub fn build(self) -> Result<ChainComplex> {
        ChainComplex::new(self.ring, self.bases, self.diffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn circle() -> ChainComplex {
        ComplexBuilder::new(Ring::Integers)
            .cell(1, 0, ["e"])
            .cell(0, 0, ["v"])
            .build()
            .unwrap()
    }

    #[test]
    fn circle_homology() {
        let c = circle();
        assert_eq!(c.homology(0, 0), FgAbGroup::free(1));
        assert_eq!(c.homology(1, 0), FgAbGroup::free(1));
        assert_eq!(c.homology(2, 0), FgAbGroup::zero());
    }

    #[test]
    fn multiplication_by_two() {
        let c = ComplexBuilder::new(Ring::Integers)
            .cell(1, 0, ["a"])
            .cell(0, 0, ["b"])
            .differential(1, 0, Matrix::from_i64(&[vec![2]]))
            .build()
            .unwrap();
        assert_eq!(c.homology(0, 0), FgAbGroup::cyclic(2));
        assert_eq!(c.homology(1, 0), FgAbGroup::zero());
    }

    #[test]
    fn rejects_bad_input() {
        let dup = ComplexBuilder::new(Ring::Integers)
            .cell(0, 0, ["a", "a"])
            .build();
        assert!(matches!(dup, Err(Error::InvalidComplex(_))));
        let shape = ComplexBuilder::new(Ring::Integers)
            .cell(1, 0, ["a"])
            .cell(0, 0, ["b"])
            .differential(1, 0, Matrix::from_i64(&[vec![1, 1]]))
            .build();
        assert!(shape.is_err());
        let dd = ComplexBuilder::new(Ring::Integers)
            .cell(2, 0, ["a"])
            .cell(1, 0, ["b"])
            .cell(0, 0, ["c"])
            .differential(2, 0, Matrix::from_i64(&[vec![1]]))
            .differential(1, 0, Matrix::from_i64(&[vec![1]]))
            .build();
        assert!(dd.is_err());
    }

    #[test]
    fn koszul_complex_of_x() {
        // ℤ[x] --x--> ℤ[x], truncated per weight: weight w has x^w in degree 0
        // and x^{w-1}·e in degree 1
        let mut b = ComplexBuilder::new(Ring::Integers);
        for w in 0..=4 {
            b = b.cell(0, w, [format!("x^{w}")]);
            if w >= 1 {
                b = b.cell(1, w, [format!("x^{}e", w - 1)]).differential(
                    1,
                    w,
                    Matrix::from_i64(&[vec![1]]),
                );
            }
        }
        let k = b.build().unwrap();
        for w in 0..=4 {
            // direct kernel/cokernel: the map is an isomorphism for w ≥ 1
            let expected = if w == 0 {
                FgAbGroup::free(1)
            } else {
                FgAbGroup::zero()
            };
            assert_eq!(k.homology(0, w), expected);
            assert_eq!(k.homology(1, w), FgAbGroup::zero());
        }
    }
}
