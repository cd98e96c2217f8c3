use std::collections::BTreeMap;

use super::graded::GradedComplex;
use crate::complexes::{quotient, Cell, ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::exact::{AdaptedBasis, FgAbGroup, Matrix, Ring};

/// Bounded, degreewise split descending filtration of a complex.
///
/// Every basis element of the underlying complex carries a level `ℓ` in the
/// range `[s_min, s_max]`; `F^s` is spanned by the elements of level `≥ s`.
/// So `F^s` is the whole complex for `s ≤ s_min` and zero for `s > s_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredComplex {
    complex: ChainComplex,
    levels: BTreeMap<Cell, Vec<i64>>,
    range: (i64, i64),
}

impl FilteredComplex {
    pub fn new(
        complex: ChainComplex,
        levels: BTreeMap<Cell, Vec<i64>>,
        range: (i64, i64),
    ) -> Result<Self> {
        let f = FilteredComplex::new_unchecked(complex, levels, range);
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(
        complex: ChainComplex,
        mut levels: BTreeMap<Cell, Vec<i64>>,
        range: (i64, i64),
    ) -> Self {
        levels.retain(|_, l| !l.is_empty());
        FilteredComplex {
            complex,
            levels,
            range,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.complex.validate()?;
        let (lo, hi) = self.range;
        if lo > hi {
            return Err(Error::InvalidFiltration(format!(
                "empty range ({lo}, {hi})"
            )));
        }
        for (n, w) in self.complex.cells() {
            let lv = self.levels.get(&(n, w)).map_or(&[][..], Vec::as_slice);
            if lv.len() != self.complex.dim(n, w) {
                return Err(Error::InvalidFiltration(format!(
                    "cell ({n}, {w}) has {} levels for {} basis elements",
                    lv.len(),
                    self.complex.dim(n, w)
                )));
            }
            if let Some(l) = lv.iter().find(|&&l| l < lo || l > hi) {
                return Err(Error::InvalidFiltration(format!(
                    "level {l} in cell ({n}, {w}) outside range ({lo}, {hi})"
                )));
            }
        }
        if self
            .levels
            .keys()
            .any(|&(n, w)| self.complex.dim(n, w) == 0)
        {
            return Err(Error::InvalidFiltration("levels for an empty cell".into()));
        }
        for (&(n, w), d) in self.complex.differentials() {
            let src = self.level_slice(n, w);
            let dst = self.level_slice(n - 1, w);
            for (i, j, _) in d.entries() {
                if dst[i] < src[j] {
                    return Err(Error::InvalidFiltration(format!(
                        "differential at ({n}, {w}) lowers the level from {} to {}",
                        src[j], dst[i]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn ring(&self) -> Ring {
        self.complex.ring()
    }

    pub fn range(&self) -> (i64, i64) {
        self.range
    }

    pub fn levels(&self) -> &BTreeMap<Cell, Vec<i64>> {
        &self.levels
    }

    pub fn level_slice(&self, n: i64, w: i64) -> &[i64] {
        self.levels.get(&(n, w)).map_or(&[], Vec::as_slice)
    }

    /// The constant filtration: `F^s = C` for `s ≤ s0` and zero above.
    pub fn constant(c: ChainComplex, s0: i64) -> Self {
        let levels = c
            .cells()
            .map(|(n, w)| ((n, w), vec![s0; c.dim(n, w)]))
            .collect();
        FilteredComplex::new_unchecked(c, levels, (s0, s0))
    }

    fn indices(&self, n: i64, w: i64, keep: impl Fn(i64) -> bool) -> Vec<usize> {
        self.level_slice(n, w)
            .iter()
            .enumerate()
            .filter(|(_, &l)| keep(l))
            .map(|(i, _)| i)
            .collect()
    }

    fn restrict(
        &self,
        keep: impl Fn(i64) -> bool + Copy,
    ) -> (ChainComplex, BTreeMap<Cell, Vec<usize>>) {
        let c = &self.complex;
        let mut idx = BTreeMap::new();
        let mut bases = BTreeMap::new();
        for (n, w) in c.cells() {
            let ix = self.indices(n, w, keep);
            bases.insert(
                (n, w),
                ix.iter()
                    .map(|&i| c.basis(n, w)[i].clone())
                    .collect::<Vec<_>>(),
            );
            idx.insert((n, w), ix);
        }
        let mut diffs = BTreeMap::new();
        for (&(n, w), d) in c.differentials() {
            let empty = Vec::new();
            let rows = idx.get(&(n - 1, w)).unwrap_or(&empty);
            diffs.insert((n, w), d.submatrix(rows, &idx[&(n, w)]));
        }
        (ChainComplex::new_unchecked(c.ring(), bases, diffs), idx)
    }

    /// `F^s` as a complex on the basis elements of level `≥ s`.
    pub fn stage(&self, s: i64) -> ChainComplex {
        self.restrict(|l| l >= s).0
    }

    /// Structure map `F^{s+1} → F^s`.
    pub fn structure_map(&self, s: i64) -> ChainMap {
        let (src, src_idx) = self.restrict(|l| l > s);
        let (tgt, tgt_idx) = self.restrict(|l| l >= s);
        let mut blocks = BTreeMap::new();
        for (cell, si) in &src_idx {
            let ti = &tgt_idx[cell];
            let trip = si.iter().enumerate().map(|(j, g)| {
                let i = ti.binary_search(g).expect("subset of basis");
                (i, j, crate::exact::scalar::int(1))
            });
            blocks.insert(*cell, Matrix::from_triplets(ti.len(), si.len(), trip));
        }
        ChainMap::new_unchecked(src, tgt, blocks)
    }

    /// `gr^s = F^s / F^{s+1}` on the basis elements of level exactly `s`.
    pub fn graded_piece(&self, s: i64) -> ChainComplex {
        self.restrict(|l| l == s).0
    }

    pub fn associated_graded(&self) -> GradedComplex {
        let (lo, hi) = self.range;
        GradedComplex::new(
            self.ring(),
            (lo..=hi).map(|s| (s, self.graded_piece(s))).collect(),
        )
        .expect("pieces share the ring")
    }

    /// `H_n(F^s)` in weight `w`.
    pub fn stage_homology(&self, s: i64, n: i64, w: i64) -> FgAbGroup {
        self.stage(s).homology(n, w)
    }

    /// The filtration with every level moved by `k`.
    pub fn reindex(&self, k: i64) -> FilteredComplex {
        FilteredComplex::new_unchecked(
            self.complex.clone(),
            self.levels
                .iter()
                .map(|(c, l)| (*c, l.iter().map(|x| x + k).collect()))
                .collect(),
            (self.range.0 + k, self.range.1 + k),
        )
    }
}

/// `spl(G)^s = ⊕_{u ≥ s} G^u`: each piece keeps its own level.
pub fn split(g: &GradedComplex) -> FilteredComplex {
    let ring = g.ring();
    let Some((lo, hi)) = g.support() else {
        return FilteredComplex::new_unchecked(ChainComplex::zero(ring), BTreeMap::new(), (0, 0));
    };
    let mut bases: BTreeMap<Cell, Vec<String>> = BTreeMap::new();
    let mut levels: BTreeMap<Cell, Vec<i64>> = BTreeMap::new();
    for (&s, c) in g.pieces() {
        for (cell, b) in c.bases() {
            bases
                .entry(*cell)
                .or_default()
                .extend(b.iter().map(|l| format!("{l}@{s}")));
            levels
                .entry(*cell)
                .or_default()
                .extend(std::iter::repeat_n(s, b.len()));
        }
    }
    let mut diffs = BTreeMap::new();
    for &(n, w) in bases.keys() {
        let rows = bases.get(&(n - 1, w)).map_or(0, Vec::len);
        let cols = bases[&(n, w)].len();
        let (mut r0, mut c0) = (0, 0);
        let mut m = Matrix::zeros(rows, cols);
        for c in g.pieces().values() {
            m = m.add(&Matrix::embed(rows, cols, r0, c0, &c.differential(n, w)));
            r0 += c.dim(n - 1, w);
            c0 += c.dim(n, w);
        }
        diffs.insert((n, w), m);
    }
    FilteredComplex::new_unchecked(
        ChainComplex::new_unchecked(ring, bases, diffs),
        levels,
        (lo, hi),
    )
}

/// A cochain complex of free modules `M^i`, weight-graded, with
/// `∂: M^i → M^{i+1}`; the input of the brutal filtration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    pub ring: Ring,
    /// `(i, w)` → basis labels of `M^i` in weight `w`.
    pub terms: BTreeMap<Cell, Vec<String>>,
    /// `(i, w)` → `∂^i: M^i → M^{i+1}`.
    pub maps: BTreeMap<Cell, Matrix>,
}

impl CochainComplex {
    pub fn dim(&self, i: i64, w: i64) -> usize {
        self.terms.get(&(i, w)).map_or(0, Vec::len)
    }

    pub fn map(&self, i: i64, w: i64) -> Matrix {
        self.maps
            .get(&(i, w))
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dim(i + 1, w), self.dim(i, w)))
    }

    pub fn validate(&self) -> Result<()> {
        for (&(i, w), m) in &self.maps {
            if m.shape() != (self.dim(i + 1, w), self.dim(i, w)) {
                return Err(Error::InvalidComplex(format!(
                    "cochain map at ({i}, {w}) has the wrong shape"
                )));
            }
            if !self.map(i + 1, w).mul(m).is_zero() {
                return Err(Error::InvalidComplex(format!("∂∘∂ ≠ 0 at ({i}, {w})")));
            }
        }
        Ok(())
    }

    /// Cohomology `H^i` in weight `w`.
    pub fn cohomology(&self, i: i64, w: i64) -> FgAbGroup {
        crate::exact::homology_of_pair(&self.map(i - 1, w), &self.map(i, w), self.ring)
            .expect("valid cochain complex")
    }

    /// The chain complex with `M^i` in homological degree `-i`.
    pub fn to_chain_complex(&self) -> ChainComplex {
        ChainComplex::new_unchecked(
            self.ring,
            self.terms
                .iter()
                .map(|(&(i, w), b)| ((-i, w), b.clone()))
                .collect(),
            self.maps
                .iter()
                .map(|(&(i, w), m)| ((-i, w), m.clone()))
                .collect(),
        )
    }
}

/// Brutal filtration `|M|^{≥★}`: `M^i` sits in degree `-i` at level `i`, with
/// differential `∂`.
pub fn brutal_filtration(m: &CochainComplex) -> FilteredComplex {
    let c = m.to_chain_complex();
    let levels = m
        .terms
        .iter()
        .map(|(&(i, w), b)| ((-i, w), vec![i; b.len()]))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let lo = m.terms.keys().map(|&(i, _)| i).min().unwrap_or(0);
    let hi = m.terms.keys().map(|&(i, _)| i).max().unwrap_or(0);
    FilteredComplex::new_unchecked(c, levels, (lo, hi))
}

/// Postnikov filtration `F^i = τ_{≥i}` realized on an adapted basis.
///
/// In degree `n` the basis is `[complement of ker d_n | ker d_n]`; the
/// complement sits at level `n - 1` and the kernel at level `n`.
#[derive(Clone, Debug)]
pub struct PostnikovFiltration {
    pub filtered: FilteredComplex,
    pub bases: BTreeMap<Cell, AdaptedBasis>,
}

impl PostnikovFiltration {
    pub fn new(c: &ChainComplex) -> Result<Self> {
        use rayon::prelude::*;
        let cells: Vec<Cell> = c.cells().collect();
        let adapted: Vec<(Cell, AdaptedBasis)> = cells
            .into_par_iter()
            .map(|(n, w)| Ok(((n, w), AdaptedBasis::new(&c.differential(n, w), c.ring())?)))
            .collect::<Result<_>>()?;
        let bases: BTreeMap<Cell, AdaptedBasis> = adapted.into_iter().collect();
        let mut labels = BTreeMap::new();
        let mut levels = BTreeMap::new();
        let (mut lo, mut hi) = (i64::MAX, i64::MIN);
        for (&(n, w), a) in &bases {
            let mut lab = Vec::new();
            let mut lev = Vec::new();
            for i in 0..a.rank() {
                lab.push(format!("c{n}.{i}"));
                lev.push(n - 1);
            }
            for i in 0..a.kernel.len() {
                lab.push(format!("z{n}.{i}"));
                lev.push(n);
            }
            if a.rank() > 0 {
                lo = lo.min(n - 1);
            }
            if !a.kernel.is_empty() {
                lo = lo.min(n);
                hi = hi.max(n);
            }
            hi = hi.max(n - 1);
            labels.insert((n, w), lab);
            levels.insert((n, w), lev);
        }
        if lo > hi {
            lo = 0;
            hi = 0;
        }
        let mut diffs = BTreeMap::new();
        for (&(n, w), d) in c.differentials() {
            let p = bases[&(n, w)].basis_matrix();
            let q = &bases[&(n - 1, w)].inverse;
            diffs.insert((n, w), q.mul(d).mul(&p));
        }
        let filtered = FilteredComplex::new_unchecked(
            ChainComplex::new_unchecked(c.ring(), labels, diffs),
            levels,
            (lo, hi),
        );
        Ok(PostnikovFiltration { filtered, bases })
    }

    /// Rewrites a map `from → to` given in the original bases into the
    /// adapted bases.
    pub fn transport(&self, m: &Matrix, from: Cell, to: Cell) -> Matrix {
        let p = self.bases.get(&from).map(AdaptedBasis::basis_matrix);
        let q = self.bases.get(&to).map(|a| a.inverse.clone());
        match (p, q) {
            (Some(p), Some(q)) => q.mul(m).mul(&p),
            _ => Matrix::zeros(
                self.filtered.complex().dim(to.0, to.1),
                self.filtered.complex().dim(from.0, from.1),
            ),
        }
    }

    /// Adapted-basis vector → coordinates in the original basis.
    pub fn basis_matrix(&self, cell: Cell) -> Matrix {
        self.bases
            .get(&cell)
            .map_or_else(|| Matrix::zeros(0, 0), AdaptedBasis::basis_matrix)
    }
}

/// Rees-module model: the stages `F^s` with `t: F^{s+1} → F^s`.
#[derive(Clone, Debug)]
pub struct ReesModule {
    pub stages: BTreeMap<i64, ChainComplex>,
    /// `t[s]: F^{s+1} → F^s`
    pub t: BTreeMap<i64, ChainMap>,
}

pub fn rees(f: &FilteredComplex) -> ReesModule {
    let (lo, hi) = f.range();
    let stages = (lo..=hi + 1).map(|s| (s, f.stage(s))).collect();
    let t = (lo..=hi).map(|s| (s, f.structure_map(s))).collect();
    ReesModule { stages, t }
}

impl ReesModule {
    pub fn t_injective(&self) -> bool {
        self.t.values().all(|m| {
            m.blocks()
                .values()
                .all(|b| crate::exact::rank_nullity(b).1 == 0)
                && m.source()
                    .cells()
                    .all(|(n, w)| m.source().dim(n, w) == 0 || m.blocks().contains_key(&(n, w)))
        })
    }

    /// `coker(t: F^{s+1} → F^s)` computed as a quotient complex.
    pub fn cokernel(&self, s: i64) -> Result<ChainComplex> {
        match self.t.get(&s) {
            Some(m) => Ok(quotient(m)?.0),
            None => Ok(ChainComplex::zero(
                self.stages
                    .values()
                    .next()
                    .map_or(Ring::Integers, |c| c.ring()),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{ChainMap, ComplexBuilder};

    fn circle() -> ChainComplex {
        ComplexBuilder::new(Ring::Integers)
            .cell(1, 0, ["e"])
            .cell(0, 0, ["v"])
            .build()
            .unwrap()
    }

    #[test]
    fn constant_filtration() {
        let f = FilteredComplex::constant(circle(), 0);
        f.validate().unwrap();
        let g = f.associated_graded();
        assert_eq!(g.piece(0), circle());
        assert!(g.piece(1).is_zero());
        let r = rees(&f);
        assert!(r.t_injective());
        assert_eq!(r.cokernel(0).unwrap().homology(1, 0), FgAbGroup::free(1));
    }

    #[test]
    fn postnikov_of_circle() {
        let p = PostnikovFiltration::new(&circle()).unwrap();
        p.filtered.validate().unwrap();
        let g0 = p.filtered.graded_piece(0);
        let g1 = p.filtered.graded_piece(1);
        assert_eq!(g0.homology(0, 0), FgAbGroup::free(1));
        assert_eq!(g0.homology(1, 0), FgAbGroup::zero());
        assert_eq!(g1.homology(1, 0), FgAbGroup::free(1));
        assert_eq!(g1.homology(0, 0), FgAbGroup::zero());
    }

    #[test]
    fn brutal_of_two_term() {
        let m = CochainComplex {
            ring: Ring::Integers,
            terms: BTreeMap::from([((0, 0), vec!["a".into()]), ((1, 0), vec!["b".into()])]),
            maps: BTreeMap::from([((0, 0), Matrix::from_i64(&[vec![5]]))]),
        };
        m.validate().unwrap();
        let f = brutal_filtration(&m);
        f.validate().unwrap();
        assert_eq!(f.graded_piece(0).dim(0, 0), 1);
        assert_eq!(f.graded_piece(1).dim(-1, 0), 1);
        let r = rees(&f);
        assert!(r.t_injective());
        for s in 0..=1 {
            let q = r.cokernel(s).unwrap();
            let g = f.graded_piece(s);
            assert_eq!(q.homology_table(), g.homology_table());
        }
        assert_eq!(f.complex().homology(-1, 0), FgAbGroup::cyclic(5));
    }

    #[test]
    fn split_roundtrip() {
        let g = FilteredComplex::constant(circle(), 0).associated_graded();
        let s = split(&g);
        s.validate().unwrap();
        assert_eq!(s.associated_graded().piece(0).dim(1, 0), 1);
        let _ = ChainMap::identity(s.complex());
    }
}
