use std::collections::BTreeMap;

use super::circle::{u_model, Side};
use super::complex::{validate_mixed, MixedComplex};
use crate::complexes::{shift, Cell, ChainComplex, ComplexBuilder};
use crate::error::{Error, Result};
use crate::exact::{FgAbGroup, Matrix, Ring};
use crate::filtered::{FilteredComplex, Multicomplex};

/// A filtered complex with an operator `B` of filtration weight at least one:
/// `B(F^s_n) ⊆ F^{s+1}_{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredMixedComplex {
    filtered: FilteredComplex,
    b_op: BTreeMap<Cell, Matrix>,
}

impl FilteredMixedComplex {
    pub fn new(filtered: FilteredComplex, b_op: BTreeMap<Cell, Matrix>) -> Result<Self> {
        let x = FilteredMixedComplex::new_unchecked(filtered, b_op);
        x.validate()?;
        Ok(x)
    }

    pub(crate) fn new_unchecked(
        filtered: FilteredComplex,
        mut b_op: BTreeMap<Cell, Matrix>,
    ) -> Self {
        b_op.retain(|_, m| !m.is_zero());
        FilteredMixedComplex { filtered, b_op }
    }

    pub fn validate(&self) -> Result<()> {
        self.filtered.validate()?;
        validate_mixed(self.filtered.complex(), &self.b_op)?;
        for (&(n, w), m) in &self.b_op {
            let src = self.filtered.level_slice(n, w);
            let dst = self.filtered.level_slice(n + 1, w);
            for (i, j, _) in m.entries() {
                if dst[i] < src[j] + 1 {
                    return Err(Error::InvalidMixed(format!(
                        "B at ({n}, {w}) raises the level from {} only to {}",
                        src[j], dst[i]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn filtered(&self) -> &FilteredComplex {
        &self.filtered
    }

    pub fn b_blocks(&self) -> &BTreeMap<Cell, Matrix> {
        &self.b_op
    }

    pub fn ring(&self) -> Ring {
        self.filtered.ring()
    }

    pub fn underlying(&self) -> MixedComplex {
        MixedComplex::new_unchecked(self.filtered.complex().clone(), self.b_op.clone())
    }

    /// The filtered circle `T_fil`: `e₀` at level 0, `e₁` at level 1.
    pub fn filtered_circle(ring: Ring) -> Self {
        let x = MixedComplex::circle_algebra(ring);
        let levels = BTreeMap::from([((0, 0), vec![0]), ((1, 0), vec![1])]);
        FilteredMixedComplex::new_unchecked(
            FilteredComplex::new_unchecked(x.complex().clone(), levels, (0, 1)),
            x.b_blocks().clone(),
        )
    }

    /// `T_fil ⊗ F`: levels add, `B` acts on the circle factor.
    pub fn induced(f: &FilteredComplex) -> Result<Self> {
        let t = FilteredMixedComplex::filtered_circle(f.ring());
        let x = super::complex::tensor_mixed(
            &t.underlying(),
            &MixedComplex::trivial(f.complex().clone()),
        )?;
        // tensor cells list summands by left cell; the circle has one element
        // per cell, so each product cell is (e₀ ⊗ F_n) followed by (e₁ ⊗ F_{n-1})
        let mut levels: BTreeMap<Cell, Vec<i64>> = BTreeMap::new();
        for (n, w) in x.complex().cells() {
            let mut lv = Vec::new();
            lv.extend(f.level_slice(n, w).iter().copied());
            lv.extend(f.level_slice(n - 1, w).iter().map(|l| l + 1));
            levels.insert((n, w), lv);
        }
        let (lo, hi) = f.range();
        Ok(FilteredMixedComplex::new_unchecked(
            FilteredComplex::new_unchecked(x.complex().clone(), levels, (lo, hi + 1)),
            x.b_blocks().clone(),
        ))
    }

    /// The level-preserving part of `b` and the level-raising-by-one part of
    /// `B` on `gr X`, as the h₋ multicomplex `Y^ℓ = gr^ℓ X [-2ℓ]`, `d₁ = B₁`.
    pub fn graded_multicomplex(&self) -> Multicomplex {
        let f = &self.filtered;
        let (lo, hi) = f.range();
        let mut pieces = BTreeMap::new();
        for l in lo..=hi {
            let g = f.graded_piece(l);
            if !g.is_zero() {
                pieces.insert(l, shift(&g, -2 * l));
            }
        }
        let mut higher = BTreeMap::new();
        for (&(n, w), m) in &self.b_op {
            let src = f.level_slice(n, w);
            let dst = f.level_slice(n + 1, w);
            for l in lo..=hi {
                let cols: Vec<usize> = (0..src.len()).filter(|&j| src[j] == l).collect();
                let rows: Vec<usize> = (0..dst.len()).filter(|&i| dst[i] == l + 1).collect();
                if cols.is_empty() || rows.is_empty() {
                    continue;
                }
                let block = m.submatrix(&rows, &cols);
                higher.insert((1, l, (n - 2 * l, w)), block);
            }
        }
        Multicomplex::new_unchecked(self.ring(), pieces, higher)
    }

    /// `|gr X|^{≥★}` and `|gr X|`.
    pub fn graded_cohomology_type(&self) -> (FilteredComplex, ChainComplex) {
        self.graded_multicomplex().cohomology_type()
    }
}

/// `X^{hT_fil}`: `F^i_n = ∏_{j≥0} (F^{i+j})_{n+2j}`; the copy `j` of an element
/// of level `ℓ` has level `ℓ - j`.
pub fn filtered_fixed(x: &FilteredMixedComplex, window: (i64, i64)) -> Result<FilteredComplex> {
    build(x, Side::Fixed, window)
}

/// Filtered orbits and Tate construction.
///
/// Orbits: `F^i_n = ⊕_{k≥0} (F^{i-k})_{n-2k}`, the copy `k` of an element of
/// level `ℓ` having level `ℓ + k`. Tate: `F^i_n = ⊕_{j∈ℤ} (F^{i+j})_{n+2j}`.
pub fn filtered_orbits_tate(
    x: &FilteredMixedComplex,
    window: (i64, i64),
) -> Result<(FilteredComplex, FilteredComplex)> {
    Ok((
        build(x, Side::Orbits, window)?,
        build(x, Side::Tate, window)?,
    ))
}

fn build(x: &FilteredMixedComplex, side: Side, window: (i64, i64)) -> Result<FilteredComplex> {
    let (lo, hi) = window;
    if lo > hi {
        return Err(Error::Window(format!("empty window ({lo}, {hi})")));
    }
    let (c, levels) = u_model(
        x.filtered.complex(),
        &x.b_op,
        Some(x.filtered.levels()),
        side,
        lo,
        hi,
    );
    let lmin = levels.values().flatten().copied().min().unwrap_or(0);
    let lmax = levels.values().flatten().copied().max().unwrap_or(0);
    Ok(FilteredComplex::new_unchecked(c, levels, (lmin, lmax)))
}

/// Outcome of comparing `colim_i (X^{hT_fil})^i` with `(colim X)^{hS¹}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColimitReport {
    /// `gr^i X` acyclic for `i < 0`.
    pub nonnegative: bool,
    /// Smallest `a ≥ 0` with `H_m(gr^i X) = 0` for all `m > 2i + a`.
    pub a: i64,
    pub a_max: i64,
    pub hypothesis_holds: bool,
    pub colimit: BTreeMap<Cell, FgAbGroup>,
    pub direct: BTreeMap<Cell, FgAbGroup>,
    pub agree: bool,
}

/// Computes both sides on the window and checks the coconnectivity
/// hypothesis `gr^i X ∈ C_{≤ 2i + a}` with `a ≤ a_max`.
pub fn colimit_comparison(
    x: &FilteredMixedComplex,
    window: (i64, i64),
    a_max: i64,
) -> Result<ColimitReport> {
    let (lo, hi) = window;
    let fixed = filtered_fixed(x, window)?;
    // levels are bounded below on every window, so the colimit is the stage at
    // the lowest level present
    let colim = fixed.stage(fixed.range().0);
    let direct = super::circle::fixed_points(&x.underlying(), window)?;
    let weights: Vec<i64> = colim.weights().union(&direct.weights()).copied().collect();
    let mut c_groups = BTreeMap::new();
    let mut d_groups = BTreeMap::new();
    for &w in &weights {
        for n in lo..=hi {
            c_groups.insert((n, w), colim.homology(n, w));
            d_groups.insert((n, w), direct.homology(n, w));
        }
    }
    let f = x.filtered();
    let (flo, fhi) = f.range();
    let mut nonnegative = true;
    let mut a = 0;
    for i in flo..=fhi {
        let g = f.graded_piece(i);
        for ((m, _), h) in g.homology_table() {
            if h.is_zero() {
                continue;
            }
            if i < 0 {
                nonnegative = false;
            }
            a = a.max(m - 2 * i);
        }
    }
    let agree = c_groups == d_groups;
    Ok(ColimitReport {
        nonnegative,
        a,
        a_max,
        hypothesis_holds: nonnegative && a <= a_max,
        colimit: c_groups,
        direct: d_groups,
        agree,
    })
}

/// A filtered mixed complex whose graded pieces are as coconnective as wanted:
/// `ℤ` in degree `m` at level 0 with `B = 0`. For `m > a_max` the
/// coconnectivity hypothesis fails.
pub fn fattened_point(ring: Ring, m: i64) -> FilteredMixedComplex {
    let c = ComplexBuilder::new(ring)
        .cell(m, 0, ["p"])
        .build()
        .expect("one cell");
    FilteredMixedComplex::new_unchecked(FilteredComplex::constant(c, 0), BTreeMap::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::ComplexBuilder;

    fn point() -> FilteredMixedComplex {
        FilteredMixedComplex::new(
            FilteredComplex::constant(ChainComplex::unit(Ring::Integers), 0),
            BTreeMap::new(),
        )
        .unwrap()
    }

    #[test]
    fn filtered_circle_is_valid() {
        let t = FilteredMixedComplex::filtered_circle(Ring::Integers);
        t.validate().unwrap();
        let m = t.graded_multicomplex();
        m.validate().unwrap();
    }

    #[test]
    fn point_pieces() {
        let x = point();
        let f = filtered_fixed(&x, (-4, 2)).unwrap();
        f.validate().unwrap();
        // gr^i of the fixed points of a point is ℤ in degree 2i (only i ≤ 0)
        for i in -2..=0 {
            let g = f.graded_piece(i);
            assert_eq!(g.homology(2 * i, 0), FgAbGroup::free(1));
        }
        let (_, t) = filtered_orbits_tate(&x, (-4, 4)).unwrap();
        for i in -2..=2 {
            assert_eq!(t.graded_piece(i).homology(2 * i, 0), FgAbGroup::free(1));
        }
    }

    #[test]
    fn induced_vanishing() {
        let c = ComplexBuilder::new(Ring::Integers)
            .cell(0, 0, ["a"])
            .cell(1, 0, ["b"])
            .differential(1, 0, Matrix::from_i64(&[vec![3]]))
            .build()
            .unwrap();
        let x = FilteredMixedComplex::induced(&FilteredComplex::constant(c, 0)).unwrap();
        x.validate().unwrap();
        let (_, t) = filtered_orbits_tate(&x, (-3, 3)).unwrap();
        t.validate().unwrap();
        assert!((-3..=3).all(|n| t.complex().homology(n, 0).is_zero()));
        let (lo, hi) = t.range();
        for i in lo..=hi {
            let g = t.graded_piece(i);
            assert!((-3..=3).all(|n| g.homology(n, 0).is_zero()));
        }
    }

    #[test]
    fn colimit_point() {
        let r = colimit_comparison(&point(), (-4, 2), 0).unwrap();
        assert!(r.agree);
        assert_eq!(r.a, 0);
        assert!(r.hypothesis_holds);
        let bad = colimit_comparison(&fattened_point(Ring::Integers, 3), (-4, 4), 2).unwrap();
        assert!(!bad.hypothesis_holds);
    }
}
