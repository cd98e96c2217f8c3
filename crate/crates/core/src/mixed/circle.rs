use std::collections::BTreeMap;

use super::complex::MixedComplex;
use crate::complexes::{shift, Cell, ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::exact::{FgAbGroup, Matrix};

/// Which copies `u^j X` (`j ∈ ℤ`, `u` of degree −2) the small model keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Side {
    /// `j ≥ 0`: fixed points.
    Fixed,
    /// `j ≤ 0`: orbits.
    Orbits,
    /// all `j`: Tate.
    Tate,
}

impl Side {
    fn allows(self, j: i64) -> bool {
        match self {
            Side::Fixed => j >= 0,
            Side::Orbits => j <= 0,
            Side::Tate => true,
        }
    }
}

/// Degree-`n` term `⊕_j X_{n+2j}` over the allowed `j`, with differential
/// `b` within each copy and `B` from copy `j` to copy `j + 1`. Only degrees
/// `lo - 1 ..= hi + 1` are built; the bottom one has no outgoing differential.
///
/// With levels `ℓ` on `X`, the copy `j` of an element gets level `ℓ - j`.
pub(crate) fn u_model(
    x: &ChainComplex,
    b_op: &BTreeMap<Cell, Matrix>,
    x_levels: Option<&BTreeMap<Cell, Vec<i64>>>,
    side: Side,
    lo: i64,
    hi: i64,
) -> (ChainComplex, BTreeMap<Cell, Vec<i64>>) {
    let mut bases: BTreeMap<Cell, Vec<String>> = BTreeMap::new();
    let mut levels: BTreeMap<Cell, Vec<i64>> = BTreeMap::new();
    let mut offsets: BTreeMap<(Cell, i64), usize> = BTreeMap::new();
    let mut summands: BTreeMap<Cell, Vec<i64>> = BTreeMap::new();
    for w in x.weights() {
        let degs: Vec<i64> = x
            .cells()
            .filter(|&(_, ww)| ww == w)
            .map(|(n, _)| n)
            .collect();
        let (a, b) = (*degs.iter().min().unwrap(), *degs.iter().max().unwrap());
        for n in (lo - 1)..=(hi + 1) {
            // a ≤ n + 2j ≤ b
            let jmin = (a - n).div_euclid(2) + i64::from((a - n).rem_euclid(2) != 0);
            let jmax = (b - n).div_euclid(2);
            let mut labels = Vec::new();
            let mut lv = Vec::new();
            for j in jmin..=jmax {
                if !side.allows(j) {
                    continue;
                }
                let m = n + 2 * j;
                if x.dim(m, w) == 0 {
                    continue;
                }
                offsets.insert(((n, w), j), labels.len());
                summands.entry((n, w)).or_default().push(j);
                labels.extend(x.basis(m, w).iter().map(|l| format!("u^{j}·{l}")));
                match x_levels.and_then(|l| l.get(&(m, w))) {
                    Some(ls) => lv.extend(ls.iter().map(|l| l - j)),
                    None => lv.extend(std::iter::repeat_n(-j, x.dim(m, w))),
                }
            }
            if !labels.is_empty() {
                bases.insert((n, w), labels);
                levels.insert((n, w), lv);
            }
        }
    }
    let mut diffs = BTreeMap::new();
    for (&(n, w), js) in &summands {
        if n < lo {
            continue;
        }
        let rows = bases.get(&(n - 1, w)).map_or(0, Vec::len);
        let cols = bases[&(n, w)].len();
        let mut trip = Vec::new();
        for &j in js {
            let m = n + 2 * j;
            let c0 = offsets[&((n, w), j)];
            if let (Some(d), Some(&r0)) = (x.differential_ref(m, w), offsets.get(&((n - 1, w), j)))
            {
                for (i, k, v) in d.entries() {
                    trip.push((r0 + i, c0 + k, v.clone()));
                }
            }
            if let (Some(bb), Some(&r0)) = (b_op.get(&(m, w)), offsets.get(&((n - 1, w), j + 1))) {
                for (i, k, v) in bb.entries() {
                    trip.push((r0 + i, c0 + k, v.clone()));
                }
            }
        }
        if !trip.is_empty() {
            diffs.insert((n, w), Matrix::from_triplets(rows, cols, trip));
        }
    }
    (ChainComplex::new_unchecked(x.ring(), bases, diffs), levels)
}

fn check_window(lo: i64, hi: i64) -> Result<()> {
    if lo > hi {
        return Err(Error::Window(format!("empty window ({lo}, {hi})")));
    }
    Ok(())
}

/// Fixed points `X^{hS¹}` in the small model: degree `n` is `∏_{j≥0} X_{n+2j}`,
/// built on degrees `lo - 1 ..= hi + 1` so homology is exact on `lo ..= hi`.
pub fn fixed_points(x: &MixedComplex, window: (i64, i64)) -> Result<ChainComplex> {
    check_window(window.0, window.1)?;
    Ok(u_model(
        x.complex(),
        x.b_blocks(),
        None,
        Side::Fixed,
        window.0,
        window.1,
    )
    .0)
}

/// Orbits `X_{hS¹}`: degree `n` is `⊕_{k≥0} X_{n-2k}` with `d = b + B`.
pub fn orbits(x: &MixedComplex, window: (i64, i64)) -> Result<ChainComplex> {
    check_window(window.0, window.1)?;
    Ok(u_model(
        x.complex(),
        x.b_blocks(),
        None,
        Side::Orbits,
        window.0,
        window.1,
    )
    .0)
}

/// Two-sided model: degree `n` is `⊕_{j∈ℤ} X_{n+2j}`.
pub fn tate(x: &MixedComplex, window: (i64, i64)) -> Result<ChainComplex> {
    check_window(window.0, window.1)?;
    Ok(u_model(
        x.complex(),
        x.b_blocks(),
        None,
        Side::Tate,
        window.0,
        window.1,
    )
    .0)
}

/// Norm map, its source and target, and the Tate construction.
#[derive(Clone, Debug)]
pub struct NormTate {
    pub fixed: ChainComplex,
    /// Orbits shifted by one (differential `-d`).
    pub shifted_orbits: ChainComplex,
    pub norm: ChainMap,
    /// The two-sided model; `fixed` is its `j ≥ 0` part and the quotient is
    /// the orbits shifted by two.
    pub tate: ChainComplex,
}

/// `Nm: X_{hS¹}[1] → X^{hS¹}`, `x ↦ (B x₀, 0, 0, …)`, and the Tate
/// construction, whose two-sided model is isomorphic to `cone(Nm)`.
pub fn norm_and_tate(x: &MixedComplex, window: (i64, i64)) -> Result<NormTate> {
    let (lo, hi) = window;
    let fixed = fixed_points(x, window)?;
    let orb = orbits(x, (lo - 1, hi - 1))?;
    let shifted = shift(&orb, 1);
    let mut blocks = BTreeMap::new();
    for (n, w) in shifted.cells() {
        // copies are ordered by j: the j = 0 copy of X_{n-1} comes last in
        // orbits degree n - 1 and the j = 0 copy of X_n first in fixed degree n
        let b = x.b_operator(n - 1, w);
        if b.is_zero() || fixed.dim(n, w) == 0 {
            continue;
        }
        let c0 = shifted.dim(n, w) - x.complex().dim(n - 1, w);
        let m = Matrix::embed(fixed.dim(n, w), shifted.dim(n, w), 0, c0, &b);
        blocks.insert((n, w), m);
    }
    let norm = ChainMap::new_unchecked(shifted.clone(), fixed.clone(), blocks);
    let tate = tate(x, window)?;
    Ok(NormTate {
        fixed,
        shifted_orbits: shifted,
        norm,
        tate,
    })
}

/// A homology group on a window together with whether widening the window
/// by two on both sides leaves it unchanged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowCell {
    pub group: FgAbGroup,
    pub stable: bool,
}

/// Homology of `build(window)` on every degree in the window and weight,
/// each cell checked against `build` on the widened window.
pub fn windowed_homology(
    build: impl Fn((i64, i64)) -> Result<ChainComplex>,
    window: (i64, i64),
) -> Result<BTreeMap<Cell, WindowCell>> {
    use rayon::prelude::*;
    let (lo, hi) = window;
    let narrow = build(window)?;
    let wide = build((lo - 2, hi + 2))?;
    let weights: Vec<i64> = narrow.weights().union(&wide.weights()).copied().collect();
    let cells: Vec<Cell> = weights
        .iter()
        .flat_map(|&w| (lo..=hi).map(move |n| (n, w)))
        .collect();
    Ok(cells
        .into_par_iter()
        .map(|(n, w)| {
            let g = narrow.homology(n, w);
            let stable = wide.homology(n, w) == g;
            ((n, w), WindowCell { group: g, stable })
        })
        .collect())
}
