use std::collections::BTreeMap;

use super::filtration::FilteredComplex;
use super::graded::{GradedComplex, Shear};
use crate::complexes::{Cell, ChainComplex};
use crate::error::{Error, Result};
use crate::exact::{Matrix, Ring};

/// Graded pieces `Y^s` with components `d_k: Y^s_n → Y^{s+k}_{n-1}`.
///
/// `d_0` is the differential of each piece; the higher components are stored
/// under `(k, s, (n, w))` with source cell `(n, w)` of `Y^s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multicomplex {
    ring: Ring,
    pieces: BTreeMap<i64, ChainComplex>,
    higher: BTreeMap<(usize, i64, Cell), Matrix>,
}

impl Multicomplex {
    pub fn new(
        ring: Ring,
        pieces: BTreeMap<i64, ChainComplex>,
        higher: BTreeMap<(usize, i64, Cell), Matrix>,
    ) -> Result<Self> {
        let m = Multicomplex::new_unchecked(ring, pieces, higher);
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(
        ring: Ring,
        pieces: BTreeMap<i64, ChainComplex>,
        mut higher: BTreeMap<(usize, i64, Cell), Matrix>,
    ) -> Self {
        higher.retain(|_, m| !m.is_zero());
        Multicomplex {
            ring,
            pieces,
            higher,
        }
    }

    /// Checks shapes and `Σ_{i+j=k} d_i d_j = 0` for every `k`.
    pub fn validate(&self) -> Result<()> {
        for c in self.pieces.values() {
            if c.ring() != self.ring {
                return Err(Error::RingMismatch("multicomplex piece".into()));
            }
            c.validate()?;
        }
        for (&(k, s, (n, w)), m) in &self.higher {
            if k == 0 {
                return Err(Error::InvalidMulticomplex(
                    "d_0 lives in the pieces, not among the higher components".into(),
                ));
            }
            let expected = (self.dim(s + k as i64, n - 1, w), self.dim(s, n, w));
            if m.shape() != expected {
                return Err(Error::InvalidMulticomplex(format!(
                    "d_{k} at weight {s}, cell ({n}, {w}) has shape {:?}, expected {expected:?}",
                    m.shape()
                )));
            }
        }
        let max_k = self.max_k();
        for (&s, c) in &self.pieces {
            for (n, w) in c.cells() {
                for k in 0..=2 * max_k {
                    let t = s + k as i64;
                    if self.dim(t, n - 2, w) == 0 {
                        continue;
                    }
                    let mut acc = Matrix::zeros(self.dim(t, n - 2, w), self.dim(s, n, w));
                    for i in 0..=k {
                        let j = k - i;
                        let first = self.d(j, s, n, w);
                        let second = self.d(i, s + j as i64, n - 1, w);
                        acc = acc.add(&second.mul(&first));
                    }
                    if !acc.is_zero() {
                        return Err(Error::InvalidMulticomplex(format!(
                            "Σ d_i d_j ≠ 0 for k = {k} from weight {s}, cell ({n}, {w})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn pieces(&self) -> &BTreeMap<i64, ChainComplex> {
        &self.pieces
    }

    pub fn piece(&self, s: i64) -> ChainComplex {
        self.pieces
            .get(&s)
            .cloned()
            .unwrap_or_else(|| ChainComplex::zero(self.ring))
    }

    pub fn dim(&self, s: i64, n: i64, w: i64) -> usize {
        self.pieces.get(&s).map_or(0, |c| c.dim(n, w))
    }

    pub fn max_k(&self) -> usize {
        self.higher.keys().map(|&(k, _, _)| k).max().unwrap_or(0)
    }

    /// `d_k` from `Y^s` at cell `(n, w)`.
    pub fn d(&self, k: usize, s: i64, n: i64, w: i64) -> Matrix {
        if k == 0 {
            return self
                .pieces
                .get(&s)
                .map_or_else(|| Matrix::zeros(0, 0), |c| c.differential(n, w));
        }
        self.higher
            .get(&(k, s, (n, w)))
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dim(s + k as i64, n - 1, w), self.dim(s, n, w)))
    }

    pub fn higher(&self) -> &BTreeMap<(usize, i64, Cell), Matrix> {
        &self.higher
    }

    /// `Y` with its internal differential only.
    pub fn underlying_graded(&self) -> GradedComplex {
        GradedComplex::new(self.ring, self.pieces.clone()).expect("pieces share the ring")
    }

    /// A graded complex with no higher components.
    pub fn from_graded(g: &GradedComplex) -> Multicomplex {
        Multicomplex::new_unchecked(g.ring(), g.pieces().clone(), BTreeMap::new())
    }

    /// `Y^s ↦ Y^s[±2s]`, moving every `d_k` along.
    pub fn shear(&self, dir: Shear) -> Multicomplex {
        let step = match dir {
            Shear::Plus => 2,
            Shear::Minus => -2,
        };
        let pieces = self.underlying_graded().shear(dir).pieces().clone();
        let higher = self
            .higher
            .iter()
            .map(|(&(k, s, (n, w)), m)| ((k, s, (n + step * s, w)), m.clone()))
            .collect();
        Multicomplex::new_unchecked(self.ring, pieces, higher)
    }

    /// `|M|^{≥★}`: `F^s_n = ⊕_{u ≥ s} Y^u_n` with differential `Σ_k d_k`.
    pub fn totalize(&self) -> FilteredComplex {
        let mut bases: BTreeMap<Cell, Vec<String>> = BTreeMap::new();
        let mut levels: BTreeMap<Cell, Vec<i64>> = BTreeMap::new();
        let mut offsets: BTreeMap<(i64, Cell), usize> = BTreeMap::new();
        for (&s, c) in &self.pieces {
            for (cell, b) in c.bases() {
                let entry = bases.entry(*cell).or_default();
                offsets.insert((s, *cell), entry.len());
                entry.extend(b.iter().map(|l| format!("{l}@{s}")));
                levels
                    .entry(*cell)
                    .or_default()
                    .extend(std::iter::repeat_n(s, b.len()));
            }
        }
        let mut trip: BTreeMap<Cell, Vec<(usize, usize, crate::exact::Scalar)>> = BTreeMap::new();
        let mut push = |s: i64, t: i64, n: i64, w: i64, m: &Matrix| {
            let (Some(&c0), Some(&r0)) = (offsets.get(&(s, (n, w))), offsets.get(&(t, (n - 1, w))))
            else {
                return;
            };
            let e = trip.entry((n, w)).or_default();
            for (i, j, x) in m.entries() {
                e.push((r0 + i, c0 + j, x.clone()));
            }
        };
        for (&s, c) in &self.pieces {
            for (&(n, w), d) in c.differentials() {
                push(s, s, n, w, d);
            }
        }
        for (&(k, s, (n, w)), m) in &self.higher {
            push(s, s + k as i64, n, w, m);
        }
        let diffs = trip
            .into_iter()
            .map(|((n, w), t)| {
                let rows = bases.get(&(n - 1, w)).map_or(0, Vec::len);
                let cols = bases[&(n, w)].len();
                ((n, w), Matrix::from_triplets(rows, cols, t))
            })
            .collect();
        let lo = self.pieces.keys().next().copied().unwrap_or(0);
        let hi = self.pieces.keys().next_back().copied().unwrap_or(0);
        FilteredComplex::new_unchecked(
            ChainComplex::new_unchecked(self.ring, bases, diffs),
            levels,
            (lo, hi),
        )
    }

    /// `(|M|^{≥★}, |M|)`.
    pub fn cohomology_type(&self) -> (FilteredComplex, ChainComplex) {
        let f = self.totalize();
        let total = f.complex().clone();
        (f, total)
    }
}

/// Splits a filtered complex along its levels: `Y^s` is the span of the basis
/// elements of level `s` and `d_k` is the block of `d` from level `s` to
/// level `s + k`.
pub fn split_multicomplex(f: &FilteredComplex) -> Multicomplex {
    let c = f.complex();
    let (lo, hi) = f.range();
    let mut idx: BTreeMap<(i64, Cell), Vec<usize>> = BTreeMap::new();
    for (&cell, lv) in f.levels() {
        for (i, &l) in lv.iter().enumerate() {
            idx.entry((l, cell)).or_default().push(i);
        }
    }
    let get = |s: i64, cell: Cell| idx.get(&(s, cell)).cloned().unwrap_or_default();
    let mut pieces = BTreeMap::new();
    for s in lo..=hi {
        let mut bases = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for (n, w) in c.cells() {
            let ix = get(s, (n, w));
            if ix.is_empty() {
                continue;
            }
            bases.insert(
                (n, w),
                ix.iter()
                    .map(|&i| c.basis(n, w)[i].clone())
                    .collect::<Vec<_>>(),
            );
            if let Some(d) = c.differential_ref(n, w) {
                diffs.insert((n, w), d.submatrix(&get(s, (n - 1, w)), &ix));
            }
        }
        pieces.insert(s, ChainComplex::new_unchecked(c.ring(), bases, diffs));
    }
    let mut higher = BTreeMap::new();
    for (&(n, w), d) in c.differentials() {
        for s in lo..=hi {
            let cols = get(s, (n, w));
            if cols.is_empty() {
                continue;
            }
            for t in (s + 1)..=hi {
                let rows = get(t, (n - 1, w));
                if rows.is_empty() {
                    continue;
                }
                higher.insert(((t - s) as usize, s, (n, w)), d.submatrix(&rows, &cols));
            }
        }
    }
    Multicomplex::new_unchecked(
        c.ring(),
        pieces.into_iter().filter(|(_, p)| !p.is_zero()).collect(),
        higher,
    )
}

pub fn totalize_multicomplex(m: &Multicomplex) -> FilteredComplex {
    m.totalize()
}
