use std::collections::{BTreeMap, HashMap};

use num_traits::One;

use super::complex::{Cell, ChainComplex};
use super::map::ChainMap;
use crate::error::{Error, Result};
use crate::exact::scalar::sign;
use crate::exact::{smith_normal_form, AdaptedBasis, Matrix, Ring, Scalar};

fn same_ring(a: &ChainComplex, b: &ChainComplex) -> Result<Ring> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch(format!(
            "{} and {} coefficients",
            a.ring(),
            b.ring()
        )));
    }
    Ok(a.ring())
}

/// Position of the summand `C_{p,u} ⊗ D_{q,v}` inside `(C ⊗ D)_{n,w}`.
struct TensorLayout {
    /// cell of the product → list of (left cell, right cell, offset)
    summands: BTreeMap<Cell, Vec<(Cell, Cell, usize)>>,
    offsets: HashMap<(Cell, Cell), usize>,
}

impl TensorLayout {
    fn new(c: &ChainComplex, d: &ChainComplex) -> Self {
        let mut summands: BTreeMap<Cell, Vec<(Cell, Cell, usize)>> = BTreeMap::new();
        let mut sizes: BTreeMap<Cell, usize> = BTreeMap::new();
        let mut offsets = HashMap::new();
        for (p, u) in c.cells() {
            for (q, v) in d.cells() {
                let cell = (p + q, u + v);
                let off = sizes.entry(cell).or_insert(0);
                summands
                    .entry(cell)
                    .or_default()
                    .push(((p, u), (q, v), *off));
                offsets.insert(((p, u), (q, v)), *off);
                *off += c.dim(p, u) * d.dim(q, v);
            }
        }
        TensorLayout { summands, offsets }
    }
}

/// `C ⊗ D` with `d(x ⊗ y) = dx ⊗ y + (-1)^{|x|} x ⊗ dy`; the basis of each
/// cell lists summands by increasing left cell, then pairs row-major.
pub fn tensor(c: &ChainComplex, d: &ChainComplex) -> Result<ChainComplex> {
    let ring = same_ring(c, d)?;
    let layout = TensorLayout::new(c, d);
    let mut bases = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for (&(n, w), parts) in &layout.summands {
        let mut labels = Vec::new();
        for &((p, u), (q, v), _) in parts {
            for a in c.basis(p, u) {
                for b in d.basis(q, v) {
                    labels.push(format!("{a}⊗{b}"));
                }
            }
        }
        bases.insert((n, w), labels);
    }
    for (&(n, w), parts) in &layout.summands {
        let rows: usize = bases.get(&(n - 1, w)).map_or(0, Vec::len);
        let cols = bases[&(n, w)].len();
        let mut trip = Vec::new();
        for &((p, u), (q, v), off) in parts {
            let (dc, dd) = (c.dim(p, u), d.dim(q, v));
            if let (Some(m), Some(&to)) = (
                c.differential_ref(p, u),
                layout.offsets.get(&((p - 1, u), (q, v))),
            ) {
                let dd_next = dd;
                for (i, j, x) in m.entries() {
                    for k in 0..dd {
                        trip.push((to + i * dd_next + k, off + j * dd + k, x.clone()));
                    }
                }
            }
            if let (Some(m), Some(&to)) = (
                d.differential_ref(q, v),
                layout.offsets.get(&((p, u), (q - 1, v))),
            ) {
                let s = sign(p);
                let dd_next = d.dim(q - 1, v);
                for (i, j, x) in m.entries() {
                    for a in 0..dc {
                        trip.push((to + a * dd_next + i, off + a * dd + j, &s * x));
                    }
                }
            }
        }
        if !trip.is_empty() {
            diffs.insert((n, w), Matrix::from_triplets(rows, cols, trip));
        }
    }
    Ok(ChainComplex::new_unchecked(ring, bases, diffs))
}

/// Degree `+1` operator on `C ⊗ D` given by `x ⊗ y ↦ Fx ⊗ y + (-1)^{|x|} x ⊗ Gy`
/// for degree `+1` operators `F` on `C` and `G` on `D` (blocks keyed by
/// source cell).
pub fn tensor_operator(
    c: &ChainComplex,
    d: &ChainComplex,
    f: &BTreeMap<Cell, Matrix>,
    g: &BTreeMap<Cell, Matrix>,
) -> BTreeMap<Cell, Matrix> {
    let layout = TensorLayout::new(c, d);
    let dims: BTreeMap<Cell, usize> = layout
        .summands
        .iter()
        .map(|(cell, parts)| {
            let n: usize = parts
                .iter()
                .map(|&(l, r, _)| c.dim(l.0, l.1) * d.dim(r.0, r.1))
                .sum();
            (*cell, n)
        })
        .collect();
    let mut out = BTreeMap::new();
    for (&(n, w), parts) in &layout.summands {
        let mut trip = Vec::new();
        for &((p, u), (q, v), off) in parts {
            let (dc, dd) = (c.dim(p, u), d.dim(q, v));
            if let (Some(m), Some(&to)) =
                (f.get(&(p, u)), layout.offsets.get(&((p + 1, u), (q, v))))
            {
                for (i, j, x) in m.entries() {
                    for k in 0..dd {
                        trip.push((to + i * dd + k, off + j * dd + k, x.clone()));
                    }
                }
            }
            if let (Some(m), Some(&to)) =
                (g.get(&(q, v)), layout.offsets.get(&((p, u), (q + 1, v))))
            {
                let s = sign(p);
                let dd_next = d.dim(q + 1, v);
                for (i, j, x) in m.entries() {
                    for a in 0..dc {
                        trip.push((to + a * dd_next + i, off + a * dd + j, &s * x));
                    }
                }
            }
        }
        if !trip.is_empty() {
            let rows = dims.get(&(n + 1, w)).copied().unwrap_or(0);
            out.insert((n, w), Matrix::from_triplets(rows, dims[&(n, w)], trip));
        }
    }
    out
}

/// The symmetry `x ⊗ y ↦ (-1)^{|x||y|} y ⊗ x` as a map `C ⊗ D → D ⊗ C`.
pub fn swap_map(c: &ChainComplex, d: &ChainComplex) -> Result<ChainMap> {
    let cd = tensor(c, d)?;
    let dc = tensor(d, c)?;
    let l_cd = TensorLayout::new(c, d);
    let l_dc = TensorLayout::new(d, c);
    let mut blocks = BTreeMap::new();
    for (&(n, w), parts) in &l_cd.summands {
        let mut trip = Vec::new();
        for &((p, u), (q, v), off) in parts {
            let to = l_dc.offsets[&((q, v), (p, u))];
            let s = sign(p * q);
            let (dc_, dd) = (c.dim(p, u), d.dim(q, v));
            for a in 0..dc_ {
                for b in 0..dd {
                    trip.push((to + b * dc_ + a, off + a * dd + b, s.clone()));
                }
            }
        }
        blocks.insert(
            (n, w),
            Matrix::from_triplets(dc.dim(n, w), cd.dim(n, w), trip),
        );
    }
    Ok(ChainMap::new_unchecked(cd, dc, blocks))
}

/// `C[k]`: the `(n, w)` module moves to `(n + k, w)` and `d` picks up `(-1)^k`.
pub fn shift(c: &ChainComplex, k: i64) -> ChainComplex {
    let s = sign(k);
    ChainComplex::new_unchecked(
        c.ring(),
        c.bases()
            .iter()
            .map(|(&(n, w), b)| ((n + k, w), b.clone()))
            .collect(),
        c.differentials()
            .iter()
            .map(|(&(n, w), d)| ((n + k, w), d.scale(&s)))
            .collect(),
    )
}

/// `C ⊕ D`, with the basis of `C` first in every cell.
pub fn direct_sum(c: &ChainComplex, d: &ChainComplex) -> Result<ChainComplex> {
    let ring = same_ring(c, d)?;
    let mut bases: BTreeMap<Cell, Vec<String>> = BTreeMap::new();
    for (cell, b) in c.bases() {
        bases
            .entry(*cell)
            .or_default()
            .extend(b.iter().map(|l| format!("{l}|1")));
    }
    for (cell, b) in d.bases() {
        bases
            .entry(*cell)
            .or_default()
            .extend(b.iter().map(|l| format!("{l}|2")));
    }
    let mut diffs = BTreeMap::new();
    for &(n, w) in bases.keys() {
        let top = c.differential(n, w);
        let bottom = d.differential(n, w);
        let m = Matrix::embed(
            c.dim(n - 1, w) + d.dim(n - 1, w),
            c.dim(n, w) + d.dim(n, w),
            0,
            0,
            &top,
        )
        .add(&Matrix::embed(
            c.dim(n - 1, w) + d.dim(n - 1, w),
            c.dim(n, w) + d.dim(n, w),
            c.dim(n - 1, w),
            c.dim(n, w),
            &bottom,
        ));
        diffs.insert((n, w), m);
    }
    Ok(ChainComplex::new_unchecked(ring, bases, diffs))
}

/// Mapping cone of `f: C → D`: `cone_n = D_n ⊕ C_{n-1}` with
/// `d(y, x) = (dy + f x, -dx)`.
pub fn cone(f: &ChainMap) -> ChainComplex {
    let (c, d) = (f.source(), f.target());
    let mut bases: BTreeMap<Cell, Vec<String>> = BTreeMap::new();
    for (cell, b) in d.bases() {
        bases
            .entry(*cell)
            .or_default()
            .extend(b.iter().map(|l| format!("{l}|D")));
    }
    for (&(n, w), b) in c.bases() {
        bases
            .entry((n + 1, w))
            .or_default()
            .extend(b.iter().map(|l| format!("{l}|C")));
    }
    let mut diffs = BTreeMap::new();
    for &(n, w) in bases.keys() {
        let rows = d.dim(n - 1, w) + c.dim(n - 2, w);
        let cols = d.dim(n, w) + c.dim(n - 1, w);
        let mut m = Matrix::embed(rows, cols, 0, 0, &d.differential(n, w));
        m = m.add(&Matrix::embed(
            rows,
            cols,
            0,
            d.dim(n, w),
            &f.block(n - 1, w),
        ));
        m = m.add(&Matrix::embed(
            rows,
            cols,
            d.dim(n - 1, w),
            d.dim(n, w),
            &c.differential(n - 1, w).neg(),
        ));
        diffs.insert((n, w), m);
    }
    ChainComplex::new_unchecked(c.ring(), bases, diffs)
}

/// Good truncation `τ_{≥n} C = (… → C_{n+1} → ker d_n → 0)` with its
/// inclusion into `C`.
pub fn good_truncation(c: &ChainComplex, n: i64) -> Result<(ChainComplex, ChainMap)> {
    let mut bases = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    let mut blocks = BTreeMap::new();
    for (m, w) in c.cells() {
        if m > n {
            bases.insert((m, w), c.basis(m, w).to_vec());
            blocks.insert((m, w), Matrix::identity(c.dim(m, w)));
            if m > n + 1 {
                diffs.insert((m, w), c.differential(m, w));
            }
        } else if m == n {
            let adapted = AdaptedBasis::new(&c.differential(n, w), c.ring())?;
            let k = adapted.kernel.len();
            bases.insert((n, w), (0..k).map(|i| format!("z{i}")).collect::<Vec<_>>());
            blocks.insert((n, w), adapted.kernel_matrix());
            let coords = adapted.kernel_coordinates();
            diffs.insert((n + 1, w), coords.mul(&c.differential(n + 1, w)));
        }
    }
    let t = ChainComplex::new_unchecked(c.ring(), bases, diffs);
    let inclusion = ChainMap::new_unchecked(t.clone(), c.clone(), blocks);
    Ok((t, inclusion))
}

/// Quotient of `C` by the image of an injective chain map whose image is a
/// direct summand in every cell, with the projection `C → C/A`.
pub fn quotient(f: &ChainMap) -> Result<(ChainComplex, ChainMap)> {
    let c = f.target();
    let ring = c.ring();
    let mut complement: BTreeMap<Cell, Matrix> = BTreeMap::new();
    let mut project: BTreeMap<Cell, Matrix> = BTreeMap::new();
    for (n, w) in c.cells() {
        let m = f.block(n, w);
        let dim = c.dim(n, w);
        let (basis, inv, r) = if m.ncols() == 0 || m.is_zero() {
            (Matrix::identity(dim), Matrix::identity(dim), 0)
        } else {
            let scaled = match ring {
                Ring::Integers => m.clone(),
                Ring::Rationals => integral_columns(&m),
            };
            let snf = smith_normal_form(&scaled)?;
            let factors = snf.invariant_factors();
            if factors.len() != m.ncols() {
                return Err(Error::InvalidChainMap(format!(
                    "map is not injective at ({n}, {w})"
                )));
            }
            if ring == Ring::Integers
                && factors.iter().any(|d| !num_traits::Signed::abs(d).is_one())
            {
                return Err(Error::InvalidChainMap(format!(
                    "image is not a direct summand at ({n}, {w})"
                )));
            }
            // columns of u⁻¹ after the rank span a complement of the image
            (snf.u_inv, snf.u, factors.len())
        };
        let idx: Vec<usize> = (r..dim).collect();
        complement.insert((n, w), basis.select_cols(&idx));
        project.insert((n, w), inv.select_rows(&idx));
    }
    let mut bases = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for (n, w) in c.cells() {
        let k = complement[&(n, w)].ncols();
        bases.insert((n, w), (0..k).map(|i| format!("q{i}")).collect::<Vec<_>>());
        if let Some(p) = project.get(&(n - 1, w)) {
            diffs.insert(
                (n, w),
                p.mul(&c.differential(n, w)).mul(&complement[&(n, w)]),
            );
        }
    }
    let q = ChainComplex::new_unchecked(ring, bases, diffs);
    let proj = ChainMap::new_unchecked(c.clone(), q.clone(), project);
    Ok((q, proj))
}

fn integral_columns(m: &Matrix) -> Matrix {
    let cols: Vec<_> = m
        .columns()
        .into_iter()
        .map(|c| {
            let den = crate::exact::scalar::common_denominator(c.iter().map(|(_, v)| v));
            let den = Scalar::from_integer(den);
            c.into_iter().map(|(i, v)| (i, v * &den)).collect()
        })
        .collect();
    Matrix::from_columns(m.nrows(), &cols)
}

/// Homology ranks and torsion for every cell in the given degree range and
/// the weights present.
pub fn homology_in_window(
    c: &ChainComplex,
    lo: i64,
    hi: i64,
) -> BTreeMap<Cell, crate::exact::FgAbGroup> {
    use rayon::prelude::*;
    let cells: Vec<Cell> = c
        .weights()
        .into_iter()
        .flat_map(|w| (lo..=hi).map(move |n| (n, w)))
        .collect();
    cells
        .into_par_iter()
        .map(|(n, w)| ((n, w), c.homology(n, w)))
        .collect()
}
