use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use super::group::{adams_element, eulerian_idempotent, parity, GroupAlgebraElement, MAX_N};
use crate::complexes::{Cell, ChainMap};
use crate::error::{Error, Result};
use crate::exact::scalar::{int, sign};
use crate::exact::{FgAbGroup, Matrix, Ring, Scalar};
use crate::hochschild::{hkr_filtration, Factor, HkrFiltration, HochschildData};

/// Matrix of `x ↦ x · a` on the cell `(n, w)` of the bar complex: `σ` sends
/// `a₀ ⊗ a₁ ⊗ … ⊗ aₙ` to `sgn(σ) a₀ ⊗ a_{σ⁻¹(1)} ⊗ … ⊗ a_{σ⁻¹(n)}`.
pub fn act(data: &HochschildData, a: &GroupAlgebraElement, n: i64, w: i64) -> Result<Matrix> {
    if a.n != n as usize {
        return Err(Error::DimensionMismatch(format!(
            "element of S_{} acting on degree {n}",
            a.n
        )));
    }
    let dim = data.dim(n, w);
    let tensors = data.tensors(n, w);
    let terms: Vec<(&Vec<u8>, Scalar)> = a
        .coefficients
        .iter()
        .map(|(p, c)| (p, sign(parity(p)) * c))
        .collect();
    let cols: Vec<Vec<(usize, usize, Scalar)>> = tensors
        .par_iter()
        .enumerate()
        .map(|(col, t)| {
            let mut out: BTreeMap<usize, Scalar> = BTreeMap::new();
            let mut s: Vec<Factor> = t.clone();
            for (p, c) in &terms {
                for (i, &pi) in p.iter().enumerate() {
                    s[pi as usize + 1] = t[i + 1];
                }
                let r = data
                    .index_of(n, w, &s)
                    .expect("permuted tensor is a basis tensor");
                *out.entry(r).or_insert_with(Scalar::zero) += c;
            }
            out.into_iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(r, v)| (r, col, v))
                .collect()
        })
        .collect();
    Ok(Matrix::from_triplets(
        dim,
        dim,
        cols.into_iter().flatten().collect::<Vec<_>>(),
    ))
}

fn check_degree(data: &HochschildData) -> Result<()> {
    if data.max_degree() + 1 > MAX_N as i64 {
        return Err(Error::ResourceCap(format!(
            "the place-permutation action is tabulated up to degree {MAX_N}; the bar complex reaches degree {}",
            data.max_degree() + 1
        )));
    }
    Ok(())
}

fn requires_rationals(data: &HochschildData) -> Result<()> {
    if data.ring().base() != Ring::Rationals {
        return Err(Error::RequiresRationals(
            "Eulerian idempotents have denominators; use base Q".into(),
        ));
    }
    Ok(())
}

/// The operator `e^{(i)}` on every built cell.
pub fn eulerian_projector(data: &HochschildData, i: usize) -> Result<BTreeMap<Cell, Matrix>> {
    requires_rationals(data)?;
    check_degree(data)?;
    data.complex()
        .cells()
        .map(|(n, w)| {
            Ok((
                (n, w),
                act(data, &eulerian_idempotent(i, n as usize)?, n, w)?,
            ))
        })
        .collect()
}

/// `ψ^ℓ = Σ_i ℓ^i e^{(i)}` as a chain endomorphism of `(C, b)`.
pub fn adams_operation(data: &HochschildData, ell: i64) -> Result<ChainMap> {
    requires_rationals(data)?;
    check_degree(data)?;
    if ell < 2 {
        return Err(Error::Invalid(format!(
            "Adams operations need ℓ ≥ 2, got {ell}"
        )));
    }
    let c = data.complex();
    let mut blocks = BTreeMap::new();
    for (n, w) in c.cells() {
        blocks.insert((n, w), act(data, &adams_element(ell, n as usize)?, n, w)?);
    }
    Ok(ChainMap::new_unchecked(c.clone(), c.clone(), blocks))
}

/// `H_n = ⊕_i H_n^{(i)}` with `H_n^{(i)}` the homology of the image of `e^{(i)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeDecomposition {
    /// `(n, w)` → `[H_n^{(0)}, …, H_n^{(n)}]`.
    pub pieces: BTreeMap<Cell, Vec<FgAbGroup>>,
}

impl HodgeDecomposition {
    pub fn new(data: &HochschildData) -> Result<Self> {
        let lam = crate::hochschild::lambda_filtration(data)?;
        let mut pieces = BTreeMap::new();
        for n in 0..=data.max_degree() {
            for w in 0..=data.max_weight() {
                if !data.is_complete(w) {
                    continue;
                }
                let groups: Vec<FgAbGroup> =
                    (0..=n).map(|i| lam.graded_homology(i, n, w)).collect();
                pieces.insert((n, w), groups);
            }
        }
        Ok(HodgeDecomposition { pieces })
    }

    /// `⊕_i H_n^{(i)}`.
    pub fn total(&self, n: i64, w: i64) -> FgAbGroup {
        self.pieces.get(&(n, w)).map_or_else(FgAbGroup::zero, |g| {
            g.iter().fold(FgAbGroup::zero(), |a, b| a.direct_sum(b))
        })
    }
}

/// One cell of the Adams eigenvalue check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdamsCell {
    pub filtration: i64,
    pub degree: i64,
    pub weight: i64,
    pub group: FgAbGroup,
    /// `ℓ^i`.
    pub eigenvalue: Scalar,
    pub pass: bool,
}

/// Result of checking that `ψ^ℓ` preserves the HKR filtration and acts by
/// `ℓ^i` on the homology of `gr^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdamsReport {
    pub ell: i64,
    pub preserves_filtration: bool,
    pub cells: Vec<AdamsCell>,
}

impl AdamsReport {
    pub fn pass(&self) -> bool {
        self.preserves_filtration && self.cells.iter().all(|c| c.pass)
    }
}

/// Transports `ψ^ℓ` into the HKR filtration and compares the map it induces on
/// `H_*(gr^i)` with multiplication by `ℓ^i`, on every complete strand and
/// degree `≤ N`.
pub fn adams_on_filtration(data: &HochschildData, ell: i64) -> Result<AdamsReport> {
    let psi = adams_operation(data, ell)?;
    let hkr = hkr_filtration(data)?;
    adams_on(&hkr, &psi, data, ell)
}

pub(crate) fn adams_on(
    hkr: &HkrFiltration,
    psi: &ChainMap,
    data: &HochschildData,
    ell: i64,
) -> Result<AdamsReport> {
    let f = hkr.filtered.filtered();
    let c = f.complex();
    let mut preserves = true;
    let mut moved = BTreeMap::new();
    for (n, w) in c.cells() {
        let m = hkr.transport(&psi.block(n, w), (n, w), (n, w));
        let lv = f.level_slice(n, w);
        if m.entries().any(|(i, j, _)| lv[i] < lv[j]) {
            preserves = false;
        }
        moved.insert((n, w), m);
    }
    let (lo, hi) = f.range();
    let mut cells = Vec::new();
    for i in lo..=hi {
        let gr = f.graded_piece(i);
        let blocks: BTreeMap<Cell, Matrix> = gr
            .cells()
            .map(|(n, w)| {
                let idx: Vec<usize> = (0..f.level_slice(n, w).len())
                    .filter(|&k| f.level_slice(n, w)[k] == i)
                    .collect();
                ((n, w), moved[&(n, w)].submatrix(&idx, &idx))
            })
            .collect();
        let on_gr = ChainMap::new_unchecked(gr.clone(), gr.clone(), blocks);
        let eigen = int(ell).pow(i as i32);
        let diff = on_gr.minus_scalar(&eigen)?;
        for (n, w) in gr.cells() {
            if n > data.max_degree() || !data.is_complete(w) {
                continue;
            }
            let induced = diff.on_homology(n, w)?;
            if induced.source.group.is_zero() {
                continue;
            }
            cells.push(AdamsCell {
                filtration: i,
                degree: n,
                weight: w,
                group: induced.source.group.clone(),
                eigenvalue: eigen.clone(),
                pass: induced.is_zero(),
            });
        }
    }
    Ok(AdamsReport {
        ell,
        preserves_filtration: preserves,
        cells,
    })
}
