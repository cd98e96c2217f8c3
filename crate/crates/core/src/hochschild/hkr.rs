use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::bar::{Factor, HochschildData};
use super::derham::DeRhamComplex;
use super::ring::RingPresentation;
use crate::adams::group::{all_permutations, parity};
use crate::complexes::{homology_basis, Cell, ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::exact::elim::{solve, Rref};
use crate::exact::scalar::sign;
use crate::exact::{FgAbGroup, Matrix, Ring, Scalar};
use crate::filtered::{
    beilinson_heart_with_bases, CochainComplex, CochainComplexHeart, FilteredComplex,
    PostnikovFiltration,
};
use crate::mixed::FilteredMixedComplex;

/// How the HKR filtration was realized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HkrMethod {
    /// Good truncation `τ_{≥i}` on an adapted basis.
    Postnikov,
    /// `F^i = ⊕_{λ≥i} e^{(λ)} C`, the Eulerian (λ-)decomposition.
    Lambda,
}

/// The HKR filtration of the complete strands of a bar complex, on a basis
/// adapted to it, with the change of basis to the tensor basis.
#[derive(Clone, Debug)]
pub struct HkrFiltration {
    pub method: HkrMethod,
    pub filtered: FilteredMixedComplex,
    /// Adapted basis vectors written in the tensor basis.
    basis: BTreeMap<Cell, Matrix>,
    /// Tensor basis → adapted coordinates.
    inverse: BTreeMap<Cell, Matrix>,
}

impl HkrFiltration {
    /// `m: from → to`, given on tensor bases, rewritten in adapted bases.
    pub fn transport(&self, m: &Matrix, from: Cell, to: Cell) -> Matrix {
        match (self.basis.get(&from), self.inverse.get(&to)) {
            (Some(p), Some(q)) => q.mul(m).mul(p),
            _ => Matrix::zeros(
                self.filtered.filtered().complex().dim(to.0, to.1),
                self.filtered.filtered().complex().dim(from.0, from.1),
            ),
        }
    }

    /// Adapted coordinates of a vector given on the tensor basis.
    pub fn to_adapted(&self, cell: Cell, v: &[Scalar]) -> Vec<Scalar> {
        self.inverse
            .get(&cell)
            .map_or_else(Vec::new, |q| q.apply(v))
    }

    pub fn basis_matrix(&self, cell: Cell) -> Option<&Matrix> {
        self.basis.get(&cell)
    }

    /// `H_n(gr^i)` in weight `w`.
    pub fn graded_homology(&self, i: i64, n: i64, w: i64) -> FgAbGroup {
        self.filtered.filtered().graded_piece(i).homology(n, w)
    }

    /// `H_n(F^i)` in weight `w`.
    pub fn stage_homology(&self, i: i64, n: i64, w: i64) -> FgAbGroup {
        self.filtered.filtered().stage_homology(i, n, w)
    }
}

/// The HKR filtration: good truncation for polynomial rings (and for any
/// presentation over ℤ), the λ-filtration for presentations with relations
/// over ℚ, whose graded pieces are the derived exterior powers `LΩ^i[i]`.
pub fn hkr_filtration(data: &HochschildData) -> Result<HkrFiltration> {
    if data.presentation().is_smooth() || data.ring().base() == Ring::Integers {
        postnikov_hkr_filtration(data)
    } else {
        lambda_filtration(data)
    }
}

/// `F^i = τ_{≥i}` weight by weight.
pub fn postnikov_hkr_filtration(data: &HochschildData) -> Result<HkrFiltration> {
    let mixed = data.mixed();
    let post = PostnikovFiltration::new(mixed.complex())?;
    let mut b_op = BTreeMap::new();
    for (&(n, w), m) in mixed.b_blocks() {
        b_op.insert((n, w), post.transport(m, (n, w), (n + 1, w)));
    }
    let basis = post
        .bases
        .iter()
        .map(|(c, a)| (*c, a.basis_matrix()))
        .collect();
    let inverse = post
        .bases
        .iter()
        .map(|(c, a)| (*c, a.inverse.clone()))
        .collect();
    Ok(HkrFiltration {
        method: HkrMethod::Postnikov,
        filtered: FilteredMixedComplex::new_unchecked(post.filtered, b_op),
        basis,
        inverse,
    })
}

/// `F^i = ⊕_{λ≥i} e^{(λ)} C` on a basis of the images of the Eulerian
/// idempotents; needs base ℚ.
pub fn lambda_filtration(data: &HochschildData) -> Result<HkrFiltration> {
    let mixed = data.mixed();
    let c = mixed.complex();
    let mut basis = BTreeMap::new();
    let mut inverse = BTreeMap::new();
    let mut labels = BTreeMap::new();
    let mut levels = BTreeMap::new();
    let projectors: Vec<BTreeMap<Cell, Matrix>> = (0..=(data.max_degree() + 1) as usize)
        .map(|i| crate::adams::eulerian_projector(data, i))
        .collect::<Result<_>>()?;
    let mut hi = 0;
    for (n, w) in c.cells() {
        let dim = c.dim(n, w);
        let mut cols = Vec::new();
        let mut lab = Vec::new();
        let mut lev = Vec::new();
        for (i, proj) in projectors.iter().enumerate().take(n as usize + 1) {
            let e = &proj[&(n, w)];
            let piv = Rref::new(e).pivot_columns();
            for (k, &j) in piv.iter().enumerate() {
                cols.push(e.column(j));
                lab.push(format!("e{i}.{k}"));
                lev.push(i as i64);
                hi = hi.max(i as i64);
            }
        }
        let p = Matrix::from_columns(dim, &cols);
        let q = solve(&p, &Matrix::identity(dim)).ok_or_else(|| {
            Error::Invalid(format!("Eulerian pieces do not span cell ({n}, {w})"))
        })?;
        basis.insert((n, w), p);
        inverse.insert((n, w), q);
        labels.insert((n, w), lab);
        levels.insert((n, w), lev);
    }
    let mut diffs = BTreeMap::new();
    for (&(n, w), d) in c.differentials() {
        diffs.insert((n, w), inverse[&(n - 1, w)].mul(d).mul(&basis[&(n, w)]));
    }
    let mut b_op = BTreeMap::new();
    for (&(n, w), m) in mixed.b_blocks() {
        b_op.insert((n, w), inverse[&(n + 1, w)].mul(m).mul(&basis[&(n, w)]));
    }
    let filtered = FilteredComplex::new_unchecked(
        ChainComplex::new_unchecked(c.ring(), labels, diffs),
        levels,
        (0, hi),
    );
    Ok(HkrFiltration {
        method: HkrMethod::Lambda,
        filtered: FilteredMixedComplex::new_unchecked(filtered, b_op),
        basis,
        inverse,
    })
}

/// The bar complex, the de Rham complex and the antisymmetrization
/// `ε_n(a₀ da₁ ∧ … ∧ daₙ) = Σ_σ sgn(σ) a₀ ⊗ a_{σ(1)} ⊗ … ⊗ a_{σ(n)}` as a chain
/// map `⊕_n Ω^n[n] → (C, b)` (source differential zero).
#[derive(Clone, Debug)]
pub struct Hkr {
    pub data: HochschildData,
    pub de_rham: DeRhamComplex,
    pub map: ChainMap,
}

pub fn hkr_map(p: &RingPresentation, max_degree: i64, max_weight: i64) -> Result<Hkr> {
    if !p.is_smooth() {
        return Err(Error::NonSmooth(
            "the HKR map is built for polynomial rings".into(),
        ));
    }
    let data = HochschildData::new(p, max_degree, max_weight)?;
    let de_rham = DeRhamComplex::new(p, max_weight)?;
    let map = epsilon(&data, &de_rham)?;
    Ok(Hkr { data, de_rham, map })
}

/// `ε` on every form of degree `≤ N + 1`.
pub fn epsilon(data: &HochschildData, dr: &DeRhamComplex) -> Result<ChainMap> {
    let top = data.max_degree() + 1;
    let source_bases: BTreeMap<Cell, Vec<String>> = dr
        .cochain_complex()
        .terms
        .iter()
        .filter(|((i, _), _)| *i <= top)
        .map(|(c, v)| (*c, v.clone()))
        .collect();
    let source = ChainComplex::new_unchecked(data.ring().base(), source_bases, BTreeMap::new());
    let mut blocks = BTreeMap::new();
    for (n, w) in source.cells() {
        let cols: Vec<Vec<Scalar>> = dr
            .forms(n, w)
            .iter()
            .map(|f| epsilon_vector(data, f.coefficient, &f.indices, n, w))
            .collect::<Result<_>>()?;
        let dense: Vec<Vec<Scalar>> = (0..data.dim(n, w))
            .map(|r| cols.iter().map(|c| c[r].clone()).collect())
            .collect();
        blocks.insert(
            (n, w),
            Matrix::from_dense(data.dim(n, w), cols.len(), &dense),
        );
    }
    Ok(ChainMap::new_unchecked(
        source,
        data.complex().clone(),
        blocks,
    ))
}

fn epsilon_vector(
    data: &HochschildData,
    coefficient: Factor,
    indices: &[usize],
    n: i64,
    w: i64,
) -> Result<Vec<Scalar>> {
    let gens: Vec<Factor> = indices
        .iter()
        .map(|&j| {
            data.ring()
                .generator_element(j)
                .ok_or_else(|| Error::Window("generator weight above the window".into()))
        })
        .collect::<Result<_>>()?;
    let mut terms = Vec::new();
    for sigma in all_permutations(indices.len()) {
        let mut t = vec![coefficient];
        t.extend(sigma.iter().map(|&k| gens[k as usize]));
        terms.push((t, sign(parity(&sigma))));
    }
    data.vector(n, w, &terms)
}

/// Per-cell outcome of comparing `Ω^n` with `HH_n` through `ε`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HkrCell {
    pub degree: i64,
    pub weight: i64,
    pub forms: usize,
    pub homology: FgAbGroup,
    /// `ε` induces an isomorphism `Ω^n_w ≅ HH_n`.
    pub isomorphism: bool,
}

/// Checks on every `(n ≤ N, w ≤ W)` that `ε` lands in cycles and induces an
/// isomorphism onto `HH_n` (unimodular over ℤ, invertible over ℚ).
pub fn hkr_isomorphism(hkr: &Hkr) -> Result<Vec<HkrCell>> {
    let data = &hkr.data;
    let mut out = Vec::new();
    for w in 0..=data.max_weight() {
        for n in 0..=data.max_degree() {
            let forms = hkr.de_rham.dim(n, w);
            let block = hkr.map.block(n, w);
            let cycles = data.complex().differential(n, w).mul(&block).is_zero();
            let hb = homology_basis(data.complex(), n, w)?;
            let mut iso = cycles && hb.group.is_free() && hb.group.rank == forms;
            if iso && forms > 0 {
                let cols: Vec<Vec<Scalar>> = (0..forms)
                    .map(|j| {
                        hb.coordinates(&crate::exact::matrix::densify(
                            &block.column(j),
                            data.dim(n, w),
                        ))
                    })
                    .collect::<Result<_>>()?;
                let dense: Vec<Vec<Scalar>> = (0..forms)
                    .map(|r| cols.iter().map(|c| c[r].clone()).collect())
                    .collect();
                let det = Matrix::from_dense(forms, forms, &dense).determinant();
                iso = match data.ring().base() {
                    Ring::Integers => det.abs().is_one(),
                    Ring::Rationals => !det.is_zero(),
                };
            }
            out.push(HkrCell {
                degree: n,
                weight: w,
                forms,
                homology: hb.group,
                isomorphism: iso,
            });
        }
    }
    Ok(out)
}

/// The heart of the h₋ cohomology type of `gr` of the HKR filtration,
/// rewritten in the `ε`-basis of `Ω^i`, next to the de Rham complex.
#[derive(Clone, Debug)]
pub struct HeartComparison {
    pub heart: CochainComplexHeart,
    pub de_rham: CochainComplex,
    /// Cells `(i, w)` where the differentials differ.
    pub mismatches: Vec<Cell>,
}

impl HeartComparison {
    pub fn equal(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Builds `|gr HH|^{≥★}` (graded pieces `gr^i[-2i]`, `d₁` from `B`), takes its
/// Beilinson heart and compares it with the de Rham complex on the complete
/// strands in degrees `≤ N`.
pub fn hkr_heart(hkr: &Hkr) -> Result<HeartComparison> {
    let data = &hkr.data;
    let filt = postnikov_hkr_filtration(data)?;
    let (tot, _) = filt.filtered.graded_cohomology_type();
    let (heart, bases) = beilinson_heart_with_bases(&tot)?;
    let f = filt.filtered.filtered();
    let mut change = BTreeMap::new();
    for (&(i, w), hb) in &bases {
        let forms = hkr.de_rham.dim(i, w);
        if hb.len() != forms {
            return Err(Error::Invalid(format!(
                "heart term ({i}, {w}) has {} generators but Ω^{i} has rank {forms}",
                hb.len()
            )));
        }
        if forms == 0 {
            continue;
        }
        let block = hkr.map.block(i, w);
        let lv = f.level_slice(i, w);
        let keep: Vec<usize> = (0..lv.len()).filter(|&k| lv[k] == i).collect();
        let mut cols = Vec::new();
        for j in 0..forms {
            let v = crate::exact::matrix::densify(&block.column(j), data.dim(i, w));
            let adapted = filt.to_adapted((i, w), &v);
            let restricted: Vec<Scalar> = keep.iter().map(|&k| adapted[k].clone()).collect();
            cols.push(hb.coordinates(&restricted)?);
        }
        let dense: Vec<Vec<Scalar>> = (0..forms)
            .map(|r| cols.iter().map(|c| c[r].clone()).collect())
            .collect();
        change.insert((i, w), Matrix::from_dense(forms, forms, &dense));
    }
    let heart = heart.rebase(&change)?;
    let de_rham = hkr.de_rham.cochain_complex().clone();
    let mut mismatches = Vec::new();
    for w in 0..=data.max_weight() {
        if !data.is_complete(w) {
            continue;
        }
        for i in 0..data.max_degree() {
            if heart.map(i, w) != de_rham.map(i, w) {
                mismatches.push((i, w));
            }
        }
    }
    Ok(HeartComparison {
        heart,
        de_rham,
        mismatches,
    })
}

/// Outcome of comparing the connecting map `H_0(gr^0) → H_1(gr^1)` with the
/// Kähler differential `d: B → Ω¹`, weight by weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationReport {
    pub weights: BTreeMap<i64, bool>,
    pub connecting: BTreeMap<i64, Matrix>,
}

impl DerivationReport {
    pub fn pass(&self) -> bool {
        self.weights.values().all(|&b| b)
    }
}

pub fn connecting_is_universal_derivation(
    p: &RingPresentation,
    max_weight: i64,
) -> Result<DerivationReport> {
    let hkr = hkr_map(p, max_weight.max(1), max_weight)?;
    let cmp = hkr_heart(&hkr)?;
    let mut weights = BTreeMap::new();
    let mut connecting = BTreeMap::new();
    for w in 0..=max_weight {
        let m = cmp.heart.map(0, w);
        weights.insert(w, m == cmp.de_rham.map(0, w));
        connecting.insert(w, m);
    }
    Ok(DerivationReport {
        weights,
        connecting,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::int;

    #[test]
    fn hkr_line_over_integers() {
        let p = RingPresentation::polynomial(Ring::Integers, &[("x", 1)]);
        let hkr = hkr_map(&p, 3, 4).unwrap();
        hkr.map.validate().unwrap();
        let cells = hkr_isomorphism(&hkr).unwrap();
        assert!(cells.iter().all(|c| c.isomorphism), "{cells:?}");
    }

    #[test]
    fn heart_is_de_rham() {
        let p = RingPresentation::polynomial(Ring::Integers, &[("x", 1), ("y", 1)]);
        let hkr = hkr_map(&p, 3, 3).unwrap();
        let cmp = hkr_heart(&hkr).unwrap();
        assert!(cmp.equal(), "{:?}", cmp.mismatches);
    }

    #[test]
    fn derivation_on_cubes() {
        let p = RingPresentation::polynomial(Ring::Integers, &[("x", 1)]);
        let r = connecting_is_universal_derivation(&p, 3).unwrap();
        assert!(r.pass());
        assert_eq!(r.connecting[&3], Matrix::from_dense(1, 1, &[vec![int(3)]]));
        assert!(r.connecting[&0].is_zero());
    }

    #[test]
    fn lambda_filtration_is_filtered_mixed() {
        let p = RingPresentation::parse(Ring::Rationals, &[("x", 1)], &["x^2"]).unwrap();
        let data = HochschildData::new(&p, 4, 5).unwrap();
        let f = hkr_filtration(&data).unwrap();
        assert_eq!(f.method, HkrMethod::Lambda);
        f.filtered.validate().unwrap();
    }
}
