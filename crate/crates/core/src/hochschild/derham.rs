use std::collections::{BTreeMap, HashMap};

use super::ring::{GradedRing, RingPresentation};
use crate::complexes::{Cell, ChainComplex};
use crate::error::{Error, Result};
use crate::exact::scalar::{int, sign};
use crate::exact::{FgAbGroup, Matrix};
use crate::filtered::CochainComplex;

/// A basis form `m · dx_{j₁} ∧ … ∧ dx_{jᵢ}` with `j₁ < … < jᵢ`: the index of
/// the monomial `m` in its weight piece and the index set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Form {
    pub coefficient: (usize, usize),
    pub indices: Vec<usize>,
}

/// Algebraic de Rham complex `Ω^0 → Ω^1 → …` of a polynomial ring, weight by
/// weight up to `W`.
#[derive(Clone, Debug)]
pub struct DeRhamComplex {
    ring: GradedRing,
    forms: BTreeMap<Cell, Vec<Form>>,
    index: BTreeMap<Cell, HashMap<Form, usize>>,
    cochain: CochainComplex,
}

impl DeRhamComplex {
    pub fn new(p: &RingPresentation, max_weight: i64) -> Result<Self> {
        if !p.is_smooth() {
            return Err(Error::NonSmooth(
                "the de Rham complex is built for polynomial rings only".into(),
            ));
        }
        let ring = p.truncate(max_weight)?;
        let k = p.nvars();
        let weights: Vec<i64> = p.generators().iter().map(|g| g.weight).collect();
        let mut forms: BTreeMap<Cell, Vec<Form>> = BTreeMap::new();
        for i in 0..=k {
            for subset in subsets(k, i) {
                let sw: i64 = subset.iter().map(|&j| weights[j]).sum();
                for w in sw..=max_weight {
                    let mw = (w - sw) as usize;
                    for m in 0..ring.dim(mw as i64) {
                        forms.entry((i as i64, w)).or_default().push(Form {
                            coefficient: (mw, m),
                            indices: subset.clone(),
                        });
                    }
                }
            }
        }
        let index: BTreeMap<Cell, HashMap<Form, usize>> = forms
            .iter()
            .map(|(c, fs)| {
                (
                    *c,
                    fs.iter()
                        .cloned()
                        .enumerate()
                        .map(|(i, f)| (f, i))
                        .collect(),
                )
            })
            .collect();
        let names = p.names();
        let terms = forms
            .iter()
            .map(|(c, fs)| {
                (
                    *c,
                    fs.iter().map(|f| form_label(&ring, &names, f)).collect(),
                )
            })
            .collect();
        let mut dr = DeRhamComplex {
            ring,
            forms,
            index,
            cochain: CochainComplex {
                ring: p.base(),
                terms,
                maps: BTreeMap::new(),
            },
        };
        let mut maps = BTreeMap::new();
        for &(i, w) in dr.forms.keys() {
            let m = dr.exterior_derivative(i, w);
            if !m.is_zero() {
                maps.insert((i, w), m);
            }
        }
        dr.cochain.maps = maps;
        Ok(dr)
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn cochain_complex(&self) -> &CochainComplex {
        &self.cochain
    }

    pub fn forms(&self, i: i64, w: i64) -> &[Form] {
        self.forms.get(&(i, w)).map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self, i: i64, w: i64) -> usize {
        self.forms(i, w).len()
    }

    pub fn index_of(&self, i: i64, w: i64, f: &Form) -> Option<usize> {
        self.index.get(&(i, w)).and_then(|m| m.get(f).copied())
    }

    /// `d: Ω^i_w → Ω^{i+1}_w`.
    pub fn d(&self, i: i64, w: i64) -> Matrix {
        self.cochain.map(i, w)
    }

    pub fn cohomology(&self, i: i64, w: i64) -> FgAbGroup {
        self.cochain.cohomology(i, w)
    }

    /// `d(m dx_J) = Σ_k ∂_k m · dx_k ∧ dx_J`, with `dx_k` sorted into place.
    fn exterior_derivative(&self, i: i64, w: i64) -> Matrix {
        let p = self.ring.presentation();
        let mut trip = Vec::new();
        for (col, f) in self.forms(i, w).iter().enumerate() {
            let (mw, mi) = f.coefficient;
            let m = &self.ring.basis(mw as i64)[mi];
            for k in 0..p.nvars() {
                if m[k] == 0 || f.indices.contains(&k) {
                    continue;
                }
                let mut dm = m.clone();
                dm[k] -= 1;
                let before = f.indices.iter().filter(|&&j| j < k).count();
                let mut idx = f.indices.clone();
                idx.insert(before, k);
                let target = Form {
                    coefficient: (
                        (mw as i64 - p.generators()[k].weight) as usize,
                        self.ring.index_of(&dm).expect("standard"),
                    ),
                    indices: idx,
                };
                let row = self.index_of(i + 1, w, &target).expect("form in range");
                trip.push((row, col, sign(before as i64) * int(i64::from(m[k]))));
            }
        }
        Matrix::from_triplets(self.dim(i + 1, w), self.dim(i, w), trip)
    }

    /// The brutal truncation `Ω^{≥i}`.
    pub fn truncated(&self, i: i64) -> CochainComplex {
        CochainComplex {
            ring: self.cochain.ring,
            terms: self
                .cochain
                .terms
                .iter()
                .filter(|((j, _), _)| *j >= i)
                .map(|(c, v)| (*c, v.clone()))
                .collect(),
            maps: self
                .cochain
                .maps
                .iter()
                .filter(|((j, _), _)| *j >= i)
                .map(|(c, v)| (*c, v.clone()))
                .collect(),
        }
    }

    /// `Ω^i` placed in homological degree `i` with zero differential: the
    /// strict value of the `i`-th graded piece of derived de Rham cohomology.
    pub fn derived_gr(&self, i: i64) -> ChainComplex {
        let bases = self
            .cochain
            .terms
            .iter()
            .filter(|((j, _), _)| *j == i)
            .map(|(&(j, w), v)| ((j, w), v.clone()))
            .collect();
        ChainComplex::new_unchecked(self.cochain.ring, bases, BTreeMap::new())
    }
}

/// `LΩ^i` for a polynomial ring: `Ω^i` in degree `i`.
pub fn derived_de_rham_gr(p: &RingPresentation, i: i64, max_weight: i64) -> Result<ChainComplex> {
    Ok(DeRhamComplex::new(p, max_weight)?.derived_gr(i))
}

pub fn de_rham_complex(p: &RingPresentation, max_weight: i64) -> Result<DeRhamComplex> {
    DeRhamComplex::new(p, max_weight)
}

fn subsets(k: usize, i: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, k: usize, i: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == i {
            out.push(cur.clone());
            return;
        }
        for j in start..k {
            cur.push(j);
            go(j + 1, k, i, cur, out);
            cur.pop();
        }
    }
    go(0, k, i, &mut cur, &mut out);
    out
}

fn form_label(ring: &GradedRing, names: &[String], f: &Form) -> String {
    let m = ring.label(f.coefficient.0, f.coefficient.1);
    let dx: Vec<String> = f
        .indices
        .iter()
        .map(|&j| format!("d{}", names[j]))
        .collect();
    match (m.as_str(), dx.is_empty()) {
        (_, true) => m,
        ("1", false) => dx.join("∧"),
        _ => format!("{m}·{}", dx.join("∧")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Ring;

    #[test]
    fn integral_line() {
        let p = RingPresentation::polynomial(Ring::Integers, &[("x", 1)]);
        let dr = DeRhamComplex::new(&p, 5).unwrap();
        dr.cochain_complex().validate().unwrap();
        assert_eq!(dr.cohomology(0, 0), FgAbGroup::free(1));
        for w in 1..=5 {
            assert!(dr.cohomology(0, w).is_zero());
            assert_eq!(dr.cohomology(1, w), FgAbGroup::from_parts(0, [w.into()]));
        }
    }

    #[test]
    fn rational_line_and_plane() {
        let p = RingPresentation::polynomial(Ring::Rationals, &[("x", 1)]);
        let dr = DeRhamComplex::new(&p, 4).unwrap();
        assert!((1..=4).all(|w| dr.cohomology(1, w).is_zero()));
        let q = RingPresentation::polynomial(Ring::Integers, &[("x", 1), ("y", 1)]);
        let dr = DeRhamComplex::new(&q, 3).unwrap();
        dr.cochain_complex().validate().unwrap();
        // Ω^i in weight w has rank C(2, i) · dim B_{w - i}
        for w in 0..=3i64 {
            assert_eq!(dr.dim(0, w), (w + 1) as usize);
            assert_eq!(dr.dim(1, w), if w >= 1 { 2 * w as usize } else { 0 });
            assert_eq!(dr.dim(2, w), if w >= 2 { (w - 1) as usize } else { 0 });
        }
        assert_eq!(dr.cochain_complex().terms[&(1, 2)][0], "x·dx");
    }

    #[test]
    fn rejects_relations() {
        let p = RingPresentation::parse(Ring::Rationals, &[("x", 1)], &["x^2"]).unwrap();
        assert!(matches!(
            DeRhamComplex::new(&p, 3),
            Err(Error::NonSmooth(_))
        ));
    }
}
