use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::filtration::{CochainComplex, FilteredComplex};
use super::multicomplex::split_multicomplex;
use crate::complexes::{homology_basis, Cell};
use crate::error::{Error, Result};
use crate::exact::elim::solve;
use crate::exact::{FgAbGroup, HomologyBasis, Matrix, Ring, Scalar};

/// Cochain complex in the heart: groups `H^i` (per internal weight) and maps
/// `∂^i: H^i → H^{i+1}` written on generators.
///
/// Generators of each term are ordered torsion first, then free; `orders`
/// records their orders (0 for free generators).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplexHeart {
    pub ring: Ring,
    pub terms: BTreeMap<Cell, FgAbGroup>,
    pub orders: BTreeMap<Cell, Vec<BigInt>>,
    pub maps: BTreeMap<Cell, Matrix>,
}

impl CochainComplexHeart {
    /// Free terms of the given ranks with the given maps.
    pub fn free(ring: Ring, ranks: BTreeMap<Cell, usize>, maps: BTreeMap<Cell, Matrix>) -> Self {
        let orders = ranks
            .iter()
            .map(|(c, &r)| (*c, vec![BigInt::zero(); r]))
            .collect();
        let terms = ranks
            .into_iter()
            .filter(|(_, r)| *r > 0)
            .map(|(c, r)| (c, FgAbGroup::free(r)))
            .collect();
        let mut maps = maps;
        maps.retain(|_, m| !m.is_zero());
        CochainComplexHeart {
            ring,
            terms,
            orders,
            maps,
        }
    }

    pub fn rank(&self, i: i64, w: i64) -> usize {
        self.orders.get(&(i, w)).map_or(0, Vec::len)
    }

    pub fn map(&self, i: i64, w: i64) -> Matrix {
        self.maps
            .get(&(i, w))
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.rank(i + 1, w), self.rank(i, w)))
    }

    /// `∂∂ = 0`, with coordinates of torsion generators read modulo their order.
    pub fn differential_squares_to_zero(&self) -> bool {
        self.orders.keys().all(|&(i, w)| {
            let comp = self.map(i + 1, w).mul(&self.map(i, w));
            let orders = self.orders.get(&(i + 2, w));
            let ok = comp.entries().all(|(r, _, v)| {
                let o = orders.map_or(BigInt::zero(), |o| o[r].clone());
                !o.is_zero() && v.is_integer() && (v.numer() % &o).is_zero()
            });
            ok
        })
    }

    /// Rewrites every term in a new basis. `change[(i, w)]` has as columns
    /// the coordinates of the new basis vectors in the current generators;
    /// only free terms can be rebased.
    pub fn rebase(&self, change: &BTreeMap<Cell, Matrix>) -> Result<CochainComplexHeart> {
        let mut inverse = BTreeMap::new();
        for (&cell, c) in change {
            if self
                .orders
                .get(&cell)
                .is_some_and(|o| o.iter().any(|x| !x.is_zero()))
            {
                return Err(Error::Invalid("cannot rebase a term with torsion".into()));
            }
            let inv = solve(c, &Matrix::identity(c.nrows())).ok_or_else(|| {
                Error::Invalid(format!("change of basis at {cell:?} is singular"))
            })?;
            if self.ring == Ring::Integers && !inv.is_integral() {
                return Err(Error::Invalid(format!(
                    "change of basis at {cell:?} is not invertible over Z"
                )));
            }
            inverse.insert(cell, inv);
        }
        let maps = self
            .orders
            .keys()
            .map(|&(i, w)| {
                let mut m = self.map(i, w);
                if let Some(c) = change.get(&(i, w)) {
                    m = m.mul(c);
                }
                if let Some(inv) = inverse.get(&(i + 1, w)) {
                    m = inv.mul(&m);
                }
                ((i, w), m)
            })
            .filter(|(_, m)| !m.is_zero())
            .collect();
        Ok(CochainComplexHeart {
            maps,
            ..self.clone()
        })
    }

    /// The cochain complex with these (necessarily free) terms, as input for
    /// the brutal filtration.
    pub fn to_cochain_complex(&self) -> Result<CochainComplex> {
        if self.terms.values().any(|g| !g.is_free()) {
            return Err(Error::Invalid("heart term with torsion is not free".into()));
        }
        Ok(CochainComplex {
            ring: self.ring,
            terms: self
                .orders
                .iter()
                .map(|(&c, o)| (c, (0..o.len()).map(|k| format!("h{k}")).collect()))
                .collect(),
            maps: self.maps.clone(),
        })
    }
}

/// Heart of the Beilinson t-structure: `H^i = H_{-i}(gr^i F)`, with `∂^i`
/// induced by the weight-one component `d_1`.
pub fn beilinson_heart(f: &FilteredComplex) -> Result<CochainComplexHeart> {
    Ok(beilinson_heart_with_bases(f)?.0)
}

/// As [`beilinson_heart`], also returning the homology bases used for every
/// term (their generators are cycles of `gr^i` in degree `-i`).
pub fn beilinson_heart_with_bases(
    f: &FilteredComplex,
) -> Result<(CochainComplexHeart, BTreeMap<Cell, HomologyBasis>)> {
    let mc = split_multicomplex(f);
    let (lo, hi) = f.range();
    let weights = f.complex().weights();
    let mut bases = BTreeMap::new();
    for i in lo..=hi {
        let gr = mc.piece(i);
        for &w in &weights {
            let hb = homology_basis(&gr, -i, w)?;
            bases.insert((i, w), hb);
        }
    }
    let mut terms = BTreeMap::new();
    let mut orders = BTreeMap::new();
    let mut maps = BTreeMap::new();
    for (&(i, w), hb) in &bases {
        if !hb.group.is_zero() {
            terms.insert((i, w), hb.group.clone());
        }
        orders.insert((i, w), hb.orders.clone());
        let Some(next) = bases.get(&(i + 1, w)) else {
            continue;
        };
        let d1 = mc.d(1, i, -i, w);
        let mut cols: Vec<Vec<Scalar>> = Vec::new();
        for g in &hb.generators {
            cols.push(next.coordinates(&d1.apply(g))?);
        }
        let dense: Vec<Vec<Scalar>> = (0..next.len())
            .map(|r| cols.iter().map(|c| c[r].clone()).collect())
            .collect();
        let m = Matrix::from_dense(next.len(), hb.len(), &dense);
        if !m.is_zero() {
            maps.insert((i, w), m);
        }
    }
    Ok((
        CochainComplexHeart {
            ring: f.ring(),
            terms,
            orders,
            maps,
        },
        bases,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::ComplexBuilder;
    use crate::filtered::filtration::brutal_filtration;

    #[test]
    fn brutal_roundtrip() {
        let m = CochainComplex {
            ring: Ring::Integers,
            terms: BTreeMap::from([
                ((0, 1), vec!["a".into()]),
                ((1, 1), vec!["b".into(), "c".into()]),
                ((2, 1), vec!["e".into()]),
            ]),
            maps: BTreeMap::from([
                ((0, 1), Matrix::from_i64(&[vec![2], vec![4]])),
                ((1, 1), Matrix::from_i64(&[vec![2, -1]])),
            ]),
        };
        let h = beilinson_heart(&brutal_filtration(&m)).unwrap();
        assert_eq!(h.maps, m.maps);
        assert_eq!(h.terms[&(1, 1)], FgAbGroup::free(2));
        assert!(h.differential_squares_to_zero());
    }

    #[test]
    fn constant_filtration_heart() {
        let c = ComplexBuilder::new(Ring::Integers)
            .cell(0, 0, ["a", "b"])
            .build()
            .unwrap();
        let h = beilinson_heart(&FilteredComplex::constant(c, 0)).unwrap();
        assert_eq!(h.terms.len(), 1);
        assert_eq!(h.terms[&(0, 0)], FgAbGroup::free(2));
        assert!(h.maps.is_empty());
    }
}
