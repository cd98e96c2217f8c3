use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rayon::prelude::*;

use super::ring::{GradedRing, RingPresentation};
use crate::complexes::{Cell, ChainComplex};
use crate::error::{Error, Result};
use crate::exact::scalar::sign;
use crate::exact::{FgAbGroup, Matrix, Scalar, SparseVec};
use crate::mixed::MixedComplex;

/// Tensor factor: `(weight, index)` of a standard monomial.
pub type Factor = (usize, usize);

/// Default cap on the total number of basis tensors.
pub const MAX_BASIS: usize = 400_000;

/// Normalized cyclic bar complex `C_n = B ⊗ B̄^{⊗n}` of a presented ring, in
/// degrees `n ≤ N + 1` and weights `w ≤ W`, with Hochschild `b` and Connes `B`.
///
/// The weight-`w` strand vanishes above degree `w`, so it is complete when
/// `w ≤ N + 1`.
#[derive(Clone, Debug)]
pub struct HochschildData {
    ring: GradedRing,
    max_degree: i64,
    max_weight: i64,
    tensors: BTreeMap<Cell, Vec<Vec<Factor>>>,
    index: BTreeMap<Cell, HashMap<Vec<Factor>, usize>>,
    complex: ChainComplex,
    b_op: BTreeMap<Cell, Matrix>,
}

impl HochschildData {
    pub fn new(p: &RingPresentation, max_degree: i64, max_weight: i64) -> Result<Self> {
        HochschildData::with_cap(p, max_degree, max_weight, MAX_BASIS)
    }

    pub fn with_cap(
        p: &RingPresentation,
        max_degree: i64,
        max_weight: i64,
        cap: usize,
    ) -> Result<Self> {
        if max_degree < 0 || max_weight < 0 {
            return Err(Error::Window(format!(
                "degree and weight bounds must be nonnegative, got ({max_degree}, {max_weight})"
            )));
        }
        let ring = p.truncate(max_weight)?;
        let top = max_degree + 1;
        let mut total = 0usize;
        for w in 0..=max_weight {
            for n in 0..=top.min(w) {
                total = total.saturating_add(count(&ring, n as usize, w as usize));
            }
        }
        if total > cap {
            return Err(Error::ResourceCap(format!(
                "the bar complex up to degree {top} and weight {max_weight} has {total} basis tensors (cap {cap})"
            )));
        }
        let cells: Vec<Cell> = (0..=max_weight)
            .flat_map(|w| (0..=top.min(w)).map(move |n| (n, w)))
            .collect();
        let built: Vec<(Cell, Vec<Vec<Factor>>)> = cells
            .par_iter()
            .map(|&(n, w)| ((n, w), enumerate(&ring, n as usize, w as usize)))
            .filter(|(_, t)| !t.is_empty())
            .collect();
        let tensors: BTreeMap<Cell, Vec<Vec<Factor>>> = built.into_iter().collect();
        let index: BTreeMap<Cell, HashMap<Vec<Factor>, usize>> = tensors
            .iter()
            .map(|(c, ts)| {
                (
                    *c,
                    ts.iter()
                        .cloned()
                        .enumerate()
                        .map(|(i, t)| (t, i))
                        .collect(),
                )
            })
            .collect();
        let mut data = HochschildData {
            ring,
            max_degree,
            max_weight,
            tensors,
            index,
            complex: ChainComplex::zero(p.base()),
            b_op: BTreeMap::new(),
        };
        let keys: Vec<Cell> = data.tensors.keys().copied().collect();
        let diffs: BTreeMap<Cell, Matrix> = keys
            .par_iter()
            .filter(|&&(n, _)| n > 0)
            .map(|&(n, w)| ((n, w), data.hochschild_b(n, w)))
            .collect::<Vec<_>>()
            .into_iter()
            .filter(|(_, m)| !m.is_zero())
            .collect();
        let b_op: BTreeMap<Cell, Matrix> = keys
            .par_iter()
            .filter(|&&(n, _)| n < top)
            .map(|&(n, w)| ((n, w), data.connes_b(n, w)))
            .collect::<Vec<_>>()
            .into_iter()
            .filter(|(_, m)| !m.is_zero())
            .collect();
        let bases = data
            .tensors
            .iter()
            .map(|(c, ts)| (*c, ts.iter().map(|t| data.label(t)).collect()))
            .collect();
        data.complex = ChainComplex::new_unchecked(p.base(), bases, diffs);
        data.b_op = b_op;
        Ok(data)
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn presentation(&self) -> &RingPresentation {
        self.ring.presentation()
    }

    pub fn max_degree(&self) -> i64 {
        self.max_degree
    }

    pub fn max_weight(&self) -> i64 {
        self.max_weight
    }

    /// Whether every degree of the weight-`w` strand was built.
    pub fn is_complete(&self, w: i64) -> bool {
        w <= self.max_degree + 1
    }

    /// The complex `(C, b)` on all built cells.
    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn b_blocks(&self) -> &BTreeMap<Cell, Matrix> {
        &self.b_op
    }

    /// `(C, b, B)` on the complete strands.
    pub fn mixed(&self) -> MixedComplex {
        let keep = |w: i64| self.is_complete(w);
        let c = &self.complex;
        let bases = c
            .bases()
            .iter()
            .filter(|((_, w), _)| keep(*w))
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        let diffs = c
            .differentials()
            .iter()
            .filter(|((_, w), _)| keep(*w))
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        let b = self
            .b_op
            .iter()
            .filter(|((_, w), _)| keep(*w))
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        MixedComplex::new_unchecked(ChainComplex::new_unchecked(c.ring(), bases, diffs), b)
    }

    pub fn tensors(&self, n: i64, w: i64) -> &[Vec<Factor>] {
        self.tensors.get(&(n, w)).map_or(&[], Vec::as_slice)
    }

    pub fn index_of(&self, n: i64, w: i64, t: &[Factor]) -> Option<usize> {
        self.index.get(&(n, w)).and_then(|m| m.get(t).copied())
    }

    pub fn dim(&self, n: i64, w: i64) -> usize {
        self.tensors(n, w).len()
    }

    pub fn label(&self, t: &[Factor]) -> String {
        t.iter()
            .map(|&(w, i)| self.ring.label(w, i))
            .collect::<Vec<_>>()
            .join("⊗")
    }

    /// `HH_n` in weight `w`; exact for `n ≤ N`.
    pub fn homology(&self, n: i64, w: i64) -> Result<FgAbGroup> {
        if n > self.max_degree || w > self.max_weight {
            return Err(Error::Window(format!(
                "HH_{n} in weight {w} lies outside the computed range ({}, {})",
                self.max_degree, self.max_weight
            )));
        }
        Ok(self.complex.homology(n, w))
    }

    /// Expands the product of two factors.
    fn product(&self, a: Factor, b: Factor) -> &SparseVec {
        self.ring.multiply(a.0, a.1, b.0, b.1)
    }

    /// Adds `c · t` (a tensor in `(n, w)`) to a triplet list for column `col`.
    fn push(
        &self,
        trip: &mut Vec<(usize, usize, Scalar)>,
        n: i64,
        w: i64,
        t: &[Factor],
        col: usize,
        c: Scalar,
    ) {
        if let Some(r) = self.index_of(n, w, t) {
            trip.push((r, col, c));
        }
    }

    /// `b(a₀ ⊗ … ⊗ aₙ) = Σ_{i<n} (-1)^i … ⊗ aᵢaᵢ₊₁ ⊗ … + (-1)^n aₙa₀ ⊗ a₁ ⊗ … ⊗ aₙ₋₁`.
    fn hochschild_b(&self, n: i64, w: i64) -> Matrix {
        let mut trip = Vec::new();
        let nn = n as usize;
        for (col, t) in self.tensors(n, w).iter().enumerate() {
            for i in 0..nn {
                let (a, b) = (t[i], t[i + 1]);
                let w_ab = a.0 + b.0;
                for (k, c) in self.product(a, b) {
                    let mut s: Vec<Factor> = Vec::with_capacity(nn);
                    s.extend_from_slice(&t[..i]);
                    s.push((w_ab, *k));
                    s.extend_from_slice(&t[i + 2..]);
                    self.push(&mut trip, n - 1, w, &s, col, sign(i as i64) * c);
                }
            }
            let (a, b) = (t[nn], t[0]);
            for (k, c) in self.product(a, b) {
                let mut s: Vec<Factor> = Vec::with_capacity(nn);
                s.push((a.0 + b.0, *k));
                s.extend_from_slice(&t[1..nn]);
                self.push(&mut trip, n - 1, w, &s, col, sign(n) * c);
            }
        }
        Matrix::from_triplets(self.dim(n - 1, w), self.dim(n, w), trip)
    }

    /// `B(a₀ ⊗ … ⊗ aₙ) = Σᵢ (-1)^{ni} 1 ⊗ aᵢ ⊗ … ⊗ aₙ ⊗ a₀ ⊗ … ⊗ aᵢ₋₁`, zero when `a₀ = 1`.
    fn connes_b(&self, n: i64, w: i64) -> Matrix {
        let mut trip = Vec::new();
        let nn = n as usize;
        for (col, t) in self.tensors(n, w).iter().enumerate() {
            if t[0].0 == 0 {
                continue;
            }
            for i in 0..=nn {
                let mut s: Vec<Factor> = Vec::with_capacity(nn + 2);
                s.push((0, 0));
                s.extend_from_slice(&t[i..]);
                s.extend_from_slice(&t[..i]);
                self.push(&mut trip, n + 1, w, &s, col, sign(n * i as i64));
            }
        }
        Matrix::from_triplets(self.dim(n + 1, w), self.dim(n, w), trip)
    }

    /// Dense coordinates of a combination of tensors in cell `(n, w)`.
    pub fn vector(&self, n: i64, w: i64, terms: &[(Vec<Factor>, Scalar)]) -> Result<Vec<Scalar>> {
        let mut v = vec![Scalar::zero(); self.dim(n, w)];
        for (t, c) in terms {
            let i = self.index_of(n, w, t).ok_or_else(|| {
                Error::Invalid(format!(
                    "{} is not a basis tensor of ({n}, {w})",
                    self.label(t)
                ))
            })?;
            v[i] += c;
        }
        Ok(v)
    }

    /// Shuffle product `(a₀ ⊗ a) · (b₀ ⊗ b) = Σ_shuffles ± a₀b₀ ⊗ sh(a, b)`.
    pub fn shuffle_product(
        &self,
        (n1, w1): Cell,
        x: &[Scalar],
        (n2, w2): Cell,
        y: &[Scalar],
    ) -> Result<Vec<Scalar>> {
        let (n, w) = (n1 + n2, w1 + w2);
        if n > self.max_degree + 1 || w > self.max_weight {
            return Err(Error::Window(
                "product lands outside the computed range".into(),
            ));
        }
        let shuffles = shuffles(n1 as usize, n2 as usize);
        let mut out = vec![Scalar::zero(); self.dim(n, w)];
        for (i, ci) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let s = &self.tensors(n1, w1)[i];
            for (j, cj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let t = &self.tensors(n2, w2)[j];
                let coeff = ci * cj;
                for (k, c0) in self.product(s[0], t[0]) {
                    let head = (s[0].0 + t[0].0, *k);
                    for (sh, sg) in &shuffles {
                        let mut tensor = vec![head; n as usize + 1];
                        let mut ia = 1;
                        let mut ib = 1;
                        for (pos, &from_a) in sh.iter().enumerate() {
                            tensor[pos + 1] = if from_a {
                                ia += 1;
                                s[ia - 1]
                            } else {
                                ib += 1;
                                t[ib - 1]
                            };
                        }
                        if let Some(r) = self.index_of(n, w, &tensor) {
                            out[r] += &coeff * c0 * sg;
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// `(p, q)`-shuffles as slot patterns (`true` = from the first factor) with
/// their Koszul signs.
fn shuffles(p: usize, q: usize) -> Vec<(Vec<bool>, Scalar)> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(p + q);
    fn go(p: usize, q: usize, cur: &mut Vec<bool>, out: &mut Vec<(Vec<bool>, Scalar)>) {
        if p == 0 && q == 0 {
            // sign = parity of pairs (b before a)
            let mut inv = 0i64;
            let mut bs = 0i64;
            for &x in cur.iter() {
                if x {
                    inv += bs;
                } else {
                    bs += 1;
                }
            }
            out.push((cur.clone(), sign(inv)));
            return;
        }
        if p > 0 {
            cur.push(true);
            go(p - 1, q, cur, out);
            cur.pop();
        }
        if q > 0 {
            cur.push(false);
            go(p, q - 1, cur, out);
            cur.pop();
        }
    }
    go(p, q, &mut cur, &mut out);
    out
}

/// Number of tensors `a₀ ⊗ a₁ ⊗ … ⊗ aₙ` of total weight `w` with `a₁, …, aₙ`
/// of positive weight.
fn count(ring: &GradedRing, n: usize, w: usize) -> usize {
    // ways[k][v]: k positive-weight factors of total weight v
    let mut ways = vec![0usize; w + 1];
    ways[0] = 1;
    for _ in 0..n {
        let mut next = vec![0usize; w + 1];
        for v in 0..=w {
            if ways[v] == 0 {
                continue;
            }
            for u in 1..=(w - v) {
                next[v + u] =
                    next[v + u].saturating_add(ways[v].saturating_mul(ring.dim(u as i64)));
            }
        }
        ways = next;
    }
    (0..=w)
        .map(|w0| ring.dim(w0 as i64).saturating_mul(ways[w - w0]))
        .fold(0usize, usize::saturating_add)
}

fn enumerate(ring: &GradedRing, n: usize, w: usize) -> Vec<Vec<Factor>> {
    let mut out = Vec::new();
    let mut cur: Vec<Factor> = Vec::with_capacity(n + 1);
    fn go(
        ring: &GradedRing,
        n: usize,
        rest: usize,
        first: bool,
        cur: &mut Vec<Factor>,
        out: &mut Vec<Vec<Factor>>,
    ) {
        if cur.len() == n + 1 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let remaining = n - cur.len();
        let min = usize::from(!first);
        for u in min..=rest {
            if rest - u < remaining {
                break;
            }
            for i in 0..ring.dim(u as i64) {
                cur.push((u, i));
                go(ring, n, rest - u, false, cur, out);
                cur.pop();
            }
        }
    }
    go(ring, n, w, true, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Ring;
    use num_traits::One;

    #[test]
    fn base_ring() {
        let p = RingPresentation::polynomial(Ring::Integers, &[]);
        let h = HochschildData::new(&p, 3, 3).unwrap();
        assert_eq!(h.homology(0, 0).unwrap(), FgAbGroup::free(1));
        assert!((1..=3).all(|n| h.homology(n, 0).unwrap().is_zero()));
    }

    #[test]
    fn polynomial_in_one_variable() {
        let p = RingPresentation::polynomial(Ring::Integers, &[("x", 1)]);
        let h = HochschildData::new(&p, 3, 4).unwrap();
        h.mixed().validate().unwrap();
        for w in 0..=4 {
            assert_eq!(h.homology(0, w).unwrap(), FgAbGroup::free(1));
            let expected = if w >= 1 {
                FgAbGroup::free(1)
            } else {
                FgAbGroup::zero()
            };
            assert_eq!(h.homology(1, w).unwrap(), expected, "HH_1 weight {w}");
            assert!(h.homology(2, w).unwrap().is_zero());
            assert!(h.homology(3, w).unwrap().is_zero());
        }
    }

    #[test]
    fn counts_match_enumeration() {
        let p = RingPresentation::polynomial(Ring::Rationals, &[("x", 1), ("y", 2)]);
        let r = p.truncate(6).unwrap();
        for w in 0..=6 {
            for n in 0..=w {
                assert_eq!(count(&r, n, w), enumerate(&r, n, w).len());
            }
        }
    }

    #[test]
    fn mixed_axioms_with_relation() {
        let p = RingPresentation::parse(Ring::Integers, &[("x", 1), ("y", 1)], &["x*y"]).unwrap();
        let h = HochschildData::new(&p, 4, 4).unwrap();
        h.mixed().validate().unwrap();
    }

    #[test]
    fn shuffle_commutativity() {
        let p = RingPresentation::polynomial(Ring::Integers, &[("x", 1), ("y", 1)]);
        let h = HochschildData::new(&p, 2, 2).unwrap();
        let x = h.ring().generator_element(0).unwrap();
        let y = h.ring().generator_element(1).unwrap();
        let one = Scalar::one();
        let a = h.vector(1, 1, &[(vec![(0, 0), x], one.clone())]).unwrap();
        let b = h.vector(1, 1, &[(vec![(0, 0), y], one)]).unwrap();
        let ab = h.shuffle_product((1, 1), &a, (1, 1), &b).unwrap();
        let ba = h.shuffle_product((1, 1), &b, (1, 1), &a).unwrap();
        let sum: Vec<Scalar> = ab.iter().zip(&ba).map(|(u, v)| u + v).collect();
        assert!(sum.iter().all(Zero::is_zero));
        assert!(h
            .complex()
            .differential(2, 2)
            .apply(&ab)
            .iter()
            .all(Zero::is_zero));
    }
}
