//! Seeded random instances: integer matrices, chain complexes, filtered
//! complexes and bounded filtered mixed complexes.
//!
//! Complexes are assembled from small elementary pieces whose structure maps
//! are correct by construction and then conjugated, cell by cell, by a random
//! product of elementary matrices `I + a·e_{rc}` with `level(r) ≥ level(c)`.
//! Such a change of basis is unimodular and preserves the filtration, so the
//! result keeps every axiom while its matrices are no longer block diagonal.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complexes::{Cell, ChainComplex};
use crate::exact::scalar::int;
use crate::exact::{Matrix, Ring, Scalar};
use crate::filtered::FilteredComplex;
use crate::mixed::{FilteredMixedComplex, MixedComplex};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries in `-bound ..= bound`, each nonzero with probability `density`.
pub fn random_matrix(
    rng: &mut impl Rng,
    rows: usize,
    cols: usize,
    bound: i64,
    density: f64,
) -> Matrix {
    let mut trip = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if rng.gen_bool(density) {
                trip.push((r, c, int(rng.gen_range(-bound..=bound))));
            }
        }
    }
    Matrix::from_triplets(rows, cols, trip)
}

/// Shape of the random instances.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub ring: Ring,
    /// Degrees used are `0 ..= max_degree`.
    pub max_degree: i64,
    /// Weights used are `0 ..= max_weight`.
    pub max_weight: i64,
    /// Levels start in `0 ..= max_level`.
    pub max_level: i64,
    pub pieces: usize,
    /// Number of elementary operations per cell.
    pub mixing: usize,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            ring: Ring::Integers,
            max_degree: 4,
            max_weight: 1,
            max_level: 2,
            pieces: 6,
            mixing: 6,
        }
    }
}

#[derive(Default)]
struct Assembly {
    /// `(degree, weight, level)` per generator.
    gens: Vec<(i64, i64, i64)>,
    d: Vec<(usize, usize, i64)>,
    b: Vec<(usize, usize, i64)>,
}

impl Assembly {
    fn push(&mut self, n: i64, w: i64, level: i64) -> usize {
        self.gens.push((n, w, level));
        self.gens.len() - 1
    }
}

fn nonzero(rng: &mut impl Rng) -> i64 {
    let k = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        k
    } else {
        -k
    }
}

fn pieces(rng: &mut impl Rng, s: &Shape, mixed: bool) -> Assembly {
    let mut a = Assembly::default();
    for _ in 0..s.pieces {
        let w = rng.gen_range(0..=s.max_weight);
        let l = rng.gen_range(0..=s.max_level);
        let kinds = if mixed { 4 } else { 2 };
        match rng.gen_range(0..kinds) {
            0 => {
                a.push(rng.gen_range(0..=s.max_degree), w, l);
            }
            1 => {
                // x ↦ k·y with y one degree lower and at least as deep
                let n = rng.gen_range(1..=s.max_degree);
                let x = a.push(n, w, l);
                let y = a.push(n - 1, w, l + rng.gen_range(0..=1));
                a.d.push((y, x, nonzero(rng)));
            }
            2 => {
                // B x = k·z, b = 0
                let n = rng.gen_range(0..s.max_degree);
                let x = a.push(n, w, l);
                let z = a.push(n + 1, w, l + rng.gen_range(1..=2));
                a.b.push((z, x, nonzero(rng)));
            }
            _ => {
                // bx = y, Bx = c·z, bz = e·t, By = -c·e·t
                let n = rng.gen_range(1..s.max_degree);
                let (c, e) = (nonzero(rng), nonzero(rng));
                let lz = l + 1 + rng.gen_range(0..=1);
                let ly = l + rng.gen_range(0..=1);
                let lt = lz.max(ly + 1) + rng.gen_range(0..=1);
                let x = a.push(n, w, l);
                let y = a.push(n - 1, w, ly);
                let z = a.push(n + 1, w, lz);
                let t = a.push(n, w, lt);
                a.d.push((y, x, 1));
                a.d.push((t, z, e));
                a.b.push((z, x, c));
                a.b.push((t, y, -c * e));
            }
        }
    }
    a
}

struct Built {
    complex: ChainComplex,
    levels: BTreeMap<Cell, Vec<i64>>,
    b_op: BTreeMap<Cell, Matrix>,
    range: (i64, i64),
}

fn build(rng: &mut impl Rng, s: &Shape, a: &Assembly) -> Built {
    let mut position: Vec<(Cell, usize)> = Vec::with_capacity(a.gens.len());
    let mut levels: BTreeMap<Cell, Vec<i64>> = BTreeMap::new();
    for &(n, w, l) in &a.gens {
        let lv = levels.entry((n, w)).or_default();
        position.push(((n, w), lv.len()));
        lv.push(l);
    }
    let dim = |c: Cell| levels.get(&c).map_or(0, Vec::len);
    let collect = |entries: &[(usize, usize, i64)], step: i64| {
        let mut trip: BTreeMap<Cell, Vec<(usize, usize, Scalar)>> = BTreeMap::new();
        for &(r, c, v) in entries {
            let (cell, j) = position[c];
            trip.entry(cell)
                .or_default()
                .push((position[r].1, j, int(v)));
        }
        trip.into_iter()
            .map(|((n, w), t)| {
                (
                    (n, w),
                    Matrix::from_triplets(dim((n + step, w)), dim((n, w)), t),
                )
            })
            .collect::<BTreeMap<Cell, Matrix>>()
    };
    let d = collect(&a.d, -1);
    let b = collect(&a.b, 1);
    // per-cell change of basis and its inverse
    let mut change: BTreeMap<Cell, (Matrix, Matrix)> = BTreeMap::new();
    for (&cell, lv) in &levels {
        let k = lv.len();
        let (mut p, mut q) = (Matrix::identity(k), Matrix::identity(k));
        if k > 1 {
            for _ in 0..s.mixing {
                let r = rng.gen_range(0..k);
                let c = rng.gen_range(0..k);
                if r == c || lv[r] < lv[c] {
                    continue;
                }
                let v = nonzero(rng);
                let e = Matrix::from_triplets(k, k, [(r, c, int(v))]);
                p = Matrix::identity(k).add(&e).mul(&p);
                q = q.mul(&Matrix::identity(k).sub(&e));
            }
        }
        change.insert(cell, (p, q));
    }
    let conj = |m: &Matrix, from: Cell, to: Cell| change[&to].0.mul(m).mul(&change[&from].1);
    let diffs = d
        .iter()
        .map(|(&(n, w), m)| ((n, w), conj(m, (n, w), (n - 1, w))))
        .collect();
    let b_op = b
        .iter()
        .map(|(&(n, w), m)| ((n, w), conj(m, (n, w), (n + 1, w))))
        .collect();
    let bases = levels
        .iter()
        .map(|(&(n, w), lv)| {
            (
                (n, w),
                (0..lv.len()).map(|i| format!("g{n}.{w}.{i}")).collect(),
            )
        })
        .collect();
    let lo = levels.values().flatten().copied().min().unwrap_or(0);
    let hi = levels.values().flatten().copied().max().unwrap_or(0);
    Built {
        complex: ChainComplex::new_unchecked(s.ring, bases, diffs),
        levels,
        b_op,
        range: (lo, hi),
    }
}

pub fn random_complex(rng: &mut impl Rng, s: &Shape) -> ChainComplex {
    let a = pieces(rng, s, false);
    build(rng, s, &a).complex
}

pub fn random_filtered_complex(rng: &mut impl Rng, s: &Shape) -> FilteredComplex {
    let a = pieces(rng, s, false);
    let b = build(rng, s, &a);
    FilteredComplex::new_unchecked(b.complex, b.levels, b.range)
}

/// A bounded filtered mixed complex; `B` raises levels by at least one.
pub fn random_filtered_mixed(rng: &mut impl Rng, s: &Shape) -> FilteredMixedComplex {
    let a = pieces(rng, s, true);
    let b = build(rng, s, &a);
    FilteredMixedComplex::new_unchecked(
        FilteredComplex::new_unchecked(b.complex, b.levels, b.range),
        b.b_op,
    )
}

/// `D₊ ⊗ C` for a random complex `C`.
pub fn random_induced(rng: &mut impl Rng, s: &Shape) -> MixedComplex {
    MixedComplex::induced(&random_complex(rng, s)).expect("induced from a valid complex")
}

/// `T_fil ⊗ F` for a random filtered complex `F`.
pub fn random_filtered_induced(rng: &mut impl Rng, s: &Shape) -> FilteredMixedComplex {
    FilteredMixedComplex::induced(&random_filtered_complex(rng, s))
        .expect("induced from a valid filtered complex")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_satisfy_their_axioms() {
        let mut r = rng(7);
        let s = Shape::default();
        for _ in 0..40 {
            random_complex(&mut r, &s).validate().unwrap();
            random_filtered_complex(&mut r, &s).validate().unwrap();
            random_filtered_mixed(&mut r, &s).validate().unwrap();
            random_induced(&mut r, &s).validate().unwrap();
            random_filtered_induced(&mut r, &s).validate().unwrap();
        }
    }

    #[test]
    fn seeded() {
        let s = Shape::default();
        let a = random_filtered_mixed(&mut rng(3), &s);
        let b = random_filtered_mixed(&mut rng(3), &s);
        assert_eq!(
            a.filtered().complex().differentials(),
            b.filtered().complex().differentials()
        );
        assert_eq!(a.b_blocks(), b.b_blocks());
    }
}
