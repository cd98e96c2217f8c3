#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use hkrlab::complexes::ChainComplex;
use hkrlab::exact::{Matrix, Scalar};
use hkrlab::mixed::FilteredMixedComplex;

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rank over ℚ by plain Gaussian elimination on dense rows.
pub fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for k in c..ncols {
                    let v = &f * &rows[r][k];
                    rows[i][k] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn dense(m: &Matrix) -> Vec<Vec<BigRational>> {
    m.to_dense()
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let mut r = 1i64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// `rank Ω^i_w` of a polynomial ring on `k` generators of weight 1.
pub fn omega_rank(k: i64, i: i64, w: i64) -> i64 {
    if w < i {
        return 0;
    }
    let m = w - i;
    let monomials = if k == 0 {
        i64::from(m == 0)
    } else {
        binomial(m + k - 1, k - 1)
    };
    binomial(k, i) * monomials
}

/// `rank Z^i_w` (closed `i`-forms) over ℚ for `w > 0`, from exactness of
/// `0 → Ω^0_w → Ω^1_w → …`.
pub fn closed_rank(k: i64, i: i64, w: i64) -> i64 {
    if w == 0 {
        return i64::from(i == 0);
    }
    (0..i)
        .map(|j| {
            if (i - 1 - j) % 2 == 0 {
                omega_rank(k, j, w)
            } else {
                -omega_rank(k, j, w)
            }
        })
        .sum()
}

/// Homology dimensions over ℚ of the unnormalized Hochschild complex
/// `A^{⊗(n+1)}` of `A = ℚ[x]/(x²)`, weight `w`, for `n ≤ top`.
pub fn dual_numbers_hh(top: usize, w: usize) -> Vec<usize> {
    // tensors are bit masks of length n + 1: bit i set means factor i is x
    let tensors = |n: usize| -> Vec<u32> {
        (0u32..(1 << (n + 1)))
            .filter(|t| t.count_ones() as usize == w)
            .collect()
    };
    let index = |n: usize| -> BTreeMap<u32, usize> {
        tensors(n)
            .into_iter()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect()
    };
    let differential = |n: usize| -> Vec<Vec<BigRational>> {
        let src = tensors(n);
        let tgt = index(n - 1);
        let mut m = vec![vec![q(0); src.len()]; tgt.len()];
        for (col, &t) in src.iter().enumerate() {
            let bit = |i: usize| (t >> i) & 1;
            for i in 0..=n {
                let (a, b) = if i < n { (i, i + 1) } else { (n, 0) };
                if bit(a) + bit(b) == 2 {
                    continue;
                }
                let prod = bit(a) | bit(b);
                let mut out = Vec::with_capacity(n);
                for k in 0..=n {
                    if i < n {
                        if k == i {
                            out.push(prod);
                        } else if k != i + 1 {
                            out.push(bit(k));
                        }
                    } else if k == 0 {
                        out.push(prod);
                    } else if k != n {
                        out.push(bit(k));
                    }
                }
                let key = out
                    .iter()
                    .enumerate()
                    .fold(0u32, |acc, (k, &v)| acc | (v << k));
                let sign = if i % 2 == 0 { 1 } else { -1 };
                m[tgt[&key]][col] += q(sign);
            }
        }
        m
    };
    let dims: Vec<usize> = (0..=top + 1).map(|n| tensors(n).len()).collect();
    let ranks: Vec<usize> = (0..=top + 1)
        .map(|n| {
            if n == 0 || dims[n] == 0 || dims[n - 1] == 0 {
                0
            } else {
                rank(differential(n))
            }
        })
        .collect();
    (0..=top)
        .map(|n| dims[n] - ranks[n] - ranks[n + 1])
        .collect()
}

/// Coefficient table of `e^{(i)}_n` from the descent formula
/// `λ^k = Σ_σ C(k - 1 - d(σ) + n, n) σ = Σ_i k^i e^{(i)}`.
pub fn eulerian_by_descents(
    n: usize,
    inverse_descents: bool,
) -> Vec<BTreeMap<Vec<u8>, BigRational>> {
    let perms = permutations(n);
    let mut out = vec![BTreeMap::new(); n + 1];
    for p in perms {
        let d = if inverse_descents {
            descents(&invert(&p))
        } else {
            descents(&p)
        } as i64;
        // Π_{r=0}^{n-1} (k - d + r) / n!  as a polynomial in k
        let mut poly = vec![q(1)];
        for r in 0..n as i64 {
            let c = q(r - d);
            let mut next = vec![q(0); poly.len() + 1];
            for (e, a) in poly.iter().enumerate() {
                next[e + 1] += a.clone();
                next[e] += a * &c;
            }
            poly = next;
        }
        let fact: i64 = (1..=n as i64).product();
        for (i, a) in poly.into_iter().enumerate() {
            let a = a / q(fact);
            if !a.is_zero() {
                out[i].insert(p.clone(), a);
            }
        }
    }
    out
}

pub fn permutations(n: usize) -> Vec<Vec<u8>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut r = p.clone();
            r.insert(pos, (n - 1) as u8);
            out.push(r);
        }
    }
    out.sort();
    out
}

pub fn invert(p: &[u8]) -> Vec<u8> {
    let mut r = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        r[j as usize] = i as u8;
    }
    r
}

pub fn descents(p: &[u8]) -> usize {
    p.windows(2).filter(|w| w[0] > w[1]).count()
}

/// Product in `ℚ[S_n]` with `(σ τ)(i) = σ(τ(i))`.
pub fn group_mul(
    a: &BTreeMap<Vec<u8>, BigRational>,
    b: &BTreeMap<Vec<u8>, BigRational>,
) -> BTreeMap<Vec<u8>, BigRational> {
    let mut out: BTreeMap<Vec<u8>, BigRational> = BTreeMap::new();
    for (s, x) in a {
        for (t, y) in b {
            let st: Vec<u8> = t.iter().map(|&i| s[i as usize]).collect();
            *out.entry(st).or_insert_with(BigRational::zero) += x * y;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// `|gr X|^{≥i}[2i]` (or `|gr X|[2i]` when `all` is set) built directly:
/// degree `n` is `⊕_{j ≥ 0} gr^{i+j} X_{n+2j}` with `b` inside each summand and
/// the level-raising-by-one part of `B` from summand `j` to `j + 1`.
pub fn sheared_gr(x: &FilteredMixedComplex, i: i64, all: bool, window: (i64, i64)) -> ChainComplex {
    let f = x.filtered();
    let c = f.complex();
    let (lo, hi) = window;
    let mut bases: BTreeMap<(i64, i64), Vec<String>> = BTreeMap::new();
    // (degree, weight) → list of (j, index in X_{n+2j})
    let mut slots: BTreeMap<(i64, i64), Vec<(i64, usize)>> = BTreeMap::new();
    let degrees: Vec<(i64, i64)> = c.cells().collect();
    for n in (lo - 1)..=(hi + 1) {
        for &(m, w) in &degrees {
            if (m - n) % 2 != 0 {
                continue;
            }
            let j = (m - n) / 2;
            if !all && j < 0 {
                continue;
            }
            for (k, &l) in f.level_slice(m, w).iter().enumerate() {
                if l == i + j {
                    slots.entry((n, w)).or_default().push((j, k));
                    bases.entry((n, w)).or_default().push(format!("{j}:{k}"));
                }
            }
        }
    }
    let mut diffs = BTreeMap::new();
    for (&(n, w), src) in &slots {
        if n < lo {
            continue;
        }
        let Some(tgt) = slots.get(&(n - 1, w)) else {
            continue;
        };
        let mut m = vec![vec![Scalar::zero(); src.len()]; tgt.len()];
        for (col, &(j, k)) in src.iter().enumerate() {
            let deg = n + 2 * j;
            let b = c.differential(deg, w);
            let bb = x.b_blocks().get(&(deg, w));
            for (row, &(j2, k2)) in tgt.iter().enumerate() {
                if j2 == j {
                    m[row][col] += b.get(k2, k);
                } else if j2 == j + 1 {
                    if let Some(bb) = bb {
                        m[row][col] += bb.get(k2, k);
                    }
                }
            }
        }
        diffs.insert((n, w), Matrix::from_dense(tgt.len(), src.len(), &m));
    }
    ChainComplex::new(c.ring(), bases, diffs).expect("sheared graded complex")
}
