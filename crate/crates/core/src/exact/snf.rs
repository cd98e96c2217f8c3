//! Smith normal form and related unimodular reductions over the integers.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;
use crate::error::{Error, Result};

type Dense = Vec<Vec<BigInt>>;

fn identity(n: usize) -> Dense {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Result of [`smith_normal_form`]: `d = u * m * v` with `u`, `v` unimodular.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: Matrix,
    pub d: Matrix,
    pub v: Matrix,
    pub u_inv: Matrix,
    pub v_inv: Matrix,
}

impl Snf {
    /// Nonzero diagonal entries d₁ | d₂ | ….
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.d
            .diagonal()
            .into_iter()
            .filter(|x| !x.is_zero())
            .map(|x| x.numer().clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Dense working state for the Smith reduction, optionally tracking the
/// unimodular transforms and their inverses.
struct Reducer {
    a: Dense,
    track: bool,
    u: Dense,
    u_inv: Dense,
    v: Dense,
    v_inv: Dense,
}

impl Reducer {
    fn new(a: Dense, m: usize, n: usize, track: bool) -> Self {
        let (u, u_inv, v, v_inv) = if track {
            (identity(m), identity(m), identity(n), identity(n))
        } else {
            (vec![], vec![], vec![], vec![])
        };
        Reducer {
            a,
            track,
            u,
            u_inv,
            v,
            v_inv,
        }
    }

    fn m(&self) -> usize {
        self.a.len()
    }

    fn n(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }

    /// row_i -= q * row_t
    fn row_axpy(&mut self, i: usize, t: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.n() {
            if !self.a[t][j].is_zero() {
                let x = q * &self.a[t][j];
                self.a[i][j] -= x;
            }
        }
        if self.track {
            for j in 0..self.u[t].len() {
                if !self.u[t][j].is_zero() {
                    let x = q * &self.u[t][j];
                    self.u[i][j] -= x;
                }
            }
            for row in self.u_inv.iter_mut() {
                if !row[i].is_zero() {
                    let x = q * &row[i];
                    row[t] += x;
                }
            }
        }
    }

    /// col_j -= q * col_t
    fn col_axpy(&mut self, j: usize, t: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for row in self.a.iter_mut() {
            if !row[t].is_zero() {
                let x = q * &row[t];
                row[j] -= x;
            }
        }
        if self.track {
            for row in self.v.iter_mut() {
                if !row[t].is_zero() {
                    let x = q * &row[t];
                    row[j] -= x;
                }
            }
            for k in 0..self.v_inv[j].len() {
                if !self.v_inv[j][k].is_zero() {
                    let x = q * &self.v_inv[j][k];
                    self.v_inv[t][k] += x;
                }
            }
        }
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        self.a.swap(i, k);
        if self.track {
            self.u.swap(i, k);
            for row in self.u_inv.iter_mut() {
                row.swap(i, k);
            }
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j == k {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(j, k);
        }
        if self.track {
            for row in self.v.iter_mut() {
                row.swap(j, k);
            }
            self.v_inv.swap(j, k);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -&*x;
        }
        if self.track {
            for x in self.u[i].iter_mut() {
                *x = -&*x;
            }
            for row in self.u_inv.iter_mut() {
                row[i] = -&row[i];
            }
        }
    }

    fn smith(&mut self) {
        let (m, n) = (self.m(), self.n());
        let mut t = 0;
        while t < m.min(n) {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !self.a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| self.a[i][j].abs() < self.a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in (t + 1)..m {
                    if !self.a[i][t].is_zero() {
                        let q = self.a[i][t].div_floor(&self.a[t][t]);
                        self.row_axpy(i, t, &q);
                        if !self.a[i][t].is_zero() {
                            clean = false;
                        }
                    }
                }
                for j in (t + 1)..n {
                    if !self.a[t][j].is_zero() {
                        let q = self.a[t][j].div_floor(&self.a[t][t]);
                        self.col_axpy(j, t, &q);
                        if !self.a[t][j].is_zero() {
                            clean = false;
                        }
                    }
                }
                if !clean {
                    // a smaller remainder appeared in row or column t; promote it
                    let mut best = (t, t);
                    for i in (t + 1)..m {
                        if !self.a[i][t].is_zero()
                            && self.a[i][t].abs() < self.a[best.0][best.1].abs()
                        {
                            best = (i, t);
                        }
                    }
                    for j in (t + 1)..n {
                        if !self.a[t][j].is_zero()
                            && self.a[t][j].abs() < self.a[best.0][best.1].abs()
                        {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                // divisibility of the trailing block
                let p = self.a[t][t].clone();
                let bad =
                    ((t + 1)..m).find(|&i| ((t + 1)..n).any(|j| !self.a[i][j].is_multiple_of(&p)));
                match bad {
                    Some(i) => {
                        let minus_one = -BigInt::one();
                        self.row_axpy(t, i, &minus_one);
                    }
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
    }
}

/// Smith normal form of an integer matrix: `d = u * m * v`, `u` and `v`
/// unimodular, `d` diagonal with d₁ | d₂ | … and dᵢ ≥ 0.
pub fn smith_normal_form(m: &Matrix) -> Result<Snf> {
    let a = m.to_bigint_dense()?;
    let (r, c) = m.shape();
    let mut red = Reducer::new(a, r, c, true);
    red.smith();
    Ok(Snf {
        u: Matrix::from_bigint_dense(&red.u, r, r),
        d: Matrix::from_bigint_dense(&red.a, r, c),
        v: Matrix::from_bigint_dense(&red.v, c, c),
        u_inv: Matrix::from_bigint_dense(&red.u_inv, r, r),
        v_inv: Matrix::from_bigint_dense(&red.v_inv, c, c),
    })
}

type IntRow = Vec<(usize, BigInt)>;

fn row_entry(row: &IntRow, col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|k| &row[k].1)
}

fn row_sub(a: &IntRow, q: &BigInt, b: &IntRow) -> IntRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (col, v) = match (a.get(i), b.get(j)) {
            (Some((x, va)), Some((y, vb))) if x == y => {
                i += 1;
                j += 1;
                (*x, va - q * vb)
            }
            (Some((x, va)), Some((y, _))) if x < y => {
                i += 1;
                (*x, va.clone())
            }
            (Some((x, va)), None) => {
                i += 1;
                (*x, va.clone())
            }
            (_, Some((y, vb))) => {
                j += 1;
                (*y, -(q * vb))
            }
            (None, None) => unreachable!(),
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    out
}

/// Nonzero invariant factors d₁ | d₂ | … of an integer matrix (units included).
///
/// Unit pivots are eliminated sparsely first; only the remaining core goes
/// through the dense Smith reduction.
pub fn invariant_factors(m: &Matrix) -> Result<Vec<BigInt>> {
    if !m.is_integral() {
        return Err(Error::RationalEntries);
    }
    let ncols = m.ncols();
    let mut rows: Vec<Option<IntRow>> = (0..m.nrows())
        .map(|i| {
            let r: IntRow = m
                .row(i)
                .iter()
                .map(|(j, v)| (*j, v.numer().clone()))
                .collect();
            (!r.is_empty()).then_some(r)
        })
        .collect();
    let mut col_index: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (r, row) in rows.iter().enumerate() {
        if let Some(row) = row {
            for (c, _) in row {
                col_index[*c].insert(r);
            }
        }
    }
    let mut units = 0usize;
    let mut removed_cols = vec![false; ncols];
    let mut progress = true;
    while progress {
        progress = false;
        for c in 0..ncols {
            if removed_cols[c] || col_index[c].is_empty() {
                continue;
            }
            let pivot = col_index[c]
                .iter()
                .copied()
                .filter(|&r| {
                    row_entry(rows[r].as_ref().unwrap(), c).is_some_and(|v| v.abs().is_one())
                })
                .min_by_key(|&r| rows[r].as_ref().unwrap().len());
            let Some(p) = pivot else { continue };
            let prow = rows[p].take().unwrap();
            for (cc, _) in &prow {
                col_index[*cc].remove(&p);
            }
            let u = row_entry(&prow, c).unwrap().clone();
            let others: Vec<usize> = col_index[c].iter().copied().collect();
            for r in others {
                let old = rows[r].take().unwrap();
                for (cc, _) in &old {
                    col_index[*cc].remove(&r);
                }
                let q = row_entry(&old, c).unwrap() * &u;
                let new = row_sub(&old, &q, &prow);
                for (cc, _) in &new {
                    col_index[*cc].insert(r);
                }
                if !new.is_empty() {
                    rows[r] = Some(new);
                }
            }
            removed_cols[c] = true;
            units += 1;
            progress = true;
        }
    }
    let live_rows: Vec<IntRow> = rows.into_iter().flatten().collect();
    let live_cols: Vec<usize> = (0..ncols)
        .filter(|&c| !removed_cols[c] && !col_index[c].is_empty())
        .collect();
    let mut factors = vec![BigInt::one(); units];
    if !live_rows.is_empty() && !live_cols.is_empty() {
        let pos: std::collections::HashMap<usize, usize> =
            live_cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let mut dense = vec![vec![BigInt::zero(); live_cols.len()]; live_rows.len()];
        for (i, row) in live_rows.iter().enumerate() {
            for (c, v) in row {
                dense[i][pos[c]] = v.clone();
            }
        }
        let (r, c) = (dense.len(), live_cols.len());
        let mut red = Reducer::new(dense, r, c, false);
        red.smith();
        for i in 0..r.min(c) {
            if !red.a[i][i].is_zero() {
                factors.push(red.a[i][i].clone());
            }
        }
    }
    Ok(factors)
}

/// Column echelon reduction: returns `(rank, v, v_inv)` with `m * v = [H | 0]`
/// where `H` has `rank` columns, so the trailing columns of `v` are a basis of
/// the integer kernel and the leading ones span a complement.
pub fn column_echelon(m: &Matrix) -> Result<(usize, Matrix, Matrix)> {
    let a = m.to_bigint_dense()?;
    let (rows, cols) = m.shape();
    let mut red = Reducer::new(a, rows, cols, true);
    let mut r = 0;
    for i in 0..rows {
        loop {
            let Some(j) = (r..cols)
                .filter(|&j| !red.a[i][j].is_zero())
                .min_by(|&x, &y| red.a[i][x].abs().cmp(&red.a[i][y].abs()))
            else {
                break;
            };
            red.swap_cols(r, j);
            let mut done = true;
            for j in (r + 1)..cols {
                if !red.a[i][j].is_zero() {
                    let q = red.a[i][j].div_floor(&red.a[i][r]);
                    red.col_axpy(j, r, &q);
                    if !red.a[i][j].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                r += 1;
                break;
            }
        }
        if r == cols {
            break;
        }
    }
    Ok((
        r,
        Matrix::from_bigint_dense(&red.v, cols, cols),
        Matrix::from_bigint_dense(&red.v_inv, cols, cols),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::int;

    #[test]
    fn zero_one_by_one() {
        let s = smith_normal_form(&Matrix::from_i64(&[vec![0]])).unwrap();
        assert_eq!(s.d, Matrix::zeros(1, 1));
        assert_eq!(s.u, Matrix::identity(1));
        assert_eq!(s.v, Matrix::identity(1));
    }

    #[test]
    fn identity_is_fixed() {
        let s = smith_normal_form(&Matrix::identity(3)).unwrap();
        assert_eq!(s.d, Matrix::identity(3));
    }

    #[test]
    fn two_by_two_example() {
        // gcd of entries is 2 and |det| = 8, so the diagonal is (2, 4)
        let m = Matrix::from_i64(&[vec![2, 4], vec![6, 8]]);
        let s = smith_normal_form(&m).unwrap();
        assert_eq!(s.d, Matrix::from_i64(&[vec![2, 0], vec![0, 4]]));
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), Matrix::identity(2));
        assert_eq!(s.v.mul(&s.v_inv), Matrix::identity(2));
    }

    #[test]
    fn rejects_fractions() {
        let m = Matrix::from_triplets(1, 1, [(0, 0, crate::exact::scalar::frac(1, 2))]);
        assert_eq!(smith_normal_form(&m).unwrap_err(), Error::RationalEntries);
        assert_eq!(invariant_factors(&m).unwrap_err(), Error::RationalEntries);
    }

    #[test]
    fn sparse_factors_match_dense() {
        let m = Matrix::from_i64(&[vec![1, 2, 0], vec![3, 4, 6], vec![0, 2, 6]]);
        let dense = smith_normal_form(&m).unwrap().invariant_factors();
        assert_eq!(invariant_factors(&m).unwrap(), dense);
        let _ = int(1);
    }

    #[test]
    fn column_echelon_kernel() {
        let m = Matrix::from_i64(&[vec![2, 4, 6], vec![1, 1, 1]]);
        let (r, v, vi) = column_echelon(&m).unwrap();
        assert_eq!(r, 2);
        assert_eq!(v.mul(&vi), Matrix::identity(3));
        let k = v.select_cols(&[2]);
        assert!(m.mul(&k).is_zero());
    }
}
