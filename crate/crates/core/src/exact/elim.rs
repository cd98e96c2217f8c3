//! Sparse fraction-free Gaussian elimination over the rationals.
//!
//! Rows are kept as primitive integer vectors (a row may be rescaled by any
//! nonzero rational without changing the row space), which keeps entry growth
//! in check on the very sparse boundary matrices of bar complexes.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{Matrix, SparseVec};
use super::scalar::Scalar;

type IntRow = Vec<(usize, BigInt)>;

fn primitive(mut row: IntRow) -> IntRow {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if g.is_zero() {
        return row;
    }
    let flip = row.first().is_some_and(|(_, v)| v.is_negative());
    if !g.is_one() || flip {
        let g = if flip { -g } else { g };
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
    row
}

fn int_row(row: &[(usize, Scalar)]) -> IntRow {
    let den = row
        .iter()
        .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    primitive(
        row.iter()
            .map(|(j, v)| (*j, v.numer() * (&den / v.denom())))
            .collect(),
    )
}

fn entry(row: &IntRow, col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|k| &row[k].1)
}

/// `ca * a - cb * b`, made primitive.
fn combine(a: &IntRow, ca: &BigInt, b: &IntRow, cb: &BigInt) -> IntRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (col, v) = match (a.get(i), b.get(j)) {
            (Some((x, va)), Some((y, vb))) if x == y => {
                i += 1;
                j += 1;
                (*x, ca * va - cb * vb)
            }
            (Some((x, va)), Some((y, _))) if x < y => {
                i += 1;
                (*x, ca * va)
            }
            (Some((x, va)), None) => {
                i += 1;
                (*x, ca * va)
            }
            (_, Some((y, vb))) => {
                j += 1;
                (*y, -(cb * vb))
            }
            (None, None) => unreachable!(),
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    primitive(out)
}

/// Echelon form: pivot rows with strictly increasing leading columns, plus
/// whatever nonzero rows survive with support outside the eliminated columns.
struct Echelon {
    pivots: Vec<(usize, IntRow)>,
    leftover: Vec<IntRow>,
}

fn echelon(rows: Vec<IntRow>, ncols: usize, pivot_cols: usize) -> Echelon {
    let mut active: Vec<Option<IntRow>> = rows.into_iter().map(Some).collect();
    let mut col_index: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (r, row) in active.iter().enumerate() {
        for (c, _) in row.as_ref().unwrap() {
            col_index[*c].insert(r);
        }
    }
    let mut pivots = Vec::new();
    for c in 0..pivot_cols {
        if col_index[c].is_empty() {
            continue;
        }
        let candidates: Vec<usize> = col_index[c].iter().copied().collect();
        let p = *candidates
            .iter()
            .min_by_key(|&&r| {
                let row = active[r].as_ref().unwrap();
                let unit = entry(row, c).is_some_and(|v| v.abs().is_one());
                (!unit, row.len())
            })
            .unwrap();
        let prow = active[p].take().unwrap();
        for (cc, _) in &prow {
            col_index[*cc].remove(&p);
        }
        let pv = entry(&prow, c).unwrap().clone();
        for &r in candidates.iter().filter(|&&r| r != p) {
            let old = active[r].take().unwrap();
            for (cc, _) in &old {
                col_index[*cc].remove(&r);
            }
            let rv = entry(&old, c).unwrap().clone();
            let g = pv.gcd(&rv);
            let new = combine(&old, &(&pv / &g), &prow, &(&rv / &g));
            for (cc, _) in &new {
                col_index[*cc].insert(r);
            }
            if !new.is_empty() {
                active[r] = Some(new);
            }
        }
        pivots.push((c, prow));
    }
    let leftover = active
        .into_iter()
        .flatten()
        .filter(|r| !r.is_empty())
        .collect();
    Echelon { pivots, leftover }
}

/// Reduced echelon form: every pivot column is zero outside its pivot row.
fn reduce(pivots: &mut [(usize, IntRow)]) {
    for k in (0..pivots.len()).rev() {
        let (ck, ref rowk) = pivots[k];
        let rowk = rowk.clone();
        let ak = entry(&rowk, ck).unwrap().clone();
        for j in 0..k {
            if let Some(v) = entry(&pivots[j].1, ck).cloned() {
                let g = ak.gcd(&v);
                pivots[j].1 = combine(&pivots[j].1, &(&ak / &g), &rowk, &(&v / &g));
            }
        }
    }
}

fn to_int_rows(m: &Matrix) -> Vec<IntRow> {
    (0..m.nrows())
        .map(|i| int_row(m.row(i)))
        .filter(|r| !r.is_empty())
        .collect()
}

/// Exact rank over the rationals.
pub fn rank(m: &Matrix) -> usize {
    // eliminate along the shorter side
    let m = if m.nrows() > m.ncols() {
        m.transpose()
    } else {
        m.clone()
    };
    echelon(to_int_rows(&m), m.ncols(), m.ncols()).pivots.len()
}

/// Reduced row echelon data of a matrix over the rationals.
#[derive(Clone, Debug)]
pub struct Rref {
    pub ncols: usize,
    /// `(pivot column, row)`; rows are integral and primitive.
    rows: Vec<(usize, IntRow)>,
}

impl Rref {
    pub fn new(m: &Matrix) -> Self {
        let mut ech = echelon(to_int_rows(m), m.ncols(), m.ncols());
        reduce(&mut ech.pivots);
        Rref {
            ncols: m.ncols(),
            rows: ech.pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.iter().map(|(c, _)| *c).collect()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let piv: BTreeSet<usize> = self.rows.iter().map(|(c, _)| *c).collect();
        (0..self.ncols).filter(|c| !piv.contains(c)).collect()
    }

    /// Nullspace basis indexed by free columns: the vector for free column `f`
    /// has a 1 in position `f` and zeros in the other free positions.
    pub fn nullspace(&self) -> Vec<(usize, SparseVec)> {
        let free = self.free_columns();
        let mut vecs: Vec<Vec<(usize, Scalar)>> =
            free.iter().map(|&f| vec![(f, Scalar::one())]).collect();
        let pos: std::collections::HashMap<usize, usize> =
            free.iter().enumerate().map(|(k, &f)| (f, k)).collect();
        for (c, row) in &self.rows {
            let a = entry(row, *c).unwrap();
            for (j, v) in row {
                if let Some(&k) = pos.get(j) {
                    vecs[k].push((*c, -Scalar::new(v.clone(), a.clone())));
                }
            }
        }
        free.into_iter()
            .zip(vecs)
            .map(|(f, mut v)| {
                v.sort_by_key(|(i, _)| *i);
                (f, v)
            })
            .collect()
    }
}

/// Nullspace basis of `m` as sparse column vectors.
pub fn nullspace(m: &Matrix) -> Vec<SparseVec> {
    Rref::new(m)
        .nullspace()
        .into_iter()
        .map(|(_, v)| v)
        .collect()
}

/// Solves `a * x = b` over the rationals for every column of `b` at once,
/// returning the solution with free variables set to zero, or `None` if the
/// system is inconsistent.
pub fn solve(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    assert_eq!(a.nrows(), b.nrows(), "solve: row mismatch");
    let na = a.ncols();
    let aug = a.hstack(b);
    let mut ech = echelon(to_int_rows(&aug), aug.ncols(), na);
    if !ech.leftover.is_empty() {
        return None;
    }
    reduce(&mut ech.pivots);
    let mut triplets = Vec::new();
    for (c, row) in &ech.pivots {
        let a = entry(row, *c).unwrap();
        for (j, v) in row {
            if *j >= na {
                triplets.push((*c, *j - na, Scalar::new(v.clone(), a.clone())));
            }
        }
    }
    Some(Matrix::from_triplets(na, b.ncols(), triplets))
}

/// True iff every column of `b` lies in the column space of `a`.
pub fn in_column_space(a: &Matrix, b: &Matrix) -> bool {
    rank(&a.hstack(b)) == rank(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::int;

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank(&Matrix::from_i64(&[vec![1, 2], vec![2, 4]])), 1);
        assert_eq!(rank(&Matrix::identity(4)), 4);
        assert_eq!(rank(&Matrix::zeros(2, 3)), 0);
        assert_eq!(
            rank(&Matrix::from_i64(&[
                vec![2, 4, 1],
                vec![6, 8, 0],
                vec![8, 12, 1]
            ])),
            2
        );
    }

    #[test]
    fn nullspace_vectors_are_killed() {
        let m = Matrix::from_i64(&[vec![1, 2, 3, 4], vec![2, 4, 7, 9]]);
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(m.apply_sparse(&v).is_empty());
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = Matrix::from_i64(&[vec![2, 0], vec![0, 3], vec![0, 0]]);
        let b = Matrix::from_i64(&[vec![1], vec![1], vec![0]]);
        let x = solve(&a, &b).unwrap();
        assert_eq!(a.mul(&x), b);
        assert_eq!(x.get(0, 0), Scalar::new(1.into(), 2.into()));
        let bad = Matrix::from_i64(&[vec![1], vec![1], vec![1]]);
        assert!(solve(&a, &bad).is_none());
        assert_eq!(x.get(1, 0), Scalar::new(1.into(), 3.into()));
        let _ = int(0);
    }
}
