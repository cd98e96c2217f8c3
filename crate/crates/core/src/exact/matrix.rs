use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::scalar::{int, is_integral, Scalar};
use crate::error::{Error, Result};

/// Sparse matrix with exact entries, stored row-wise.
///
/// Each row is a list of `(column, value)` pairs sorted by column with no
/// stored zeros, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, Scalar)>>,
}

pub type SparseVec = Vec<(usize, Scalar)>;

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for (i, row) in m.data.iter_mut().enumerate() {
            row.push((i, Scalar::one()));
        }
        m
    }

    pub fn scalar_identity(n: usize, c: &Scalar) -> Self {
        if c.is_zero() {
            return Matrix::zeros(n, n);
        }
        let mut m = Matrix::zeros(n, n);
        for (i, row) in m.data.iter_mut().enumerate() {
            row.push((i, c.clone()));
        }
        m
    }

    /// Builds a matrix from (row, col, value) triples; repeated positions are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Self {
        let mut acc: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in entries {
            assert!(
                r < rows && c < cols,
                "entry ({r},{c}) outside {rows}x{cols}"
            );
            if v.is_zero() {
                continue;
            }
            let slot = acc[r].entry(c).or_insert_with(Scalar::zero);
            *slot += v;
        }
        let data = acc
            .into_iter()
            .map(|row| row.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from sparse columns.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let cols = columns.len();
        let triplets = columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v.clone())));
        Matrix::from_triplets(rows, cols, triplets)
    }

    pub fn from_sparse_rows(cols: usize, rows: Vec<SparseVec>) -> Self {
        let n = rows.len();
        let triplets = rows
            .into_iter()
            .enumerate()
            .flat_map(|(r, row)| row.into_iter().map(move |(c, v)| (r, c, v)));
        Matrix::from_triplets(n, cols, triplets)
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Matrix::from_triplets(
            r,
            c,
            rows.iter().enumerate().flat_map(|(i, row)| {
                assert_eq!(row.len(), c, "ragged rows");
                row.iter().enumerate().map(move |(j, &v)| (i, j, int(v)))
            }),
        )
    }

    pub fn from_dense(rows: usize, cols: usize, dense: &[Vec<Scalar>]) -> Self {
        Matrix::from_triplets(
            rows,
            cols,
            dense
                .iter()
                .enumerate()
                .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, v)| (i, j, v.clone()))),
        )
    }

    pub fn from_bigint_dense(dense: &[Vec<BigInt>], rows: usize, cols: usize) -> Self {
        Matrix::from_triplets(
            rows,
            cols,
            dense.iter().enumerate().flat_map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(move |(j, v)| (i, j, Scalar::from_integer(v.clone())))
            }),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn is_integral(&self) -> bool {
        self.entries().all(|(_, _, v)| is_integral(v))
    }

    pub fn row(&self, i: usize) -> &[(usize, Scalar)] {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        match self.data[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); self.cols];
        for (i, j, v) in self.entries() {
            cols[j].push((i, v.clone()));
        }
        cols
    }

    pub fn column(&self, j: usize) -> SparseVec {
        self.data
            .iter()
            .enumerate()
            .filter_map(|(i, row)| {
                row.binary_search_by_key(&j, |(c, _)| *c)
                    .ok()
                    .map(|k| (i, row[k].1.clone()))
            })
            .collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![Scalar::zero(); self.cols]; self.rows];
        for (i, j, v) in self.entries() {
            out[i][j] = v.clone();
        }
        out
    }

    /// Dense integer copy, or an error if any entry is a proper fraction.
    pub fn to_bigint_dense(&self) -> Result<Vec<Vec<BigInt>>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, j, v) in self.entries() {
            if !is_integral(v) {
                return Err(Error::RationalEntries);
            }
            out[i][j] = v.numer().clone();
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        let mut data: Vec<SparseVec> = vec![Vec::new(); self.cols];
        for (i, j, v) in self.entries() {
            data[j].push((i, v.clone()));
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (k, a) in row {
                    for (j, b) in &other.data[*k] {
                        *acc.entry(*j).or_insert_with(Scalar::zero) += a * b;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Matrix {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .fold(Scalar::zero(), |acc, (j, a)| acc + a * &v[*j])
            })
            .collect()
    }

    pub fn apply_sparse(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let dense: BTreeMap<usize, &Scalar> = v.iter().map(|(i, x)| (*i, x)).collect();
        self.data
            .iter()
            .enumerate()
            .filter_map(|(i, row)| {
                let s = row
                    .iter()
                    .fold(Scalar::zero(), |acc, (j, a)| match dense.get(j) {
                        Some(x) => acc + a * *x,
                        None => acc,
                    });
                (!s.is_zero()).then_some((i, s))
            })
            .collect()
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch");
        let zero = Scalar::zero();
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut out = Vec::with_capacity(a.len() + b.len());
                let (mut i, mut j) = (0, 0);
                while i < a.len() || j < b.len() {
                    let (col, v) = match (a.get(i), b.get(j)) {
                        (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                            i += 1;
                            j += 1;
                            (*ca, f(va, vb))
                        }
                        (Some((ca, va)), Some((cb, _))) if ca < cb => {
                            i += 1;
                            (*ca, f(va, &zero))
                        }
                        (Some((ca, va)), None) => {
                            i += 1;
                            (*ca, f(va, &zero))
                        }
                        (_, Some((cb, vb))) => {
                            j += 1;
                            (*cb, f(&zero, vb))
                        }
                        (None, None) => unreachable!(),
                    };
                    if !v.is_zero() {
                        out.push((col, v));
                    }
                }
                out
            })
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        if c.is_zero() {
            return Matrix::zeros(self.rows, self.cols);
        }
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|row| row.iter().map(|(j, v)| (*j, v * c)).collect())
                .collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&-Scalar::one())
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                a.iter()
                    .cloned()
                    .chain(b.iter().map(|(j, v)| (j + self.cols, v.clone())))
                    .collect()
            })
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        }
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Copies `block` into a matrix of the given shape at offset `(r0, c0)`.
    pub fn embed(rows: usize, cols: usize, r0: usize, c0: usize, block: &Matrix) -> Matrix {
        assert!(r0 + block.rows <= rows && c0 + block.cols <= cols);
        Matrix::from_triplets(
            rows,
            cols,
            block.entries().map(|(i, j, v)| (i + r0, j + c0, v.clone())),
        )
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix {
            rows: idx.len(),
            cols: self.cols,
            data: idx.iter().map(|&i| self.data[i].clone()).collect(),
        }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut pos = vec![usize::MAX; self.cols];
        for (new, &old) in idx.iter().enumerate() {
            pos[old] = new;
        }
        Matrix::from_triplets(
            self.rows,
            idx.len(),
            self.entries()
                .filter(|(_, j, _)| pos[*j] != usize::MAX)
                .map(|(i, j, v)| (i, pos[j], v.clone())),
        )
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        self.select_rows(rows).select_cols(cols)
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries().all(|(i, j, _)| i == j)
    }

    pub fn diagonal(&self) -> Vec<Scalar> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i))
            .collect()
    }

    /// Exact determinant of a square matrix (fraction-free elimination).
    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut a = self.to_dense();
        let mut det = Scalar::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Scalar::zero();
            };
            if p != k {
                a.swap(p, k);
                det = -det;
            }
            let pivot = a[k][k].clone();
            det *= &pivot;
            for i in (k + 1)..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = &a[i][k] / &pivot;
                for j in k..n {
                    let t = &f * &a[k][j];
                    a[i][j] -= t;
                }
            }
        }
        det
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Dense vector helper: turns a sparse vector into a dense one of length `n`.
pub fn densify(v: &[(usize, Scalar)], n: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn sparsify(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}
