//! Dense matrices over `F_p` with exact Gaussian elimination.

use serde::{Deserialize, Serialize};

use crate::field::PrimeField;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: FpMatrix,
    pub pivots: Vec<usize>,
}

impl FpMatrix {
    pub fn zeros(field: &PrimeField, rows: usize, cols: usize) -> Self {
        FpMatrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Entries are reduced mod `p`. Panics on ragged input.
    pub fn from_rows(field: &PrimeField, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, field.reduce(v));
            }
        }
        m
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.field.characteristic();
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: &[u32]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = self.field.characteristic() as u64;
        (0..self.rows)
            .map(|i| {
                let s: u64 = self.row(i).iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows);
        let p = self.field.characteristic() as u64;
        let mut out = Self::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let s: u64 = (0..self.cols).map(|k| self.get(i, k) as u64 * other.get(k, j) as u64).sum();
                out.data[i * other.cols + j] = (s % p) as u32;
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// `row[dst] -= c * row[src]`, touching only columns from `from`.
    fn axpy(&mut self, dst: usize, src: usize, c: u32, from: usize) {
        if c == 0 {
            return;
        }
        let f = &self.field;
        let nc = f.neg(c);
        let p = f.characteristic();
        let cols = self.cols;
        for j in from..cols {
            let s = self.data[src * cols + j];
            if s != 0 {
                let d = &mut self.data[dst * cols + j];
                *d = ((*d as u64 + nc as u64 * s as u64) % p as u64) as u32;
            }
        }
    }

    fn scale_row(&mut self, i: usize, c: u32) {
        for j in 0..self.cols {
            let v = self.data[i * self.cols + j];
            self.data[i * self.cols + j] = self.field.mul(v, c);
        }
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m.field.inv(m.get(r, c));
            m.scale_row(r, inv);
            for i in 0..m.rows {
                if i != r {
                    let v = m.get(i, c);
                    m.axpy(i, r, v, c);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    /// Rank by forward elimination only.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m.field.inv(m.get(r, c));
            for i in r + 1..m.rows {
                let v = m.get(i, c);
                if v != 0 {
                    m.axpy(i, r, m.field.mul(v, inv), c);
                }
            }
            r += 1;
        }
        r
    }

    /// One solution of `m v = rhs`, with free variables set to zero; `None`
    /// when inconsistent.
    pub fn solve_linear(&self, rhs: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(rhs.len(), self.rows, "rhs length must equal the row count");
        let mut aug = Self::zeros(&self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, rhs[i]);
        }
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut v = vec![0; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = matrix.get(r, self.cols);
        }
        Some(v)
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let Rref { matrix, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let f = &self.field;
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0; self.cols];
                v[free] = 1;
                for (r, &c) in pivots.iter().enumerate() {
                    v[c] = f.neg(matrix.get(r, free));
                }
                v
            })
            .collect()
    }

    pub fn determinant(&self) -> u32 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let f = self.field.clone();
        let mut det = 1;
        for c in 0..m.cols {
            let Some(pr) = (c..m.rows).find(|&i| m.get(i, c) != 0) else {
                return 0;
            };
            if pr != c {
                m.swap_rows(pr, c);
                det = f.neg(det);
            }
            let pivot = m.get(c, c);
            det = f.mul(det, pivot);
            let inv = f.inv(pivot);
            for i in c + 1..m.rows {
                let v = m.get(i, c);
                if v != 0 {
                    m.axpy(i, c, f.mul(v, inv), c);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Self::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, matrix.get(i, n + j));
            }
        }
        Some(inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(FpMatrix::identity(&f(5), 3).rank(), 3);
        assert_eq!(FpMatrix::zeros(&f(5), 4, 2).rank(), 0);
        assert_eq!(FpMatrix::from_rows(&f(5), &[vec![1, 2], vec![2, 4]]).rank(), 1);
    }

    #[test]
    fn solve_examples() {
        let id = FpMatrix::identity(&f(7), 3);
        assert_eq!(id.solve_linear(&[3, 1, 4]), Some(vec![3, 1, 4]));
        let z = FpMatrix::zeros(&f(7), 2, 2);
        assert_eq!(z.solve_linear(&[0, 1]), None);
        let m = FpMatrix::from_rows(&f(3), &[vec![1, 1]]);
        assert_eq!(m.solve_linear(&[1]), Some(vec![1, 0]));
    }

    #[test]
    fn kernel_examples() {
        assert!(FpMatrix::identity(&f(5), 3).kernel_basis().is_empty());
        assert_eq!(FpMatrix::zeros(&f(5), 3, 3).kernel_basis().len(), 3);
        let m = FpMatrix::from_rows(&f(2), &[vec![1, 1]]);
        assert_eq!(m.kernel_basis(), vec![vec![1, 1]]);
    }

    #[test]
    fn determinant_and_inverse() {
        let m = FpMatrix::from_rows(&f(5), &[vec![0, 1], vec![1, 0]]);
        assert_eq!(m.determinant(), 4);
        let a = FpMatrix::from_rows(&f(7), &[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), FpMatrix::identity(&f(7), 3));
        assert!(FpMatrix::from_rows(&f(5), &[vec![1, 2], vec![2, 4]]).inverse().is_none());
    }
}
