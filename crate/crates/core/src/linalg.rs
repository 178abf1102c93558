//! Dense matrices over F_q: elimination, rank, kernels and linear solves.
//!
//! Binary matrices are the `s = 1` case and use the same type.

use crate::error::{GqError, Result};
use crate::gf2e::Field;

#[derive(Clone, PartialEq, Eq)]
pub struct FqMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl std::fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "FqMatrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl FqMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> FqMatrix {
        FqMatrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> FqMatrix {
        let mut m = FqMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from row vectors, all of length `cols`.
    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<u32>]) -> Result<FqMatrix> {
        let mut m = FqMatrix::zeros(field, 0, cols);
        for r in rows {
            m.push_row(r)?;
        }
        Ok(m)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [u32] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn push_row(&mut self, row: &[u32]) -> Result<()> {
        if row.len() != self.cols {
            return Err(GqError::DimensionMismatch(format!(
                "row of length {} in a matrix with {} columns",
                row.len(),
                self.cols
            )));
        }
        for &x in row {
            self.field.check(x)?;
        }
        self.data.extend_from_slice(row);
        self.rows += 1;
        Ok(())
    }

    pub fn remove_row(&mut self, r: usize) -> Vec<u32> {
        let out: Vec<u32> = self.row(r).to_vec();
        self.data.drain(r * self.cols..(r + 1) * self.cols);
        self.rows -= 1;
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn scale_row(&mut self, r: usize, mu: u32) {
        let f = self.field.clone();
        for x in self.row_mut(r) {
            *x = f.mul(*x, mu);
        }
    }

    /// `row[dst] += mu * row[src]`.
    pub fn add_scaled_row(&mut self, src: usize, dst: usize, mu: u32) {
        if mu == 0 {
            return;
        }
        for c in 0..self.cols {
            let v = self.field.mul(mu, self.get(src, c));
            self.data[dst * self.cols + c] ^= v;
        }
    }

    pub fn transpose(&self) -> FqMatrix {
        let mut t = FqMatrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &FqMatrix) -> Result<FqMatrix> {
        if self.cols != other.rows {
            return Err(GqError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = FqMatrix::zeros(&self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = self.field.mul(a, other.get(k, c));
                    out.data[r * other.cols + c] ^= v;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(GqError::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows).map(|r| self.field.dot(self.row(r), v)).collect())
    }

    /// `v^T M`: the combination `sum_j v_j row_j`.
    pub fn combine_rows(&self, coeffs: &[u32]) -> Result<Vec<u32>> {
        if coeffs.len() != self.rows {
            return Err(GqError::DimensionMismatch(format!(
                "{} coefficients for {} rows",
                coeffs.len(),
                self.rows
            )));
        }
        let mut out = vec![0u32; self.cols];
        for (r, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(self.row(r)) {
                *o ^= self.field.mul(c, x);
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Reduced row echelon form in place; pivots are searched only among the
    /// first `pivot_cols` columns (trailing columns ride along). Pivot rows
    /// are normalised to leading coefficient 1. Returns pivot columns and
    /// drops nothing: zero rows end up at the bottom.
    pub fn rref_in_place(&mut self, pivot_cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_cols.min(self.cols) {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.field.inv(self.get(r, c)).expect("pivot is nonzero");
            self.scale_row(r, inv);
            for i in 0..self.rows {
                if i != r {
                    let f = self.get(i, c);
                    self.add_scaled_row(r, i, f);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// RREF with zero rows removed.
    pub fn rref(&self) -> (FqMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(m.cols);
        m.truncate_rows(pivots.len());
        (m, pivots)
    }

    pub fn truncate_rows(&mut self, rows: usize) {
        if rows < self.rows {
            self.data.truncate(rows * self.cols);
            self.rows = rows;
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Generator matrix of `{x : M x = 0}`, i.e. the Euclidean dual of the row space.
    pub fn kernel(&self) -> FqMatrix {
        let (r, pivots) = self.rref();
        let mut out = FqMatrix::zeros(&self.field, 0, self.cols);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (i, &p) in pivots.iter().enumerate() {
                // char 2: -x = x
                v[p] = r.get(i, free);
            }
            out.data.extend_from_slice(&v);
            out.rows += 1;
        }
        out
    }

    /// Some `x` with `M x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>> {
        if b.len() != self.rows {
            return Err(GqError::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug = FqMatrix::zeros(&self.field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            aug.row_mut(r)[..self.cols].copy_from_slice(self.row(r));
            aug.set(r, self.cols, b[r]);
        }
        let pivots = aug.rref_in_place(self.cols);
        for r in pivots.len()..self.rows {
            if aug.get(r, self.cols) != 0 {
                return Ok(None);
            }
        }
        let mut x = vec![0u32; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(i, self.cols);
        }
        Ok(Some(x))
    }

    /// Coefficients `c` with `sum_j c_j row_j = target`, if `target` is in the row space.
    pub fn row_space_coefficients(&self, target: &[u32]) -> Result<Option<Vec<u32>>> {
        self.transpose().solve(target)
    }

    pub fn contains_in_row_space(&self, v: &[u32]) -> Result<bool> {
        Ok(self.row_space_coefficients(v)?.is_some())
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<FqMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = FqMatrix::zeros(&self.field, n, 2 * n);
        for r in 0..n {
            aug.row_mut(r)[..n].copy_from_slice(self.row(r));
            aug.set(r, n + r, 1);
        }
        let pivots = aug.rref_in_place(n);
        if pivots.len() < n {
            return None;
        }
        let mut out = FqMatrix::zeros(&self.field, n, n);
        for r in 0..n {
            out.row_mut(r).copy_from_slice(&aug.row(r)[n..]);
        }
        Some(out)
    }

    pub fn vstack(&self, other: &FqMatrix) -> Result<FqMatrix> {
        if self.cols != other.cols {
            return Err(GqError::DimensionMismatch("vstack column mismatch".into()));
        }
        let mut m = self.clone();
        m.data.extend_from_slice(&other.data);
        m.rows += other.rows;
        Ok(m)
    }

    /// True when both matrices span the same row space.
    pub fn same_row_space(&self, other: &FqMatrix) -> Result<bool> {
        let r1 = self.rank();
        let r2 = other.rank();
        Ok(r1 == r2 && self.vstack(other)?.rank() == r1)
    }
}

/// Hamming weight of an F_q vector.
pub fn weight(v: &[u32]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

/// Pre-reduced row space used for repeated membership tests.
#[derive(Clone, Debug)]
pub struct RowSpaceReducer {
    basis: FqMatrix,
    pivots: Vec<usize>,
}

impl RowSpaceReducer {
    pub fn new(m: &FqMatrix) -> RowSpaceReducer {
        let (basis, pivots) = m.rref();
        RowSpaceReducer { basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let f = self.basis.field();
        let mut w = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = w[p];
            if c == 0 {
                continue;
            }
            for (x, &b) in w.iter_mut().zip(self.basis.row(i)) {
                *x ^= f.mul(c, b);
            }
        }
        w.iter().all(|&x| x == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Field {
        Field::from_modulus(0b111).unwrap()
    }

    #[test]
    fn rank_and_kernel() {
        let f = f4();
        let m = FqMatrix::from_rows(&f, 3, &[vec![1, 1, 1], vec![0, 1, 2]]).unwrap();
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.rows(), 1);
        let prod = m.mul(&k.transpose()).unwrap();
        assert!(prod.is_zero());
    }

    #[test]
    fn kernel_of_full_space_is_empty() {
        let f = f4();
        let k = FqMatrix::identity(&f, 4).kernel();
        assert_eq!(k.rows(), 0);
        assert_eq!(k.cols(), 4);
    }

    #[test]
    fn double_kernel_spans_original() {
        let f = Field::with_degree(3).unwrap();
        let m = FqMatrix::from_rows(&f, 5, &[vec![1, 2, 3, 4, 5], vec![7, 0, 1, 1, 2]]).unwrap();
        assert!(m.kernel().kernel().same_row_space(&m).unwrap());
    }

    #[test]
    fn solve_and_inverse() {
        let f = f4();
        let m = FqMatrix::from_rows(&f, 2, &[vec![1, 2], vec![2, 1]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), FqMatrix::identity(&f, 2));
        let x = m.solve(&[1, 0]).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), vec![1, 0]);
        let sing = FqMatrix::from_rows(&f, 2, &[vec![1, 2], vec![2, 3]]).unwrap();
        assert!(sing.inverse().is_none());
        assert!(sing.solve(&[1, 0]).unwrap().is_none());
    }

    #[test]
    fn row_space_coefficients_reconstruct() {
        let f = f4();
        let m = FqMatrix::from_rows(&f, 3, &[vec![1, 0, 2], vec![0, 1, 3]]).unwrap();
        let target = m.combine_rows(&[2, 3]).unwrap();
        assert_eq!(m.row_space_coefficients(&target).unwrap(), Some(vec![2, 3]));
        assert!(!m.contains_in_row_space(&[0, 0, 1]).unwrap());
        let red = RowSpaceReducer::new(&m);
        assert!(red.contains(&target));
        assert!(!red.contains(&[0, 0, 1]));
    }

    #[test]
    fn push_row_checks_shape_and_range() {
        let f = f4();
        let mut m = FqMatrix::zeros(&f, 0, 2);
        assert!(m.push_row(&[1]).is_err());
        assert!(m.push_row(&[1, 4]).is_err());
        assert!(m.push_row(&[1, 3]).is_ok());
    }
}
