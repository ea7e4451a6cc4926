//! Row-major dense matrices and the small set of kernels the training
//! core needs. Weight matrices are stored `in_dim x out_dim`, activations
//! travel as plain slices through [`vecmat`]/[`vecmat_t`]/[`add_outer`].

use crate::{Error, Real, Result};
use serde::{Deserialize, Serialize};

/// Dense row-major matrix of [`Real`] values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Real>,
}

/// Elementwise and row-wise nonlinearities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Activation {
    /// Softmax over each row, with max-subtraction for overflow safety.
    SoftmaxRows,
    Tanh,
    Sigmoid,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Real>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimMismatch {
                op: "from_vec",
                a_rows: rows,
                a_cols: cols,
                b_rows: 1,
                b_cols: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<Real>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Empty("from_rows"));
        }
        let cols = rows[0].len();
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimMismatch {
                    op: "from_rows",
                    a_rows: 1,
                    a_cols: cols,
                    b_rows: 1,
                    b_cols: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> Real {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Real) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Real] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Real] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[Real] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Real] {
        &mut self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Standard matrix product.
    pub fn matmul(&self, b: &Matrix) -> Result<Matrix> {
        if self.cols != b.rows {
            return Err(Error::DimMismatch {
                op: "matmul",
                a_rows: self.rows,
                a_cols: self.cols,
                b_rows: b.rows,
                b_cols: b.cols,
            });
        }
        let mut out = Matrix::zeros(self.rows, b.cols);
        for i in 0..self.rows {
            let a_row = self.row(i);
            let out_row = &mut out.data[i * b.cols..(i + 1) * b.cols];
            for (k, &a_ik) in a_row.iter().enumerate() {
                if a_ik == 0.0 {
                    continue;
                }
                let b_row = b.row(k);
                for (o, &b_kj) in out_row.iter_mut().zip(b_row) {
                    *o += a_ik * b_kj;
                }
            }
        }
        if !out.is_finite() {
            return Err(Error::NonFinite("matmul"));
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        out
    }

    /// Applies the activation, returning a fresh matrix.
    pub fn activate(&self, kind: Activation) -> Result<Matrix> {
        if self.data.is_empty() {
            return Err(Error::Empty("activate"));
        }
        let mut out = self.clone();
        match kind {
            Activation::Tanh => {
                for v in &mut out.data {
                    *v = v.tanh();
                }
            }
            Activation::Sigmoid => {
                for v in &mut out.data {
                    *v = sigmoid(*v);
                }
            }
            Activation::SoftmaxRows => {
                for r in 0..out.rows {
                    softmax_in_place(out.row_mut(r));
                }
            }
        }
        if !out.is_finite() {
            return Err(Error::NonFinite("activate"));
        }
        Ok(out)
    }

    pub fn add_assign(&mut self, other: &Matrix) -> Result<()> {
        self.zip_assign(other, "add", |a, b| a + b)
    }

    pub fn scale_assign(&mut self, s: Real) {
        for v in &mut self.data {
            *v *= s;
        }
    }

    pub fn fill(&mut self, v: Real) {
        self.data.fill(v);
    }

    /// Sum of squares of all entries.
    pub fn sq_norm(&self) -> Real {
        self.data.iter().map(|v| v * v).sum()
    }

    fn zip_assign(
        &mut self,
        other: &Matrix,
        op: &'static str,
        f: impl Fn(Real, Real) -> Real,
    ) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::DimMismatch {
                op,
                a_rows: self.rows,
                a_cols: self.cols,
                b_rows: other.rows,
                b_cols: other.cols,
            });
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a = f(*a, *b);
        }
        Ok(())
    }
}

pub fn sigmoid(x: Real) -> Real {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// Softmax over a slice, max-subtracted. Entries end up strictly positive
/// and sum to 1 within 1e-12 (f64 build).
pub fn softmax_in_place(row: &mut [Real]) {
    let max = row.iter().cloned().fold(Real::NEG_INFINITY, Real::max);
    let mut sum = 0.0;
    for v in row.iter_mut() {
        *v = (*v - max).exp();
        sum += *v;
    }
    for v in row.iter_mut() {
        *v /= sum;
    }
}

/// Dot product of two equally sized slices.
pub fn dot(a: &[Real], b: &[Real]) -> Real {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Row vector times matrix: `y = x . W` with `W: len(x) x n`.
pub fn vecmat(x: &[Real], w: &Matrix) -> Vec<Real> {
    assert_eq!(x.len(), w.rows(), "vecmat: vector/matrix mismatch");
    let mut y = vec![0.0; w.cols()];
    for (k, &xk) in x.iter().enumerate() {
        if xk == 0.0 {
            continue;
        }
        for (o, &wkj) in y.iter_mut().zip(w.row(k)) {
            *o += xk * wkj;
        }
    }
    y
}

/// Row vector times transposed matrix: `x = y . W^T` with `W: m x len(y)`.
/// This is the backward companion of [`vecmat`].
pub fn vecmat_t(y: &[Real], w: &Matrix) -> Vec<Real> {
    assert_eq!(y.len(), w.cols(), "vecmat_t: vector/matrix mismatch");
    (0..w.rows()).map(|k| dot(w.row(k), y)).collect()
}

/// Accumulates the outer product `x^T . y` into `g` (`g: len(x) x len(y)`).
pub fn add_outer(g: &mut Matrix, x: &[Real], y: &[Real]) {
    assert_eq!(g.rows(), x.len(), "add_outer: row mismatch");
    assert_eq!(g.cols(), y.len(), "add_outer: col mismatch");
    for (k, &xk) in x.iter().enumerate() {
        if xk == 0.0 {
            continue;
        }
        for (o, &yj) in g.row_mut(k).iter_mut().zip(y) {
            *o += xk * yj;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Real, b: Real, tol: Real) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn matmul_identity() {
        let a = Matrix::from_vec(2, 2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let i = Matrix::identity(2);
        assert_eq!(i.matmul(&a).unwrap(), a);
    }

    #[test]
    fn matmul_orthogonal_selection() {
        let a = Matrix::from_vec(1, 2, vec![1.0, 0.0]).unwrap();
        let b = Matrix::from_vec(2, 1, vec![0.0, 5.0]).unwrap();
        assert_eq!(a.matmul(&b).unwrap().data(), &[0.0]);
    }

    #[test]
    fn matmul_hand_arithmetic() {
        let a = Matrix::from_vec(2, 2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let b = Matrix::from_vec(2, 1, vec![5.0, 6.0]).unwrap();
        assert_eq!(a.matmul(&b).unwrap().data(), &[17.0, 39.0]);
    }

    #[test]
    fn matmul_shape_error_names_shapes() {
        let a = Matrix::zeros(2, 3);
        let b = Matrix::zeros(2, 2);
        let err = a.matmul(&b).unwrap_err().to_string();
        assert!(err.contains("2x3") && err.contains("2x2"), "{err}");
    }

    #[test]
    fn softmax_uniform_logits() {
        let m = Matrix::from_vec(1, 3, vec![0.0, 0.0, 0.0]).unwrap();
        let s = m.activate(Activation::SoftmaxRows).unwrap();
        for &v in s.data() {
            assert!(close(v, 1.0 / 3.0, 1e-15));
        }
    }

    #[test]
    fn tanh_and_sigmoid_at_zero() {
        let m = Matrix::from_vec(1, 1, vec![0.0]).unwrap();
        assert_eq!(m.activate(Activation::Tanh).unwrap().data(), &[0.0]);
        assert_eq!(m.activate(Activation::Sigmoid).unwrap().data(), &[0.5]);
    }

    #[test]
    fn activate_empty_is_error() {
        let m = Matrix::zeros(0, 3);
        assert!(m.activate(Activation::Tanh).is_err());
    }

    #[test]
    fn softmax_overflow_safe() {
        let m = Matrix::from_vec(1, 2, vec![1000.0, 1001.0]).unwrap();
        let s = m.activate(Activation::SoftmaxRows).unwrap();
        let sum: Real = s.data().iter().sum();
        assert!(close(sum, 1.0, 1e-12));
        assert!(s.data().iter().all(|&v| v > 0.0));
    }

    #[test]
    fn vecmat_matches_matmul() {
        let w = Matrix::from_vec(3, 2, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        let x = [1.0, -1.0, 2.0];
        let y = vecmat(&x, &w);
        let xm = Matrix::from_vec(1, 3, x.to_vec()).unwrap();
        assert_eq!(y, xm.matmul(&w).unwrap().data());
    }

    #[test]
    fn vecmat_t_matches_transpose() {
        let w = Matrix::from_vec(3, 2, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        let y = [0.5, -2.0];
        let x = vecmat_t(&y, &w);
        let ym = Matrix::from_vec(1, 2, y.to_vec()).unwrap();
        assert_eq!(x, ym.matmul(&w.transpose()).unwrap().data());
    }

    #[test]
    fn outer_product_accumulates() {
        let mut g = Matrix::zeros(2, 3);
        add_outer(&mut g, &[1.0, 2.0], &[1.0, 0.0, -1.0]);
        add_outer(&mut g, &[1.0, 2.0], &[1.0, 0.0, -1.0]);
        assert_eq!(g.data(), &[2.0, 0.0, -2.0, 4.0, 0.0, -4.0]);
    }
}
