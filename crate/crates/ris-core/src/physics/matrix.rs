//! Dense complex linear algebra: row-major storage, LU factorization with
//! partial pivoting, and multi-right-hand-side solves. Sized for interaction
//! matrices of a few hundred dipoles, so everything is unblocked.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), rows * cols);
        CMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    /// Max entry-wise |a(i,j) − aᵀ(i,j)|.
    pub fn asymmetry(&self) -> f64 {
        assert_eq!(self.rows, self.cols);
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                let d = (self.get(i, j) - self.get(j, i)).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// y = A·x.
    pub fn mat_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }
}

/// LU factorization with partial pivoting of a square matrix.
#[derive(Debug, Clone)]
pub struct LuFactors {
    n: usize,
    /// Combined L (unit lower, strict part) and U (upper) factors, row-major.
    lu: Vec<Complex64>,
    /// Row swapped with row `k` at elimination step `k`.
    pivots: Vec<usize>,
}

impl LuFactors {
    /// Factorizes `a` in place. Fails on an exactly zero pivot column.
    pub fn factor(a: CMatrix) -> Result<Self> {
        assert_eq!(a.rows, a.cols, "LU requires a square matrix");
        let n = a.rows;
        let mut lu = a.data;
        let mut pivots = vec![0usize; n];

        for k in 0..n {
            // Partial pivot: largest magnitude in column k at or below the diagonal.
            let mut p = k;
            let mut best = lu[k * n + k].norm_sqr();
            for i in (k + 1)..n {
                let mag = lu[i * n + k].norm_sqr();
                if mag > best {
                    best = mag;
                    p = i;
                }
            }
            if best == 0.0 {
                return Err(Error::numerical(format!("singular matrix: zero pivot at column {k}")));
            }
            pivots[k] = p;
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
            }

            let pivot = lu[k * n + k];
            let inv_pivot = pivot.inv();
            for i in (k + 1)..n {
                let factor = lu[i * n + k] * inv_pivot;
                lu[i * n + k] = factor;
                if factor != Complex64::new(0.0, 0.0) {
                    let (head, tail) = lu.split_at_mut(i * n);
                    let pivot_row = &head[k * n + k + 1..k * n + n];
                    let target_row = &mut tail[k + 1..n];
                    for (t, &s) in target_row.iter_mut().zip(pivot_row) {
                        *t -= factor * s;
                    }
                }
            }
        }

        Ok(LuFactors { n, lu, pivots })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Solves A·x = b in place for a single right-hand side.
    pub fn solve_in_place(&self, b: &mut [Complex64]) {
        assert_eq!(b.len(), self.n);
        self.solve_multi(b, 1);
    }

    /// Solves A·X = B in place, `B` row-major n×k.
    pub fn solve_multi(&self, b: &mut [Complex64], k: usize) {
        let n = self.n;
        assert_eq!(b.len(), n * k);

        for row in 0..n {
            let p = self.pivots[row];
            if p != row {
                for c in 0..k {
                    b.swap(row * k + c, p * k + c);
                }
            }
        }

        // Forward: L·Y = P·B with unit diagonal.
        for i in 1..n {
            let (solved, current) = b.split_at_mut(i * k);
            let row = &mut current[..k];
            for j in 0..i {
                let l = self.lu[i * n + j];
                if l != Complex64::new(0.0, 0.0) {
                    let yj = &solved[j * k..(j + 1) * k];
                    for (r, &y) in row.iter_mut().zip(yj) {
                        *r -= l * y;
                    }
                }
            }
        }

        // Backward: U·X = Y.
        for i in (0..n).rev() {
            let (head, current_and_tail) = b.split_at_mut(i * k);
            let _ = head;
            let (row, solved_below) = current_and_tail.split_at_mut(k);
            for j in (i + 1)..n {
                let u = self.lu[i * n + j];
                if u != Complex64::new(0.0, 0.0) {
                    let xj = &solved_below[(j - i - 1) * k..(j - i) * k];
                    for (r, &x) in row.iter_mut().zip(xj) {
                        *r -= u * x;
                    }
                }
            }
            let inv_diag = self.lu[i * n + i].inv();
            for r in row.iter_mut() {
                *r *= inv_diag;
            }
        }
    }

    /// A⁻¹·e_col: one column of the inverse.
    pub fn solve_unit(&self, col: usize) -> Vec<Complex64> {
        let mut b = vec![Complex64::new(0.0, 0.0); self.n];
        b[col] = Complex64::new(1.0, 0.0);
        self.solve_in_place(&mut b);
        b
    }
}
