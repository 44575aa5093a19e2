use crate::{Error, Result};

/// Square band matrix with `lower` sub-diagonals and `upper` super-diagonals.
#[derive(Debug, Clone, PartialEq)]
pub struct BandMatrix {
    n: usize,
    lower: usize,
    upper: usize,
    // row-major, each row holds columns i-lower ..= i+upper
    data: Vec<f64>,
}

impl BandMatrix {
    pub fn zeros(n: usize, lower: usize, upper: usize) -> Self {
        Self { n, lower, upper, data: vec![0.0; n * (lower + upper + 1)] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, 0, 0);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn bandwidths(&self) -> (usize, usize) {
        (self.lower, self.upper)
    }

    fn in_band(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.n && j + self.lower >= i && j <= i + self.upper
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        i * (self.lower + self.upper + 1) + (j + self.lower - i)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        if self.in_band(i, j) {
            self.data[self.slot(i, j)]
        } else {
            0.0
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        assert!(self.in_band(i, j), "({i}, {j}) outside band");
        let s = self.slot(i, j);
        self.data[s] = v;
    }

    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        assert!(self.in_band(i, j), "({i}, {j}) outside band");
        let s = self.slot(i, j);
        self.data[s] += v;
    }

    fn cols(&self, i: usize) -> std::ops::Range<usize> {
        i.saturating_sub(self.lower)..(i + self.upper + 1).min(self.n)
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| self.cols(i).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    /// `yᵀ A x`
    pub fn bilinear(&self, y: &[f64], x: &[f64]) -> f64 {
        self.matvec(x).iter().zip(y).map(|(a, b)| a * b).sum()
    }

    /// `self + alpha * other`; the result band covers both operands.
    pub fn add_scaled(&self, alpha: f64, other: &BandMatrix) -> BandMatrix {
        assert_eq!(self.n, other.n);
        let mut out = BandMatrix::zeros(
            self.n,
            self.lower.max(other.lower),
            self.upper.max(other.upper),
        );
        for i in 0..self.n {
            for j in self.cols(i) {
                out.add(i, j, self.get(i, j));
            }
            for j in other.cols(i) {
                out.add(i, j, alpha * other.get(i, j));
            }
        }
        out
    }

    pub fn scaled(&self, alpha: f64) -> BandMatrix {
        let mut out = self.clone();
        out.data.iter_mut().for_each(|v| *v *= alpha);
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Gaussian elimination with partial pivoting inside the band. Fill-in from
/// row swaps widens the upper band to `upper + lower`.
pub fn solve_banded(matrix: &BandMatrix, rhs: &[f64]) -> Result<Vec<f64>> {
    let n = matrix.n;
    if rhs.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: rhs.len() });
    }
    let (kl, ku) = (matrix.lower, matrix.upper);
    let mut work = BandMatrix::zeros(n, kl, ku + kl);
    for i in 0..n {
        for j in matrix.cols(i) {
            work.set(i, j, matrix.get(i, j));
        }
    }
    let mut b = rhs.to_vec();
    let tiny = f64::EPSILON * matrix.max_abs().max(f64::MIN_POSITIVE) * n as f64;

    for k in 0..n {
        let last_row = (k + kl).min(n - 1);
        let pivot_row = (k..=last_row)
            .max_by(|&a, &c| work.get(a, k).abs().total_cmp(&work.get(c, k).abs()))
            .unwrap();
        let pivot = work.get(pivot_row, k);
        if pivot.abs() <= tiny {
            return Err(Error::SingularMatrix { row: k, pivot });
        }
        let last_col = (k + ku + kl).min(n - 1);
        if pivot_row != k {
            for j in k..=last_col {
                let a = work.get(k, j);
                let c = work.get(pivot_row, j);
                work.set(k, j, c);
                work.set(pivot_row, j, a);
            }
            b.swap(k, pivot_row);
        }
        for i in (k + 1)..=last_row {
            let factor = work.get(i, k) / pivot;
            if factor == 0.0 {
                continue;
            }
            work.set(i, k, 0.0);
            for j in (k + 1)..=last_col {
                let v = work.get(i, j) - factor * work.get(k, j);
                work.set(i, j, v);
            }
            b[i] -= factor * b[k];
        }
    }

    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let last_col = (i + ku + kl).min(n - 1);
        let s: f64 = ((i + 1)..=last_col).map(|j| work.get(i, j) * x[j]).sum();
        x[i] = (b[i] - s) / work.get(i, i);
    }
    Ok(x)
}
