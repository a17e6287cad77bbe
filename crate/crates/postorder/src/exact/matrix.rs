//! Dense row-major matrices over exact scalars. Two concrete types instead
//! of one generic: rational matrices feed the LP layer, Gaussian-rational
//! matrices carry quantum effects; they share shape plumbing but little else.

use super::{ExactError, GaussianRational, Rational};
use num_complex::Complex64;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self, ExactError> {
        if data.len() != rows * cols {
            return Err(ExactError::DataLength {
                rows,
                cols,
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(RationalMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = Rational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Matrix-vector product A·x.
    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>, ExactError> {
        if x.len() != self.cols {
            return Err(ExactError::ShapeMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: x.len(),
                right_cols: 1,
            });
        }
        Ok((0..self.rows).map(|r| super::dot(self.row(r), x)).collect())
    }

    /// Vector-matrix product yᵀ·A.
    pub fn vec_mul(&self, y: &[Rational]) -> Result<Vec<Rational>, ExactError> {
        if y.len() != self.rows {
            return Err(ExactError::ShapeMismatch {
                left_rows: 1,
                left_cols: y.len(),
                right_rows: self.rows,
                right_cols: self.cols,
            });
        }
        let mut out = vec![Rational::zero(); self.cols];
        for (r, yr) in y.iter().enumerate() {
            if yr.is_zero() {
                continue;
            }
            for c in 0..self.cols {
                out[c] += yr * self.get(r, c);
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl GaussianMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<GaussianRational>) -> Result<Self, ExactError> {
        if data.len() != rows * cols {
            return Err(ExactError::DataLength {
                rows,
                cols,
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(GaussianMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        GaussianMatrix {
            rows,
            cols,
            data: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = GaussianRational::one();
        }
        m
    }

    /// Builds from a row-major grid of (re, im) rational pairs.
    pub fn from_entries(entries: &[Vec<GaussianRational>]) -> Result<Self, ExactError> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows * cols);
        for row in entries {
            if row.len() != cols {
                return Err(ExactError::DataLength {
                    rows,
                    cols,
                    expected: rows * cols,
                    found: entries.iter().map(|r| r.len()).sum(),
                });
            }
            data.extend(row.iter().cloned());
        }
        Self::new(rows, cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussianRational {
        &self.data[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut GaussianRational {
        &mut self.data[r * self.cols + c]
    }

    fn check_same_shape(&self, rhs: &Self) -> Result<(), ExactError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(ExactError::ShapeMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: rhs.rows,
                right_cols: rhs.cols,
            });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, ExactError> {
        self.check_same_shape(rhs)?;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        Self::new(self.rows, self.cols, data)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, ExactError> {
        self.check_same_shape(rhs)?;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        Self::new(self.rows, self.cols, data)
    }

    pub fn scale(&self, f: &Rational) -> Self {
        GaussianMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.scale(f)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, ExactError> {
        if self.cols != rhs.rows {
            return Err(ExactError::ShapeMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: rhs.rows,
                right_cols: rhs.cols,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let prod = a * rhs.get(k, c);
                    *out.get_mut(r, c) = &*out.get(r, c) + &prod;
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.get_mut(c, r) = self.get(r, c).conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Result<GaussianRational, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut t = GaussianRational::zero();
        for i in 0..self.rows {
            t = &t + self.get(i, i);
        }
        Ok(t)
    }

    /// Exact Hermiticity check; reports the first offending entry.
    pub fn check_hermitian(&self) -> Result<(), ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        for r in 0..self.rows {
            for c in r..self.cols {
                if *self.get(r, c) != self.get(c, r).conj() {
                    return Err(ExactError::NotHermitian { row: r, col: c });
                }
            }
        }
        Ok(())
    }

    pub fn is_hermitian(&self) -> bool {
        self.check_hermitian().is_ok()
    }

    /// Lossy conversion to a complex float matrix for spectral work.
    pub fn to_complex_float(&self) -> nalgebra::DMatrix<Complex64> {
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |r, c| {
            let e = self.get(r, c);
            Complex64::new(
                super::rational_to_f64(&e.re),
                super::rational_to_f64(&e.im),
            )
        })
    }
}
