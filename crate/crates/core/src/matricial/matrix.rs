use std::ops::Mul;

use num_traits::Zero;

use crate::lpa::Coeff;

/// Dense row-major matrix of exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Coeff>,
}

impl CoeffMatrix {
    pub fn zeros(rows: usize, cols: usize) -> CoeffMatrix {
        CoeffMatrix {
            rows,
            cols,
            data: vec![Coeff::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> CoeffMatrix {
        let mut m = CoeffMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Coeff::from_int(1));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Coeff {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, c: Coeff) {
        self.data[i * self.cols + j] = c;
    }

    pub fn add_to(&mut self, i: usize, j: usize, c: &Coeff) {
        self.data[i * self.cols + j] += c;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Row-major iteration over `(i, j, entry)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Coeff)> {
        let cols = self.cols.max(1);
        self.data
            .iter()
            .enumerate()
            .map(move |(k, c)| (k / cols, k % cols, c))
    }

    pub fn row(&self, i: usize) -> &[Coeff] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// `None` on a dimension mismatch.
    pub fn checked_mul(&self, other: &CoeffMatrix) -> Option<CoeffMatrix> {
        if self.cols != other.rows {
            return None;
        }
        let mut out = CoeffMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, &(a * b));
                    }
                }
            }
        }
        Some(out)
    }
}

impl Mul for &CoeffMatrix {
    type Output = CoeffMatrix;
    fn mul(self, rhs: &CoeffMatrix) -> CoeffMatrix {
        self.checked_mul(rhs).expect("matrix dimensions agree")
    }
}
