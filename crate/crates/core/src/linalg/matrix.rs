use std::fmt;

use crate::scalar::Scalar;

/// Dense symmetric matrix stored as its upper triangle, row by row.
#[derive(Clone, PartialEq)]
pub struct SymmetricMatrix<T> {
    order: usize,
    upper: Vec<T>,
}

impl<T: Scalar> SymmetricMatrix<T> {
    pub fn zeros(order: usize) -> Self {
        SymmetricMatrix {
            order,
            upper: vec![T::zero(); order * (order + 1) / 2],
        }
    }

    pub fn identity(order: usize) -> Self {
        Self::scaled_identity(order, T::one())
    }

    pub fn scaled_identity(order: usize, value: T) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m.set(i, i, value.clone());
        }
        m
    }

    /// Builds from `f(i, j)` evaluated for `i <= j` only.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut upper = Vec::with_capacity(order * (order + 1) / 2);
        for i in 0..order {
            for j in i..order {
                upper.push(f(i, j));
            }
        }
        SymmetricMatrix { order, upper }
    }

    /// Reads the upper triangle of a square row-major array; the lower
    /// triangle must agree within `tol` (exactly for exact scalars).
    pub fn from_rows(rows: &[Vec<T>], tol: f64) -> Option<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return None;
        }
        for i in 0..order {
            for j in 0..i {
                if !(rows[i][j].clone() - rows[j][i].clone()).negligible(tol) {
                    return None;
                }
            }
        }
        Some(Self::from_fn(order, |i, j| rows[i][j].clone()))
    }

    fn index(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        // offset of row i in packed upper storage
        i * self.order - i * (i + 1) / 2 + j
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.upper[self.index(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        let k = self.index(i, j);
        self.upper[k] = value;
    }

    pub fn trace(&self) -> T {
        (0..self.order).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> SymmetricMatrix<U> {
        SymmetricMatrix {
            order: self.order,
            upper: self.upper.iter().map(f).collect(),
        }
    }

    pub fn to_f64(&self) -> SymmetricMatrix<f64> {
        self.map(|v| v.to_f64())
    }

    pub fn scale(&self, factor: &T) -> Self {
        self.map(|v| v.clone() * factor.clone())
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    /// `x^t A x`.
    pub fn quadratic_form(&self, x: &[T]) -> T {
        let mut total = T::zero();
        for i in 0..self.order {
            if x[i].is_zero() {
                continue;
            }
            for j in i..self.order {
                let term = self.get(i, j).clone() * x[i].clone() * x[j].clone();
                total = if i == j { total + term } else { total + term.clone() + term };
            }
        }
        total
    }

    /// Largest `|A_ij - value·δ_ij|` over all entries, as a float.
    pub fn max_deviation_from_scaled_identity(&self, value: &T) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.order {
            for j in i..self.order {
                let d = if i == j {
                    self.get(i, j).clone() - value.clone()
                } else {
                    self.get(i, j).clone()
                };
                worst = worst.max(d.abs().to_f64());
            }
        }
        worst
    }

    /// Exact (or tolerance) test `A == value·I`.
    pub fn is_scaled_identity(&self, value: &T, tol: f64) -> bool {
        (0..self.order).all(|i| {
            (i..self.order).all(|j| {
                let d = if i == j {
                    self.get(i, j).clone() - value.clone()
                } else {
                    self.get(i, j).clone()
                };
                d.negligible(tol)
            })
        })
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.upper.iter().map(|v| v.abs().to_f64()).fold(0.0, f64::max)
    }

    pub fn max_abs_off_diagonal(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.order {
            for j in i + 1..self.order {
                worst = worst.max(self.get(i, j).abs().to_f64());
            }
        }
        worst
    }
}

impl<T: Scalar> fmt::Debug for SymmetricMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}
