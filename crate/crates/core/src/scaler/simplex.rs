//! Dense-tableau simplex with Bland's rule, generic over the scalar field.

use crate::scalar::Scalar;

use super::{ScalerError, SolverOptions};

fn below<T: Scalar>(x: &T, tol: f64) -> bool {
    (-x.clone()).exceeds(tol)
}

/// Rows are `[a_r | rhs_r]`; `cost` holds reduced costs with `-objective`
/// in its last slot. The tableau minimizes.
#[derive(Debug, Clone)]
pub(crate) struct Tableau<T> {
    pub rows: Vec<Vec<T>>,
    pub cost: Vec<T>,
    pub basis: Vec<usize>,
    pub ncols: usize,
}

impl<T: Scalar> Tableau<T> {
    pub fn rhs(&self, r: usize) -> &T {
        &self.rows[r][self.ncols]
    }

    pub fn objective(&self) -> T {
        -self.cost[self.ncols].clone()
    }

    pub fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x = x.clone() / p.clone();
            }
        }
        self.rows[r][c] = T::one();
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut Vec<T>| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
            row[c] = T::zero();
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.cost);
        self.basis[r] = c;
    }

    /// Recomputes reduced costs for cost vector `c` (length `ncols`).
    pub fn set_costs(&mut self, c: &[T]) {
        let mut cost: Vec<T> = c.to_vec();
        cost.push(T::zero());
        for (r, row) in self.rows.iter().enumerate() {
            let cb = c[self.basis[r]].clone();
            if cb.is_zero() {
                continue;
            }
            for (x, y) in cost.iter_mut().zip(row) {
                *x = x.clone() - cb.clone() * y.clone();
            }
        }
        self.cost = cost;
    }

    /// Pivots to optimality over columns with `allowed[j]`.
    pub fn optimize(&mut self, allowed: &[bool], opts: &SolverOptions) -> Result<(), ScalerError> {
        for _ in 0..opts.max_iterations {
            let Some(c) = (0..self.ncols).find(|&j| allowed[j] && below(&self.cost[j], opts.pivot_tol))
            else {
                return Ok(());
            };
            let mut best: Option<(usize, T)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][c];
                if !a.exceeds(opts.pivot_tol) {
                    continue;
                }
                let ratio = self.rhs(r).clone() / a.clone();
                let better = match &best {
                    None => true,
                    Some((b, v)) => {
                        if (ratio.clone() - v.clone()).negligible(opts.pivot_tol) {
                            self.basis[r] < self.basis[*b]
                        } else {
                            ratio < *v
                        }
                    }
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            let Some((r, _)) = best else {
                return Err(ScalerError::Unbounded);
            };
            self.pivot(r, c);
        }
        Err(ScalerError::IterationLimit(opts.max_iterations))
    }

    /// Value of each column in the current basic solution.
    pub fn primal(&self) -> Vec<T> {
        let mut x = vec![T::zero(); self.ncols];
        for (r, &j) in self.basis.iter().enumerate() {
            x[j] = self.rhs(r).clone();
        }
        x
    }
}

/// Outcome of minimizing the sum of artificials for `{A x = b, x >= 0}`.
pub(crate) struct PhaseOne<T> {
    /// Final tableau; `None` when a zero row settled infeasibility.
    pub tableau: Option<Tableau<T>>,
    pub value: T,
    /// Dual multipliers per original row, with `A^t y <= 0` and
    /// `b^t y = value` at optimality.
    pub duals: Vec<T>,
}

pub(crate) fn phase_one<T: Scalar>(
    a: &[Vec<T>],
    b: &[T],
    opts: &SolverOptions,
) -> Result<PhaseOne<T>, ScalerError> {
    let cols = a.first().map_or(0, Vec::len);
    let mut row_map = Vec::new();
    for (r, row) in a.iter().enumerate() {
        if row.iter().all(|x| x.negligible(opts.pivot_tol)) {
            if b[r].negligible(opts.feas_tol) {
                continue;
            }
            let mut duals = vec![T::zero(); a.len()];
            duals[r] = if below(&b[r], 0.0) { -T::one() } else { T::one() };
            return Ok(PhaseOne {
                tableau: None,
                value: b[r].abs(),
                duals,
            });
        }
        row_map.push(r);
    }
    let k = row_map.len();
    let ncols = cols + k;
    let signs: Vec<T> = row_map
        .iter()
        .map(|&r| if below(&b[r], 0.0) { -T::one() } else { T::one() })
        .collect();
    let rows: Vec<Vec<T>> = row_map
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            let mut row: Vec<T> = a[r].iter().map(|x| signs[i].clone() * x.clone()).collect();
            row.extend((0..k).map(|j| if j == i { T::one() } else { T::zero() }));
            row.push(signs[i].clone() * b[r].clone());
            row
        })
        .collect();
    let mut t = Tableau {
        rows,
        cost: Vec::new(),
        basis: (cols..ncols).collect(),
        ncols,
    };
    let costs: Vec<T> = (0..ncols)
        .map(|j| if j < cols { T::zero() } else { T::one() })
        .collect();
    t.set_costs(&costs);
    t.optimize(&vec![true; ncols], opts)?;
    let mut duals = vec![T::zero(); a.len()];
    for (i, &r) in row_map.iter().enumerate() {
        // reduced cost of artificial i is 1 - y'_i
        let y = T::one() - t.cost[cols + i].clone();
        duals[r] = signs[i].clone() * y;
    }
    Ok(PhaseOne {
        value: t.objective(),
        tableau: Some(t),
        duals,
    })
}

/// Pivots zero-level artificials out of the basis and deletes rows that
/// turn out to be redundant.
pub(crate) fn expel_artificials<T: Scalar>(t: &mut Tableau<T>, structural: usize, opts: &SolverOptions) {
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] < structural {
            r += 1;
            continue;
        }
        let entering = (0..structural)
            .filter(|&j| !t.rows[r][j].negligible(opts.pivot_tol))
            .fold(None, |best: Option<usize>, j| match best {
                Some(b) if t.rows[r][b].abs() >= t.rows[r][j].abs() => Some(b),
                _ => Some(j),
            });
        match entering {
            Some(j) => {
                t.pivot(r, j);
                r += 1;
            }
            None => {
                t.rows.remove(r);
                t.basis.remove(r);
            }
        }
    }
}
