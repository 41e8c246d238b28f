//! Scaling oracle: with `w_i = a_i^2`, a frame is scalable iff
//! `sum_i w_i f_i f_i^t = I` has a solution `w >= 0`, which is a linear
//! feasibility problem in `w`. Infeasibility comes with a Farkas matrix `Y`
//! satisfying `<f_i, Y f_i> <= 0` for all `i` and `trace(Y) = 1`.

mod simplex;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{classify_operator, weighted_frame_operator, Frame, LinalgError, SymmetricMatrix, Tightness};
use crate::scalar::Scalar;

use simplex::{expel_artificials, phase_one, PhaseOne};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScalerError {
    #[error("simplex hit the iteration limit ({0})")]
    IterationLimit(usize),
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("expected {expected} weights, got {found}")]
    WeightCount { expected: usize, found: usize },
    #[error("matrix order {found} does not match dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Entries at or below this magnitude are never pivots.
    pub pivot_tol: f64,
    /// Phase-one values and residuals up to this are treated as zero.
    pub feas_tol: f64,
    pub max_iterations: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            pivot_tol: 1e-10,
            feas_tol: 1e-8,
            max_iterations: 50_000,
        }
    }
}

impl SolverOptions {
    pub fn with_feas_tol(feas_tol: f64) -> Self {
        SolverOptions {
            feas_tol,
            ..Self::default()
        }
    }
}

/// `A w = b` with one row per upper-triangle entry `(p, q)`, `p <= q`, in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleLP<T> {
    pub dim: usize,
    pub rows: Vec<(usize, usize)>,
    pub a: Vec<Vec<T>>,
    pub b: Vec<T>,
}

impl<T: Scalar> ScaleLP<T> {
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn column_count(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }

    /// Column `i`, the vectorized outer product `f_i f_i^t`.
    pub fn column(&self, i: usize) -> Vec<T> {
        self.a.iter().map(|row| row[i].clone()).collect()
    }

    /// `max_r |(A w - b)_r|`.
    pub fn residual(&self, w: &[T]) -> f64 {
        self.a
            .iter()
            .zip(&self.b)
            .map(|(row, b)| {
                let lhs = row
                    .iter()
                    .zip(w)
                    .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone());
                (lhs - b.clone()).abs().to_f64()
            })
            .fold(0.0, f64::max)
    }

    /// Reassembles row multipliers into a symmetric matrix with
    /// `<f, Y f> = sum_r y_r A_r(f)`, normalized to trace 1.
    fn farkas_matrix(&self, y: &[T]) -> SymmetricMatrix<T> {
        let half = T::one() / T::from_i64(2);
        let mut m = SymmetricMatrix::<T>::zeros(self.dim);
        for (&(p, q), y) in self.rows.iter().zip(y) {
            let v = if p == q { y.clone() } else { y.clone() * half.clone() };
            m.set(p, q, v);
        }
        let trace = m.trace();
        m.scale(&(T::one() / trace))
    }
}

pub fn build_lp<T: Scalar>(frame: &Frame<T>) -> ScaleLP<T> {
    let n = frame.dim();
    let rows: Vec<(usize, usize)> = (0..n).flat_map(|p| (p..n).map(move |q| (p, q))).collect();
    let a = rows
        .iter()
        .map(|&(p, q)| {
            frame
                .vectors()
                .iter()
                .map(|f| f[p].clone() * f[q].clone())
                .collect()
        })
        .collect();
    let b = rows
        .iter()
        .map(|&(p, q)| if p == q { T::one() } else { T::zero() })
        .collect();
    ScaleLP { dim: n, rows, a, b }
}

/// Weights `w >= 0` with `sum_i w_i f_i f_i^t = I` (up to `residual`).
#[derive(Debug, Clone, PartialEq)]
pub struct Feasible<T> {
    pub weights: Vec<T>,
    /// `a_i = sqrt(w_i)` in floating point.
    pub scalings: Vec<f64>,
    /// `a_i` in the input arithmetic, when every square root is
    /// representable there.
    pub exact_scalings: Option<Vec<T>>,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum OracleResult<T: Scalar> {
    Feasible(Feasible<T>),
    Infeasible { farkas: SymmetricMatrix<T> },
    /// Float mode only: the phase-one optimum is too close to zero to decide.
    NumericallyAmbiguous { phase_one_value: f64 },
}

impl<T: Scalar> OracleResult<T> {
    pub fn status(&self) -> &'static str {
        match self {
            OracleResult::Feasible(_) => "feasible",
            OracleResult::Infeasible { .. } => "infeasible",
            OracleResult::NumericallyAmbiguous { .. } => "numerically_ambiguous",
        }
    }

    pub fn weights(&self) -> Option<&[T]> {
        match self {
            OracleResult::Feasible(f) => Some(&f.weights),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StrictResult<T: Scalar> {
    /// `margin = min_i w_i` is positive.
    StrictlyFeasible { weights: Vec<T>, margin: T, residual: f64 },
    /// Scalable, but every solution has a zero weight.
    Boundary { weights: Vec<T>, margin: T, residual: f64 },
    Infeasible { farkas: SymmetricMatrix<T> },
    NumericallyAmbiguous { phase_one_value: f64 },
}

impl<T: Scalar> StrictResult<T> {
    pub fn status(&self) -> &'static str {
        match self {
            StrictResult::StrictlyFeasible { .. } => "strictly_feasible",
            StrictResult::Boundary { .. } => "boundary",
            StrictResult::Infeasible { .. } => "infeasible",
            StrictResult::NumericallyAmbiguous { .. } => "numerically_ambiguous",
        }
    }

    pub fn weights(&self) -> Option<&[T]> {
        match self {
            StrictResult::StrictlyFeasible { weights, .. } | StrictResult::Boundary { weights, .. } => {
                Some(weights)
            }
            _ => None,
        }
    }
}

/// Largest `|entry|` of `A`, used to scale float certificate checks.
fn lp_scale<T: Scalar>(lp: &ScaleLP<T>) -> f64 {
    lp.a.iter()
        .flatten()
        .map(|x| x.abs().to_f64())
        .fold(1.0, f64::max)
}

fn farkas_tol<T: Scalar>(lp: &ScaleLP<T>, opts: &SolverOptions) -> f64 {
    100.0 * opts.feas_tol * lp_scale(lp)
}

/// Classifies a phase-one outcome; `Ok(None)` means "feasible, continue".
fn settle_infeasible<T: Scalar>(
    lp: &ScaleLP<T>,
    p1: &PhaseOne<T>,
    opts: &SolverOptions,
) -> Option<Result<SymmetricMatrix<T>, f64>> {
    let value = p1.value.to_f64();
    if T::EXACT {
        return p1.value.exceeds(0.0).then(|| Ok(lp.farkas_matrix(&p1.duals[..lp.row_count()])));
    }
    if value <= opts.feas_tol {
        return None;
    }
    if value <= 1e3 * opts.feas_tol {
        return Some(Err(value));
    }
    let y = lp.farkas_matrix(&p1.duals[..lp.row_count()]);
    if farkas_holds(lp, &y, farkas_tol(lp, opts)) {
        Some(Ok(y))
    } else {
        Some(Err(value))
    }
}

fn farkas_holds<T: Scalar>(lp: &ScaleLP<T>, y: &SymmetricMatrix<T>, tol: f64) -> bool {
    (0..lp.column_count()).all(|i| {
        // <f_i, Y f_i> from the vectorized outer product
        let col = lp.column(i);
        let q = lp
            .rows
            .iter()
            .zip(&col)
            .fold(T::zero(), |acc, (&(p, r), x)| {
                let k = if p == r { T::one() } else { T::from_i64(2) };
                acc + k * y.get(p, r).clone() * x.clone()
            });
        !q.exceeds(tol)
    }) && !(T::one() - y.trace()).exceeds(tol)
}

fn clamp_weights<T: Scalar>(w: Vec<T>) -> Vec<T> {
    w.into_iter()
        .map(|x| if x < T::zero() { T::zero() } else { x })
        .collect()
}

fn feasible_from<T: Scalar>(lp: &ScaleLP<T>, weights: Vec<T>) -> Feasible<T> {
    let residual = lp.residual(&weights);
    let exact_scalings = if T::EXACT {
        weights.iter().map(Scalar::sqrt).collect()
    } else {
        None
    };
    Feasible {
        scalings: weights.iter().map(|w| w.to_f64().max(0.0).sqrt()).collect(),
        exact_scalings,
        residual,
        weights,
    }
}

/// Decides `{A w = b, w >= 0}` by phase-one simplex.
pub fn solve_scalable<T: Scalar>(lp: &ScaleLP<T>, opts: &SolverOptions) -> Result<OracleResult<T>, ScalerError> {
    let p1 = phase_one(&lp.a, &lp.b, opts)?;
    match settle_infeasible(lp, &p1, opts) {
        Some(Ok(farkas)) => return Ok(OracleResult::Infeasible { farkas }),
        Some(Err(value)) => return Ok(OracleResult::NumericallyAmbiguous { phase_one_value: value }),
        None => {}
    }
    let t = p1.tableau.expect("feasible phase one keeps its tableau");
    let x = t.primal();
    let weights = clamp_weights(x[..lp.column_count()].to_vec());
    let f = feasible_from(lp, weights);
    if !T::EXACT && f.residual > 10.0 * opts.feas_tol {
        return Ok(OracleResult::NumericallyAmbiguous {
            phase_one_value: p1.value.to_f64(),
        });
    }
    Ok(OracleResult::Feasible(f))
}

/// Maximizes `t` over `w_i = t + u_i`, `u >= 0`, `t >= 0`, `A w = b`.
pub fn solve_strict<T: Scalar>(lp: &ScaleLP<T>, opts: &SolverOptions) -> Result<StrictResult<T>, ScalerError> {
    let m = lp.column_count();
    // columns u_1..u_m, then t with column A·1
    let a: Vec<Vec<T>> = lp
        .a
        .iter()
        .map(|row| {
            let mut r = row.clone();
            r.push(row.iter().fold(T::zero(), |acc, x| acc + x.clone()));
            r
        })
        .collect();
    let p1 = phase_one(&a, &lp.b, opts)?;
    match settle_infeasible(lp, &p1, opts) {
        Some(Ok(farkas)) => return Ok(StrictResult::Infeasible { farkas }),
        Some(Err(value)) => return Ok(StrictResult::NumericallyAmbiguous { phase_one_value: value }),
        None => {}
    }
    let mut t = p1.tableau.expect("feasible phase one keeps its tableau");
    expel_artificials(&mut t, m + 1, opts);
    let costs: Vec<T> = (0..t.ncols)
        .map(|j| if j == m { -T::one() } else { T::zero() })
        .collect();
    t.set_costs(&costs);
    let allowed: Vec<bool> = (0..t.ncols).map(|j| j <= m).collect();
    t.optimize(&allowed, opts)?;
    let x = t.primal();
    let level = x[m].clone();
    let weights = clamp_weights(
        x[..m].iter().map(|u| u.clone() + level.clone()).collect(),
    );
    let margin = weights
        .iter()
        .cloned()
        .reduce(|a, b| if b < a { b } else { a })
        .unwrap_or_else(T::zero);
    let residual = lp.residual(&weights);
    if !T::EXACT && residual > 10.0 * opts.feas_tol {
        return Ok(StrictResult::NumericallyAmbiguous {
            phase_one_value: p1.value.to_f64(),
        });
    }
    Ok(if margin.exceeds(opts.feas_tol) {
        StrictResult::StrictlyFeasible { weights, margin, residual }
    } else {
        StrictResult::Boundary { weights, margin, residual }
    })
}

/// Recheck of claimed weights.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightCheck<T> {
    /// `max |sum_i w_i f_i f_i^t - I|`.
    pub residual: f64,
    /// Tightness of the scaled frame `{sqrt(w_i) f_i}`.
    pub tightness: Tightness<T>,
}

pub fn verify_weights<T: Scalar>(frame: &Frame<T>, w: &[T], tol: f64) -> Result<WeightCheck<T>, ScalerError> {
    if w.len() != frame.len() {
        return Err(ScalerError::WeightCount {
            expected: frame.len(),
            found: w.len(),
        });
    }
    if let Some((index, value)) = w.iter().enumerate().find(|(_, x)| **x < T::zero()) {
        return Err(LinalgError::NegativeWeight {
            index,
            value: value.to_f64(),
        }
        .into());
    }
    let s = weighted_frame_operator(frame, Some(w));
    Ok(WeightCheck {
        residual: s.max_deviation_from_scaled_identity(&T::one()),
        tightness: classify_operator(&s, tol),
    })
}

/// Whether `y` proves non-scalability: `<f_i, y f_i> <= tol` for every `i`
/// and `trace(y) >= 1 - tol`.
pub fn verify_farkas<T: Scalar>(frame: &Frame<T>, y: &SymmetricMatrix<T>, tol: f64) -> Result<bool, ScalerError> {
    if y.order() != frame.dim() {
        return Err(ScalerError::DimensionMismatch {
            expected: frame.dim(),
            found: y.order(),
        });
    }
    let forms_ok = frame
        .vectors()
        .iter()
        .all(|f| !y.quadratic_form(f).exceeds(tol));
    Ok(forms_ok && !(T::one() - y.trace()).exceeds(tol))
}
