//! Dense linear algebra on frames: Gram and frame operators, the Jacobi
//! eigensolver, Parseval/tight classification, scaling and the Naimark
//! complement.

mod eigen;
mod frame;
mod matrix;
mod naimark;

use serde::Serialize;
use thiserror::Error;

pub use eigen::{
    default_jacobi_tol, symmetric_eigen, symmetric_eigen_with, symmetric_eigs,
    EigenDecomposition, JacobiOptions, Spectrum, DEFAULT_MAX_SWEEPS,
};
pub use frame::{AnyFrame, Frame, ScalarMode};
pub use matrix::SymmetricMatrix;
pub use naimark::{naimark_complement, random_parseval, MAX_PARSEVAL_RETRIES};

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("malformed frame: {0}")]
    Malformed(String),
    #[error("vector {index} has length {found}, expected {expected}")]
    DimensionMismatch {
        expected: usize,
        found: usize,
        index: usize,
    },
    #[error("vector index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (max off-diagonal {achieved_offdiag:e})")]
    NotConverged { sweeps: usize, achieved_offdiag: f64 },
    #[error("{0} is not available in exact mode")]
    ExactUnsupported(&'static str),
    #[error("{0} needs exact input")]
    IrrationalInput(&'static str),
    #[error("frame is not tight")]
    NotTight,
    #[error("frame is not Parseval (max |S - I| = {0:e})")]
    NotParseval(f64),
    #[error("complement needs more vectors than the dimension (m = n = {0})")]
    NoComplement(usize),
    #[error("I - G has eigenvalue {0} away from {{0, 1}}")]
    NotProjection(f64),
    #[error("negative weight {value} at index {index}")]
    NegativeWeight { index: usize, value: f64 },
    #[error("expected {expected} weights, got {found}")]
    WeightCount { expected: usize, found: usize },
    #[error("square root of {0} is not representable exactly alongside the frame entries")]
    Unrepresentable(String),
    #[error("could not draw a full-rank Gaussian matrix after {0} attempts")]
    DegenerateDraw(usize),
}

/// Gram matrix `G = F F^t`, entry `(i, j) = <f_i, f_j>` (order m).
pub fn gram<T: Scalar>(frame: &Frame<T>) -> SymmetricMatrix<T> {
    SymmetricMatrix::from_fn(frame.len(), |i, j| frame.inner(i, j))
}

/// Frame operator `S = sum_i f_i f_i^t` (order n).
pub fn frame_operator<T: Scalar>(frame: &Frame<T>) -> SymmetricMatrix<T> {
    weighted_frame_operator(frame, None)
}

/// `sum_i w_i f_i f_i^t`, or the plain frame operator when `weights` is `None`.
pub fn weighted_frame_operator<T: Scalar>(
    frame: &Frame<T>,
    weights: Option<&[T]>,
) -> SymmetricMatrix<T> {
    let n = frame.dim();
    let mut s = SymmetricMatrix::<T>::zeros(n);
    for (i, f) in frame.vectors().iter().enumerate() {
        let w = weights.map(|w| &w[i]);
        if matches!(w, Some(w) if w.is_zero()) {
            continue;
        }
        for p in 0..n {
            if f[p].is_zero() {
                continue;
            }
            for q in p..n {
                if f[q].is_zero() {
                    continue;
                }
                let mut term = f[p].clone() * f[q].clone();
                if let Some(w) = w {
                    term = term * w.clone();
                }
                let cur = s.get(p, q).clone();
                s.set(p, q, cur + term);
            }
        }
    }
    s
}

/// Number of eigenvalues above `rank_tol`; the default threshold is
/// `order · ε · max|entry|`.
pub fn rank(a: &SymmetricMatrix<f64>, rank_tol: Option<f64>) -> Result<usize, LinalgError> {
    let tol = rank_tol
        .unwrap_or_else(|| a.order() as f64 * f64::EPSILON * a.max_abs_entry());
    let spectrum = symmetric_eigs(a, default_jacobi_tol(a))?;
    Ok(spectrum.rank(tol))
}

/// Row rank by Gaussian elimination; exact for exact scalars, pivots below
/// `tol` are treated as zero for floats.
pub fn elimination_rank<T: Scalar>(rows: &[Vec<T>], tol: f64) -> usize {
    let mut a: Vec<Vec<T>> = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let pivot = (rank..a.len())
            .filter(|&r| !a[r][c].negligible(tol))
            .max_by(|&x, &y| {
                a[x][c]
                    .abs()
                    .partial_cmp(&a[y][c].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            });
        let Some(p) = pivot else { continue };
        a.swap(rank, p);
        let head = a[rank][c].clone();
        for r in rank + 1..a.len() {
            if a[r][c].is_zero() {
                continue;
            }
            let factor = a[r][c].clone() / head.clone();
            for k in c..cols {
                let v = a[r][k].clone() - factor.clone() * a[rank][k].clone();
                a[r][k] = v;
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

/// True iff the vectors span `R^n`. Floats: the smallest eigenvalue of the
/// frame operator exceeds `tol`. Exact: elimination rank equals `n`.
pub fn is_frame<T: Scalar>(frame: &Frame<T>, tol: f64) -> bool {
    if frame.len() < frame.dim() {
        return false;
    }
    if T::EXACT {
        return elimination_rank(frame.vectors(), 0.0) == frame.dim();
    }
    let s = frame_operator(&frame.to_f64());
    match symmetric_eigs(&s, default_jacobi_tol(&s)) {
        Ok(spectrum) => spectrum.min() > tol,
        Err(_) => false,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", content = "bound", rename_all = "snake_case")]
pub enum Tightness<T> {
    NotTight,
    Tight(T),
    Parseval,
}

impl<T> Tightness<T> {
    pub fn is_parseval(&self) -> bool {
        matches!(self, Tightness::Parseval)
    }
}

/// Classifies a frame operator: Parseval when `S ≈ I`, `A`-tight when
/// `S ≈ A·I` with `A = trace(S)/n > 0`.
pub fn classify_operator<T: Scalar>(s: &SymmetricMatrix<T>, tol: f64) -> Tightness<T> {
    if s.is_scaled_identity(&T::one(), tol) {
        return Tightness::Parseval;
    }
    let a = s.trace() / T::from_i64(s.order() as i64);
    if a.exceeds(tol) && s.is_scaled_identity(&a, tol) {
        Tightness::Tight(a)
    } else {
        Tightness::NotTight
    }
}

pub fn classify_tightness<T: Scalar>(frame: &Frame<T>, tol: f64) -> Tightness<T> {
    classify_operator(&frame_operator(frame), tol)
}

/// Divides every vector of an `A`-tight frame by `√A`.
pub fn normalize_tight<T: Scalar>(frame: &Frame<T>, tol: f64) -> Result<Frame<T>, LinalgError> {
    let bound = match classify_tightness(frame, tol) {
        Tightness::Parseval => return Ok(frame.clone()),
        Tightness::Tight(a) => a,
        Tightness::NotTight => return Err(LinalgError::NotTight),
    };
    let root = bound
        .sqrt()
        .ok_or_else(|| LinalgError::Unrepresentable(bound.to_string()))?;
    let factor = T::one() / root;
    scale_uniform(frame, &factor)
}

fn scale_uniform<T: Scalar>(frame: &Frame<T>, factor: &T) -> Result<Frame<T>, LinalgError> {
    if frame.vectors().iter().flatten().any(|x| !x.compatible(factor)) {
        return Err(LinalgError::Unrepresentable(factor.to_string()));
    }
    let vectors = frame
        .vectors()
        .iter()
        .map(|v| v.iter().map(|x| x.clone() * factor.clone()).collect())
        .collect();
    Frame::new(frame.dim(), vectors)
}

/// `{a_i f_i}` for nonnegative scalings `a_i` (not the squared weights).
pub fn scale_frame<T: Scalar>(frame: &Frame<T>, scalings: &[T]) -> Result<Frame<T>, LinalgError> {
    if scalings.len() != frame.len() {
        return Err(LinalgError::WeightCount {
            expected: frame.len(),
            found: scalings.len(),
        });
    }
    if let Some((index, a)) = scalings.iter().enumerate().find(|(_, a)| **a < T::zero()) {
        return Err(LinalgError::NegativeWeight {
            index,
            value: a.to_f64(),
        });
    }
    let vectors = frame
        .vectors()
        .iter()
        .zip(scalings)
        .map(|(v, a)| {
            v.iter()
                .map(|x| {
                    if x.compatible(a) {
                        Ok(x.clone() * a.clone())
                    } else {
                        Err(LinalgError::Unrepresentable(a.to_string()))
                    }
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Frame::new(frame.dim(), vectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;

    fn ex(s: &str) -> Exact {
        s.parse().unwrap()
    }

    fn m1() -> Frame<f64> {
        Frame::new(
            4,
            vec![
                vec![1.0, 2.0, 0.0, 0.0],
                vec![1.0, -2.0, 0.0, 0.0],
                vec![0.0, 0.0, 1.0, 2.0],
                vec![0.0, 0.0, 1.0, -2.0],
            ],
        )
        .unwrap()
    }

    fn mercedes() -> Frame<f64> {
        let h = 3f64.sqrt() / 2.0;
        Frame::new(2, vec![vec![0.0, 1.0], vec![-h, -0.5], vec![h, -0.5]]).unwrap()
    }

    fn mercedes_exact() -> Frame<Exact> {
        Frame::new(
            2,
            vec![
                vec![ex("0"), ex("1")],
                vec![ex("-sqrt(3)/2"), ex("-1/2")],
                vec![ex("sqrt(3)/2"), ex("-1/2")],
            ],
        )
        .unwrap()
    }

    #[test]
    fn gram_of_m1_has_two_blocks() {
        let g = gram(&m1());
        let expected = [
            [5.0, -3.0, 0.0, 0.0],
            [-3.0, 5.0, 0.0, 0.0],
            [0.0, 0.0, 5.0, -3.0],
            [0.0, 0.0, -3.0, 5.0],
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(*g.get(i, j), expected[i][j]);
            }
        }
        let spectrum = symmetric_eigs(&g, 1e-12).unwrap();
        for (got, want) in spectrum.eigenvalues.iter().zip([8.0, 8.0, 2.0, 2.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn gram_trivial_cases() {
        assert_eq!(gram(&Frame::<f64>::standard_basis(3)), SymmetricMatrix::identity(3));
        let single = Frame::new(2, vec![vec![3.0, 4.0]]).unwrap();
        assert_eq!(*gram(&single).get(0, 0), 25.0);
    }

    #[test]
    fn frame_operator_examples() {
        let s = frame_operator(&m1());
        for (i, d) in [2.0, 8.0, 2.0, 8.0].into_iter().enumerate() {
            assert_eq!(*s.get(i, i), d);
        }
        assert_eq!(s.max_abs_off_diagonal(), 0.0);
        let s = frame_operator(&mercedes());
        assert!(s.max_deviation_from_scaled_identity(&1.5) < 1e-15);
        let s = frame_operator(&mercedes_exact());
        assert!(s.is_scaled_identity(&ex("3/2"), 0.0));
    }

    #[test]
    fn spanning_checks() {
        assert!(is_frame(&m1(), 1e-10));
        let two_in_three = Frame::new(3, vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]).unwrap();
        assert!(!is_frame(&two_in_three, 1e-10));
        let collinear =
            Frame::new(2, vec![vec![1.0, 0.0], vec![1.0, 0.0], vec![2.0, 0.0]]).unwrap();
        assert!(!is_frame(&collinear, 1e-10));
        let exact = Frame::new(2, vec![vec![ex("1"), ex("2")], vec![ex("2"), ex("4")]]).unwrap();
        assert!(!is_frame(&exact, 0.0));
        assert!(is_frame(&mercedes_exact(), 0.0));
    }

    #[test]
    fn tightness_examples() {
        assert_eq!(
            classify_tightness(&Frame::<f64>::standard_basis(4), 1e-10),
            Tightness::Parseval
        );
        match classify_tightness(&mercedes(), 1e-10) {
            Tightness::Tight(a) => assert!((a - 1.5).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
        assert_eq!(classify_tightness(&mercedes_exact(), 0.0), Tightness::Tight(ex("3/2")));
        let m2 = Frame::new(
            4,
            vec![
                vec![1.0, 1.0, 1.0, 1.0],
                vec![-1.0, 1.0, 1.0, 1.0],
                vec![1.0, -1.0, 1.0, 1.0],
                vec![1.0, 1.0, -1.0, 1.0],
            ],
        )
        .unwrap();
        assert_eq!(classify_tightness(&m2, 1e-10), Tightness::NotTight);
    }

    #[test]
    fn normalize_examples() {
        let p = normalize_tight(&mercedes(), 1e-10).unwrap();
        assert!(classify_tightness(&p, 1e-12).is_parseval());
        let scale = (2.0f64 / 3.0).sqrt();
        assert!((p.vector(0)[1] - scale).abs() < 1e-15);

        let e = Frame::<f64>::standard_basis(3);
        assert_eq!(normalize_tight(&e, 1e-10).unwrap(), e);

        let doubled = Frame::new(2, vec![vec![2.0, 0.0], vec![0.0, 2.0]]).unwrap();
        assert_eq!(normalize_tight(&doubled, 1e-10).unwrap(), Frame::standard_basis(2));

        assert!(matches!(normalize_tight(&m1(), 1e-10), Err(LinalgError::NotTight)));

        // √(2/3) is √6/3, which cannot multiply entries in Q(√3)
        assert!(normalize_tight(&mercedes_exact(), 0.0).is_err());
        let doubled = Frame::new(2, vec![vec![ex("2"), ex("0")], vec![ex("0"), ex("2")]]).unwrap();
        assert_eq!(normalize_tight(&doubled, 0.0).unwrap(), Frame::standard_basis(2));
    }

    #[test]
    fn scale_frame_examples() {
        let ones = vec![1.0; 4];
        assert_eq!(scale_frame(&m1(), &ones).unwrap(), m1());
        let a = vec![(2.0f64 / 3.0).sqrt(); 3];
        let scaled = scale_frame(&mercedes(), &a).unwrap();
        assert!(classify_tightness(&scaled, 1e-12).is_parseval());
        let partial = scale_frame(&m1(), &[1.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(partial.vector(2).iter().all(|x| *x == 0.0));
        assert!(partial.vector(3).iter().all(|x| *x == 0.0));
        assert!(matches!(
            scale_frame(&m1(), &[1.0, -1.0, 1.0, 1.0]),
            Err(LinalgError::NegativeWeight { index: 1, .. })
        ));
        assert!(scale_frame(&m1(), &[1.0]).is_err());
    }

    #[test]
    fn exact_rank() {
        let rows = vec![
            vec![ex("1"), ex("2"), ex("3")],
            vec![ex("2"), ex("4"), ex("6")],
            vec![ex("1"), ex("0"), ex("1")],
        ];
        assert_eq!(elimination_rank(&rows, 0.0), 2);
    }

    #[test]
    fn default_rank_threshold() {
        let g = gram(&mercedes());
        assert_eq!(rank(&g, None).unwrap(), 2);
    }
}
