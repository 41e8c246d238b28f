//! Cyclic Jacobi eigensolver for small dense symmetric matrices.

use serde::Serialize;

use super::{LinalgError, SymmetricMatrix};

pub const DEFAULT_MAX_SWEEPS: usize = 100;

/// Eigenvalues in descending order together with the largest off-diagonal
/// magnitude left when the iteration stopped.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub achieved_offdiag: f64,
}

impl Spectrum {
    /// Eigenvalues strictly greater than `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        self.eigenvalues.iter().filter(|&&l| l > tol).count()
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    /// Distinct eigenvalues, merging neighbours closer than `tol`.
    pub fn distinct(&self, tol: f64) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize)> = Vec::new();
        for &l in &self.eigenvalues {
            match out.last_mut() {
                Some((v, k)) if (*v - l).abs() <= tol => *k += 1,
                _ => out.push((l, 1)),
            }
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub spectrum: Spectrum,
    /// `eigenvectors[k]` is a unit eigenvector for `spectrum.eigenvalues[k]`,
    /// sign-normalized so its first non-negligible coordinate is positive.
    pub eigenvectors: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Copy)]
pub struct JacobiOptions {
    /// Stop once every off-diagonal magnitude is below this.
    pub tol: f64,
    pub max_sweeps: usize,
}

impl JacobiOptions {
    pub fn new(tol: f64) -> Self {
        JacobiOptions {
            tol,
            max_sweeps: DEFAULT_MAX_SWEEPS,
        }
    }
}

/// A convergence tolerance scaled to the magnitude of `a`.
pub fn default_jacobi_tol(a: &SymmetricMatrix<f64>) -> f64 {
    1e-13 * a.max_abs_entry().max(1.0)
}

pub fn symmetric_eigs(a: &SymmetricMatrix<f64>, tol: f64) -> Result<Spectrum, LinalgError> {
    symmetric_eigen(a, tol).map(|d| d.spectrum)
}

pub fn symmetric_eigen(
    a: &SymmetricMatrix<f64>,
    tol: f64,
) -> Result<EigenDecomposition, LinalgError> {
    symmetric_eigen_with(a, JacobiOptions::new(tol))
}

pub fn symmetric_eigen_with(
    a: &SymmetricMatrix<f64>,
    opts: JacobiOptions,
) -> Result<EigenDecomposition, LinalgError> {
    if !(opts.tol > 0.0) {
        return Err(LinalgError::InvalidTolerance(opts.tol));
    }
    let n = a.order();
    let mut m = a.rows();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    if m.iter().flatten().any(|x| !x.is_finite()) {
        return Err(LinalgError::NonFinite);
    }

    let threshold = opts.tol / (n * n).max(1) as f64;
    let mut off = max_off_diagonal(&m);
    let mut sweeps = 0;
    while off >= opts.tol {
        if sweeps == opts.max_sweeps {
            return Err(LinalgError::NotConverged {
                sweeps,
                achieved_offdiag: off,
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                if m[p][q].abs() > threshold {
                    rotate(&mut m, &mut v, p, q);
                }
            }
        }
        sweeps += 1;
        off = max_off_diagonal(&m);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[j][j].total_cmp(&m[i][i]));
    let eigenvalues = order.iter().map(|&k| m[k][k]).collect();
    let eigenvectors = order
        .iter()
        .map(|&k| {
            let mut col: Vec<f64> = (0..n).map(|r| v[r][k]).collect();
            if let Some(first) = col.iter().find(|x| x.abs() > 1e-9) {
                if *first < 0.0 {
                    col.iter_mut().for_each(|x| *x = -*x);
                }
            }
            col
        })
        .collect();
    Ok(EigenDecomposition {
        spectrum: Spectrum {
            eigenvalues,
            achieved_offdiag: off,
        },
        eigenvectors,
    })
}

fn max_off_diagonal(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut worst = 0.0f64;
    for p in 0..n {
        for q in p + 1..n {
            worst = worst.max(m[p][q].abs());
        }
    }
    worst
}

/// One Jacobi rotation annihilating `m[p][q]`.
fn rotate(m: &mut [Vec<f64>], v: &mut [Vec<f64>], p: usize, q: usize) {
    let apq = m[p][q];
    let theta = (m[q][q] - m[p][p]) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    m[p][p] -= t * apq;
    m[q][q] += t * apq;
    m[p][q] = 0.0;
    m[q][p] = 0.0;
    for r in 0..m.len() {
        if r == p || r == q {
            continue;
        }
        let arp = m[r][p];
        let arq = m[r][q];
        let new_p = c * arp - s * arq;
        let new_q = s * arp + c * arq;
        m[r][p] = new_p;
        m[p][r] = new_p;
        m[r][q] = new_q;
        m[q][r] = new_q;
    }
    for row in v.iter_mut() {
        let vp = row[p];
        let vq = row[q];
        row[p] = c * vp - s * vq;
        row[q] = s * vp + c * vq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(rows: &[&[f64]]) -> SymmetricMatrix<f64> {
        let rows: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
        SymmetricMatrix::from_rows(&rows, 0.0).unwrap()
    }

    #[test]
    fn two_by_two() {
        let s = symmetric_eigs(&sym(&[&[2.0, 1.0], &[1.0, 2.0]]), 1e-14).unwrap();
        assert!((s.eigenvalues[0] - 3.0).abs() < 1e-14);
        assert!((s.eigenvalues[1] - 1.0).abs() < 1e-14);
        assert!(s.achieved_offdiag < 1e-14);
    }

    #[test]
    fn identity_has_single_eigenvalue() {
        let s = symmetric_eigs(&SymmetricMatrix::identity(5), 1e-12).unwrap();
        assert_eq!(s.eigenvalues, vec![1.0; 5]);
        assert_eq!(s.distinct(1e-12), vec![(1.0, 5)]);
    }

    #[test]
    fn eigenvectors_reconstruct_matrix() {
        let a = sym(&[
            &[4.0, -2.0, 0.5, 0.0],
            &[-2.0, 3.0, 1.0, 0.25],
            &[0.5, 1.0, -1.0, 2.0],
            &[0.0, 0.25, 2.0, 0.0],
        ]);
        let d = symmetric_eigen(&a, 1e-13).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let r: f64 = (0..4)
                    .map(|k| d.spectrum.eigenvalues[k] * d.eigenvectors[k][i] * d.eigenvectors[k][j])
                    .sum();
                assert!((r - a.get(i, j)).abs() < 1e-12);
            }
        }
        let w = &d.spectrum.eigenvalues;
        assert!(w.windows(2).all(|p| p[0] >= p[1]));
    }

    #[test]
    fn sweep_cap_reports_achieved_offdiag() {
        let a = sym(&[&[1.0, 0.5, 0.3], &[0.5, 2.0, 0.1], &[0.3, 0.1, 3.0]]);
        let opts = JacobiOptions {
            tol: 1e-300,
            max_sweeps: 1,
        };
        match symmetric_eigen_with(&a, opts) {
            Err(LinalgError::NotConverged {
                sweeps,
                achieved_offdiag,
            }) => {
                assert_eq!(sweeps, 1);
                assert!(achieved_offdiag < 0.5);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn rejects_nonpositive_tolerance() {
        assert!(symmetric_eigs(&SymmetricMatrix::identity(2), 0.0).is_err());
    }
}
