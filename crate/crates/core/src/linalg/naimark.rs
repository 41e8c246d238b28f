use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{
    classify_operator, default_jacobi_tol, frame_operator, gram, symmetric_eigen, Frame,
    LinalgError, SymmetricMatrix, Tightness,
};

/// Attempts made by [`random_parseval`] before giving up.
pub const MAX_PARSEVAL_RETRIES: usize = 16;

/// Parseval frame of `m` vectors in `R^(m-n)` whose Gram matrix is `I - G`,
/// where `G` is the Gram matrix of the Parseval input.
///
/// The factor `M` with `M^t M = I - G` is fixed as `Λ^{1/2} V^t` over the
/// `m - n` eigenpairs nearest 1, eigenvalues descending and eigenvectors
/// sign-normalized; vector `i` of the result is column `i` of `M`.
pub fn naimark_complement(frame: &Frame<f64>, tol: f64) -> Result<Frame<f64>, LinalgError> {
    let (m, n) = (frame.len(), frame.dim());
    if m <= n {
        return Err(LinalgError::NoComplement(n));
    }
    let s = frame_operator(frame);
    if classify_operator(&s, tol) != Tightness::Parseval {
        return Err(LinalgError::NotParseval(s.max_deviation_from_scaled_identity(&1.0)));
    }
    let g = gram(frame);
    let c = SymmetricMatrix::from_fn(m, |i, j| {
        if i == j {
            1.0 - g.get(i, j)
        } else {
            -g.get(i, j)
        }
    });
    let decomposition = symmetric_eigen(&c, default_jacobi_tol(&c))?;
    let eigenvalues = &decomposition.spectrum.eigenvalues;
    // a projection of rank m - n: eigenvalues cluster at 1 (first m - n) and 0
    for (k, &l) in eigenvalues.iter().enumerate() {
        let target = if k < m - n { 1.0 } else { 0.0 };
        if (l - target).abs() > tol {
            return Err(LinalgError::NotProjection(l));
        }
    }
    let k = m - n;
    let vectors = (0..m)
        .map(|i| {
            (0..k)
                .map(|r| eigenvalues[r].max(0.0).sqrt() * decomposition.eigenvectors[r][i])
                .collect()
        })
        .collect();
    Frame::new(k, vectors)
}

/// Rows of a seeded Gaussian `m × n` matrix with orthonormalized columns.
///
/// The draw is deterministic in `seed`; a rank-deficient draw is retried on
/// the next ChaCha stream.
pub fn random_parseval(m: usize, n: usize, seed: u64) -> Result<Frame<f64>, LinalgError> {
    if n == 0 || m < n {
        return Err(LinalgError::Malformed(format!(
            "random Parseval frame needs m >= n >= 1, got m = {m}, n = {n}"
        )));
    }
    for attempt in 0..MAX_PARSEVAL_RETRIES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(attempt as u64);
        let mut columns: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..m).map(|_| StandardNormal.sample(&mut rng)).collect())
            .collect();
        if orthonormalize(&mut columns) {
            let vectors = (0..m)
                .map(|i| columns.iter().map(|c| c[i]).collect())
                .collect();
            return Frame::new(n, vectors);
        }
    }
    Err(LinalgError::DegenerateDraw(MAX_PARSEVAL_RETRIES))
}

/// Modified Gram-Schmidt with one reorthogonalization pass; false when a
/// column collapses.
fn orthonormalize(columns: &mut [Vec<f64>]) -> bool {
    for j in 0..columns.len() {
        let original = norm(&columns[j]);
        for _pass in 0..2 {
            for k in 0..j {
                let (done, rest) = columns.split_at_mut(j);
                let proj: f64 = done[k].iter().zip(&rest[0]).map(|(a, b)| a * b).sum();
                for (x, q) in rest[0].iter_mut().zip(&done[k]) {
                    *x -= proj * q;
                }
            }
        }
        let len = norm(&columns[j]);
        if !(len > 1e-8 * original.max(1e-300)) {
            return false;
        }
        columns[j].iter_mut().for_each(|x| *x /= len);
    }
    true
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}
