use serde::Serialize;

use super::LinalgError;
use crate::scalar::{Exact, Scalar};

/// An ordered list of `m` vectors in `R^dim`.
///
/// Vectors are the frame elements themselves, i.e. the rows of the analysis
/// matrix (equivalently the columns of the synthesis matrix).
#[derive(Debug, Clone, PartialEq)]
pub struct Frame<T> {
    dim: usize,
    vectors: Vec<Vec<T>>,
}

impl<T: Scalar> Frame<T> {
    pub fn new(dim: usize, vectors: Vec<Vec<T>>) -> Result<Self, LinalgError> {
        if dim == 0 {
            return Err(LinalgError::Malformed("dimension must be positive".into()));
        }
        if vectors.is_empty() {
            return Err(LinalgError::Malformed("a frame needs at least one vector".into()));
        }
        if let Some((i, v)) = vectors.iter().enumerate().find(|(_, v)| v.len() != dim) {
            return Err(LinalgError::DimensionMismatch {
                expected: dim,
                found: v.len(),
                index: i,
            });
        }
        let mut tag = 1;
        for x in vectors.iter().flatten() {
            let t = x.field_tag();
            if t != 1 {
                if tag != 1 && tag != t {
                    return Err(LinalgError::Malformed(format!(
                        "entries mix sqrt({tag}) and sqrt({t})"
                    )));
                }
                tag = t;
            }
        }
        Ok(Frame { dim, vectors })
    }

    /// Frame from columns of an `dim × m` matrix given row by row.
    pub fn from_matrix_columns(rows: Vec<Vec<T>>) -> Result<Self, LinalgError> {
        let dim = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(LinalgError::Malformed("ragged matrix".into()));
        }
        let vectors = (0..m)
            .map(|j| rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        Self::new(dim, vectors)
    }

    pub fn standard_basis(dim: usize) -> Self {
        let vectors = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { T::one() } else { T::zero() })
                    .collect()
            })
            .collect();
        Frame { dim, vectors }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of vectors `m`.
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<T>] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &[T] {
        &self.vectors[i]
    }

    pub fn into_vectors(self) -> Vec<Vec<T>> {
        self.vectors
    }

    pub fn inner(&self, i: usize, j: usize) -> T {
        dot(&self.vectors[i], &self.vectors[j])
    }

    pub fn norm_squared(&self, i: usize) -> T {
        self.inner(i, i)
    }

    pub fn to_f64(&self) -> Frame<f64> {
        Frame {
            dim: self.dim,
            vectors: self
                .vectors
                .iter()
                .map(|v| v.iter().map(Scalar::to_f64).collect())
                .collect(),
        }
    }

    /// The same frame restricted to the listed vector indices, in order.
    pub fn select(&self, keep: &[usize]) -> Result<Self, LinalgError> {
        if keep.is_empty() {
            return Err(LinalgError::Malformed("empty selection".into()));
        }
        let vectors = keep
            .iter()
            .map(|&i| {
                self.vectors
                    .get(i)
                    .cloned()
                    .ok_or(LinalgError::IndexOutOfRange(i))
            })
            .collect::<Result<_, _>>()?;
        Ok(Frame {
            dim: self.dim,
            vectors,
        })
    }

    /// Concatenation of two frames in the same space.
    pub fn concat(&self, other: &Self) -> Result<Self, LinalgError> {
        let mut vectors = self.vectors.clone();
        vectors.extend(other.vectors.iter().cloned());
        Self::new(self.dim, vectors)
    }
}

pub(crate) fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalarMode {
    Float64,
    Exact,
}

/// A frame whose scalar mode is chosen at run time.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyFrame {
    Float(Frame<f64>),
    Exact(Frame<Exact>),
}

impl AnyFrame {
    pub fn mode(&self) -> ScalarMode {
        match self {
            AnyFrame::Float(_) => ScalarMode::Float64,
            AnyFrame::Exact(_) => ScalarMode::Exact,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyFrame::Float(f) => f.dim(),
            AnyFrame::Exact(f) => f.dim(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            AnyFrame::Float(f) => f.len(),
            AnyFrame::Exact(f) => f.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_f64(&self) -> Frame<f64> {
        match self {
            AnyFrame::Float(f) => f.clone(),
            AnyFrame::Exact(f) => f.to_f64(),
        }
    }

    /// Converts to float mode; exact frames are rounded entrywise.
    pub fn into_float(self) -> AnyFrame {
        match self {
            AnyFrame::Exact(f) => AnyFrame::Float(f.to_f64()),
            other => other,
        }
    }

    /// Requires float mode, naming the operation that refused exact input.
    pub fn require_float(&self, operation: &'static str) -> Result<&Frame<f64>, LinalgError> {
        match self {
            AnyFrame::Float(f) => Ok(f),
            AnyFrame::Exact(_) => Err(LinalgError::ExactUnsupported(operation)),
        }
    }

    pub fn require_exact(&self, operation: &'static str) -> Result<&Frame<Exact>, LinalgError> {
        match self {
            AnyFrame::Exact(f) => Ok(f),
            AnyFrame::Float(_) => Err(LinalgError::IrrationalInput(operation)),
        }
    }
}

impl From<Frame<f64>> for AnyFrame {
    fn from(f: Frame<f64>) -> Self {
        AnyFrame::Float(f)
    }
}

impl From<Frame<Exact>> for AnyFrame {
    fn from(f: Frame<Exact>) -> Self {
        AnyFrame::Exact(f)
    }
}
