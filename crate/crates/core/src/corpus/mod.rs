//! Built-in instances and seeded generators.

mod generate;

use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

use crate::graph::FrameGraph;
use crate::linalg::{AnyFrame, Frame, LinalgError};
use crate::scalar::{Exact, Scalar};

pub use generate::{
    cycle_pattern_frame, generate, onb, random_frame, Generator, CYCLE_PATTERN_RESTARTS,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CorpusError {
    #[error("unknown corpus instance `{0}`")]
    Unknown(String),
    #[error("malformed generator `{0}`")]
    MalformedGenerator(String),
    #[error("unsatisfiable request: {0}")]
    Unsatisfiable(String),
    #[error("no realization found after {restarts} restarts for {request}")]
    RestartCapExceeded { request: String, restarts: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Frame(AnyFrame),
    /// Adjacency only; the dimension must be supplied separately.
    Graph(FrameGraph),
}

/// Known answers for an instance, each with its justification.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Expected {
    pub scalable: Option<bool>,
    pub strictly_scalable: Option<bool>,
    /// Combined filter verdict, as its report string.
    pub filters: Option<&'static str>,
    /// Uniform weight, when every weight is the same.
    pub uniform_weight: Option<Exact>,
    pub graph: Option<FrameGraph>,
    pub source: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedInstance {
    pub name: String,
    pub payload: Payload,
    pub provenance: String,
    pub expected: Expected,
}

impl NamedInstance {
    pub fn frame(&self) -> Option<&AnyFrame> {
        match &self.payload {
            Payload::Frame(f) => Some(f),
            Payload::Graph(_) => None,
        }
    }
}

impl fmt::Display for NamedInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.name, self.provenance)
    }
}

/// Registered names, in listing order.
pub const NAMES: [&str; 5] = [
    "paper/M1",
    "paper/M2",
    "paper/M",
    "paper/graph-K2K2-join-K13",
    "canonical/mercedes",
];

fn integer_frame(cols: &[[i64; 4]]) -> Frame<Exact> {
    Frame::new(
        4,
        cols.iter()
            .map(|c| c.iter().map(|&x| Exact::from_i64(x)).collect())
            .collect(),
    )
    .expect("well-formed built-in frame")
}

pub fn m1() -> Frame<Exact> {
    integer_frame(&[[1, 2, 0, 0], [1, -2, 0, 0], [0, 0, 1, 2], [0, 0, 1, -2]])
}

pub fn m2() -> Frame<Exact> {
    integer_frame(&[[1, 1, 1, 1], [-1, 1, 1, 1], [1, -1, 1, 1], [1, 1, -1, 1]])
}

/// Columns of `M1` followed by those of `M2`.
pub fn m_joined() -> Frame<Exact> {
    m1().concat(&m2()).expect("same dimension")
}

/// `(K2 ∪ K2) ∨ K_{1,3}` with the star centre at vertex 4.
pub fn k2k2_join_k13() -> FrameGraph {
    FrameGraph::complete(2)
        .disjoint_union(&FrameGraph::complete(2))
        .join(&FrameGraph::star(3))
}

/// Three unit vectors at 120°: `(0, 1)`, `(-√3/2, -1/2)`, `(√3/2, -1/2)`.
pub fn mercedes() -> Frame<Exact> {
    let half = Exact::from_ratio(1, 2);
    let s = Exact::sqrt_of_integer(BigRational::new(1.into(), 2.into()), 3);
    Frame::new(
        2,
        vec![
            vec![Exact::zero(), Exact::one()],
            vec![-s.clone(), -half.clone()],
            vec![s, -half],
        ],
    )
    .expect("well-formed built-in frame")
}

pub fn load(name: &str) -> Result<NamedInstance, CorpusError> {
    let frame = |f: Frame<Exact>| Payload::Frame(AnyFrame::Exact(f));
    let two_edges = FrameGraph::complete(2).disjoint_union(&FrameGraph::complete(2));
    let (payload, provenance, expected) = match name {
        "paper/M1" => (
            frame(m1()),
            "worked example: columns of the 4x4 matrix M1",
            Expected {
                scalable: Some(false),
                strictly_scalable: Some(false),
                filters: Some("not_scalable"),
                graph: Some(two_edges),
                source: "worked example; the oracle returns Farkas Y = diag(4,-1,4,-1)/6",
                ..Expected::default()
            },
        ),
        "paper/M2" => (
            frame(m2()),
            "worked example: columns of the 4x4 matrix M2",
            Expected {
                scalable: Some(false),
                strictly_scalable: Some(false),
                filters: Some("not_scalable"),
                graph: Some(FrameGraph::star(3)),
                source: "worked example",
                ..Expected::default()
            },
        ),
        "paper/M" => (
            frame(m_joined()),
            "worked example: the 4x8 matrix M = [M1 | M2]",
            Expected {
                filters: Some("inconclusive"),
                graph: Some(k2k2_join_k13()),
                source: "worked example; passes every necessary condition",
                ..Expected::default()
            },
        ),
        "paper/graph-K2K2-join-K13" => (
            Payload::Graph(k2k2_join_k13()),
            "graph-only: the join (K2 ∪ K2) ∨ K_{1,3}",
            Expected {
                graph: Some(k2k2_join_k13()),
                source: "structure stated in the worked example",
                ..Expected::default()
            },
        ),
        "canonical/mercedes" => (
            frame(mercedes()),
            "Mercedes-Benz frame: three unit vectors at 120 degrees",
            Expected {
                scalable: Some(true),
                strictly_scalable: Some(true),
                filters: Some("inconclusive"),
                uniform_weight: Some(Exact::from_ratio(2, 3)),
                graph: Some(FrameGraph::complete(3)),
                source: "tight with bound 3/2, so w = 2/3",
            },
        ),
        _ => return Err(CorpusError::Unknown(name.to_string())),
    };
    Ok(NamedInstance {
        name: name.to_string(),
        payload,
        provenance: provenance.to_string(),
        expected,
    })
}

/// A registered name or generator syntax such as `random_parseval(5,2)`;
/// generators draw from `seed`.
pub fn resolve(query: &str, seed: u64) -> Result<NamedInstance, CorpusError> {
    if query.contains('(') {
        generate(&query.parse::<Generator>()?, seed)
    } else {
        load(query)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, zero_pattern_equal};

    #[test]
    fn every_name_loads_and_reproduces_its_graph() {
        for name in NAMES {
            let inst = load(name).unwrap();
            assert_eq!(inst.name, name);
            let expected = inst.expected.graph.as_ref().unwrap();
            let g = match &inst.payload {
                Payload::Frame(AnyFrame::Exact(f)) => build_graph(f, 0.0),
                Payload::Frame(AnyFrame::Float(f)) => build_graph(f, 1e-10),
                Payload::Graph(g) => g.clone(),
            };
            assert!(zero_pattern_equal(&g, expected).unwrap(), "{name}");
        }
    }

    #[test]
    fn m1_columns() {
        let f = m1();
        assert_eq!(f.len(), 4);
        assert_eq!(f.vector(1), &[Exact::one(), Exact::from_i64(-2), Exact::zero(), Exact::zero()]);
        assert_eq!(m_joined().len(), 8);
    }

    #[test]
    fn mercedes_vectors_are_unit() {
        let f = mercedes();
        for i in 0..3 {
            assert_eq!(f.norm_squared(i), Exact::one());
        }
        assert_eq!(f.inner(0, 1), Exact::from_ratio(-1, 2));
    }

    #[test]
    fn unknown_names_fail() {
        assert_eq!(load("paper/M3"), Err(CorpusError::Unknown("paper/M3".into())));
    }

    #[test]
    fn resolve_dispatches_generators() {
        assert_eq!(resolve("onb(3)", 0).unwrap().frame().unwrap().len(), 3);
        assert_eq!(resolve("paper/M1", 0).unwrap().name, "paper/M1");
        assert!(resolve("onb(x)", 0).is_err());
    }
}
