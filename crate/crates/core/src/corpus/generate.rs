use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::graph::FrameGraph;
use crate::linalg::{is_frame, random_parseval, symmetric_eigen, AnyFrame, Frame, SymmetricMatrix};
use crate::scalar::{Exact, Scalar};

use super::{CorpusError, Expected, NamedInstance, Payload};

/// Restarts allowed when realizing a cycle pattern.
pub const CYCLE_PATTERN_RESTARTS: usize = 64;
const RANDOM_FRAME_RETRIES: usize = 256;
const LOCAL_SEARCH_SWEEPS: usize = 400;
/// Realized non-edges must be this small, edges at least `EDGE_FLOOR`.
const NON_EDGE_CEIL: f64 = 1e-12;
const EDGE_FLOOR: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    RandomFrame { m: usize, n: usize },
    RandomParseval { m: usize, n: usize },
    CyclePattern { m: usize, n: usize },
    Onb { n: usize },
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Generator::RandomFrame { m, n } => write!(f, "random_frame({m},{n})"),
            Generator::RandomParseval { m, n } => write!(f, "random_parseval({m},{n})"),
            Generator::CyclePattern { m, n } => write!(f, "cycle_pattern_frame({m},{n})"),
            Generator::Onb { n } => write!(f, "onb({n})"),
        }
    }
}

impl FromStr for Generator {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CorpusError::MalformedGenerator(s.to_string());
        let (kind, rest) = s.trim().split_once('(').ok_or_else(bad)?;
        let args = rest.strip_suffix(')').ok_or_else(bad)?;
        let nums: Vec<usize> = args
            .split(',')
            .map(|a| a.trim().parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        match (kind.trim(), nums.as_slice()) {
            ("random_frame", &[m, n]) => Ok(Generator::RandomFrame { m, n }),
            ("random_parseval", &[m, n]) => Ok(Generator::RandomParseval { m, n }),
            ("cycle_pattern_frame" | "cycle_pattern", &[m, n]) => Ok(Generator::CyclePattern { m, n }),
            ("onb", &[n]) => Ok(Generator::Onb { n }),
            _ => Err(bad()),
        }
    }
}

pub fn generate(generator: &Generator, seed: u64) -> Result<NamedInstance, CorpusError> {
    let (frame, expected): (AnyFrame, Expected) = match *generator {
        Generator::RandomFrame { m, n } => (random_frame(m, n, seed)?.into(), Expected::default()),
        Generator::RandomParseval { m, n } => (
            random_parseval(m, n, seed)?.into(),
            Expected {
                scalable: Some(true),
                strictly_scalable: Some(true),
                source: "Parseval by construction (unit weights)",
                ..Expected::default()
            },
        ),
        Generator::CyclePattern { m, n } => (
            cycle_pattern_frame(m, n, seed)?.into(),
            Expected {
                scalable: (m >= 7 && n + 2 >= m).then_some(false),
                strictly_scalable: (m >= 7 && n + 2 >= m).then_some(false),
                graph: Some(FrameGraph::cycle(m)),
                source: "cycle pattern checked after construction",
                ..Expected::default()
            },
        ),
        Generator::Onb { n } => (
            onb(n)?.into(),
            Expected {
                scalable: Some(true),
                strictly_scalable: Some(true),
                filters: Some("inconclusive"),
                uniform_weight: Some(Exact::one()),
                graph: Some(FrameGraph::empty(n)),
                source: "orthonormal basis",
            },
        ),
    };
    Ok(NamedInstance {
        name: format!("{generator}@{seed}"),
        payload: Payload::Frame(frame),
        provenance: format!("generated by {generator} with seed {seed}"),
        expected,
    })
}

pub fn onb(n: usize) -> Result<Frame<Exact>, CorpusError> {
    if n == 0 {
        return Err(CorpusError::Unsatisfiable("onb needs n >= 1".into()));
    }
    Ok(Frame::standard_basis(n))
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Sparse integer frame with entries in `{-2, ..., 2}`; the zero density is
/// drawn per instance so graphs range from sparse to complete.
pub fn random_frame(m: usize, n: usize, seed: u64) -> Result<Frame<Exact>, CorpusError> {
    if n == 0 || m < n {
        return Err(CorpusError::Unsatisfiable(format!(
            "random_frame needs m >= n >= 1, got m = {m}, n = {n}"
        )));
    }
    for attempt in 0..RANDOM_FRAME_RETRIES {
        let mut rng = rng_for(seed, attempt as u64);
        let zero_density = [0.2, 0.45, 0.65][rng.random_range(0..3)];
        let vectors: Vec<Vec<Exact>> = (0..m)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        if rng.random_bool(zero_density) {
                            Exact::zero()
                        } else {
                            let v = [-2, -1, 1, 2][rng.random_range(0..4)];
                            Exact::from_i64(v)
                        }
                    })
                    .collect()
            })
            .collect();
        let frame = Frame::new(n, vectors)?;
        if is_frame(&frame, 0.0) {
            return Ok(frame);
        }
    }
    Err(CorpusError::RestartCapExceeded {
        request: format!("random_frame({m},{n})"),
        restarts: RANDOM_FRAME_RETRIES,
    })
}

fn cycle_adjacent(m: usize, i: usize, j: usize) -> bool {
    let d = i.abs_diff(j);
    d == 1 || d == m - 1
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) -> bool {
    let norm = dot(v, v).sqrt();
    if norm < 1e-8 {
        return false;
    }
    v.iter_mut().for_each(|x| *x /= norm);
    true
}

/// Removes the components of `v` along `span(others)`.
fn project_out(v: &mut [f64], others: &[&[f64]]) {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for &o in others {
        let mut q = o.to_vec();
        for _ in 0..2 {
            for b in &basis {
                let c = dot(&q, b);
                q.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
        }
        if dot(&q, &q).sqrt() > 1e-10 && normalize(&mut q) {
            basis.push(q);
        }
    }
    for _ in 0..2 {
        for b in &basis {
            let c = dot(v, b);
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
        }
    }
}

fn gaussian(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| StandardNormal.sample(rng)).collect()
}

fn realizes_cycle(vs: &[Vec<f64>]) -> bool {
    let m = vs.len();
    (0..m).all(|i| {
        (i + 1..m).all(|j| {
            let ip = dot(&vs[i], &vs[j]).abs();
            if cycle_adjacent(m, i, j) {
                ip >= EDGE_FLOOR
            } else {
                ip <= NON_EDGE_CEIL
            }
        })
    })
}

/// Each vector in turn is a Gaussian draw projected away from its earlier
/// non-neighbours; always has room when `n >= m - 2`.
fn greedy_cycle(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Option<Vec<Vec<f64>>> {
    let mut vs: Vec<Vec<f64>> = Vec::with_capacity(m);
    for i in 0..m {
        let others: Vec<&[f64]> = (0..i)
            .filter(|&j| !cycle_adjacent(m, i, j))
            .map(|j| vs[j].as_slice())
            .collect();
        let mut v = gaussian(rng, n);
        project_out(&mut v, &others);
        if !normalize(&mut v) {
            return None;
        }
        vs.push(v);
    }
    Some(vs)
}

/// Repeatedly replaces each vector by the direction least correlated with
/// its non-neighbours, nudged toward its previous value.
fn local_search_cycle(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Option<Vec<Vec<f64>>> {
    let mut vs: Vec<Vec<f64>> = (0..m)
        .map(|_| {
            let mut v = gaussian(rng, n);
            normalize(&mut v);
            v
        })
        .collect();
    for _ in 0..LOCAL_SEARCH_SWEEPS {
        for i in 0..m {
            let s = SymmetricMatrix::from_fn(n, |p, q| {
                (0..m)
                    .filter(|&j| j != i && !cycle_adjacent(m, i, j))
                    .map(|j| vs[j][p] * vs[j][q])
                    .sum()
            });
            let eig = symmetric_eigen(&s, 1e-14).ok()?;
            let mut v = eig.eigenvectors[n - 1].clone();
            if dot(&v, &vs[i]) < 0.0 {
                v.iter_mut().for_each(|x| *x = -*x);
            }
            if !normalize(&mut v) {
                return None;
            }
            vs[i] = v;
        }
        if realizes_cycle(&vs) {
            return Some(vs);
        }
    }
    None
}

/// `m` unit vectors in `R^n` whose frame graph is the cycle `C_m`
/// (vertex `i` adjacent to `i ± 1 mod m`) and which span `R^n`.
pub fn cycle_pattern_frame(m: usize, n: usize, seed: u64) -> Result<Frame<f64>, CorpusError> {
    if n < 3 {
        return Err(CorpusError::Unsatisfiable(format!(
            "cycle_pattern_frame needs n >= 3, got {n}"
        )));
    }
    if m < n || m < 3 {
        return Err(CorpusError::Unsatisfiable(format!(
            "cycle_pattern_frame needs m >= max(n, 3), got m = {m}, n = {n}"
        )));
    }
    for attempt in 0..CYCLE_PATTERN_RESTARTS {
        let mut rng = rng_for(seed, attempt as u64);
        let candidate = if n + 2 >= m {
            greedy_cycle(&mut rng, m, n)
        } else {
            local_search_cycle(&mut rng, m, n)
        };
        let Some(vs) = candidate else { continue };
        if !realizes_cycle(&vs) {
            continue;
        }
        let frame = Frame::new(n, vs)?;
        if is_frame(&frame, 1e-9) {
            return Ok(frame);
        }
    }
    Err(CorpusError::RestartCapExceeded {
        request: format!("cycle_pattern_frame({m},{n})"),
        restarts: CYCLE_PATTERN_RESTARTS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, zero_pattern_equal};
    use crate::linalg::{classify_tightness, Tightness};

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["random_frame(6,3)", "random_parseval(5,2)", "cycle_pattern_frame(7,5)", "onb(4)"] {
            assert_eq!(s.parse::<Generator>().unwrap().to_string(), s);
        }
        assert!("onb(1,2)".parse::<Generator>().is_err());
        assert!("random_frame 6 3".parse::<Generator>().is_err());
    }

    #[test]
    fn onb_has_empty_graph() {
        let inst = generate(&Generator::Onb { n: 4 }, 0).unwrap();
        let AnyFrame::Exact(f) = inst.frame().unwrap() else { panic!() };
        assert_eq!(build_graph(f, 0.0).edge_count(), 0);
        assert!(onb(0).is_err());
    }

    #[test]
    fn random_parseval_is_parseval() {
        let inst = generate(&Generator::RandomParseval { m: 6, n: 3 }, 11).unwrap();
        let f = inst.frame().unwrap().to_f64();
        assert_eq!(classify_tightness(&f, 1e-12), Tightness::Parseval);
    }

    #[test]
    fn random_frames_are_reproducible_frames() {
        for seed in 0..20 {
            let a = random_frame(7, 4, seed).unwrap();
            assert_eq!(a, random_frame(7, 4, seed).unwrap());
            assert!(is_frame(&a, 0.0));
        }
        assert!(random_frame(2, 3, 0).is_err());
    }

    #[test]
    fn cycle_patterns_realize_c_m() {
        for n in [5, 6, 7] {
            for seed in 0..5 {
                let f = cycle_pattern_frame(7, n, seed).unwrap();
                assert!(zero_pattern_equal(&build_graph(&f, 1e-10), &FrameGraph::cycle(7)).unwrap());
                assert_eq!(f, cycle_pattern_frame(7, n, seed).unwrap());
            }
        }
    }

    #[test]
    fn cycle_pattern_rejects_small_dimensions() {
        assert!(matches!(cycle_pattern_frame(7, 2, 0), Err(CorpusError::Unsatisfiable(_))));
        assert!(matches!(cycle_pattern_frame(3, 4, 0), Err(CorpusError::Unsatisfiable(_))));
    }

    #[test]
    fn unrealizable_cycle_pattern_hits_restart_cap() {
        // C6 in R^3 would force f1 parallel to f0 (each f_i is normal to the
        // plane of f_{i+2}, f_{i+4}), so the local search must give up
        assert_eq!(
            cycle_pattern_frame(6, 3, 1),
            Err(CorpusError::RestartCapExceeded {
                request: "cycle_pattern_frame(6,3)".into(),
                restarts: CYCLE_PATTERN_RESTARTS,
            })
        );
    }
}
