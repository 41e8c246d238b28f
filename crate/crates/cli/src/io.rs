//! Frame and graph input formats.
//!
//! A frame file is JSON `{"dimension": n, "vectors": [[...], ...]}` where
//! each inner list is one frame vector and entries are numbers or strings
//! (`"0.25"`, `"-3/4"`, `"sqrt(3)/2"`). A `.csv` file holds one vector per
//! line. Graph files are JSON with either `"adjacency"` (0/1 rows) or
//! `"vertices"` plus 1-based `"edges"`.

use std::path::Path;

use framescale::corpus::{self, Payload};
use framescale::graph::FrameGraph;
use framescale::linalg::{AnyFrame, Frame};
use framescale::scalar::{parse_f64, Exact};
use framescale::Scalar;
use serde_json::{Map, Value};

use crate::report::scalar;
use crate::CliError;

/// A parsed input: a frame, or a bare graph.
#[derive(Debug, Clone)]
pub enum Loaded {
    Frame(AnyFrame),
    Graph(FrameGraph),
}

fn input_error(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn entry_text(v: &Value) -> Result<String, CliError> {
    match v {
        Value::Number(n) => Ok(n.to_string()),
        Value::String(s) => Ok(s.clone()),
        other => Err(input_error(format!("frame entry must be a number or string, got {other}"))),
    }
}

fn build_frame(dim: usize, rows: Vec<Vec<String>>, exact: bool) -> Result<AnyFrame, CliError> {
    if exact {
        let vectors = rows
            .iter()
            .map(|r| r.iter().map(|s| s.trim().parse::<Exact>()).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| input_error(e.to_string()))?;
        Ok(Frame::new(dim, vectors)?.into())
    } else {
        let vectors = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| {
                        let x = parse_f64(s.trim()).map_err(|e| input_error(e.to_string()))?;
                        if x.is_finite() {
                            Ok(x)
                        } else {
                            Err(input_error(format!("non-finite entry `{s}`")))
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Frame::new(dim, vectors)?.into())
    }
}

pub fn parse_frame_json(text: &str, exact: bool) -> Result<AnyFrame, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| input_error(format!("invalid JSON: {e}")))?;
    let dim = v
        .get("dimension")
        .and_then(Value::as_u64)
        .ok_or_else(|| input_error("frame file needs a positive integer \"dimension\""))? as usize;
    let vectors = v
        .get("vectors")
        .and_then(Value::as_array)
        .ok_or_else(|| input_error("frame file needs a \"vectors\" array"))?;
    let rows = vectors
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| input_error("each vector must be an array"))?
                .iter()
                .map(entry_text)
                .collect()
        })
        .collect::<Result<Vec<Vec<String>>, _>>()?;
    build_frame(dim, rows, exact)
}

pub fn parse_frame_csv(text: &str, exact: bool) -> Result<AnyFrame, CliError> {
    let rows: Vec<Vec<String>> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.split(',').map(|s| s.trim().to_string()).collect())
        .collect();
    let dim = rows.first().map_or(0, Vec::len);
    build_frame(dim, rows, exact)
}

/// Parses a JSON graph file.
pub fn parse_graph_json(text: &str) -> Result<FrameGraph, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| input_error(format!("invalid JSON: {e}")))?;
    let flag = |x: &Value| match x {
        Value::Bool(b) => Ok(*b),
        Value::Number(n) if n.as_u64() == Some(0) => Ok(false),
        Value::Number(n) if n.as_u64() == Some(1) => Ok(true),
        other => Err(input_error(format!("adjacency entries must be 0/1, got {other}"))),
    };
    if let Some(rows) = v.get("adjacency").and_then(Value::as_array) {
        let adjacency = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| input_error("adjacency rows must be arrays"))?
                    .iter()
                    .map(flag)
                    .collect()
            })
            .collect::<Result<Vec<Vec<bool>>, _>>()?;
        return FrameGraph::from_adjacency(adjacency).map_err(|e| input_error(e.to_string()));
    }
    let m = v
        .get("vertices")
        .and_then(Value::as_u64)
        .ok_or_else(|| input_error("graph file needs \"adjacency\" or \"vertices\" and \"edges\""))?
        as usize;
    let edges = v
        .get("edges")
        .and_then(Value::as_array)
        .map(|es| {
            es.iter()
                .map(|e| {
                    let pair = e.as_array().filter(|p| p.len() == 2);
                    let ends: Option<Vec<usize>> = pair.and_then(|p| {
                        p.iter().map(|x| x.as_u64().filter(|&x| x >= 1).map(|x| x as usize - 1)).collect()
                    });
                    ends.map(|p| (p[0], p[1]))
                        .ok_or_else(|| input_error(format!("edges are 1-based pairs, got {e}")))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?
        .unwrap_or_default();
    FrameGraph::from_edges(m, &edges).map_err(|e| input_error(e.to_string()))
}

/// Graph family names: `K5`, `K_{1,3}`, `C7`, `P4`, `E3` (edgeless).
pub fn parse_family(name: &str) -> Option<FrameGraph> {
    let s: String = name.chars().filter(|c| !matches!(c, '_' | '{' | '}' | ' ')).collect();
    let mut chars = s.chars();
    let kind = chars.next()?;
    let rest: String = chars.collect();
    let nums: Vec<usize> = rest.split(',').map(|x| x.parse().ok()).collect::<Option<_>>()?;
    match (kind, nums.as_slice()) {
        ('K', &[n]) if n >= 1 => Some(FrameGraph::complete(n)),
        ('K', &[a, b]) if a + b >= 1 => Some(FrameGraph::complete_bipartite(a, b)),
        ('C', &[n]) if n >= 3 => Some(FrameGraph::cycle(n)),
        ('P', &[n]) if n >= 1 => Some(FrameGraph::path(n)),
        ('E', &[n]) if n >= 1 => Some(FrameGraph::empty(n)),
        _ => None,
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// A file path, a corpus name or a generator such as `onb(3)`.
pub fn load_input(input: &str, exact: bool, seed: u64) -> Result<Loaded, CliError> {
    let path = Path::new(input);
    if path.is_file() {
        let text = read(path)?;
        let is_csv = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
        if is_csv {
            return Ok(Loaded::Frame(parse_frame_csv(&text, exact)?));
        }
        let v: Value = serde_json::from_str(&text).map_err(|e| input_error(format!("invalid JSON: {e}")))?;
        if v.get("vectors").is_some() {
            return Ok(Loaded::Frame(parse_frame_json(&text, exact)?));
        }
        return Ok(Loaded::Graph(parse_graph_json(&text)?));
    }
    let instance = corpus::resolve(input, seed).map_err(|e| match e {
        corpus::CorpusError::Unknown(_) => input_error(format!("`{input}` is neither a file nor a corpus instance")),
        other => other.into(),
    })?;
    match instance.payload {
        Payload::Graph(g) => Ok(Loaded::Graph(g)),
        Payload::Frame(AnyFrame::Exact(f)) if !exact => Ok(Loaded::Frame(AnyFrame::Float(f.to_f64()))),
        Payload::Frame(AnyFrame::Float(_)) if exact => Err(CliError::Input(format!(
            "`{input}` has floating-point entries; exact mode needs rational input"
        ))),
        Payload::Frame(f) => Ok(Loaded::Frame(f)),
    }
}

/// A graph file, a family name, or any frame input (whose graph is used).
pub fn load_graph(input: &str, tol_zero: f64, seed: u64) -> Result<FrameGraph, CliError> {
    if !Path::new(input).is_file() {
        if let Some(g) = parse_family(input) {
            return Ok(g);
        }
    }
    match load_input(input, false, seed)? {
        Loaded::Graph(g) => Ok(g),
        Loaded::Frame(f) => Ok(framescale::graph::build_graph(&f.to_f64(), tol_zero)),
    }
}

fn frame_value<T: Scalar>(f: &Frame<T>) -> Value {
    let mut obj = Map::new();
    obj.insert("dimension".into(), Value::from(f.dim()));
    obj.insert(
        "vectors".into(),
        Value::Array(
            f.vectors()
                .iter()
                .map(|v| Value::Array(v.iter().map(scalar).collect()))
                .collect(),
        ),
    );
    Value::Object(obj)
}

/// The frame file representation of a frame.
pub fn frame_to_value(frame: &AnyFrame) -> Value {
    match frame {
        AnyFrame::Float(f) => frame_value(f),
        AnyFrame::Exact(f) => frame_value(f),
    }
}
