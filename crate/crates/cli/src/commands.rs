//! One function per subcommand. Each returns the text to print.

use std::path::{Path, PathBuf};

use framescale::analysis::{analyze, AnalysisConfig};
use framescale::filters::{run_all_filters, run_frame_filters, FilterConfig, FilterRun};
use framescale::graph::{build_graph, compute_stats, export_dot, FrameGraph, StatsConfig};
use framescale::linalg::{naimark_complement, normalize_tight, AnyFrame, Frame, ScalarMode};
use framescale::scaler::{build_lp, solve_scalable, solve_strict, SolverOptions};
use framescale::Scalar;
use serde_json::{json, Value};

use crate::io::{frame_to_value, load_graph, load_input, Loaded};
use crate::report::{self, InputEcho, REPORT_VERSION};
use crate::CliError;

/// Flags shared by every subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct Options {
    pub tol_zero: f64,
    pub tol: f64,
    pub exact: bool,
    pub seed: u64,
    pub filters_only: bool,
    pub experimental: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            tol_zero: 1e-10,
            tol: 1e-8,
            exact: false,
            seed: 0,
            filters_only: false,
            experimental: false,
        }
    }
}

impl Options {
    fn check(&self) -> Result<(), CliError> {
        for (name, t) in [("--tol-zero", self.tol_zero), ("--tol", self.tol)] {
            if !(t.is_finite() && t >= 0.0) {
                return Err(CliError::Input(format!("{name} must be a nonnegative number, got {t}")));
            }
        }
        Ok(())
    }

    pub fn filter_config(&self) -> FilterConfig {
        FilterConfig {
            enable_experimental: self.experimental,
            ..FilterConfig::default()
        }
    }

    pub fn analysis_config(&self) -> AnalysisConfig {
        AnalysisConfig {
            tol_zero: self.tol_zero,
            solver: SolverOptions::with_feas_tol(self.tol),
            filters: self.filter_config(),
            filters_only: self.filters_only,
        }
    }

    fn echo(&self, source: &str, m: usize, n: usize, mode: Option<ScalarMode>) -> InputEcho {
        InputEcho {
            source: source.to_string(),
            m,
            n,
            mode,
            tol_zero: self.tol_zero,
            tol: self.tol,
            seed: self.seed,
            experimental_filters: self.experimental,
        }
    }
}

/// What a frame-or-graph subcommand operates on.
#[derive(Debug, Clone, PartialEq)]
pub enum Target {
    /// A frame file, corpus name or generator; bare graphs need `dim`.
    Input { input: String, dim: Option<usize> },
    /// An abstract graph; `dim` is mandatory.
    Graph { graph: String, dim: Option<usize> },
}

fn need_dim(dim: Option<usize>) -> Result<usize, CliError> {
    dim.ok_or_else(|| CliError::Input("graph-only input needs --dim".into()))
}

enum Resolved {
    Frame(AnyFrame),
    Graph(FrameGraph, usize),
}

fn resolve(target: &Target, opts: &Options) -> Result<(String, Resolved), CliError> {
    opts.check()?;
    match target {
        Target::Input { input, dim } => match load_input(input, opts.exact, opts.seed)? {
            Loaded::Frame(f) => {
                if let Some(d) = dim.filter(|&d| d != f.dim()) {
                    return Err(CliError::Input(format!(
                        "--dim {d} does not match the frame dimension {}",
                        f.dim()
                    )));
                }
                Ok((input.clone(), Resolved::Frame(f)))
            }
            Loaded::Graph(g) => Ok((input.clone(), Resolved::Graph(g, need_dim(*dim)?))),
        },
        Target::Graph { graph, dim } => {
            let d = need_dim(*dim)?;
            Ok((graph.clone(), Resolved::Graph(load_graph(graph, opts.tol_zero, opts.seed)?, d)))
        }
    }
}

fn graph_only_report(command: &str, echo: &InputEcho, g: &FrameGraph, run: &FilterRun, opts: &Options) -> Value {
    let stats = compute_stats(g, &StatsConfig { vertex_cap: opts.filter_config().vertex_cap });
    let mut v = json!({
        "report_version": REPORT_VERSION,
        "command": command,
        "input": echo.to_value(),
        "graph": {"structure": report::graph_value(g), "stats": report::stats_value(&stats)},
        "filters": report::filters_value(run, opts.experimental),
        "warnings": report::warnings_value(run, &[]),
    });
    if command == "analyze" {
        v["oracle"] = json!({"status": "skipped", "reason": "graph_only"});
        v["conclusion"] = json!({
            "verdict": run.verdict.as_str(),
            "evidence": if run.verdict.rules_out_strict() { "filters" } else { "none" },
            "conflict": false,
        });
    }
    v
}

fn analyze_frame<T: Scalar>(source: &str, frame: &Frame<T>, opts: &Options) -> Result<Value, CliError> {
    let config = opts.analysis_config();
    let a = analyze(frame, &config)?;
    let mode = if T::EXACT { ScalarMode::Exact } else { ScalarMode::Float64 };
    let echo = opts.echo(source, frame.len(), frame.dim(), Some(mode));
    let mut v = report::analysis_value(&echo, frame, &a, &config);
    if opts.filters_only {
        v["oracle"] = json!({"status": "skipped", "reason": "filters_only"});
    }
    Ok(v)
}

pub fn cmd_analyze(target: &Target, opts: &Options) -> Result<Value, CliError> {
    let (source, resolved) = resolve(target, opts)?;
    match resolved {
        Resolved::Frame(AnyFrame::Float(f)) => analyze_frame(&source, &f, opts),
        Resolved::Frame(AnyFrame::Exact(f)) => analyze_frame(&source, &f, opts),
        Resolved::Graph(g, n) => {
            let run = run_all_filters(&g, n, &opts.filter_config());
            let echo = opts.echo(&source, g.vertex_count(), n, None);
            Ok(graph_only_report("analyze", &echo, &g, &run, opts))
        }
    }
}

pub fn cmd_filters(target: &Target, opts: &Options) -> Result<Value, CliError> {
    let (source, resolved) = resolve(target, opts)?;
    let config = opts.filter_config();
    let (g, run, echo) = match resolved {
        Resolved::Frame(f) => {
            let run = match &f {
                AnyFrame::Float(f) => run_frame_filters(f, opts.tol_zero, &config),
                AnyFrame::Exact(f) => run_frame_filters(f, opts.tol_zero, &config),
            };
            let g = match &f {
                AnyFrame::Float(f) => build_graph(f, opts.tol_zero),
                AnyFrame::Exact(f) => build_graph(f, opts.tol_zero),
            };
            (g, run, opts.echo(&source, f.len(), f.dim(), Some(f.mode())))
        }
        Resolved::Graph(g, n) => {
            let run = run_all_filters(&g, n, &config);
            let echo = opts.echo(&source, g.vertex_count(), n, None);
            (g, run, echo)
        }
    };
    Ok(graph_only_report("filters", &echo, &g, &run, opts))
}

fn scale_frame_report<T: Scalar>(source: &str, frame: &Frame<T>, opts: &Options) -> Result<Value, CliError> {
    let solver = SolverOptions::with_feas_tol(opts.tol);
    let lp = build_lp(frame);
    let nonneg = solve_scalable(&lp, &solver)?;
    let strict = solve_strict(&lp, &solver)?;
    let mode = if T::EXACT { ScalarMode::Exact } else { ScalarMode::Float64 };
    Ok(json!({
        "report_version": REPORT_VERSION,
        "command": "scale",
        "input": opts.echo(source, frame.len(), frame.dim(), Some(mode)).to_value(),
        "nonneg": report::nonneg_value(frame, &nonneg, opts.tol),
        "strict": report::strict_value(frame, &strict, opts.tol),
    }))
}

pub fn cmd_scale(input: &str, opts: &Options) -> Result<Value, CliError> {
    let (source, resolved) = resolve(&Target::Input { input: input.into(), dim: None }, opts)?;
    match resolved {
        Resolved::Frame(AnyFrame::Float(f)) => scale_frame_report(&source, &f, opts),
        Resolved::Frame(AnyFrame::Exact(f)) => scale_frame_report(&source, &f, opts),
        Resolved::Graph(..) => Err(CliError::Input("scale needs a frame, not a bare graph".into())),
    }
}

/// Frame file of the Naimark complement. The input must be Parseval
/// unless `normalize` is set, in which case a tight frame is rescaled first.
pub fn cmd_complement(input: &str, normalize: bool, opts: &Options) -> Result<Value, CliError> {
    let (_, resolved) = resolve(&Target::Input { input: input.into(), dim: None }, opts)?;
    let Resolved::Frame(frame) = resolved else {
        return Err(CliError::Input("complement needs a frame, not a bare graph".into()));
    };
    let mut f = frame.to_f64();
    if normalize {
        f = normalize_tight(&f, opts.tol)?;
    }
    let c = naimark_complement(&f, opts.tol)?;
    Ok(frame_to_value(&AnyFrame::Float(c)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Dot,
    Json,
}

pub fn cmd_graph(input: &str, format: GraphFormat, opts: &Options) -> Result<String, CliError> {
    opts.check()?;
    let g = load_graph(input, opts.tol_zero, opts.seed)?;
    Ok(match format {
        GraphFormat::Dot => export_dot(&g),
        GraphFormat::Json => {
            let stats = compute_stats(&g, &StatsConfig { vertex_cap: opts.filter_config().vertex_cap });
            report::render(&json!({
                "report_version": REPORT_VERSION,
                "command": "graph",
                "structure": report::graph_value(&g),
                "stats": report::stats_value(&stats),
            }))
        }
    })
}

/// Files of `dir` that look like inputs, in name order.
fn batch_inputs(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let entries = std::fs::read_dir(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(Result::ok)
        .map(|e| e.path())
        .filter(|p| {
            p.is_file()
                && p.extension()
                    .and_then(|e| e.to_str())
                    .is_some_and(|e| matches!(e.to_ascii_lowercase().as_str(), "json" | "csv"))
        })
        .collect();
    files.sort();
    Ok(files)
}

/// Analyzes every `.json` / `.csv` file of `dir`; per-file failures are
/// recorded in the result list instead of aborting the batch.
pub fn cmd_batch(dir: &Path, dim: Option<usize>, opts: &Options) -> Result<Value, CliError> {
    opts.check()?;
    let files = batch_inputs(dir)?;
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(files.len().max(1));
    let mut results: Vec<Option<Value>> = vec![None; files.len()];
    std::thread::scope(|scope| {
        for (chunk_files, chunk_out) in files
            .chunks(files.len().div_ceil(workers).max(1))
            .zip(results.chunks_mut(files.len().div_ceil(workers).max(1)))
        {
            scope.spawn(move || {
                for (path, out) in chunk_files.iter().zip(chunk_out.iter_mut()) {
                    let name = path.file_name().map_or_else(String::new, |n| n.to_string_lossy().into_owned());
                    let target = Target::Input { input: path.to_string_lossy().into_owned(), dim };
                    *out = Some(match cmd_analyze(&target, opts) {
                        Ok(r) => json!({"file": name, "exit_code": 0, "report": r}),
                        Err(e) => json!({"file": name, "exit_code": e.exit_code(), "error": e.to_string()}),
                    });
                }
            });
        }
    });
    Ok(json!({
        "report_version": REPORT_VERSION,
        "command": "batch",
        "directory": dir.to_string_lossy(),
        "results": results.into_iter().flatten().collect::<Vec<_>>(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(name: &str, dim: Option<usize>) -> Target {
        Target::Graph { graph: name.into(), dim }
    }

    #[test]
    fn graph_input_needs_a_dimension() {
        let e = cmd_filters(&graph("C5", None), &Options::default()).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let r = cmd_filters(&graph("C5", Some(3)), &Options::default()).unwrap();
        assert_eq!(r["input"]["mode"], "graph_only");
    }

    #[test]
    fn declared_dimension_must_match_the_frame() {
        let t = Target::Input { input: "onb(3)".into(), dim: Some(2) };
        assert_eq!(cmd_analyze(&t, &Options::default()).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn tolerances_are_validated() {
        let opts = Options { tol_zero: f64::NAN, ..Options::default() };
        assert!(cmd_scale("onb(2)", &opts).is_err());
    }

    #[test]
    fn graph_only_analysis_skips_the_oracle() {
        let r = cmd_analyze(&graph("K_{1,3}", Some(3)), &Options::default()).unwrap();
        assert_eq!(r["oracle"]["status"], "skipped");
        assert_eq!(r["conclusion"]["verdict"], "not_strictly_scalable");
    }

    #[test]
    fn scaling_a_bare_graph_is_an_input_error() {
        assert_eq!(cmd_scale("paper/graph-K2K2-join-K13", &Options::default()).unwrap_err().exit_code(), 2);
    }
}
