//! JSON report assembly. Keys come out sorted and floats always carry 17
//! significant digits, so equal inputs give byte-identical reports.

use std::str::FromStr;

use framescale::analysis::{Analysis, AnalysisConfig, Conclusion};
use framescale::filters::{Certificate, FilterRun};
use framescale::graph::{FrameGraph, GraphStats};
use framescale::linalg::{Frame, ScalarMode, SymmetricMatrix, Tightness};
use framescale::scaler::{verify_farkas, verify_weights, Feasible, OracleResult, StrictResult};
use framescale::Scalar;
use serde_json::{json, Map, Number, Value};

pub const REPORT_VERSION: u64 = 1;

/// `x` in `%.16e` form; NaN and infinities become `null`.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Number::from_str(&format!("{x:.16e}")).map_or(Value::Null, Value::Number)
}

/// Exact values render as strings, floats as numbers.
pub fn scalar<T: Scalar>(x: &T) -> Value {
    if T::EXACT {
        Value::String(x.to_string())
    } else {
        num(x.to_f64())
    }
}

fn list<T: Scalar>(xs: &[T]) -> Value {
    Value::Array(xs.iter().map(scalar).collect())
}

fn floats(xs: &[f64]) -> Value {
    Value::Array(xs.iter().copied().map(num).collect())
}

fn matrix<T: Scalar>(m: &SymmetricMatrix<T>) -> Value {
    Value::Array(m.rows().iter().map(|r| list(r)).collect())
}

fn one_based(vs: &[usize]) -> Value {
    Value::Array(vs.iter().map(|v| Value::from(v + 1)).collect())
}

fn pairs(ps: &[(usize, usize)]) -> Value {
    Value::Array(ps.iter().map(|&(u, v)| json!([u + 1, v + 1])).collect())
}

fn object(entries: Vec<(&str, Value)>) -> Value {
    Value::Object(entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Map<_, _>>())
}

/// Echo of the input and the settings that shaped the report.
#[derive(Debug, Clone)]
pub struct InputEcho {
    pub source: String,
    pub m: usize,
    pub n: usize,
    pub mode: Option<ScalarMode>,
    pub tol_zero: f64,
    pub tol: f64,
    pub seed: u64,
    pub experimental_filters: bool,
}

impl InputEcho {
    pub fn to_value(&self) -> Value {
        object(vec![
            ("source", Value::from(self.source.clone())),
            ("m", Value::from(self.m)),
            ("n", Value::from(self.n)),
            (
                "mode",
                match self.mode {
                    Some(ScalarMode::Exact) => Value::from("exact"),
                    Some(ScalarMode::Float64) => Value::from("float64"),
                    None => Value::from("graph_only"),
                },
            ),
            ("tol_zero", num(self.tol_zero)),
            ("tol", num(self.tol)),
            ("seed", Value::from(self.seed)),
            ("experimental_filters", Value::from(self.experimental_filters)),
        ])
    }
}

pub fn graph_value(g: &FrameGraph) -> Value {
    let m = g.vertex_count();
    let flagged = |f: &dyn Fn(usize) -> bool| one_based(&(0..m).filter(|&v| f(v)).collect::<Vec<_>>());
    object(vec![
        ("vertices", Value::from(m)),
        ("edges", pairs(&g.edges())),
        ("zero_vectors", flagged(&|v| g.is_zero_vector(v))),
        ("isolated", flagged(&|v| g.is_isolated(v))),
    ])
}

pub fn stats_value(s: &GraphStats) -> Value {
    let opt_list = |x: &Option<Vec<usize>>| x.as_ref().map_or(Value::Null, |v| one_based(v));
    object(vec![
        ("vertex_count", Value::from(s.vertex_count)),
        ("edge_count", Value::from(s.edge_count)),
        (
            "components",
            Value::Array(s.components.iter().map(|c| one_based(c)).collect()),
        ),
        ("is_connected", Value::from(s.is_connected)),
        ("diameter", s.diameter.map_or(Value::Null, Value::from)),
        ("is_bipartite", Value::from(s.is_bipartite)),
        (
            "part_sizes",
            s.part_sizes
                .as_ref()
                .map_or(Value::Null, |p| Value::Array(p.iter().map(|&(x, y)| json!([x, y])).collect())),
        ),
        ("alpha", s.alpha.map_or(Value::Null, Value::from)),
        ("maximum_independent_set", opt_list(&s.maximum_independent_set)),
        ("bridges", pairs(&s.bridges)),
        ("leaves", one_based(&s.leaves)),
        ("is_complete", Value::from(s.is_complete)),
        ("is_empty", Value::from(s.is_empty)),
        ("is_cycle", Value::from(s.is_cycle)),
        ("longest_induced_path", opt_list(&s.longest_induced_path)),
        ("search_cap_exceeded", Value::from(s.search_cap_exceeded)),
    ])
}

pub fn filters_value(run: &FilterRun, experimental_enabled: bool) -> Value {
    let r = &run.reduction;
    object(vec![
        (
            "reports",
            Value::Array(
                run.reports
                    .iter()
                    .map(|rep| serde_json::to_value(rep).expect("serializable report"))
                    .collect(),
            ),
        ),
        ("verdict", Value::from(run.verdict.as_str())),
        ("experimental_enabled", Value::from(experimental_enabled)),
        (
            "reduction",
            object(vec![
                ("m", Value::from(r.m)),
                ("n", Value::from(r.n)),
                ("kept", one_based(&r.kept)),
                ("zero_vectors", one_based(&r.zero_vectors)),
                ("isolated", one_based(&r.isolated)),
            ]),
        ),
    ])
}

pub fn warnings_value(run: &FilterRun, extra: &[Value]) -> Value {
    let mut out: Vec<Value> = run
        .warnings
        .iter()
        .map(|w| serde_json::to_value(w.for_report()).expect("serializable warning"))
        .collect();
    out.extend(extra.iter().cloned());
    Value::Array(out)
}

fn tightness_value<T: Scalar>(t: &Tightness<T>) -> Value {
    match t {
        Tightness::NotTight => json!({"kind": "not_tight"}),
        Tightness::Tight(b) => object(vec![("kind", Value::from("tight")), ("bound", scalar(b))]),
        Tightness::Parseval => json!({"kind": "parseval"}),
    }
}

fn weights_check<T: Scalar>(frame: &Frame<T>, w: &[T], tol: f64) -> Value {
    match verify_weights(frame, w, tol) {
        Ok(c) => object(vec![
            ("residual", num(c.residual)),
            ("scaled_frame", tightness_value(&c.tightness)),
        ]),
        Err(e) => object(vec![("error", Value::from(e.to_string()))]),
    }
}

fn farkas_value<T: Scalar>(frame: &Frame<T>, y: &SymmetricMatrix<T>, tol: f64) -> Value {
    object(vec![
        ("matrix", matrix(y)),
        ("verified", Value::from(verify_farkas(frame, y, tol).unwrap_or(false))),
    ])
}

fn feasible_value<T: Scalar>(frame: &Frame<T>, f: &Feasible<T>, tol: f64) -> Vec<(&'static str, Value)> {
    let mut entries = vec![
        ("weights", list(&f.weights)),
        ("scalings", floats(&f.scalings)),
        ("residual", num(f.residual)),
        ("verification", weights_check(frame, &f.weights, tol)),
    ];
    if let Some(a) = &f.exact_scalings {
        entries.push(("exact_scalings", list(a)));
    }
    entries
}

pub fn nonneg_value<T: Scalar>(frame: &Frame<T>, r: &OracleResult<T>, tol: f64) -> Value {
    let mut entries = vec![("status", Value::from(r.status()))];
    match r {
        OracleResult::Feasible(f) => entries.extend(feasible_value(frame, f, tol)),
        OracleResult::Infeasible { farkas } => entries.push(("farkas", farkas_value(frame, farkas, tol))),
        OracleResult::NumericallyAmbiguous { phase_one_value } => {
            entries.push(("phase_one_value", num(*phase_one_value)))
        }
    }
    object(entries)
}

pub fn strict_value<T: Scalar>(frame: &Frame<T>, r: &StrictResult<T>, tol: f64) -> Value {
    let mut entries = vec![("status", Value::from(r.status()))];
    match r {
        StrictResult::StrictlyFeasible { weights, margin, residual }
        | StrictResult::Boundary { weights, margin, residual } => {
            entries.push(("weights", list(weights)));
            entries.push((
                "scalings",
                floats(&weights.iter().map(|w| w.to_f64().max(0.0).sqrt()).collect::<Vec<_>>()),
            ));
            entries.push(("margin", scalar(margin)));
            entries.push(("residual", num(*residual)));
            entries.push(("verification", weights_check(frame, weights, tol)));
        }
        StrictResult::Infeasible { farkas } => entries.push(("farkas", farkas_value(frame, farkas, tol))),
        StrictResult::NumericallyAmbiguous { phase_one_value } => {
            entries.push(("phase_one_value", num(*phase_one_value)))
        }
    }
    object(entries)
}

fn first_certificate(run: &FilterRun) -> Value {
    let strongest = run
        .decisive()
        .filter(|r| !r.experimental)
        .find(|r| r.verdict == run.verdict);
    match strongest {
        Some(r) => object(vec![
            ("filter_id", Value::from(r.filter_id)),
            (
                "certificate",
                r.certificate
                    .clone()
                    .map_or(Value::Null, |c: Certificate| serde_json::to_value(c).expect("serializable")),
            ),
        ]),
        None => Value::Null,
    }
}

fn conclusion_value<T: Scalar>(a: &Analysis<T>, frame: &Frame<T>, tol: f64) -> Value {
    let mut entries = vec![
        ("verdict", Value::from(a.conclusion.as_str())),
        ("evidence", serde_json::to_value(a.evidence).expect("serializable")),
        ("conflict", Value::from(a.conflict)),
        ("filter", first_certificate(&a.filters)),
    ];
    if let Some(o) = &a.oracles {
        let weights = match a.conclusion {
            Conclusion::StrictlyScalable => o.strict.weights(),
            Conclusion::Scalable => o.strict.weights().or(o.nonneg.weights()),
            _ => None,
        };
        if let Some(w) = weights {
            entries.push(("weights", list(w)));
            entries.push((
                "scalings",
                floats(&w.iter().map(|x| x.to_f64().max(0.0).sqrt()).collect::<Vec<_>>()),
            ));
        }
        let farkas = match (&o.nonneg, &o.strict) {
            (OracleResult::Infeasible { farkas }, _) | (_, StrictResult::Infeasible { farkas }) => Some(farkas),
            _ => None,
        };
        if let Some(y) = farkas {
            entries.push(("farkas", farkas_value(frame, y, tol)));
        }
    }
    object(entries)
}

/// Full `analyze` report for a frame.
pub fn analysis_value<T: Scalar>(
    echo: &InputEcho,
    frame: &Frame<T>,
    a: &Analysis<T>,
    config: &AnalysisConfig,
) -> Value {
    let tol = config.solver.feas_tol;
    let oracle = match &a.oracles {
        Some(o) => object(vec![
            ("status", Value::from("ran")),
            ("nonneg", nonneg_value(frame, &o.nonneg, tol)),
            ("strict", strict_value(frame, &o.strict, tol)),
        ]),
        None => json!({"status": "skipped", "reason": "filters_only"}),
    };
    let extra: Vec<Value> = if a.conflict {
        vec![json!({"kind": "filter_oracle_conflict"})]
    } else {
        Vec::new()
    };
    object(vec![
        ("report_version", Value::from(REPORT_VERSION)),
        ("command", Value::from("analyze")),
        ("input", echo.to_value()),
        (
            "graph",
            object(vec![("structure", graph_value(&a.graph)), ("stats", stats_value(&a.stats))]),
        ),
        ("filters", filters_value(&a.filters, config.filters.enable_experimental)),
        ("oracle", oracle),
        ("conclusion", conclusion_value(a, frame, tol)),
        ("warnings", warnings_value(&a.filters, &extra)),
    ])
}

/// Byte form of a report: pretty JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable report");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_keep_seventeen_digits() {
        assert_eq!(num(2.0 / 3.0).to_string(), "6.6666666666666663e-1");
        let zero = num(0.0).to_string();
        assert!(zero.starts_with("0.0000000000000000e"), "{zero}");
        assert_eq!(zero.parse::<f64>().unwrap(), 0.0);
        assert_eq!(num(f64::NAN), Value::Null);
        let back: f64 = num(0.1).to_string().parse().unwrap();
        assert_eq!(back, 0.1);
    }

    #[test]
    fn exact_values_are_strings() {
        assert_eq!(scalar(&framescale::Exact::from_ratio(2, 3)), Value::from("2/3"));
    }
}
