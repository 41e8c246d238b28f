use super::*;
use crate::graph::FrameGraph;
use crate::linalg::Frame;
use crate::scalar::Exact;

fn exact(cols: &[&[i64]]) -> Frame<Exact> {
    let dim = cols[0].len();
    Frame::new(
        dim,
        cols.iter()
            .map(|c| c.iter().map(|&x| Exact::from_i64(x)).collect())
            .collect(),
    )
    .unwrap()
}

fn m1() -> Frame<Exact> {
    exact(&[&[1, 2, 0, 0], &[1, -2, 0, 0], &[0, 0, 1, 2], &[0, 0, 1, -2]])
}

fn m2() -> Frame<Exact> {
    exact(&[&[1, 1, 1, 1], &[-1, 1, 1, 1], &[1, -1, 1, 1], &[1, 1, -1, 1]])
}

fn m_joined() -> Frame<Exact> {
    m1().concat(&m2()).unwrap()
}

fn k2k2() -> FrameGraph {
    FrameGraph::complete(2).disjoint_union(&FrameGraph::complete(2))
}

fn bowtie() -> FrameGraph {
    FrameGraph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap()
}

fn assert_replays(r: &FilterReport, g: &FrameGraph, n: usize) {
    assert!(recheck(r, g, n), "certificate of {} does not replay: {r:?}", r.filter_id);
}

fn verdict_of(r: FilterReport, g: &FrameGraph, n: usize) -> Verdict {
    assert_replays(&r, g, n);
    assert!(r.applicable || r.verdict == Verdict::Inconclusive);
    r.verdict
}

fn g_of(frame: &Frame<Exact>) -> FrameGraph {
    build_graph(frame, 0.0)
}

#[test]
fn square_nonempty_examples() {
    let g = g_of(&m1());
    assert_eq!(verdict_of(filter_square_nonempty(&g, 4), &g, 4), Verdict::NotScalable);
    let g = g_of(&m2());
    assert_eq!(verdict_of(filter_square_nonempty(&g, 4), &g, 4), Verdict::NotScalable);
    let r = filter_square_nonempty(&FrameGraph::empty(4), 4);
    assert_eq!(r.verdict, Verdict::Inconclusive);
}

#[test]
fn complete_codim1_examples() {
    let mut adj = FrameGraph::complete(5).adjacency().to_vec();
    adj[0][1] = false;
    adj[1][0] = false;
    let g = FrameGraph::from_adjacency(adj).unwrap();
    let r = filter_complete_codim1(&g, 4);
    assert_eq!(r.certificate, Some(Certificate::MissingEdge { u: 0, v: 1 }));
    assert_eq!(verdict_of(r, &g, 4), Verdict::NotStrictlyScalable);
    let k3 = FrameGraph::complete(3);
    let r = filter_complete_codim1(&k3, 2);
    assert!(r.applicable);
    assert_eq!(r.verdict, Verdict::Inconclusive);
    assert!(!filter_complete_codim1(&k3, 3).applicable);
}

#[test]
fn alpha_examples() {
    let star = FrameGraph::star(3);
    assert_eq!(verdict_of(filter_alpha(&star, 3), &star, 3), Verdict::NotStrictlyScalable);
    let c5 = FrameGraph::cycle(5);
    assert_eq!(verdict_of(filter_alpha(&c5, 2), &c5, 2), Verdict::Inconclusive);
    let k23 = FrameGraph::complete_bipartite(2, 3);
    let r = filter_alpha(&k23, 3);
    assert_eq!(
        r.certificate,
        Some(Certificate::IndependentSet { vertices: vec![2, 3, 4], bound: 2 })
    );
    assert_eq!(verdict_of(r, &k23, 3), Verdict::NotStrictlyScalable);
}

#[test]
fn diameter_codim2_examples() {
    let p4 = FrameGraph::path(4);
    let r = filter_diameter_codim2(&p4, 2);
    assert_eq!(r.certificate, Some(Certificate::DistantPair { u: 0, v: 3, distance: 3 }));
    assert_eq!(verdict_of(r, &p4, 2), Verdict::NotStrictlyScalable);
    let c5 = FrameGraph::cycle(5);
    assert_eq!(verdict_of(filter_diameter_codim2(&c5, 3), &c5, 3), Verdict::Inconclusive);
    assert!(!filter_diameter_codim2(&k2k2(), 2).applicable);
}

#[test]
fn orthogonal_set_codim2_examples() {
    let f = exact(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1], &[1, -1, 1]]);
    let g = g_of(&f);
    let r = filter_orthogonal_set_codim2(&g, 3);
    assert_eq!(
        r.certificate,
        Some(Certificate::IndependentSet { vertices: vec![0, 1, 2], bound: 2 })
    );
    assert_eq!(verdict_of(r, &g, 3), Verdict::NotStrictlyScalable);
    let k5 = FrameGraph::complete(5);
    assert_eq!(verdict_of(filter_orthogonal_set_codim2(&k5, 3), &k5, 3), Verdict::Inconclusive);
    assert!(!filter_orthogonal_set_codim2(&k5, 4).applicable);
}

#[test]
fn bipartite_balance_examples() {
    let star = FrameGraph::star(3);
    let r = filter_bipartite_balance(&star, 3);
    assert_eq!(r.certificate, Some(Certificate::PartSizes { parts: vec![(1, 3)] }));
    assert_eq!(verdict_of(r, &star, 3), Verdict::NotStrictlyScalable);
    let g = k2k2();
    assert_eq!(verdict_of(filter_bipartite_balance(&g, 2), &g, 2), Verdict::Inconclusive);
    let p3 = FrameGraph::path(3);
    assert_eq!(verdict_of(filter_bipartite_balance(&p3, 2), &p3, 2), Verdict::NotStrictlyScalable);
}

#[test]
fn unique_common_neighbor_examples() {
    let star = FrameGraph::star(3);
    let r = filter_unique_common_neighbor(&star, 3);
    assert_eq!(r.certificate, Some(Certificate::CommonNeighbor { u: 1, v: 2, w: 0 }));
    let json = serde_json::to_value(r.certificate.clone().unwrap()).unwrap();
    assert_eq!(json, serde_json::json!({"kind": "common_neighbor", "u": 2, "v": 3, "w": 1}));
    assert_eq!(verdict_of(r, &star, 3), Verdict::NotStrictlyScalable);
    let c4 = FrameGraph::cycle(4);
    assert_eq!(verdict_of(filter_unique_common_neighbor(&c4, 2), &c4, 2), Verdict::Inconclusive);
    let c5 = FrameGraph::cycle(5);
    assert_eq!(
        verdict_of(filter_unique_common_neighbor(&c5, 3), &c5, 3),
        Verdict::NotStrictlyScalable
    );
}

#[test]
fn leaf_bridge_examples() {
    let p3 = FrameGraph::path(3);
    let r = filter_leaf_bridge(&p3, 2);
    assert_eq!(r.certificate, Some(Certificate::Leaf { vertex: 0, neighbor: 1 }));
    assert_eq!(verdict_of(r, &p3, 2), Verdict::NotStrictlyScalable);
    let b = bowtie();
    assert_eq!(verdict_of(filter_leaf_bridge(&b, 3), &b, 3), Verdict::Inconclusive);
    assert!(!filter_leaf_bridge(&k2k2(), 2).applicable);
    // two triangles joined by an edge: a bridge but no leaf
    let g = FrameGraph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)])
        .unwrap();
    let r = filter_leaf_bridge(&g, 4);
    assert_eq!(r.certificate, Some(Certificate::Bridge { u: 2, v: 3 }));
    assert_replays(&r, &g, 4);
}

#[test]
fn tree_examples() {
    let p4 = FrameGraph::path(4);
    assert_eq!(verdict_of(filter_tree(&p4, 3), &p4, 3), Verdict::NotStrictlyScalable);
    let c4 = FrameGraph::cycle(4);
    assert_eq!(verdict_of(filter_tree(&c4, 3), &c4, 3), Verdict::Inconclusive);
    let star = FrameGraph::star(3);
    assert_eq!(verdict_of(filter_tree(&star, 3), &star, 3), Verdict::NotStrictlyScalable);
}

#[test]
fn induced_path_examples() {
    let p6 = FrameGraph::path(6);
    let r = filter_induced_path(&p6, 4);
    assert!(r.experimental);
    assert_eq!(
        r.certificate,
        Some(Certificate::InducedPath { vertices: vec![0, 1, 2, 3, 4, 5], threshold: 4 })
    );
    assert_eq!(verdict_of(r, &p6, 4), Verdict::NotStrictlyScalable);
    assert_eq!(filter_induced_path(&FrameGraph::path(3), 4).verdict, Verdict::Inconclusive);
    let k5 = FrameGraph::complete(5);
    assert_eq!(verdict_of(filter_induced_path(&k5, 4), &k5, 4), Verdict::Inconclusive);
}

#[test]
fn experimental_filter_is_excluded_by_default() {
    // P6 in R^6: only the induced-path filter and the path structure fire
    let p6 = FrameGraph::path(6);
    let run = run_all_filters(&p6, 4, &FilterConfig::default());
    assert_eq!(run.report("filter_induced_path").unwrap().verdict, Verdict::NotStrictlyScalable);
    // the cube Q3 has an induced path on 5 vertices but passes every other filter
    let edges: Vec<_> = (0..8usize)
        .flat_map(|a| (0..3).map(move |b| (a, a ^ (1 << b))))
        .filter(|&(a, b)| a < b)
        .collect();
    let q3 = FrameGraph::from_edges(8, &edges).unwrap();
    let run = run_all_filters(&q3, 4, &FilterConfig::default());
    assert_eq!(run.report("filter_induced_path").unwrap().verdict, Verdict::NotStrictlyScalable);
    assert_eq!(run.verdict, Verdict::Inconclusive);
    let enabled = FilterConfig { enable_experimental: true, ..FilterConfig::default() };
    assert_eq!(run_all_filters(&q3, 4, &enabled).verdict, Verdict::NotStrictlyScalable);
    let offset = FilterConfig { induced_path_offset: 5, ..FilterConfig::default() };
    let run = run_all_filters(&q3, 4, &offset);
    assert_eq!(run.report("filter_induced_path").unwrap().verdict, Verdict::Inconclusive);
}

#[test]
fn cycle_examples() {
    let c7 = FrameGraph::cycle(7);
    let r = filter_cycle(&c7, 7);
    assert_eq!(
        r.certificate,
        Some(Certificate::Cycle { vertices: (0..7).collect() })
    );
    assert_eq!(verdict_of(r, &c7, 7), Verdict::NotScalable);
    assert_eq!(verdict_of(filter_cycle(&c7, 5), &c7, 5), Verdict::NotScalable);
    assert_eq!(verdict_of(filter_cycle(&c7, 6), &c7, 6), Verdict::NotScalable);
    assert!(!filter_cycle(&c7, 4).applicable);
    assert!(!filter_cycle(&FrameGraph::cycle(5), 5).applicable);
}

#[test]
fn adjacent_dependence_examples() {
    let f = Frame::new(2, vec![vec![1.0, 0.0], vec![2.0, 0.0], vec![0.0, 1.0]]).unwrap();
    let g = build_graph(&f, 1e-10);
    assert!(filter_adjacent_dependence(&f, &g, 1e-10).is_empty());
    let f = Frame::new(
        3,
        vec![vec![1.0, 0.0, 0.0], vec![2.0, 0.0, 0.0], vec![0.7e-10, 1.0, 0.0], vec![0.0, 0.0, 1.0]],
    )
    .unwrap();
    let g = build_graph(&f, 1e-10);
    assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
    assert_eq!(
        filter_adjacent_dependence(&f, &g, 1e-10),
        vec![Warning::DependenceMismatch { u: 0, v: 1 }]
    );
}

#[test]
fn combined_verdicts() {
    let run = run_frame_filters(&m1(), 0.0, &FilterConfig::default());
    assert_eq!(run.verdict, Verdict::NotScalable);
    assert_eq!(run.decisive().next().unwrap().filter_id, "filter_square_nonempty");

    let g = g_of(&m_joined());
    let run = run_all_filters(&g, 4, &FilterConfig::default());
    assert_eq!(run.verdict, Verdict::Inconclusive);
    assert_eq!(run.decisive().count(), 0);

    let run = run_all_filters(&FrameGraph::empty(4), 4, &FilterConfig::default());
    assert_eq!(run.verdict, Verdict::Inconclusive);
    assert_eq!(run.warnings.len(), 4);
}

#[test]
fn m2_fires_expected_filters() {
    let g = g_of(&m2());
    let run = run_all_filters(&g, 4, &FilterConfig::default());
    assert_eq!(run.verdict, Verdict::NotScalable);
    let fired: Vec<_> = run.decisive().map(|r| r.filter_id).collect();
    assert_eq!(
        fired,
        vec![
            "filter_square_nonempty",
            "filter_alpha",
            "filter_bipartite_balance",
            "filter_unique_common_neighbor",
            "filter_leaf_bridge",
            "filter_tree",
        ]
    );
    for r in &run.reports {
        assert_replays(r, &g, 4);
    }
}

#[test]
fn joined_matrix_in_dimension_seven_fails_alpha() {
    let g = g_of(&m_joined());
    let run = run_all_filters(&g, 7, &FilterConfig::default());
    let alpha = run.report("filter_alpha").unwrap();
    assert_eq!(alpha.verdict, Verdict::NotStrictlyScalable);
    assert_eq!(
        alpha.certificate,
        Some(Certificate::IndependentSet { vertices: vec![5, 6, 7], bound: 1 })
    );
    assert_replays(alpha, &g, 7);
}

#[test]
fn isolated_vectors_do_not_trigger_filters() {
    // e1, e2, e3/√2, e3/√2 is Parseval
    let h = 0.5f64.sqrt();
    let f = Frame::new(
        3,
        vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, h], vec![0.0, 0.0, h]],
    )
    .unwrap();
    let run = run_frame_filters(&f, 1e-10, &FilterConfig::default());
    assert_eq!(run.verdict, Verdict::Inconclusive);
    assert_eq!(run.reduction.m, 2);
    assert_eq!(run.reduction.n, 1);
    // e1, e2, e3 is an orthonormal basis
    let run = run_frame_filters(&Frame::<f64>::standard_basis(3), 1e-10, &FilterConfig::default());
    assert_eq!(run.verdict, Verdict::Inconclusive);
}

#[test]
fn inconsistent_graph_only_input_is_not_filtered() {
    let run = run_all_filters(&FrameGraph::complete(3), 5, &FilterConfig::default());
    assert!(run.reports.iter().all(|r| !r.applicable));
    assert!(run
        .warnings
        .iter()
        .any(|w| matches!(w, Warning::InconsistentReduction { .. })));
}

#[test]
fn report_order_is_fixed() {
    let run = run_all_filters(&FrameGraph::cycle(6), 4, &FilterConfig::default());
    let ids: Vec<_> = run.reports.iter().map(|r| r.filter_id).collect();
    assert_eq!(ids, FILTER_ORDER.to_vec());
}

#[test]
fn tampered_certificates_are_rejected() {
    let star = FrameGraph::star(3);
    let mut r = filter_unique_common_neighbor(&star, 3);
    r.certificate = Some(Certificate::CommonNeighbor { u: 0, v: 1, w: 2 });
    assert!(!recheck(&r, &star, 3));
    let mut r = filter_alpha(&star, 3);
    r.certificate = Some(Certificate::IndependentSet { vertices: vec![0, 1], bound: 1 });
    assert!(!recheck(&r, &star, 3));
}
