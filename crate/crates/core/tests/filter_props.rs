use framescale::corpus::random_frame;
use framescale::filters::{recheck, run_all_filters, run_frame_filters, FilterConfig, Verdict};
use framescale::graph::{build_graph, FrameGraph};
use framescale::linalg::random_parseval;
use proptest::prelude::*;

fn graph_and_dim() -> impl Strategy<Value = (FrameGraph, usize)> {
    (1usize..=9).prop_flat_map(|m| {
        let pairs = m * (m - 1) / 2;
        (prop::collection::vec(any::<bool>(), pairs), 1..=m + 1).prop_map(move |(bits, n)| {
            let mut edges = Vec::new();
            let mut k = 0;
            for i in 0..m {
                for j in i + 1..m {
                    if bits[k] {
                        edges.push((i, j));
                    }
                    k += 1;
                }
            }
            (FrameGraph::from_edges(m, &edges).unwrap(), n)
        })
    })
}

fn all_filters() -> FilterConfig {
    FilterConfig { enable_experimental: true, ..FilterConfig::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn certificates_replay((g, n) in graph_and_dim()) {
        let run = run_all_filters(&g, n, &all_filters());
        for r in &run.reports {
            prop_assert!(recheck(r, &g, n), "{} did not replay on {:?} with n = {}", r.filter_id, g.edges(), n);
        }
    }

    #[test]
    fn graph_only_runs_are_deterministic((g, n) in graph_and_dim()) {
        let a = run_all_filters(&g, n, &FilterConfig::default());
        prop_assert_eq!(&a, &run_all_filters(&g, n, &FilterConfig::default()));
    }

    #[test]
    fn combined_verdict_is_the_strongest_counted_one((g, n) in graph_and_dim()) {
        let with = run_all_filters(&g, n, &all_filters());
        let without = run_all_filters(&g, n, &FilterConfig::default());
        prop_assert_eq!(&with.reports, &without.reports);
        let strongest = |stable_only: bool| {
            with.reports
                .iter()
                .filter(|r| !(stable_only && r.experimental))
                .map(|r| r.verdict)
                .max()
                .unwrap_or(Verdict::Inconclusive)
        };
        prop_assert_eq!(with.verdict, strongest(false));
        prop_assert_eq!(without.verdict, strongest(true));
    }

    #[test]
    fn frame_runs_match_graph_runs(seed in 0u64..5000, n in 2usize..=5, extra in 0usize..=3) {
        let frame = random_frame(n + extra, n, seed).unwrap();
        let from_frame = run_frame_filters(&frame, 0.0, &FilterConfig::default());
        let from_graph = run_all_filters(&build_graph(&frame, 0.0), n, &FilterConfig::default());
        prop_assert_eq!(from_frame.reports, from_graph.reports);
        prop_assert_eq!(from_frame.verdict, from_graph.verdict);
    }

    #[test]
    fn parseval_frames_pass_every_stable_filter(seed in 0u64..5000, n in 1usize..=5, extra in 0usize..=4) {
        let frame = random_parseval(n + extra, n, seed).unwrap();
        let run = run_frame_filters(&frame, 1e-10, &FilterConfig::default());
        prop_assert_eq!(run.verdict, Verdict::Inconclusive, "{:?}", run.decisive().map(|r| r.filter_id).collect::<Vec<_>>());
    }
}
