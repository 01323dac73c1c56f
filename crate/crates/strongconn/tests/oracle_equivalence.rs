//! Every per-edge and per-vertex answer of the index against delete-and-recompute.

mod common;

use proptest::prelude::*;
use strongconn::edge_analytics::{
    aggregate_all_edges, build_index, count_sccs_all_edges, edge_reports, lscc_all_edges,
    report_sccs_after_edge, Extreme,
};
use strongconn::graph_core::SccPartition;
use strongconn::oracle::{
    directed_cycle, oracle_strong_articulation_points, oracle_strong_bridges, DeletionTable,
};
use strongconn::vertex_analytics::{
    aggregate_all_vertices, count_sccs_all_vertices, lscc_all_vertices, report_sccs_after_vertex,
    strong_articulation_points, vertex_reports,
};

use common::instance;

fn sum_of_squares(p: &SccPartition) -> i64 {
    p.components
        .iter()
        .map(|c| (c.len() * c.len()) as i64)
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn edge_answers_match_deletion(seed in any::<u64>(), start in 0usize..10) {
        let g = instance(seed, 10, 30);
        let ix = build_index(g.clone(), start % g.n()).unwrap();
        let table = DeletionTable::new(&g);
        let counts = count_sccs_all_edges(&ix);
        let largest = lscc_all_edges(&ix, Extreme::Largest);
        let smallest = lscc_all_edges(&ix, Extreme::Smallest);
        let squares = aggregate_all_edges(&ix, |w| (w * w) as i64, |a, b| a + b, |a, b| a - b, 0i64);
        let reports = edge_reports(&ix);
        for e in 0..g.m() {
            let expected = table.after_edge(e);
            prop_assert_eq!(&report_sccs_after_edge(&ix, e).unwrap(), expected);
            prop_assert_eq!(counts[e], expected.count());
            prop_assert_eq!(largest[e], expected.largest());
            prop_assert_eq!(smallest[e], expected.smallest());
            prop_assert_eq!(squares[e], sum_of_squares(expected));
            prop_assert_eq!(reports[e].scc_count, counts[e]);
        }
        prop_assert_eq!(ix.strong_bridges(), oracle_strong_bridges(&g));
    }

    #[test]
    fn vertex_answers_match_deletion(seed in any::<u64>(), start in 0usize..10) {
        let g = instance(seed, 10, 30);
        let ix = build_index(g.clone(), start % g.n()).unwrap();
        let table = DeletionTable::new(&g);
        let counts = count_sccs_all_vertices(&ix);
        let largest = lscc_all_vertices(&ix, Extreme::Largest);
        let smallest = lscc_all_vertices(&ix, Extreme::Smallest);
        let squares = aggregate_all_vertices(&ix, |w| (w * w) as i64, |a, b| a + b, |a, b| a - b, 0i64);
        let reports = vertex_reports(&ix);
        for u in 0..g.n() {
            let expected = table.after_vertex(u);
            prop_assert_eq!(&report_sccs_after_vertex(&ix, u).unwrap(), expected);
            prop_assert_eq!(counts[u], expected.count());
            prop_assert_eq!(largest[u], expected.largest());
            prop_assert_eq!(smallest[u], expected.smallest());
            prop_assert_eq!(squares[u], sum_of_squares(expected));
            prop_assert_eq!(reports[u].largest, largest[u]);
        }
        prop_assert_eq!(strong_articulation_points(&ix), oracle_strong_articulation_points(&g));
    }

    #[test]
    fn denser_graphs_match_deletion(seed in any::<u64>()) {
        let g = instance(seed, 7, 40);
        let ix = build_index(g.clone(), 0).unwrap();
        let table = DeletionTable::new(&g);
        for e in 0..g.m() {
            prop_assert_eq!(&report_sccs_after_edge(&ix, e).unwrap(), table.after_edge(e));
        }
        for u in 0..g.n() {
            prop_assert_eq!(&report_sccs_after_vertex(&ix, u).unwrap(), table.after_vertex(u));
        }
    }
}

#[test]
fn cycles_lose_every_vertex_to_singletons() {
    for n in 2..=12 {
        let ix = build_index(directed_cycle(n), n / 2).unwrap();
        assert_eq!(count_sccs_all_vertices(&ix), vec![n - 1; n], "n = {n}");
        assert_eq!(count_sccs_all_edges(&ix), vec![n; n], "n = {n}");
        assert_eq!(
            lscc_all_vertices(&ix, Extreme::Largest),
            vec![1; n],
            "n = {n}"
        );
    }
}
