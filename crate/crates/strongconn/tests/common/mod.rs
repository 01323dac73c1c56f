//! Fixtures and instance generation shared by the integration tests.

#![allow(dead_code)]

use strongconn::graph_core::{parse_digraph_str, Digraph};
use strongconn::oracle::{random_strongly_connected_digraph, RandomSpec};

/// The 5-cycle `0 -> 1 -> 2 -> 3 -> 4 -> 0`.
pub const CYCLE5: &str = "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n";
/// Two triangles sharing vertex 0.
pub const FIG8: &str = "5 6\n0 1\n1 2\n2 0\n0 3\n3 4\n4 0\n";
/// The bidirected triangle.
pub const BITRI: &str = "3 6\n0 1\n1 0\n1 2\n2 1\n2 0\n0 2\n";

pub fn fixture(text: &str) -> Digraph {
    parse_digraph_str(text).expect("fixture parses")
}

/// Random strongly connected digraph with `2 <= n <= max_n` and `n <= m <= max_m`.
pub fn instance(seed: u64, max_n: usize, max_m: usize) -> Digraph {
    random_strongly_connected_digraph(RandomSpec::sample(seed, max_n, max_m))
        .expect("sampled spec is feasible")
}

/// Sorted pair list of a partition for comparisons.
pub fn sorted_sizes(components: &[Vec<usize>]) -> Vec<usize> {
    let mut sizes: Vec<usize> = components.iter().map(Vec::len).collect();
    sizes.sort_unstable();
    sizes
}
