//! Brute-force reference answers and random instance generation.
//!
//! Everything here works from reachability sets recomputed after each deletion and
//! uses nothing from the dominator or loop nesting machinery, so it can serve as
//! ground truth for the fast algorithms.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph_core::{Digraph, SccPartition, NONE};

/// Largest vertex count accepted by the clique-based block oracle.
pub const MAX_BLOCK_ORACLE_N: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("cannot build a strongly connected digraph with n = {n} and m = {m}")]
    Infeasible { n: usize, m: usize },
    #[error("block oracle supports at most {max} vertices, got {n}")]
    TooLarge { n: usize, max: usize },
}

/// What to remove before recomputing components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Deletion {
    Nothing,
    Edge(usize),
    Vertex(usize),
}

/// Strongly connected components from pairwise reachability after a deletion.
pub fn closure_sccs(g: &Digraph, deletion: Deletion) -> SccPartition {
    let n = g.n();
    let skip_vertex = match deletion {
        Deletion::Vertex(u) => Some(u),
        _ => None,
    };
    let skip_edge = match deletion {
        Deletion::Edge(e) => Some(e),
        _ => None,
    };
    let reach: Vec<Vec<bool>> = (0..n)
        .map(|src| {
            let mut seen = vec![false; n];
            if Some(src) == skip_vertex {
                return seen;
            }
            seen[src] = true;
            let mut stack = vec![src];
            while let Some(v) = stack.pop() {
                for &e in g.out_edges(v) {
                    let w = g.edge(e).1;
                    if Some(e) == skip_edge || Some(w) == skip_vertex || seen[w] {
                        continue;
                    }
                    seen[w] = true;
                    stack.push(w);
                }
            }
            seen
        })
        .collect();
    let mut labels = vec![NONE; n];
    for v in 0..n {
        if Some(v) == skip_vertex || labels[v] != NONE {
            continue;
        }
        for w in v..n {
            if reach[v][w] && reach[w][v] {
                labels[w] = v;
            }
        }
    }
    SccPartition::from_labels(&labels, skip_vertex)
}

pub fn oracle_sccs_after_edge(g: &Digraph, e: usize) -> SccPartition {
    closure_sccs(g, Deletion::Edge(e))
}

pub fn oracle_sccs_after_vertex(g: &Digraph, u: usize) -> SccPartition {
    closure_sccs(g, Deletion::Vertex(u))
}

/// Edges whose removal increases the number of strongly connected components.
pub fn oracle_strong_bridges(g: &Digraph) -> Vec<usize> {
    let base = closure_sccs(g, Deletion::Nothing).count();
    (0..g.m())
        .filter(|&e| oracle_sccs_after_edge(g, e).count() > base)
        .collect()
}

/// Vertices whose removal increases the number of strongly connected components.
pub fn oracle_strong_articulation_points(g: &Digraph) -> Vec<usize> {
    let base = closure_sccs(g, Deletion::Nothing).count();
    (0..g.n())
        .filter(|&u| oracle_sccs_after_vertex(g, u).count() > base)
        .collect()
}

/// Component labelings of the graph after every single-edge and single-vertex deletion.
pub struct DeletionTable<'a> {
    g: &'a Digraph,
    base: SccPartition,
    after_edge: Vec<SccPartition>,
    after_vertex: Vec<SccPartition>,
}

impl<'a> DeletionTable<'a> {
    pub fn new(g: &'a Digraph) -> Self {
        DeletionTable {
            g,
            base: closure_sccs(g, Deletion::Nothing),
            after_edge: (0..g.m()).map(|e| oracle_sccs_after_edge(g, e)).collect(),
            after_vertex: (0..g.n()).map(|u| oracle_sccs_after_vertex(g, u)).collect(),
        }
    }

    pub fn after_edge(&self, e: usize) -> &SccPartition {
        &self.after_edge[e]
    }

    pub fn after_vertex(&self, u: usize) -> &SccPartition {
        &self.after_vertex[u]
    }

    /// Edges whose removal puts `x` and `y` in different components, ascending.
    pub fn separating_edges(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.g.m())
            .filter(|&e| self.after_edge[e].component_of[x] != self.after_edge[e].component_of[y])
            .collect()
    }

    /// Vertices other than `x`, `y` whose removal separates `x` and `y`, ascending.
    pub fn separating_vertices(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.g.n())
            .filter(|&u| u != x && u != y)
            .filter(|&u| {
                self.after_vertex[u].component_of[x] != self.after_vertex[u].component_of[y]
            })
            .collect()
    }

    pub fn edge_separates(&self, e: usize, x: usize, y: usize) -> bool {
        self.after_edge[e].component_of[x] != self.after_edge[e].component_of[y]
    }

    pub fn vertex_separates(&self, u: usize, x: usize, y: usize) -> bool {
        self.after_vertex[u].component_of[x] != self.after_vertex[u].component_of[y]
    }

    fn related(&self, kind: BlockKind, x: usize, y: usize) -> bool {
        if self.base.component_of[x] != self.base.component_of[y] {
            return false;
        }
        let edge_ok = || self.separating_edges(x, y).is_empty();
        let vertex_ok = || self.separating_vertices(x, y).is_empty();
        match kind {
            BlockKind::TwoEdge => edge_ok(),
            BlockKind::VertexResilient => vertex_ok(),
            BlockKind::TwoVertex => edge_ok() && vertex_ok(),
        }
    }

    /// Maximal vertex sets of size at least two that are pairwise related.
    pub fn blocks(&self, kind: BlockKind) -> Result<Vec<Vec<usize>>, OracleError> {
        let n = self.g.n();
        if n > MAX_BLOCK_ORACLE_N {
            return Err(OracleError::TooLarge {
                n,
                max: MAX_BLOCK_ORACLE_N,
            });
        }
        let mut adj = vec![0u64; n];
        for x in 0..n {
            for y in x + 1..n {
                if self.related(kind, x, y) {
                    adj[x] |= 1 << y;
                    adj[y] |= 1 << x;
                }
            }
        }
        let mut cliques = Vec::new();
        bron_kerbosch(&adj, 0, (1u64 << n) - 1, 0, &mut cliques);
        let mut blocks: Vec<Vec<usize>> = cliques
            .into_iter()
            .filter(|c: &u64| c.count_ones() >= 2)
            .map(|c| (0..n).filter(|&v| c >> v & 1 == 1).collect())
            .collect();
        blocks.sort();
        Ok(blocks)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockKind {
    TwoEdge,
    VertexResilient,
    TwoVertex,
}

/// Blocks of the given kind by maximal-clique extraction over the pairwise relation.
pub fn oracle_blocks(g: &Digraph, kind: BlockKind) -> Result<Vec<Vec<usize>>, OracleError> {
    if g.n() > MAX_BLOCK_ORACLE_N {
        return Err(OracleError::TooLarge {
            n: g.n(),
            max: MAX_BLOCK_ORACLE_N,
        });
    }
    DeletionTable::new(g).blocks(kind)
}

fn bron_kerbosch(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 && x == 0 {
        out.push(r);
        return;
    }
    let pivot = (p | x).trailing_zeros() as usize;
    let mut candidates = p & !adj[pivot];
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        let bit = 1u64 << v;
        bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], out);
        p &= !bit;
        x |= bit;
        candidates &= !bit;
    }
}

/// Parameters of a random strongly connected digraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomSpec {
    pub n: usize,
    pub m: usize,
    pub seed: u64,
}

impl RandomSpec {
    /// Draws `n` in `2..=max_n` and `m` in `n..=max(n, max_m)` from `seed`.
    pub fn sample(seed: u64, max_n: usize, max_m: usize) -> RandomSpec {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
        let n = rng.random_range(2..=max_n.max(2));
        let m = rng.random_range(n..=max_m.max(n));
        RandomSpec { n, m, seed }
    }
}

/// A random Hamiltonian cycle plus `m - n` random extra edges, in shuffled order.
/// Parallel edges may occur; self-loops never do.
pub fn random_strongly_connected_digraph(spec: RandomSpec) -> Result<Digraph, OracleError> {
    let RandomSpec { n, m, seed } = spec;
    if m < n || (n == 1 && m > 0) {
        return Err(OracleError::Infeasible { n, m });
    }
    if n == 0 {
        return Ok(Digraph::new(0, []).expect("empty graph is valid"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (perm[i], perm[(i + 1) % n])).collect();
    for _ in n..m {
        let t = rng.random_range(0..n);
        let mut h = rng.random_range(0..n - 1);
        if h >= t {
            h += 1;
        }
        edges.push((t, h));
    }
    edges.shuffle(&mut rng);
    Ok(Digraph::new(n, edges).expect("endpoints are in range"))
}

/// Directed cycle `0 -> 1 -> ... -> n-1 -> 0`.
pub fn directed_cycle(n: usize) -> Digraph {
    Digraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("endpoints are in range")
}
