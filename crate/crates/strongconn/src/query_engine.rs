//! Pairwise queries: 2-edge and 2-vertex connectivity with witnesses, constant-time
//! membership tests, and output-sensitive enumeration of separating edges and vertices.
//!
//! For a pair `x, y` let `w = nca_H(x, y)`. A bridge entering `v` in the dominator
//! tree separates the pair iff `v` is an ancestor of `x` or `y` and `w` is not in
//! `D(v)`; a vertex `u` separates it iff `u` is an ancestor of `x` or `y` and `w` is
//! not a proper descendant of `u`. The same holds in the reverse orientation, and an
//! element separates the pair iff it does so in either orientation. Both conditions are
//! monotone along tree paths, so enumeration walks up from `x` and `y` and stops at the
//! first failure.

use crate::edge_analytics::{ConnectivityIndex, IndexError};
use crate::flow_forest::NcaIndex;
use crate::frame::Side;
use crate::graph_core::NONE;

/// A separating element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Witness {
    Edge(usize),
    Vertex(usize),
}

/// Result of a pairwise connectivity test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeparationAnswer {
    pub connected: bool,
    /// A separating element, present iff the pair is not connected.
    pub witness: Option<Witness>,
}

impl SeparationAnswer {
    fn from_witness(witness: Option<Witness>) -> Self {
        SeparationAnswer {
            connected: witness.is_none(),
            witness,
        }
    }
}

/// Per-caller query state: stamp arrays for deduplication and a tree-step counter.
pub struct QueryHandle<'a> {
    ix: &'a ConnectivityIndex,
    edge_mark: Vec<usize>,
    vertex_mark: Vec<usize>,
    epoch: usize,
    steps: usize,
}

impl<'a> QueryHandle<'a> {
    pub fn new(ix: &'a ConnectivityIndex) -> Self {
        QueryHandle {
            ix,
            edge_mark: vec![0; ix.m()],
            vertex_mark: vec![0; ix.n()],
            epoch: 0,
            steps: 0,
        }
    }

    pub fn index(&self) -> &'a ConnectivityIndex {
        self.ix
    }

    /// Tree steps taken by the most recent query.
    pub fn last_steps(&self) -> usize {
        self.steps
    }

    fn begin(&mut self) {
        self.epoch += 1;
        self.steps = 0;
    }

    fn check_pair(&self, x: usize, y: usize) -> Result<(), IndexError> {
        self.ix.check_vertex(x)?;
        self.ix.check_vertex(y)?;
        if x == y {
            return Err(IndexError::SameVertex { vertex: x });
        }
        Ok(())
    }

    fn sides(&self) -> [(&'a Side, &'a NcaIndex); 2] {
        [
            (&self.ix.frame.fwd, &self.ix.nca_h),
            (&self.ix.frame.rev, &self.ix.nca_hr),
        ]
    }

    /// Strong bridges whose deletion separates `x` and `y`, ascending.
    pub fn separating_edges(&mut self, x: usize, y: usize) -> Result<Vec<usize>, IndexError> {
        self.check_pair(x, y)?;
        self.begin();
        Ok(self.edges_between(x, y, usize::MAX))
    }

    fn edges_between(&mut self, x: usize, y: usize, limit: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (side, nca) in self.sides() {
            let w = nca.nca(x, y).expect("loop nesting tree is connected");
            for start in [x, y] {
                if out.len() >= limit {
                    break;
                }
                self.walk_edges(side, w, start, limit - out.len(), &mut out);
            }
            self.epoch += 1;
            for &e in &out {
                self.edge_mark[e] = self.epoch;
            }
        }
        out.sort_unstable();
        out
    }

    fn walk_edges(&mut self, side: &Side, w: usize, x: usize, limit: usize, out: &mut Vec<usize>) {
        let mut z = side.root_of[x];
        let mut found = 0;
        while found < limit && side.is_bridge(z) && !side.d.is_ancestor(z, w) {
            self.steps += 1;
            if self.vertex_mark[z] == self.epoch {
                break;
            }
            self.vertex_mark[z] = self.epoch;
            let e = side.bridge[z];
            if self.edge_mark[e] != self.epoch {
                self.edge_mark[e] = self.epoch;
                out.push(e);
                found += 1;
            }
            z = side.compressed_parent(z);
        }
    }

    /// Whether deleting edge `e` separates `x` and `y`.
    pub fn edge_separates(&self, e: usize, x: usize, y: usize) -> Result<bool, IndexError> {
        self.ix.check_edge(e)?;
        self.check_pair(x, y)?;
        let (f, r) = self.ix.heads(e);
        let [(fs, fn_), (rs, rn)] = self.sides();
        let test = |side: &Side, nca: &NcaIndex, v: usize| {
            if v == NONE {
                return false;
            }
            let w = nca.nca(x, y).expect("loop nesting tree is connected");
            (side.d.is_ancestor(v, x) || side.d.is_ancestor(v, y)) && !side.d.is_ancestor(v, w)
        };
        Ok(test(fs, fn_, f) || test(rs, rn, r))
    }

    /// Whether `x` and `y` are 2-edge-connected, with a separating edge otherwise.
    pub fn are_2ec(&mut self, x: usize, y: usize) -> Result<SeparationAnswer, IndexError> {
        self.check_pair(x, y)?;
        self.begin();
        let found = self.edges_between(x, y, 1);
        Ok(SeparationAnswer::from_witness(
            found.first().map(|&e| Witness::Edge(e)),
        ))
    }

    /// Vertices other than `x` and `y` whose deletion separates them, ascending.
    pub fn separating_vertices(&mut self, x: usize, y: usize) -> Result<Vec<usize>, IndexError> {
        self.check_pair(x, y)?;
        self.begin();
        Ok(self.vertices_between(x, y, usize::MAX))
    }

    fn vertices_between(&mut self, x: usize, y: usize, limit: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (side, nca) in self.sides() {
            let w = nca.nca(x, y).expect("loop nesting tree is connected");
            let epoch = self.epoch;
            for start in [x, y] {
                let mut z = side.d.parent(start).unwrap_or(NONE);
                while z != NONE && out.len() < limit && !side.d.is_proper_ancestor(z, w) {
                    self.steps += 1;
                    if self.vertex_mark[z] == epoch {
                        break;
                    }
                    self.vertex_mark[z] = epoch;
                    if z != x && z != y {
                        out.push(z);
                    }
                    z = side.d.parent(z).unwrap_or(NONE);
                }
            }
            self.epoch += 1;
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Whether deleting vertex `u` separates `x` and `y`.
    pub fn vertex_separates(&self, u: usize, x: usize, y: usize) -> Result<bool, IndexError> {
        self.ix.check_vertex(u)?;
        self.check_pair(x, y)?;
        if u == x || u == y {
            return Err(IndexError::EndpointNotAllowed { vertex: u });
        }
        Ok(self.sides().iter().any(|&(side, nca)| {
            let w = nca.nca(x, y).expect("loop nesting tree is connected");
            (side.d.is_ancestor(u, x) || side.d.is_ancestor(u, y))
                && !side.d.is_proper_ancestor(u, w)
        }))
    }

    /// Whether `x` and `y` are 2-vertex-connected, with a separating vertex or edge
    /// otherwise.
    pub fn are_2vc(&mut self, x: usize, y: usize) -> Result<SeparationAnswer, IndexError> {
        self.check_pair(x, y)?;
        self.begin();
        let resilient = self.ix.block_forest().same_block(x, y);
        let vertex = if resilient {
            None
        } else {
            self.vertices_between(x, y, 1).first().copied()
        };
        debug_assert_eq!(resilient, vertex.is_none());
        if let Some(u) = vertex {
            return Ok(SeparationAnswer::from_witness(Some(Witness::Vertex(u))));
        }
        let edge = self.edges_between(x, y, 1);
        Ok(SeparationAnswer::from_witness(
            edge.first().map(|&e| Witness::Edge(e)),
        ))
    }
}

pub fn are_2ec(ix: &ConnectivityIndex, x: usize, y: usize) -> Result<SeparationAnswer, IndexError> {
    QueryHandle::new(ix).are_2ec(x, y)
}

pub fn are_2vc(ix: &ConnectivityIndex, x: usize, y: usize) -> Result<SeparationAnswer, IndexError> {
    QueryHandle::new(ix).are_2vc(x, y)
}

pub fn edge_separates(
    ix: &ConnectivityIndex,
    e: usize,
    x: usize,
    y: usize,
) -> Result<bool, IndexError> {
    QueryHandle::new(ix).edge_separates(e, x, y)
}

pub fn vertex_separates(
    ix: &ConnectivityIndex,
    u: usize,
    x: usize,
    y: usize,
) -> Result<bool, IndexError> {
    QueryHandle::new(ix).vertex_separates(u, x, y)
}

pub fn separating_edges(
    ix: &ConnectivityIndex,
    x: usize,
    y: usize,
) -> Result<Vec<usize>, IndexError> {
    QueryHandle::new(ix).separating_edges(x, y)
}

pub fn separating_vertices(
    ix: &ConnectivityIndex,
    x: usize,
    y: usize,
) -> Result<Vec<usize>, IndexError> {
    QueryHandle::new(ix).separating_vertices(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edge_analytics::build_index;
    use crate::graph_core::Digraph;
    use crate::oracle::{
        directed_cycle, random_strongly_connected_digraph, DeletionTable, RandomSpec,
    };

    fn fig8() -> Digraph {
        Digraph::new(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap()
    }

    fn bitri() -> Digraph {
        Digraph::new(3, [(0, 1), (1, 0), (1, 2), (2, 1), (2, 0), (0, 2)]).unwrap()
    }

    #[test]
    fn fixture_queries() {
        let ix = build_index(fig8(), 0).unwrap();
        assert_eq!(separating_edges(&ix, 1, 2).unwrap(), vec![0, 1, 2]);
        assert_eq!(separating_vertices(&ix, 1, 2).unwrap(), vec![0]);
        assert!(!edge_separates(&ix, 3, 1, 2).unwrap());
        assert!(edge_separates(&ix, 1, 1, 2).unwrap());
        let a = are_2ec(&ix, 1, 2).unwrap();
        assert!(!a.connected);
        assert!(matches!(a.witness, Some(Witness::Edge(0..=2))));

        let ix = build_index(directed_cycle(5), 0).unwrap();
        assert_eq!(separating_edges(&ix, 0, 2).unwrap(), vec![0, 1, 2, 3, 4]);
        assert_eq!(separating_vertices(&ix, 0, 2).unwrap(), vec![1, 3, 4]);
        assert!(!are_2ec(&ix, 0, 2).unwrap().connected);

        let ix = build_index(bitri(), 0).unwrap();
        assert!(are_2ec(&ix, 0, 1).unwrap().connected);
        assert!(are_2vc(&ix, 0, 1).unwrap().connected);
        assert!(separating_edges(&ix, 0, 2).unwrap().is_empty());
        for e in 0..6 {
            assert!(!edge_separates(&ix, e, 0, 1).unwrap());
        }
    }

    #[test]
    fn argument_errors() {
        let ix = build_index(fig8(), 0).unwrap();
        assert_eq!(
            are_2ec(&ix, 1, 1),
            Err(IndexError::SameVertex { vertex: 1 })
        );
        assert_eq!(
            vertex_separates(&ix, 1, 1, 2),
            Err(IndexError::EndpointNotAllowed { vertex: 1 })
        );
        assert_eq!(
            separating_edges(&ix, 0, 9),
            Err(IndexError::VertexOutOfRange { vertex: 9, n: 5 })
        );
        assert_eq!(
            edge_separates(&ix, 6, 0, 1),
            Err(IndexError::EdgeOutOfRange { edge: 6, m: 6 })
        );
    }

    #[test]
    fn random_instances_match_brute_force() {
        for seed in 0..100 {
            let g = random_strongly_connected_digraph(RandomSpec::sample(seed, 9, 24)).unwrap();
            let ix = build_index(g.clone(), 0).unwrap();
            let table = DeletionTable::new(&g);
            let mut q = QueryHandle::new(&ix);
            for x in 0..g.n() {
                for y in 0..g.n() {
                    if x == y {
                        continue;
                    }
                    let edges = table.separating_edges(x, y);
                    let vertices = table.separating_vertices(x, y);
                    assert_eq!(
                        q.separating_edges(x, y).unwrap(),
                        edges,
                        "seed {seed} pair {x} {y}"
                    );
                    assert_eq!(
                        q.separating_vertices(x, y).unwrap(),
                        vertices,
                        "seed {seed} pair {x} {y}"
                    );
                    for e in 0..g.m() {
                        assert_eq!(q.edge_separates(e, x, y).unwrap(), edges.contains(&e));
                    }
                    for u in (0..g.n()).filter(|&u| u != x && u != y) {
                        assert_eq!(q.vertex_separates(u, x, y).unwrap(), vertices.contains(&u));
                    }
                    let ec = q.are_2ec(x, y).unwrap();
                    assert_eq!(ec.connected, edges.is_empty());
                    if let Some(Witness::Edge(e)) = ec.witness {
                        assert!(table.edge_separates(e, x, y));
                    }
                    let vc = q.are_2vc(x, y).unwrap();
                    assert_eq!(vc.connected, edges.is_empty() && vertices.is_empty());
                    match vc.witness {
                        Some(Witness::Edge(e)) => assert!(table.edge_separates(e, x, y)),
                        Some(Witness::Vertex(u)) => assert!(table.vertex_separates(u, x, y)),
                        None => {}
                    }
                }
            }
        }
    }
}
