//! Per-orientation flow-graph structures: depth-first search trees, dominator trees,
//! loop nesting trees, flow-graph bridges, and constant-time ancestor and NCA indices.

mod dfs;
mod dominators;
mod loops;
mod tree;

use thiserror::Error;

use crate::graph_core::{Digraph, NONE};

pub use dfs::{dfs_tree, DfsTree, EdgeClass};
pub use dominators::{dominator_tree, flow_graph_bridges, DominatorTree};
pub use loops::{loop_nesting_tree, LoopNestingTree};
pub use tree::{build_ancestor_index, build_nca_index, AncestorIndex, NcaIndex, RootedTree};

pub(crate) use dfs::dfs_oriented;
pub(crate) use dominators::dominators_and_bridges;
pub(crate) use loops::loop_nesting_oriented;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlowError {
    #[error("start vertex {start} is not a vertex of a graph with {n} vertices")]
    StartOutOfRange { start: usize, n: usize },
    #[error("vertex {vertex} is unreachable from the start vertex")]
    Unreachable { vertex: usize },
}

/// A digraph viewed either as given or with every edge reversed, without copying it.
#[derive(Clone, Copy)]
pub(crate) struct Orientation<'a> {
    pub g: &'a Digraph,
    pub reversed: bool,
}

impl<'a> Orientation<'a> {
    pub fn forward(g: &'a Digraph) -> Self {
        Orientation { g, reversed: false }
    }

    pub fn backward(g: &'a Digraph) -> Self {
        Orientation { g, reversed: true }
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }

    pub fn m(&self) -> usize {
        self.g.m()
    }

    /// `(tail, head)` of edge `e` in this orientation.
    pub fn ends(&self, e: usize) -> (usize, usize) {
        let (t, h) = self.g.edge(e);
        if self.reversed {
            (h, t)
        } else {
            (t, h)
        }
    }

    pub fn out_arcs(&self, v: usize) -> &'a [usize] {
        if self.reversed {
            self.g.in_edges(v)
        } else {
            self.g.out_edges(v)
        }
    }

    pub fn in_arcs(&self, v: usize) -> &'a [usize] {
        if self.reversed {
            self.g.out_edges(v)
        } else {
            self.g.in_edges(v)
        }
    }

    /// Heads of [`Orientation::out_arcs`] in this orientation, position by position.
    pub fn out_targets(&self, v: usize) -> &'a [usize] {
        if self.reversed {
            self.g.in_neighbors(v)
        } else {
            self.g.out_neighbors(v)
        }
    }

    /// Tails of [`Orientation::in_arcs`] in this orientation, position by position.
    pub fn in_sources(&self, v: usize) -> &'a [usize] {
        if self.reversed {
            self.g.out_neighbors(v)
        } else {
            self.g.in_neighbors(v)
        }
    }

    pub fn check_start(&self, s: usize) -> Result<(), FlowError> {
        if s >= self.n() {
            Err(FlowError::StartOutOfRange {
                start: s,
                n: self.n(),
            })
        } else {
            Ok(())
        }
    }
}

/// Everything computed for one orientation of the input from a fixed start vertex.
#[derive(Debug, Clone)]
pub struct FlowForestBundle {
    pub start: usize,
    pub dfs: DfsTree,
    pub dominators: DominatorTree,
    pub loops: LoopNestingTree,
    /// For each vertex `v`, the flow-graph bridge `(d(v), v)` as an edge index, or [`NONE`].
    pub bridge_into: Vec<usize>,
}

impl FlowForestBundle {
    /// Bundle for the flow graph `g` rooted at `s`.
    pub fn forward(g: &Digraph, s: usize) -> Result<Self, FlowError> {
        Self::build(Orientation::forward(g), s)
    }

    /// Bundle for the reverse of `g` rooted at `s`; edge indices still refer to `g`.
    pub fn reverse(g: &Digraph, s: usize) -> Result<Self, FlowError> {
        Self::build(Orientation::backward(g), s)
    }

    pub(crate) fn build(o: Orientation<'_>, s: usize) -> Result<Self, FlowError> {
        o.check_start(s)?;
        let dfs = dfs_oriented(o, s)?;
        let (dominators, bridge_into) = dominators_and_bridges(o, &dfs);
        let loops = loop_nesting_oriented(o, &dfs);
        Ok(FlowForestBundle {
            start: s,
            dfs,
            dominators,
            loops,
            bridge_into,
        })
    }

    /// Flow-graph bridges as sorted edge indices.
    pub fn bridges(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .bridge_into
            .iter()
            .copied()
            .filter(|&e| e != NONE)
            .collect();
        out.sort_unstable();
        out
    }
}
