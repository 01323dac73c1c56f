//! Deterministic iterative depth-first search.

use super::{FlowError, Orientation};
use crate::graph_core::{Digraph, NONE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    Tree,
    Forward,
    Back,
    Cross,
}

/// A depth-first search tree. Children are explored in edge-list order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DfsTree {
    pub root: usize,
    /// Tree parent, [`NONE`] for the root.
    pub parent: Vec<usize>,
    /// Index of the tree edge entering each vertex, [`NONE`] for the root.
    pub parent_edge: Vec<usize>,
    pub pre: Vec<usize>,
    /// Vertices in preorder.
    pub order: Vec<usize>,
    pub size: Vec<usize>,
}

impl DfsTree {
    /// True iff `u` is an ancestor of `v` (or equal) in the tree.
    pub fn is_ancestor(&self, u: usize, v: usize) -> bool {
        self.pre[u] <= self.pre[v] && self.pre[v] < self.pre[u] + self.size[u]
    }

    /// Class of edge `e` running from `tail` to `head` in the searched orientation.
    pub fn classify(&self, e: usize, tail: usize, head: usize) -> EdgeClass {
        if self.parent_edge[head] == e {
            EdgeClass::Tree
        } else if self.is_ancestor(tail, head) {
            EdgeClass::Forward
        } else if self.is_ancestor(head, tail) {
            EdgeClass::Back
        } else {
            EdgeClass::Cross
        }
    }

    /// Class of every edge of `g`, assuming this tree was built on `g` itself.
    pub fn edge_classes(&self, g: &Digraph) -> Vec<EdgeClass> {
        (0..g.m())
            .map(|e| {
                let (t, h) = g.edge(e);
                self.classify(e, t, h)
            })
            .collect()
    }
}

/// Depth-first search of `g` from `s`. Every vertex must be reachable from `s`.
pub fn dfs_tree(g: &Digraph, s: usize) -> Result<DfsTree, FlowError> {
    let o = Orientation::forward(g);
    o.check_start(s)?;
    dfs_oriented(o, s)
}

pub(crate) fn dfs_oriented(o: Orientation<'_>, s: usize) -> Result<DfsTree, FlowError> {
    let n = o.n();
    let mut parent = vec![NONE; n];
    let mut parent_edge = vec![NONE; n];
    let mut pre = vec![NONE; n];
    let mut order = Vec::with_capacity(n);
    let mut frames: Vec<(usize, usize)> = vec![(s, 0)];
    pre[s] = 0;
    order.push(s);
    while let Some(&mut (v, ref mut pos)) = frames.last_mut() {
        let arcs = o.out_arcs(v);
        if *pos == arcs.len() {
            frames.pop();
            continue;
        }
        let e = arcs[*pos];
        let w = o.out_targets(v)[*pos];
        *pos += 1;
        if pre[w] == NONE {
            pre[w] = order.len();
            order.push(w);
            parent[w] = v;
            parent_edge[w] = e;
            frames.push((w, 0));
        }
    }
    if order.len() < n {
        let vertex = (0..n)
            .find(|&v| pre[v] == NONE)
            .expect("some vertex is unvisited");
        return Err(FlowError::Unreachable { vertex });
    }
    let mut size = vec![1usize; n];
    for &v in order.iter().rev() {
        if parent[v] != NONE {
            size[parent[v]] += size[v];
        }
    }
    Ok(DfsTree {
        root: s,
        parent,
        parent_edge,
        pre,
        order,
        size,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig8() -> Digraph {
        Digraph::new(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap()
    }

    #[test]
    fn cycle_is_a_path_with_one_back_edge() {
        let g = Digraph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let t = dfs_tree(&g, 0).unwrap();
        assert_eq!(t.order, vec![0, 1, 2, 3, 4]);
        assert_eq!(t.parent, vec![NONE, 0, 1, 2, 3]);
        assert_eq!(t.edge_classes(&g)[4], EdgeClass::Back);
    }

    #[test]
    fn figure_eight_classes() {
        let g = fig8();
        let t = dfs_tree(&g, 0).unwrap();
        use EdgeClass::*;
        assert_eq!(t.edge_classes(&g), vec![Tree, Tree, Back, Tree, Tree, Back]);
        assert_eq!(t.pre[0], 0);
        assert_eq!(t.size, vec![5, 2, 1, 2, 1]);
    }

    #[test]
    fn unreachable_vertex_is_reported() {
        let g = Digraph::new(5, [(1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(dfs_tree(&g, 0), Err(FlowError::Unreachable { vertex: 1 }));
        assert_eq!(
            dfs_tree(&g, 7),
            Err(FlowError::StartOutOfRange { start: 7, n: 5 })
        );
    }

    #[test]
    fn parallel_copy_is_forward() {
        let g = Digraph::new(2, [(0, 1), (0, 1), (1, 0)]).unwrap();
        let t = dfs_tree(&g, 0).unwrap();
        use EdgeClass::*;
        assert_eq!(t.edge_classes(&g), vec![Tree, Forward, Back]);
    }

    #[test]
    fn cross_edges_point_to_earlier_subtrees() {
        let g = Digraph::new(3, [(0, 1), (0, 2), (2, 1), (1, 0), (2, 0)]).unwrap();
        let t = dfs_tree(&g, 0).unwrap();
        assert_eq!(t.classify(2, 2, 1), EdgeClass::Cross);
    }
}
