//! Lengauer–Tarjan dominators with simple path compression, and flow-graph bridges
//! read off the dominator tree.

use super::{dfs_oriented, DfsTree, FlowError, Orientation, RootedTree};
use crate::graph_core::{Digraph, NONE};

/// Dominator tree of a flow graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominatorTree {
    pub root: usize,
    pub tree: RootedTree,
    /// Vertices other than the root that have children, ascending.
    pub nontrivial: Vec<usize>,
}

impl DominatorTree {
    pub(crate) fn from_parents(idom: Vec<usize>, root: usize) -> Self {
        let tree = RootedTree::from_parents(idom);
        let nontrivial = (0..tree.len())
            .filter(|&v| v != root && !tree.children(v).is_empty())
            .collect();
        DominatorTree {
            root,
            tree,
            nontrivial,
        }
    }

    /// Immediate dominator of `v`, `None` for the root.
    pub fn idom(&self, v: usize) -> Option<usize> {
        self.tree.parent(v)
    }

    /// True iff `u` dominates `v` (every vertex dominates itself).
    pub fn dominates(&self, u: usize, v: usize) -> bool {
        self.tree.is_ancestor(u, v)
    }
}

/// Dominator tree of the flow graph `g` rooted at `s`.
pub fn dominator_tree(g: &Digraph, s: usize) -> Result<DominatorTree, FlowError> {
    let o = Orientation::forward(g);
    o.check_start(s)?;
    let t = dfs_oriented(o, s)?;
    Ok(DominatorTree::from_parents(lengauer_tarjan(o, &t), s))
}

/// Edge indices `(d(v), v)` such that every path from `s` to `v` uses that edge, sorted.
pub fn flow_graph_bridges(
    g: &Digraph,
    s: usize,
    d: &DominatorTree,
) -> Result<Vec<usize>, FlowError> {
    let o = Orientation::forward(g);
    o.check_start(s)?;
    let mut out: Vec<usize> = bridges_into(o, d)
        .into_iter()
        .filter(|&e| e != NONE)
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Dominator tree and, per vertex `v`, the bridge `(d(v), v)` if there is one.
pub(crate) fn dominators_and_bridges(
    o: Orientation<'_>,
    t: &DfsTree,
) -> (DominatorTree, Vec<usize>) {
    let d = DominatorTree::from_parents(lengauer_tarjan(o, t), t.root);
    let bridge_into = bridges_into(o, &d);
    (d, bridge_into)
}

/// The edge `e = (d(v), v)` lies on every path to `v` exactly when every other edge
/// entering `v` leaves a vertex that `v` dominates: a path reaching `v` for the first
/// time must enter it from a vertex `v` does not dominate.
fn bridges_into(o: Orientation<'_>, d: &DominatorTree) -> Vec<usize> {
    (0..o.n())
        .map(|v| {
            let Some(x) = d.idom(v) else { return NONE };
            let mut found = NONE;
            for (&e, &w) in o.in_arcs(v).iter().zip(o.in_sources(v)) {
                if d.dominates(v, w) {
                    continue;
                }
                if found != NONE || w != x {
                    return NONE;
                }
                found = e;
            }
            found
        })
        .collect()
}

/// Immediate dominator of every vertex (the root gets [`NONE`]), given a depth-first
/// search tree `t` of the orientation.
pub(crate) fn lengauer_tarjan(o: Orientation<'_>, t: &DfsTree) -> Vec<usize> {
    let n = o.n();
    let vertex = &t.order;
    let num = &t.pre;

    let mut semi: Vec<usize> = (0..n).collect();
    let mut label: Vec<usize> = (0..n).collect();
    let mut ancestor = vec![NONE; n];
    let mut idom = vec![NONE; n];
    let mut bucket_head = vec![NONE; n];
    let mut bucket_next = vec![NONE; n];
    let mut path = Vec::new();

    for w in (1..n).rev() {
        let node = vertex[w];
        for &pred in o.in_sources(node) {
            let v = num[pred];
            let u = eval(v, &mut ancestor, &mut label, &semi, &mut path);
            if semi[u] < semi[w] {
                semi[w] = semi[u];
            }
        }
        bucket_next[w] = bucket_head[semi[w]];
        bucket_head[semi[w]] = w;
        let p = num[t.parent[node]];
        ancestor[w] = p;
        let mut b = std::mem::replace(&mut bucket_head[p], NONE);
        while b != NONE {
            let next = bucket_next[b];
            let u = eval(b, &mut ancestor, &mut label, &semi, &mut path);
            idom[b] = if semi[u] < semi[b] { u } else { p };
            b = next;
        }
    }
    for w in 1..n {
        if idom[w] != semi[w] {
            idom[w] = idom[idom[w]];
        }
    }
    let mut result = vec![NONE; n];
    for w in 1..n {
        result[vertex[w]] = vertex[idom[w]];
    }
    result
}

fn eval(
    v: usize,
    ancestor: &mut [usize],
    label: &mut [usize],
    semi: &[usize],
    path: &mut Vec<usize>,
) -> usize {
    if ancestor[v] == NONE {
        return v;
    }
    let mut x = v;
    while ancestor[ancestor[x]] != NONE {
        path.push(x);
        x = ancestor[x];
    }
    while let Some(y) = path.pop() {
        let a = ancestor[y];
        if semi[label[a]] < semi[label[y]] {
            label[y] = label[a];
        }
        ancestor[y] = ancestor[a];
    }
    label[v]
}
