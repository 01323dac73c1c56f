//! Bridge decompositions of dominator trees, compressed trees, the common-bridge
//! decomposition and the common bridge forest.

use crate::flow_forest::{DominatorTree, RootedTree};
use crate::graph_core::NONE;

/// Roots `r_v` of the trees left after deleting flow-graph bridges from a dominator tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BridgeDecomposition {
    pub root_of: Vec<usize>,
}

/// Bridge decomposition of `d`, where `bridge_into[v] != NONE` marks `(d(v), v)` as a bridge.
pub fn bridge_decomposition(d: &DominatorTree, bridge_into: &[usize]) -> BridgeDecomposition {
    BridgeDecomposition {
        root_of: roots_top_down(&d.tree, |v| bridge_into[v] != NONE),
    }
}

/// Dominator tree with every bridge-decomposition tree contracted into its root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressedDominatorTree {
    /// Compressed parent of each contracted root (`r_{d(z)}`), [`NONE`] for the tree root
    /// and for vertices that are not roots.
    pub parent: Vec<usize>,
    /// Contracted roots in dominator-tree preorder.
    pub nodes: Vec<usize>,
}

pub fn compressed_tree(d: &DominatorTree, dec: &BridgeDecomposition) -> CompressedDominatorTree {
    compress(&d.tree, &dec.root_of)
}

fn compress(tree: &RootedTree, root_of: &[usize]) -> CompressedDominatorTree {
    let mut parent = vec![NONE; tree.len()];
    let mut nodes = Vec::new();
    for &z in tree.order() {
        if root_of[z] == z {
            nodes.push(z);
            if let Some(p) = tree.parent(z) {
                parent[z] = root_of[p];
            }
        }
    }
    CompressedDominatorTree { parent, nodes }
}

/// Roots `r̆_v` of the trees left after deleting only common bridges, with the depth of
/// each such root in the tree of roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommonBridgeDecomposition {
    pub root_of: Vec<usize>,
    /// For each root, the number of common bridges above it; [`NONE`] for non-roots.
    pub depth: Vec<usize>,
}

pub fn common_bridge_decomposition(
    d: &DominatorTree,
    is_common_head: &[bool],
) -> CommonBridgeDecomposition {
    decompose_common(&d.tree, is_common_head)
}

pub(crate) fn decompose_common(
    tree: &RootedTree,
    is_common_head: &[bool],
) -> CommonBridgeDecomposition {
    let root_of = roots_top_down(tree, |v| is_common_head[v]);
    let mut depth = vec![NONE; tree.len()];
    for &z in tree.order() {
        if root_of[z] == z {
            depth[z] = match tree.parent(z) {
                Some(p) => depth[root_of[p]] + 1,
                None => 0,
            };
        }
    }
    CommonBridgeDecomposition { root_of, depth }
}

/// The common bridge forest. A common bridge is represented by its head in the forward
/// dominator tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommonBridgeForest {
    /// Forest parent of each node, [`NONE`] for forest roots and non-nodes.
    pub parent: Vec<usize>,
    /// Root of the forest tree containing each node, [`NONE`] for non-nodes.
    pub tree_root: Vec<usize>,
    /// Nodes in forward dominator-tree preorder.
    pub nodes: Vec<usize>,
}

impl CommonBridgeForest {
    /// The forest trees as sorted node lists, ordered by smallest node.
    pub fn trees(&self) -> Vec<Vec<usize>> {
        let mut by_root: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![NONE; self.parent.len()];
        for &v in &self.nodes {
            let r = self.tree_root[v];
            if slot[r] == NONE {
                slot[r] = by_root.len();
                by_root.push(Vec::new());
            }
            by_root[slot[r]].push(v);
        }
        for t in &mut by_root {
            t.sort_unstable();
        }
        by_root.sort();
        by_root
    }
}

/// Builds the common bridge forest.
///
/// `rev_node[z]` gives, for the forward head `z` of each common bridge, the head of the
/// same bridge in the reverse dominator tree (or [`NONE`]). Bridge `β` with forward head
/// `z` is attached below `α`, the common bridge entering the common-bridge tree that
/// contains `d(z)`, exactly when `β` is an ancestor of `α` in the reverse dominator tree.
pub fn common_bridge_forest(
    d: &DominatorTree,
    dr: &DominatorTree,
    rev_node: &[usize],
) -> CommonBridgeForest {
    let is_head: Vec<bool> = rev_node.iter().map(|&r| r != NONE).collect();
    let dec = decompose_common(&d.tree, &is_head);
    build_forest(&d.tree, &dr.tree, rev_node, &dec)
}

pub(crate) fn build_forest(
    tree: &RootedTree,
    rev_tree: &RootedTree,
    rev_node: &[usize],
    dec: &CommonBridgeDecomposition,
) -> CommonBridgeForest {
    let n = tree.len();
    let mut parent = vec![NONE; n];
    let mut tree_root = vec![NONE; n];
    let mut nodes = Vec::new();
    for &z in tree.order() {
        if rev_node[z] == NONE {
            continue;
        }
        nodes.push(z);
        let above = dec.root_of[tree
            .parent(z)
            .expect("a common bridge head is not the root")];
        if rev_node[above] != NONE {
            let alpha_rev_parent = rev_tree
                .parent(rev_node[above])
                .expect("reverse head has a parent");
            if rev_tree.is_ancestor(rev_node[z], alpha_rev_parent) {
                parent[z] = above;
            }
        }
        tree_root[z] = if parent[z] == NONE {
            z
        } else {
            tree_root[parent[z]]
        };
    }
    CommonBridgeForest {
        parent,
        tree_root,
        nodes,
    }
}

/// `root_of[v]`: the nearest ancestor-or-self `z` of `v` with `cut(z)`, or the tree root.
pub(crate) fn roots_top_down(tree: &RootedTree, cut: impl Fn(usize) -> bool) -> Vec<usize> {
    let mut root_of = vec![NONE; tree.len()];
    for &v in tree.order() {
        root_of[v] = match tree.parent(v) {
            Some(p) if !cut(v) => root_of[p],
            _ => v,
        };
    }
    root_of
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow_forest::DominatorTree;

    fn dom(parents: Vec<usize>) -> DominatorTree {
        DominatorTree::from_parents(parents, 0)
    }

    #[test]
    fn discrete_and_trivial_decompositions() {
        let path = dom(vec![NONE, 0, 1, 2, 3]);
        let all = bridge_decomposition(&path, &[NONE, 0, 1, 2, 3]);
        assert_eq!(all.root_of, vec![0, 1, 2, 3, 4]);
        let c = compressed_tree(&path, &all);
        assert_eq!(c.nodes, vec![0, 1, 2, 3, 4]);
        assert_eq!(c.parent, vec![NONE, 0, 1, 2, 3]);

        let star = dom(vec![NONE, 0, 0]);
        let none = bridge_decomposition(&star, &[NONE; 3]);
        assert_eq!(none.root_of, vec![0, 0, 0]);
        assert_eq!(compressed_tree(&star, &none).nodes, vec![0]);
    }

    #[test]
    fn chain_with_one_bridge_compresses_to_an_edge() {
        let chain = dom(vec![NONE, 0, 1, 2]);
        let dec = bridge_decomposition(&chain, &[NONE, NONE, 7, NONE]);
        assert_eq!(dec.root_of, vec![0, 0, 2, 2]);
        let c = compressed_tree(&chain, &dec);
        assert_eq!(c.nodes, vec![0, 2]);
        assert_eq!(c.parent[2], 0);
    }

    #[test]
    fn figure_eight_common_forest_is_two_isolated_nodes() {
        // Forward dominators d: 1->0, 2->1, 3->0, 4->3; reverse d^R: 2->0, 1->2, 4->0, 3->4.
        let d = dom(vec![NONE, 0, 1, 0, 3]);
        let dr = dom(vec![NONE, 2, 0, 4, 0]);
        // Common bridges (1,2) and (3,4): forward heads 2 and 4, reverse heads 1 and 3.
        let rev_node = vec![NONE, NONE, 1, NONE, 3];
        let q = common_bridge_forest(&d, &dr, &rev_node);
        assert_eq!(q.nodes, vec![2, 4]);
        assert_eq!(q.parent, vec![NONE; 5]);
        assert_eq!(q.trees(), vec![vec![2], vec![4]]);
        let cd = common_bridge_decomposition(&d, &[false, false, true, false, true]);
        assert_eq!(cd.root_of, vec![0, 0, 2, 0, 4]);
        assert_eq!(cd.depth[2], 1);
    }

    #[test]
    fn empty_forest_without_common_bridges() {
        let d = dom(vec![NONE, 0, 0]);
        let q = common_bridge_forest(&d, &d, &[NONE; 3]);
        assert!(q.nodes.is_empty());
        assert!(q.trees().is_empty());
    }
}
