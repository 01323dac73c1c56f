//! Rooted forests given by parent arrays, with preorder intervals and NCA queries.

use crate::graph_core::NONE;

/// Constant-time ancestor tests from preorder intervals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AncestorIndex {
    pre: Vec<usize>,
    size: Vec<usize>,
}

impl AncestorIndex {
    /// True iff `u` is an ancestor of `v` or `u == v`.
    #[inline]
    pub fn is_ancestor(&self, u: usize, v: usize) -> bool {
        let (pu, pv) = (self.pre[u], self.pre[v]);
        pu <= pv && pv < pu + self.size[u]
    }

    /// True iff `u` is an ancestor of `v` and `u != v`.
    #[inline]
    pub fn is_proper_ancestor(&self, u: usize, v: usize) -> bool {
        u != v && self.is_ancestor(u, v)
    }
}

/// A rooted forest over `0..n` with children lists, preorder, subtree sizes and depths.
///
/// Roots are visited in increasing id order and children in increasing id order, so
/// the preorder is a function of the parent array alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    parent: Vec<usize>,
    child_start: Vec<usize>,
    child_list: Vec<usize>,
    order: Vec<usize>,
    depth: Vec<usize>,
    index: AncestorIndex,
}

impl RootedTree {
    /// Builds the forest from `parent[v]` ([`NONE`] for roots). The parent relation
    /// must be acyclic.
    pub fn from_parents(parent: Vec<usize>) -> Self {
        let n = parent.len();
        let mut child_start = vec![0usize; n + 1];
        for &p in &parent {
            if p != NONE {
                child_start[p + 1] += 1;
            }
        }
        for v in 0..n {
            child_start[v + 1] += child_start[v];
        }
        let mut fill = child_start.clone();
        let mut child_list = vec![0usize; child_start[n]];
        for (v, &p) in parent.iter().enumerate() {
            if p != NONE {
                child_list[fill[p]] = v;
                fill[p] += 1;
            }
        }
        drop(fill);

        let mut order = Vec::with_capacity(n);
        let mut pre = vec![NONE; n];
        let mut depth = vec![0usize; n];
        let mut stack = Vec::new();
        for root in (0..n).filter(|&r| parent[r] == NONE) {
            stack.push(root);
            while let Some(v) = stack.pop() {
                pre[v] = order.len();
                order.push(v);
                for &c in child_list[child_start[v]..child_start[v + 1]].iter().rev() {
                    depth[c] = depth[v] + 1;
                    stack.push(c);
                }
            }
        }
        assert_eq!(order.len(), n, "parent array contains a cycle");
        let mut size = vec![1usize; n];
        for &v in order.iter().rev() {
            if parent[v] != NONE {
                size[parent[v]] += size[v];
            }
        }
        RootedTree {
            parent,
            child_start,
            child_list,
            order,
            depth,
            index: AncestorIndex { pre, size },
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        let p = self.parent[v];
        (p != NONE).then_some(p)
    }

    /// Parent array with [`NONE`] at roots.
    pub fn parents(&self) -> &[usize] {
        &self.parent
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.child_list[self.child_start[v]..self.child_start[v + 1]]
    }

    /// Vertices in preorder.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn pre(&self, v: usize) -> usize {
        self.index.pre[v]
    }

    pub fn size(&self, v: usize) -> usize {
        self.index.size[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    #[inline]
    pub fn is_ancestor(&self, u: usize, v: usize) -> bool {
        self.index.is_ancestor(u, v)
    }

    #[inline]
    pub fn is_proper_ancestor(&self, u: usize, v: usize) -> bool {
        self.index.is_proper_ancestor(u, v)
    }

    pub fn ancestor_index(&self) -> &AncestorIndex {
        &self.index
    }

    /// Number of array slots held, for memory accounting.
    pub fn footprint(&self) -> usize {
        self.parent.len()
            + self.child_start.len()
            + self.child_list.len()
            + self.order.len()
            + self.depth.len()
            + self.index.pre.len()
            + self.index.size.len()
    }
}

/// Ancestor index of a rooted tree.
pub fn build_ancestor_index(tree: &RootedTree) -> AncestorIndex {
    tree.index.clone()
}

/// Nearest common ancestors in constant time via a sparse table over preorder depths.
///
/// For `pre(u) < pre(v)`, the nearest common ancestor is the parent of the shallowest
/// vertex among preorder positions `pre(u)+1 ..= pre(v)`.
#[derive(Debug, Clone)]
pub struct NcaIndex {
    pre: Vec<usize>,
    parent: Vec<usize>,
    depth: Vec<u32>,
    table: Vec<Vec<u32>>,
}

/// NCA index of a rooted tree.
pub fn build_nca_index(tree: &RootedTree) -> NcaIndex {
    NcaIndex::new(tree)
}

impl NcaIndex {
    pub fn new(tree: &RootedTree) -> Self {
        let n = tree.len();
        assert!(n < u32::MAX as usize, "tree too large for the NCA index");
        let depth: Vec<u32> = (0..n).map(|v| tree.depth(v) as u32).collect();
        let mut table: Vec<Vec<u32>> = vec![tree.order().iter().map(|&v| v as u32).collect()];
        let mut width = 1usize;
        while 2 * width <= n {
            let prev = table.last().expect("level 0 exists");
            let level: Vec<u32> = (0..=n - 2 * width)
                .map(|i| {
                    let (a, b) = (prev[i], prev[i + width]);
                    if depth[b as usize] < depth[a as usize] {
                        b
                    } else {
                        a
                    }
                })
                .collect();
            table.push(level);
            width *= 2;
        }
        NcaIndex {
            pre: tree.index.pre.clone(),
            parent: tree.parents().to_vec(),
            depth,
            table,
        }
    }

    /// Nearest common ancestor of `u` and `v`, or `None` if they lie in different trees.
    pub fn nca(&self, u: usize, v: usize) -> Option<usize> {
        if u == v {
            return Some(u);
        }
        let (mut lo, mut hi) = (self.pre[u], self.pre[v]);
        if lo > hi {
            std::mem::swap(&mut lo, &mut hi);
        }
        let lo = lo + 1;
        let k = (usize::BITS - 1 - (hi - lo + 1).leading_zeros()) as usize;
        let (a, b) = (self.table[k][lo], self.table[k][hi + 1 - (1 << k)]);
        let w = if self.depth[b as usize] < self.depth[a as usize] {
            b
        } else {
            a
        } as usize;
        let p = self.parent[w];
        (p != NONE).then_some(p)
    }

    /// Number of array slots held, for memory accounting.
    pub fn footprint(&self) -> usize {
        self.pre.len()
            + self.parent.len()
            + self.depth.len()
            + self.table.iter().map(Vec::len).sum::<usize>()
    }
}
