//! 2-edge-connected blocks, vertex-resilient blocks and 2-vertex-connected blocks.
//!
//! Two vertices are 2-edge-connected exactly when they share the label
//! `(r_x, h_x, r^R_x, h^R_x)`, where `h_x` is the nearest boundary vertex of `x` in the
//! loop nesting tree. Vertex-resilient blocks start from the sets
//! `c(u, v) = (c(u) ∪ {u}) ∩ (c^R(v) ∪ {v})` of dominator-tree children and are refined
//! once per nontrivial dominator in each orientation. 2-vertex-connected blocks are the
//! vertex-resilient blocks refined by 2-edge-connectivity labels.

use crate::edge_analytics::ConnectivityIndex;
use crate::flow_forest::{NcaIndex, RootedTree};
use crate::graph_core::NONE;

/// Vertex sets of size at least two, members ascending, sets in lexicographic order.
pub type Blocks = Vec<Vec<usize>>;

/// Per vertex `x`: `(r_x, h_x, r^R_x, h^R_x)`.
pub type EdgeBlockLabel = [usize; 4];

/// Nearest boundary vertex of every vertex: the highest loop-nesting ancestor reachable
/// without leaving the bridge-decomposition tree of `x`.
fn boundary(h: &RootedTree, root_of: &[usize]) -> Vec<usize> {
    let mut out = vec![NONE; h.len()];
    for &x in h.order() {
        out[x] = match h.parent(x) {
            Some(p) if root_of[p] == root_of[x] => out[p],
            _ => x,
        };
    }
    out
}

/// 2-edge-connectivity labels of all vertices.
pub fn edge_block_labels(ix: &ConnectivityIndex) -> Vec<EdgeBlockLabel> {
    let f = &ix.frame.fwd;
    let r = &ix.frame.rev;
    let hf = boundary(&f.h, &f.root_of);
    let hr = boundary(&r.h, &r.root_of);
    (0..ix.n())
        .map(|x| [f.root_of[x], hf[x], r.root_of[x], hr[x]])
        .collect()
}

/// Groups item indices `0..keys.len()` by equal keys with a stable LSD radix sort.
/// Every key component must be below `bound`. Groups come out in key order, members
/// ascending.
fn group_by_keys<const K: usize>(keys: &[[usize; K]], bound: usize) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..keys.len()).collect();
    let mut scratch = vec![0; keys.len()];
    let mut count = vec![0usize; bound + 1];
    for k in (0..K).rev() {
        count.iter_mut().for_each(|c| *c = 0);
        for &i in &order {
            count[keys[i][k] + 1] += 1;
        }
        for b in 1..=bound {
            count[b] += count[b - 1];
        }
        for &i in &order {
            scratch[count[keys[i][k]]] = i;
            count[keys[i][k]] += 1;
        }
        std::mem::swap(&mut order, &mut scratch);
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (pos, &i) in order.iter().enumerate() {
        if pos == 0 || keys[order[pos - 1]] != keys[i] {
            groups.push(Vec::new());
        }
        groups.last_mut().expect("a group was just pushed").push(i);
    }
    groups
}

/// Class id per vertex such that two vertices share a class iff they share a label.
pub(crate) fn edge_block_classes(ix: &ConnectivityIndex) -> Vec<usize> {
    let labels = edge_block_labels(ix);
    let mut class = vec![NONE; ix.n()];
    for (id, group) in group_by_keys(&labels, ix.n()).into_iter().enumerate() {
        for x in group {
            class[x] = id;
        }
    }
    class
}

/// Maximal sets of pairwise 2-edge-connected vertices.
pub fn two_edge_connected_blocks(ix: &ConnectivityIndex) -> Blocks {
    let mut out: Blocks = group_by_keys(&edge_block_labels(ix), ix.n())
        .into_iter()
        .filter(|g| g.len() >= 2)
        .collect();
    out.sort();
    out
}

/// All nonempty sets `c(u, v)`, keyed by `(u, v)` in ascending order.
pub fn children_intersection_sets(ix: &ConnectivityIndex) -> Vec<((usize, usize), Vec<usize>)> {
    let (keys, owner) = intersection_keys(ix);
    group_by_keys(&keys, ix.n())
        .into_iter()
        .map(|g| {
            let [u, v] = keys[g[0]];
            ((u, v), g.into_iter().map(|i| owner[i]).collect())
        })
        .collect()
}

/// Memberships `x ∈ c(u, v)` as parallel arrays of keys `[u, v]` and members `x`.
fn intersection_keys(ix: &ConnectivityIndex) -> (Vec<[usize; 2]>, Vec<usize>) {
    let d = &ix.frame.fwd.d;
    let dr = &ix.frame.rev.d;
    let mut keys = Vec::with_capacity(4 * ix.n());
    let mut owner = Vec::with_capacity(4 * ix.n());
    for x in 0..ix.n() {
        match (d.parent(x), dr.parent(x)) {
            (Some(a), Some(b)) => {
                for key in [[a, b], [x, b], [a, x], [x, x]] {
                    keys.push(key);
                    owner.push(x);
                }
            }
            _ => {
                keys.push([x, x]);
                owner.push(x);
            }
        }
    }
    (keys, owner)
}

/// Replaces every block `B` by the sets `B ∩ (S ∪ {x})` for `S` in `partition`, keeping
/// those of size at least two.
pub fn refine(blocks: &[Vec<usize>], partition: &[Vec<usize>], x: usize) -> Blocks {
    let bound = blocks
        .iter()
        .chain(partition)
        .flatten()
        .copied()
        .chain([x])
        .max()
        .map_or(0, |m| m + 1);
    let mut part = vec![NONE; bound];
    for (i, set) in partition.iter().enumerate() {
        for &v in set {
            part[v] = i;
        }
    }
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); partition.len()];
    let mut out = Vec::new();
    for b in blocks {
        let has_x = b.contains(&x);
        let mut touched = Vec::new();
        for &v in b {
            if v != x && part[v] != NONE {
                if buckets[part[v]].is_empty() {
                    touched.push(part[v]);
                }
                buckets[part[v]].push(v);
            }
        }
        for i in touched {
            let mut set = std::mem::take(&mut buckets[i]);
            if has_x {
                set.push(x);
            }
            if set.len() >= 2 {
                set.sort_unstable();
                out.push(set);
            }
        }
    }
    out
}

/// The vertex-resilient blocks as a bipartite forest of vertex nodes and block nodes.
///
/// Node `v < n` is vertex `v`; node `n + k` is block `k`. Each tree is rooted at its
/// smallest vertex, so two vertices share a block iff they are siblings or one is the
/// grandparent of the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockForest {
    n: usize,
    blocks: Blocks,
    parent: Vec<usize>,
}

impl BlockForest {
    pub fn from_blocks(n: usize, blocks: Blocks) -> Self {
        let mut member_of: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (k, b) in blocks.iter().enumerate() {
            for &v in b {
                member_of[v].push(n + k);
            }
        }
        let mut parent = vec![NONE; n + blocks.len()];
        let mut seen = vec![false; n + blocks.len()];
        let mut queue = std::collections::VecDeque::new();
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            queue.push_back(root);
            while let Some(node) = queue.pop_front() {
                let next: &[usize] = if node < n {
                    &member_of[node]
                } else {
                    &blocks[node - n]
                };
                for &y in next {
                    if !seen[y] {
                        seen[y] = true;
                        parent[y] = node;
                        queue.push_back(y);
                    }
                }
            }
        }
        BlockForest { n, blocks, parent }
    }

    pub fn blocks(&self) -> &Blocks {
        &self.blocks
    }

    /// Parent of a node in the rooted forest, `None` for roots.
    pub fn parent(&self, node: usize) -> Option<usize> {
        (self.parent[node] != NONE).then_some(self.parent[node])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// True iff distinct vertices `x` and `y` lie in a common block.
    pub fn same_block(&self, x: usize, y: usize) -> bool {
        let (px, py) = (self.parent[x], self.parent[y]);
        (px != NONE && px == py)
            || (px != NONE && self.parent[px] == y)
            || (py != NONE && self.parent[py] == x)
    }

    pub fn footprint(&self) -> usize {
        self.parent.len() + self.blocks.iter().map(Vec::len).sum::<usize>()
    }
}

/// Maximal vertex-resilient blocks of the indexed graph.
pub fn vertex_resilient_blocks(ix: &ConnectivityIndex) -> BlockForest {
    let n = ix.n();
    let (keys, owner) = intersection_keys(ix);
    let mut state = BlockState::new(n);
    for g in group_by_keys(&keys, n) {
        if g.len() >= 2 {
            state.create(g.into_iter().map(|i| owner[i]).collect());
        }
    }
    let f = &ix.frame.fwd;
    let r = &ix.frame.rev;
    state.pass(&f.d, &f.h, &ix.nca_h);
    state.pass(&r.d, &r.h, &ix.nca_hr);
    let mut blocks = state.live();
    blocks.sort();
    blocks.dedup();
    debug_assert!(n == 0 || blocks.len() < n);
    debug_assert!(blocks.iter().map(Vec::len).sum::<usize>() <= 2 * n.saturating_sub(1));
    BlockForest::from_blocks(n, blocks)
}

/// Blocks under construction. Blocks are immutable once created; changing one means
/// retiring it and creating its replacements.
struct BlockState {
    blocks: Vec<Vec<usize>>,
    alive: Vec<bool>,
    member_of: Vec<Vec<usize>>,
    hit: Vec<usize>,
    hit_stamp: Vec<usize>,
    top: Vec<usize>,
    top_stamp: Vec<usize>,
    bucket: Vec<Vec<usize>>,
}

impl BlockState {
    fn new(n: usize) -> Self {
        BlockState {
            blocks: Vec::new(),
            alive: Vec::new(),
            member_of: vec![Vec::new(); n],
            hit: Vec::new(),
            hit_stamp: Vec::new(),
            top: vec![NONE; n],
            top_stamp: vec![NONE; n],
            bucket: vec![Vec::new(); n],
        }
    }

    fn create(&mut self, members: Vec<usize>) -> usize {
        let id = self.blocks.len();
        for &v in &members {
            self.member_of[v].push(id);
        }
        self.blocks.push(members);
        self.alive.push(true);
        self.hit.push(0);
        self.hit_stamp.push(NONE);
        id
    }

    fn live(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for (b, members) in self.blocks.iter().enumerate() {
            if self.alive[b] {
                let mut m = members.clone();
                m.sort_unstable();
                out.push(m);
            }
        }
        out
    }

    /// Loop-nesting ancestor of the child `x` of `u` reached by climbing through
    /// children of `u` only.
    fn group_of(&mut self, d: &RootedTree, h: &RootedTree, u: usize, x: usize) -> usize {
        let mut path = Vec::new();
        let mut y = x;
        let top = loop {
            if self.top_stamp[y] == u {
                break self.top[y];
            }
            path.push(y);
            match h.parent(y) {
                Some(p) if d.parent(p) == Some(u) => y = p,
                _ => break y,
            }
        };
        for v in path {
            self.top[v] = top;
            self.top_stamp[v] = u;
        }
        top
    }

    /// One refinement pass over the nontrivial dominators of `d`, bottom-up.
    fn pass(&mut self, d: &RootedTree, h: &RootedTree, nca: &NcaIndex) {
        let s = d.order()[0];
        self.top_stamp.iter_mut().for_each(|t| *t = NONE);
        self.hit_stamp.iter_mut().for_each(|t| *t = NONE);
        for &u in d.order().iter().rev() {
            let kids = d.children(u);
            if u != s && kids.is_empty() {
                continue;
            }
            let mut chosen = Vec::new();
            for &x in kids.iter().chain([&u]) {
                for i in 0..self.member_of[x].len() {
                    let b = self.member_of[x][i];
                    if !self.alive[b] {
                        continue;
                    }
                    if self.hit_stamp[b] != u {
                        self.hit_stamp[b] = u;
                        self.hit[b] = 0;
                    }
                    self.hit[b] += 1;
                    if self.hit[b] == 2 {
                        chosen.push(b);
                    }
                }
            }
            for &x in kids {
                self.group_of(d, h, u, x);
            }
            for b in chosen {
                self.alive[b] = false;
                let members = std::mem::take(&mut self.blocks[b]);
                let has_u = members.contains(&u);
                let mut touched = Vec::new();
                for &v in &members {
                    if v != u && d.parent(v) == Some(u) {
                        let g = self.top[v];
                        if self.bucket[g].is_empty() {
                            touched.push(g);
                        }
                        self.bucket[g].push(v);
                    }
                }
                for g in touched {
                    let mut set = std::mem::take(&mut self.bucket[g]);
                    if has_u {
                        if u != s && !self.keeps(d, nca, u, &set) {
                            if set.len() >= 2 {
                                self.create(set);
                            }
                            continue;
                        }
                        set.push(u);
                    }
                    if set.len() >= 2 {
                        self.create(set);
                    }
                }
                self.blocks[b] = members;
            }
        }
    }

    /// Whether `u` stays in the refined block made of `u` and its children `others`.
    fn keeps(&self, d: &RootedTree, nca: &NcaIndex, u: usize, others: &[usize]) -> bool {
        let v = *others.iter().min().expect("refined groups are nonempty");
        match nca.nca(u, v) {
            Some(w) => d.parent(w).is_some() && d.parent(w) == d.parent(u),
            None => false,
        }
    }
}

/// Maximal sets of pairwise 2-vertex-connected vertices.
pub fn two_vertex_connected_blocks(ix: &ConnectivityIndex) -> Blocks {
    let class = edge_block_classes(ix);
    let mut out = Vec::new();
    for b in ix.block_forest().blocks() {
        let keys: Vec<[usize; 1]> = b.iter().map(|&v| [class[v]]).collect();
        for g in group_by_keys(&keys, ix.n()) {
            if g.len() >= 2 {
                out.push(g.into_iter().map(|i| b[i]).collect::<Vec<_>>());
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

impl ConnectivityIndex {
    /// The vertex-resilient block forest, built on first use.
    pub fn block_forest(&self) -> &BlockForest {
        self.block_forest
            .get_or_init(|| vertex_resilient_blocks(self))
    }
}
