//! The shared engine behind the all-edges and all-vertices batch operations.
//!
//! A [`Frame`] pairs a forward and a reverse [`Side`]: a dominator tree, a loop nesting
//! tree, and bridge marks for each orientation, plus the common bridges that appear in
//! both. The input graph yields one frame directly. The vertex-split graph yields
//! another, assembled from the first without building the split graph itself.
//!
//! Deleting a bridge whose forward head is `v` and reverse head is `u` leaves the
//! components `H(w)` for `w` in `D(v)` with `h(w)` outside `D(v)`, the analogous
//! components in `D^R(u)`, and everything else as one component. The folds below
//! aggregate a per-component value over those sets for every bridge at once.

use crate::decomposition::{
    build_forest, decompose_common, roots_top_down, CommonBridgeDecomposition, CommonBridgeForest,
};
use crate::flow_forest::RootedTree;
use crate::graph_core::NONE;

/// One orientation of a frame.
#[derive(Debug, Clone)]
pub(crate) struct Side {
    /// Dominator tree.
    pub d: RootedTree,
    /// Loop nesting tree.
    pub h: RootedTree,
    /// Identifier of the bridge entering each node from its dominator-tree parent, or
    /// [`NONE`].
    pub bridge: Vec<usize>,
    /// Counted size of each loop-nesting subtree; subtrees of weight zero are ignored.
    pub weight: Vec<usize>,
    /// Node whose decomposition root a loop-nesting subtree reports to, when it differs
    /// from the subtree root itself.
    pub anchor: Option<Vec<usize>>,
    /// Bridge-decomposition roots.
    pub root_of: Vec<usize>,
}

impl Side {
    pub fn new(
        d: RootedTree,
        h: RootedTree,
        bridge: Vec<usize>,
        weight: Vec<usize>,
        anchor: Option<Vec<usize>>,
    ) -> Self {
        let root_of = roots_top_down(&d, |v| bridge[v] != NONE);
        Side {
            d,
            h,
            bridge,
            weight,
            anchor,
            root_of,
        }
    }

    #[inline]
    pub fn anchor(&self, x: usize) -> usize {
        self.anchor.as_ref().map_or(x, |a| a[x])
    }

    #[inline]
    pub fn is_bridge(&self, v: usize) -> bool {
        self.bridge[v] != NONE
    }

    /// Compressed-tree parent of a bridge node.
    #[inline]
    pub fn compressed_parent(&self, z: usize) -> usize {
        self.root_of[self.d.parent(z).expect("bridge nodes have a parent")]
    }

    pub fn len(&self) -> usize {
        self.bridge.len()
    }

    /// Loop-nesting subtrees that are components after some deletion: `(x, weight)` for
    /// every `x` with a loop parent and positive weight.
    fn candidates(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.len()).filter_map(move |x| {
            let hx = self.h.parent(x)?;
            (self.weight[x] > 0).then_some((x, hx, self.weight[x]))
        })
    }

    /// Per bridge node `v`, the fold of `lift(weight)` over the components inside `D(v)`.
    pub fn descendant_fold<A: Algebra>(&self, alg: &A) -> Vec<A::Value> {
        let mut bundle = vec![alg.identity(); self.len()];
        for (x, hx, w) in self.candidates() {
            let a = self.root_of[self.anchor(x)];
            let b = self.root_of[hx];
            if a != b {
                let v = alg.lift(w);
                alg.add(&mut bundle[a], &v);
                alg.sub(&mut bundle[b], &v);
            }
        }
        for &z in self.d.order().iter().rev() {
            if self.is_bridge(z) {
                let p = self.compressed_parent(z);
                let v = bundle[z].clone();
                alg.add(&mut bundle[p], &v);
            }
        }
        bundle
    }

    /// Per bridge node `v`, the largest (or smallest) component weight inside `D(v)`, or
    /// [`NONE`] when `D(v)` holds no counted component.
    pub fn extreme_weights(&self, largest: bool) -> Vec<usize> {
        let len = self.len();
        let max_w = self.weight.iter().copied().max().unwrap_or(0);
        let mut count = vec![0usize; max_w + 2];
        for (_, _, w) in self.candidates() {
            count[w + 1] += 1;
        }
        for i in 1..count.len() {
            count[i] += count[i - 1];
        }
        let total = count[max_w + 1];
        let mut sorted = vec![NONE; total];
        for (x, _, w) in self.candidates() {
            sorted[count[w]] = x;
            count[w] += 1;
        }
        if largest {
            sorted.reverse();
        }

        let mut ext = vec![NONE; len];
        let mut up: Vec<usize> = (0..len).collect();
        for x in sorted {
            let a = self.root_of[self.anchor(x)];
            let b = self.root_of[self.h.parent(x).expect("candidates have a loop parent")];
            if a == b {
                continue;
            }
            let mut z = find(&mut up, a);
            while z != b && self.d.is_proper_ancestor(b, z) {
                ext[z] = self.weight[x];
                up[z] = self.compressed_parent(z);
                z = find(&mut up, z);
            }
        }
        ext
    }

    pub fn footprint(&self) -> usize {
        self.d.footprint()
            + self.h.footprint()
            + self.bridge.len()
            + self.weight.len()
            + self.anchor.as_ref().map_or(0, Vec::len)
            + self.root_of.len()
    }
}

fn find(up: &mut [usize], v: usize) -> usize {
    let mut root = v;
    while up[root] != root {
        root = up[root];
    }
    let mut x = v;
    while up[x] != root {
        let next = up[x];
        up[x] = root;
        x = next;
    }
    root
}

/// An abelian group used to fold per-component values.
pub(crate) trait Algebra {
    type Value: Clone;
    fn identity(&self) -> Self::Value;
    /// Value of one component with the given counted size.
    fn lift(&self, weight: usize) -> Self::Value;
    fn add(&self, acc: &mut Self::Value, v: &Self::Value);
    fn sub(&self, acc: &mut Self::Value, v: &Self::Value);
}

/// Counts components.
pub(crate) struct Count;

impl Algebra for Count {
    type Value = i64;
    fn identity(&self) -> i64 {
        0
    }
    fn lift(&self, _: usize) -> i64 {
        1
    }
    fn add(&self, acc: &mut i64, v: &i64) {
        *acc += v;
    }
    fn sub(&self, acc: &mut i64, v: &i64) {
        *acc -= v;
    }
}

/// Sums component sizes.
pub(crate) struct Size;

impl Algebra for Size {
    type Value = i64;
    fn identity(&self) -> i64 {
        0
    }
    fn lift(&self, weight: usize) -> i64 {
        weight as i64
    }
    fn add(&self, acc: &mut i64, v: &i64) {
        *acc += v;
    }
    fn sub(&self, acc: &mut i64, v: &i64) {
        *acc -= v;
    }
}

/// A caller-supplied group: `f` maps a size to a value, `op` combines, `inv(a, b)` is
/// `a` combined with the inverse of `b`.
pub(crate) struct Custom<'a, T> {
    pub f: &'a dyn Fn(usize) -> T,
    pub op: &'a dyn Fn(&T, &T) -> T,
    pub inv: &'a dyn Fn(&T, &T) -> T,
    pub identity: T,
}

impl<T: Clone> Algebra for Custom<'_, T> {
    type Value = T;
    fn identity(&self) -> T {
        self.identity.clone()
    }
    fn lift(&self, weight: usize) -> T {
        (self.f)(weight)
    }
    fn add(&self, acc: &mut T, v: &T) {
        *acc = (self.op)(acc, v);
    }
    fn sub(&self, acc: &mut T, v: &T) {
        *acc = (self.inv)(acc, v);
    }
}

/// Forward and reverse sides plus the common-bridge structure linking them.
#[derive(Debug, Clone)]
pub(crate) struct Frame {
    pub fwd: Side,
    pub rev: Side,
    /// Reverse head of the common bridge entering each forward node, or [`NONE`].
    pub partner_rev: Vec<usize>,
    /// Forward head of the common bridge entering each reverse node, or [`NONE`].
    pub partner_fwd: Vec<usize>,
    pub common: CommonBridgeDecomposition,
    pub forest: CommonBridgeForest,
    /// Number of counted vertices in the whole graph after a deletion.
    pub total: usize,
    /// Nodes `0..ordinary` are vertices of the input graph.
    pub ordinary: usize,
}

/// Results of one algebra folded over a whole frame.
pub(crate) struct FrameFold<V> {
    /// Per forward bridge node.
    pub fwd: Vec<V>,
    /// Per reverse bridge node.
    pub rev: Vec<V>,
    /// Per forward head of a common bridge: the fold over components in both subtrees.
    pub common: Vec<V>,
}

impl Frame {
    /// `pairs` lists common bridges as (forward head, reverse head).
    pub fn new(
        fwd: Side,
        rev: Side,
        pairs: &[(usize, usize)],
        total: usize,
        ordinary: usize,
    ) -> Self {
        let mut partner_rev = vec![NONE; fwd.len()];
        let mut partner_fwd = vec![NONE; rev.len()];
        for &(f, r) in pairs {
            partner_rev[f] = r;
            partner_fwd[r] = f;
        }
        let is_head: Vec<bool> = partner_rev.iter().map(|&r| r != NONE).collect();
        let common = decompose_common(&fwd.d, &is_head);
        let forest = build_forest(&fwd.d, &rev.d, &partner_rev, &common);
        Frame {
            fwd,
            rev,
            partner_rev,
            partner_fwd,
            common,
            forest,
            total,
            ordinary,
        }
    }

    /// Per forward head `v` of a common bridge with reverse head `u`, the fold over the
    /// components contained in both `D(v)` and `D^R(u)`.
    pub fn common_fold<A: Algebra>(&self, alg: &A) -> Vec<A::Value> {
        let len = self.fwd.len();
        let crt = &self.common.root_of;
        let depth = &self.common.depth;
        let qroot = &self.forest.tree_root;

        let mut head = vec![NONE; len];
        let mut next = vec![NONE; len];
        for (x, hx, _) in self.fwd.candidates() {
            let p = self.fwd.anchor(x);
            if crt[p] != crt[hx] {
                next[x] = head[p];
                head[p] = x;
            }
        }

        let mut start = vec![alg.identity(); len];
        let mut end = vec![alg.identity(); len];
        let mut path = vec![NONE; len];
        let mut last = vec![NONE; len];
        let mut entered: Vec<(usize, usize)> = Vec::new();
        for &p in self.fwd.d.order() {
            while let Some(&(top, saved)) = entered.last() {
                if self.fwd.d.is_ancestor(top, p) {
                    break;
                }
                last[qroot[top]] = saved;
                entered.pop();
            }
            if crt[p] == p {
                path[depth[p]] = p;
                if self.partner_rev[p] != NONE {
                    entered.push((p, last[qroot[p]]));
                    last[qroot[p]] = p;
                }
            }
            let mut x = head[p];
            while x != NONE {
                let hx = self.fwd.h.parent(x).expect("candidates have a loop parent");
                let top = path[depth[crt[hx]] + 1];
                if self.rev.d.is_ancestor(self.partner_rev[top], x) {
                    let bottom = last[qroot[top]];
                    let v = alg.lift(self.fwd.weight[x]);
                    alg.add(&mut end[bottom], &v);
                    alg.add(&mut start[top], &v);
                }
                x = next[x];
            }
        }

        let mut value = end;
        for &z in self.fwd.d.order().iter().rev() {
            let q = self.forest.parent[z];
            if self.partner_rev[z] != NONE && q != NONE {
                let mut v = value[z].clone();
                alg.sub(&mut v, &start[z]);
                alg.add(&mut value[q], &v);
            }
        }
        value
    }

    pub fn fold<A: Algebra>(&self, alg: &A) -> FrameFold<A::Value> {
        FrameFold {
            fwd: self.fwd.descendant_fold(alg),
            rev: self.rev.descendant_fold(alg),
            common: self.common_fold(alg),
        }
    }

    /// Resolves the heads of a deleted bridge: `fwd_head` is its head in the forward
    /// side or [`NONE`], `rev_head` likewise.
    pub fn combine<V: Clone, A: Algebra<Value = V>>(
        &self,
        alg: &A,
        fold: &FrameFold<V>,
        fwd_head: usize,
        rev_head: usize,
    ) -> V {
        let mut acc = alg.identity();
        if fwd_head != NONE {
            alg.add(&mut acc, &fold.fwd[fwd_head]);
        }
        if rev_head != NONE {
            alg.add(&mut acc, &fold.rev[rev_head]);
        }
        if fwd_head != NONE && rev_head != NONE {
            alg.sub(&mut acc, &fold.common[fwd_head]);
        }
        acc
    }

    /// Per-component labels of the input vertices after deleting the bridge with the
    /// given heads. Labels are below `fwd.len() + rev.len() + 1`; `skip` gets [`NONE`].
    pub fn labels(&self, fwd_head: usize, rev_head: usize, skip: Option<usize>) -> Vec<usize> {
        let rest = self.fwd.len() + self.rev.len();
        let mut label = vec![rest; self.ordinary];
        if rev_head != NONE {
            paint(
                &self.rev,
                rev_head,
                &mut label,
                self.ordinary,
                self.fwd.len(),
            );
        }
        if fwd_head != NONE {
            paint(&self.fwd, fwd_head, &mut label, self.ordinary, 0);
        }
        if let Some(u) = skip {
            label[u] = NONE;
        }
        label
    }

    pub fn footprint(&self) -> usize {
        self.fwd.footprint()
            + self.rev.footprint()
            + self.partner_rev.len()
            + self.partner_fwd.len()
            + self.common.root_of.len()
            + self.common.depth.len()
            + self.forest.parent.len()
            + self.forest.tree_root.len()
            + self.forest.nodes.len()
    }
}

/// Labels every counted vertex of `D(head)` by the top of its loop-nesting subtree
/// within `D(head)`, shifted by `offset`.
fn paint(side: &Side, head: usize, label: &mut [usize], ordinary: usize, offset: usize) {
    let inside = |v: usize| side.d.is_ancestor(head, v);
    let mut top = vec![NONE; side.len()];
    for &v in side.h.order() {
        if !inside(v) {
            continue;
        }
        top[v] = match side.h.parent(v) {
            Some(p) if inside(p) => top[p],
            _ => v,
        };
        if v < ordinary {
            label[v] = offset + top[v];
        }
    }
}
