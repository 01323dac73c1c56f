//! Everything about `G \ v`, by reduction to bridge deletions in the vertex-split graph.
//!
//! Every nontrivial dominator `x` (in either orientation, other than the start vertex)
//! is split into `x̄ -> x`: the incoming edges of `x` move to `x̄`. Deleting `x` from the
//! input then corresponds to deleting the auxiliary edge `(x̄, x)`, which is a common
//! bridge of the split graph. The split graph is never built. Its dominator trees and
//! loop nesting trees are derived directly from those of the input.

use crate::edge_analytics::{ConnectivityIndex, EdgeReport, Extreme, ExtremeTables, IndexError};
use crate::flow_forest::RootedTree;
use crate::frame::{Algebra, Count, Custom, Frame, FrameFold, Side, Size};
use crate::graph_core::{SccPartition, NONE};

/// Component statistics of the graph after deleting one vertex.
pub type VertexReport = EdgeReport;

/// The vertex-split counterparts of the dominator and loop nesting trees.
///
/// Nodes `0..n` are the input vertices; node `n + k` is the auxiliary vertex of the
/// `k`-th split vertex in ascending order.
#[derive(Debug, Clone)]
pub struct SplitIndex {
    pub(crate) start: usize,
    pub(crate) bar: Vec<usize>,
    pub(crate) frame: Frame,
}

impl SplitIndex {
    /// Number of input vertices.
    pub fn n(&self) -> usize {
        self.bar.len()
    }

    /// Number of nodes of the split graph.
    pub fn node_count(&self) -> usize {
        self.frame.fwd.len()
    }

    /// Split vertices, ascending.
    pub fn split_vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&x| self.bar[x] != NONE).collect()
    }

    /// The auxiliary node of `x`, if `x` is split.
    pub fn auxiliary(&self, x: usize) -> Option<usize> {
        (self.bar[x] != NONE).then_some(self.bar[x])
    }

    pub fn is_ordinary(&self, node: usize) -> bool {
        node < self.n()
    }

    pub fn dominator_tree(&self) -> &RootedTree {
        &self.frame.fwd.d
    }

    pub fn reverse_dominator_tree(&self) -> &RootedTree {
        &self.frame.rev.d
    }

    pub fn loop_tree(&self) -> &RootedTree {
        &self.frame.fwd.h
    }

    pub fn reverse_loop_tree(&self) -> &RootedTree {
        &self.frame.rev.h
    }

    /// Bridge identifiers of the split graph entering each node of the forward dominator
    /// tree: input edge indices, or `m + x` for the auxiliary edge of `x`.
    pub fn forward_bridges(&self) -> &[usize] {
        &self.frame.fwd.bridge
    }

    /// As [`SplitIndex::forward_bridges`] for the reverse dominator tree.
    pub fn reverse_bridges(&self) -> &[usize] {
        &self.frame.rev.bridge
    }

    /// Input vertices counted in each forward loop-nesting subtree.
    pub fn ordinary_counts(&self) -> &[usize] {
        &self.frame.fwd.weight
    }

    /// Input vertices counted in each reverse loop-nesting subtree.
    pub fn reverse_ordinary_counts(&self) -> &[usize] {
        &self.frame.rev.weight
    }

    pub(crate) fn footprint(&self) -> usize {
        self.bar.len() + self.frame.footprint()
    }
}

/// Builds the split index of an index.
pub fn vertex_split(ix: &ConnectivityIndex) -> SplitIndex {
    build_split(&ix.frame, ix.m())
}

pub(crate) fn build_split(base: &Frame, m: usize) -> SplitIndex {
    let (fd, fh) = (&base.fwd.d, &base.fwd.h);
    let (rd, rh) = (&base.rev.d, &base.rev.h);
    let n = fd.len();
    let s = fd.order()[0];

    let mut bar = vec![NONE; n];
    let mut len = n;
    for (x, slot) in bar.iter_mut().enumerate() {
        if x != s && (!fd.children(x).is_empty() || !rd.children(x).is_empty()) {
            *slot = len;
            len += 1;
        }
    }
    let tr = |y: usize| {
        if y == NONE || bar[y] == NONE {
            y
        } else {
            bar[y]
        }
    };

    let mut d = vec![NONE; len];
    let mut h = vec![NONE; len];
    let mut bridge = vec![NONE; len];
    let mut anchor: Vec<usize> = (0..len).collect();
    let mut dr = vec![NONE; len];
    let mut hr = vec![NONE; len];
    let mut bridge_r = vec![NONE; len];
    let mut pairs = Vec::new();

    for x in 0..n {
        let dx = fd.parent(x).unwrap_or(NONE);
        let hx = fh.parent(x).unwrap_or(NONE);
        let hrx = rh.parent(x).unwrap_or(NONE);
        dr[x] = tr(rd.parent(x).unwrap_or(NONE));
        hr[x] = hrx;
        bridge_r[x] = base.rev.bridge[x];
        if base.partner_rev[x] != NONE {
            pairs.push((tr(x), base.partner_rev[x]));
        }
        let b = bar[x];
        if b == NONE {
            d[x] = dx;
            h[x] = tr(hx);
            bridge[x] = base.fwd.bridge[x];
            continue;
        }
        d[x] = b;
        d[b] = dx;
        bridge[x] = m + x;
        bridge[b] = base.fwd.bridge[x];
        h[b] = tr(hx);
        h[x] = if fh.children(x).is_empty() { tr(hx) } else { b };
        anchor[x] = b;
        dr[b] = x;
        bridge_r[b] = m + x;
        hr[b] = if rh.children(x).is_empty() { hrx } else { x };
        pairs.push((x, b));
    }

    let ordinary_weights = |t: &RootedTree| {
        let mut w: Vec<usize> = (0..len).map(|v| usize::from(v < n)).collect();
        for &v in t.order().iter().rev() {
            if let Some(p) = t.parent(v) {
                w[p] += w[v];
            }
        }
        w
    };
    let h = RootedTree::from_parents(h);
    let hr = RootedTree::from_parents(hr);
    let fwd = Side::new(
        RootedTree::from_parents(d),
        h.clone(),
        bridge,
        ordinary_weights(&h),
        Some(anchor),
    );
    let rev = Side::new(
        RootedTree::from_parents(dr),
        hr.clone(),
        bridge_r,
        ordinary_weights(&hr),
        None,
    );
    let frame = Frame::new(fwd, rev, &pairs, n.saturating_sub(1), n);
    SplitIndex {
        start: s,
        bar,
        frame,
    }
}

/// How deleting a vertex is answered.
enum VertexCase {
    /// The start vertex: its loop-nesting children are the components.
    Start,
    /// A split vertex: the auxiliary bridge with these heads.
    Split(usize, usize),
    /// Any other vertex leaves one component.
    Trivial,
}

impl SplitIndex {
    fn case(&self, u: usize) -> VertexCase {
        if u == self.start {
            VertexCase::Start
        } else if self.bar[u] != NONE {
            VertexCase::Split(u, self.bar[u])
        } else {
            VertexCase::Trivial
        }
    }
}

/// The components of `G \ u`; `u` itself belongs to none.
pub fn report_sccs_after_vertex(
    ix: &ConnectivityIndex,
    u: usize,
) -> Result<SccPartition, IndexError> {
    ix.check_vertex(u)?;
    let sp = &ix.split;
    let labels = match sp.case(u) {
        VertexCase::Start => {
            let h = &ix.frame.fwd.h;
            let mut top = vec![NONE; ix.n()];
            for &v in &h.order()[1..] {
                let p = h
                    .parent(v)
                    .expect("only the start vertex is a loop-nesting root");
                top[v] = if p == u { v } else { top[p] };
            }
            top
        }
        VertexCase::Split(f, r) => sp.frame.labels(f, r, Some(u)),
        VertexCase::Trivial => {
            let mut l = vec![0; ix.n()];
            l[u] = NONE;
            l
        }
    };
    Ok(SccPartition::from_labels(&labels, Some(u)))
}

fn per_vertex<T>(
    ix: &ConnectivityIndex,
    start: impl Fn(&[usize]) -> T,
    split: impl Fn(usize, usize) -> T,
    trivial: impl Fn() -> T,
) -> Vec<T> {
    let children = ix.frame.fwd.h.children(ix.split.start);
    let child_sizes: Vec<usize> = children.iter().map(|&c| ix.frame.fwd.h.size(c)).collect();
    (0..ix.n())
        .map(|u| match ix.split.case(u) {
            VertexCase::Start => start(&child_sizes),
            VertexCase::Split(f, r) => split(f, r),
            VertexCase::Trivial => trivial(),
        })
        .collect()
}

/// Number of components of `G \ v` for every vertex.
pub fn count_sccs_all_vertices(ix: &ConnectivityIndex) -> Vec<usize> {
    let frame = &ix.split.frame;
    let fold = frame.fold(&Count);
    per_vertex(
        ix,
        <[usize]>::len,
        |f, r| frame.combine(&Count, &fold, f, r) as usize + 1,
        || 1,
    )
}

/// Largest or smallest component size of `G \ v` for every vertex (0 when nothing
/// remains).
pub fn lscc_all_vertices(ix: &ConnectivityIndex, mode: Extreme) -> Vec<usize> {
    let frame = &ix.split.frame;
    let sizes = frame.fold(&Size);
    let ext = ExtremeTables::new(frame, mode);
    let pick = |sizes: &[usize]| match mode {
        Extreme::Largest => sizes.iter().copied().max().unwrap_or(0),
        Extreme::Smallest => sizes.iter().copied().min().unwrap_or(0),
    };
    per_vertex(ix, pick, |f, r| ext.at(frame, &sizes, f, r), || ix.n() - 1)
}

/// Per vertex `v`, `f(|C_1|) ⊙ ... ⊙ f(|C_k|)` over the components of `G \ v`, under the
/// same contract as [`crate::edge_analytics::aggregate_all_edges`].
pub fn aggregate_all_vertices<T: Clone>(
    ix: &ConnectivityIndex,
    f: impl Fn(usize) -> T,
    op: impl Fn(&T, &T) -> T,
    inv: impl Fn(&T, &T) -> T,
    identity: T,
) -> Vec<T> {
    let alg = Custom {
        f: &f,
        op: &op,
        inv: &inv,
        identity,
    };
    let frame = &ix.split.frame;
    let fold: FrameFold<T> = frame.fold(&alg);
    let sizes = frame.fold(&Size);
    let fold_sizes = |sizes: &[usize]| {
        let mut acc = alg.identity();
        for &w in sizes {
            alg.add(&mut acc, &alg.lift(w));
        }
        acc
    };
    per_vertex(
        ix,
        fold_sizes,
        |fh, rh| frame.aggregate(&alg, &fold, &sizes, fh, rh),
        || {
            let mut acc = alg.identity();
            if ix.n() > 1 {
                alg.add(&mut acc, &alg.lift(ix.n() - 1));
            }
            acc
        },
    )
}

/// Count, largest and smallest component size of `G \ v` for every vertex.
pub fn vertex_reports(ix: &ConnectivityIndex) -> Vec<VertexReport> {
    let counts = count_sccs_all_vertices(ix);
    let largest = lscc_all_vertices(ix, Extreme::Largest);
    let smallest = lscc_all_vertices(ix, Extreme::Smallest);
    (0..ix.n())
        .map(|v| EdgeReport {
            scc_count: counts[v],
            largest: largest[v],
            smallest: smallest[v],
        })
        .collect()
}

/// Vertices whose deletion leaves more than one component, ascending.
pub fn strong_articulation_points(ix: &ConnectivityIndex) -> Vec<usize> {
    let counts = count_sccs_all_vertices(ix);
    (0..ix.n()).filter(|&v| counts[v] > 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edge_analytics::build_index;
    use crate::graph_core::Digraph;
    use crate::oracle::{
        directed_cycle, oracle_sccs_after_vertex, random_strongly_connected_digraph, RandomSpec,
    };

    fn fig8() -> Digraph {
        Digraph::new(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap()
    }

    fn bitri() -> Digraph {
        Digraph::new(3, [(0, 1), (1, 0), (1, 2), (2, 1), (2, 0), (0, 2)]).unwrap()
    }

    #[test]
    fn split_sets_of_fixtures() {
        let ix = build_index(fig8(), 0).unwrap();
        assert_eq!(ix.split_index().split_vertices(), vec![1, 2, 3, 4]);
        assert_eq!(ix.split_index().node_count(), 9);
        let ix = build_index(bitri(), 0).unwrap();
        assert!(ix.split_index().split_vertices().is_empty());
        // Interior vertices of the dominator path are 1, 2, 3; of the reverse path 4, 3, 2.
        let ix = build_index(directed_cycle(5), 0).unwrap();
        assert_eq!(ix.split_index().split_vertices(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn figure_eight_vertex_answers() {
        let ix = build_index(fig8(), 0).unwrap();
        let p = report_sccs_after_vertex(&ix, 0).unwrap();
        assert_eq!(p.components, vec![vec![1], vec![2], vec![3], vec![4]]);
        let p = report_sccs_after_vertex(&ix, 1).unwrap();
        assert_eq!(p.components, vec![vec![0, 3, 4], vec![2]]);
        assert_eq!(count_sccs_all_vertices(&ix), vec![4, 2, 2, 2, 2]);
        assert_eq!(
            lscc_all_vertices(&ix, Extreme::Largest),
            vec![1, 3, 3, 3, 3]
        );
        assert_eq!(lscc_all_vertices(&ix, Extreme::Smallest), vec![1; 5]);
        let sums = aggregate_all_vertices(&ix, |x| x as i64, |a, b| a + b, |a, b| a - b, 0);
        assert_eq!(sums[1], 4);
        let counts = aggregate_all_vertices(&ix, |_| 1i64, |a, b| a + b, |a, b| a - b, 0);
        let expected: Vec<i64> = count_sccs_all_vertices(&ix)
            .into_iter()
            .map(|c| c as i64)
            .collect();
        assert_eq!(counts, expected);
    }

    #[test]
    fn bidirected_triangle_and_cycles() {
        let ix = build_index(bitri(), 0).unwrap();
        assert_eq!(
            report_sccs_after_vertex(&ix, 2).unwrap().components,
            vec![vec![0, 1]]
        );
        assert_eq!(count_sccs_all_vertices(&ix), vec![1; 3]);
        for n in [2, 3, 5, 8] {
            let ix = build_index(directed_cycle(n), 0).unwrap();
            assert_eq!(count_sccs_all_vertices(&ix), vec![n - 1; n]);
            assert_eq!(lscc_all_vertices(&ix, Extreme::Largest), vec![1; n]);
        }
        let ix = build_index(directed_cycle(5), 0).unwrap();
        let prod = aggregate_all_vertices(&ix, |x| x as f64, |a, b| a * b, |a, b| a / b, 1.0);
        assert_eq!(prod, vec![1.0; 5]);
    }

    #[test]
    fn single_vertex_leaves_nothing() {
        let ix = build_index(Digraph::new(1, []).unwrap(), 0).unwrap();
        assert_eq!(count_sccs_all_vertices(&ix), vec![0]);
        assert_eq!(lscc_all_vertices(&ix, Extreme::Largest), vec![0]);
        assert_eq!(report_sccs_after_vertex(&ix, 0).unwrap().count(), 0);
    }

    #[test]
    fn random_instances_match_brute_force() {
        for seed in 0..200 {
            let g = random_strongly_connected_digraph(RandomSpec::sample(seed, 9, 24)).unwrap();
            for s in [0, g.n() - 1] {
                let ix = build_index(g.clone(), s).unwrap();
                let counts = count_sccs_all_vertices(&ix);
                let large = lscc_all_vertices(&ix, Extreme::Largest);
                let small = lscc_all_vertices(&ix, Extreme::Smallest);
                for u in 0..g.n() {
                    let p = oracle_sccs_after_vertex(&g, u);
                    assert_eq!(
                        report_sccs_after_vertex(&ix, u).unwrap(),
                        p,
                        "seed {seed} s {s} vertex {u}"
                    );
                    assert_eq!(counts[u], p.count(), "seed {seed} s {s} vertex {u}");
                    assert_eq!(large[u], p.largest(), "seed {seed} s {s} vertex {u}");
                    assert_eq!(small[u], p.smallest(), "seed {seed} s {s} vertex {u}");
                }
            }
        }
    }
}
