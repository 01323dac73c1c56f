//! The connectivity index and everything about `G \ e`: component reports, component
//! counts, extreme component sizes, common-descendant counts and generic aggregates,
//! for every edge at once.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use thiserror::Error;

use crate::blocks::BlockForest;
use crate::decomposition::{BridgeDecomposition, CommonBridgeDecomposition, CommonBridgeForest};
use crate::flow_forest::{FlowError, FlowForestBundle, NcaIndex, RootedTree};
use crate::frame::{Algebra, Count, Custom, Frame, FrameFold, Side, Size};
use crate::graph_core::{strongly_connected_components, Digraph, SccPartition, NONE};
use crate::vertex_analytics::{build_split, SplitIndex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IndexError {
    #[error("graph is not strongly connected ({components} components)")]
    NotStronglyConnected { components: usize },
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error("edge {edge} is out of range for a graph with {m} edges")]
    EdgeOutOfRange { edge: usize, m: usize },
    #[error("vertex {vertex} is out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("query needs two distinct vertices, got {vertex} twice")]
    SameVertex { vertex: usize },
    #[error("vertex {vertex} is one of the query endpoints")]
    EndpointNotAllowed { vertex: usize },
}

/// How an edge relates to the flow-graph bridges of both orientations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BridgeKind {
    /// Not a strong bridge.
    None,
    /// A bridge of the flow graph only.
    Forward,
    /// A bridge of the reverse flow graph only.
    Reverse,
    /// A bridge of both.
    Common,
}

/// Which extreme component size to report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Extreme {
    Largest,
    Smallest,
}

/// Component statistics of the graph after deleting one element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeReport {
    pub scc_count: usize,
    pub largest: usize,
    pub smallest: usize,
}

/// Everything needed to answer deletion questions about a strongly connected digraph.
#[derive(Debug)]
pub struct ConnectivityIndex {
    pub(crate) graph: Digraph,
    pub(crate) start: usize,
    pub(crate) frame: Frame,
    pub(crate) nca_h: NcaIndex,
    pub(crate) nca_hr: NcaIndex,
    pub(crate) split: SplitIndex,
    pub(crate) block_forest: OnceLock<BlockForest>,
}

/// Builds the index of the strongly connected digraph `g` from start vertex `s`.
pub fn build_index(g: Digraph, s: usize) -> Result<ConnectivityIndex, IndexError> {
    if s >= g.n() {
        return Err(FlowError::StartOutOfRange { start: s, n: g.n() }.into());
    }
    let components = strongly_connected_components(&g).count();
    if components != 1 {
        return Err(IndexError::NotStronglyConnected { components });
    }
    let fwd = FlowForestBundle::forward(&g, s)?;
    let rev = FlowForestBundle::reverse(&g, s)?;
    let mut pairs = Vec::new();
    for v in 0..g.n() {
        let e = fwd.bridge_into[v];
        if e != NONE {
            let u = g.edge(e).0;
            if rev.bridge_into[u] == e {
                pairs.push((v, u));
            }
        }
    }
    let side = |b: FlowForestBundle| {
        let h = b.loops.tree;
        let weight = (0..g.n()).map(|v| h.size(v)).collect();
        Side::new(b.dominators.tree, h, b.bridge_into, weight, None)
    };
    let frame = Frame::new(side(fwd), side(rev), &pairs, g.n(), g.n());
    let nca_h = NcaIndex::new(&frame.fwd.h);
    let nca_hr = NcaIndex::new(&frame.rev.h);
    let split = build_split(&frame, g.m());
    Ok(ConnectivityIndex {
        graph: g,
        start: s,
        frame,
        nca_h,
        nca_hr,
        split,
        block_forest: OnceLock::new(),
    })
}

impl ConnectivityIndex {
    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn m(&self) -> usize {
        self.graph.m()
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

    pub fn split_index(&self) -> &SplitIndex {
        &self.split
    }

    pub fn bridge_decomposition(&self) -> BridgeDecomposition {
        BridgeDecomposition {
            root_of: self.frame.fwd.root_of.clone(),
        }
    }

    pub fn reverse_bridge_decomposition(&self) -> BridgeDecomposition {
        BridgeDecomposition {
            root_of: self.frame.rev.root_of.clone(),
        }
    }

    pub fn common_bridge_decomposition(&self) -> &CommonBridgeDecomposition {
        &self.frame.common
    }

    /// The common bridge forest; node `v` stands for the common bridge entering `v` in
    /// the dominator tree, see [`ConnectivityIndex::common_bridge_at`].
    pub fn common_bridge_forest(&self) -> &CommonBridgeForest {
        &self.frame.forest
    }

    /// The common bridge whose head in the dominator tree is `v`, if any.
    pub fn common_bridge_at(&self, v: usize) -> Option<usize> {
        (self.frame.partner_rev[v] != NONE).then(|| self.frame.fwd.bridge[v])
    }

    pub(crate) fn check_edge(&self, e: usize) -> Result<(), IndexError> {
        if e >= self.m() {
            Err(IndexError::EdgeOutOfRange {
                edge: e,
                m: self.m(),
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<(), IndexError> {
        if v >= self.n() {
            Err(IndexError::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        } else {
            Ok(())
        }
    }

    /// Heads of edge `e` in the forward and reverse dominator trees when it is a bridge
    /// there, [`NONE`] otherwise.
    pub(crate) fn heads(&self, e: usize) -> (usize, usize) {
        let (u, v) = self.graph.edge(e);
        let f = if self.frame.fwd.bridge[v] == e {
            v
        } else {
            NONE
        };
        let r = if self.frame.rev.bridge[u] == e {
            u
        } else {
            NONE
        };
        (f, r)
    }

    pub fn bridge_kind(&self, e: usize) -> BridgeKind {
        match self.heads(e) {
            (NONE, NONE) => BridgeKind::None,
            (_, NONE) => BridgeKind::Forward,
            (NONE, _) => BridgeKind::Reverse,
            _ => BridgeKind::Common,
        }
    }

    /// Strong bridges as ascending edge indices.
    pub fn strong_bridges(&self) -> Vec<usize> {
        (0..self.m())
            .filter(|&e| self.bridge_kind(e) != BridgeKind::None)
            .collect()
    }

    /// Bridges of both flow graphs as ascending edge indices.
    pub fn common_bridges(&self) -> Vec<usize> {
        (0..self.m())
            .filter(|&e| self.bridge_kind(e) == BridgeKind::Common)
            .collect()
    }

    /// Number of machine words held by the index, excluding the input graph and the
    /// nearest-common-ancestor tables.
    pub fn footprint(&self) -> usize {
        self.frame.footprint()
            + self.split.footprint()
            + self.block_forest.get().map_or(0, BlockForest::footprint)
    }

    /// Words held by the nearest-common-ancestor tables.
    pub fn nca_footprint(&self) -> usize {
        self.nca_h.footprint() + self.nca_hr.footprint()
    }
}

/// The components of `G \ e`.
pub fn report_sccs_after_edge(
    ix: &ConnectivityIndex,
    e: usize,
) -> Result<SccPartition, IndexError> {
    ix.check_edge(e)?;
    let (f, r) = ix.heads(e);
    Ok(SccPartition::from_labels(
        &ix.frame.labels(f, r, None),
        None,
    ))
}

/// Component counts inside the subtrees below each bridge.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DescendantCounts {
    /// Bridge of the flow graph entering `v` (by edge index) to `#SCC(D(v))`.
    pub forward: BTreeMap<usize, usize>,
    /// Bridge of the reverse flow graph entering `u` (by edge index) to `#SCC(D^R(u))`.
    pub reverse: BTreeMap<usize, usize>,
}

pub fn sccs_descendants(ix: &ConnectivityIndex) -> DescendantCounts {
    let side_counts = |side: &Side| {
        let fold = side.descendant_fold(&Count);
        (0..ix.n())
            .filter(|&v| side.is_bridge(v))
            .map(|v| (side.bridge[v], fold[v] as usize))
            .collect()
    };
    DescendantCounts {
        forward: side_counts(&ix.frame.fwd),
        reverse: side_counts(&ix.frame.rev),
    }
}

/// Common bridge `(u, v)` to `#SCC(D(v) ∩ D^R(u))`.
pub fn sccs_common_descendants(ix: &ConnectivityIndex) -> BTreeMap<usize, usize> {
    per_common_bridge(ix, &ix.frame.common_fold(&Count))
}

/// Common bridge `(u, v)` to `|D(v) ∩ D^R(u)|`.
pub fn common_descendant_counts(ix: &ConnectivityIndex) -> BTreeMap<usize, usize> {
    per_common_bridge(ix, &ix.frame.common_fold(&Size))
}

fn per_common_bridge(ix: &ConnectivityIndex, values: &[i64]) -> BTreeMap<usize, usize> {
    ix.frame
        .forest
        .nodes
        .iter()
        .map(|&v| (ix.frame.fwd.bridge[v], values[v] as usize))
        .collect()
}

/// Number of components of `G \ e` for every edge.
pub fn count_sccs_all_edges(ix: &ConnectivityIndex) -> Vec<usize> {
    let fold = ix.frame.fold(&Count);
    (0..ix.m())
        .map(|e| {
            let (f, r) = ix.heads(e);
            ix.frame.combine(&Count, &fold, f, r) as usize + 1
        })
        .collect()
}

/// Largest or smallest component size of `G \ e` for every edge.
pub fn lscc_all_edges(ix: &ConnectivityIndex, mode: Extreme) -> Vec<usize> {
    let sizes = ix.frame.fold(&Size);
    let ext = ExtremeTables::new(&ix.frame, mode);
    (0..ix.m())
        .map(|e| {
            let (f, r) = ix.heads(e);
            ext.at(&ix.frame, &sizes, f, r)
        })
        .collect()
}

/// Per edge `e`, `f(|C_1|) ⊙ ... ⊙ f(|C_k|)` over the components of `G \ e`.
///
/// `op` must be associative and commutative with identity `identity`, and `inv(a, b)`
/// must return `a ⊙ b⁻¹`. Other inputs give meaningless results.
pub fn aggregate_all_edges<T: Clone>(
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
    let fold = ix.frame.fold(&alg);
    let sizes = ix.frame.fold(&Size);
    (0..ix.m())
        .map(|e| {
            let (f_head, r_head) = ix.heads(e);
            ix.frame.aggregate(&alg, &fold, &sizes, f_head, r_head)
        })
        .collect()
}

/// Count, largest and smallest component size of `G \ e` for every edge.
pub fn edge_reports(ix: &ConnectivityIndex) -> Vec<EdgeReport> {
    let counts = count_sccs_all_edges(ix);
    let largest = lscc_all_edges(ix, Extreme::Largest);
    let smallest = lscc_all_edges(ix, Extreme::Smallest);
    (0..ix.m())
        .map(|e| EdgeReport {
            scc_count: counts[e],
            largest: largest[e],
            smallest: smallest[e],
        })
        .collect()
}

/// Extreme component weights per bridge node on both sides of a frame.
pub(crate) struct ExtremeTables {
    fwd: Vec<usize>,
    rev: Vec<usize>,
    mode: Extreme,
}

impl ExtremeTables {
    pub fn new(frame: &Frame, mode: Extreme) -> Self {
        let largest = mode == Extreme::Largest;
        ExtremeTables {
            fwd: frame.fwd.extreme_weights(largest),
            rev: frame.rev.extreme_weights(largest),
            mode,
        }
    }

    /// Extreme component size after deleting the bridge with heads `f` and `r`.
    pub fn at(&self, frame: &Frame, sizes: &FrameFold<i64>, f: usize, r: usize) -> usize {
        let rest = frame.rest_size(sizes, f, r);
        let mut best: Option<usize> = None;
        let mut offer = |w: usize| {
            if w == NONE || w == 0 {
                return;
            }
            best = Some(match (best, self.mode) {
                (None, _) => w,
                (Some(b), Extreme::Largest) => b.max(w),
                (Some(b), Extreme::Smallest) => b.min(w),
            });
        };
        if f != NONE {
            offer(self.fwd[f]);
        }
        if r != NONE {
            offer(self.rev[r]);
        }
        offer(rest);
        best.unwrap_or(0)
    }
}

impl Frame {
    /// Number of counted vertices outside both subtrees of the bridge with heads `f`, `r`.
    pub(crate) fn rest_size(&self, sizes: &FrameFold<i64>, f: usize, r: usize) -> usize {
        let inside = self.combine(&Size, sizes, f, r);
        (self.total as i64 - inside) as usize
    }

    pub(crate) fn aggregate<A: Algebra>(
        &self,
        alg: &A,
        fold: &FrameFold<A::Value>,
        sizes: &FrameFold<i64>,
        f: usize,
        r: usize,
    ) -> A::Value {
        let mut acc = self.combine(alg, fold, f, r);
        let rest = self.rest_size(sizes, f, r);
        if rest > 0 {
            alg.add(&mut acc, &alg.lift(rest));
        }
        acc
    }
}
