//! Loop nesting trees.
//!
//! Vertices are processed in reverse preorder of the depth-first search tree. Each edge
//! `(y, z)` becomes relevant once the search reaches `nca(y, z)` in that tree; from then
//! on it sits in the pending list of the current representative of `z`. When a vertex
//! `w` is processed, the representatives that reach `w` through pending edges are
//! collected with a worklist, receive `w` as their loop parent, and are merged into `w`
//! in a disjoint-set forest. Every edge is activated once and consumed once.

use super::{DfsTree, EdgeClass, Orientation, RootedTree};
use crate::graph_core::{Digraph, NONE};

/// Loop nesting forest of a flow graph relative to a depth-first search tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopNestingTree {
    pub tree: RootedTree,
}

impl LoopNestingTree {
    /// Loop parent `h(v)`, `None` for roots.
    pub fn header(&self, v: usize) -> Option<usize> {
        self.tree.parent(v)
    }
}

/// Loop nesting tree of `g` with respect to the depth-first search tree `t` of `g`.
pub fn loop_nesting_tree(g: &Digraph, t: &DfsTree) -> LoopNestingTree {
    loop_nesting_oriented(Orientation::forward(g), t)
}

pub(crate) fn loop_nesting_oriented(o: Orientation<'_>, t: &DfsTree) -> LoopNestingTree {
    LoopNestingTree {
        tree: RootedTree::from_parents(loop_parents(o, t)),
    }
}

fn loop_parents(o: Orientation<'_>, t: &DfsTree) -> Vec<usize> {
    let n = o.n();
    let m = o.m();
    // Each edge becomes usable once both ends lie below the vertex being processed,
    // that is at the nearest common ancestor of its ends. For a cross edge `(y, z)` that
    // ancestor is found when `y` is entered in preorder: every finished vertex has been
    // linked to its parent, so the set root of `z` is the deepest open ancestor of `z`.
    let mut act_head = vec![NONE; n];
    let mut next = vec![NONE; m];
    let mut up: Vec<usize> = (0..n).collect();
    let mut open: Vec<usize> = Vec::new();
    for &y in &t.order {
        while let Some(&top) = open.last() {
            if top == t.parent[y] {
                break;
            }
            open.pop();
            up[top] = t.parent[top];
        }
        open.push(y);
        for (&e, &z) in o.out_arcs(y).iter().zip(o.out_targets(y)) {
            let a = match t.classify(e, y, z) {
                EdgeClass::Back => z,
                EdgeClass::Tree | EdgeClass::Forward => y,
                EdgeClass::Cross => find(&mut up, z),
            };
            next[e] = act_head[a];
            act_head[a] = e;
        }
    }
    drop(up);

    let mut pending = vec![NONE; n];
    let mut set_parent: Vec<usize> = (0..n).collect();
    let mut stamp = vec![NONE; n];
    let mut header = vec![NONE; n];
    let mut worklist = Vec::new();

    for &w in t.order.iter().rev() {
        let mut e = std::mem::replace(&mut act_head[w], NONE);
        while e != NONE {
            let following = next[e];
            let r = find(&mut set_parent, o.ends(e).1);
            next[e] = pending[r];
            pending[r] = e;
            e = following;
        }
        let mut source = w;
        loop {
            let mut e = std::mem::replace(&mut pending[source], NONE);
            while e != NONE {
                let r = find(&mut set_parent, o.ends(e).0);
                if r != w && stamp[r] != w {
                    stamp[r] = w;
                    worklist.push(r);
                }
                e = next[e];
            }
            match worklist.pop() {
                Some(r) => {
                    header[r] = w;
                    set_parent[r] = w;
                    source = r;
                }
                None => break,
            }
        }
    }
    header
}

fn find(set_parent: &mut [usize], v: usize) -> usize {
    let mut root = v;
    while set_parent[root] != root {
        root = set_parent[root];
    }
    let mut x = v;
    while set_parent[x] != root {
        let up = set_parent[x];
        set_parent[x] = root;
        x = up;
    }
    root
}
