//! Directed multigraph storage, edge-list parsing and strongly connected components.

use std::io::BufRead;

use thiserror::Error;

/// Sentinel used in internal arrays for "no vertex" or "no edge".
pub const NONE: usize = usize::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({tail}, {head}) has an endpoint outside 0..{n}")]
    EndpointOutOfRange { tail: usize, head: usize, n: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: vertex id {id} out of range (n = {n})")]
    OutOfRange { line: usize, id: usize, n: usize },
    #[error("expected {expected} edge lines, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("missing header line `n m`")]
    MissingHeader,
    #[error("read error: {0}")]
    Io(String),
}

/// Immutable directed multigraph on vertices `0..n`.
///
/// Edges are identified by their position in the edge list. Out- and in-adjacency
/// lists hold edge indices in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    out_start: Vec<usize>,
    out_list: Vec<usize>,
    out_heads: Vec<usize>,
    in_start: Vec<usize>,
    in_list: Vec<usize>,
    in_tails: Vec<usize>,
}

impl Digraph {
    /// Builds a digraph from an edge list. Self-loops are dropped, so edge indices
    /// refer to the list with self-loops removed.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut kept = Vec::new();
        for (tail, head) in edges {
            if tail >= n || head >= n {
                return Err(GraphError::EndpointOutOfRange { tail, head, n });
            }
            if tail != head {
                kept.push((tail, head));
            }
        }
        Ok(Self::from_normalized(n, kept))
    }

    fn from_normalized(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let (out_start, out_list) = bucket(n, edges.iter().map(|e| e.0));
        let (in_start, in_list) = bucket(n, edges.iter().map(|e| e.1));
        let out_heads = out_list.iter().map(|&e| edges[e].1).collect();
        let in_tails = in_list.iter().map(|&e| edges[e].0).collect();
        Digraph {
            n,
            edges,
            out_start,
            out_list,
            out_heads,
            in_start,
            in_list,
            in_tails,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// `(tail, head)` of edge `e`.
    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Indices of edges leaving `v`, in increasing order.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_list[self.out_start[v]..self.out_start[v + 1]]
    }

    /// Indices of edges entering `v`, in increasing order.
    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.in_list[self.in_start[v]..self.in_start[v + 1]]
    }

    /// Heads of the edges in [`Digraph::out_edges`], position by position.
    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_heads[self.out_start[v]..self.out_start[v + 1]]
    }

    /// Tails of the edges in [`Digraph::in_edges`], position by position.
    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_tails[self.in_start[v]..self.in_start[v + 1]]
    }

    /// Index of the first edge from `tail` to `head`, if any.
    pub fn find_edge(&self, tail: usize, head: usize) -> Option<usize> {
        if tail >= self.n || head >= self.n {
            return None;
        }
        let at = self.out_neighbors(tail).iter().position(|&h| h == head)?;
        Some(self.out_edges(tail)[at])
    }
}

/// Groups `0..keys.len()` by key into a CSR layout; each bucket keeps increasing order.
fn bucket(n: usize, keys: impl Iterator<Item = usize> + Clone) -> (Vec<usize>, Vec<usize>) {
    let mut start = vec![0usize; n + 1];
    for k in keys.clone() {
        start[k + 1] += 1;
    }
    for v in 0..n {
        start[v + 1] += start[v];
    }
    let mut fill = start.clone();
    let mut list = vec![0usize; start[n]];
    for (i, k) in keys.enumerate() {
        list[fill[k]] = i;
        fill[k] += 1;
    }
    (start, list)
}

/// Parses the edge-list text format: a header `n m`, then `m` lines `tail head`.
/// Lines starting with `#` and blank lines are ignored.
pub fn parse_digraph(input: impl BufRead) -> Result<Digraph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut found = 0usize;
    for (idx, line) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| ParseError::Io(e.to_string()))?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let (a, b) = parse_pair(text, line_no)?;
        match header {
            None => header = Some((a, b)),
            Some((n, m)) => {
                found += 1;
                if found > m {
                    return Err(ParseError::EdgeCount { expected: m, found });
                }
                for id in [a, b] {
                    if id >= n {
                        return Err(ParseError::OutOfRange {
                            line: line_no,
                            id,
                            n,
                        });
                    }
                }
                if a != b {
                    edges.push((a, b));
                }
            }
        }
    }
    let (n, m) = header.ok_or(ParseError::MissingHeader)?;
    if found != m {
        return Err(ParseError::EdgeCount { expected: m, found });
    }
    Ok(Digraph::from_normalized(n, edges))
}

/// Convenience wrapper around [`parse_digraph`] for in-memory text.
pub fn parse_digraph_str(text: &str) -> Result<Digraph, ParseError> {
    parse_digraph(text.as_bytes())
}

fn parse_pair(text: &str, line: usize) -> Result<(usize, usize), ParseError> {
    let mut tokens = text.split_whitespace();
    let mut next = |what: &str| -> Result<usize, ParseError> {
        let tok = tokens.next().ok_or_else(|| ParseError::Malformed {
            line,
            message: format!("missing {what}"),
        })?;
        if tok.starts_with('-') {
            return Err(ParseError::Malformed {
                line,
                message: format!("negative id `{tok}`"),
            });
        }
        tok.parse::<usize>().map_err(|_| ParseError::Malformed {
            line,
            message: format!("`{tok}` is not a non-negative integer"),
        })
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if let Some(extra) = tokens.next() {
        return Err(ParseError::Malformed {
            line,
            message: format!("unexpected token `{extra}`"),
        });
    }
    Ok((a, b))
}

/// Writes `g` in the edge-list text format.
pub fn format_digraph(g: &Digraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for &(t, h) in g.edges() {
        out.push_str(&format!("{t} {h}\n"));
    }
    out
}

/// The digraph with every edge reversed; edge `i` keeps index `i`.
pub fn reverse(g: &Digraph) -> Digraph {
    Digraph::from_normalized(g.n, g.edges.iter().map(|&(t, h)| (h, t)).collect())
}

/// A partition of the surviving vertices into strongly connected components.
///
/// Components are numbered by their smallest member and list members in ascending
/// order, so equal partitions compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccPartition {
    pub component_of: Vec<Option<usize>>,
    pub components: Vec<Vec<usize>>,
    pub excluded: Option<usize>,
}

impl SccPartition {
    /// Canonicalizes an arbitrary labeling: vertices with equal labels share a
    /// component. Vertices labeled [`NONE`] belong to no component and should be exactly
    /// the excluded vertex.
    pub fn from_labels(labels: &[usize], excluded: Option<usize>) -> Self {
        let n = labels.len();
        let bound = labels
            .iter()
            .filter(|&&l| l != NONE)
            .max()
            .map_or(0, |&l| l + 1);
        let mut rename = vec![NONE; bound];
        let mut component_of = vec![None; n];
        let mut components: Vec<Vec<usize>> = Vec::new();
        for v in 0..n {
            let l = labels[v];
            if l == NONE {
                continue;
            }
            if rename[l] == NONE {
                rename[l] = components.len();
                components.push(Vec::new());
            }
            components[rename[l]].push(v);
            component_of[v] = Some(rename[l]);
        }
        SccPartition {
            component_of,
            components,
            excluded,
        }
    }

    pub fn count(&self) -> usize {
        self.components.len()
    }

    pub fn largest(&self) -> usize {
        self.components.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn smallest(&self) -> usize {
        self.components.iter().map(Vec::len).min().unwrap_or(0)
    }
}

/// Strongly connected components by an iterative Tarjan traversal.
pub fn strongly_connected_components(g: &Digraph) -> SccPartition {
    let n = g.n;
    let mut index = vec![NONE; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut label = vec![NONE; n];
    let mut stack = Vec::new();
    let mut frames: Vec<(usize, usize)> = Vec::new();
    let mut counter = 0;
    let mut next_label = 0;
    for root in 0..n {
        if index[root] != NONE {
            continue;
        }
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        frames.push((root, 0));
        while let Some(&mut (v, ref mut pos)) = frames.last_mut() {
            let out = g.out_neighbors(v);
            if *pos < out.len() {
                let w = out[*pos];
                *pos += 1;
                if index[w] == NONE {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            frames.pop();
            if let Some(&(parent, _)) = frames.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack holds the component");
                    on_stack[w] = false;
                    label[w] = next_label;
                    if w == v {
                        break;
                    }
                }
                next_label += 1;
            }
        }
    }
    SccPartition::from_labels(&label, None)
}

/// True iff `g` has at most one vertex or a single component spanning all vertices.
pub fn is_strongly_connected(g: &Digraph) -> bool {
    g.n <= 1 || strongly_connected_components(g).count() == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const CYCLE5: &str = "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n";
    pub(crate) const BITRI: &str = "3 6\n0 1\n1 0\n1 2\n2 1\n2 0\n0 2\n";

    fn fig8() -> Digraph {
        Digraph::new(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap()
    }

    #[test]
    fn parses_cycle_and_triangle() {
        let g = parse_digraph_str(CYCLE5).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edges(), &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let t = parse_digraph_str(BITRI).unwrap();
        assert_eq!(t.m(), 6);
        assert_eq!(t.out_edges(1), &[1, 2]);
        assert_eq!(t.in_edges(0), &[1, 4]);
    }

    #[test]
    fn parse_reports_out_of_range_line() {
        assert_eq!(
            parse_digraph_str("2 1\n0 2\n"),
            Err(ParseError::OutOfRange {
                line: 2,
                id: 2,
                n: 2
            })
        );
    }

    #[test]
    fn parse_rejects_bad_tokens() {
        assert!(matches!(
            parse_digraph_str("2 1\n0 -1\n"),
            Err(ParseError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            parse_digraph_str("2 x\n"),
            Err(ParseError::Malformed { line: 1, .. })
        ));
        assert!(matches!(
            parse_digraph_str("3\n"),
            Err(ParseError::Malformed { line: 1, .. })
        ));
        assert_eq!(
            parse_digraph_str("# only\n"),
            Err(ParseError::MissingHeader)
        );
        assert_eq!(
            parse_digraph_str("2 2\n0 1\n"),
            Err(ParseError::EdgeCount {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn parse_drops_self_loops_keeps_parallel_and_skips_comments() {
        let g = parse_digraph_str("# c\n3 4\n0 1\n1 1\n# mid\n0 1\n1 0\n").unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 1), (1, 0)]);
        assert_eq!(g.find_edge(0, 1), Some(0));
        assert_eq!(format_digraph(&g), "3 3\n0 1\n0 1\n1 0\n");
    }

    #[test]
    fn reverse_examples() {
        let g = parse_digraph_str(CYCLE5).unwrap();
        let r = reverse(&g);
        assert_eq!(r.edges(), &[(1, 0), (2, 1), (3, 2), (4, 3), (0, 4)]);
        assert_eq!(reverse(&r), g);
        let t = parse_digraph_str(BITRI).unwrap();
        let mut a = t.edges().to_vec();
        let mut b = reverse(&t).edges().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        let empty = Digraph::new(0, []).unwrap();
        assert_eq!(reverse(&empty), empty);
    }

    #[test]
    fn scc_examples() {
        let g = parse_digraph_str(CYCLE5).unwrap();
        let p = strongly_connected_components(&g);
        assert_eq!(p.components, vec![vec![0, 1, 2, 3, 4]]);
        let path = Digraph::new(5, [(0, 1), (1, 2), (3, 4), (4, 0)]).unwrap();
        assert_eq!(strongly_connected_components(&path).count(), 5);
        assert_eq!(
            strongly_connected_components(&fig8()).components,
            vec![vec![0, 1, 2, 3, 4]]
        );
    }

    #[test]
    fn strong_connectivity_examples() {
        assert!(is_strongly_connected(&fig8()));
        let broken = Digraph::new(5, [(1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert!(!is_strongly_connected(&broken));
        assert!(is_strongly_connected(&Digraph::new(1, []).unwrap()));
    }

    #[test]
    fn partition_canonical_form() {
        let p = SccPartition::from_labels(&[7, 3, 7, NONE, 3], Some(3));
        assert_eq!(p.components, vec![vec![0, 2], vec![1, 4]]);
        assert_eq!(
            p.component_of,
            vec![Some(0), Some(1), Some(0), None, Some(1)]
        );
        assert_eq!((p.largest(), p.smallest()), (2, 2));
    }
}
