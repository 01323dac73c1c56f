//! Command-line front end: per-component analysis reports, batch queries, oracle
//! cross-checks and timing.
//!
//! Inputs that are not strongly connected are split into their strongly connected
//! components, each analyzed on its own with vertices and edges renumbered locally and
//! translated back to input ids on output.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufReader, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::blocks::{two_edge_connected_blocks, two_vertex_connected_blocks, Blocks};
use crate::edge_analytics::{
    build_index, count_sccs_all_edges, edge_reports, lscc_all_edges, report_sccs_after_edge,
    ConnectivityIndex, EdgeReport, Extreme, IndexError,
};
use crate::graph_core::{
    parse_digraph, strongly_connected_components, Digraph, ParseError, SccPartition,
};
use crate::oracle::{
    random_strongly_connected_digraph, BlockKind, DeletionTable, OracleError, RandomSpec,
    MAX_BLOCK_ORACLE_N,
};
use crate::query_engine::{QueryHandle, Witness};
use crate::vertex_analytics::{
    count_sccs_all_vertices, lscc_all_vertices, report_sccs_after_vertex,
    strong_articulation_points, vertex_reports,
};

/// Version tag written at the top of every JSON report.
pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Parser)]
#[command(
    name = "strongconn",
    version,
    about = "Strong connectivity under single edge or vertex deletion"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report strong bridges, articulation points, per-deletion statistics and blocks.
    Analyze(AnalyzeArgs),
    /// Answer a file of pairwise connectivity queries, one answer line per query.
    Query(QueryArgs),
    /// Compare the fast algorithms against the brute-force oracle on random graphs.
    Check(CheckArgs),
    /// Time index construction and the all-edges and all-vertices batches.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Edge-list file, or `-` for standard input.
    pub graph: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Start vertex used inside the component containing it.
    #[arg(long)]
    pub start_vertex: Option<usize>,
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    /// Edge-list file, or `-` for standard input.
    pub graph: PathBuf,
    /// Query file with one query per line.
    #[arg(long)]
    pub queries: PathBuf,
    #[arg(long)]
    pub start_vertex: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    #[arg(long, default_value_t = 16)]
    pub m: usize,
    /// Number of consecutive seeds to check.
    #[arg(long, default_value_t = 100)]
    pub seeds: u64,
    /// First seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Leave out the block comparisons, which need n <= 12.
    #[arg(long)]
    pub skip_blocks: bool,
    /// Perturb one reported count before comparing.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Edge-list file; omit to generate a graph.
    pub graph: Option<PathBuf>,
    /// Vertex count of a generated graph.
    #[arg(long, default_value_t = 10_000)]
    pub n: usize,
    /// Edge count of a generated random graph; defaults to 5n.
    #[arg(long)]
    pub m: Option<usize>,
    /// Generate a directed cycle instead of a random graph.
    #[arg(long)]
    pub cycle: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Repetitions; the median time is reported.
    #[arg(long, default_value_t = 3)]
    pub repeat: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error(transparent)]
    Index(#[from] IndexError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("query line {line}: {message}")]
    Query { line: usize, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("write error: {0}")]
    Output(#[from] io::Error),
}

/// How a successful run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    CheckFailed,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Ok => 0,
            Outcome::CheckFailed => 1,
        }
    }
}

/// Exit code for usage, input and parse errors.
pub const USAGE_EXIT_CODE: u8 = 2;

/// Runs one command, writing its normal output to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Analyze(args) => {
            let g = read_graph(&args.graph)?;
            let analysis = Analysis::new(g, args.start_vertex)?;
            let report = analysis.report();
            match args.format {
                Format::Json => writeln!(out, "{}", report.to_json())?,
                Format::Text => write!(out, "{}", report.to_text())?,
            }
            Ok(Outcome::Ok)
        }
        Command::Query(args) => {
            let g = read_graph(&args.graph)?;
            let text = read_text(&args.queries)?;
            let analysis = Analysis::new(g, args.start_vertex)?;
            for answer in analysis.answer_batch(&text)? {
                writeln!(out, "{answer}")?;
            }
            Ok(Outcome::Ok)
        }
        Command::Check(args) => {
            let summary = check(&CheckConfig {
                n: args.n,
                m: args.m,
                seeds: args.seeds,
                first_seed: args.seed,
                blocks: !args.skip_blocks,
                inject_fault: args.inject_fault,
            })?;
            write!(out, "{}", summary.to_text())?;
            Ok(if summary.failures.is_empty() {
                Outcome::Ok
            } else {
                Outcome::CheckFailed
            })
        }
        Command::Bench(args) => {
            let g = match &args.graph {
                Some(path) => read_graph(path)?,
                None if args.cycle => crate::oracle::directed_cycle(args.n),
                None => {
                    let m = args.m.unwrap_or(5 * args.n);
                    random_strongly_connected_digraph(RandomSpec {
                        n: args.n,
                        m,
                        seed: args.seed,
                    })?
                }
            };
            if !crate::graph_core::is_strongly_connected(&g) {
                return Err(CliError::Usage(
                    "bench needs a strongly connected graph".into(),
                ));
            }
            let report = bench(&g, 0, args.repeat.max(1))?;
            match args.format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&report).expect("bench report serializes")
                )?,
                Format::Text => write!(out, "{}", report.to_text())?,
            }
            Ok(Outcome::Ok)
        }
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    let io_err = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    let mut text = String::new();
    if path == Path::new("-") {
        io::stdin().read_to_string(&mut text).map_err(io_err)?;
    } else {
        File::open(path)
            .and_then(|mut f| f.read_to_string(&mut text))
            .map_err(io_err)?;
    }
    Ok(text)
}

fn read_graph(path: &Path) -> Result<Digraph, CliError> {
    let name = path.display().to_string();
    let parsed = if path == Path::new("-") {
        parse_digraph(io::stdin().lock())
    } else {
        let file = File::open(path).map_err(|source| CliError::Io {
            path: name.clone(),
            source,
        })?;
        parse_digraph(BufReader::new(file))
    };
    parsed.map_err(|source| CliError::Parse { path: name, source })
}

/// One strongly connected component of the input with its own index.
///
/// Local vertex `i` is `vertices[i]` and local edge `j` is `edges[j]`; both lists are
/// ascending, so local order agrees with input order.
#[derive(Debug)]
pub struct Component {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub index: ConnectivityIndex,
}

/// An input graph split into strongly connected components, each indexed.
#[derive(Debug)]
pub struct Analysis {
    graph: Digraph,
    components: Vec<Component>,
    component_of: Vec<usize>,
    local_id: Vec<usize>,
}

impl Analysis {
    /// Indexes every component. `start`, if given, is the start vertex of its own
    /// component; the others start at their smallest vertex.
    pub fn new(graph: Digraph, start: Option<usize>) -> Result<Self, CliError> {
        if let Some(s) = start {
            if s >= graph.n() {
                return Err(CliError::Usage(format!(
                    "start vertex {s} is out of range for a graph with {} vertices",
                    graph.n()
                )));
            }
        }
        let SccPartition {
            component_of,
            components: members,
            ..
        } = strongly_connected_components(&graph);
        let component_of: Vec<usize> = component_of
            .into_iter()
            .map(|c| c.expect("no vertex is deleted"))
            .collect();
        let mut local_id = vec![0usize; graph.n()];
        for list in &members {
            for (i, &v) in list.iter().enumerate() {
                local_id[v] = i;
            }
        }
        let mut edge_lists = vec![Vec::new(); members.len()];
        for (e, &(t, h)) in graph.edges().iter().enumerate() {
            if component_of[t] == component_of[h] {
                edge_lists[component_of[t]].push(e);
            }
        }
        let mut components = Vec::with_capacity(members.len());
        for (c, (vertices, edges)) in members.into_iter().zip(edge_lists).enumerate() {
            let local_edges = edges.iter().map(|&e| {
                let (t, h) = graph.edge(e);
                (local_id[t], local_id[h])
            });
            let sub = Digraph::new(vertices.len(), local_edges).expect("local ids are in range");
            let s = match start {
                Some(s) if component_of[s] == c => local_id[s],
                _ => 0,
            };
            let index = build_index(sub, s)?;
            components.push(Component {
                vertices,
                edges,
                index,
            });
        }
        Ok(Analysis {
            graph,
            components,
            component_of,
            local_id,
        })
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    fn edge_triple(&self, e: usize) -> [usize; 3] {
        let (t, h) = self.graph.edge(e);
        [t, h, e]
    }

    /// The full report over all components.
    pub fn report(&self) -> AnalysisReport {
        let components = self
            .components
            .iter()
            .map(|c| self.component_report(c))
            .collect();
        AnalysisReport {
            schema: SCHEMA_VERSION.to_string(),
            n: self.graph.n(),
            m: self.graph.m(),
            scc_count: self.components.len(),
            components,
        }
    }

    fn component_report(&self, c: &Component) -> ComponentReport {
        type Metric = fn(&EdgeReport) -> usize;
        let ix = &c.index;
        let edge_stats = edge_reports(ix);
        let vertex_stats = vertex_reports(ix);
        let by_edge = |pick: fn(&EdgeReport) -> usize| -> BTreeMap<usize, usize> {
            edge_stats
                .iter()
                .enumerate()
                .map(|(j, r)| (c.edges[j], pick(r)))
                .collect()
        };
        let by_vertex = |pick: fn(&EdgeReport) -> usize| -> BTreeMap<usize, usize> {
            vertex_stats
                .iter()
                .enumerate()
                .map(|(i, r)| (c.vertices[i], pick(r)))
                .collect()
        };
        let global_blocks = |blocks: &Blocks| -> Blocks {
            blocks
                .iter()
                .map(|b| b.iter().map(|&v| c.vertices[v]).collect())
                .collect()
        };
        let metrics: [(&str, Metric); 3] = [
            ("scc_count", |r| r.scc_count),
            ("largest_scc", |r| r.largest),
            ("smallest_scc", |r| r.smallest),
        ];
        let mut critical_edges = BTreeMap::new();
        let mut critical_vertices = BTreeMap::new();
        for (name, pick) in metrics {
            if let Some(x) = extremes(edge_stats.iter().map(pick)) {
                critical_edges.insert(
                    name.to_string(),
                    Critical {
                        argmin: self.edge_triple(c.edges[x.argmin]),
                        min: x.min,
                        argmax: self.edge_triple(c.edges[x.argmax]),
                        max: x.max,
                    },
                );
            }
            if let Some(x) = extremes(vertex_stats.iter().map(pick)) {
                critical_vertices.insert(
                    name.to_string(),
                    Critical {
                        argmin: c.vertices[x.argmin],
                        min: x.min,
                        argmax: c.vertices[x.argmax],
                        max: x.max,
                    },
                );
            }
        }
        ComponentReport {
            vertices: c.vertices.clone(),
            edges: c.edges.iter().map(|&e| self.edge_triple(e)).collect(),
            strong_bridges: ix
                .strong_bridges()
                .into_iter()
                .map(|j| self.edge_triple(c.edges[j]))
                .collect(),
            strong_articulation_points: strong_articulation_points(ix)
                .into_iter()
                .map(|v| c.vertices[v])
                .collect(),
            scc_count_after_edge: by_edge(|r| r.scc_count),
            largest_scc_after_edge: by_edge(|r| r.largest),
            smallest_scc_after_edge: by_edge(|r| r.smallest),
            scc_count_after_vertex: by_vertex(|r| r.scc_count),
            largest_scc_after_vertex: by_vertex(|r| r.largest),
            smallest_scc_after_vertex: by_vertex(|r| r.smallest),
            blocks_2ec: global_blocks(&two_edge_connected_blocks(ix)),
            blocks_vr: global_blocks(ix.block_forest().blocks()),
            blocks_2vc: global_blocks(&two_vertex_connected_blocks(ix)),
            critical_edges,
            critical_vertices,
        }
    }

    /// Answers every query line of `text`; blank lines and `#` comments are skipped.
    pub fn answer_batch(&self, text: &str) -> Result<Vec<String>, CliError> {
        let mut handles: Vec<QueryHandle<'_>> = self
            .components
            .iter()
            .map(|c| QueryHandle::new(&c.index))
            .collect();
        let mut answers = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let query = parse_query(raw).map_err(|message| CliError::Query { line, message })?;
            if let Some(q) = query {
                let answer = self.answer(&mut handles, q).map_err(|e| CliError::Query {
                    line,
                    message: e.to_string(),
                })?;
                answers.push(answer);
            }
        }
        Ok(answers)
    }

    fn check_vertex(&self, v: usize) -> Result<(), String> {
        if v >= self.graph.n() {
            return Err(format!(
                "vertex {v} is out of range for a graph with {} vertices",
                self.graph.n()
            ));
        }
        Ok(())
    }

    /// The component shared by `x` and `y`, or `None` if they lie in different ones.
    fn shared_component(&self, x: usize, y: usize) -> Result<Option<usize>, String> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        if x == y {
            return Err(format!("query needs two distinct vertices, got {x} twice"));
        }
        let c = self.component_of[x];
        Ok((c == self.component_of[y]).then_some(c))
    }

    fn format_edge(&self, e: usize) -> String {
        let (t, h) = self.graph.edge(e);
        format!("({t},{h})")
    }

    fn answer(&self, handles: &mut [QueryHandle<'_>], q: Query) -> Result<String, String> {
        let (x, y) = q.pair();
        let Some(c) = self.shared_component(x, y)? else {
            return Ok(match q {
                Query::SeparatingEdges(..) | Query::SeparatingVertices(..) => String::new(),
                Query::EdgeSeparates(t, h, ..) => {
                    self.graph
                        .find_edge(t, h)
                        .ok_or_else(|| format!("no edge ({t},{h})"))?;
                    "no".to_string()
                }
                Query::VertexSeparates(u, ..) => {
                    self.check_vertex(u)?;
                    "no".to_string()
                }
                Query::TwoEdge(..) | Query::TwoVertex(..) => "no".to_string(),
            });
        };
        let comp = &self.components[c];
        let handle = &mut handles[c];
        let (lx, ly) = (self.local_id[x], self.local_id[y]);
        let edge_of = |j: usize| comp.edges[j];
        let text = match q {
            Query::TwoEdge(..) | Query::TwoVertex(..) => {
                let ans = if matches!(q, Query::TwoEdge(..)) {
                    handle.are_2ec(lx, ly)
                } else {
                    handle.are_2vc(lx, ly)
                }
                .map_err(|e| e.to_string())?;
                match ans.witness {
                    None => "yes".to_string(),
                    Some(Witness::Edge(j)) => format!("no {}", self.format_edge(edge_of(j))),
                    Some(Witness::Vertex(v)) => format!("no {}", comp.vertices[v]),
                }
            }
            Query::SeparatingEdges(..) => {
                let edges = handle.separating_edges(lx, ly).map_err(|e| e.to_string())?;
                edges
                    .into_iter()
                    .map(|j| self.format_edge(edge_of(j)))
                    .collect::<Vec<_>>()
                    .join(" ")
            }
            Query::SeparatingVertices(..) => {
                let vertices = handle
                    .separating_vertices(lx, ly)
                    .map_err(|e| e.to_string())?;
                vertices
                    .into_iter()
                    .map(|v| comp.vertices[v].to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            }
            Query::EdgeSeparates(t, h, ..) => {
                let e = self
                    .graph
                    .find_edge(t, h)
                    .ok_or_else(|| format!("no edge ({t},{h})"))?;
                let hit = match comp.edges.binary_search(&e) {
                    Ok(j) => handle
                        .edge_separates(j, lx, ly)
                        .map_err(|e| e.to_string())?,
                    Err(_) => false,
                };
                yes_no(hit)
            }
            Query::VertexSeparates(u, ..) => {
                self.check_vertex(u)?;
                if u == x || u == y {
                    return Err(format!("vertex {u} is one of the query endpoints"));
                }
                let hit = self.component_of[u] == c
                    && handle
                        .vertex_separates(self.local_id[u], lx, ly)
                        .map_err(|e| e.to_string())?;
                yes_no(hit)
            }
        };
        Ok(text)
    }
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

/// One line of a query file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Query {
    TwoEdge(usize, usize),
    TwoVertex(usize, usize),
    SeparatingEdges(usize, usize),
    SeparatingVertices(usize, usize),
    EdgeSeparates(usize, usize, usize, usize),
    VertexSeparates(usize, usize, usize),
}

impl Query {
    fn pair(self) -> (usize, usize) {
        match self {
            Query::TwoEdge(x, y)
            | Query::TwoVertex(x, y)
            | Query::SeparatingEdges(x, y)
            | Query::SeparatingVertices(x, y)
            | Query::EdgeSeparates(_, _, x, y)
            | Query::VertexSeparates(_, x, y) => (x, y),
        }
    }
}

/// Parses one query line; `Ok(None)` for blank lines and `#` comments.
pub fn parse_query(line: &str) -> Result<Option<Query>, String> {
    let line = line.trim();
    if line.is_empty() || line.starts_with('#') {
        return Ok(None);
    }
    let mut words = line.split_whitespace();
    let verb = words.next().expect("line is not empty");
    let args = words
        .map(|w| {
            w.parse::<usize>()
                .map_err(|_| format!("`{w}` is not a vertex id"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let arity = match verb {
        "2ec" | "2vc" | "sep-edges" | "sep-vertices" => 2,
        "edge-separates" => 4,
        "vertex-separates" => 3,
        other => return Err(format!("unknown query `{other}`")),
    };
    if args.len() != arity {
        return Err(format!(
            "`{verb}` takes {arity} vertex ids, got {}",
            args.len()
        ));
    }
    let a = &args;
    Ok(Some(match verb {
        "2ec" => Query::TwoEdge(a[0], a[1]),
        "2vc" => Query::TwoVertex(a[0], a[1]),
        "sep-edges" => Query::SeparatingEdges(a[0], a[1]),
        "sep-vertices" => Query::SeparatingVertices(a[0], a[1]),
        "edge-separates" => Query::EdgeSeparates(a[0], a[1], a[2], a[3]),
        _ => Query::VertexSeparates(a[0], a[1], a[2]),
    }))
}

/// Smallest and largest value of a metric with the first index attaining each.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Critical<T> {
    pub argmin: T,
    pub min: usize,
    pub argmax: T,
    pub max: usize,
}

fn extremes(values: impl Iterator<Item = usize>) -> Option<Critical<usize>> {
    let mut best: Option<Critical<usize>> = None;
    for (i, v) in values.enumerate() {
        let b = best.get_or_insert(Critical {
            argmin: i,
            min: v,
            argmax: i,
            max: v,
        });
        if v < b.min {
            b.argmin = i;
            b.min = v;
        }
        if v > b.max {
            b.argmax = i;
            b.max = v;
        }
    }
    best
}

/// Analysis of one strongly connected component, in input ids. Edges are written as
/// `[tail, head, index]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub vertices: Vec<usize>,
    pub edges: Vec<[usize; 3]>,
    pub strong_bridges: Vec<[usize; 3]>,
    pub strong_articulation_points: Vec<usize>,
    pub scc_count_after_edge: BTreeMap<usize, usize>,
    pub largest_scc_after_edge: BTreeMap<usize, usize>,
    pub smallest_scc_after_edge: BTreeMap<usize, usize>,
    pub scc_count_after_vertex: BTreeMap<usize, usize>,
    pub largest_scc_after_vertex: BTreeMap<usize, usize>,
    pub smallest_scc_after_vertex: BTreeMap<usize, usize>,
    pub blocks_2ec: Blocks,
    pub blocks_vr: Blocks,
    pub blocks_2vc: Blocks,
    pub critical_edges: BTreeMap<String, Critical<[usize; 3]>>,
    pub critical_vertices: BTreeMap<String, Critical<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: String,
    pub n: usize,
    pub m: usize,
    pub scc_count: usize,
    pub components: Vec<ComponentReport>,
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn edge_label(e: &[usize; 3]) -> String {
    format!("e{}=({},{})", e[2], e[0], e[1])
}

fn block_list(blocks: &Blocks) -> String {
    if blocks.is_empty() {
        return "-".to_string();
    }
    blocks
        .iter()
        .map(|b| {
            format!(
                "{{{}}}",
                b.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        })
        .collect::<Vec<_>>()
        .join(" ")
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Human-readable rendering with aligned tables.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "schema {}  n {}  m {}  components {}",
            self.schema, self.n, self.m, self.scc_count
        );
        for (c, r) in self.components.iter().enumerate() {
            let _ = writeln!(
                s,
                "\ncomponent {c}: {} vertices, {} edges",
                r.vertices.len(),
                r.edges.len()
            );
            let _ = writeln!(s, "  vertices: {}", join(&r.vertices));
            let bridges: Vec<String> = r.strong_bridges.iter().map(edge_label).collect();
            let _ = writeln!(
                s,
                "  strong bridges: {}",
                if bridges.is_empty() {
                    "-".into()
                } else {
                    bridges.join(" ")
                }
            );
            let saps = if r.strong_articulation_points.is_empty() {
                "-".into()
            } else {
                join(&r.strong_articulation_points)
            };
            let _ = writeln!(s, "  strong articulation points: {saps}");
            let _ = writeln!(s, "  blocks 2ec: {}", block_list(&r.blocks_2ec));
            let _ = writeln!(s, "  blocks vr:  {}", block_list(&r.blocks_vr));
            let _ = writeln!(s, "  blocks 2vc: {}", block_list(&r.blocks_2vc));
            if !r.edges.is_empty() {
                let labels: Vec<String> = r.edges.iter().map(edge_label).collect();
                let w = labels.iter().map(String::len).max().unwrap_or(0).max(4);
                let _ = writeln!(
                    s,
                    "  {:<w$}  {:>5}  {:>7}  {:>8}",
                    "edge", "sccs", "largest", "smallest"
                );
                for (label, e) in labels.iter().zip(&r.edges) {
                    let _ = writeln!(
                        s,
                        "  {label:<w$}  {:>5}  {:>7}  {:>8}",
                        r.scc_count_after_edge[&e[2]],
                        r.largest_scc_after_edge[&e[2]],
                        r.smallest_scc_after_edge[&e[2]]
                    );
                }
            }
            let w = r
                .vertices
                .iter()
                .map(|v| v.to_string().len())
                .max()
                .unwrap_or(0)
                .max(6);
            let _ = writeln!(
                s,
                "  {:<w$}  {:>5}  {:>7}  {:>8}",
                "vertex", "sccs", "largest", "smallest"
            );
            for v in &r.vertices {
                let _ = writeln!(
                    s,
                    "  {v:<w$}  {:>5}  {:>7}  {:>8}",
                    r.scc_count_after_vertex[v],
                    r.largest_scc_after_vertex[v],
                    r.smallest_scc_after_vertex[v]
                );
            }
            for (name, x) in &r.critical_edges {
                let _ = writeln!(
                    s,
                    "  critical edge {name}: min {} at {}, max {} at {}",
                    x.min,
                    edge_label(&x.argmin),
                    x.max,
                    edge_label(&x.argmax)
                );
            }
            for (name, x) in &r.critical_vertices {
                let _ = writeln!(
                    s,
                    "  critical vertex {name}: min {} at {}, max {} at {}",
                    x.min, x.argmin, x.max, x.argmax
                );
            }
        }
        s
    }
}

/// Parameters of an oracle cross-check run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckConfig {
    pub n: usize,
    pub m: usize,
    pub seeds: u64,
    pub first_seed: u64,
    pub blocks: bool,
    /// Adds one to the reported component count of edge 0 before comparing.
    pub inject_fault: bool,
}

/// First disagreement found on one seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckFailure {
    pub seed: u64,
    pub operation: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckSummary {
    pub seeds: u64,
    pub failures: Vec<CheckFailure>,
}

impl CheckSummary {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for f in &self.failures {
            let _ = writeln!(
                s,
                "FAIL seed {} {}: expected {}, got {}",
                f.seed, f.operation, f.expected, f.actual
            );
        }
        let passed = self.seeds - self.failures.len() as u64;
        let _ = writeln!(s, "{passed}/{} seeds passed", self.seeds);
        s
    }
}

/// Runs the oracle comparison on consecutive seeds.
pub fn check(config: &CheckConfig) -> Result<CheckSummary, CliError> {
    if config.blocks && config.n > MAX_BLOCK_ORACLE_N {
        return Err(CliError::Usage(format!(
            "block checks support n <= {MAX_BLOCK_ORACLE_N}, got n = {}; pass --skip-blocks",
            config.n
        )));
    }
    if config.n == 0 {
        return Err(CliError::Usage("n must be positive".into()));
    }
    let mut failures = Vec::new();
    for seed in config.first_seed..config.first_seed + config.seeds {
        let g = random_strongly_connected_digraph(RandomSpec {
            n: config.n,
            m: config.m,
            seed,
        })?;
        if let Err((operation, expected, actual)) = check_instance(&g, config) {
            failures.push(CheckFailure {
                seed,
                operation,
                expected,
                actual,
            });
        }
    }
    Ok(CheckSummary {
        seeds: config.seeds,
        failures,
    })
}

type Mismatch = (String, String, String);

fn expect_eq<T: PartialEq + std::fmt::Debug>(
    operation: impl FnOnce() -> String,
    expected: T,
    actual: T,
) -> Result<(), Mismatch> {
    if expected == actual {
        Ok(())
    } else {
        Err((operation(), format!("{expected:?}"), format!("{actual:?}")))
    }
}

fn stats(p: &SccPartition) -> EdgeReport {
    EdgeReport {
        scc_count: p.count(),
        largest: p.largest(),
        smallest: p.smallest(),
    }
}

fn check_instance(g: &Digraph, config: &CheckConfig) -> Result<(), Mismatch> {
    let ix = build_index(g.clone(), 0).map_err(|e| {
        (
            "build_index".to_string(),
            "an index".to_string(),
            e.to_string(),
        )
    })?;
    let table = DeletionTable::new(g);
    let mut edge_stats = edge_reports(&ix);
    if config.inject_fault {
        if let Some(r) = edge_stats.first_mut() {
            r.scc_count += 1;
        }
    }
    for (e, &report) in edge_stats.iter().enumerate() {
        let p = report_sccs_after_edge(&ix, e).expect("edge is in range");
        expect_eq(
            || format!("report_sccs_after_edge({e})"),
            table.after_edge(e),
            &p,
        )?;
        expect_eq(
            || format!("edge_reports[{e}]"),
            stats(table.after_edge(e)),
            report,
        )?;
    }
    let vertex_stats = vertex_reports(&ix);
    for (u, &report) in vertex_stats.iter().enumerate() {
        let p = report_sccs_after_vertex(&ix, u).expect("vertex is in range");
        expect_eq(
            || format!("report_sccs_after_vertex({u})"),
            table.after_vertex(u),
            &p,
        )?;
        expect_eq(
            || format!("vertex_reports[{u}]"),
            stats(table.after_vertex(u)),
            report,
        )?;
    }
    if config.blocks {
        let oracle = |kind| table.blocks(kind).expect("n is within the oracle limit");
        expect_eq(
            || "two_edge_connected_blocks".into(),
            oracle(BlockKind::TwoEdge),
            two_edge_connected_blocks(&ix),
        )?;
        expect_eq(
            || "vertex_resilient_blocks".into(),
            oracle(BlockKind::VertexResilient),
            ix.block_forest().blocks().clone(),
        )?;
        expect_eq(
            || "two_vertex_connected_blocks".into(),
            oracle(BlockKind::TwoVertex),
            two_vertex_connected_blocks(&ix),
        )?;
    }
    let mut handle = QueryHandle::new(&ix);
    for x in 0..g.n() {
        for y in 0..g.n() {
            if x == y {
                continue;
            }
            let edges = handle.separating_edges(x, y).expect("valid pair");
            expect_eq(
                || format!("separating_edges({x},{y})"),
                table.separating_edges(x, y),
                edges,
            )?;
            let vertices = handle.separating_vertices(x, y).expect("valid pair");
            expect_eq(
                || format!("separating_vertices({x},{y})"),
                table.separating_vertices(x, y),
                vertices,
            )?;
            for (name, ans) in [
                ("are_2ec", handle.are_2ec(x, y).expect("valid pair")),
                ("are_2vc", handle.are_2vc(x, y).expect("valid pair")),
            ] {
                let expected = table.separating_edges(x, y).is_empty()
                    && (name == "are_2ec" || table.separating_vertices(x, y).is_empty());
                expect_eq(|| format!("{name}({x},{y})"), expected, ans.connected)?;
                let verified = match ans.witness {
                    None => true,
                    Some(Witness::Edge(e)) => table.edge_separates(e, x, y),
                    Some(Witness::Vertex(u)) => table.vertex_separates(u, x, y),
                };
                expect_eq(
                    || format!("{name}({x},{y}) witness {:?}", ans.witness),
                    true,
                    verified,
                )?;
            }
        }
    }
    Ok(())
}

/// Wall-clock timings in milliseconds, each the median over the repetitions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub n: usize,
    pub m: usize,
    pub build_ms: f64,
    pub batches: BTreeMap<String, f64>,
    /// Array entries held by the index, excluding the input graph and NCA tables.
    pub footprint: usize,
}

impl BenchReport {
    /// Build time plus every batch.
    pub fn total_ms(&self) -> f64 {
        self.build_ms + self.batches.values().sum::<f64>()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("n {}  m {}  footprint {}\n", self.n, self.m, self.footprint);
        let _ = writeln!(s, "{:<28} {:>10.3} ms", "build_index", self.build_ms);
        for (name, ms) in &self.batches {
            let _ = writeln!(s, "{name:<28} {ms:>10.3} ms");
        }
        s
    }
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    xs[xs.len() / 2]
}

fn time_ms<T>(f: impl FnOnce() -> T) -> (f64, T) {
    let t = Instant::now();
    let out = f();
    (t.elapsed().as_secs_f64() * 1e3, out)
}

/// Times `build_index` and the four all-edges and all-vertices batches.
pub fn bench(g: &Digraph, start: usize, repeat: usize) -> Result<BenchReport, IndexError> {
    type Batch = fn(&ConnectivityIndex) -> usize;
    let batches: [(&str, Batch); 4] = [
        ("count_sccs_all_edges", |ix| count_sccs_all_edges(ix).len()),
        ("lscc_all_edges", |ix| {
            lscc_all_edges(ix, Extreme::Largest).len()
        }),
        ("count_sccs_all_vertices", |ix| {
            count_sccs_all_vertices(ix).len()
        }),
        ("lscc_all_vertices", |ix| {
            lscc_all_vertices(ix, Extreme::Largest).len()
        }),
    ];
    let mut build = Vec::new();
    let mut times: Vec<Vec<f64>> = vec![Vec::new(); batches.len()];
    let mut footprint = 0;
    for _ in 0..repeat.max(1) {
        let graph = g.clone();
        let (ms, ix) = time_ms(|| build_index(graph, start));
        let ix = ix?;
        build.push(ms);
        footprint = ix.footprint();
        for (slot, (_, batch)) in times.iter_mut().zip(&batches) {
            let (ms, len) = time_ms(|| batch(&ix));
            std::hint::black_box(len);
            slot.push(ms);
        }
    }
    Ok(BenchReport {
        n: g.n(),
        m: g.m(),
        build_ms: median(build),
        batches: batches
            .iter()
            .zip(times)
            .map(|((name, _), t)| (name.to_string(), median(t)))
            .collect(),
        footprint,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::parse_digraph_str;

    const FIG8: &str = "5 6\n0 1\n1 2\n2 0\n0 3\n3 4\n4 0\n";
    const BITRI: &str = "3 6\n0 1\n1 0\n1 2\n2 1\n2 0\n0 2\n";
    const CYCLE5: &str = "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n";

    fn analysis(text: &str) -> Analysis {
        Analysis::new(parse_digraph_str(text).unwrap(), None).unwrap()
    }

    fn answers(graph: &str, queries: &str) -> Vec<String> {
        analysis(graph).answer_batch(queries).unwrap()
    }

    #[test]
    fn fig8_report() {
        let r = analysis(FIG8).report();
        assert_eq!(r.scc_count, 1);
        let c = &r.components[0];
        assert!(c.scc_count_after_edge.values().all(|&k| k == 3));
        let by_vertex: Vec<usize> = c.scc_count_after_vertex.values().copied().collect();
        assert_eq!(by_vertex, vec![4, 2, 2, 2, 2]);
        assert_eq!(c.strong_bridges.len(), 6);
        assert_eq!(c.strong_articulation_points, vec![0, 1, 2, 3, 4]);
        assert!(c.blocks_vr.is_empty());
        assert_eq!(
            c.critical_vertices["scc_count"],
            Critical {
                argmin: 1,
                min: 2,
                argmax: 0,
                max: 4
            }
        );
    }

    #[test]
    fn bitri_report() {
        let c = analysis(BITRI).report().components.remove(0);
        assert!(c.strong_bridges.is_empty());
        assert!(c.strong_articulation_points.is_empty());
        assert_eq!(c.blocks_2vc, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn two_components_give_two_reports() {
        let r = analysis("4 5\n0 1\n1 0\n1 2\n2 3\n3 2\n").report();
        assert_eq!(r.scc_count, 2);
        assert_eq!(r.components[0].vertices, vec![0, 1]);
        assert_eq!(r.components[1].vertices, vec![2, 3]);
        assert_eq!(r.components[1].edges, vec![[2, 3, 3], [3, 2, 4]]);
        let two_cycle = crate::oracle::directed_cycle(2);
        let vr = crate::oracle::oracle_blocks(&two_cycle, BlockKind::VertexResilient).unwrap();
        assert!(r.components[1].blocks_2ec.is_empty());
        assert_eq!(vr, vec![vec![0, 1]]);
        assert_eq!(r.components[1].blocks_vr, vec![vec![2, 3]]);
    }

    #[test]
    fn json_round_trips() {
        for text in [
            FIG8,
            BITRI,
            CYCLE5,
            "4 5\n0 1\n1 0\n1 2\n2 3\n3 2\n",
            "1 0\n",
        ] {
            let r = analysis(text).report();
            let json = r.to_json();
            assert!(json.contains("\"schema\": \"1\""));
            assert_eq!(AnalysisReport::from_json(&json).unwrap(), r);
        }
    }

    #[test]
    fn fixture_queries() {
        assert_eq!(
            answers(FIG8, "sep-vertices 1 2\nsep-edges 1 2\n"),
            vec!["0", "(0,1) (1,2) (2,0)"]
        );
        assert_eq!(
            answers(BITRI, "2vc 0 1\n# comment\n\n2ec 1 2"),
            vec!["yes", "yes"]
        );
        let cycle = answers(
            CYCLE5,
            "2ec 0 2\nedge-separates 3 4 0 2\nvertex-separates 1 0 2\n",
        );
        assert!(cycle[0].starts_with("no ("));
        assert_eq!(&cycle[1..], ["yes", "yes"]);
    }

    #[test]
    fn cross_component_queries() {
        let g = "4 5\n0 1\n1 0\n1 2\n2 3\n3 2\n";
        let got = answers(g, "2ec 0 2\n2vc 1 3\nsep-edges 0 3\nsep-vertices 0 3\nedge-separates 1 2 0 2\nvertex-separates 1 0 2\n");
        assert_eq!(got, vec!["no", "no", "", "", "no", "no"]);
    }

    #[test]
    fn malformed_queries_name_the_line() {
        let a = analysis(FIG8);
        for bad in [
            "2ec 0",
            "frob 0 1",
            "2ec 0 x",
            "2ec 0 9",
            "2ec 1 1",
            "vertex-separates 1 1 2",
            "edge-separates 1 0 2 3",
        ] {
            match a.answer_batch(&format!("2ec 0 1\n{bad}\n")) {
                Err(CliError::Query { line: 2, .. }) => {}
                other => panic!("{bad}: {other:?}"),
            }
        }
        assert!(parse_query("  # note").unwrap().is_none());
    }

    #[test]
    fn start_vertex_does_not_change_reports() {
        let g = parse_digraph_str(FIG8).unwrap();
        let base = Analysis::new(g.clone(), None).unwrap().report();
        for s in 0..g.n() {
            assert_eq!(Analysis::new(g.clone(), Some(s)).unwrap().report(), base);
        }
        assert!(matches!(Analysis::new(g, Some(5)), Err(CliError::Usage(_))));
    }

    #[test]
    fn check_passes_and_detects_faults() {
        let mut config = CheckConfig {
            n: 6,
            m: 12,
            seeds: 10,
            first_seed: 0,
            blocks: true,
            inject_fault: false,
        };
        assert!(check(&config).unwrap().failures.is_empty());
        config.inject_fault = true;
        let summary = check(&config).unwrap();
        assert_eq!(summary.failures.len(), 10);
        assert!(summary.to_text().contains("edge_reports[0]"));
        config.n = 13;
        config.m = 20;
        assert!(matches!(check(&config), Err(CliError::Usage(_))));
    }

    #[test]
    fn text_report_lists_every_edge() {
        let text = analysis(FIG8).report().to_text();
        assert!(text.contains("e5=(4,0)"));
        assert!(text.contains("strong articulation points: 0 1 2 3 4"));
    }

    #[test]
    fn bench_reports_all_batches() {
        let r = bench(&crate::oracle::directed_cycle(50), 0, 1).unwrap();
        assert_eq!(r.batches.len(), 4);
        assert!(r.total_ms() >= 0.0);
    }
}
