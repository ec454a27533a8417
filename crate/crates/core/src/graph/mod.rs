//! Simple undirected graphs and the structural analyses that gate the
//! spectral code.

mod random;
mod structure;

use std::fmt::Write as _;

use num_rational::Ratio;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub use random::sample_er;
pub use structure::{classify, Ball, EligibilityReport};

/// Simple undirected graph with sorted adjacency lists.
///
/// Immutable once built; every constructor enforces simplicity and
/// symmetry.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

/// A subgraph together with its embedding into the parent graph.
#[derive(Debug, Clone)]
pub struct Subgraph {
    pub graph: Graph,
    /// `to_parent[new] = old`
    pub to_parent: Vec<usize>,
    /// `from_parent[old] = Some(new)` for retained vertices.
    pub from_parent: Vec<Option<usize>>,
}

/// Result of parsing an edge list. `labels[v]` is the id the vertex had in
/// the input.
#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub labels: Vec<u64>,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], edge_count: 0 }
    }

    /// Build from an edge iterator. Duplicates collapse; self-loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop { line: 0, vertex: u });
            }
            if u >= n || v >= n {
                return Err(Error::Parameter(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Self::from_raw_adjacency(adj))
    }

    fn from_raw_adjacency(mut adj: Vec<Vec<usize>>) -> Self {
        let mut twice = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            twice += list.len();
        }
        debug_assert!(twice % 2 == 0);
        Graph { adj, edge_count: twice / 2 }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// `2|E| / n` as an exact fraction.
    pub fn average_degree(&self) -> Ratio<usize> {
        assert!(self.n() > 0, "average degree of the null graph");
        Ratio::new(2 * self.edge_count, self.n())
    }

    pub fn average_degree_f64(&self) -> f64 {
        if self.n() == 0 {
            return 0.0;
        }
        2.0 * self.edge_count as f64 / self.n() as f64
    }

    /// Checks simplicity, symmetry, sortedness and the edge count.
    pub fn check_invariants(&self) -> bool {
        let mut twice = 0;
        for (u, list) in self.adj.iter().enumerate() {
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for &v in list {
                if v == u || v >= self.n() || self.adj[v].binary_search(&u).is_err() {
                    return false;
                }
            }
            twice += list.len();
        }
        twice == 2 * self.edge_count
    }

    /// Induced subgraph on `vertices` (order defines the new labels).
    pub fn induced(&self, vertices: &[usize]) -> Subgraph {
        let mut from_parent = vec![None; self.n()];
        for (new, &old) in vertices.iter().enumerate() {
            from_parent[old] = Some(new);
        }
        let adj = vertices
            .iter()
            .map(|&old| self.adj[old].iter().filter_map(|&w| from_parent[w]).collect())
            .collect();
        Subgraph {
            graph: Self::from_raw_adjacency(adj),
            to_parent: vertices.to_vec(),
            from_parent,
        }
    }

    /// Canonical text form: `n <N>` header then `u v` lines, `u < v`,
    /// ascending. Parsing it returns an identical graph.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(16 + 12 * self.edge_count);
        writeln!(out, "n {}", self.n()).unwrap();
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    /// SHA-256 of [`Graph::to_edge_list`], lowercase hex.
    pub fn digest(&self) -> String {
        let hash = Sha256::digest(self.to_edge_list().as_bytes());
        hash.iter().fold(String::with_capacity(64), |mut s, b| {
            write!(s, "{b:02x}").unwrap();
            s
        })
    }
}

/// Parse an edge list.
///
/// One edge `u v` per line (0-based ids), `#` starts a comment, blank lines
/// are skipped, and an optional `n <N>` line fixes the vertex count.
/// Without it the vertex count is `1 + max id`.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let (edges, header_n) = scan_edges(text)?;
    let max_id = edges.iter().map(|&(u, v, _)| u.max(v)).max();
    let n = match (header_n, max_id) {
        (Some(n), Some(m)) if (m as usize) >= n => {
            return Err(Error::Parse {
                line: 0,
                msg: format!("vertex id {m} exceeds header vertex count {n}"),
            })
        }
        (Some(n), _) => n,
        (None, Some(m)) => m as usize + 1,
        (None, None) => 0,
    };
    build_checked(n, edges.into_iter().map(|(u, v, line)| (u as usize, v as usize, line)))
}

/// Parse an edge list with arbitrary (sparse) ids, relabelling them densely
/// in order of first appearance. Isolated vertices cannot be expressed.
pub fn parse_edge_list_compact(text: &str) -> Result<ParsedGraph> {
    let (edges, _) = scan_edges(text)?;
    let mut labels = Vec::new();
    let mut index = std::collections::HashMap::new();
    let mut dense = Vec::with_capacity(edges.len());
    for (u, v, line) in edges {
        let mut id = |x: u64| {
            *index.entry(x).or_insert_with(|| {
                labels.push(x);
                labels.len() - 1
            })
        };
        let (a, b) = (id(u), id(v));
        dense.push((a, b, line));
    }
    let graph = build_checked(labels.len(), dense.into_iter())?;
    Ok(ParsedGraph { graph, labels })
}

type RawEdges = Vec<(u64, u64, usize)>;

fn scan_edges(text: &str) -> Result<(RawEdges, Option<usize>)> {
    let mut edges = Vec::new();
    let mut header = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let first = tokens.next().unwrap();
        let second = tokens.next();
        if tokens.next().is_some() {
            return Err(Error::Parse { line: line_no, msg: "expected two tokens".into() });
        }
        let second = second
            .ok_or_else(|| Error::Parse { line: line_no, msg: "expected two tokens".into() })?;
        if first == "n" {
            if header.is_some() {
                return Err(Error::Parse { line: line_no, msg: "duplicate `n` header".into() });
            }
            let n = second.parse::<usize>().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("bad vertex count `{second}`"),
            })?;
            header = Some(n);
            continue;
        }
        let parse = |tok: &str| {
            tok.parse::<u64>().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("bad vertex id `{tok}`"),
            })
        };
        let (u, v) = (parse(first)?, parse(second)?);
        if u == v {
            return Err(Error::SelfLoop { line: line_no, vertex: u as usize });
        }
        edges.push((u, v, line_no));
    }
    Ok((edges, header))
}

fn build_checked(n: usize, edges: impl Iterator<Item = (usize, usize, usize)>) -> Result<Graph> {
    let mut adj = vec![Vec::new(); n];
    for (u, v, line) in edges {
        if u == v {
            return Err(Error::SelfLoop { line, vertex: u });
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    Ok(Graph::from_raw_adjacency(adj))
}
