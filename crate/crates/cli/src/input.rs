//! Graph sources and the subgraph the spectral commands work on.

use std::io::Read;

use anyhow::Context;
use nbcolor_core::{corpus, parse_edge_list, parse_edge_list_compact, Graph};
use serde::Serialize;

#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: Graph,
    /// Original ids when the input was relabelled.
    pub labels: Option<Vec<u64>>,
    pub source: String,
}

/// Load `spec`: a file path, `-` for stdin, or `corpus:<name>`.
///
/// With `relabel`, arbitrary integer ids are compacted in order of first
/// appearance; otherwise ids must be `0..n`.
pub fn load_graph(spec: &str, relabel: bool) -> anyhow::Result<LoadedGraph> {
    if let Some(name) = spec.strip_prefix("corpus:") {
        let graph = corpus::by_name(name).with_context(|| {
            let known: Vec<&str> = corpus::named().into_iter().map(|(n, _)| n).collect();
            format!("unknown corpus graph {name:?}; known: {}", known.join(", "))
        })?;
        return Ok(LoadedGraph { graph, labels: None, source: spec.into() });
    }
    let text = if spec == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        s
    } else {
        std::fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?
    };
    if relabel {
        let parsed = parse_edge_list_compact(&text)?;
        Ok(LoadedGraph { graph: parsed.graph, labels: Some(parsed.labels), source: spec.into() })
    } else {
        Ok(LoadedGraph { graph: parse_edge_list(&text)?, labels: None, source: spec.into() })
    }
}

/// The largest connected component of the 2-core.
///
/// Vector chromatic number is monotone under subgraphs, so a lower bound
/// for this component is a lower bound for the whole graph.
#[derive(Debug, Clone)]
pub struct Target {
    pub graph: Graph,
    /// `to_input[v]` is the input vertex behind target vertex `v`.
    pub to_input: Vec<usize>,
    pub reduced: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TargetInfo {
    pub n: usize,
    pub edges: usize,
    /// False when the target is the input graph itself.
    pub reduced: bool,
}

impl Target {
    pub fn info(&self) -> TargetInfo {
        TargetInfo { n: self.graph.n(), edges: self.graph.edge_count(), reduced: self.reduced }
    }
}

pub fn target_of(g: &Graph) -> Target {
    let core = g.two_core();
    let comps = core.graph.components();
    let largest = comps.iter().filter(|c| !c.is_empty()).max_by(|a, b| a.len().cmp(&b.len()).then(b[0].cmp(&a[0])));
    let Some(comp) = largest else {
        return Target { graph: Graph::empty(0), to_input: Vec::new(), reduced: g.n() > 0 };
    };
    if comp.len() == g.n() {
        return Target { graph: g.clone(), to_input: (0..g.n()).collect(), reduced: false };
    }
    let sub = core.graph.induced(comp);
    let to_input = sub.to_parent.iter().map(|&v| core.to_parent[v]).collect();
    Target { graph: sub.graph, to_input, reduced: true }
}
