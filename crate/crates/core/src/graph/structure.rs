use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{Graph, Subgraph};
use crate::error::{Error, Ineligibility, Result};
use crate::nb::{period, DirectedEdgeIndex};

impl Graph {
    /// Vertices surviving repeated deletion of vertices of degree < `k`,
    /// ascending.
    pub fn k_core_vertices(&self, k: usize) -> Vec<usize> {
        let mut deg = self.degrees();
        let mut removed = vec![false; self.n()];
        let mut queue: VecDeque<usize> = (0..self.n()).filter(|&v| deg[v] < k).collect();
        for &v in &queue {
            removed[v] = true;
        }
        while let Some(v) = queue.pop_front() {
            for &w in self.neighbors(v) {
                if !removed[w] {
                    deg[w] -= 1;
                    if deg[w] < k {
                        removed[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        (0..self.n()).filter(|&v| !removed[v]).collect()
    }

    /// 2-core with its vertex maps. Empty for forests.
    pub fn two_core(&self) -> Subgraph {
        self.induced(&self.k_core_vertices(2))
    }

    /// Connected components, each ascending, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut head = 0;
            while head < comp.len() {
                let v = comp[head];
                head += 1;
                for &w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Connected graph in which every vertex has degree two.
    pub fn is_cycle(&self) -> bool {
        self.n() >= 3 && self.adj.iter().all(|l| l.len() == 2) && self.is_connected()
    }

    /// Proper 2-coloring from BFS, if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n()];
        let mut queue = VecDeque::new();
        for s in 0..self.n() {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                let sv = side[v].unwrap();
                for &w in self.neighbors(v) {
                    match side[w] {
                        None => {
                            side[w] = Some(!sv);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == sv => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Length of a shortest cycle, `None` for forests.
    ///
    /// One BFS per root; the first non-tree edge seen at depth `t` closes a
    /// cycle of length `2t+1` or `2t+2` through the root's tree, and the
    /// minimum over roots is exact.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n();
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut touched = Vec::new();
        let mut queue = VecDeque::new();
        for root in 0..n {
            if self.degree(root) < 2 {
                continue;
            }
            for &t in &touched {
                dist[t] = usize::MAX;
            }
            touched.clear();
            queue.clear();
            dist[root] = 0;
            touched.push(root);
            queue.push_back(root);
            'bfs: while let Some(v) = queue.pop_front() {
                if 2 * dist[v] + 1 >= best {
                    break;
                }
                for &w in self.neighbors(v) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        touched.push(w);
                        queue.push_back(w);
                    } else if parent[v] != w {
                        best = best.min(dist[v] + dist[w] + 1);
                        if dist[w] == dist[v] {
                            break 'bfs;
                        }
                    }
                }
            }
        }
        (best != usize::MAX).then_some(best)
    }

    /// Breadth-first ball of radius `m` around `center`.
    pub fn bfs_ball(&self, center: usize, m: usize) -> Ball {
        let mut order = vec![center];
        let mut dist = vec![0usize];
        let mut parent = vec![None];
        let mut slot = std::collections::HashMap::new();
        slot.insert(center, 0usize);
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            let dv = dist[head];
            head += 1;
            if dv == m {
                continue;
            }
            for &w in self.neighbors(v) {
                if let std::collections::hash_map::Entry::Vacant(e) = slot.entry(w) {
                    e.insert(order.len());
                    order.push(w);
                    dist.push(dv + 1);
                    parent.push(Some(v));
                }
            }
        }
        Ball { center, order, dist, parent }
    }

    /// Proper coloring with colors {1, 2, 3} for graphs with empty 3-core.
    ///
    /// Peels a minimum-degree vertex while one of degree at most two
    /// remains, then colors in reverse peeling order; each vertex then sees
    /// at most two colored neighbors (at most one on forests).
    pub fn greedy_color_2degenerate(&self) -> Result<Vec<u8>> {
        let n = self.n();
        let mut deg = self.degrees();
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut buckets: [Vec<usize>; 3] = Default::default();
        for v in (0..n).rev() {
            if deg[v] <= 2 {
                buckets[deg[v]].push(v);
            }
        }
        while let Some(b) = (0..3).find(|&b| !buckets[b].is_empty()) {
            let v = buckets[b].pop().unwrap();
            if removed[v] || deg[v] != b {
                continue;
            }
            removed[v] = true;
            order.push(v);
            for &w in self.neighbors(v) {
                if !removed[w] {
                    deg[w] -= 1;
                    if deg[w] <= 2 {
                        buckets[deg[w]].push(w);
                    }
                }
            }
        }
        if order.len() < n {
            return Err(Ineligibility::ThreeCore { core_size: n - order.len() }.into());
        }
        let mut color = vec![0u8; n];
        for &v in order.iter().rev() {
            let mut used = [false; 4];
            for &w in self.neighbors(v) {
                used[color[w] as usize] = true;
            }
            color[v] = (1..=3u8).find(|&c| !used[c as usize]).ok_or_else(|| {
                Error::Structural(format!("vertex {v} saw three colored neighbors"))
            })?;
        }
        Ok(color)
    }
}

/// Radius-limited BFS tree. Entries are aligned: `order[k]` is at distance
/// `dist[k]` with BFS parent `parent[k]`.
#[derive(Debug, Clone)]
pub struct Ball {
    pub center: usize,
    pub order: Vec<usize>,
    pub dist: Vec<usize>,
    pub parent: Vec<Option<usize>>,
}

impl Ball {
    /// Number of vertices at each distance 0, 1, ..., max.
    pub fn layer_sizes(&self) -> Vec<usize> {
        let depth = self.dist.iter().copied().max().unwrap_or(0);
        let mut sizes = vec![0; depth + 1];
        for &d in &self.dist {
            sizes[d] += 1;
        }
        sizes
    }
}

/// Structural summary deciding whether the Perron machinery applies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EligibilityReport {
    pub n: usize,
    pub edge_count: usize,
    pub connected: bool,
    pub two_core_size: usize,
    pub two_core_components: usize,
    pub is_cycle: bool,
    pub is_bipartite: bool,
    /// Period of B on the 2-core. `None` when the core is empty or
    /// disconnected. For a cycle this is the cycle length.
    pub period: Option<usize>,
    pub min_core_degree: usize,
    /// `None` for forests.
    pub girth: Option<usize>,
    /// Largest `m` with `girth >= 2m + 1`.
    pub m_max: Option<usize>,
}

impl EligibilityReport {
    pub fn eligible(&self) -> bool {
        self.violation().is_none()
    }

    /// First failed condition, in the order they are checked.
    pub fn violation(&self) -> Option<Ineligibility> {
        if self.two_core_size == 0 {
            return Some(Ineligibility::EmptyCore);
        }
        if self.two_core_components > 1 {
            return Some(Ineligibility::Disconnected { components: self.two_core_components });
        }
        if self.is_cycle {
            return Some(Ineligibility::Cycle);
        }
        if self.is_bipartite {
            return Some(Ineligibility::Bipartite);
        }
        match self.period {
            Some(1) => None,
            Some(p) => Some(Ineligibility::Periodic { period: p }),
            None => Some(Ineligibility::EmptyCore),
        }
    }
}

/// Full structural classification of `g`.
pub fn classify(g: &Graph) -> EligibilityReport {
    let core = g.two_core().graph;
    let core_components = core.components().iter().filter(|c| !c.is_empty()).count();
    let is_cycle = core_components == 1 && core.is_cycle();
    let period = if core_components == 1 {
        period(&core, &DirectedEdgeIndex::new(&core)).ok().map(|p| p.period)
    } else {
        None
    };
    let girth = g.girth();
    EligibilityReport {
        n: g.n(),
        edge_count: g.edge_count(),
        connected: g.is_connected(),
        two_core_size: core.n(),
        two_core_components: core_components,
        is_cycle,
        is_bipartite: g.is_bipartite(),
        period,
        min_core_degree: core.min_degree(),
        girth,
        m_max: girth.map(|g| (g - 1) / 2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn trees_have_empty_core() {
        let t = corpus::path(7);
        assert_eq!(t.two_core().graph.n(), 0);
        assert_eq!(corpus::star(6).two_core().graph.n(), 0);
    }

    #[test]
    fn pendant_path_is_peeled() {
        let g = corpus::triangle_with_tail(3);
        assert_eq!(g.n(), 6);
        let core = g.two_core();
        assert_eq!(core.graph, corpus::cycle(3));
        assert_eq!(core.to_parent, vec![0, 1, 2]);
    }

    #[test]
    fn petersen_is_its_own_core() {
        let p = corpus::petersen();
        let core = p.two_core();
        assert_eq!(core.graph, p);
        assert_eq!(core.to_parent, (0..10).collect::<Vec<_>>());
    }

    #[test]
    fn girths() {
        assert_eq!(corpus::complete(4).girth(), Some(3));
        assert_eq!(corpus::petersen().girth(), Some(5));
        assert_eq!(corpus::path(5).girth(), None);
        assert_eq!(corpus::cycle(8).girth(), Some(8));
        assert_eq!(corpus::mcgee().girth(), Some(7));
        assert_eq!(corpus::heawood().girth(), Some(6));
        assert_eq!(corpus::dodecahedron().girth(), Some(5));
        assert_eq!(corpus::complete_bipartite(3, 3).girth(), Some(4));
    }

    #[test]
    fn classify_cycle_is_ineligible() {
        let r = classify(&corpus::cycle(6));
        assert!(r.is_cycle && r.is_bipartite);
        assert!(!r.eligible());
        assert_eq!(r.period.map(|p| p % 2), Some(0));
    }

    #[test]
    fn classify_subdivided_k4() {
        let g = corpus::subdivide(&corpus::complete(4), 3);
        let r = classify(&g);
        assert_eq!(r.period, Some(3));
        assert!(!r.eligible());
        assert_eq!(r.violation(), Some(Ineligibility::Periodic { period: 3 }));
    }

    #[test]
    fn classify_petersen() {
        let r = classify(&corpus::petersen());
        assert!(r.connected && !r.is_bipartite && !r.is_cycle);
        assert_eq!(r.period, Some(1));
        assert_eq!(r.girth, Some(5));
        assert_eq!(r.m_max, Some(2));
        assert!(r.eligible());
    }

    #[test]
    fn ball_layers() {
        assert_eq!(corpus::petersen().bfs_ball(0, 2).layer_sizes(), vec![1, 3, 6]);
        assert_eq!(corpus::complete(4).bfs_ball(0, 1).layer_sizes(), vec![1, 3]);
        let g = Graph::empty(3);
        assert_eq!(g.bfs_ball(1, 5).order, vec![1]);
    }

    #[test]
    fn greedy_three_coloring() {
        let check = |g: &Graph, c: &[u8]| g.edges().all(|(u, v)| c[u] != c[v]);
        let c5 = corpus::cycle(5);
        let col = c5.greedy_color_2degenerate().unwrap();
        assert!(check(&c5, &col) && col.iter().all(|&x| (1..=3).contains(&x)));

        let tree = corpus::path(9);
        let col = tree.greedy_color_2degenerate().unwrap();
        assert!(check(&tree, &col));
        assert!(col.iter().all(|&x| x <= 2));

        assert!(matches!(
            corpus::complete(4).greedy_color_2degenerate(),
            Err(Error::Ineligible(Ineligibility::ThreeCore { core_size: 4 }))
        ));
    }
}
