//! Named graphs and small-graph enumeration used by tests, the acceptance
//! suite and the CLI.

use std::collections::{BTreeSet, HashSet};

use rand::Rng;

use crate::graph::Graph;
use crate::rng::stream_rng;

fn build(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
    Graph::from_edges(n, edges).expect("corpus graphs are simple")
}

pub fn complete(k: usize) -> Graph {
    build(k, (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))))
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    build(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    build(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn path(n: usize) -> Graph {
    build(n, (1..n).map(|i| (i - 1, i)))
}

/// Star with `n` vertices (center 0).
pub fn star(n: usize) -> Graph {
    build(n, (1..n).map(|i| (0, i)))
}

/// `K_{a,b}` with one extra edge inside the first side, which makes it
/// non-bipartite. For `a = b = 4` B has a real eigenvalue near -2.5326.
pub fn near_bipartite(a: usize, b: usize) -> Graph {
    assert!(a >= 2);
    let g = complete_bipartite(a, b);
    build(a + b, g.edges().chain([(0, 1)]))
}

/// Outer 5-cycle 0..5, inner pentagram 5..10, spokes `i -- i+5`.
pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    build(10, outer.chain(inner).chain(spokes))
}

/// Hamiltonian cycle plus chords from LCF notation.
pub fn lcf(n: usize, jumps: &[i64]) -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    for i in 0..n {
        let j = (i as i64 + jumps[i % jumps.len()]).rem_euclid(n as i64) as usize;
        edges.push((i, j));
    }
    build(n, edges)
}

/// 3-regular, girth 5, 20 vertices.
pub fn dodecahedron() -> Graph {
    lcf(20, &[10, 7, 4, -4, -7, 10, -4, 7, -7, 4])
}

/// 3-regular, girth 6, bipartite.
pub fn heawood() -> Graph {
    lcf(14, &[5, -5])
}

/// 3-regular, girth 7, 24 vertices, not bipartite.
pub fn mcgee() -> Graph {
    lcf(24, &[12, 7, -7])
}

/// Replace every edge by a path with `p` edges.
pub fn subdivide(g: &Graph, p: usize) -> Graph {
    assert!(p >= 1);
    let mut next = g.n();
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        let mut prev = u;
        for _ in 1..p {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, v));
    }
    build(next, edges)
}

/// Triangle on 0, 1, 2 with a pendant path of `len` edges hanging off 0.
pub fn triangle_with_tail(len: usize) -> Graph {
    let mut edges = vec![(0, 1), (1, 2), (2, 0)];
    let mut prev = 0;
    for k in 0..len {
        edges.push((prev, 3 + k));
        prev = 3 + k;
    }
    build(3 + len, edges)
}

/// Petersen with the edge `0 -- 1` replaced by a path of length two
/// (new vertex 10). Irregular, girth 5, eligible.
pub fn petersen_subdivided_edge() -> Graph {
    let p = petersen();
    let mut edges: Vec<_> = p.edges().filter(|&e| e != (0, 1)).collect();
    edges.push((0, 10));
    edges.push((10, 1));
    build(11, edges)
}

/// Random graph built by adding uniformly drawn pairs that keep the girth
/// at least `min_girth`, until `target_edges` edges or too many rejections.
pub fn random_high_girth(n: usize, target_edges: usize, min_girth: usize, seed: u64) -> Graph {
    let mut rng = stream_rng(seed, 0x6769_7274);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut count = 0;
    let mut misses = 0;
    while count < target_edges && misses < 200 * n {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u == v || adj[u].contains(&v) || bfs_dist(&adj, u, v, min_girth - 1) < min_girth - 1 {
            misses += 1;
            continue;
        }
        adj[u].push(v);
        adj[v].push(u);
        count += 1;
    }
    build(n, adj.iter().enumerate().flat_map(|(u, l)| l.iter().map(move |&v| (u, v))))
}

/// Distance from `s` to `t`, capped at `cap`.
fn bfs_dist(adj: &[Vec<usize>], s: usize, t: usize, cap: usize) -> usize {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[s] = 0;
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        if v == t {
            return dist[v];
        }
        if dist[v] >= cap {
            continue;
        }
        for &w in &adj[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    cap
}

/// Two-core of a seeded high-girth sample: irregular, girth >= 5, n <= 30.
pub fn irregular_girth5() -> Graph {
    random_high_girth(30, 42, 5, 7).two_core().graph
}

/// The named corpus used by tests, the acceptance suite and the CLI.
pub fn named() -> Vec<(&'static str, Graph)> {
    vec![
        ("k3", complete(3)),
        ("k4", complete(4)),
        ("k5", complete(5)),
        ("k6", complete(6)),
        ("c5", cycle(5)),
        ("c6", cycle(6)),
        ("path5", path(5)),
        ("star5", star(5)),
        ("triangle_tail3", triangle_with_tail(3)),
        ("k33", complete_bipartite(3, 3)),
        ("k44_plus_edge", near_bipartite(4, 4)),
        ("petersen", petersen()),
        ("petersen_subdivided_edge", petersen_subdivided_edge()),
        ("k4_subdivided3", subdivide(&complete(4), 3)),
        ("dodecahedron", dodecahedron()),
        ("heawood", heawood()),
        ("mcgee", mcgee()),
        ("irregular_girth5", irregular_girth5()),
    ]
}

pub fn by_name(name: &str) -> Option<Graph> {
    named().into_iter().find(|(k, _)| *k == name).map(|(_, g)| g)
}

/// All graphs on `n <= 7` vertices up to isomorphism, in canonical-code
/// order.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 7, "enumeration limited to n <= 7");
    let mut level: BTreeSet<u32> = BTreeSet::from([0]);
    for k in 1..n {
        let mut next = HashSet::new();
        for &code in &level {
            let g = decode(k, code);
            for mask in 0u32..(1 << k) {
                let mut edges: Vec<(usize, usize)> = g.edges().collect();
                edges.extend((0..k).filter(|&i| mask >> i & 1 == 1).map(|i| (i, k)));
                next.insert(canonical_code(&build(k + 1, edges)));
            }
        }
        level = next.into_iter().collect();
    }
    if n == 0 {
        return vec![Graph::empty(0)];
    }
    level.into_iter().map(|c| decode(n, c)).collect()
}

/// Connected graphs on `n` vertices up to isomorphism.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    nonisomorphic_graphs(n).into_iter().filter(Graph::is_connected).collect()
}

fn pair_bit(i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    b * (b - 1) / 2 + a
}

fn decode(n: usize, code: u32) -> Graph {
    let mut edges = Vec::new();
    for b in 1..n {
        for a in 0..b {
            if code >> pair_bit(a, b) & 1 == 1 {
                edges.push((a, b));
            }
        }
    }
    build(n, edges)
}

/// Minimum edge code over relabelings that sort vertices by a refinement
/// invariant (degree, then sorted neighbour degrees).
fn canonical_code(g: &Graph) -> u32 {
    let n = g.n();
    let deg = g.degrees();
    let key: Vec<(usize, Vec<usize>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&w| deg[w]).collect();
            nd.sort_unstable();
            (deg[v], nd)
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| key[a].cmp(&key[b]));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match classes.last_mut() {
            Some(c) if key[c[0]] == key[v] => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let mut best = u32::MAX;
    let mut label = vec![0usize; n];
    search(g, &mut classes, 0, 0, &mut label, &mut best);
    best
}

fn search(
    g: &Graph,
    classes: &mut [Vec<usize>],
    ci: usize,
    offset: usize,
    label: &mut [usize],
    best: &mut u32,
) {
    if ci == classes.len() {
        let mut code = 0u32;
        for (u, v) in g.edges() {
            code |= 1 << pair_bit(label[u], label[v]);
        }
        *best = (*best).min(code);
        return;
    }
    let len = classes[ci].len();
    permute(classes, ci, 0, len, offset, label, g, best);
}

#[allow(clippy::too_many_arguments)]
fn permute(
    classes: &mut [Vec<usize>],
    ci: usize,
    k: usize,
    len: usize,
    offset: usize,
    label: &mut [usize],
    g: &Graph,
    best: &mut u32,
) {
    if k == len {
        for (pos, &v) in classes[ci].iter().enumerate() {
            label[v] = offset + pos;
        }
        search(g, classes, ci + 1, offset + len, label, best);
        return;
    }
    for i in k..len {
        classes[ci].swap(k, i);
        permute(classes, ci, k + 1, len, offset, label, g, best);
        classes[ci].swap(k, i);
    }
}
