//! Vector colorings built from a Perron-weighted non-backtracking walk,
//! together with the patching combinator, the uncolorable-set expansion and
//! the Alon-Boppana witness matrix.
//!
//! Coordinates are indexed by directed edges: vertex `l` at distance `s`
//! from `i` contributes `(-1)^s sqrt(P_i[X_s = l] / m)` on the coordinate of
//! the last arc `u -> l` of the unique shortest path. Indexing by that arc
//! rather than by `l` alone keeps vertices that are equidistant from both
//! ends of an edge from overlapping when the girth is exactly `2m + 1`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Ineligibility, Result};
use crate::graph::{Ball, Graph};
use crate::linalg::{cholesky_pd, DenseMatrix};
use crate::nb::{perron, DirectedEdgeIndex, PerronData};
use crate::scalar::Real;

/// Vertex count above which the dense Gram PSD check is skipped (the Gram
/// matrix of explicit vectors is PSD by construction).
pub const GRAM_CHECK_LIMIT: usize = 1024;

/// Sparse vector as sorted `(coordinate, value)` pairs.
pub type SparseVec<T> = Vec<(usize, T)>;

pub fn sparse_dot<T: Real>(a: &[(usize, T)], b: &[(usize, T)]) -> T {
    let (mut p, mut q) = (0, 0);
    let mut acc = T::zero();
    while p < a.len() && q < b.len() {
        match a[p].0.cmp(&b[q].0) {
            std::cmp::Ordering::Less => p += 1,
            std::cmp::Ordering::Greater => q += 1,
            std::cmp::Ordering::Equal => {
                acc += a[p].1 * b[q].1;
                p += 1;
                q += 1;
            }
        }
    }
    acc
}

/// One unit vector per vertex plus the value it achieves.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorColoring<T> {
    pub vectors: Vec<SparseVec<T>>,
    /// Ambient dimension.
    pub dim: usize,
    /// `1 + 1 / |max edge inner product|`; infinite if some edge has a
    /// nonnegative inner product, 1 for edgeless graphs.
    pub kappa: T,
    /// Walk radius for constructed colorings.
    pub m: Option<usize>,
}

impl<T: Real> VectorColoring<T> {
    /// Wrap explicit vectors and compute the achieved value on `g`.
    pub fn new(g: &Graph, mut vectors: Vec<SparseVec<T>>, dim: usize, m: Option<usize>) -> Result<Self> {
        if vectors.len() != g.n() {
            return Err(Error::Dimension { expected: g.n(), got: vectors.len() });
        }
        for v in vectors.iter_mut() {
            v.sort_by_key(|e| e.0);
            if v.last().is_some_and(|e| e.0 >= dim) {
                return Err(Error::Dimension { expected: dim, got: v.last().unwrap().0 + 1 });
            }
        }
        let mut vc = VectorColoring { vectors, dim, kappa: T::one(), m };
        vc.kappa = kappa_from_max(vc.max_edge_inner(g).map(|w| w.2));
        Ok(vc)
    }

    pub fn from_dense(g: &Graph, rows: &[Vec<T>]) -> Result<Self> {
        let dim = rows.first().map_or(0, Vec::len);
        let vectors = rows
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, &x)| x != T::zero()).map(|(k, &x)| (k, x)).collect())
            .collect();
        Self::new(g, vectors, dim, None)
    }

    pub fn n(&self) -> usize {
        self.vectors.len()
    }

    pub fn inner(&self, i: usize, j: usize) -> T {
        sparse_dot(&self.vectors[i], &self.vectors[j])
    }

    pub fn gram(&self) -> DenseMatrix<T> {
        let n = self.n();
        let mut m = DenseMatrix::filled(n, n, T::zero());
        for i in 0..n {
            for j in i..n {
                let x = self.inner(i, j);
                m[(i, j)] = x;
                m[(j, i)] = x;
            }
        }
        m
    }

    pub fn dense_vectors(&self) -> DenseMatrix<T> {
        let mut m = DenseMatrix::filled(self.n(), self.dim, T::zero());
        for (i, v) in self.vectors.iter().enumerate() {
            for &(k, x) in v {
                m[(i, k)] = x;
            }
        }
        m
    }

    /// Edge `(i, j, <v_i, v_j>)` with the largest inner product.
    pub fn max_edge_inner(&self, g: &Graph) -> Option<(usize, usize, T)> {
        g.edges()
            .map(|(i, j)| (i, j, self.inner(i, j)))
            .fold(None, |best: Option<(usize, usize, T)>, e| match best {
                Some(b) if b.2 >= e.2 => Some(b),
                _ => Some(e),
            })
    }
}

fn kappa_from_max<T: Real>(max_edge: Option<T>) -> T {
    match max_edge {
        None => T::one(),
        Some(x) if x < T::zero() => T::one() + T::one() / x.abs(),
        Some(_) => T::infinity(),
    }
}

/// Transition structure of the Perron-weighted non-backtracking walk.
#[derive(Debug, Clone)]
pub struct WalkModel<'a, T> {
    g: &'a Graph,
    idx: DirectedEdgeIndex,
    perron: PerronData<T>,
    girth: Option<usize>,
}

impl<'a, T: Real> WalkModel<'a, T> {
    pub fn new(g: &'a Graph, tol: T) -> Result<Self> {
        let idx = DirectedEdgeIndex::new(g);
        let perron = perron(g, &idx, tol)?;
        Ok(Self::from_parts(g, idx, perron))
    }

    pub fn from_parts(g: &'a Graph, idx: DirectedEdgeIndex, perron: PerronData<T>) -> Self {
        WalkModel { g, idx, perron, girth: g.girth() }
    }

    pub fn perron(&self) -> &PerronData<T> {
        &self.perron
    }

    pub fn index(&self) -> &DirectedEdgeIndex {
        &self.idx
    }

    pub fn girth(&self) -> Option<usize> {
        self.girth
    }

    pub fn m_max(&self) -> Option<usize> {
        self.girth.map(|g| (g - 1) / 2)
    }

    fn arc(&self, i: usize, j: usize) -> usize {
        self.idx.index(self.g, i, j).expect("adjacent vertices")
    }

    /// `P_i[X_1 = j] = phi[i->j] / phi_i`.
    pub fn first_step(&self, i: usize, j: usize) -> T {
        self.perron.phi[self.arc(i, j)] / self.perron.phi_vertex[i]
    }

    /// Probability of moving `k -> l` having arrived at `k` from `j`:
    /// `phi[k->l] / (rho phi[j->k])`.
    pub fn later_step(&self, j: usize, k: usize, l: usize) -> T {
        self.perron.phi[self.arc(k, l)] / (self.perron.rho * self.perron.phi[self.arc(j, k)])
    }

    fn check_radius(&self, m: usize) -> Result<()> {
        if self.girth.is_some_and(|g| g < 2 * m + 1) {
            return Err(Ineligibility::Girth { girth: self.girth, m, m_max: self.m_max() }.into());
        }
        Ok(())
    }

    /// `P_i[X_s = j]` for `s = dist(i, j)` in `1..=m`, by the telescoped
    /// form `phi[u->j] / (rho^(s-1) phi_i)` with `u` the vertex before `j`.
    pub fn walk_prob(&self, i: usize, j: usize, m: usize) -> Result<T> {
        self.check_radius(m)?;
        let ball = self.g.bfs_ball(i, m);
        let k = ball.order.iter().position(|&v| v == j).filter(|&k| k > 0).ok_or_else(|| {
            Error::Domain(format!("dist({i}, {j}) is not in 1..={m}"))
        })?;
        Ok(self.ball_prob(&ball, k))
    }

    fn ball_prob(&self, ball: &Ball, k: usize) -> T {
        let s = ball.dist[k];
        let u = ball.parent[k].expect("non-center vertex");
        self.perron.phi[self.arc(u, ball.order[k])]
            / (self.perron.rho.powi(s as i32 - 1) * self.perron.phi_vertex[ball.center])
    }

    /// Same probability as a product of transitions along the path.
    pub fn walk_prob_path_product(&self, i: usize, j: usize, m: usize) -> Result<T> {
        self.check_radius(m)?;
        let ball = self.g.bfs_ball(i, m);
        let mut k = ball.order.iter().position(|&v| v == j).filter(|&k| k > 0).ok_or_else(|| {
            Error::Domain(format!("dist({i}, {j}) is not in 1..={m}"))
        })?;
        let mut path = vec![j];
        while let Some(p) = ball.parent[k] {
            path.push(p);
            k = ball.order.iter().position(|&v| v == p).unwrap();
        }
        path.reverse();
        let mut prob = self.first_step(path[0], path[1]);
        for w in path.windows(3) {
            prob *= self.later_step(w[0], w[1], w[2]);
        }
        Ok(prob)
    }
}

/// `(rho + 1) / (2 (1 - 1/m) sqrt(rho)) + 1`, the value the walk vectors
/// are guaranteed to achieve.
pub fn kappa_guarantee<T: Real>(rho: T, m: usize) -> T {
    let c = T::one() - T::one() / T::from_count(m);
    (rho + T::one()) / (T::lit(2.0) * c * rho.sqrt()) + T::one()
}

/// `-(1 - 1/m) 2 sqrt(rho) / (rho + 1)`, the guaranteed edge inner product.
pub fn edge_inner_guarantee<T: Real>(rho: T, m: usize) -> T {
    let c = T::one() - T::one() / T::from_count(m);
    -c * T::lit(2.0) * rho.sqrt() / (rho + T::one())
}

/// Walk vectors of radius `m` on an eligible graph of girth at least
/// `2m + 1`.
pub fn build_vectors<T: Real>(g: &Graph, m: usize) -> Result<VectorColoring<T>> {
    let wm = WalkModel::new(g, T::lit(1e-12).max(T::epsilon() * T::lit(64.0)))?;
    build_vectors_with(&wm, m)
}

pub fn build_vectors_with<T: Real>(wm: &WalkModel<'_, T>, m: usize) -> Result<VectorColoring<T>> {
    if m < 2 {
        return Err(Error::Degenerate(format!("radius m = {m} gives a vacuous bound; need m >= 2")));
    }
    wm.check_radius(m)?;
    let g = wm.g;
    let scale = T::one() / T::from_count(m).sqrt();
    let vectors: Vec<SparseVec<T>> = (0..g.n())
        .into_par_iter()
        .map(|i| {
            let ball = g.bfs_ball(i, m);
            let mut v: SparseVec<T> = (1..ball.order.len())
                .map(|k| {
                    let coord = wm.arc(ball.parent[k].unwrap(), ball.order[k]);
                    let sign = if ball.dist[k].is_multiple_of(2) { T::one() } else { -T::one() };
                    (coord, sign * scale * wm.ball_prob(&ball, k).sqrt())
                })
                .collect();
            v.sort_by_key(|e| e.0);
            v
        })
        .collect();
    VectorColoring::new(g, vectors, wm.idx.len(), Some(m))
}

/// Outcome of checking a coloring against the SDP constraints at a value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColoringCheck<T> {
    pub valid: bool,
    pub max_norm_error: T,
    /// `None` when the dense check was skipped for size.
    pub gram_psd: Option<bool>,
    pub worst_edge: Option<(usize, usize, T)>,
    pub threshold: T,
}

pub const NORM_TOL: f64 = 1e-9;
pub const EDGE_TOL: f64 = 1e-9;
pub const GRAM_SHIFT: f64 = 1e-10;

/// Unit norms, PSD Gram matrix and `<v_i, v_j> <= -1/(kappa - 1)` on every
/// edge.
pub fn verify_coloring<T: Real>(g: &Graph, vc: &VectorColoring<T>, kappa_claim: T) -> ColoringCheck<T> {
    let max_norm_error = (0..vc.n()).map(|i| (vc.inner(i, i) - T::one()).abs()).fold(T::zero(), T::max);
    let gram_psd = (vc.n() <= GRAM_CHECK_LIMIT).then(|| cholesky_pd(&vc.gram(), T::lit(GRAM_SHIFT)).is_ok());
    let worst_edge = vc.max_edge_inner(g);
    let threshold = -T::one() / (kappa_claim - T::one());
    let edges_ok = worst_edge.is_none_or(|w| w.2 <= threshold + T::lit(EDGE_TOL));
    let valid = vc.n() == g.n() && max_norm_error <= T::lit(NORM_TOL) && gram_psd != Some(false) && edges_ok;
    ColoringCheck { valid, max_norm_error, gram_psd, worst_edge, threshold }
}

/// Vertex roles for [`patch_colorings`].
#[derive(Debug, Clone)]
pub struct Patch<'a, T> {
    /// Vertices carrying `lambda_coloring.vectors[k]` for `lambda_set[k]`.
    pub lambda_set: &'a [usize],
    pub lambda_coloring: &'a VectorColoring<T>,
    pub upsilon: &'a [usize],
    /// Colors in `1..=3` aligned with `upsilon`.
    pub sigma: &'a [u8],
    pub boundary: &'a [usize],
}

/// Combine a vector coloring on one part with a proper 3-coloring on
/// another, separated by an independent boundary.
///
/// Three extra coordinates carry two unit vectors `w_c` at 120 degrees per
/// color pair and a direction `zeta` orthogonal to everything else. The
/// result achieves `max(kappa + 1, 4)`.
pub fn patch_colorings<T: Real>(g: &Graph, p: &Patch<'_, T>) -> Result<VectorColoring<T>> {
    let n = g.n();
    #[derive(Clone, Copy, PartialEq)]
    enum Role {
        Unset,
        Lambda(usize),
        Boundary,
        Upsilon(u8),
    }
    let mut role = vec![Role::Unset; n];
    let mut assign = |v: usize, r: Role| -> Result<()> {
        if v >= n {
            return Err(Error::Structural(format!("vertex {v} out of range")));
        }
        if role[v] != Role::Unset {
            return Err(Error::Structural(format!("vertex {v} assigned to two parts")));
        }
        role[v] = r;
        Ok(())
    };
    if p.lambda_coloring.n() != p.lambda_set.len() {
        return Err(Error::Dimension { expected: p.lambda_set.len(), got: p.lambda_coloring.n() });
    }
    if p.sigma.len() != p.upsilon.len() {
        return Err(Error::Dimension { expected: p.upsilon.len(), got: p.sigma.len() });
    }
    for (k, &v) in p.lambda_set.iter().enumerate() {
        assign(v, Role::Lambda(k))?;
    }
    for &v in p.boundary {
        assign(v, Role::Boundary)?;
    }
    for (&v, &c) in p.upsilon.iter().zip(p.sigma) {
        if !(1..=3).contains(&c) {
            return Err(Error::Structural(format!("color {c} of vertex {v} is not in 1..=3")));
        }
        assign(v, Role::Upsilon(c))?;
    }
    if let Some(v) = role.iter().position(|r| *r == Role::Unset) {
        return Err(Error::Structural(format!("vertex {v} is in no part")));
    }
    for (i, j) in g.edges() {
        match (role[i], role[j]) {
            (Role::Boundary, Role::Boundary) => {
                return Err(Error::Structural(format!("boundary is not independent: edge ({i}, {j})")));
            }
            (Role::Lambda(_), Role::Upsilon(_)) | (Role::Upsilon(_), Role::Lambda(_)) => {
                return Err(Error::Structural(format!("edge ({i}, {j}) joins the colored part to the 3-colored part")));
            }
            (Role::Upsilon(a), Role::Upsilon(b)) if a == b => {
                return Err(Error::Structural(format!("3-coloring is improper on edge ({i}, {j})")));
            }
            _ => {}
        }
    }

    let kappa = p.lambda_coloring.kappa;
    let base = p.lambda_coloring.dim;
    let (w_axis, zeta) = (base, base + 2);
    let third = T::one() / T::lit(3.0);
    let root8_3 = T::lit(8f64.sqrt() / 3.0);
    let vectors = role
        .iter()
        .map(|r| match *r {
            Role::Lambda(k) => {
                let a = (kappa * kappa - T::one()).sqrt() / kappa;
                let mut v: SparseVec<T> = p.lambda_coloring.vectors[k].iter().map(|&(c, x)| (c, a * x)).collect();
                v.push((zeta, -T::one() / kappa));
                v
            }
            Role::Boundary => vec![(zeta, T::one())],
            Role::Upsilon(c) => {
                let angle = T::lit(2.0 * std::f64::consts::PI / 3.0) * T::from_count(c as usize - 1);
                vec![
                    (w_axis, root8_3 * angle.cos()),
                    (w_axis + 1, root8_3 * angle.sin()),
                    (zeta, -third),
                ]
            }
            Role::Unset => unreachable!(),
        })
        .collect();
    VectorColoring::new(g, vectors, base + 3, None)
}

/// A vertex set closed under the pair-absorption rule, and its boundary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expansion {
    pub set: Vec<usize>,
    pub boundary: Vec<usize>,
}

/// Grow `start` by absorbing adjacent pairs `i, j` outside the set that
/// both have a neighbour inside, until none remain. The boundary of the
/// result is then independent.
pub fn expand_uncolorable(g: &Graph, start: &[usize]) -> Expansion {
    let n = g.n();
    let mut inside = vec![false; n];
    for &v in start {
        inside[v] = true;
    }
    let touches = |inside: &[bool], v: usize| g.neighbors(v).iter().any(|&w| inside[w]);
    loop {
        let mut grew = false;
        for (i, j) in g.edges() {
            if !inside[i] && !inside[j] && touches(&inside, i) && touches(&inside, j) {
                inside[i] = true;
                inside[j] = true;
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    let set = (0..n).filter(|&v| inside[v]).collect();
    let boundary = (0..n).filter(|&v| !inside[v] && touches(&inside, v)).collect();
    Expansion { set, boundary }
}

/// Unit-trace PSD matrix `X_ij = sqrt(phi_i phi_j) <v_i, v_j>` and its
/// pairing with `L(z)`.
#[derive(Debug, Clone)]
pub struct Witness<T> {
    pub x: DenseMatrix<T>,
    /// `<X, L(z)>` computed from the entries of X.
    pub value: T,
    /// `z^2 + 2 (1 - 1/m) sqrt(rho) z + rho`.
    pub closed_form: T,
}

pub const WITNESS_LIMIT: usize = 2048;

pub fn witness_closed_form<T: Real>(z: T, rho: T, m: usize) -> T {
    let c = T::one() - T::one() / T::from_count(m);
    z * z + T::lit(2.0) * c * rho.sqrt() * z + rho
}

pub fn alon_boppana_witness<T: Real>(g: &Graph, m: usize, z: T) -> Result<Witness<T>> {
    if !(z < T::zero()) {
        return Err(Error::Domain(format!("z must be negative, got {z}")));
    }
    if g.n() > WITNESS_LIMIT {
        return Err(Error::TooLarge { size: g.n(), limit: WITNESS_LIMIT });
    }
    let wm = WalkModel::new(g, T::lit(1e-12).max(T::epsilon() * T::lit(64.0)))?;
    let vc = build_vectors_with(&wm, m)?;
    let phi = &wm.perron.phi_vertex;
    let n = g.n();
    let x = DenseMatrix::from_fn(n, n, |i, j| (phi[i] * phi[j]).sqrt() * vc.inner(i, j));
    let mut value = T::zero();
    for i in 0..n {
        value += x[(i, i)] * (z * z + T::from_count(g.degree(i)) - T::one());
        for &j in g.neighbors(i) {
            value -= z * x[(i, j)];
        }
    }
    Ok(Witness { x, value, closed_form: witness_closed_form(z, wm.perron.rho, m) })
}

/// Text exports: a coordinate-format Gram file and a dense vector file.
pub mod io {
    use super::VectorColoring;
    use crate::error::{Error, Result};
    use crate::graph::Graph;

    const GRAM_HEADER: &str = "%%MatrixMarket matrix coordinate real symmetric";

    /// Lower triangle of the Gram matrix, 1-based, nonzero entries only.
    pub fn gram_coordinate(vc: &VectorColoring<f64>) -> String {
        let n = vc.n();
        let mut body = String::new();
        let mut nnz = 0usize;
        for i in 0..n {
            for j in 0..=i {
                let x = vc.inner(i, j);
                if x != 0.0 {
                    nnz += 1;
                    body.push_str(&format!("{} {} {:?}\n", i + 1, j + 1, x));
                }
            }
        }
        format!("{GRAM_HEADER}\n{n} {n} {nnz}\n{body}")
    }

    /// Parse a file written by [`gram_coordinate`] into a dense symmetric matrix.
    pub fn read_gram_coordinate(text: &str) -> Result<crate::linalg::DenseMatrix<f64>> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('%'));
        let (hl, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing size line".into() })?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse { line: hl + 1, msg: format!("bad size token {t:?}") }))
            .collect::<Result<_>>()?;
        let [rows, cols, nnz] = dims[..] else {
            return Err(Error::Parse { line: hl + 1, msg: "expected `rows cols nnz`".into() });
        };
        if rows != cols {
            return Err(Error::Parse { line: hl + 1, msg: "Gram matrix must be square".into() });
        }
        let mut m = crate::linalg::DenseMatrix::zeros(rows, rows);
        let mut seen = 0;
        for (ln, line) in lines {
            let bad = |msg: &str| Error::Parse { line: ln + 1, msg: msg.into() };
            let t: Vec<&str> = line.split_whitespace().collect();
            if t.len() != 3 {
                return Err(bad("expected `i j value`"));
            }
            let i: usize = t[0].parse().map_err(|_| bad("bad row index"))?;
            let j: usize = t[1].parse().map_err(|_| bad("bad column index"))?;
            let x: f64 = t[2].parse().map_err(|_| bad("bad value"))?;
            if i == 0 || j == 0 || i > rows || j > rows {
                return Err(bad("index out of range"));
            }
            m[(i - 1, j - 1)] = x;
            m[(j - 1, i - 1)] = x;
            seen += 1;
        }
        if seen != nnz {
            return Err(Error::Parse { line: hl + 1, msg: format!("header promises {nnz} entries, found {seen}") });
        }
        Ok(m)
    }

    /// One row per vertex over the coordinates actually used, so the file
    /// stays small when the ambient dimension is the arc count.
    pub fn dense_vectors(vc: &VectorColoring<f64>) -> String {
        let mut used: Vec<usize> = vc.vectors.iter().flatten().map(|e| e.0).collect();
        used.sort_unstable();
        used.dedup();
        let mut out = format!("# vector coloring, kappa {:?}\n{} {}\n", vc.kappa, vc.n(), used.len());
        let mut row = vec![0.0f64; used.len()];
        for v in &vc.vectors {
            row.iter_mut().for_each(|x| *x = 0.0);
            for &(k, x) in v {
                row[used.binary_search(&k).expect("collected above")] = x;
            }
            let cells: Vec<String> = row.iter().map(|x| format!("{x:?}")).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    /// Read a dense vector file for `g`; `kappa` is recomputed, not trusted.
    pub fn read_dense_vectors(g: &Graph, text: &str) -> Result<VectorColoring<f64>> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (hl, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing size line".into() })?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse { line: hl + 1, msg: format!("bad size token {t:?}") }))
            .collect::<Result<_>>()?;
        let [n, dim] = dims[..] else {
            return Err(Error::Parse { line: hl + 1, msg: "expected `n dim`".into() });
        };
        let mut rows = Vec::with_capacity(n);
        for (ln, line) in lines {
            let row: Vec<f64> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::Parse { line: ln + 1, msg: format!("bad value {t:?}") }))
                .collect::<Result<_>>()?;
            if row.len() != dim {
                return Err(Error::Parse { line: ln + 1, msg: format!("expected {dim} values, found {}", row.len()) });
            }
            rows.push(row);
        }
        if rows.len() != n {
            return Err(Error::Dimension { expected: n, got: rows.len() });
        }
        let vectors = rows
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, &x)| x != 0.0).map(|(k, &x)| (k, x)).collect())
            .collect();
        VectorColoring::new(g, vectors, dim, None)
    }
}
