//! The non-backtracking operator B on directed edges.
//!
//! B is applied implicitly through [`nb_matvec`]; the only dense
//! materializations are the determinant checks and the exact
//! characteristic polynomial, both guarded to small graphs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Ineligibility, Result};
use crate::graph::Graph;
use crate::linalg::DenseMatrix;
use crate::scalar::{powi_field, Field, Real};

/// Largest vertex count accepted by the dense determinant path.
pub const DENSE_IHARA_LIMIT: usize = 300;

/// Bijection between directed edges `i -> j` and `0..2|E|`.
///
/// Arcs are numbered lexicographically by `(i, j)`, so arcs leaving `i`
/// occupy `offsets[i]..offsets[i + 1]` in neighbour order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedEdgeIndex {
    offsets: Vec<usize>,
    tails: Vec<usize>,
    heads: Vec<usize>,
    rev: Vec<usize>,
}

impl DirectedEdgeIndex {
    pub fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for v in 0..n {
            offsets.push(offsets[v] + g.degree(v));
        }
        let m2 = offsets[n];
        let mut tails = Vec::with_capacity(m2);
        let mut heads = Vec::with_capacity(m2);
        for v in 0..n {
            for &w in g.neighbors(v) {
                tails.push(v);
                heads.push(w);
            }
        }
        let rev = (0..m2)
            .map(|a| {
                let (i, j) = (tails[a], heads[a]);
                offsets[j] + g.neighbors(j).binary_search(&i).expect("symmetric adjacency")
            })
            .collect();
        DirectedEdgeIndex { offsets, tails, heads, rev }
    }

    /// Number of directed edges, `2|E|`.
    #[inline]
    pub fn len(&self) -> usize {
        self.tails.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.tails.is_empty()
    }

    /// Index of `i -> j`, if it is an edge.
    pub fn index(&self, g: &Graph, i: usize, j: usize) -> Option<usize> {
        g.neighbors(i).binary_search(&j).ok().map(|k| self.offsets[i] + k)
    }

    #[inline]
    pub fn arc(&self, a: usize) -> (usize, usize) {
        (self.tails[a], self.heads[a])
    }

    #[inline]
    pub fn tail(&self, a: usize) -> usize {
        self.tails[a]
    }

    #[inline]
    pub fn head(&self, a: usize) -> usize {
        self.heads[a]
    }

    /// `i -> j` maps to `j -> i`.
    #[inline]
    pub fn rev(&self, a: usize) -> usize {
        self.rev[a]
    }

    /// Arcs leaving vertex `v`.
    #[inline]
    pub fn out_arcs(&self, v: usize) -> std::ops::Range<usize> {
        self.offsets[v]..self.offsets[v + 1]
    }

    /// Non-backtracking successors of arc `a = i -> j`: the arcs `j -> l`
    /// with `l != i`.
    pub fn successors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        let back = self.rev[a];
        self.out_arcs(self.heads[a]).filter(move |&b| b != back)
    }
}

/// `out = B x`, i.e. `out[i->j] = sum over l in N(j) \ {i} of x[j->l]`.
///
/// Each vertex's outgoing sum is formed once and the backtracking term is
/// subtracted, so the cost is O(|E|).
pub fn nb_matvec<T: Real>(idx: &DirectedEdgeIndex, x: &[T], out: &mut [T]) -> Result<()> {
    let m2 = idx.len();
    if x.len() != m2 {
        return Err(Error::Dimension { expected: m2, got: x.len() });
    }
    if out.len() != m2 {
        return Err(Error::Dimension { expected: m2, got: out.len() });
    }
    let n = idx.offsets.len() - 1;
    let mut sums = vec![T::zero(); n];
    for (v, s) in sums.iter_mut().enumerate() {
        *s = x[idx.out_arcs(v)].iter().copied().sum();
    }
    for a in 0..m2 {
        out[a] = sums[idx.heads[a]] - x[idx.rev[a]];
    }
    Ok(())
}

/// Spectral radius of B and its positive right eigenvector.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PerronData<T> {
    pub rho: T,
    /// Indexed by [`DirectedEdgeIndex`].
    pub phi: Vec<T>,
    /// `phi_vertex[i]` = sum of `phi[i -> j]` over neighbours `j`.
    pub phi_vertex: Vec<T>,
    /// `||B phi - rho phi||_inf / ||phi||_inf` at return.
    pub residual: T,
    pub iterations: usize,
}

impl<T: Real> PerronData<T> {
    /// Largest `|sum_{k in N(j)\i} phi[j->k] - rho phi[i->j]|` over arcs,
    /// relative to `||phi||_inf`.
    pub fn eigen_residual(&self, idx: &DirectedEdgeIndex) -> T {
        let mut bphi = vec![T::zero(); idx.len()];
        nb_matvec(idx, &self.phi, &mut bphi).expect("phi has arc length");
        relative_residual(&bphi, &self.phi, self.rho)
    }

    /// Largest `|phi_i - phi[i->j] - rho phi[j->i]|` over arcs, relative to
    /// `||phi||_inf`.
    pub fn vertex_identity_residual(&self, idx: &DirectedEdgeIndex) -> T {
        let scale = inf_norm(&self.phi);
        (0..idx.len())
            .map(|a| {
                let i = idx.tail(a);
                (self.phi_vertex[i] - self.phi[a] - self.rho * self.phi[idx.rev(a)]).abs()
            })
            .fold(T::zero(), T::max)
            / scale
    }
}

fn inf_norm<T: Real>(x: &[T]) -> T {
    x.iter().fold(T::zero(), |m, v| m.max(v.abs()))
}

fn relative_residual<T: Real>(bx: &[T], x: &[T], rho: T) -> T {
    let num = bx.iter().zip(x).fold(T::zero(), |m, (&b, &v)| m.max((b - rho * v).abs()));
    num / inf_norm(x)
}

pub const PERRON_MAX_ITERATIONS: usize = 1_000_000;

/// Check that `g` is a connected 2-core on which B is irreducible and
/// aperiodic.
pub fn require_perron_eligible(g: &Graph, idx: &DirectedEdgeIndex) -> Result<()> {
    if g.n() == 0 || g.edge_count() == 0 {
        return Err(Ineligibility::EmptyCore.into());
    }
    if g.min_degree() < 2 {
        return Err(Ineligibility::NotTwoCore { min_degree: g.min_degree() }.into());
    }
    let comps = g.components().len();
    if comps > 1 {
        return Err(Ineligibility::Disconnected { components: comps }.into());
    }
    if g.is_cycle() {
        return Err(Ineligibility::Cycle.into());
    }
    if g.is_bipartite() {
        return Err(Ineligibility::Bipartite.into());
    }
    let p = period(g, idx)?.period;
    if p != 1 {
        return Err(Ineligibility::Periodic { period: p }.into());
    }
    Ok(())
}

/// Power iteration for the Perron pair of B, started from the all-ones
/// vector. `g` must be an eligible connected 2-core.
///
/// Returns phi normalized so that `sum_i phi_i = 1`.
pub fn perron<T: Real>(g: &Graph, idx: &DirectedEdgeIndex, tol: T) -> Result<PerronData<T>> {
    perron_with_cap(g, idx, tol, PERRON_MAX_ITERATIONS)
}

pub fn perron_with_cap<T: Real>(
    g: &Graph,
    idx: &DirectedEdgeIndex,
    tol: T,
    max_iterations: usize,
) -> Result<PerronData<T>> {
    require_perron_eligible(g, idx)?;
    let m2 = idx.len();
    let inv = T::one() / T::from_count(m2);
    let mut x = vec![inv; m2];
    let mut y = vec![T::zero(); m2];
    let mut best = f64::INFINITY;
    for it in 1..=max_iterations {
        nb_matvec(idx, &x, &mut y)?;
        let sx: T = x.iter().copied().sum();
        let sy: T = y.iter().copied().sum();
        let rho = sy / sx;
        let res = relative_residual(&y, &x, rho);
        best = best.min(res.as_f64());
        if res <= tol {
            return Ok(finish(g, idx, x, it));
        }
        for (xv, &yv) in x.iter_mut().zip(&y) {
            *xv = yv / sy;
        }
    }
    Err(Error::Convergence { iterations: max_iterations, residual: best })
}

fn finish<T: Real>(g: &Graph, idx: &DirectedEdgeIndex, mut phi: Vec<T>, it: usize) -> PerronData<T> {
    let total: T = phi.iter().copied().sum();
    for p in phi.iter_mut() {
        *p /= total;
    }
    let mut bphi = vec![T::zero(); phi.len()];
    nb_matvec(idx, &phi, &mut bphi).expect("dimensions match");
    let rho = bphi.iter().copied().sum::<T>() / phi.iter().copied().sum::<T>();
    let residual = relative_residual(&bphi, &phi, rho);
    let phi_vertex = (0..g.n()).map(|v| phi[idx.out_arcs(v)].iter().copied().sum()).collect();
    PerronData { rho, phi, phi_vertex, residual, iterations: it }
}

/// Period of B restricted to the arcs reachable from arc 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Period {
    pub period: usize,
    /// Every arc was reached, i.e. B is irreducible.
    pub irreducible: bool,
}

/// Period of B by BFS levels on the arc digraph: the gcd of
/// `level(a) + 1 - level(b)` over reachable transitions `a -> b`.
///
/// For a cycle B is reducible; the value returned is then the cycle length.
pub fn period(g: &Graph, idx: &DirectedEdgeIndex) -> Result<Period> {
    if idx.is_empty() {
        return Err(Ineligibility::EmptyCore.into());
    }
    let _ = g;
    let m2 = idx.len();
    let mut level = vec![usize::MAX; m2];
    level[0] = 0;
    let mut queue = std::collections::VecDeque::from([0usize]);
    let mut order = Vec::with_capacity(m2);
    while let Some(a) = queue.pop_front() {
        order.push(a);
        for b in idx.successors(a) {
            if level[b] == usize::MAX {
                level[b] = level[a] + 1;
                queue.push_back(b);
            }
        }
    }
    let mut p: usize = 0;
    for &a in &order {
        for b in idx.successors(a) {
            let diff = (level[a] as i64 + 1 - level[b] as i64).unsigned_abs() as usize;
            p = p.gcd(&diff);
        }
    }
    Ok(Period { period: p.max(1), irreducible: order.len() == m2 })
}

/// Dense `z I - B` over any field.
pub fn dense_shifted_nb<F: Field>(idx: &DirectedEdgeIndex, z: &F) -> DenseMatrix<F> {
    let m2 = idx.len();
    let mut m = DenseMatrix::filled(m2, m2, F::zero());
    for a in 0..m2 {
        m[(a, a)] = z.clone();
        for b in idx.successors(a) {
            m[(a, b)] = -F::one();
        }
    }
    m
}

/// Dense `L(z) = z^2 I - z A + D - I` over any field.
pub fn dense_deformed_laplacian<F: Field>(g: &Graph, z: &F) -> DenseMatrix<F> {
    let n = g.n();
    let z2 = z.clone() * z.clone();
    let mut m = DenseMatrix::filled(n, n, F::zero());
    for i in 0..n {
        m[(i, i)] = z2.clone() + F::from_i64(g.degree(i) as i64 - 1);
        for &j in g.neighbors(i) {
            m[(i, j)] = -z.clone();
        }
    }
    m
}

/// Both sides of the Ihara-Bass identity at one point.
#[derive(Debug, Clone)]
pub struct IharaSample<F> {
    pub z: F,
    pub lhs: F,
    pub rhs: F,
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct IharaReport<F> {
    pub samples: Vec<IharaSample<F>>,
    pub max_residual: f64,
}

/// `det(zI - B)` and `(z^2 - 1)^{|E|-|V|} det L(z)` by dense LU at every
/// sample, with residual `|lhs - rhs| / max(|lhs|, |rhs|, 1)`.
pub fn ihara_bass_check<F: Field>(g: &Graph, samples: &[F]) -> Result<IharaReport<F>> {
    if g.n() > DENSE_IHARA_LIMIT {
        return Err(Error::TooLarge { size: g.n(), limit: DENSE_IHARA_LIMIT });
    }
    let idx = DirectedEdgeIndex::new(g);
    let exponent = g.edge_count() as i64 - g.n() as i64;
    let mut out = Vec::with_capacity(samples.len());
    let mut worst: f64 = 0.0;
    for z in samples {
        let lhs = dense_shifted_nb(&idx, z).determinant();
        let factor = z.clone() * z.clone() - F::one();
        let det_l = dense_deformed_laplacian(g, z).determinant();
        let rhs = if det_l == F::zero() { F::zero() } else { powi_field(&factor, exponent) * det_l };
        let scale = lhs.modulus().max(rhs.modulus()).max(1.0);
        let residual = (lhs.clone() - rhs.clone()).modulus() / scale;
        worst = worst.max(residual);
        out.push(IharaSample { z: z.clone(), lhs, rhs, residual });
    }
    Ok(IharaReport { samples: out, max_residual: worst })
}

/// Exact characteristic polynomial `det(zI - B)` by Faddeev-LeVerrier over
/// the integers. Coefficients are ascending in degree.
pub fn nb_char_poly(g: &Graph) -> Result<Vec<BigInt>> {
    if g.n() > 12 {
        return Err(Error::TooLarge { size: g.n(), limit: 12 });
    }
    let idx = DirectedEdgeIndex::new(g);
    let n = idx.len();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    // m holds M_k; next = B * M_k + c I
    let mut m: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        let c_prev = coeffs[n - k + 1].clone();
        let mut next: Vec<Vec<BigInt>> = (0..n)
            .map(|a| {
                let mut row = vec![BigInt::zero(); n];
                for b in idx.successors(a) {
                    for (r, x) in row.iter_mut().zip(&m[b]) {
                        *r += x;
                    }
                }
                row
            })
            .collect();
        for (a, row) in next.iter_mut().enumerate() {
            row[a] += &c_prev;
        }
        // tr(B * M_k)
        let trace: BigInt = (0..n).flat_map(|a| idx.successors(a).map(move |b| (a, b))).map(|(a, b)| &next[b][a]).sum();
        let (q, r) = trace.div_rem(&BigInt::from(k as i64));
        debug_assert!(r.is_zero());
        coeffs[n - k] = -q;
        m = next;
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn index_counts_and_involution() {
        let t = corpus::cycle(3);
        assert_eq!(DirectedEdgeIndex::new(&t).len(), 6);
        let p = corpus::petersen();
        let idx = DirectedEdgeIndex::new(&p);
        assert_eq!(idx.len(), 30);
        let a = idx.index(&p, 0, 1).unwrap();
        assert_eq!(idx.rev(a), idx.index(&p, 1, 0).unwrap());
        for a in 0..idx.len() {
            assert_ne!(idx.rev(a), a);
            assert_eq!(idx.rev(idx.rev(a)), a);
            let (i, j) = idx.arc(a);
            assert_eq!(idx.index(&p, i, j), Some(a));
        }
    }

    #[test]
    fn matvec_examples() {
        let k4 = corpus::complete(4);
        let idx = DirectedEdgeIndex::new(&k4);
        let mut out = vec![0.0; idx.len()];
        nb_matvec(&idx, &vec![1.0; idx.len()], &mut out).unwrap();
        assert!(out.iter().all(|&v| v == 2.0));

        let tri = corpus::cycle(3);
        let idx = DirectedEdgeIndex::new(&tri);
        let mut x = vec![0.0; 6];
        x[0] = 1.0;
        let mut out = vec![0.0; 6];
        nb_matvec(&idx, &x, &mut out).unwrap();
        assert_eq!(out.iter().filter(|&&v| v != 0.0).count(), 1);

        let c5 = corpus::cycle(5);
        let idx = DirectedEdgeIndex::new(&c5);
        let ones = vec![1.0; 10];
        let mut once = vec![0.0; 10];
        let mut twice = vec![0.0; 10];
        nb_matvec(&idx, &ones, &mut once).unwrap();
        nb_matvec(&idx, &once, &mut twice).unwrap();
        assert_eq!(twice, ones);

        assert!(matches!(nb_matvec(&idx, &[1.0; 3], &mut twice), Err(Error::Dimension { .. })));
    }

    #[test]
    fn perron_on_regular_graphs() {
        for g in [corpus::complete(4), corpus::petersen()] {
            let idx = DirectedEdgeIndex::new(&g);
            let p: PerronData<f64> = perron(&g, &idx, 1e-10).unwrap();
            assert!((p.rho - 2.0).abs() < 1e-9);
            let first = p.phi[0];
            assert!(p.phi.iter().all(|&v| (v - first).abs() < 1e-12));
            assert!((p.phi_vertex.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn perron_rejects_cycles() {
        let c6 = corpus::cycle(6);
        let idx = DirectedEdgeIndex::new(&c6);
        let err = perron::<f64>(&c6, &idx, 1e-10).unwrap_err();
        assert!(matches!(err, Error::Ineligible(Ineligibility::Cycle)));
        let tail = corpus::triangle_with_tail(2);
        let idx = DirectedEdgeIndex::new(&tail);
        assert!(matches!(
            perron::<f64>(&tail, &idx, 1e-10),
            Err(Error::Ineligible(Ineligibility::NotTwoCore { .. }))
        ));
    }

    #[test]
    fn perron_reports_non_convergence() {
        let g = corpus::petersen_subdivided_edge();
        let idx = DirectedEdgeIndex::new(&g);
        match perron_with_cap::<f64>(&g, &idx, 1e-14, 3) {
            Err(Error::Convergence { iterations: 3, residual }) => assert!(residual > 0.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn periods() {
        let pet = corpus::petersen();
        assert_eq!(period(&pet, &DirectedEdgeIndex::new(&pet)).unwrap().period, 1);
        let c6 = corpus::cycle(6);
        let p = period(&c6, &DirectedEdgeIndex::new(&c6)).unwrap();
        assert_eq!(p.period % 2, 0);
        assert!(!p.irreducible);
        let sub = corpus::subdivide(&corpus::complete(4), 3);
        assert_eq!(period(&sub, &DirectedEdgeIndex::new(&sub)).unwrap().period, 3);
        let k33 = corpus::complete_bipartite(3, 3);
        assert_eq!(period(&k33, &DirectedEdgeIndex::new(&k33)).unwrap().period, 2);
        assert!(period(&corpus::path(3), &DirectedEdgeIndex::new(&Graph::empty(2))).is_err());
    }

    #[test]
    fn ihara_bass_triangle_and_laplacian_root() {
        let tri = corpus::cycle(3);
        let r = ihara_bass_check(&tri, &[2.0f64]).unwrap();
        assert!(r.max_residual < 1e-12);
        let k4 = corpus::complete(4);
        let r = ihara_bass_check(&k4, &[1.0f64]).unwrap();
        assert!(r.samples[0].lhs.abs() < 1e-9 && r.samples[0].rhs.abs() < 1e-9);
    }

    #[test]
    fn char_poly_of_triangle() {
        // B of C3 is a direct sum of two 3-cycles: (z^3 - 1)^2.
        let c = nb_char_poly(&corpus::cycle(3)).unwrap();
        let expect: Vec<BigInt> = [1, 0, 0, -2, 0, 0, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(c, expect);
    }
}
