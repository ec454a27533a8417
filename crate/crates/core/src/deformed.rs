//! The deformed Laplacian `L(z) = z^2 I - z A + D - I` and the search for
//! the smallest real eigenvalue of B through it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{cholesky_pd, lanczos_smallest, symmetric_eigenvalues, DenseMatrix, LanczosOptions};
use crate::nb::{require_perron_eligible, DirectedEdgeIndex};
use crate::scalar::Real;

/// Largest vertex count handled with dense eigensolvers.
pub const DENSE_LIMIT: usize = 512;

/// Implicit symmetric operator `v -> z^2 v - z A v + (D - I) v`.
#[derive(Debug, Clone, Copy)]
pub struct DeformedLaplacian<'a, T> {
    g: &'a Graph,
    z: T,
}

impl<'a, T: Real> DeformedLaplacian<'a, T> {
    pub fn new(g: &'a Graph, z: T) -> Self {
        DeformedLaplacian { g, z }
    }

    pub fn z(&self) -> T {
        self.z
    }

    pub fn apply(&self, x: &[T], y: &mut [T]) {
        let z2m1 = self.z * self.z - T::one();
        for (i, yi) in y.iter_mut().enumerate() {
            let nb: T = self.g.neighbors(i).iter().map(|&j| x[j]).sum();
            *yi = (z2m1 + T::from_count(self.g.degree(i))) * x[i] - self.z * nb;
        }
    }

    pub fn to_dense(&self) -> DenseMatrix<T> {
        let n = self.g.n();
        let mut m = DenseMatrix::filled(n, n, T::zero());
        let z2m1 = self.z * self.z - T::one();
        for i in 0..n {
            m[(i, i)] = z2m1 + T::from_count(self.g.degree(i));
            for &j in self.g.neighbors(i) {
                m[(i, j)] = -self.z;
            }
        }
        m
    }

    /// Upper bound on the operator norm: `|z^2 - 1| + maxdeg + |z| maxdeg`.
    pub fn norm_bound(&self) -> T {
        let dmax = T::from_count(self.g.max_degree());
        (self.z * self.z - T::one()).abs() + dmax + self.z.abs() * dmax
    }

    /// `<x, L(z) x>`.
    pub fn quadratic_form(&self, x: &[T]) -> T {
        let mut y = vec![T::zero(); x.len()];
        self.apply(x, &mut y);
        x.iter().zip(&y).map(|(&a, &b)| a * b).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EigMode {
    /// Dense up to [`DENSE_LIMIT`] vertices, Lanczos above.
    #[default]
    Auto,
    Dense,
    Lanczos,
}

impl EigMode {
    fn dense_for(self, n: usize) -> bool {
        match self {
            EigMode::Auto => n <= DENSE_LIMIT,
            EigMode::Dense => true,
            EigMode::Lanczos => false,
        }
    }
}

/// Smallest eigenvalue of `L(z)`.
pub fn lambda_min<T: Real>(g: &Graph, z: T, mode: EigMode) -> Result<T> {
    Ok(MinEigSolver::new(g, mode).eval(z)?.value)
}

#[derive(Debug, Clone, Copy)]
struct MinEig<T> {
    value: T,
    /// Bound on `|value - lambda_min|` (0 on the dense path up to rounding).
    error: T,
}

/// Evaluates `lambda_min(L(z))` at many `z`, warm-starting Lanczos from the
/// previous Ritz vector.
struct MinEigSolver<'a, T> {
    g: &'a Graph,
    dense: bool,
    warm: Option<Vec<T>>,
    evaluations: usize,
}

impl<'a, T: Real> MinEigSolver<'a, T> {
    fn new(g: &'a Graph, mode: EigMode) -> Self {
        MinEigSolver { g, dense: mode.dense_for(g.n()), warm: None, evaluations: 0 }
    }

    fn eval(&mut self, z: T) -> Result<MinEig<T>> {
        if self.g.n() == 0 {
            return Err(Error::Domain("deformed Laplacian of the empty graph".into()));
        }
        self.evaluations += 1;
        let op = DeformedLaplacian::new(self.g, z);
        if self.dense {
            let ev = symmetric_eigenvalues(&op.to_dense());
            return Ok(MinEig { value: ev[0], error: T::zero() });
        }
        let opts = LanczosOptions::new(op.norm_bound());
        let r = lanczos_smallest(self.g.n(), |x, y| op.apply(x, y), self.warm.as_deref(), &opts);
        if !r.converged {
            if self.g.n() <= DENSE_LIMIT {
                let ev = symmetric_eigenvalues(&op.to_dense());
                return Ok(MinEig { value: ev[0], error: T::zero() });
            }
            return Err(Error::Convergence { iterations: r.matvecs, residual: r.residual.as_f64() });
        }
        self.warm = Some(r.vector);
        Ok(MinEig { value: r.value, error: r.residual })
    }
}

/// Default PSD shift `1e-9 (1 + z^2 + maxdeg)`.
pub fn default_psd_tol<T: Real>(g: &Graph, z: T) -> T {
    T::lit(1e-9) * (T::one() + z * z + T::from_count(g.max_degree()))
}

/// Whether `L(z) + tol I` is positive definite: a pivoted Cholesky on the
/// dense path, `lambda_min - residual >= -tol` on the Lanczos path.
pub fn is_psd<T: Real>(g: &Graph, z: T, tol: Option<T>) -> bool {
    psd_check(g, z, tol, EigMode::Auto).map(|c| c.psd).unwrap_or(false)
}

/// Outcome of a PSD test with its evidence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PsdCheck<T> {
    pub psd: bool,
    pub lambda_min: T,
    pub tol: T,
}

pub fn psd_check<T: Real>(g: &Graph, z: T, tol: Option<T>, mode: EigMode) -> Result<PsdCheck<T>> {
    let tol = tol.unwrap_or_else(|| default_psd_tol(g, z));
    if g.n() == 0 {
        return Ok(PsdCheck { psd: true, lambda_min: T::zero(), tol });
    }
    if mode.dense_for(g.n()) {
        let m = DeformedLaplacian::new(g, z).to_dense();
        let psd = cholesky_pd(&m, tol).is_ok();
        let lambda_min = symmetric_eigenvalues(&m)[0];
        return Ok(PsdCheck { psd, lambda_min, tol });
    }
    let e = MinEigSolver::new(g, mode).eval(z)?;
    Ok(PsdCheck { psd: e.value - e.error >= -tol, lambda_min: e.value, tol })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootMethod {
    /// No crossing below -1; the -1 eigenvalue is implied by `|E| > |V|`.
    BaselineMinusOne,
    BisectionCrossing,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealEigLocation<T> {
    /// Smallest real eigenvalue of B. After bisection this is the lower
    /// (PSD) end of the final bracket.
    pub r_star: T,
    pub method: RootMethod,
    pub bracket: T,
    pub grid_used: T,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct ScanOptions<T> {
    /// Final bisection bracket width.
    pub tol: T,
    /// Defaults to `0.01 (1 + maxdeg)`.
    pub grid_step: Option<T>,
    pub mode: EigMode,
}

impl<T: Real> Default for ScanOptions<T> {
    fn default() -> Self {
        ScanOptions { tol: T::lit(1e-8), grid_step: None, mode: EigMode::Auto }
    }
}

pub fn default_grid_step<T: Real>(g: &Graph) -> T {
    T::lit(0.01) * (T::one() + T::from_count(g.max_degree()))
}

/// Largest `h` for which `lambda_min(L(z + h)) > 0` follows from
/// `lambda_min(L(z)) = lam > 0`, using
/// `||L(z + h) - L(z)|| <= |2 z h + h^2| + |h| maxdeg`.
fn safe_step<T: Real>(z: T, lam: T, dmax: T) -> T {
    // For 0 < h <= |z| the perturbation is at most h (2|z| + maxdeg).
    let h = lam / (T::lit(2.0) * z.abs() + dmax) * T::lit(0.9);
    h.min(z.abs())
}

/// Smallest real eigenvalue of B for an eligible connected 2-core.
///
/// Starts at `-(1 + maxdeg)`, where `L` is diagonally dominant, and walks
/// right in steps of at least `grid_step` (longer where the eigenvalue
/// margin proves no crossing is possible) until `lambda_min` turns
/// negative, then bisects. With no crossing before `-1` the answer is `-1`.
pub fn smallest_real_eig_b<T: Real>(g: &Graph, opts: &ScanOptions<T>) -> Result<RealEigLocation<T>> {
    let idx = DirectedEdgeIndex::new(g);
    require_perron_eligible(g, &idx)?;
    let dmax = T::from_count(g.max_degree());
    let grid = opts.grid_step.unwrap_or_else(|| default_grid_step(g));
    if !(grid > T::zero()) || !(opts.tol > T::zero()) {
        return Err(Error::Parameter("grid step and tolerance must be positive".into()));
    }
    let mut solver = MinEigSolver::new(g, opts.mode);
    let minus_one = -T::one();
    let mut z = -(T::one() + dmax);
    let mut lam = solver.eval(z)?.value;
    debug_assert!(lam > T::zero());
    while z < minus_one {
        let step = grid.max(safe_step(z, lam, dmax));
        let next = (z + step).min(minus_one);
        let lam_next = solver.eval(next)?.value;
        if lam_next < T::zero() {
            let (mut lo, mut hi) = (z, next);
            while hi - lo > opts.tol {
                let mid = (lo + hi) / T::lit(2.0);
                if solver.eval(mid)?.value < T::zero() {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Ok(RealEigLocation {
                r_star: lo,
                method: RootMethod::BisectionCrossing,
                bracket: hi - lo,
                grid_used: grid,
                evaluations: solver.evaluations,
            });
        }
        z = next;
        lam = lam_next;
    }
    if g.edge_count() > g.n() {
        return Ok(RealEigLocation {
            r_star: minus_one,
            method: RootMethod::BaselineMinusOne,
            bracket: T::zero(),
            grid_used: grid,
            evaluations: solver.evaluations,
        });
    }
    // Unreachable for eligible graphs (a connected 2-core that is not a
    // cycle has |E| > |V|); kept for direct callers of the scan.
    let scan = real_root_scan(g, (-(T::one() + dmax), T::one() - opts.tol), grid, opts.mode)?;
    scan.roots
        .first()
        .map(|r| RealEigLocation {
            r_star: r.z,
            method: RootMethod::BisectionCrossing,
            bracket: opts.tol,
            grid_used: grid,
            evaluations: solver.evaluations,
        })
        .ok_or_else(|| Error::Degenerate("no real eigenvalue of B below rho".into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootKind {
    /// `lambda_min` (or the negative inertia) changes across the root.
    Crossing,
    /// An eigenvalue touches zero without changing sign.
    Tangential,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealRoot<T> {
    pub z: T,
    pub kind: RootKind,
}

/// A near-zero of the spectrum that could not be confirmed as a root.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuspectedRoot<T> {
    pub z: T,
    pub min_abs_eig: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootScan<T> {
    pub roots: Vec<RealRoot<T>>,
    pub suspected: Vec<SuspectedRoot<T>>,
}

/// Spectral summary at one point: count of negative eigenvalues and the
/// distance from the spectrum to zero.
struct Probe<T> {
    negatives: usize,
    min_abs: T,
}

/// Real zeros of `det L(z)` on `[a, b]`.
///
/// Dense path: changes in the number of negative eigenvalues are bisected,
/// and local minima of `min |eig|` between grid points are refined by
/// golden-section search to catch even-multiplicity zeros. The Lanczos path
/// uses only `lambda_min`, so it sees the lowest eigencurve alone.
pub fn real_root_scan<T: Real>(g: &Graph, interval: (T, T), grid_step: T, mode: EigMode) -> Result<RootScan<T>> {
    let (a, b) = interval;
    if !(b > a) || !(grid_step > T::zero()) {
        return Err(Error::Parameter("need a < b and a positive grid step".into()));
    }
    if g.n() == 0 {
        return Ok(RootScan { roots: Vec::new(), suspected: Vec::new() });
    }
    let dense = mode.dense_for(g.n());
    let mut solver = MinEigSolver::new(g, mode);
    let scale = T::one() + b.abs().max(a.abs()).powi(2) + T::from_count(g.max_degree());
    // Eigenvalues within rounding of zero are not counted as negative.
    let noise = T::lit(256.0) * T::epsilon() * scale;
    let mut probe = |z: T| -> Result<Probe<T>> {
        if dense {
            let ev = symmetric_eigenvalues(&DeformedLaplacian::new(g, z).to_dense());
            let negatives = ev.iter().filter(|&&v| v < -noise).count();
            let min_abs = ev.iter().fold(T::infinity(), |m, &v| m.min(v.abs()));
            Ok(Probe { negatives, min_abs })
        } else {
            let v = solver.eval(z)?.value;
            Ok(Probe { negatives: usize::from(v < -noise), min_abs: v.abs() })
        }
    };

    let steps = ((b - a) / grid_step).ceil().to_usize().unwrap_or(1).max(1);
    let zs: Vec<T> = (0..=steps).map(|k| (a + grid_step * T::from_count(k)).min(b)).collect();
    let probes: Vec<Probe<T>> = zs.iter().map(|&z| probe(z)).collect::<Result<_>>()?;

    let z_tol = T::lit(1e-10) * (T::one() + b.abs().max(a.abs()));
    let root_tol = T::lit(1e-7) * scale;
    let grid_tol = T::lit(0.05) * grid_step * scale;
    let mut roots: Vec<RealRoot<T>> = Vec::new();
    let mut suspected = Vec::new();

    for k in 0..steps {
        let (pa, pb) = (&probes[k], &probes[k + 1]);
        if pa.negatives != pb.negatives {
            // Bisect every change in the negative count inside this cell.
            let mut stack = vec![(zs[k], pa.negatives, zs[k + 1], pb.negatives)];
            while let Some((lo, nlo, hi, nhi)) = stack.pop() {
                if nlo == nhi {
                    continue;
                }
                if hi - lo <= z_tol {
                    roots.push(RealRoot { z: (lo + hi) / T::lit(2.0), kind: RootKind::Crossing });
                    continue;
                }
                let mid = (lo + hi) / T::lit(2.0);
                let nm = probe(mid)?.negatives;
                stack.push((mid, nm, hi, nhi));
                stack.push((lo, nlo, mid, nm));
            }
        }
    }
    // Tangential candidates: grid-local minima of min |eig|.
    for k in 0..=steps {
        let left = if k > 0 { probes[k - 1].min_abs } else { T::infinity() };
        let right = if k < steps { probes[k + 1].min_abs } else { T::infinity() };
        let here = probes[k].min_abs;
        if !(here <= left && here <= right) || here > grid_tol {
            continue;
        }
        let lo = if k > 0 { zs[k - 1] } else { zs[k] };
        let hi = if k < steps { zs[k + 1] } else { zs[k] };
        let (zm, fm) = golden_min(lo, hi, z_tol, |z| probe(z).map(|p| p.min_abs))?;
        let known = roots.iter().any(|r| (r.z - zm).abs() <= grid_step * T::lit(0.5));
        if known {
            continue;
        }
        if fm <= root_tol {
            roots.push(RealRoot { z: zm, kind: RootKind::Tangential });
        } else {
            suspected.push(SuspectedRoot { z: zm, min_abs_eig: fm });
        }
    }
    // Vertices outside the 2-core contribute an exact factor z^(2t) to
    // det L, a flat high-order zero that eigenvalues cannot pin down. The
    // core has no zeros with |z| < 1/maxdeg since L(0) = D - I >= I there.
    if g.two_core().graph.n() < g.n() && a <= T::zero() && b >= T::zero() {
        let window = T::lit(0.5) / (T::one() + T::from_count(g.max_degree()));
        roots.retain(|r| r.z.abs() >= window);
        suspected.retain(|r| r.z.abs() >= window);
        roots.push(RealRoot { z: T::zero(), kind: RootKind::Tangential });
    }
    roots.sort_by(|x, y| x.z.partial_cmp(&y.z).unwrap_or(std::cmp::Ordering::Equal));
    roots.dedup_by(|x, y| (x.z - y.z).abs() <= z_tol * T::lit(100.0));
    Ok(RootScan { roots, suspected })
}

fn golden_min<T: Real>(mut a: T, mut b: T, tol: T, mut f: impl FnMut(T) -> Result<T>) -> Result<(T, T)> {
    let inv_phi = T::lit((5f64.sqrt() - 1.0) / 2.0);
    let mut c = b - (b - a) * inv_phi;
    let mut d = a + (b - a) * inv_phi;
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * inv_phi;
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * inv_phi;
            fd = f(d)?;
        }
    }
    let z = (a + b) / T::lit(2.0);
    Ok((z, f(z)?))
}
