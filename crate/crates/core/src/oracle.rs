//! Exact vector chromatic number for small graphs.
//!
//! Feasibility of "unit vectors with edge inner products at most
//! `-1/(kappa-1)`" is decided by minimizing a squared-hinge violation penalty
//! over full-rank factorizations `P = V V^T` (rows of `V` on the unit
//! sphere). A feasible point is checked directly. Infeasibility is certified
//! by weak duality: for edge weights `w >= 0` summing to one and any `y`,
//!
//! ```text
//! max_e (P_e - theta) >= n lambda_min(W + Diag(y)) - sum(y) - theta
//! ```
//!
//! for every feasible `P`, where `W` spreads `w_e / 2` over both entries of
//! edge `e`. The weights are read off the penalty minimizer. A positive bound
//! proves `kappa < chi_v`. Anything else is reported as inconclusive.

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{symmetric_eigenvalues, DenseMatrix};
use crate::rng::{stream_rng, streams};

pub const ORACLE_LIMIT: usize = 64;
/// Left end of the bisection bracket.
pub const KAPPA_FLOOR: f64 = 2.0 + 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleOptions {
    /// Slack allowed on edge constraints when accepting a feasible point.
    pub feas_tol: f64,
    /// Infeasibility needs a dual bound of at least `margin_factor * feas_tol`.
    pub margin_factor: f64,
    pub max_iterations: usize,
    /// Random restarts tried after the warm start fails to decide.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { feas_tol: 1e-9, margin_factor: 10.0, max_iterations: 40_000, restarts: 4, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Feasibility {
    Feasible {
        gram: DenseMatrix<f64>,
        /// `max_e (P_e + 1/(kappa-1))`, at most `feas_tol`.
        max_violation: f64,
        iterations: usize,
    },
    Infeasible {
        /// Certified lower bound on the smallest achievable max violation.
        margin: f64,
        best_violation: f64,
        iterations: usize,
    },
    Inconclusive {
        best_violation: f64,
        dual_bound: f64,
        iterations: usize,
    },
}

impl Feasibility {
    pub fn iterations(&self) -> usize {
        match self {
            Feasibility::Feasible { iterations, .. }
            | Feasibility::Infeasible { iterations, .. }
            | Feasibility::Inconclusive { iterations, .. } => *iterations,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible { .. })
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, Feasibility::Infeasible { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub chi_v: f64,
    /// Final bracket: infeasibility proven at `lo` (unless it is the floor),
    /// feasibility shown at `hi`.
    pub bracket: (f64, f64),
    /// Feasible Gram matrix at `bracket.1`.
    pub gram: DenseMatrix<f64>,
    pub max_edge_entry: f64,
    /// Certified infeasibility margin at `bracket.0`; `None` when `lo` was
    /// never tested (the floor, or an edgeless graph).
    pub dual_evidence: Option<f64>,
    pub iterations: usize,
    /// Bracket is wider than requested because a pivot could not be decided.
    pub inconclusive: bool,
}

struct Problem<'a> {
    n: usize,
    edges: &'a [(usize, usize)],
    theta: f64,
    /// Penalty target, `theta - feas_tol / 2`.
    target: f64,
}

enum RunOutcome {
    Feasible { v: Vec<f64>, viol: f64, it: usize },
    Infeasible { v: Vec<f64>, margin: f64, viol: f64, it: usize },
    Stuck { v: Vec<f64>, viol: f64, dual: f64, it: usize },
}

impl RunOutcome {
    fn it(&self) -> usize {
        match self {
            RunOutcome::Feasible { it, .. } | RunOutcome::Infeasible { it, .. } | RunOutcome::Stuck { it, .. } => *it,
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize_rows(v: &mut [f64], n: usize) {
    for row in v.chunks_mut(n) {
        let s = dot(row, row).sqrt();
        if s > 0.0 {
            row.iter_mut().for_each(|x| *x /= s);
        } else {
            row[0] = 1.0;
        }
    }
}

impl Problem<'_> {
    fn row<'v>(&self, v: &'v [f64], i: usize) -> &'v [f64] {
        &v[i * self.n..(i + 1) * self.n]
    }

    /// Edge inner products, penalty value and max violation against `theta`.
    fn evaluate(&self, v: &[f64], s: &mut [f64]) -> (f64, f64) {
        let mut f = 0.0;
        let mut viol = f64::NEG_INFINITY;
        for (k, &(i, j)) in self.edges.iter().enumerate() {
            s[k] = dot(self.row(v, i), self.row(v, j));
            let h = (s[k] - self.target).max(0.0);
            f += 0.5 * h * h;
            viol = viol.max(s[k] - self.theta);
        }
        (f, viol)
    }

    fn gradient(&self, v: &[f64], s: &[f64], g: &mut [f64]) {
        let n = self.n;
        g.iter_mut().for_each(|x| *x = 0.0);
        for (k, &(i, j)) in self.edges.iter().enumerate() {
            let h = s[k] - self.target;
            if h <= 0.0 {
                continue;
            }
            for c in 0..n {
                g[i * n + c] += h * v[j * n + c];
                g[j * n + c] += h * v[i * n + c];
            }
        }
        // Project onto the tangent space of each sphere.
        for i in 0..n {
            let r = &v[i * n..(i + 1) * n];
            let p = dot(&g[i * n..(i + 1) * n], r);
            for c in 0..n {
                g[i * n + c] -= p * r[c];
            }
        }
    }

    fn dual_bound(&self, s: &[f64]) -> f64 {
        let n = self.n;
        let hs: Vec<f64> = s.iter().map(|&x| (x - self.target).max(0.0)).collect();
        let total: f64 = hs.iter().sum();
        if total <= 0.0 {
            return f64::NEG_INFINITY;
        }
        let mut m: DenseMatrix<f64> = DenseMatrix::zeros(n, n);
        let mut y = vec![0.0f64; n];
        for (k, &(i, j)) in self.edges.iter().enumerate() {
            let w = hs[k] / total;
            m[(i, j)] += w / 2.0;
            m[(j, i)] += w / 2.0;
            y[i] -= w / 2.0 * s[k];
            y[j] -= w / 2.0 * s[k];
        }
        for i in 0..n {
            m[(i, i)] += y[i];
        }
        let lam: f64 = symmetric_eigenvalues(&m)[0];
        // Backward-error allowance for the eigenvalue.
        let slack: f64 = 64.0 * f64::EPSILON * (n as f64) * (1.0 + y.iter().map(|x: &f64| x.abs()).fold(0.0, f64::max));
        n as f64 * (lam - slack) - y.iter().sum::<f64>() - self.theta
    }

    /// Riemannian gradient descent with Barzilai-Borwein steps and Armijo
    /// backtracking.
    fn run(&self, mut v: Vec<f64>, opts: &OracleOptions) -> RunOutcome {
        const DUAL_EVERY: usize = 25;
        let n = self.n;
        let ne = self.edges.len();
        let need = opts.margin_factor * opts.feas_tol;
        let mut s = vec![0.0; ne];
        let mut s_try = vec![0.0; ne];
        let mut g = vec![0.0; n * n];
        let mut prev: Option<(Vec<f64>, Vec<f64>)> = None;
        let mut trial = vec![0.0; n * n];
        let (mut f, mut viol) = self.evaluate(&v, &mut s);
        let mut dual = f64::NEG_INFINITY;
        for it in 0..opts.max_iterations {
            if viol <= opts.feas_tol {
                return RunOutcome::Feasible { v, viol, it };
            }
            if it % DUAL_EVERY == 0 {
                dual = self.dual_bound(&s);
                if dual >= need {
                    return RunOutcome::Infeasible { v, margin: dual, viol, it };
                }
            }
            self.gradient(&v, &s, &mut g);
            let gg = dot(&g, &g);
            if gg < 1e-32 {
                break;
            }
            let mut alpha = match &prev {
                Some((pv, pg)) => {
                    let mut ss = 0.0;
                    let mut sy = 0.0;
                    for k in 0..n * n {
                        let dv = v[k] - pv[k];
                        ss += dv * dv;
                        sy += dv * (g[k] - pg[k]);
                    }
                    if sy.abs() > 0.0 { ss / sy.abs() } else { 1.0 }
                }
                None => 1.0 / gg.sqrt(),
            }
            .clamp(1e-10, 1e10);
            let mut accepted = false;
            for _ in 0..60 {
                for k in 0..n * n {
                    trial[k] = v[k] - alpha * g[k];
                }
                normalize_rows(&mut trial, n);
                let (ft, vt) = self.evaluate(&trial, &mut s_try);
                if ft <= f - 1e-4 * alpha * gg {
                    prev = Some((std::mem::replace(&mut v, trial.clone()), g.clone()));
                    std::mem::swap(&mut s, &mut s_try);
                    f = ft;
                    viol = vt;
                    accepted = true;
                    break;
                }
                alpha *= 0.5;
            }
            if !accepted {
                break;
            }
        }
        if viol <= opts.feas_tol {
            return RunOutcome::Feasible { v, viol, it: opts.max_iterations };
        }
        dual = dual.max(self.dual_bound(&s));
        if dual >= need {
            return RunOutcome::Infeasible { v, margin: dual, viol, it: opts.max_iterations };
        }
        RunOutcome::Stuck { v, viol, dual, it: opts.max_iterations }
    }
}

fn random_start(n: usize, rng: &mut impl Rng) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n * n).map(|_| rng.sample(StandardNormal)).collect();
    normalize_rows(&mut v, n);
    v
}

fn gram_of(v: &[f64], n: usize) -> DenseMatrix<f64> {
    let mut p = DenseMatrix::from_fn(n, n, |i, j| dot(&v[i * n..(i + 1) * n], &v[j * n..(j + 1) * n]));
    for i in 0..n {
        p[(i, i)] = 1.0;
    }
    p
}

/// Rows `sqrt(n/(n-1)) (e_i - 1/n)`, pairwise inner products `-1/(n-1)`.
fn simplex(n: usize) -> Vec<f64> {
    let c = (n as f64 / (n as f64 - 1.0)).sqrt();
    let mut v: Vec<f64> = (0..n * n).map(|k| c * (if k / n == k % n { 1.0 } else { 0.0 } - 1.0 / n as f64)).collect();
    normalize_rows(&mut v, n);
    v
}

fn guard(g: &Graph) -> Result<()> {
    if g.n() > ORACLE_LIMIT {
        return Err(Error::TooLarge { size: g.n(), limit: ORACLE_LIMIT });
    }
    Ok(())
}

struct Decision {
    result: Feasibility,
    v: Vec<f64>,
}

fn decide(g: &Graph, kappa: f64, opts: &OracleOptions, warm: Option<&[f64]>, salt: u64) -> Decision {
    let n = g.n();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let theta = -1.0 / (kappa - 1.0);
    let prob = Problem { n, edges: &edges, theta, target: theta - opts.feas_tol / 2.0 };
    let mut rng = stream_rng(opts.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15), streams::ORACLE);
    let first = warm.map(<[f64]>::to_vec).unwrap_or_else(|| random_start(n, &mut rng));
    let starts: Vec<Vec<f64>> = (0..opts.restarts).map(|_| random_start(n, &mut rng)).collect();

    let mut total = 0;
    let mut outcomes = vec![prob.run(first, opts)];
    total += outcomes[0].it();
    if matches!(outcomes[0], RunOutcome::Stuck { .. }) && !starts.is_empty() {
        let more: Vec<RunOutcome> = starts.into_par_iter().map(|v| prob.run(v, opts)).collect();
        total += more.iter().map(RunOutcome::it).sum::<usize>();
        outcomes.extend(more);
    }
    // Feasible points are self-verifying; prefer them, then certificates.
    let pick = outcomes
        .iter()
        .position(|o| matches!(o, RunOutcome::Feasible { .. }))
        .or_else(|| outcomes.iter().position(|o| matches!(o, RunOutcome::Infeasible { .. })))
        .unwrap_or(0);
    let chosen = outcomes.swap_remove(pick);
    match chosen {
        RunOutcome::Feasible { v, viol, .. } => Decision {
            result: Feasibility::Feasible { gram: gram_of(&v, n), max_violation: viol, iterations: total },
            v,
        },
        RunOutcome::Infeasible { v, margin, viol, .. } => Decision {
            result: Feasibility::Infeasible { margin, best_violation: viol, iterations: total },
            v,
        },
        RunOutcome::Stuck { v, viol, dual, .. } => Decision {
            result: Feasibility::Inconclusive { best_violation: viol, dual_bound: dual, iterations: total },
            v,
        },
    }
}

/// Decide whether unit vectors with edge inner products at most
/// `-1/(kappa-1)` exist, using default solver settings with `feas_tol = tol`.
pub fn feasibility(g: &Graph, kappa: f64, tol: f64) -> Result<Feasibility> {
    feasibility_with(g, kappa, &OracleOptions { feas_tol: tol, ..OracleOptions::default() })
}

pub fn feasibility_with(g: &Graph, kappa: f64, opts: &OracleOptions) -> Result<Feasibility> {
    guard(g)?;
    if !(kappa > 2.0) || !kappa.is_finite() {
        return Err(Error::Domain(format!("kappa must exceed 2, got {kappa}")));
    }
    if !(opts.feas_tol > 0.0) {
        return Err(Error::Parameter("feasibility tolerance must be positive".into()));
    }
    if g.edge_count() == 0 {
        return Ok(Feasibility::Feasible { gram: DenseMatrix::identity(g.n()), max_violation: f64::NEG_INFINITY, iterations: 0 });
    }
    Ok(decide(g, kappa, opts, None, 0).result)
}

/// Vector chromatic number by bisection, to bracket width `tol`.
pub fn chi_v_exact(g: &Graph, tol: f64) -> Result<OracleResult> {
    chi_v_exact_with(g, tol, &OracleOptions::default())
}

pub fn chi_v_exact_with(g: &Graph, tol: f64, opts: &OracleOptions) -> Result<OracleResult> {
    guard(g)?;
    if !(tol > 0.0) {
        return Err(Error::Parameter("bracket tolerance must be positive".into()));
    }
    let n = g.n();
    if g.edge_count() == 0 {
        // Every kappa is feasible; report 1 by convention.
        return Ok(OracleResult {
            chi_v: 1.0,
            bracket: (1.0, 1.0),
            gram: DenseMatrix::identity(n),
            max_edge_entry: f64::NEG_INFINITY,
            dual_evidence: None,
            iterations: 0,
            inconclusive: false,
        });
    }
    let mut lo = KAPPA_FLOOR;
    let mut hi = (n as f64).max(lo + tol);
    let mut iterations = 0;
    let mut salt = 1u64;
    let mut call = |kappa: f64, warm: Option<&[f64]>, iterations: &mut usize| {
        salt += 1;
        let d = decide(g, kappa, opts, warm, salt);
        *iterations += d.result.iterations();
        d
    };

    // The regular simplex is feasible at kappa = n for every graph.
    let mut warm = simplex(n);
    let mut best_gram = gram_of(&warm, n);
    if hi > n as f64 {
        let d = call(hi, Some(&warm), &mut iterations);
        let Feasibility::Feasible { gram, .. } = d.result else {
            return Err(Error::Convergence { iterations, residual: f64::NAN });
        };
        best_gram = gram;
        warm = d.v;
    }
    let mut dual_evidence = None;
    let mut inconclusive = false;

    let accept = |kappa: f64, d: Decision, lo: &mut f64, hi: &mut f64, gram: &mut DenseMatrix<f64>, dual: &mut Option<f64>| -> bool {
        match d.result {
            Feasibility::Feasible { gram: p, .. } => {
                *hi = kappa;
                *gram = p;
                true
            }
            Feasibility::Infeasible { margin, .. } => {
                *lo = kappa;
                *dual = Some(margin);
                true
            }
            Feasibility::Inconclusive { .. } => false,
        }
    };

    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let d = call(mid, Some(&warm), &mut iterations);
        warm = d.v.clone();
        if accept(mid, d, &mut lo, &mut hi, &mut best_gram, &mut dual_evidence) {
            continue;
        }
        // An undecidable pivot sits near chi_v. Step to either side of it.
        let delta = (tol / 4.0).min(0.25 * (hi - lo));
        let (a, b) = (mid - delta, mid + delta);
        let da = call(a, Some(&warm), &mut iterations);
        let ok_a = accept(a, da, &mut lo, &mut hi, &mut best_gram, &mut dual_evidence);
        let db = call(b, Some(&warm), &mut iterations);
        let ok_b = accept(b, db, &mut lo, &mut hi, &mut best_gram, &mut dual_evidence);
        if !ok_a && !ok_b {
            inconclusive = true;
            break;
        }
    }
    let max_edge_entry = g.edges().map(|(i, j)| best_gram[(i, j)]).fold(f64::NEG_INFINITY, f64::max);
    Ok(OracleResult {
        chi_v: 0.5 * (lo + hi),
        bracket: (lo, hi),
        gram: best_gram,
        max_edge_entry,
        dual_evidence,
        iterations,
        inconclusive,
    })
}
