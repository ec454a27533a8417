//! Vector-chromatic lower bounds from a PSD deformed Laplacian, and
//! certificates that an independent party can re-check with one PSD test
//! plus arithmetic.

use serde::{Deserialize, Serialize};

use crate::deformed::{default_psd_tol, psd_check, real_root_scan, EigMode, RootScan};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{cholesky_pd, DenseMatrix};
use crate::nb::{perron, DirectedEdgeIndex};
use crate::rng::RNG_ALGORITHM;
use crate::scalar::Real;

pub const SCHEMA_VERSION: u32 = 1;
/// Relative tolerance on recomputed bounds.
pub const ARITHMETIC_TOL: f64 = 1e-12;
/// Allowed deviation of `Tr W` from one.
pub const TRACE_TOL: f64 = 1e-10;
/// Shift used when factoring W to confirm `W >= 0`.
pub const WEIGHT_PSD_SHIFT: f64 = 1e-10;

/// `|r d| / (r^2 + d - 1) + 1`.
pub fn bound_formula<T: Real>(r: T, d_avg: T) -> T {
    (r * d_avg).abs() / (r * r + d_avg - T::one()) + T::one()
}

/// `-r <W, A> / (r^2 + <W, D - I>) + 1`.
pub fn weighted_bound_formula<T: Real>(r: T, w_a: T, w_dm1: T) -> T {
    -r * w_a / (r * r + w_dm1) + T::one()
}

fn require_psd<T: Real>(g: &Graph, r: T) -> Result<()> {
    let c = psd_check(g, r, None, EigMode::Auto)?;
    if c.psd {
        Ok(())
    } else {
        Err(Error::InvalidPremise(format!(
            "L({r}) is not PSD (lambda_min = {:e}, tol {:e}); r is not a certified lower bound on the real spectrum of B",
            c.lambda_min.as_f64(),
            c.tol.as_f64()
        )))
    }
}

fn d_avg<T: Real>(g: &Graph) -> T {
    T::lit(2.0) * T::from_count(g.edge_count()) / T::from_count(g.n().max(1))
}

/// Lower bound on the vector chromatic number from a negative `r` at which
/// `L(r)` is PSD, using uniform weights.
pub fn lower_bound<T: Real>(g: &Graph, r: T) -> Result<T> {
    let d = d_avg::<T>(g);
    if !(r < T::zero()) {
        return Err(Error::Domain(format!("r must be negative, got {r}")));
    }
    if !(d > T::one()) {
        return Err(Error::Degenerate(format!("average degree {d} must exceed 1")));
    }
    require_psd(g, r)?;
    Ok(bound_formula(r, d))
}

/// `min(r_star, -sqrt(d_avg - 1))`.
pub fn optimal_r<T: Real>(g: &Graph, r_star: T) -> Result<T> {
    let d = d_avg::<T>(g);
    if !(d > T::one()) {
        return Err(Error::Degenerate(format!("average degree {d} must exceed 1")));
    }
    Ok(r_star.min(-(d - T::one()).sqrt()))
}

/// The largest of `r, r - h, r - 2h, r - 4h, ...` (with `h = 1e-9 (1 + |r|)`)
/// at which `L` passes the PSD premise.
///
/// At a located crossing `lambda_min(L(r))` is within the scan tolerance of
/// zero, and on the Lanczos path its sign may not be resolved to within the
/// certificate tolerance. Moving left only increases `lambda_min` there and
/// lowers the bound by `O(h)`.
pub fn certifiable_r(g: &Graph, r: f64) -> Result<f64> {
    if !(r < 0.0) {
        return Err(Error::Domain(format!("r must be negative, got {r}")));
    }
    let floor = -(1.0 + g.max_degree() as f64);
    let mut h = 1e-9 * (1.0 + r.abs());
    let mut cand = r;
    loop {
        if psd_check(g, cand, None, EigMode::Auto)?.psd {
            return Ok(cand);
        }
        if cand <= floor {
            return require_psd(g, cand).map(|_| cand);
        }
        cand = (r - h).max(floor);
        h *= 2.0;
    }
}

/// Symmetric weight matrix on the vertices, stored by its upper triangle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Weighting {
    /// `W = J / n`.
    Uniform,
    /// Entries `(i, j, w)` with `i <= j`; absent entries are zero.
    Explicit { n: usize, entries: Vec<(usize, usize, f64)> },
}

/// Inner products of a weighting with the graph matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightStats {
    pub trace: f64,
    /// `<W, A>`
    pub w_a: f64,
    /// `<W, D - I>`
    pub w_dm1: f64,
}

impl Weighting {
    pub fn from_dense(w: &DenseMatrix<f64>) -> Self {
        let n = w.rows();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in i..n {
                if w[(i, j)] != 0.0 {
                    entries.push((i, j, w[(i, j)]));
                }
            }
        }
        Weighting::Explicit { n, entries }
    }

    pub fn to_dense(&self, n: usize) -> DenseMatrix<f64> {
        match self {
            Weighting::Uniform => DenseMatrix::filled(n, n, 1.0 / n as f64),
            Weighting::Explicit { entries, .. } => {
                let mut m = DenseMatrix::filled(n, n, 0.0);
                for &(i, j, w) in entries {
                    m[(i, j)] = w;
                    m[(j, i)] = w;
                }
                m
            }
        }
    }

    pub fn stats(&self, g: &Graph) -> WeightStats {
        match self {
            Weighting::Uniform => {
                let d = d_avg::<f64>(g);
                WeightStats { trace: 1.0, w_a: d, w_dm1: d - 1.0 }
            }
            Weighting::Explicit { entries, .. } => {
                let mut s = WeightStats { trace: 0.0, w_a: 0.0, w_dm1: 0.0 };
                for &(i, j, w) in entries {
                    if i == j {
                        s.trace += w;
                        s.w_dm1 += w * (g.degree(i) as f64 - 1.0);
                    } else if g.has_edge(i, j) {
                        s.w_a += 2.0 * w;
                    }
                }
                s
            }
        }
    }

    /// Check `W >= 0`, `Tr W = 1` and nonnegative edge entries, naming the
    /// first violated constraint.
    pub fn validate(&self, g: &Graph) -> Result<WeightStats> {
        let stats = self.stats(g);
        let Weighting::Explicit { n, entries } = self else {
            return Ok(stats);
        };
        if *n != g.n() {
            return Err(Error::Dimension { expected: g.n(), got: *n });
        }
        if let Some(&(i, j, _)) = entries.iter().find(|&&(i, j, _)| i > j || j >= *n) {
            return Err(Error::Constraint {
                constraint: format!("entry ({i}, {j}) must satisfy i <= j < n"),
                residual: f64::NAN,
            });
        }
        if (stats.trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::Constraint { constraint: "Tr W = 1".into(), residual: stats.trace - 1.0 });
        }
        let worst_edge = entries
            .iter()
            .filter(|&&(i, j, _)| i != j && g.has_edge(i, j))
            .map(|&(_, _, w)| w)
            .fold(0.0f64, f64::min);
        if worst_edge < 0.0 {
            return Err(Error::Constraint { constraint: "W_ij >= 0 on edges".into(), residual: worst_edge });
        }
        if let Err(b) = cholesky_pd(&self.to_dense(*n), WEIGHT_PSD_SHIFT) {
            return Err(Error::Constraint { constraint: "W is PSD".into(), residual: b.pivot });
        }
        Ok(stats)
    }
}

/// Weighted bound at a fixed `r` with `L(r)` PSD.
pub fn weighted_bound_at(g: &Graph, w: &Weighting, r: f64) -> Result<f64> {
    let s = w.validate(g)?;
    require_psd(g, r)?;
    Ok(weighted_bound_formula(r, s.w_a, s.w_dm1))
}

/// Weighted bound with `r = min(r_star, -sqrt(<W, D - I>))`. Returns the
/// bound and the `r` used.
pub fn weighted_lower_bound(g: &Graph, w: &Weighting, r_star: f64) -> Result<(f64, f64)> {
    let s = w.validate(g)?;
    let r = r_star.min(-s.w_dm1.max(0.0).sqrt());
    require_psd(g, r)?;
    Ok((weighted_bound_formula(r, s.w_a, s.w_dm1), r))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Shift added to `L(r)` before the PSD factorization.
    pub psd_shift: f64,
    /// Relative tolerance on the recomputed bound.
    pub arithmetic: f64,
    pub trace: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct GeneratorMetadata {
    pub generator: String,
    pub rng: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_star: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_method: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_step: Option<f64>,
    /// Set when `r` equals the located `r_star` rather than lying strictly
    /// below it.
    #[serde(default)]
    pub boundary_case: bool,
}

impl GeneratorMetadata {
    pub fn new() -> Self {
        GeneratorMetadata {
            generator: concat!("nbcolor ", env!("CARGO_PKG_VERSION")).into(),
            rng: RNG_ALGORITHM.into(),
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowerBoundCertificate {
    pub schema_version: u32,
    pub graph_digest: String,
    pub r: f64,
    pub weighting: Weighting,
    pub claimed_bound: f64,
    pub tolerances: Tolerances,
    pub generator_metadata: GeneratorMetadata,
}

impl LowerBoundCertificate {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Build a certificate for `g` at `r`; every premise is checked first.
pub fn emit_certificate(
    g: &Graph,
    r: f64,
    weighting: Weighting,
    mut meta: GeneratorMetadata,
) -> Result<LowerBoundCertificate> {
    let s = weighting.validate(g)?;
    if !(r < 0.0) {
        return Err(Error::Domain(format!("r must be negative, got {r}")));
    }
    require_psd(g, r)?;
    if meta.r_star.is_some_and(|rs| r > rs) {
        return Err(Error::Parameter(format!("r = {r} exceeds the recorded r_star")));
    }
    meta.boundary_case = meta.r_star == Some(r);
    Ok(LowerBoundCertificate {
        schema_version: SCHEMA_VERSION,
        graph_digest: g.digest(),
        r,
        claimed_bound: weighted_bound_formula(r, s.w_a, s.w_dm1),
        weighting,
        tolerances: Tolerances { psd_shift: default_psd_tol(g, r), arithmetic: ARITHMETIC_TOL, trace: TRACE_TOL },
        generator_metadata: meta,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub valid: bool,
    /// Human readable reasons for rejection; empty when valid.
    pub failures: Vec<String>,
    pub lambda_min: Option<f64>,
    pub recomputed_bound: Option<f64>,
}

/// Re-check a certificate against `g`. A digest mismatch is an error; any
/// other failure yields `valid = false` with evidence.
///
/// Recorded tolerances are honoured only up to the verifier's own defaults,
/// so loosening them in the file cannot make a certificate pass.
pub fn verify_certificate(g: &Graph, cert: &LowerBoundCertificate) -> Result<Verification> {
    if cert.graph_digest != g.digest() {
        return Err(Error::WrongGraph);
    }
    let mut failures = Vec::new();
    if cert.schema_version != SCHEMA_VERSION {
        failures.push(format!("unsupported schema version {}", cert.schema_version));
    }
    let r = cert.r;
    let shift_cap = default_psd_tol(g, r);
    let t = &cert.tolerances;
    if !(t.psd_shift >= 0.0 && t.psd_shift <= shift_cap) {
        failures.push(format!("psd_shift {:e} exceeds the policy limit {:e}", t.psd_shift, shift_cap));
    }
    if !(t.arithmetic >= 0.0 && t.arithmetic <= ARITHMETIC_TOL) {
        failures.push(format!("arithmetic tolerance {:e} exceeds {:e}", t.arithmetic, ARITHMETIC_TOL));
    }
    if !(t.trace >= 0.0 && t.trace <= TRACE_TOL) {
        failures.push(format!("trace tolerance {:e} exceeds {:e}", t.trace, TRACE_TOL));
    }
    if !(r < 0.0) {
        failures.push(format!("r = {r} is not negative"));
    }
    failures.extend(metadata_failures(&cert.generator_metadata, r));
    let stats = match cert.weighting.validate(g) {
        Ok(s) => Some(s),
        Err(e) => {
            failures.push(format!("weighting: {e}"));
            None
        }
    };
    let mut lambda_min = None;
    if r.is_finite() {
        let shift = t.psd_shift.clamp(0.0, shift_cap);
        let c = psd_check(g, r, Some(shift), EigMode::Auto)?;
        lambda_min = Some(c.lambda_min);
        if !c.psd {
            failures.push(format!("L(r) is not PSD: lambda_min = {:e}", c.lambda_min));
        }
    }
    let recomputed = stats.map(|s| weighted_bound_formula(r, s.w_a, s.w_dm1));
    if let Some(b) = recomputed {
        let tol = t.arithmetic.min(ARITHMETIC_TOL) * b.abs().max(1.0);
        if !((b - cert.claimed_bound).abs() <= tol) {
            failures.push(format!("claimed bound {} does not match recomputed {}", cert.claimed_bound, b));
        }
    }
    Ok(Verification { valid: failures.is_empty(), failures, lambda_min, recomputed_bound: recomputed })
}

/// Internal consistency of the provenance block. It cannot prove where a
/// certificate came from, but edits that contradict `r` are caught.
fn metadata_failures(m: &GeneratorMetadata, r: f64) -> Vec<String> {
    let mut out = Vec::new();
    if m.rng != RNG_ALGORITHM {
        out.push(format!("unknown rng identifier {:?}", m.rng));
    }
    if !m.generator.starts_with("nbcolor ") {
        out.push(format!("unknown generator {:?}", m.generator));
    }
    if let Some(rs) = m.r_star {
        if !(r <= rs) {
            out.push(format!("r = {r} lies above the recorded r_star = {rs}"));
        }
        if m.boundary_case != (r == rs) {
            out.push("boundary_case flag contradicts r and r_star".into());
        }
    } else if m.boundary_case {
        out.push("boundary_case set without a recorded r_star".into());
    }
    if let Some(method) = &m.r_method {
        if !matches!(method.as_str(), "baseline_minus_one" | "bisection_crossing" | "user") {
            out.push(format!("unknown r_method {method:?}"));
        }
    }
    if let Some(h) = m.grid_step {
        if !(h > 0.0) {
            out.push(format!("grid_step {h} is not positive"));
        }
    }
    out
}

/// Premise status of the inequality `<A, P> >= -2 Tr P sqrt(<D - I, P>)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Premise {
    /// The scan saw no real roots besides `+-1` and `rho`, and no
    /// unresolved near-zeros.
    Established,
    NotEstablished { extra_roots: Vec<f64>, suspected: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RamanujanCheck {
    pub holds: bool,
    /// `<A, P> + 2 Tr P sqrt(<D - I, P>)`
    pub slack: f64,
    pub premise: Premise,
}

/// Evaluate the Ramanujan-type inequality for a PSD matrix `P`, after
/// checking that B has no real eigenvalues other than `+-1` and `rho`.
pub fn ramanujan_inequality_check(g: &Graph, p: &DenseMatrix<f64>) -> Result<RamanujanCheck> {
    let n = g.n();
    if p.rows() != n || p.cols() != n {
        return Err(Error::Dimension { expected: n, got: p.rows() });
    }
    let trace: f64 = (0..n).map(|i| p[(i, i)]).sum();
    if let Err(b) = cholesky_pd(p, 1e-10 * (1.0 + trace.abs())) {
        return Err(Error::Constraint { constraint: "P is PSD".into(), residual: b.pivot });
    }
    let mut pa = 0.0;
    let mut pd = 0.0;
    for i in 0..n {
        pd += (g.degree(i) as f64 - 1.0) * p[(i, i)];
        for &j in g.neighbors(i) {
            pa += p[(i, j)];
        }
    }
    let slack = pa + 2.0 * trace * pd.max(0.0).sqrt();
    let premise = ramanujan_premise(g)?;
    Ok(RamanujanCheck { holds: slack >= -1e-9 * (1.0 + pa.abs()), slack, premise })
}

fn ramanujan_premise(g: &Graph) -> Result<Premise> {
    let idx = DirectedEdgeIndex::new(g);
    let rho = match perron::<f64>(g, &idx, 1e-12) {
        Ok(p) => p.rho,
        Err(_) => {
            return Ok(Premise::NotEstablished { extra_roots: Vec::new(), suspected: Vec::new() });
        }
    };
    let dmax = g.max_degree() as f64;
    let scan: RootScan<f64> =
        real_root_scan(g, (-(1.0 + dmax), dmax), crate::deformed::default_grid_step(g), EigMode::Auto)?;
    let allowed = [-1.0, 1.0, rho];
    let extra: Vec<f64> = scan
        .roots
        .iter()
        .map(|r| r.z)
        .filter(|z| !allowed.iter().any(|a| (z - a).abs() < 1e-6))
        .collect();
    let suspected: Vec<f64> = scan.suspected.iter().map(|s| s.z).collect();
    Ok(if extra.is_empty() && suspected.is_empty() {
        Premise::Established
    } else {
        Premise::NotEstablished { extra_roots: extra, suspected }
    })
}
