//! One function per subcommand. Each returns a report and the exit code it
//! implies; hard failures come back as errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::Context;
use nbcolor_core::certificate::{certifiable_r, emit_certificate, optimal_r, GeneratorMetadata};
use nbcolor_core::coloring::{build_vectors_with, edge_inner_guarantee, io as vio, kappa_guarantee, verify_coloring};
use nbcolor_core::deformed::{smallest_real_eig_b, RootMethod};
use nbcolor_core::maxcut::{analytic_expected_cut, expected_cut_lb, gw_round, max_cut_exhaustive, CutBound};
use nbcolor_core::nb::{ihara_bass_check, nb_char_poly, perron, DENSE_IHARA_LIMIT};
use nbcolor_core::oracle::{chi_v_exact_with, OracleOptions};
use nbcolor_core::poly::Poly;
use nbcolor_core::rng::{stream_rng, streams};
use nbcolor_core::{
    certificate::verify_certificate, classify, Coloring, DirectedEdgeIndex, EligibilityReport, Error, Graph,
    Ineligibility, LowerBoundCertificate, ScanOptions, Walk, Weighting,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use serde::Serialize;

use crate::exit;
use crate::input::{target_of, LoadedGraph, Target, TargetInfo};
use crate::output::{opt, TextReport};

/// Report plus the exit code it implies.
#[derive(Debug)]
pub struct Outcome<R> {
    pub report: R,
    pub code: u8,
}

impl<R> Outcome<R> {
    fn ok(report: R) -> Self {
        Outcome { report, code: exit::SUCCESS }
    }
}

/// Tolerances shared by the spectral commands.
#[derive(Debug, Clone, Copy)]
pub struct Numerics {
    /// Bracket width for `r_star`.
    pub scan_tol: f64,
    pub perron_tol: f64,
}

impl Default for Numerics {
    fn default() -> Self {
        Numerics { scan_tol: 1e-8, perron_tol: 1e-12 }
    }
}

fn method_name(m: RootMethod) -> String {
    serde_json::to_value(m).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default()
}

fn d_avg(g: &Graph) -> f64 {
    2.0 * g.edge_count() as f64 / g.n().max(1) as f64
}

// ---------------------------------------------------------------- analyze

#[derive(Debug, Clone, Serialize)]
pub struct Spectral {
    pub d_avg: f64,
    pub max_degree: usize,
    pub rho: f64,
    pub perron_residual: f64,
    pub r_star: f64,
    pub r_method: String,
    pub r_bracket: f64,
    pub optimal_r: f64,
    pub lower_bound: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub source: String,
    pub n: usize,
    pub edges: usize,
    pub connected: bool,
    pub girth: Option<usize>,
    pub m_max: Option<usize>,
    pub input: EligibilityReport,
    pub target: TargetInfo,
    pub eligible: bool,
    pub violation: Option<String>,
    pub notes: Vec<String>,
    pub spectral: Option<Spectral>,
}

pub fn analyze(src: &LoadedGraph, num: Numerics) -> anyhow::Result<Outcome<AnalyzeReport>> {
    let g = &src.graph;
    let input = classify(g);
    let t = target_of(g);
    let mut notes = Vec::new();
    if t.graph.n() == 0 {
        notes.push("2-core is empty: the graph is a forest".into());
    } else if t.reduced {
        notes.push(format!(
            "spectral quantities refer to the largest 2-core component ({} of {} vertices)",
            t.graph.n(),
            g.n()
        ));
    }
    let violation = classify(&t.graph).violation();
    let spectral = match violation {
        None => Some(spectral_of(&t.graph, num)?),
        Some(_) => None,
    };
    let report = AnalyzeReport {
        source: src.source.clone(),
        n: g.n(),
        edges: g.edge_count(),
        connected: input.connected,
        girth: input.girth,
        m_max: input.m_max,
        input,
        target: t.info(),
        eligible: violation.is_none(),
        violation: violation.as_ref().map(|v| v.to_string()),
        notes,
        spectral,
    };
    let code = if violation.is_some() { exit::INELIGIBLE } else { exit::SUCCESS };
    Ok(Outcome { report, code })
}

fn spectral_of(g: &Graph, num: Numerics) -> anyhow::Result<Spectral> {
    let idx = DirectedEdgeIndex::new(g);
    let p = perron(g, &idx, num.perron_tol)?;
    let loc = smallest_real_eig_b(g, &ScanOptions { tol: num.scan_tol, ..Default::default() })?;
    let r = certifiable_r(g, optimal_r(g, loc.r_star)?)?;
    Ok(Spectral {
        d_avg: d_avg(g),
        max_degree: g.max_degree(),
        rho: p.rho,
        perron_residual: p.residual,
        r_star: loc.r_star,
        r_method: method_name(loc.method),
        r_bracket: loc.bracket,
        optimal_r: r,
        lower_bound: nbcolor_core::certificate::lower_bound(g, r)?,
    })
}

impl TextReport for AnalyzeReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph          {} (n = {}, |E| = {})", self.source, self.n, self.edges);
        let _ = writeln!(s, "connected      {}", self.connected);
        let _ = writeln!(s, "girth          {}", opt(&self.girth));
        let _ = writeln!(s, "m_max          {}", opt(&self.m_max));
        let _ = writeln!(s, "bipartite      {}", self.input.is_bipartite);
        let _ = writeln!(s, "2-core         {} vertices in {} component(s)", self.input.two_core_size, self.input.two_core_components);
        for n in &self.notes {
            let _ = writeln!(s, "note           {n}");
        }
        match (&self.violation, &self.spectral) {
            (Some(v), _) => {
                let _ = writeln!(s, "eligible       no: {v}");
            }
            (None, Some(sp)) => {
                let _ = writeln!(s, "eligible       yes");
                let _ = writeln!(s, "d_avg          {:.6}", sp.d_avg);
                let _ = writeln!(s, "rho            {:.9}", sp.rho);
                let _ = writeln!(s, "r_star         {:.9} ({})", sp.r_star, sp.r_method);
                let _ = writeln!(s, "optimal r      {:.9}", sp.optimal_r);
                let _ = writeln!(s, "lower bound    {:.6}", sp.lower_bound);
            }
            (None, None) => {}
        }
        s
    }
}

// ---------------------------------------------------------------- certify

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RChoice {
    Auto,
    Value(f64),
}

impl std::str::FromStr for RChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "auto" {
            return Ok(RChoice::Auto);
        }
        s.parse::<f64>().map(RChoice::Value).map_err(|_| format!("expected `auto` or a number, got {s:?}"))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CertifyReport {
    pub source: String,
    pub target: TargetInfo,
    pub r_star: Option<f64>,
    pub r_method: String,
    pub r: f64,
    pub claimed_bound: f64,
    pub emitted: Option<String>,
    pub certificate: LowerBoundCertificate,
}

fn require_eligible(g: &Graph) -> anyhow::Result<()> {
    match classify(g).violation() {
        Some(v) => Err(Error::Ineligible(v).into()),
        None => Ok(()),
    }
}

/// Certificate for the target of `g`, with `r` located automatically or
/// supplied by the user.
pub fn certificate_for(t: &Target, r: RChoice, num: Numerics, seed: Option<u64>) -> anyhow::Result<LowerBoundCertificate> {
    require_eligible(&t.graph)?;
    let mut meta = GeneratorMetadata::new();
    meta.seed = seed;
    let r = match r {
        RChoice::Auto => {
            let loc = smallest_real_eig_b(&t.graph, &ScanOptions { tol: num.scan_tol, ..Default::default() })?;
            meta.r_star = Some(loc.r_star);
            meta.r_method = Some(method_name(loc.method));
            meta.grid_step = Some(loc.grid_used);
            certifiable_r(&t.graph, optimal_r(&t.graph, loc.r_star)?)?
        }
        RChoice::Value(r) => {
            meta.r_method = Some("user".into());
            r
        }
    };
    Ok(emit_certificate(&t.graph, r, Weighting::Uniform, meta)?)
}

pub fn certify(src: &LoadedGraph, r: RChoice, emit: Option<&Path>, num: Numerics) -> anyhow::Result<Outcome<CertifyReport>> {
    let t = target_of(&src.graph);
    let cert = certificate_for(&t, r, num, None)?;
    if let Some(path) = emit {
        std::fs::write(path, cert.to_json()?).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(Outcome::ok(CertifyReport {
        source: src.source.clone(),
        target: t.info(),
        r_star: cert.generator_metadata.r_star,
        r_method: cert.generator_metadata.r_method.clone().unwrap_or_default(),
        r: cert.r,
        claimed_bound: cert.claimed_bound,
        emitted: emit.map(|p| p.display().to_string()),
        certificate: cert,
    }))
}

impl TextReport for CertifyReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph          {} (target n = {}, |E| = {})", self.source, self.target.n, self.target.edges);
        if let Some(rs) = self.r_star {
            let _ = writeln!(s, "r_star         {rs:.9} ({})", self.r_method);
        }
        let _ = writeln!(s, "r              {:.9}", self.r);
        let _ = writeln!(s, "lower bound    {:.6}", self.claimed_bound);
        match &self.emitted {
            Some(p) => {
                let _ = writeln!(s, "certificate    {p}");
            }
            None => {
                let _ = writeln!(s, "certificate    (not written; pass --emit PATH)");
            }
        }
        s
    }
}

// ---------------------------------------------------------------- verify

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub source: String,
    /// `input` or `2-core component`.
    pub checked_against: String,
    pub valid: bool,
    pub failures: Vec<String>,
    pub r: f64,
    pub claimed_bound: f64,
    pub recomputed_bound: Option<f64>,
    pub lambda_min: Option<f64>,
}

pub fn verify(src: &LoadedGraph, cert_path: &Path) -> anyhow::Result<Outcome<VerifyReport>> {
    let text = std::fs::read_to_string(cert_path).with_context(|| format!("reading {}", cert_path.display()))?;
    let cert = LowerBoundCertificate::from_json(&text)?;
    let (g, against) = if cert.graph_digest == src.graph.digest() {
        (src.graph.clone(), "input")
    } else {
        (target_of(&src.graph).graph, "2-core component")
    };
    let v = verify_certificate(&g, &cert)?;
    let code = if v.valid { exit::SUCCESS } else { exit::FAILURE };
    Ok(Outcome {
        report: VerifyReport {
            source: src.source.clone(),
            checked_against: against.into(),
            valid: v.valid,
            failures: v.failures,
            r: cert.r,
            claimed_bound: cert.claimed_bound,
            recomputed_bound: v.recomputed_bound,
            lambda_min: v.lambda_min,
        },
        code,
    })
}

impl TextReport for VerifyReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let verdict = if self.valid { "ACCEPT" } else { "REJECT" };
        let _ = writeln!(s, "{verdict} certificate for {} ({})", self.source, self.checked_against);
        let _ = writeln!(s, "r              {:.9}", self.r);
        let _ = writeln!(s, "claimed bound  {:.9}", self.claimed_bound);
        if let Some(b) = self.recomputed_bound {
            let _ = writeln!(s, "recomputed     {b:.9}");
        }
        if let Some(l) = self.lambda_min {
            let _ = writeln!(s, "lambda_min     {l:e}");
        }
        for f in &self.failures {
            let _ = writeln!(s, "failure        {f}");
        }
        s
    }
}

// ---------------------------------------------------------------- color / maxcut

#[derive(Debug, Clone, Serialize)]
pub struct CutSummary {
    pub trials: usize,
    pub seed: u64,
    pub mean_cut: f64,
    pub std_error: f64,
    pub best_cut: usize,
    pub partition: String,
    /// Exact expectation over the rounding direction.
    pub analytic_expected: f64,
    /// Guaranteed expectation with reference values.
    pub bound: Option<CutBound>,
    /// Maximum cut by enumeration, for small graphs.
    pub exhaustive: Option<usize>,
}

fn cut_summary(g: &Graph, vc: &Coloring, trials: usize, seed: u64, bound: Option<CutBound>) -> anyhow::Result<CutSummary> {
    let r = gw_round(g, vc, trials, seed)?;
    Ok(CutSummary {
        trials,
        seed,
        mean_cut: r.mean_cut,
        std_error: r.std_error,
        best_cut: r.best_cut,
        partition: r.partition.iter().map(|&b| if b { '1' } else { '0' }).collect(),
        analytic_expected: analytic_expected_cut(g, vc),
        bound,
        exhaustive: (g.n() <= 24).then(|| max_cut_exhaustive(g)).transpose()?,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ColorReport {
    pub source: String,
    pub n: usize,
    pub girth: Option<usize>,
    pub m: usize,
    pub m_max: Option<usize>,
    pub rho: f64,
    pub kappa: f64,
    /// The value the walk construction guarantees for this `rho` and `m`.
    pub guarantee: f64,
    pub max_edge_inner: Option<f64>,
    pub edge_inner_guarantee: f64,
    pub valid: bool,
    pub max_norm_error: f64,
    pub gram_psd: Option<bool>,
    pub dim: usize,
    pub files: Vec<String>,
    pub maxcut: Option<CutSummary>,
}

/// Radius to use: `requested` or `m_max`, checked against the girth.
fn choose_m(rep: &EligibilityReport, requested: Option<usize>) -> anyhow::Result<usize> {
    let m = requested.or(rep.m_max).unwrap_or(0);
    if m == 1 && requested == Some(1) {
        anyhow::bail!(Error::Parameter("m = 1 gives a vacuous construction; use m >= 2".into()));
    }
    if m < 2 || rep.m_max.is_some_and(|mm| m > mm) {
        return Err(Error::Ineligible(Ineligibility::Girth { girth: rep.girth, m: m.max(2), m_max: rep.m_max }).into());
    }
    Ok(m)
}

fn walk_coloring<'a>(g: &'a Graph, m: Option<usize>, num: Numerics) -> anyhow::Result<(Walk<'a>, Coloring, usize, EligibilityReport)> {
    let rep = classify(g);
    if let Some(v) = rep.violation() {
        return Err(Error::Ineligible(v).into());
    }
    let m = choose_m(&rep, m)?;
    let wm = Walk::new(g, num.perron_tol)?;
    let vc = build_vectors_with(&wm, m)?;
    Ok((wm, vc, m, rep))
}

#[derive(Debug, Clone, Default)]
pub struct ColorOptions {
    pub m: Option<usize>,
    pub maxcut_trials: Option<usize>,
    pub out_dir: Option<PathBuf>,
    pub seed: u64,
}

pub fn color(src: &LoadedGraph, o: &ColorOptions, num: Numerics) -> anyhow::Result<Outcome<ColorReport>> {
    let g = &src.graph;
    let (wm, vc, m, rep) = walk_coloring(g, o.m, num)?;
    let rho = wm.perron().rho;
    let check = verify_coloring(g, &vc, vc.kappa);
    let mut files = Vec::new();
    if let Some(dir) = &o.out_dir {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (name, body) in [("gram.mtx", vio::gram_coordinate(&vc)), ("vectors.txt", vio::dense_vectors(&vc))] {
            let p = dir.join(name);
            std::fs::write(&p, body).with_context(|| format!("writing {}", p.display()))?;
            files.push(p.display().to_string());
        }
    }
    let maxcut = match o.maxcut_trials {
        Some(t) => Some(cut_summary(g, &vc, t, o.seed, Some(expected_cut_lb(g, m, rho)?))?),
        None => None,
    };
    let report = ColorReport {
        source: src.source.clone(),
        n: g.n(),
        girth: rep.girth,
        m,
        m_max: rep.m_max,
        rho,
        kappa: vc.kappa,
        guarantee: kappa_guarantee(rho, m),
        max_edge_inner: check.worst_edge.map(|w| w.2),
        edge_inner_guarantee: edge_inner_guarantee(rho, m),
        valid: check.valid,
        max_norm_error: check.max_norm_error,
        gram_psd: check.gram_psd,
        dim: vc.dim,
        files,
        maxcut,
    };
    let code = if check.valid { exit::SUCCESS } else { exit::FAILURE };
    Ok(Outcome { report, code })
}

fn cut_text(s: &mut String, c: &CutSummary) {
    let _ = writeln!(s, "rounding       {} trials, seed {}", c.trials, c.seed);
    let _ = writeln!(s, "mean cut       {:.4} +- {:.4} (analytic {:.4})", c.mean_cut, c.std_error, c.analytic_expected);
    let _ = writeln!(s, "best cut       {}", c.best_cut);
    if let Some(b) = &c.bound {
        let _ = writeln!(s, "cut guarantee  {:.4} (ER context {:.4}, sparse-random reference {:.4})", b.bound, b.er_context, b.dms_reference);
    }
    if let Some(x) = c.exhaustive {
        let _ = writeln!(s, "maximum cut    {x} (exhaustive)");
    }
}

impl TextReport for ColorReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph          {} (n = {}, girth {})", self.source, self.n, opt(&self.girth));
        let _ = writeln!(s, "m              {} (m_max {})", self.m, opt(&self.m_max));
        let _ = writeln!(s, "rho            {:.9}", self.rho);
        let _ = writeln!(s, "kappa          {:.9}", self.kappa);
        let _ = writeln!(s, "guarantee      {:.9}", self.guarantee);
        let _ = writeln!(s, "max edge <v,w> {} (guaranteed <= {:.9})", opt(&self.max_edge_inner.map(|x| format!("{x:.9}"))), self.edge_inner_guarantee);
        let _ = writeln!(s, "verified       {} (norm error {:e}, gram psd {})", self.valid, self.max_norm_error, opt(&self.gram_psd));
        for f in &self.files {
            let _ = writeln!(s, "wrote          {f}");
        }
        if let Some(c) = &self.maxcut {
            cut_text(&mut s, c);
        }
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MaxcutReport {
    pub source: String,
    pub n: usize,
    pub edges: usize,
    /// `constructed` or the vector file path.
    pub vectors: String,
    pub kappa: f64,
    pub m: Option<usize>,
    pub cut: CutSummary,
}

pub fn maxcut(
    src: &LoadedGraph,
    trials: usize,
    m: Option<usize>,
    vectors: Option<&Path>,
    seed: u64,
    num: Numerics,
) -> anyhow::Result<Outcome<MaxcutReport>> {
    let g = &src.graph;
    let (vc, m, bound, origin) = match vectors {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let vc = vio::read_dense_vectors(g, &text)?;
            // The guarantee needs the walk radius and rho; only offer it when asked.
            let bound = match m {
                Some(m) => {
                    let wm = Walk::new(g, num.perron_tol)?;
                    Some(expected_cut_lb(g, m, wm.perron().rho)?)
                }
                None => None,
            };
            (vc, m, bound, path.display().to_string())
        }
        None => {
            let (wm, vc, m, _) = walk_coloring(g, m, num)?;
            let b = expected_cut_lb(g, m, wm.perron().rho)?;
            (vc, Some(m), Some(b), "constructed".to_string())
        }
    };
    let cut = cut_summary(g, &vc, trials, seed, bound)?;
    Ok(Outcome::ok(MaxcutReport { source: src.source.clone(), n: g.n(), edges: g.edge_count(), vectors: origin, kappa: vc.kappa, m, cut }))
}

impl TextReport for MaxcutReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph          {} (n = {}, |E| = {})", self.source, self.n, self.edges);
        let _ = writeln!(s, "vectors        {} (kappa {:.6})", self.vectors, self.kappa);
        cut_text(&mut s, &self.cut);
        s
    }
}

// ---------------------------------------------------------------- oracle

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub source: String,
    pub n: usize,
    pub edges: usize,
    pub tol: f64,
    pub chi_v: f64,
    pub bracket: (f64, f64),
    pub max_edge_entry: f64,
    pub dual_evidence: Option<f64>,
    pub iterations: usize,
    pub inconclusive: bool,
    pub gram_file: Option<String>,
}

pub fn oracle(src: &LoadedGraph, tol: f64, seed: u64, gram_out: Option<&Path>) -> anyhow::Result<Outcome<OracleReport>> {
    let g = &src.graph;
    let opts = OracleOptions { seed, ..Default::default() };
    let res = chi_v_exact_with(g, tol, &opts)?;
    if let Some(p) = gram_out {
        let mut body = format!("%%MatrixMarket matrix array real symmetric\n{0} {0}\n", res.gram.rows());
        for j in 0..res.gram.cols() {
            for i in j..res.gram.rows() {
                let _ = writeln!(body, "{:?}", res.gram[(i, j)]);
            }
        }
        std::fs::write(p, body).with_context(|| format!("writing {}", p.display()))?;
    }
    let code = if res.inconclusive { exit::NON_CONVERGENCE } else { exit::SUCCESS };
    Ok(Outcome {
        report: OracleReport {
            source: src.source.clone(),
            n: g.n(),
            edges: g.edge_count(),
            tol,
            chi_v: res.chi_v,
            bracket: res.bracket,
            max_edge_entry: res.max_edge_entry,
            dual_evidence: res.dual_evidence,
            iterations: res.iterations,
            inconclusive: res.inconclusive,
            gram_file: gram_out.map(|p| p.display().to_string()),
        },
        code,
    })
}

impl TextReport for OracleReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph          {} (n = {}, |E| = {})", self.source, self.n, self.edges);
        let _ = writeln!(s, "chi_v          {:.6}", self.chi_v);
        let _ = writeln!(s, "bracket        [{:.9}, {:.9}]", self.bracket.0, self.bracket.1);
        let _ = writeln!(s, "max edge entry {:.9}", self.max_edge_entry);
        let _ = writeln!(s, "dual evidence  {}", opt(&self.dual_evidence.map(|x| format!("{x:e}"))));
        if self.inconclusive {
            let _ = writeln!(s, "warning        bracket wider than requested: a pivot could not be decided");
        }
        s
    }
}

// ---------------------------------------------------------------- ihara-check

/// Residual threshold for the determinant identity.
pub const IHARA_THRESHOLD: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct IharaPoint {
    pub z: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExactPoint {
    pub z: i64,
    pub det_nb: String,
    pub laplacian_side: String,
    pub char_poly: String,
    pub agree: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct IharaCheckReport {
    pub source: String,
    pub n: usize,
    pub edges: usize,
    pub samples: Vec<IharaPoint>,
    pub max_residual: f64,
    pub threshold: f64,
    pub exact: Option<ExactPoint>,
    pub pass: bool,
}

/// Arc count up to which the exact rational check runs.
const EXACT_ARC_LIMIT: usize = 64;

/// `count` seeded points in `(-5, 5)` away from the poles of the identity.
pub fn ihara_points(count: usize, seed: u64) -> Vec<f64> {
    let mut rng = stream_rng(seed, streams::IHARA_POINTS);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let z: f64 = rng.random_range(-5.0..5.0);
        if (z.abs() - 1.0).abs() > 1e-3 {
            out.push(z);
        }
    }
    out
}

pub fn ihara_check(src: &LoadedGraph, samples: usize, seed: u64) -> anyhow::Result<Outcome<IharaCheckReport>> {
    let g = &src.graph;
    if g.n() > DENSE_IHARA_LIMIT {
        return Err(Error::TooLarge { size: g.n(), limit: DENSE_IHARA_LIMIT }.into());
    }
    let rep = ihara_bass_check(g, &ihara_points(samples, seed))?;
    let exact = if g.n() <= 12 && 2 * g.edge_count() <= EXACT_ARC_LIMIT {
        let three = BigRational::from_integer(BigInt::from(3));
        let e = ihara_bass_check(g, std::slice::from_ref(&three))?;
        let s = &e.samples[0];
        let cp = Poly::from_integers(&nb_char_poly(g)?).eval(&three);
        Some(ExactPoint {
            z: 3,
            det_nb: s.lhs.to_string(),
            laplacian_side: s.rhs.to_string(),
            char_poly: cp.to_string(),
            agree: s.lhs == s.rhs && s.lhs == cp,
        })
    } else {
        None
    };
    let pass = rep.max_residual <= IHARA_THRESHOLD && exact.as_ref().is_none_or(|e| e.agree);
    let report = IharaCheckReport {
        source: src.source.clone(),
        n: g.n(),
        edges: g.edge_count(),
        samples: rep.samples.iter().map(|s| IharaPoint { z: s.z, lhs: s.lhs, rhs: s.rhs, residual: s.residual }).collect(),
        max_residual: rep.max_residual,
        threshold: IHARA_THRESHOLD,
        exact,
        pass,
    };
    let code = if pass { exit::SUCCESS } else { exit::NON_CONVERGENCE };
    Ok(Outcome { report, code })
}

impl TextReport for IharaCheckReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph          {} (n = {}, |E| = {})", self.source, self.n, self.edges);
        let _ = writeln!(s, "samples        {}", self.samples.len());
        let _ = writeln!(s, "max residual   {:e} (threshold {:e})", self.max_residual, self.threshold);
        if let Some(e) = &self.exact {
            let _ = writeln!(s, "exact z = {}    det(zI - B) = {}, Laplacian side = {}, agree {}", e.z, e.det_nb, e.laplacian_side, e.agree);
        }
        let _ = writeln!(s, "{}", if self.pass { "PASS" } else { "FAIL" });
        s
    }
}
