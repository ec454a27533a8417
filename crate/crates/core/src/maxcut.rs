//! Hyperplane rounding of vector colorings into cuts.

use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::VectorColoring;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{stream_rng, streams, RNG_ALGORITHM};

/// Best and average cut over independent Gaussian roundings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutResult {
    /// Best partition, as `0`/`1` per vertex.
    #[serde(with = "bits")]
    pub partition: Vec<bool>,
    /// Edges cut by `partition`.
    pub cut_edges: usize,
    pub trials: usize,
    pub mean_cut: f64,
    pub best_cut: usize,
    pub seed: u64,
    /// Standard error of `mean_cut` from the trial variance.
    pub std_error: f64,
    /// Trials redrawn because some projection was exactly zero.
    pub resamples: usize,
    pub rng: String,
}

mod bits {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[bool], s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<bool>, D::Error> {
        let s = String::deserialize(d)?;
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(serde::de::Error::custom(format!("bad partition digit {other:?}"))),
            })
            .collect()
    }
}

/// Number of edges whose endpoints lie on different sides.
pub fn cut_of(g: &Graph, side: &[bool]) -> usize {
    g.edges().filter(|&(i, j)| side[i] != side[j]).count()
}

/// Cut size for a `+-1` labelling.
pub fn cut_value(g: &Graph, partition: &[i8]) -> Result<usize> {
    if partition.len() != g.n() {
        return Err(Error::Dimension { expected: g.n(), got: partition.len() });
    }
    if let Some(v) = partition.iter().position(|&s| s != 1 && s != -1) {
        return Err(Error::Parameter(format!("vertex {v} has label {} (expected +-1)", partition[v])));
    }
    Ok(g.edges().filter(|&(i, j)| partition[i] != partition[j]).count())
}

struct Trial {
    index: usize,
    side: Vec<bool>,
    cut: usize,
    resamples: usize,
}

fn one_trial(g: &Graph, vc: &VectorColoring<f64>, seed: u64, t: usize) -> Trial {
    let mut rng = stream_rng(seed, streams::ROUNDING_BASE + t as u64);
    let mut resamples = 0;
    loop {
        let gauss: Vec<f64> = (0..vc.dim).map(|_| StandardNormal.sample(&mut rng)).collect();
        let proj: Vec<f64> = vc.vectors.iter().map(|v| v.iter().map(|&(k, x)| x * gauss[k]).sum()).collect();
        if proj.contains(&0.0) {
            resamples += 1;
            continue;
        }
        let side: Vec<bool> = proj.iter().map(|&p| p > 0.0).collect();
        let cut = cut_of(g, &side);
        return Trial { index: t, side, cut, resamples };
    }
}

/// Round `vc` by the signs of projections onto Gaussian directions.
///
/// Trial `t` draws from its own stream, so the result does not depend on how
/// trials are scheduled across threads.
pub fn gw_round(g: &Graph, vc: &VectorColoring<f64>, trials: usize, seed: u64) -> Result<CutResult> {
    if trials == 0 {
        return Err(Error::Parameter("at least one trial is required".into()));
    }
    if vc.n() != g.n() {
        return Err(Error::Dimension { expected: g.n(), got: vc.n() });
    }
    let results: Vec<Trial> = (0..trials).into_par_iter().map(|t| one_trial(g, vc, seed, t)).collect();
    let mean = results.iter().map(|r| r.cut as f64).sum::<f64>() / trials as f64;
    let var = if trials > 1 {
        results.iter().map(|r| (r.cut as f64 - mean).powi(2)).sum::<f64>() / (trials - 1) as f64
    } else {
        0.0
    };
    let best = results
        .iter()
        .max_by(|a, b| a.cut.cmp(&b.cut).then(b.index.cmp(&a.index)))
        .expect("nonempty");
    Ok(CutResult {
        partition: best.side.clone(),
        cut_edges: best.cut,
        trials,
        mean_cut: mean,
        best_cut: best.cut,
        seed,
        std_error: (var / trials as f64).sqrt(),
        resamples: results.iter().map(|r| r.resamples).sum(),
        rng: RNG_ALGORITHM.into(),
    })
}

/// Expected rounded cut, `sum over edges of arccos(<v_i, v_j>) / pi`.
pub fn analytic_expected_cut(g: &Graph, vc: &VectorColoring<f64>) -> f64 {
    g.edges().map(|(i, j)| vc.inner(i, j).clamp(-1.0, 1.0).acos()).sum::<f64>() / std::f64::consts::PI
}

/// The high-girth cut guarantee plus reference values for comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutBound {
    /// `|E| (1/2 + 2 (1 - 1/m) sqrt(rho) / (pi (rho + 1)))`
    pub bound: f64,
    /// `|E| (1/2 + 2 sqrt(d) / (pi (sqrt(d) + 1)^2))` at the average degree.
    pub er_context: f64,
    /// `|E| (1/2 + 0.7632 / sqrt(d))`, the known asymptotic value for
    /// sparse random graphs, for comparison only.
    pub dms_reference: f64,
}

pub const DMS_CONSTANT: f64 = 0.7632;

pub fn expected_cut_lb(g: &Graph, m: usize, rho: f64) -> Result<CutBound> {
    if m < 2 {
        return Err(Error::Degenerate(format!("radius m = {m} gives a vacuous bound; need m >= 2")));
    }
    if !(rho > 0.0) {
        return Err(Error::Domain(format!("rho must be positive, got {rho}")));
    }
    let e = g.edge_count() as f64;
    let c = 1.0 - 1.0 / m as f64;
    let pi = std::f64::consts::PI;
    let d = g.average_degree_f64();
    let sd = d.sqrt();
    Ok(CutBound {
        bound: e * (0.5 + 2.0 * c * rho.sqrt() / (pi * (rho + 1.0))),
        er_context: e * (0.5 + 2.0 * sd / (pi * (sd + 1.0).powi(2))),
        dms_reference: e * (0.5 + DMS_CONSTANT / sd),
    })
}

/// Maximum cut by enumeration (vertex 0 pinned), for `n <= 24`.
pub fn max_cut_exhaustive(g: &Graph) -> Result<usize> {
    const LIMIT: usize = 24;
    let n = g.n();
    if n > LIMIT {
        return Err(Error::TooLarge { size: n, limit: LIMIT });
    }
    if n <= 1 {
        return Ok(0);
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let best = (0u32..1 << (n - 1))
        .into_par_iter()
        .map(|mask| {
            let side = |v: usize| v > 0 && (mask >> (v - 1)) & 1 == 1;
            edges.iter().filter(|&&(i, j)| side(i) != side(j)).count()
        })
        .max()
        .unwrap_or(0);
    Ok(best)
}
