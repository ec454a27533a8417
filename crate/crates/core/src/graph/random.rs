use rand::Rng;

use super::Graph;
use crate::error::{Error, Result};
use crate::rng::{stream_rng, streams};

/// Sample from G(n, d/n).
///
/// Each of the `n(n-1)/2` pairs is present independently with probability
/// `d/n`. Uses geometric skipping over the pair sequence, so the cost is
/// proportional to the number of edges.
pub fn sample_er(n: usize, d: f64, seed: u64) -> Result<Graph> {
    if n < 2 {
        return Err(Error::Parameter(format!("need n >= 2, got {n}")));
    }
    if !(d > 0.0 && d < n as f64) {
        return Err(Error::Parameter(format!("need 0 < d < n, got d = {d}, n = {n}")));
    }
    let p = d / n as f64;
    let mut rng = stream_rng(seed, streams::ER_SAMPLE);
    let log_q = (1.0 - p).ln();
    let mut edges = Vec::with_capacity((d * n as f64 * 0.6) as usize + 16);

    // Batagelj-Brandes: walk the lower triangle (v, w), w < v.
    let mut v: usize = 1;
    let mut w: i64 = -1;
    while v < n {
        let u: f64 = 1.0 - rng.random::<f64>(); // (0, 1]
        let skip = (u.ln() / log_q).floor();
        w += 1 + if skip.is_finite() { skip as i64 } else { i64::MAX / 4 };
        while v < n && w >= v as i64 {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            edges.push((w as usize, v));
        }
    }
    Graph::from_edges(n, edges)
}
