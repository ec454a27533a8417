//! Explicitly restarted Lanczos for the smallest eigenvalue of a symmetric
//! operator, with full (twice-applied) reorthogonalization.

use rand::Rng;
use rand_distr::StandardNormal;

use super::symmetric::tridiagonal_eigen;
use crate::rng::{stream_rng, streams};
use crate::scalar::Real;

#[derive(Debug, Clone)]
pub struct LanczosOptions<T> {
    /// Krylov basis size before an explicit restart.
    pub basis: usize,
    pub max_restarts: usize,
    /// Convergence when the Ritz residual is at most `tol * scale`.
    pub tol: T,
    /// Operator norm estimate used to scale `tol`.
    pub scale: T,
    /// Stop early once a Ritz value is certainly negative.
    pub stop_when_negative: bool,
    pub seed: u64,
}

impl<T: Real> LanczosOptions<T> {
    pub fn new(scale: T) -> Self {
        LanczosOptions {
            basis: 80,
            max_restarts: 60,
            tol: T::lit(1e-8),
            scale,
            stop_when_negative: false,
            seed: 0x4c41_4e43,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RitzPair<T> {
    pub value: T,
    pub vector: Vec<T>,
    pub residual: T,
    pub converged: bool,
    pub matvecs: usize,
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

fn normalize<T: Real>(v: &mut [T]) -> T {
    let nrm = dot(v, v).sqrt();
    if nrm > T::zero() {
        for x in v.iter_mut() {
            *x /= nrm;
        }
    }
    nrm
}

/// Smallest eigenpair of the symmetric operator `apply` (y = A x) on
/// vectors of length `n`.
///
/// `start` warm-starts the iteration; otherwise a Gaussian vector from the
/// crate RNG is used. The returned pair is flagged `converged = false` when
/// the restart budget runs out.
pub fn lanczos_smallest<T, F>(
    n: usize,
    apply: F,
    start: Option<&[T]>,
    opts: &LanczosOptions<T>,
) -> RitzPair<T>
where
    T: Real,
    F: Fn(&[T], &mut [T]),
{
    let mut v0: Vec<T> = match start {
        Some(s) if s.len() == n && dot(s, s) > T::zero() => s.to_vec(),
        _ => {
            let mut rng = stream_rng(opts.seed, streams::LANCZOS_START);
            (0..n).map(|_| T::lit(rng.sample::<f64, _>(StandardNormal))).collect()
        }
    };
    normalize(&mut v0);
    let threshold = opts.tol * opts.scale;
    let tiny = threshold * T::lit(1e-3);
    let basis_cap = opts.basis.max(2).min(n);
    let mut matvecs = 0;
    let mut last = RitzPair {
        value: T::infinity(),
        vector: v0.clone(),
        residual: T::infinity(),
        converged: false,
        matvecs: 0,
    };

    for _restart in 0..=opts.max_restarts {
        let mut q: Vec<Vec<T>> = vec![v0.clone()];
        let mut alpha: Vec<T> = Vec::new();
        let mut beta: Vec<T> = Vec::new();
        let mut w = vec![T::zero(); n];
        loop {
            let k = q.len() - 1;
            apply(&q[k], &mut w);
            matvecs += 1;
            alpha.push(dot(&w, &q[k]));
            // Two passes of classical Gram-Schmidt against the whole basis.
            for _ in 0..2 {
                for qi in &q {
                    let c = dot(&w, qi);
                    for (wx, &qx) in w.iter_mut().zip(qi) {
                        *wx -= c * qx;
                    }
                }
            }
            let b = dot(&w, &w).sqrt();
            let breakdown = b <= tiny;
            let full = q.len() >= basis_cap;
            if breakdown || full || alpha.len().is_multiple_of(10) {
                let eig = tridiagonal_eigen(&alpha, &beta, true);
                let s = eig.vectors.as_ref().unwrap();
                let theta = eig.values[0];
                let res = (b * s[(alpha.len() - 1, 0)]).abs();
                let converged = res <= threshold || breakdown;
                // Ritz values bound the smallest eigenvalue from above.
                let negative = opts.stop_when_negative && theta < T::zero();
                if converged || negative || full {
                    let mut y = vec![T::zero(); n];
                    for (j, qj) in q.iter().enumerate() {
                        let c = s[(j, 0)];
                        for (yx, &qx) in y.iter_mut().zip(qj) {
                            *yx += c * qx;
                        }
                    }
                    normalize(&mut y);
                    last = RitzPair { value: theta, vector: y, residual: res, converged, matvecs };
                    if converged || negative {
                        return last;
                    }
                    v0 = last.vector.clone();
                    break;
                }
            }
            beta.push(b);
            for x in w.iter_mut() {
                *x /= b;
            }
            q.push(std::mem::replace(&mut w, vec![T::zero(); n]));
        }
    }
    last
}
