use super::DenseMatrix;
use crate::scalar::Real;

/// Where a pivoted Cholesky factorization broke down.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Breakdown<T> {
    pub step: usize,
    pub pivot: T,
}

/// Pivoted Cholesky of `a + shift * I`. Succeeds iff the shifted matrix is
/// positive definite (up to rounding).
pub fn cholesky_pd<T: Real>(a: &DenseMatrix<T>, shift: T) -> Result<(), Breakdown<T>> {
    let n = a.rows();
    assert_eq!(n, a.cols());
    let mut m = DenseMatrix::from_fn(n, n, |i, j| {
        let x = if i >= j { a[(i, j)] } else { a[(j, i)] };
        if i == j {
            x + shift
        } else {
            x
        }
    });
    let mut perm: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let (mut piv, mut best) = (k, m[(perm[k], perm[k])]);
        for (idx, &p) in perm.iter().enumerate().skip(k + 1) {
            if m[(p, p)] > best {
                best = m[(p, p)];
                piv = idx;
            }
        }
        if !(best > T::zero()) {
            return Err(Breakdown { step: k, pivot: best });
        }
        perm.swap(k, piv);
        let pk = perm[k];
        let root = best.sqrt();
        m[(pk, pk)] = root;
        for &pi in &perm[k + 1..] {
            m[(pi, pk)] /= root;
        }
        for (idx, &pi) in perm.iter().enumerate().skip(k + 1) {
            let lik = m[(pi, pk)];
            for &pj in &perm[k + 1..=idx] {
                let upd = lik * m[(pj, pk)];
                m[(pi, pj)] -= upd;
                if pi != pj {
                    m[(pj, pi)] = m[(pi, pj)];
                }
            }
        }
    }
    Ok(())
}
