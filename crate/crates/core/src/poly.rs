//! Exact univariate polynomials over the rationals, enough to divide out
//! known factors of a characteristic polynomial and isolate its real roots
//! with Sturm sequences.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    /// Ascending coefficients with no trailing zeros.
    coeffs: Vec<BigRational>,
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_integers(c: &[BigInt]) -> Self {
        Poly::new(c.iter().map(|x| BigRational::from_integer(x.clone())).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn lead(&self) -> &BigRational {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * rat(k as i64)).collect())
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let mut r = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&nd| nd >= dd) else {
            return (Poly::zero(), self.clone());
        };
        let mut q = vec![BigRational::zero(); nd - dd + 1];
        let lead = d.lead().clone();
        for k in (0..=nd - dd).rev() {
            let c = &r[k + dd] / &lead;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    r[k + i] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    fn monic(&self) -> Poly {
        let l = self.lead().clone();
        Poly::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Product of the distinct irreducible factors.
    pub fn square_free(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        self.div_rem(&g).0
    }

    /// Divide by `(z - root)^k`; `None` if the division leaves a remainder.
    pub fn divide_by_root_power(&self, root: i64, k: usize) -> Option<Poly> {
        let mut p = self.clone();
        let r = rat(root);
        for _ in 0..k {
            let n = p.coeffs.len();
            if n == 0 {
                return None;
            }
            // Synthetic division by (z - r).
            let mut q = vec![BigRational::zero(); n - 1];
            let mut carry = BigRational::zero();
            for i in (0..n).rev() {
                carry = &carry * &r + &p.coeffs[i];
                if i > 0 {
                    q[i - 1] = carry.clone();
                }
            }
            if !carry.is_zero() {
                return None;
            }
            p = Poly::new(q);
        }
        Some(p)
    }

    /// Multiplicity of `root` as a zero.
    pub fn root_multiplicity(&self, root: i64) -> usize {
        let mut k = 0;
        let mut p = self.clone();
        while !p.is_zero() {
            match p.divide_by_root_power(root, 1) {
                Some(q) => {
                    p = q;
                    k += 1;
                }
                None => break,
            }
        }
        k
    }

    /// Cauchy bound: every root has modulus below this.
    pub fn root_bound(&self) -> BigRational {
        let lead = self.lead().abs();
        let max = self.coeffs.iter().map(|c| c.abs() / &lead).max().unwrap_or_else(BigRational::zero);
        max + BigRational::one()
    }

    fn sturm_sequence(&self) -> Vec<Poly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let k = seq.len();
            if seq[k - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[k - 2].div_rem(&seq[k - 1]).1;
            if r.is_zero() {
                break;
            }
            seq.push(Poly::new(r.coeffs.into_iter().map(|c| -c).collect()));
        }
        seq
    }

    /// Distinct real roots, each as an f64 midpoint of an isolating interval
    /// of width at most `width`. Multiplicities are not reported.
    ///
    /// Points are dyadic `m / 2^k` on a fixed grid, so evaluation stays in
    /// integers. Bisection never stops on a root of `p`; a midpoint that is
    /// a root is nudged one grid unit right and the root is isolated later.
    pub fn real_roots(&self, width: f64) -> Vec<f64> {
        if self.degree().is_none_or(|d| d == 0) {
            return Vec::new();
        }
        let p = self.square_free();
        let seq: Vec<Vec<BigInt>> = p.sturm_sequence().iter().map(Poly::primitive_integer).collect();
        let k = (4.0 / width.max(1e-300)).log2().ceil().max(0.0) as u32;
        let b = p.root_bound().to_f64().unwrap_or(f64::MAX).log2().ceil().max(0.0) as u32 + 1;
        let unit_width = (BigInt::one() << k).to_f64().unwrap_or(f64::MAX) * width;
        let w = BigInt::from(unit_width.floor().max(2.0) as u64);
        let edge = BigInt::one() << (b + k);
        let scale = 0.5f64.powi(k as i32);
        let at = |m: &BigInt| sign_changes(&seq, m, k);
        let mut out = Vec::new();
        let mut stack = vec![(-edge.clone(), at(&-edge.clone()), edge.clone(), at(&edge))];
        while let Some((lo, vlo, hi, vhi)) = stack.pop() {
            let count = vlo - vhi;
            if count == 0 {
                continue;
            }
            if count == 1 {
                let (mut lo, mut hi) = (lo, hi);
                let slo = sign_at(&seq[0], &lo, k);
                while &hi - &lo > w {
                    let mid: BigInt = (&lo + &hi) >> 1;
                    let sm = sign_at(&seq[0], &mid, k);
                    if sm == 0 {
                        lo = mid.clone();
                        hi = mid;
                        break;
                    }
                    if sm == slo {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                out.push(((&lo + &hi).to_f64().unwrap_or(f64::NAN)) * 0.5 * scale);
                continue;
            }
            let mut mid: BigInt = (&lo + &hi) >> 1;
            while sign_at(&seq[0], &mid, k) == 0 {
                mid += 1;
            }
            let vm = at(&mid);
            stack.push((mid.clone(), vm, hi, vhi));
            stack.push((lo, vlo, mid, vm));
        }
        out.sort_by(|x, y| x.partial_cmp(y).unwrap());
        out
    }

    /// Integer coefficients with the same signs of values: the polynomial
    /// scaled by a positive rational and with content removed.
    fn primitive_integer(&self) -> Vec<BigInt> {
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            ints
        } else {
            ints.into_iter().map(|c| c / &g).collect()
        }
    }
}

/// Sign of `p(m / 2^k)`, from `2^(k deg) p(m / 2^k)` by homogeneous Horner.
fn sign_at(p: &[BigInt], m: &BigInt, k: u32) -> i8 {
    let Some((lead, rest)) = p.split_last() else {
        return 0;
    };
    let mut acc = lead.clone();
    for (i, c) in rest.iter().rev().enumerate() {
        acc = acc * m + (c << (k as usize * (i + 1)));
    }
    match acc.sign() {
        Sign::Plus => 1,
        Sign::Minus => -1,
        Sign::NoSign => 0,
    }
}

/// Sign changes of the Sturm sequence at `m / 2^k`, counting roots in
/// `(x, inf)`.
fn sign_changes(seq: &[Vec<BigInt>], m: &BigInt, k: u32) -> usize {
    let signs: Vec<i8> = seq.iter().map(|p| sign_at(p, m, k)).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}
