//! Scalar abstractions.
//!
//! Numerical kernels are written against [`Real`] (f32 or f64). Determinant
//! evaluation additionally runs over [`Field`], which also covers complex
//! numbers and exact rationals so identity checks can be done without
//! rounding.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Float, FromPrimitive, NumAssign, One, Signed, ToPrimitive, Zero};

/// Floating point scalar used by every spectral kernel.
pub trait Real:
    Float
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from an f64 literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn from_count(x: usize) -> Self {
        Self::from_usize(x).expect("count representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Real for T where
    T: Float
        + FromPrimitive
        + ToPrimitive
        + NumAssign
        + Sum
        + Default
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// A field with a magnitude, enough for partially pivoted LU.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;

    /// Pivot weight and residual scale. Exact types report an f64 view.
    fn modulus(&self) -> f64;

    /// Whether the value is exactly representable, so zero pivots mean
    /// true singularity rather than rounding.
    const EXACT: bool = false;
}

macro_rules! float_field {
    ($t:ty) => {
        impl Field for $t {
            #[inline]
            fn from_i64(v: i64) -> Self {
                v as $t
            }
            #[inline]
            fn modulus(&self) -> f64 {
                self.abs() as f64
            }
        }

        impl Field for Complex<$t> {
            #[inline]
            fn from_i64(v: i64) -> Self {
                Complex::new(v as $t, 0.0)
            }
            #[inline]
            fn modulus(&self) -> f64 {
                self.norm() as f64
            }
        }
    };
}

float_field!(f32);
float_field!(f64);

impl Field for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn modulus(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    const EXACT: bool = true;
}

/// Integer power with negative exponents allowed (inverse for `exp < 0`).
pub fn powi_field<F: Field>(base: &F, exp: i64) -> F {
    let mut acc = F::one();
    let mut b = base.clone();
    let mut e = exp.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b.clone();
        }
        b = b.clone() * b;
        e >>= 1;
    }
    if exp < 0 {
        F::one() / acc
    } else {
        acc
    }
}
