//! The real scalar type underneath every complex operator.

use std::fmt;
use std::iter::Sum;
use std::str::FromStr;

use num_complex::Complex;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

/// A real floating-point scalar usable as the component type of
/// [`Complex`] matrix entries.
///
/// Implemented for `f32` and `f64`. Numerical tolerances throughout the crate
/// are calibrated for `f64`; `f32` is supported for the algebra but will not
/// meet the `1e-10`-level identities.
pub trait Real:
    num_traits::Float
    + num_traits::FloatConst
    + num_traits::FromPrimitive
    + nalgebra::RealField
    + Copy
    + Send
    + Sync
    + Sum
    + fmt::Debug
    + fmt::Display
    + fmt::LowerExp
    + FromStr
    + 'static
{
    /// Converts an `f64` literal.
    fn lit(x: f64) -> Self;

    fn to_f64(self) -> f64;

    /// Draws one standard normal variate.
    fn std_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

impl Real for f64 {
    #[inline]
    fn lit(x: f64) -> Self {
        x
    }

    #[inline]
    fn to_f64(self) -> f64 {
        self
    }

    fn std_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        StandardNormal.sample(rng)
    }
}

impl Real for f32 {
    #[inline]
    fn lit(x: f64) -> Self {
        x as f32
    }

    #[inline]
    fn to_f64(self) -> f64 {
        self as f64
    }

    fn std_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        StandardNormal.sample(rng)
    }
}

#[inline]
pub fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

#[inline]
pub fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

#[inline]
pub fn cone<T: Real>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

#[inline]
pub fn creal<T: Real>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

#[inline]
pub fn abs<T: Real>(x: T) -> T {
    num_traits::Float::abs(x)
}

#[inline]
pub fn sqrt<T: Real>(x: T) -> T {
    num_traits::Float::sqrt(x)
}

#[inline]
pub fn fmax<T: Real>(a: T, b: T) -> T {
    num_traits::Float::max(a, b)
}

#[inline]
pub fn fmin<T: Real>(a: T, b: T) -> T {
    num_traits::Float::min(a, b)
}
