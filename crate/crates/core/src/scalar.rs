//! The floating-point scalar every geometric routine is generic over.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

/// Floating point: `f32` or `f64`.
///
/// Besides the usual `num-traits` bounds this carries the tolerance scale
/// used by predicates and normalization checks, since a single absolute
/// threshold cannot serve both precisions.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Comparison tolerance for pure arithmetic (scaled by operand magnitude).
    const ARITH_TOL: f64;
    /// Tolerance for normalization invariants such as `<x,x> = -1`.
    const NORM_TOL: f64;
    /// Relative noise floor for sign predicates.
    const SIGN_TOL: f64;

    /// Lossless-enough conversion from an `f64` literal or computed value.
    #[inline]
    fn lit(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).expect("finite f64 converts to every Real")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }

    fn arith_tol() -> Self {
        Self::lit(Self::ARITH_TOL)
    }

    fn norm_tol() -> Self {
        Self::lit(Self::NORM_TOL)
    }

    fn sign_tol() -> Self {
        Self::lit(Self::SIGN_TOL)
    }

    /// Uniform draw on `[0, 1)`.
    #[inline]
    fn sample_unit<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::lit(rng.random::<f64>())
    }

    /// Standard normal draw.
    #[inline]
    fn sample_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let v: f64 = StandardNormal.sample(rng);
        Self::lit(v)
    }
}

impl Real for f64 {
    const ARITH_TOL: f64 = 1e-12;
    const NORM_TOL: f64 = 1e-10;
    const SIGN_TOL: f64 = 1e-12;
}

impl Real for f32 {
    const ARITH_TOL: f64 = 1e-5;
    const NORM_TOL: f64 = 1e-4;
    const SIGN_TOL: f64 = 1e-6;
}

/// Euclidean norm of a real slice.
pub(crate) fn euclid_norm<T: Real>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |acc, &c| acc + c * c).sqrt()
}

pub(crate) fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&p, &q)| acc + p * q)
}

/// Draw a vector uniformly distributed on the unit sphere `S^{dim-1}`.
pub fn random_unit_vector<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<T> {
    assert!(dim >= 1, "sphere of dimension -1 has no points");
    loop {
        let v: Vec<T> = (0..dim).map(|_| T::sample_normal(rng)).collect();
        let n = euclid_norm(&v);
        if n > T::lit(1e-6) {
            return v.into_iter().map(|c| c / n).collect();
        }
    }
}

/// Surface area of the unit sphere `S^k` embedded in `R^{k+1}`.
pub fn sphere_area<T: Real>(k: usize) -> T {
    // A(S^0) = 2, A(S^1) = 2π, A(S^k) = 2π/(k-1) · A(S^{k-2}).
    let two_pi = T::PI() + T::PI();
    let mut area = if k.is_multiple_of(2) {
        T::lit(2.0)
    } else {
        two_pi
    };
    let mut j = if k.is_multiple_of(2) { 2 } else { 3 };
    while j <= k {
        area = area * two_pi / T::lit((j - 1) as f64);
        j += 2;
    }
    area
}
