//! Points and geodesics of `H^n_F` in the hyperboloid (linear) model.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    coeff_norm, combine, form, form_norm, scale_real, scale_right, sub, FVec, FieldScalar,
    HermitianSpace,
};
use crate::error::{Error, Result};
use crate::scalar::{random_unit_vector, Real};

/// A point of `H^n_F`, stored as a representative with `<x, x> = -1`.
///
/// The phase of the representative is not canonicalized: every public
/// operation is invariant under `x -> x·λ` with `|λ| = 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HPoint<T> {
    space: HermitianSpace,
    coords: FVec<T>,
}

impl<T: Real> HPoint<T> {
    /// Normalize a negative vector into a point.
    pub fn new(space: HermitianSpace, coords: FVec<T>) -> Result<Self> {
        space.check(&coords)?;
        let q = form_norm(&coords);
        let scale = coeff_norm(&coords);
        if !(q < -T::norm_tol() * scale * scale) {
            return Err(Error::NotNegative(q.as_f64()));
        }
        let s = (-q).sqrt().recip();
        Ok(Self {
            space,
            coords: scale_real(&coords, s),
        })
    }

    /// Build from `k(n+1)` real coefficients.
    pub fn from_reals(space: HermitianSpace, reals: &[T]) -> Result<Self> {
        Self::new(space, space.vector_from_reals(reals)?)
    }

    /// The base point `x₀ = (1, 0, ..., 0)`.
    pub fn base(space: HermitianSpace) -> Self {
        Self {
            space,
            coords: space.basis(0),
        }
    }

    /// The point at distance `r` from `x₀` in the real unit direction `dir` (length `k·n`).
    pub fn from_polar(space: HermitianSpace, r: T, dir: &[T]) -> Result<Self> {
        let k = space.field.real_dim();
        if dir.len() != k * space.n {
            return Err(Error::DimensionMismatch {
                expected: k * space.n,
                actual: dir.len(),
            });
        }
        let mut reals = vec![T::zero(); space.real_len()];
        reals[0] = r.cosh();
        let sh = r.sinh();
        for (slot, &d) in reals[k..].iter_mut().zip(dir) {
            *slot = sh * d;
        }
        Self::from_reals(space, &reals)
    }

    pub fn space(&self) -> HermitianSpace {
        self.space
    }

    pub fn coords(&self) -> &[FieldScalar<T>] {
        &self.coords
    }

    pub fn into_coords(self) -> FVec<T> {
        self.coords
    }

    /// Same projective point with representative `x·λ`, `|λ| = 1` after normalization.
    pub fn with_phase(&self, lambda: FieldScalar<T>) -> Result<Self> {
        let unit = lambda.unit().ok_or(Error::ZeroVector)?;
        Ok(Self {
            space: self.space,
            coords: scale_right(&self.coords, unit),
        })
    }

    /// `<self, other>`.
    pub fn inner(&self, other: &Self) -> FieldScalar<T> {
        form(&self.coords, &other.coords)
    }

    fn same_space(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            if self.space.field != other.space.field {
                return Err(Error::FieldMismatch {
                    expected: self.space.field,
                    actual: other.space.field,
                });
            }
            return Err(Error::DimensionMismatch {
                expected: self.space.n,
                actual: other.space.n,
            });
        }
        Ok(())
    }
}

/// Unit scalar `λ` making `<x, y·λ>` real and negative, plus `|<x, y>|`.
fn alignment<T: Real>(x: &HPoint<T>, y: &HPoint<T>) -> (FieldScalar<T>, T) {
    let s = x.inner(y);
    let c = s.modulus();
    let lambda = (-s.conj())
        .unit()
        .unwrap_or_else(|| FieldScalar::one(x.space.field));
    (lambda, c)
}

fn lex_le<T: Real>(x: &HPoint<T>, y: &HPoint<T>) -> bool {
    for (a, b) in x.coords.iter().zip(&y.coords) {
        for (p, q) in a.coeffs().into_iter().zip(b.coeffs()) {
            match p.partial_cmp(&q) {
                Some(std::cmp::Ordering::Less) => return true,
                Some(std::cmp::Ordering::Greater) => return false,
                _ => {}
            }
        }
    }
    true
}

/// Geodesic distance, `cosh d = |<x, y>|` for normalized representatives.
///
/// Near the diagonal the equivalent form `d = 2 asinh(|x - ŷ| / 2)` is used,
/// with `ŷ` the phase-aligned representative of `y`.
pub fn hyperbolic_distance<T: Real>(x: &HPoint<T>, y: &HPoint<T>) -> Result<T> {
    x.same_space(y)?;
    // Evaluate in a fixed argument order so the result is exactly symmetric.
    let (x, y) = if lex_le(x, y) { (x, y) } else { (y, x) };
    let (lambda, c) = alignment(x, y);
    if c < T::one() - T::lit(1e3) * T::norm_tol() {
        return Err(Error::Inconsistent(format!(
            "|<x,y>| = {c} < 1 for negative vectors"
        )));
    }
    if c > T::lit(2.0) {
        return Ok(c.acosh());
    }
    let aligned = scale_right(&y.coords, lambda);
    let diff = sub(&x.coords, &aligned);
    let q = form_norm(&diff).max(T::zero());
    Ok(T::lit(2.0) * (q.sqrt() / T::lit(2.0)).asinh())
}

/// Unit-speed geodesic `s ↦ x cosh s + w sinh s`, `0 ≤ s ≤ length`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeodesicSegment<T> {
    base: HPoint<T>,
    tangent: FVec<T>,
    length: T,
}

impl<T: Real> GeodesicSegment<T> {
    /// Segment from a base point, a tangent (orthogonalized and normalized here) and a length.
    pub fn new(base: HPoint<T>, tangent: FVec<T>, length: T) -> Result<Self> {
        base.space.check(&tangent)?;
        if length < T::zero() {
            return Err(Error::Unsupported("negative segment length".into()));
        }
        // w ← w + x<x,w> removes the x component since <x,x> = -1.
        let a = form(&base.coords, &tangent);
        let w: FVec<T> = tangent
            .iter()
            .zip(&base.coords)
            .map(|(&t, &b)| t + b * a)
            .collect();
        let q = form_norm(&w);
        if !(q > T::norm_tol()) {
            return Err(Error::DegenerateSegment);
        }
        let w = scale_real(&w, q.sqrt().recip());
        Ok(Self {
            base,
            tangent: w,
            length,
        })
    }

    pub fn base(&self) -> &HPoint<T> {
        &self.base
    }

    pub fn tangent(&self) -> &[FieldScalar<T>] {
        &self.tangent
    }

    pub fn length(&self) -> T {
        self.length
    }

    pub fn space(&self) -> HermitianSpace {
        self.base.space
    }

    /// Representative `x cosh s + w sinh s` (no renormalization).
    pub fn raw_point(&self, s: T) -> FVec<T> {
        combine(&self.base.coords, s.cosh(), &self.tangent, s.sinh())
    }

    pub fn end(&self) -> HPoint<T> {
        geodesic_point(self, self.length)
    }
}

/// The geodesic segment `[xy]`.
pub fn geodesic_between<T: Real>(x: &HPoint<T>, y: &HPoint<T>) -> Result<GeodesicSegment<T>> {
    let d = hyperbolic_distance(x, y)?;
    if d <= T::arith_tol() {
        return Err(Error::DegenerateSegment);
    }
    let (lambda, c) = alignment(x, y);
    let aligned = scale_right(&y.coords, lambda);
    // ŷ - x c = (ŷ - x) - x (c - 1), with c - 1 = 2 sinh²(d/2) computed stably.
    let half = (d / T::lit(2.0)).sinh();
    let c_minus_one = if c > T::lit(2.0) {
        c - T::one()
    } else {
        T::lit(2.0) * half * half
    };
    let v = combine(&sub(&aligned, &x.coords), T::one(), &x.coords, -c_minus_one);
    let w = scale_real(&v, d.sinh().recip());
    GeodesicSegment::new(x.clone(), w, d)
}

/// Normalized point at arclength `s` (any real `s` lies on the full geodesic).
pub fn geodesic_point<T: Real>(seg: &GeodesicSegment<T>, s: T) -> HPoint<T> {
    let raw = seg.raw_point(s);
    let q = form_norm(&raw);
    HPoint {
        space: seg.base.space,
        coords: scale_real(&raw, (-q).sqrt().recip()),
    }
}

/// Random point within distance `radius` of `x₀`: uniform direction, radius uniform on `[0, radius]`.
///
/// This is not volume-uniform on the ball.
pub fn random_point<T: Real, R: Rng + ?Sized>(
    space: HermitianSpace,
    radius: T,
    rng: &mut R,
) -> HPoint<T> {
    let dir: Vec<T> = random_unit_vector(space.field.real_dim() * space.n, rng);
    let r = radius * T::sample_unit(rng);
    HPoint::from_polar(space, r, &dir).expect("polar construction always yields a negative vector")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Field, Quaternion};
    use num_complex::Complex;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sp(f: Field, n: usize) -> HermitianSpace {
        HermitianSpace::new(f, n).unwrap()
    }

    #[test]
    fn identical_points_are_at_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for f in [Field::Real, Field::Complex, Field::Quaternion] {
            let x: HPoint<f64> = random_point(sp(f, 3), 2.0, &mut rng);
            assert!(hyperbolic_distance(&x, &x).unwrap() < 1e-14);
        }
    }

    #[test]
    fn distance_along_first_axis() {
        let s = sp(Field::Real, 2);
        let x = HPoint::<f64>::base(s);
        let y = HPoint::from_reals(s, &[1f64.cosh(), 1f64.sinh(), 0.0]).unwrap();
        assert!((hyperbolic_distance(&x, &y).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn addendum_cross_pair_distance() {
        let s = sp(Field::Quaternion, 2);
        let x = HPoint::<f64>::from_reals(s, &[3., 0., 0., 0., 2., 2., 0., 0., 0., 0., 0., 0.])
            .unwrap();
        let y = HPoint::<f64>::from_reals(s, &[3., 0., 0., 0., 0., 0., 0., 0., 2., 0., 2., 0.])
            .unwrap();
        let d = hyperbolic_distance(&x, &y).unwrap();
        assert!((d - 9f64.acosh()).abs() < 1e-12);
        assert!((d - 2.887271).abs() < 1e-6);
    }

    #[test]
    fn non_negative_vectors_rejected() {
        let s = sp(Field::Real, 2);
        assert!(matches!(
            HPoint::<f64>::from_reals(s, &[1.0, 1.0, 0.0]),
            Err(Error::NotNegative(_))
        ));
        assert!(HPoint::<f64>::from_reals(s, &[0.0, 1.0, 0.0]).is_err());
    }

    #[test]
    fn mismatched_spaces_error() {
        let a = HPoint::<f64>::base(sp(Field::Real, 2));
        let b = HPoint::<f64>::base(sp(Field::Real, 3));
        let c = HPoint::<f64>::base(sp(Field::Complex, 2));
        assert!(hyperbolic_distance(&a, &b).is_err());
        assert!(hyperbolic_distance(&a, &c).is_err());
    }

    #[test]
    fn geodesic_endpoints_and_midpoint() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for f in [Field::Real, Field::Complex, Field::Quaternion] {
            let s = sp(f, 2);
            let x: HPoint<f64> = random_point(s, 2.0, &mut rng);
            let y: HPoint<f64> = random_point(s, 2.0, &mut rng);
            let seg = geodesic_between(&x, &y).unwrap();
            let l = seg.length();
            assert!((l - hyperbolic_distance(&x, &y).unwrap()).abs() < 1e-12);
            assert!(hyperbolic_distance(&geodesic_point(&seg, 0.0), &x).unwrap() < 1e-9);
            assert!(hyperbolic_distance(&geodesic_point(&seg, l), &y).unwrap() < 1e-9);
            let mid = geodesic_point(&seg, l / 2.0);
            assert!((hyperbolic_distance(&mid, &x).unwrap() - l / 2.0).abs() < 1e-9);
            assert!((hyperbolic_distance(&mid, &y).unwrap() - l / 2.0).abs() < 1e-9);
            // <x, w> = 0 and <w, w> = 1
            assert!(form(x.coords(), seg.tangent()).modulus() < 1e-10);
            assert!((form_norm(seg.tangent()) - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn complex_pair_with_imaginary_product_aligns() {
        let s = sp(Field::Complex, 1);
        let x = HPoint::<f64>::base(s);
        let c = |re: f64, im: f64| FieldScalar::Complex(Complex::new(re, im));
        // <x0, y> = -y⁰ = i cosh 1  ⇒  y⁰ = -i cosh 1
        let y = HPoint::new(s, vec![c(0.0, -1f64.cosh()), c(1f64.sinh(), 0.0)]).unwrap();
        assert!(x.inner(&y).approx_eq(&c(0.0, 1f64.cosh()), 1e-14));
        let seg = geodesic_between(&x, &y).unwrap();
        assert!((seg.length() - 1.0).abs() < 1e-13);
        // aligned ŷ = y·i has <x, ŷ> = i cosh 1 · i = -cosh 1
        let yhat = y.with_phase(c(0.0, 1.0)).unwrap();
        assert!(x.inner(&yhat).approx_eq(&c(-1f64.cosh(), 0.0), 1e-14));
        assert!(hyperbolic_distance(&seg.end(), &y).unwrap() < 1e-10);
    }

    #[test]
    fn geodesic_point_inner_with_base() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let s = sp(Field::Quaternion, 2);
        let x: HPoint<f64> = random_point(s, 1.5, &mut rng);
        let y: HPoint<f64> = random_point(s, 1.5, &mut rng);
        let seg = geodesic_between(&x, &y).unwrap();
        for t in [-1.3, 0.2, 0.9, 2.5] {
            let p = seg.raw_point(t);
            let v = form(&p, seg.raw_point(0.0).as_slice());
            assert!(v.approx_eq(
                &FieldScalar::from_real(Field::Quaternion, -f64::cosh(t)),
                1e-10
            ));
        }
    }

    #[test]
    fn degenerate_segment_rejected() {
        let x = HPoint::<f64>::base(sp(Field::Real, 2));
        assert_eq!(
            geodesic_between(&x, &x).unwrap_err(),
            Error::DegenerateSegment
        );
    }

    #[test]
    fn random_point_respects_radius_and_seed() {
        let s = sp(Field::Complex, 3);
        let x0 = HPoint::<f64>::base(s);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let p: HPoint<f64> = random_point(s, 2.5, &mut rng);
            assert!(hyperbolic_distance(&x0, &p).unwrap() <= 2.5 + 1e-12);
        }
        let zero: HPoint<f64> = random_point(s, 0.0, &mut rng);
        assert!(hyperbolic_distance(&x0, &zero).unwrap() < 1e-15);
        let a: HPoint<f64> = random_point(s, 1.0, &mut ChaCha8Rng::seed_from_u64(5));
        let b: HPoint<f64> = random_point(s, 1.0, &mut ChaCha8Rng::seed_from_u64(5));
        assert_eq!(a, b);
    }

    #[test]
    fn phase_changes_leave_distance_unchanged() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let s = sp(Field::Quaternion, 2);
        let lam = FieldScalar::Quaternion(Quaternion::new(0.3, -0.4, 0.5, 0.1));
        let mu = FieldScalar::Quaternion(Quaternion::new(-0.7, 0.2, 0.0, 0.9));
        for _ in 0..50 {
            let x: HPoint<f64> = random_point(s, 3.0, &mut rng);
            let y: HPoint<f64> = random_point(s, 3.0, &mut rng);
            let d = hyperbolic_distance(&x, &y).unwrap();
            let d2 = hyperbolic_distance(&x.with_phase(lam).unwrap(), &y.with_phase(mu).unwrap())
                .unwrap();
            assert!((d - d2).abs() <= 1e-12 * (1.0 + d));
        }
    }

    #[test]
    fn works_in_single_precision() {
        let s = sp(Field::Real, 2);
        let x = HPoint::<f32>::base(s);
        let y = HPoint::<f32>::from_reals(s, &[1f32.cosh(), 1f32.sinh(), 0.0]).unwrap();
        assert!((hyperbolic_distance(&x, &y).unwrap() - 1.0).abs() < 1e-5);
        let seg = geodesic_between(&x, &y).unwrap();
        assert!((hyperbolic_distance(&geodesic_point(&seg, 0.5), &x).unwrap() - 0.5).abs() < 1e-4);
    }
}
