//! Real projective space `P^n_R` and the round sphere `S^n`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{dot, euclid_norm, random_unit_vector, Real};

fn unit_vector<T: Real>(coords: Vec<T>) -> Result<Vec<T>> {
    let n = euclid_norm(&coords);
    if !(n > T::zero()) || !n.is_finite() {
        return Err(Error::ZeroVector);
    }
    Ok(coords.into_iter().map(|c| c / n).collect())
}

/// Angle between unit vectors via `2 atan2(|a - b|, |a + b|)`, accurate at both ends.
fn unit_angle<T: Real>(a: &[T], b: &[T]) -> T {
    let (mut minus, mut plus) = (T::zero(), T::zero());
    for (&p, &q) in a.iter().zip(b) {
        minus = minus + (p - q) * (p - q);
        plus = plus + (p + q) * (p + q);
    }
    T::lit(2.0) * minus.sqrt().atan2(plus.sqrt())
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch {
            expected: a,
            actual: b,
        });
    }
    Ok(())
}

/// A point of `P^n_R`, stored as a unit vector in `R^{n+1}`; `x` and `-x` are the same point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PPoint<T> {
    coords: Vec<T>,
}

impl<T: Real> PPoint<T> {
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                actual: coords.len(),
            });
        }
        Ok(Self {
            coords: unit_vector(coords)?,
        })
    }

    /// Projective dimension `n`.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn negated(&self) -> Self {
        Self {
            coords: self.coords.iter().map(|&c| -c).collect(),
        }
    }

    /// Representative whose first nonzero coordinate is positive.
    pub fn canonical(&self) -> Self {
        match self.coords.iter().find(|c| c.abs() > T::arith_tol()) {
            Some(&c) if c < T::zero() => self.negated(),
            _ => self.clone(),
        }
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        Self {
            coords: random_unit_vector(n + 1, rng),
        }
    }
}

/// `cos d = |(x, y)|` on unit representatives; values in `[0, π/2]`.
pub fn projective_distance<T: Real>(x: &PPoint<T>, y: &PPoint<T>) -> Result<T> {
    check_dims(x.coords.len(), y.coords.len())?;
    let (a, b) = aligned_pair(x, y);
    Ok(unit_angle(a.coords(), b.coords()))
}

/// Representatives of `x` and `y` with `(x, ŷ) ≥ 0`.
///
/// On the cut locus `(x, y) = 0` both are put in canonical sign (first
/// nonzero coordinate positive); this only matters on a measure-zero set.
pub fn aligned_pair<T: Real>(x: &PPoint<T>, y: &PPoint<T>) -> (PPoint<T>, PPoint<T>) {
    let ip = dot(&x.coords, &y.coords);
    if ip.abs() <= T::sign_tol() {
        (x.canonical(), y.canonical())
    } else if ip < T::zero() {
        (x.clone(), y.negated())
    } else {
        (x.clone(), y.clone())
    }
}

/// Whether the pair sits on the cut locus, where the short geodesic is not unique.
pub fn on_cut_locus<T: Real>(x: &PPoint<T>, y: &PPoint<T>) -> bool {
    dot(&x.coords, &y.coords).abs() <= T::sign_tol()
}

/// Euclidean (trace-form) distance between the rank-one projections `x xᵀ` and `y yᵀ`.
///
/// Equals `sqrt(2 - 2 cos²θ) = √2 sin θ` with `θ` the projective distance.
pub fn jordan_trace_distance<T: Real>(x: &PPoint<T>, y: &PPoint<T>) -> Result<T> {
    let theta = projective_distance(x, y)?;
    Ok(T::SQRT_2() * theta.sin())
}

/// A point of the unit sphere `S^n ⊂ R^{n+1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SPoint<T> {
    coords: Vec<T>,
}

impl<T: Real> SPoint<T> {
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                actual: coords.len(),
            });
        }
        Ok(Self {
            coords: unit_vector(coords)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn antipode(&self) -> Self {
        Self {
            coords: self.coords.iter().map(|&c| -c).collect(),
        }
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        Self {
            coords: random_unit_vector(n + 1, rng),
        }
    }
}

/// Great-circle distance `arccos(x · y)` in `[0, π]`.
pub fn sphere_distance<T: Real>(x: &SPoint<T>, y: &SPoint<T>) -> Result<T> {
    check_dims(x.coords.len(), y.coords.len())?;
    Ok(unit_angle(&x.coords, &y.coords))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

    fn p(c: &[f64]) -> PPoint<f64> {
        PPoint::new(c.to_vec()).unwrap()
    }

    fn s(c: &[f64]) -> SPoint<f64> {
        SPoint::new(c.to_vec()).unwrap()
    }

    #[test]
    fn projective_examples() {
        let p1 = p(&[1.0, 0.0, 1.0]);
        let q1 = p(&[0.0, 1.0, 1.0]);
        let p2 = p(&[1.0, 0.0, -1.0]);
        assert!((projective_distance(&p1, &q1).unwrap() - FRAC_PI_3).abs() < 1e-15);
        assert!((projective_distance(&p1, &p2).unwrap() - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(projective_distance(&p1, &p1).unwrap(), 0.0);
        assert_eq!(projective_distance(&p1, &p1.negated()).unwrap(), 0.0);
    }

    #[test]
    fn sphere_examples() {
        let a = s(&[1.0, 0.0, 0.0]);
        assert_eq!(sphere_distance(&a, &a).unwrap(), 0.0);
        assert!((sphere_distance(&a, &a.antipode()).unwrap() - PI).abs() < 1e-15);
        assert!((sphere_distance(&a, &s(&[0.0, 0.0, 1.0])).unwrap() - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn jordan_examples() {
        let p1 = p(&[1.0, 0.0, 1.0]);
        let q1 = p(&[0.0, 1.0, 1.0]);
        assert_eq!(jordan_trace_distance(&p1, &p1).unwrap(), 0.0);
        let orth = jordan_trace_distance(&p(&[1.0, 0.0, 0.0]), &p(&[0.0, 1.0, 0.0])).unwrap();
        assert!((orth - 2f64.sqrt()).abs() < 1e-15);
        assert!((jordan_trace_distance(&p1, &q1).unwrap() - 1.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn jordan_matches_projection_matrices() {
        // Frobenius distance between x xᵀ and y yᵀ computed directly.
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let x: PPoint<f64> = PPoint::random(3, &mut rng);
            let y: PPoint<f64> = PPoint::random(3, &mut rng);
            let (a, b) = (x.coords(), y.coords());
            let mut f = 0.0;
            for i in 0..4 {
                for j in 0..4 {
                    let d = a[i] * a[j] - b[i] * b[j];
                    f += d * d;
                }
            }
            assert!((f.sqrt() - jordan_trace_distance(&x, &y).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_zero_and_mismatch() {
        assert!(PPoint::<f64>::new(vec![0.0, 0.0, 0.0]).is_err());
        assert!(projective_distance(&p(&[1.0, 0.0]), &p(&[1.0, 0.0, 0.0])).is_err());
    }
}
