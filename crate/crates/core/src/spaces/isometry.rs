//! Form-preserving linear maps: `O(1,n)`, `U(1,n)`, `Sp(1,n)`, plus `O(n+1)` for spheres.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::hyperbolic::HPoint;
use super::projective::{PPoint, SPoint};
use crate::algebra::{form, form_norm, scale_real, FVec, FieldScalar, HermitianSpace};
use crate::error::{Error, Result};
use crate::scalar::{dot, euclid_norm, Real};

const MAX_ATTEMPTS: usize = 64;

/// An `(n+1)×(n+1)` matrix over `F` acting on column vectors from the left.
///
/// Left matrix action commutes with right scalar multiplication, so it is
/// well defined on projective classes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Isometry<T> {
    space: HermitianSpace,
    /// `columns[j]` is the image of `e_j`.
    columns: Vec<FVec<T>>,
}

impl<T: Real> Isometry<T> {
    pub fn identity(space: HermitianSpace) -> Self {
        Self {
            space,
            columns: (0..space.len()).map(|j| space.basis(j)).collect(),
        }
    }

    /// Build from columns; `None` unless they are form-orthonormal within `tol`.
    pub fn from_columns(space: HermitianSpace, columns: Vec<FVec<T>>, tol: T) -> Result<Self> {
        if columns.len() != space.len() {
            return Err(Error::DimensionMismatch {
                expected: space.len(),
                actual: columns.len(),
            });
        }
        for c in &columns {
            space.check(c)?;
        }
        let g = Self { space, columns };
        let err = g.orthonormality_error();
        if err > tol {
            return Err(Error::Inconsistent(format!(
                "columns not form-orthonormal (error {err})"
            )));
        }
        Ok(g)
    }

    pub fn space(&self) -> HermitianSpace {
        self.space
    }

    /// Entry `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> FieldScalar<T> {
        self.columns[j][i]
    }

    /// `g z = Σ_j column_j · z_j`.
    pub fn apply(&self, z: &[FieldScalar<T>]) -> FVec<T> {
        let mut out = self.space.zero_vector();
        for (col, &zj) in self.columns.iter().zip(z) {
            for (o, &c) in out.iter_mut().zip(col) {
                *o = *o + c * zj;
            }
        }
        out
    }

    pub fn apply_point(&self, x: &HPoint<T>) -> HPoint<T> {
        HPoint::new(self.space, self.apply(x.coords()))
            .expect("isometries map negative vectors to negative vectors")
    }

    /// `g ∘ h`.
    pub fn compose(&self, h: &Self) -> Self {
        Self {
            space: self.space,
            columns: h.columns.iter().map(|c| self.apply(c)).collect(),
        }
    }

    /// `max |<g e_i, g e_j> - J_ij|`.
    pub fn orthonormality_error(&self) -> T {
        let mut worst = T::zero();
        for (i, ci) in self.columns.iter().enumerate() {
            for (j, cj) in self.columns.iter().enumerate() {
                let target = if i != j {
                    T::zero()
                } else {
                    T::lit(self.space.signature(i) as f64)
                };
                let v = form(ci, cj) - FieldScalar::from_real(self.space.field, target);
                worst = worst.max(v.modulus());
            }
        }
        worst
    }
}

/// Form-orthonormalize `columns` in place; `false` if a column has the wrong sign or vanishes.
fn form_gram_schmidt<T: Real>(space: &HermitianSpace, columns: &mut [FVec<T>]) -> bool {
    let margin = T::lit(1e-3);
    for k in 0..columns.len() {
        // Two passes keep the result orthonormal to working precision.
        for _ in 0..2 {
            for j in 0..k {
                let eps = T::lit(space.signature(j) as f64);
                let a = form(&columns[j], &columns[k]).scale(eps);
                let (head, tail) = columns.split_at_mut(k);
                for (t, &h) in tail[0].iter_mut().zip(&head[j]) {
                    *t = *t - h * a;
                }
            }
        }
        let q = form_norm(&columns[k]) * T::lit(space.signature(k) as f64);
        if !(q > margin) {
            return false;
        }
        columns[k] = scale_real(&columns[k], q.sqrt().recip());
    }
    true
}

/// Random isometry from form-orthonormalizing `I + spread·N` with `N` Gaussian.
///
/// `spread = 0` returns the identity. Larger spreads mix in larger boosts.
pub fn random_isometry_with_spread<T: Real, R: Rng + ?Sized>(
    space: HermitianSpace,
    spread: T,
    rng: &mut R,
) -> Result<Isometry<T>> {
    let k = space.field.real_dim();
    for _ in 0..MAX_ATTEMPTS {
        let mut columns: Vec<FVec<T>> = (0..space.len())
            .map(|j| {
                let mut reals: Vec<T> = (0..space.real_len())
                    .map(|_| spread * T::sample_normal(rng))
                    .collect();
                reals[j * k] = reals[j * k] + T::one();
                space
                    .vector_from_reals(&reals)
                    .expect("length matches space")
            })
            .collect();
        if form_gram_schmidt(&space, &mut columns) {
            return Ok(Isometry { space, columns });
        }
    }
    Err(Error::IsometryConstruction(MAX_ATTEMPTS))
}

/// Random isometry with the default spread of 0.5.
pub fn random_isometry<T: Real, R: Rng + ?Sized>(
    space: HermitianSpace,
    rng: &mut R,
) -> Result<Isometry<T>> {
    random_isometry_with_spread(space, T::lit(0.5), rng)
}

/// An orthogonal map of `R^{n+1}`, acting on `P^n_R` and `S^n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rotation<T> {
    columns: Vec<Vec<T>>,
}

impl<T: Real> Rotation<T> {
    pub fn apply(&self, v: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); v.len()];
        for (col, &vj) in self.columns.iter().zip(v) {
            for (o, &c) in out.iter_mut().zip(col) {
                *o = *o + c * vj;
            }
        }
        out
    }

    pub fn apply_projective(&self, x: &PPoint<T>) -> PPoint<T> {
        PPoint::new(self.apply(x.coords())).expect("rotations preserve norms")
    }

    pub fn apply_sphere(&self, x: &SPoint<T>) -> SPoint<T> {
        SPoint::new(self.apply(x.coords())).expect("rotations preserve norms")
    }

    pub fn orthonormality_error(&self) -> T {
        let mut worst = T::zero();
        for (i, a) in self.columns.iter().enumerate() {
            for (j, b) in self.columns.iter().enumerate() {
                let target = if i == j { T::one() } else { T::zero() };
                worst = worst.max((dot(a, b) - target).abs());
            }
        }
        worst
    }
}

/// Haar-random orthogonal matrix of size `dim` via Gram–Schmidt on a Gaussian matrix.
pub fn random_rotation<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Rotation<T> {
    'retry: loop {
        let mut columns: Vec<Vec<T>> = (0..dim)
            .map(|_| (0..dim).map(|_| T::sample_normal(rng)).collect())
            .collect();
        for k in 0..dim {
            for _ in 0..2 {
                for j in 0..k {
                    let a = dot(&columns[j], &columns[k]);
                    let (head, tail) = columns.split_at_mut(k);
                    for (t, &h) in tail[0].iter_mut().zip(&head[j]) {
                        *t = *t - h * a;
                    }
                }
            }
            let n = euclid_norm(&columns[k]);
            if !(n > T::lit(1e-6)) {
                continue 'retry;
            }
            columns[k].iter_mut().for_each(|c| *c = *c / n);
        }
        return Rotation { columns };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;
    use crate::spaces::{hyperbolic_distance, projective_distance, random_point, sphere_distance};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const FIELDS: [Field; 3] = [Field::Real, Field::Complex, Field::Quaternion];

    #[test]
    fn zero_spread_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for f in FIELDS {
            let s = HermitianSpace::new(f, 3).unwrap();
            let g: Isometry<f64> = random_isometry_with_spread(s, 0.0, &mut rng).unwrap();
            assert_eq!(g, Isometry::identity(s));
        }
    }

    #[test]
    fn random_isometries_preserve_form_and_distance() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for f in FIELDS {
            let s = HermitianSpace::new(f, 2).unwrap();
            let x0 = HPoint::<f64>::base(s);
            let mut moved = 0;
            for _ in 0..20 {
                let g: Isometry<f64> = random_isometry(s, &mut rng).unwrap();
                assert!(g.orthonormality_error() < 1e-12);
                let z: FVec<f64> = s
                    .vector_from_reals(
                        &(0..s.real_len())
                            .map(|i| (i as f64).sin())
                            .collect::<Vec<_>>(),
                    )
                    .unwrap();
                let w: FVec<f64> = s
                    .vector_from_reals(
                        &(0..s.real_len())
                            .map(|i| (i as f64 * 0.7).cos())
                            .collect::<Vec<_>>(),
                    )
                    .unwrap();
                assert!(form(&g.apply(&z), &g.apply(&w)).approx_eq(&form(&z, &w), 1e-9));
                let x = random_point(s, 2.0, &mut rng);
                let y = random_point(s, 2.0, &mut rng);
                let d = hyperbolic_distance(&x, &y).unwrap();
                let dg = hyperbolic_distance(&g.apply_point(&x), &g.apply_point(&y)).unwrap();
                assert!((d - dg).abs() < 1e-8);
                if hyperbolic_distance(&x0, &g.apply_point(&x0)).unwrap() > 1e-3 {
                    moved += 1;
                }
            }
            assert!(
                moved >= 18,
                "boost part should move the base point generically"
            );
        }
    }

    #[test]
    fn composition_is_an_isometry() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = HermitianSpace::new(Field::Quaternion, 2).unwrap();
        let g: Isometry<f64> = random_isometry(s, &mut rng).unwrap();
        let h: Isometry<f64> = random_isometry(s, &mut rng).unwrap();
        assert!(g.compose(&h).orthonormality_error() < 1e-10);
        let cols: Vec<FVec<f64>> = (0..3).map(|j| g.compose(&h).apply(&s.basis(j))).collect();
        assert!(Isometry::from_columns(s, cols, 1e-9).is_ok());
    }

    #[test]
    fn from_columns_rejects_non_isometry() {
        let s = HermitianSpace::new(Field::Real, 1).unwrap();
        let cols = vec![s.basis::<f64>(0), scale_real(&s.basis::<f64>(1), 2.0)];
        assert!(Isometry::from_columns(s, cols, 1e-9).is_err());
    }

    #[test]
    fn rotations_preserve_spherical_and_projective_distance() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let r: Rotation<f64> = random_rotation(3, &mut rng);
            assert!(r.orthonormality_error() < 1e-13);
            let (a, b) = (SPoint::random(2, &mut rng), SPoint::random(2, &mut rng));
            let d = sphere_distance(&a, &b).unwrap();
            assert!(
                (d - sphere_distance(&r.apply_sphere(&a), &r.apply_sphere(&b)).unwrap()).abs()
                    < 1e-12
            );
            let (p, q) = (PPoint::random(2, &mut rng), PPoint::random(2, &mut rng));
            let d = projective_distance(&p, &q).unwrap();
            let dr = projective_distance(&r.apply_projective(&p), &r.apply_projective(&q)).unwrap();
            assert!((d - dr).abs() < 1e-12);
        }
    }
}
