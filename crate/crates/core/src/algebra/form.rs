//! The signature-(1, n) hermitian form on `F^{n+1}`.
//!
//! `F^{n+1}` is treated as a *right* vector space: scalars always multiply
//! vectors from the right, so `<z, wλ> = <z, w>λ` and `<zλ, w> = conj(λ)<z, w>`.

use serde::{Deserialize, Serialize};

use super::field::{Field, FieldScalar};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// `F^{n+1}` with form matrix `diag(-1, 1, ..., 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HermitianSpace {
    pub field: Field,
    pub n: usize,
}

impl HermitianSpace {
    pub fn new(field: Field, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Unsupported("hermitian space needs n >= 1".into()));
        }
        Ok(Self { field, n })
    }

    /// Length of coordinate vectors, `n + 1`.
    #[allow(clippy::len_without_is_empty)]
    pub const fn len(&self) -> usize {
        self.n + 1
    }

    /// Real dimension of the coordinate vectors, `k(n + 1)`.
    pub const fn real_len(&self) -> usize {
        self.field.real_dim() * (self.n + 1)
    }

    /// Signature entry of coordinate `k`.
    pub fn signature(&self, k: usize) -> i8 {
        if k == 0 {
            -1
        } else {
            1
        }
    }

    pub fn check<T: Real>(&self, z: &[FieldScalar<T>]) -> Result<()> {
        if z.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                actual: z.len(),
            });
        }
        if let Some(bad) = z.iter().find(|c| c.field() != self.field) {
            return Err(Error::FieldMismatch {
                expected: self.field,
                actual: bad.field(),
            });
        }
        Ok(())
    }

    /// `<z, w> = -conj(z⁰)w⁰ + Σ conj(zᵏ)wᵏ`, with shape checks.
    pub fn form<T: Real>(
        &self,
        z: &[FieldScalar<T>],
        w: &[FieldScalar<T>],
    ) -> Result<FieldScalar<T>> {
        self.check(z)?;
        self.check(w)?;
        Ok(form(z, w))
    }

    pub fn zero_vector<T: Real>(&self) -> Vec<FieldScalar<T>> {
        vec![FieldScalar::zero(self.field); self.len()]
    }

    /// Standard basis vector `e_k`.
    pub fn basis<T: Real>(&self, k: usize) -> Vec<FieldScalar<T>> {
        let mut v = self.zero_vector();
        v[k] = FieldScalar::one(self.field);
        v
    }

    /// Build a vector from `k(n+1)` real coefficients laid out coordinate by coordinate.
    pub fn vector_from_reals<T: Real>(&self, reals: &[T]) -> Result<Vec<FieldScalar<T>>> {
        let k = self.field.real_dim();
        if reals.len() != self.real_len() {
            return Err(Error::DimensionMismatch {
                expected: self.real_len(),
                actual: reals.len(),
            });
        }
        reals
            .chunks(k)
            .map(|c| FieldScalar::from_coeffs(self.field, c))
            .collect()
    }
}

/// Unchecked form evaluation; callers guarantee matching lengths.
pub fn form<T: Real>(z: &[FieldScalar<T>], w: &[FieldScalar<T>]) -> FieldScalar<T> {
    debug_assert_eq!(z.len(), w.len());
    let mut acc = -(z[0].conj() * w[0]);
    for (a, b) in z.iter().zip(w).skip(1) {
        acc = acc + a.conj() * *b;
    }
    acc
}

/// `<z, z>`, which is always real.
pub fn form_norm<T: Real>(z: &[FieldScalar<T>]) -> T {
    let mut acc = -z[0].norm_sqr();
    for c in &z[1..] {
        acc = acc + c.norm_sqr();
    }
    acc
}

/// Checked hermitian form over an explicit space.
pub fn hermitian_form<T: Real>(
    z: &[FieldScalar<T>],
    w: &[FieldScalar<T>],
    space: &HermitianSpace,
) -> Result<FieldScalar<T>> {
    space.form(z, w)
}

/// `z · λ`, scalar on the right.
pub fn scale_right<T: Real>(z: &[FieldScalar<T>], lambda: FieldScalar<T>) -> Vec<FieldScalar<T>> {
    z.iter().map(|&c| c * lambda).collect()
}

pub fn scale_real<T: Real>(z: &[FieldScalar<T>], s: T) -> Vec<FieldScalar<T>> {
    z.iter().map(|&c| c.scale(s)).collect()
}

/// `a·p + b·q` with real coefficients.
pub fn combine<T: Real>(
    p: &[FieldScalar<T>],
    a: T,
    q: &[FieldScalar<T>],
    b: T,
) -> Vec<FieldScalar<T>> {
    p.iter()
        .zip(q)
        .map(|(&x, &y)| x.scale(a) + y.scale(b))
        .collect()
}

pub fn sub<T: Real>(p: &[FieldScalar<T>], q: &[FieldScalar<T>]) -> Vec<FieldScalar<T>> {
    p.iter().zip(q).map(|(&x, &y)| x - y).collect()
}

/// Euclidean norm of the real coefficients.
pub fn coeff_norm<T: Real>(z: &[FieldScalar<T>]) -> T {
    z.iter().fold(T::zero(), |acc, c| acc + c.norm_sqr()).sqrt()
}
