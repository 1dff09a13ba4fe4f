//! Negative-type test by the top eigenvalue of the double-centered matrix.
//!
//! `d` is of negative type iff `Q(t) ≤ 0` for all `t` with `Σ t = 0`, i.e.
//! iff `P D P` is negative semidefinite with `P = I - 11ᵀ/m`. The matrix is
//! compressed onto an orthonormal basis of the sum-zero hyperplane, whose top
//! eigenvector is the worst coefficient vector.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::matrix::{quadratic_form_raw, CoefficientVector, DistanceMatrix, SumConstraint};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Default tolerance factor on `max |d_ij|`.
pub const DEFAULT_NEGTYPE_TOL: f64 = 1e-9;

/// A coefficient vector proving the kernel is not of negative type.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness<T> {
    pub t: CoefficientVector<T>,
    /// `Q(t)` evaluated directly by the double sum.
    pub q: T,
    /// Top eigenvalue of `P D P` (equal to `q` up to round-off, since `|t| = 1`).
    pub eigenvalue: T,
}

/// Orthonormal basis of `{t : Σ t = 0}` as the columns of an `m×(m-1)` matrix.
fn helmert_basis(m: usize) -> DMatrix<f64> {
    DMatrix::from_fn(m, m - 1, |i, k| {
        let k1 = (k + 1) as f64;
        let s = (k1 * (k1 + 1.0)).sqrt();
        if i <= k {
            1.0 / s
        } else if i == k + 1 {
            -k1 / s
        } else {
            0.0
        }
    })
}

/// Unit sum-zero direction maximizing `Q`, whether or not `Q > 0`.
pub fn top_direction<T: Real>(d: &DistanceMatrix<T>) -> Result<Witness<T>> {
    let m = d.len();
    if m < 2 {
        return Err(Error::InvalidMatrix(
            "negative-type test needs at least 2 points".into(),
        ));
    }
    let dm = DMatrix::from_fn(m, m, |i, j| d.get(i, j).as_f64());
    let basis = helmert_basis(m);
    let compressed = basis.transpose() * &dm * &basis;
    let eig = SymmetricEigen::new(compressed);
    let (k, lambda) = eig
        .eigenvalues
        .iter()
        .copied()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .ok_or_else(|| Error::Inconsistent("empty eigen-decomposition".into()))?;
    let v = &basis * eig.eigenvectors.column(k);
    let t: Vec<T> = v.iter().map(|&c| T::lit(c)).collect();
    let t = CoefficientVector::projected(t, SumConstraint::SumZero);
    let q = quadratic_form_raw(d, t.values())?;
    Ok(Witness {
        t,
        q,
        eigenvalue: T::lit(lambda),
    })
}

/// `None` iff the top eigenvalue of `P D P` is at most `tol · max|d_ij|`.
pub fn negative_type_witness<T: Real>(d: &DistanceMatrix<T>, tol: T) -> Result<Option<Witness<T>>> {
    let w = top_direction(d)?;
    let threshold = tol * d.max_abs();
    Ok((w.eigenvalue > threshold && w.q > threshold).then_some(w))
}
