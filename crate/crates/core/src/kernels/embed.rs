//! Classical scaling of the metric `√d` and a circumsphere fit.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::matrix::DistanceMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Relative eigenvalue tolerance on `max|d_ij|` for the Gram matrix.
pub const PSD_TOL: f64 = 1e-9;

/// Euclidean realization of `(X, √d)` with its circumscribed sphere.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingResult<T> {
    /// `m` rows of `rank` coordinates.
    pub coords: Vec<Vec<T>>,
    pub rank: usize,
    pub center: Vec<T>,
    pub radius: T,
    /// Largest relative error `|‖c_i - c_j‖ - √d_ij| / √d_ij` (absolute when `d_ij = 0`).
    pub max_distance_residual: T,
    /// Largest `|‖c_i - center‖ - radius|`.
    pub max_radius_residual: T,
    /// Smallest Gram eigenvalue before clamping.
    pub min_eigenvalue: T,
    /// `true` when `rank < ⌈log₂ m⌉`; reported, never treated as failure.
    pub rank_below_log2: bool,
}

/// Embed `√d` isometrically in `R^p` by factoring `G_ij = ½(d_i0 + d_j0 - d_ij)`.
///
/// Fails with [`Error::NotNegativeType`] when `G` has an eigenvalue below
/// `-PSD_TOL · max|d_ij|`, which is exactly the failure of negative type.
pub fn sqrt_embed<T: Real>(d: &DistanceMatrix<T>) -> Result<EmbeddingResult<T>> {
    let m = d.len();
    if m < 2 {
        return Err(Error::InvalidMatrix(
            "embedding needs at least 2 points".into(),
        ));
    }
    let df = |i: usize, j: usize| d.get(i, j).as_f64();
    let gram = DMatrix::from_fn(m, m, |i, j| 0.5 * (df(i, 0) + df(j, 0) - df(i, j)));
    let eig = SymmetricEigen::new(gram);
    let scale = d.max_abs().as_f64().max(f64::MIN_POSITIVE);
    let tol = PSD_TOL * scale;
    let min_eigenvalue = eig
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    if min_eigenvalue < -tol {
        return Err(Error::NotNegativeType {
            eigenvalue: min_eigenvalue,
        });
    }
    let mut order: Vec<usize> = (0..m).filter(|&k| eig.eigenvalues[k] > tol).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let rank = order.len();
    let coords64: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            order
                .iter()
                .map(|&k| eig.eigenvectors[(i, k)] * eig.eigenvalues[k].sqrt())
                .collect()
        })
        .collect();

    let mut max_distance_residual = 0f64;
    for i in 0..m {
        for j in (i + 1)..m {
            let e = euclid(&coords64[i], &coords64[j]);
            let target = df(i, j).sqrt();
            let err = if target > 0.0 {
                (e - target).abs() / target
            } else {
                e
            };
            max_distance_residual = max_distance_residual.max(err);
        }
    }

    let center = circumcenter(&coords64, rank);
    let dists: Vec<f64> = coords64.iter().map(|c| euclid(c, &center)).collect();
    let radius = dists.iter().sum::<f64>() / m as f64;
    let max_radius_residual = dists.iter().map(|r| (r - radius).abs()).fold(0.0, f64::max);
    let log2_bound = (m as f64).log2().ceil() as usize;

    let cast = |v: &[f64]| v.iter().map(|&c| T::lit(c)).collect::<Vec<T>>();
    Ok(EmbeddingResult {
        coords: coords64.iter().map(|c| cast(c)).collect(),
        rank,
        center: cast(&center),
        radius: T::lit(radius),
        max_distance_residual: T::lit(max_distance_residual),
        max_radius_residual: T::lit(max_radius_residual),
        min_eigenvalue: T::lit(min_eigenvalue),
        rank_below_log2: rank < log2_bound,
    })
}

fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(p, q)| (p - q) * (p - q))
        .sum::<f64>()
        .sqrt()
}

/// Least-squares solution of `2(c_i - c_0)·z = |c_i|² - |c_0|²`.
fn circumcenter(coords: &[Vec<f64>], p: usize) -> Vec<f64> {
    if p == 0 {
        return Vec::new();
    }
    let rows = coords.len() - 1;
    let a = DMatrix::from_fn(rows, p, |i, k| 2.0 * (coords[i + 1][k] - coords[0][k]));
    let n0: f64 = coords[0].iter().map(|c| c * c).sum();
    let b = DVector::from_fn(rows, |i, _| {
        coords[i + 1].iter().map(|c| c * c).sum::<f64>() - n0
    });
    let svd = a.svd(true, true);
    match svd.solve(&b, 1e-12) {
        Ok(z) => z.iter().copied().collect(),
        Err(_) => vec![0.0; p],
    }
}
