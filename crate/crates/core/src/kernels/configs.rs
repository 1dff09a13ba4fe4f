//! The two explicit counterexample configurations: six points of `P²_R` and
//! twenty-four points of `H²_H`.

use serde::{Deserialize, Serialize};

use super::matrix::{build_distance_matrix, DistanceMatrix, Metric, Point};
use crate::algebra::{Field, FieldScalar, HermitianSpace, Quaternion};
use crate::error::Result;
use crate::scalar::Real;
use crate::spaces::{hyperbolic_distance, HPoint, PPoint};

/// `(p₁, p₂, p₃, q₁, q₂, q₃)` in `P²_R`.
pub fn projective_configuration<T: Real>() -> Vec<PPoint<T>> {
    let raw: [[f64; 3]; 6] = [
        [1.0, 0.0, 1.0],
        [1.0, 0.0, -1.0],
        [0.0, 1.0, 0.0],
        [0.0, 1.0, 1.0],
        [0.0, 1.0, -1.0],
        [1.0, 0.0, 0.0],
    ];
    raw.iter()
        .map(|r| PPoint::new(r.iter().map(|&c| T::lit(c)).collect()).expect("nonzero vector"))
        .collect()
}

/// `(1, 1, 1, -1, -1, -1)`.
pub fn projective_coefficients<T: Real>() -> Vec<T> {
    [1.0, 1.0, 1.0, -1.0, -1.0, -1.0]
        .iter()
        .map(|&c| T::lit(c))
        .collect()
}

pub fn projective_matrix<T: Real>() -> Result<DistanceMatrix<T>> {
    let pts: Vec<Point<T>> = projective_configuration()
        .into_iter()
        .map(Point::Projective)
        .collect();
    build_distance_matrix(&pts, Metric::Projective)
}

/// The ambient space `H²_H` of the quaternionic configuration.
pub fn addendum_space() -> HermitianSpace {
    HermitianSpace {
        field: Field::Quaternion,
        n: 2,
    }
}

/// The twelve units `σ + ε` scaled by two: `σ ∈ {1, -1}`, `ε ∈ {±i, ±j, ±k}`.
fn addendum_entries<T: Real>() -> Vec<Quaternion<T>> {
    let two = T::lit(2.0);
    let units = [
        Quaternion::i(),
        -Quaternion::i(),
        Quaternion::j(),
        -Quaternion::j(),
        Quaternion::k(),
        -Quaternion::k(),
    ];
    let mut out = Vec::with_capacity(12);
    for sigma in [T::one(), -T::one()] {
        for &eps in &units {
            out.push((Quaternion::real(sigma) + eps).scale(two));
        }
    }
    out
}

/// `x^σ_ε = (3, 2σ + 2ε, 0)` and `y^σ_ε = (3, 0, 2σ + 2ε)`.
pub fn addendum_configuration<T: Real>() -> (Vec<HPoint<T>>, Vec<HPoint<T>>) {
    let space = addendum_space();
    let q = FieldScalar::Quaternion;
    let three = q(Quaternion::real(T::lit(3.0)));
    let zero = q(Quaternion::zero());
    let entries = addendum_entries::<T>();
    let xs = entries
        .iter()
        .map(|&e| HPoint::new(space, vec![three, q(e), zero]).expect("<x,x> = -1"))
        .collect();
    let ys = entries
        .iter()
        .map(|&e| HPoint::new(space, vec![three, zero, q(e)]).expect("<y,y> = -1"))
        .collect();
    (xs, ys)
}

/// The 24 points in order `x…, y…` together with coefficients `+1` on `x`, `-1` on `y`.
pub fn addendum_points<T: Real>() -> (Vec<Point<T>>, Vec<T>) {
    let (xs, ys) = addendum_configuration::<T>();
    let t = xs
        .iter()
        .map(|_| T::one())
        .chain(ys.iter().map(|_| -T::one()))
        .collect();
    let pts = xs.into_iter().chain(ys).map(Point::Hyperbolic).collect();
    (pts, t)
}

/// Distance sums for the quaternionic configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AddendumSums<T> {
    /// Unordered pairs inside the x group plus unordered pairs inside the y group.
    pub within: T,
    /// All 12×12 ordered cross pairs.
    pub cross: T,
    pub difference: T,
}

pub fn addendum_sums<T: Real>() -> Result<AddendumSums<T>> {
    let (xs, ys) = addendum_configuration::<T>();
    let mut within = T::zero();
    for group in [&xs, &ys] {
        for i in 0..group.len() {
            for j in (i + 1)..group.len() {
                within = within + hyperbolic_distance(&group[i], &group[j])?;
            }
        }
    }
    let mut cross = T::zero();
    for x in &xs {
        for y in &ys {
            cross = cross + hyperbolic_distance(x, y)?;
        }
    }
    Ok(AddendumSums {
        within,
        cross,
        difference: within - cross,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::matrix::quadratic_form_raw;
    use std::f64::consts::PI;

    #[test]
    fn projective_table_pattern() {
        let d = projective_matrix::<f64>().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!((d.get(i, j) - PI / 2.0).abs() < 1e-12);
                    assert!((d.get(i + 3, j + 3) - PI / 2.0).abs() < 1e-12);
                }
                let expected = match (i, j) {
                    (2, 2) => PI / 2.0,
                    (2, _) | (_, 2) => PI / 4.0,
                    _ => PI / 3.0,
                };
                assert!(
                    (d.get(i, j + 3) - expected).abs() < 1e-12,
                    "p{} q{}",
                    i + 1,
                    j + 1
                );
            }
        }
    }

    #[test]
    fn projective_form_is_pi_over_three() {
        let d = projective_matrix::<f64>().unwrap();
        let q = quadratic_form_raw(&d, &projective_coefficients()).unwrap();
        // 2 · (3π − 17π/6)
        assert!((q - PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn addendum_cross_distances_are_all_arccosh_nine() {
        let (xs, ys) = addendum_configuration::<f64>();
        for x in &xs {
            for y in &ys {
                assert!((hyperbolic_distance(x, y).unwrap() - 9f64.acosh()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn addendum_sums_match_printed_values() {
        let s = addendum_sums::<f64>().unwrap();
        assert!((s.within - 417.03).abs() < 0.02, "within = {}", s.within);
        assert!((s.cross - 415.77).abs() < 0.02, "cross = {}", s.cross);
        assert!((s.cross - 144.0 * 9f64.acosh()).abs() < 1e-9);
        assert!(s.difference > 0.0);
    }

    #[test]
    fn addendum_form_is_twice_the_difference() {
        // Ordered double sum counts each within pair twice and each cross pair twice (with sign -).
        let (pts, t) = addendum_points::<f64>();
        let d = build_distance_matrix(&pts, Metric::Hyperbolic).unwrap();
        let q = quadratic_form_raw(&d, &t).unwrap();
        let s = addendum_sums::<f64>().unwrap();
        assert!((q - 2.0 * s.difference).abs() < 1e-9);
    }
}
