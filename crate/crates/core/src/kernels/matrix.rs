use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spaces::{
    hyperbolic_distance, jordan_trace_distance, projective_distance, sphere_distance, HPoint,
    PPoint, SPoint,
};

/// Symmetric, zero-diagonal, non-negative `m×m` matrix of pairwise distances.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistanceMatrix<T> {
    m: usize,
    entries: Vec<T>,
}

impl<T: Real> DistanceMatrix<T> {
    /// Validate a row-major `m×m` matrix. Asymmetry within tolerance is averaged away.
    pub fn new(m: usize, entries: Vec<T>) -> Result<Self> {
        if entries.len() != m * m {
            return Err(Error::DimensionMismatch {
                expected: m * m,
                actual: entries.len(),
            });
        }
        let scale = entries.iter().fold(T::one(), |acc, v| acc.max(v.abs()));
        let tol = T::arith_tol() * scale;
        let mut e = entries;
        for i in 0..m {
            if !e[i * m + i].is_finite() || e[i * m + i].abs() > tol {
                return Err(Error::InvalidMatrix(format!(
                    "diagonal entry ({i},{i}) is nonzero"
                )));
            }
            e[i * m + i] = T::zero();
            for j in (i + 1)..m {
                let (a, b) = (e[i * m + j], e[j * m + i]);
                if !a.is_finite() || !b.is_finite() {
                    return Err(Error::InvalidMatrix(format!(
                        "entry ({i},{j}) is not finite"
                    )));
                }
                if (a - b).abs() > tol {
                    return Err(Error::InvalidMatrix(format!(
                        "entries ({i},{j}) and ({j},{i}) differ"
                    )));
                }
                if a < -tol || b < -tol {
                    return Err(Error::InvalidMatrix(format!("entry ({i},{j}) is negative")));
                }
                let v = ((a + b) / T::lit(2.0)).max(T::zero());
                e[i * m + j] = v;
                e[j * m + i] = v;
            }
        }
        Ok(Self { m, entries: e })
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let m = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                actual: bad.len(),
            });
        }
        Self::new(m, rows.concat())
    }

    /// Build from an upper-triangle generator `f(i, j)`, `i < j`.
    pub fn from_fn(m: usize, mut f: impl FnMut(usize, usize) -> Result<T>) -> Result<Self> {
        let mut entries = vec![T::zero(); m * m];
        for i in 0..m {
            for j in (i + 1)..m {
                let v = f(i, j)?;
                entries[i * m + j] = v;
                entries[j * m + i] = v;
            }
        }
        Self::new(m, entries)
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries[i * self.m + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.m..(i + 1) * self.m]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.m).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    /// `max |d_ij|`.
    pub fn max_abs(&self) -> T {
        self.entries
            .iter()
            .fold(T::zero(), |acc, v| acc.max(v.abs()))
    }

    pub fn scaled(&self, c: T) -> Result<Self> {
        Self::new(self.m, self.entries.iter().map(|&v| v * c).collect())
    }

    /// Matrix of `perm`-relabeled points: new index `k` is old index `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                actual: perm.len(),
            });
        }
        Self::from_fn(self.m, |i, j| Ok(self.get(perm[i], perm[j])))
    }

    /// Principal submatrix on `idx`.
    pub fn submatrix(&self, idx: &[usize]) -> Result<Self> {
        Self::from_fn(idx.len(), |i, j| Ok(self.get(idx[i], idx[j])))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SumConstraint {
    SumZero,
    SumOne,
}

impl SumConstraint {
    pub fn target<T: Real>(self) -> T {
        match self {
            SumConstraint::SumZero => T::zero(),
            SumConstraint::SumOne => T::one(),
        }
    }
}

/// Coefficients `t_i` with a declared sum constraint.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientVector<T> {
    t: Vec<T>,
    constraint: SumConstraint,
}

impl<T: Real> CoefficientVector<T> {
    pub fn new(t: Vec<T>, constraint: SumConstraint) -> Result<Self> {
        let sum = t.iter().fold(T::zero(), |a, &b| a + b);
        let scale = t.iter().fold(T::one(), |a, b| a.max(b.abs()));
        if (sum - constraint.target::<T>()).abs() > T::arith_tol() * scale {
            return Err(Error::InvalidCoefficients(format!(
                "sum is {sum}, expected {}",
                constraint.target::<T>()
            )));
        }
        Ok(Self { t, constraint })
    }

    /// Integer coefficients; the sum is checked exactly.
    pub fn from_integers(t: &[i64], constraint: SumConstraint) -> Result<Self> {
        let sum: i64 = t.iter().sum();
        let target = match constraint {
            SumConstraint::SumZero => 0,
            SumConstraint::SumOne => 1,
        };
        if sum != target {
            return Err(Error::InvalidCoefficients(format!(
                "integer sum is {sum}, expected {target}"
            )));
        }
        Ok(Self {
            t: t.iter().map(|&v| T::lit(v as f64)).collect(),
            constraint,
        })
    }

    /// Project an arbitrary vector onto the constraint by a uniform shift.
    pub fn projected(mut t: Vec<T>, constraint: SumConstraint) -> Self {
        let m = T::lit(t.len().max(1) as f64);
        let sum = t.iter().fold(T::zero(), |a, &b| a + b);
        let shift = (sum - constraint.target::<T>()) / m;
        t.iter_mut().for_each(|v| *v = *v - shift);
        Self { t, constraint }
    }

    pub fn values(&self) -> &[T] {
        &self.t
    }

    pub fn constraint(&self) -> SumConstraint {
        self.constraint
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn sum(&self) -> T {
        self.t.iter().fold(T::zero(), |a, &b| a + b)
    }
}

fn ordered_double_sum<T: Real>(d: &DistanceMatrix<T>, t: &[T]) -> T {
    let mut acc = T::zero();
    for (i, &ti) in t.iter().enumerate() {
        let row = d.row(i);
        let inner = t
            .iter()
            .zip(row)
            .fold(T::zero(), |a, (&tj, &dij)| a + tj * dij);
        acc = acc + ti * inner;
    }
    acc
}

/// `Q(t) = Σ_{i,j} t_i t_j d_ij` over ordered pairs.
pub fn quadratic_form<T: Real>(d: &DistanceMatrix<T>, t: &CoefficientVector<T>) -> Result<T> {
    quadratic_form_raw(d, t.values())
}

/// [`quadratic_form`] on a bare slice.
pub fn quadratic_form_raw<T: Real>(d: &DistanceMatrix<T>, t: &[T]) -> Result<T> {
    if t.len() != d.len() {
        return Err(Error::DimensionMismatch {
            expected: d.len(),
            actual: t.len(),
        });
    }
    Ok(ordered_double_sum(d, t))
}

/// A point of any of the supported spaces.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "space", content = "point", rename_all = "kebab-case")]
pub enum Point<T> {
    Hyperbolic(HPoint<T>),
    Projective(PPoint<T>),
    Sphere(SPoint<T>),
}

/// Distance used to build a matrix from a point list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Metric {
    Hyperbolic,
    Projective,
    Sphere,
    /// Trace-form distance between rank-one projections on `P^n_R`.
    JordanTrace,
}

impl Metric {
    /// Whether the metric is known to be of negative type on every finite subset.
    ///
    /// Quaternionic hyperbolic space is built with the same `Metric::Hyperbolic`
    /// tag, so callers must also look at the field.
    pub fn claims_negative_type(self) -> bool {
        !matches!(self, Metric::Projective)
    }
}

fn distance<T: Real>(a: &Point<T>, b: &Point<T>, metric: Metric) -> Result<T> {
    match (metric, a, b) {
        (Metric::Hyperbolic, Point::Hyperbolic(x), Point::Hyperbolic(y)) => {
            hyperbolic_distance(x, y)
        }
        (Metric::Projective, Point::Projective(x), Point::Projective(y)) => {
            projective_distance(x, y)
        }
        (Metric::JordanTrace, Point::Projective(x), Point::Projective(y)) => {
            jordan_trace_distance(x, y)
        }
        (Metric::Sphere, Point::Sphere(x), Point::Sphere(y)) => sphere_distance(x, y),
        _ => Err(Error::MixedSpaces),
    }
}

fn same_space<T: Real>(a: &Point<T>, b: &Point<T>) -> bool {
    match (a, b) {
        (Point::Hyperbolic(x), Point::Hyperbolic(y)) => x.space() == y.space(),
        (Point::Projective(x), Point::Projective(y)) => x.dim() == y.dim(),
        (Point::Sphere(x), Point::Sphere(y)) => x.dim() == y.dim(),
        _ => false,
    }
}

/// Pairwise distances of a homogeneous point list under `metric`.
pub fn build_distance_matrix<T: Real>(
    points: &[Point<T>],
    metric: Metric,
) -> Result<DistanceMatrix<T>> {
    if let Some(first) = points.first() {
        if points.iter().any(|p| !same_space(first, p)) {
            return Err(Error::MixedSpaces);
        }
        // Also rejects a metric that does not fit the point type, even for a single point.
        if points.len() == 1 {
            distance(first, first, metric)?;
        }
    }
    DistanceMatrix::from_fn(points.len(), |i, j| {
        distance(&points[i], &points[j], metric)
    })
}
