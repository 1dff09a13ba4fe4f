//! Bounded enumeration of hypermetric inequalities `Q(t) ≤ 0`, `t ∈ Z^m`, `Σ t = 1`.

use serde::{Deserialize, Serialize};

use super::matrix::{quadratic_form_raw, DistanceMatrix};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Enumeration limits. The default budget admits `m = 8` points at bound 3.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanOptions {
    /// Maximum number of candidate vectors `(2B+1)^m`.
    pub budget: u128,
    /// A vector is a violation when `Q(t) > tol · max|d_ij|`.
    pub tol: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            budget: 7u128.pow(8),
            tol: 1e-9,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HypermetricViolation<T> {
    pub t: Vec<i64>,
    pub q: T,
}

fn candidates(m: usize, bound: u32) -> u128 {
    (2 * bound as u128 + 1)
        .checked_pow(m as u32)
        .unwrap_or(u128::MAX)
}

/// All integer `t` with `|t_i| ≤ bound`, `Σ t = 1` and `Q(t) > tol`.
pub fn hypermetric_scan<T: Real>(
    d: &DistanceMatrix<T>,
    bound: u32,
) -> Result<Vec<HypermetricViolation<T>>> {
    hypermetric_scan_with(d, bound, &ScanOptions::default())
}

pub fn hypermetric_scan_with<T: Real>(
    d: &DistanceMatrix<T>,
    bound: u32,
    opts: &ScanOptions,
) -> Result<Vec<HypermetricViolation<T>>> {
    let m = d.len();
    if m == 0 {
        return Ok(Vec::new());
    }
    let count = candidates(m, bound);
    if count > opts.budget {
        let suggested = (0..bound)
            .rev()
            .find(|&b| candidates(m, b) <= opts.budget)
            .unwrap_or(0);
        return Err(Error::BudgetExceeded {
            count,
            budget: opts.budget,
            suggested_bound: suggested,
        });
    }
    let b = bound as i64;
    let threshold = T::lit(opts.tol) * d.max_abs();
    let mut out = Vec::new();
    // Odometer over the first m-1 coordinates; the last one is fixed by Σ t = 1.
    let mut head = vec![-b; m - 1];
    let mut t = vec![0i64; m];
    let mut tf = vec![T::zero(); m];
    loop {
        let last = 1 - head.iter().sum::<i64>();
        if last.abs() <= b {
            t[..m - 1].copy_from_slice(&head);
            t[m - 1] = last;
            for (f, &v) in tf.iter_mut().zip(&t) {
                *f = T::lit(v as f64);
            }
            let q = quadratic_form_raw(d, &tf)?;
            if q > threshold {
                out.push(HypermetricViolation { t: t.clone(), q });
            }
        }
        let mut k = 0;
        loop {
            if k == head.len() {
                return Ok(out);
            }
            if head[k] < b {
                head[k] += 1;
                break;
            }
            head[k] = -b;
            k += 1;
        }
    }
}
