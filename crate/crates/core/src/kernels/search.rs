//! Randomized search for configurations that are not of negative type.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::matrix::{build_distance_matrix, quadratic_form_raw, Metric, Point};
use super::negtype::{top_direction, DEFAULT_NEGTYPE_TOL};
use crate::algebra::HermitianSpace;
use crate::error::{Error, Result};
use crate::parallel::{stream, with_workers};
use crate::scalar::Real;
use crate::spaces::{random_point, HPoint, PPoint, SPoint};

/// Where configurations are drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SearchSpace {
    Hyperbolic { space: HermitianSpace },
    Projective { n: usize },
    Sphere { n: usize },
}

impl SearchSpace {
    pub fn metric(&self) -> Metric {
        match self {
            SearchSpace::Hyperbolic { .. } => Metric::Hyperbolic,
            SearchSpace::Projective { .. } => Metric::Projective,
            SearchSpace::Sphere { .. } => Metric::Sphere,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig<T> {
    pub space: SearchSpace,
    /// Points per configuration.
    pub points: usize,
    pub trials: usize,
    /// Sampling radius around `x₀` (hyperbolic only).
    pub radius: T,
    pub seed: u64,
    /// When set, trial 0 is this configuration and later trials jitter it.
    pub seed_configuration: Option<Vec<Point<T>>>,
    /// Coordinate noise scale for jittered trials.
    pub jitter: T,
    pub workers: Option<usize>,
    /// Violation threshold factor on `max|d_ij|`.
    pub tol: T,
}

impl<T: Real> SearchConfig<T> {
    pub fn new(space: SearchSpace, points: usize, trials: usize, radius: T, seed: u64) -> Self {
        Self {
            space,
            points,
            trials,
            radius,
            seed,
            seed_configuration: None,
            jitter: T::lit(0.05),
            workers: None,
            tol: T::lit(DEFAULT_NEGTYPE_TOL),
        }
    }
}

/// Best configuration found. `q` always comes from a direct double-sum evaluation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome<T> {
    pub points: Vec<Point<T>>,
    pub t: Vec<T>,
    pub q: T,
    pub trial: usize,
    /// `q > tol · max|d_ij|`.
    pub violation: bool,
    /// The matrix was rebuilt from `points` and `Q(t)` re-evaluated to the same value.
    pub verified: bool,
    pub trials_with_violation: usize,
}

fn jitter_point<T: Real, R: rand::Rng + ?Sized>(p: &Point<T>, scale: T, rng: &mut R) -> Point<T> {
    let noisy = |c: &[T], rng: &mut R| -> Vec<T> {
        c.iter()
            .map(|&v| v + scale * T::sample_normal(rng))
            .collect()
    };
    match p {
        Point::Hyperbolic(x) => {
            let reals: Vec<T> = x.coords().iter().flat_map(|c| c.coeffs()).collect();
            let moved = noisy(&reals, rng);
            HPoint::from_reals(x.space(), &moved)
                .map(Point::Hyperbolic)
                .unwrap_or_else(|_| p.clone())
        }
        Point::Projective(x) => PPoint::new(noisy(x.coords(), rng))
            .map(Point::Projective)
            .unwrap_or_else(|_| p.clone()),
        Point::Sphere(x) => SPoint::new(noisy(x.coords(), rng))
            .map(Point::Sphere)
            .unwrap_or_else(|_| p.clone()),
    }
}

fn draw<T: Real>(cfg: &SearchConfig<T>, trial: usize) -> Vec<Point<T>> {
    let mut rng = stream(cfg.seed, trial as u64);
    if let Some(base) = &cfg.seed_configuration {
        if trial == 0 {
            return base.clone();
        }
        return base
            .iter()
            .map(|p| jitter_point(p, cfg.jitter, &mut rng))
            .collect();
    }
    (0..cfg.points)
        .map(|_| match cfg.space {
            SearchSpace::Hyperbolic { space } => {
                Point::Hyperbolic(random_point(space, cfg.radius, &mut rng))
            }
            SearchSpace::Projective { n } => Point::Projective(PPoint::random(n, &mut rng)),
            SearchSpace::Sphere { n } => Point::Sphere(SPoint::random(n, &mut rng)),
        })
        .collect()
}

struct Candidate<T> {
    trial: usize,
    points: Vec<Point<T>>,
    t: Vec<T>,
    q: T,
    violation: bool,
}

/// Max-reduce by `(q, -trial)` so ties go to the earliest trial.
fn better<T: Real>(a: Candidate<T>, b: Candidate<T>) -> Candidate<T> {
    match a.q.partial_cmp(&b.q) {
        Some(std::cmp::Ordering::Greater) => a,
        Some(std::cmp::Ordering::Less) => b,
        _ if a.trial <= b.trial => a,
        _ => b,
    }
}

/// Evaluate `trials` configurations and keep the one with the largest `Q`.
pub fn violation_search<T: Real>(cfg: &SearchConfig<T>) -> Result<SearchOutcome<T>> {
    if let Some(base) = &cfg.seed_configuration {
        if base.len() != cfg.points {
            return Err(Error::DimensionMismatch {
                expected: cfg.points,
                actual: base.len(),
            });
        }
    }
    if cfg.points < 3 {
        return Err(Error::Unsupported(
            "violation search needs at least 3 points".into(),
        ));
    }
    if cfg.trials == 0 {
        return Err(Error::Unsupported(
            "violation search needs at least one trial".into(),
        ));
    }
    let metric = cfg.space.metric();
    let evaluate = |trial: usize| -> Result<Candidate<T>> {
        let points = draw(cfg, trial);
        let d = build_distance_matrix(&points, metric)?;
        let w = top_direction(&d)?;
        let violation = w.q > cfg.tol * d.max_abs();
        Ok(Candidate {
            trial,
            points,
            t: w.t.values().to_vec(),
            q: w.q,
            violation,
        })
    };
    let (best, hits) = with_workers(cfg.workers, || {
        (0..cfg.trials)
            .into_par_iter()
            .map(|i| {
                evaluate(i).map(|c| {
                    let hit = usize::from(c.violation);
                    (c, hit)
                })
            })
            .try_reduce_with(|(a, ha), (b, hb)| Ok((better(a, b), ha + hb)))
            .expect("at least one trial")
    })?;

    // Independent re-verification from the returned points.
    let d = build_distance_matrix(&best.points, metric)?;
    let q_again = quadratic_form_raw(&d, &best.t)?;
    let verified = (q_again - best.q).abs() <= T::lit(1e-9) * best.q.abs().max(T::one());
    Ok(SearchOutcome {
        points: best.points,
        t: best.t,
        q: best.q,
        trial: best.trial,
        violation: best.violation,
        verified,
        trials_with_violation: hits,
    })
}
