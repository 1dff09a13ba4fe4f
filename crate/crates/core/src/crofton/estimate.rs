//! Seeded Monte Carlo estimators for the Crofton identities.

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::carriers::{
    cosh_power_integral, draw_horosphere, draw_hyperplane, horosphere_measure, hyperplane_measure,
    lorentz, real_coords,
};
use super::predicates::{
    classify_point, classify_segment, intersections_along, Membership, SegmentOutcome,
};
use crate::algebra::{FVec, HermitianSpace};
use crate::error::{Error, Result};
use crate::parallel::{stream, with_workers};
use crate::scalar::{dot, random_unit_vector, Real};
use crate::spaces::{
    aligned_pair, geodesic_between, hyperbolic_distance, on_cut_locus, projective_distance,
    sphere_distance, HPoint, PPoint, SPoint,
};

/// Samples per work item. Batch `b` always draws from stream `b` of the seed.
pub const BATCH: u64 = 4096;

/// Default distance added to the farthest endpoint when restricting carriers to a ball.
pub const DEFAULT_MARGIN: f64 = 0.5;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub samples: u64,
    pub seed: u64,
    /// `None` uses the global rayon pool. Results do not depend on this.
    pub workers: Option<usize>,
    pub radius_margin: f64,
}

impl McConfig {
    pub fn new(samples: u64, seed: u64) -> Self {
        Self {
            samples,
            seed,
            workers: None,
            radius_margin: DEFAULT_MARGIN,
        }
    }

    pub fn with_workers(self, workers: Option<usize>) -> Self {
        Self { workers, ..self }
    }

    pub fn with_margin(self, radius_margin: f64) -> Self {
        Self {
            radius_margin,
            ..self
        }
    }

    fn batches(&self) -> u64 {
        self.samples.div_ceil(BATCH)
    }

    fn batch_len(&self, b: u64) -> u64 {
        BATCH.min(self.samples - b * BATCH)
    }
}

/// Special positions that make the sampled geodesic non-unique.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimateFlag {
    /// Projective pair at distance π/2; representatives use the canonical sign convention.
    CutLocus,
    /// Antipodal sphere pair; every half-space separates them.
    Antipodal,
}

/// A Monte Carlo estimate of `∫ n(h) dμ(h)` over a restricted carrier set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CroftonEstimate {
    pub d: f64,
    pub total_measure: f64,
    pub mean_count: f64,
    pub estimate: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
    /// `estimate / d`, or 0 when `d = 0`.
    pub ratio: f64,
    /// Samples with 0, 1 and 2 intersections.
    pub histogram: [u64; 3],
    /// Samples within the tolerance window of a carrier.
    pub boundary: u64,
    /// Samples dropped as carrier-contains-segment.
    pub excluded: u64,
    /// Predicate disagreements outside the tolerance window (symmetric-difference estimator only).
    pub disagreements: u64,
    pub flag: Option<EstimateFlag>,
}

impl CroftonEstimate {
    pub fn ratio_stderr(&self) -> f64 {
        if self.d > 0.0 {
            self.stderr / self.d
        } else {
            0.0
        }
    }

    /// `|a - b| ≤ sigmas · sqrt(σa² + σb²)`.
    pub fn agrees_with(&self, other: &Self, sigmas: f64) -> bool {
        (self.estimate - other.estimate).abs() <= sigmas * self.stderr.hypot(other.stderr)
    }

    fn short_circuit(total_measure: f64, seed: u64) -> Self {
        Self::from_tally(0.0, total_measure, seed, Tally::default())
    }

    fn from_tally(d: f64, total_measure: f64, seed: u64, t: Tally) -> Self {
        let n = t.samples as f64;
        let (mean, var) = if t.samples > 1 {
            let mean = t.total as f64 / n;
            let var = ((t.total_sq as f64 - n * mean * mean) / (n - 1.0)).max(0.0);
            (mean, var)
        } else {
            (t.total as f64 / n.max(1.0), 0.0)
        };
        let estimate = total_measure * mean;
        let stderr = if t.samples > 0 {
            total_measure * (var / n).sqrt()
        } else {
            0.0
        };
        Self {
            d,
            total_measure,
            mean_count: mean,
            estimate,
            stderr,
            samples: t.samples,
            seed,
            ratio: if d > 0.0 { estimate / d } else { 0.0 },
            histogram: t.histogram,
            boundary: t.boundary,
            excluded: t.excluded,
            disagreements: t.disagreements,
            flag: None,
        }
    }
}

/// Whether the ratios `estimate / d` agree pairwise within `sigmas` combined standard errors.
pub fn ratios_agree(estimates: &[CroftonEstimate], sigmas: f64) -> bool {
    estimates.iter().enumerate().all(|(i, a)| {
        estimates[i + 1..]
            .iter()
            .all(|b| (a.ratio - b.ratio).abs() <= sigmas * a.ratio_stderr().hypot(b.ratio_stderr()))
    })
}

#[derive(Clone, Copy, Debug, Default)]
struct Tally {
    samples: u64,
    total: u64,
    total_sq: u64,
    histogram: [u64; 3],
    boundary: u64,
    excluded: u64,
    disagreements: u64,
}

impl Tally {
    fn record(&mut self, count: u64) {
        self.samples += 1;
        self.total += count;
        self.total_sq += count * count;
        self.histogram[count.min(2) as usize] += 1;
    }

    fn merge(mut self, o: Self) -> Self {
        self.samples += o.samples;
        self.total += o.total;
        self.total_sq += o.total_sq;
        for (a, b) in self.histogram.iter_mut().zip(o.histogram) {
            *a += b;
        }
        self.boundary += o.boundary;
        self.excluded += o.excluded;
        self.disagreements += o.disagreements;
        self
    }
}

fn run<F>(cfg: &McConfig, sample: F) -> Tally
where
    F: Fn(&mut ChaCha8Rng, &mut Tally) + Sync,
{
    with_workers(cfg.workers, || {
        (0..cfg.batches())
            .into_par_iter()
            .map(|b| {
                let mut rng = stream(cfg.seed, b);
                let mut t = Tally::default();
                for _ in 0..cfg.batch_len(b) {
                    sample(&mut rng, &mut t);
                }
                t
            })
            .reduce(Tally::default, Tally::merge)
    })
}

fn same_space(a: HermitianSpace, b: HermitianSpace) -> Result<()> {
    if a.field != b.field {
        return Err(Error::FieldMismatch {
            expected: a.field,
            actual: b.field,
        });
    }
    if a.n != b.n {
        return Err(Error::DimensionMismatch {
            expected: a.n,
            actual: b.n,
        });
    }
    Ok(())
}

/// `max_i d(x₀, p_i) + margin`.
pub fn restriction_radius<T: Real>(points: &[&HPoint<T>], margin: f64) -> Result<T> {
    let mut r = T::zero();
    for p in points {
        let base = HPoint::base(p.space());
        r = r.max(hyperbolic_distance(&base, p)?);
    }
    Ok(r + T::lit(margin))
}

/// A pair `(x₀, y)` at distance `d`, with `y` along the first basis direction.
pub fn anchored_pair<T: Real>(space: HermitianSpace, d: T) -> Result<(HPoint<T>, HPoint<T>)> {
    let mut dir = vec![T::zero(); space.field.real_dim() * space.n];
    dir[0] = T::one();
    Ok((HPoint::base(space), HPoint::from_polar(space, d, &dir)?))
}

/// Shared set-up for the two hyperplane estimators.
struct HyperplaneSetup<T> {
    n: usize,
    r: T,
    half_mass: T,
    d: f64,
    x: Vec<T>,
    y: Vec<T>,
    w: Vec<T>,
    len: T,
}

impl<T: Real> HyperplaneSetup<T> {
    /// `None` when `x = y`.
    fn new(x: &HPoint<T>, y: &HPoint<T>, cfg: &McConfig) -> Result<(f64, Option<Self>)> {
        same_space(x.space(), y.space())?;
        let xr = real_coords(x)?;
        let yr = real_coords(y)?;
        let n = x.space().n;
        let r: T = restriction_radius(&[x, y], cfg.radius_margin)?;
        let measure = hyperplane_measure(n, r).as_f64();
        let d = hyperbolic_distance(x, y)?;
        if d == T::zero() {
            return Ok((measure, None));
        }
        let seg = geodesic_between(x, y)?;
        let flip = x.coords()[0].re() < T::zero();
        let w = seg
            .tangent()
            .iter()
            .map(|c| if flip { -c.re() } else { c.re() })
            .collect();
        let setup = Self {
            n,
            r,
            half_mass: cosh_power_integral(n - 1, r),
            d: d.as_f64(),
            x: xr,
            y: yr,
            w,
            len: seg.length(),
        };
        Ok((measure, Some(setup)))
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> Vec<T> {
        draw_hyperplane(self.n, self.r, self.half_mass, rng)
    }

    fn segment(&self, u: &[T]) -> SegmentOutcome {
        let (fx, fw, fy) = (
            lorentz(&self.x, u),
            lorentz(&self.w, u),
            lorentz(&self.y, u),
        );
        classify_segment(fx, fw, fy, &self.x, &self.y, u, self.len)
    }
}

/// Measure of hyperplanes meeting `[xy]` in `H^n_R`.
pub fn estimate_m<T: Real>(
    x: &HPoint<T>,
    y: &HPoint<T>,
    cfg: &McConfig,
) -> Result<CroftonEstimate> {
    let (measure, setup) = HyperplaneSetup::new(x, y, cfg)?;
    let Some(s) = setup else {
        return Ok(CroftonEstimate::short_circuit(measure, cfg.seed));
    };
    let tally = run(cfg, |rng, t| {
        let u = s.draw(rng);
        match s.segment(&u) {
            SegmentOutcome::Transversal => t.record(1),
            SegmentOutcome::Touching => {
                t.boundary += 1;
                t.record(1)
            }
            SegmentOutcome::Contained => {
                t.excluded += 1;
                t.record(0)
            }
            SegmentOutcome::Disjoint => t.record(0),
        }
    });
    Ok(CroftonEstimate::from_tally(s.d, measure, cfg.seed, tally))
}

/// Measure of the half-spaces containing exactly one of `x`, `y`.
///
/// Half-spaces are drawn through the same hyperplane samples as [`estimate_m`],
/// each orientation carrying half the weight, so on shared samples the two
/// estimators count the same event. Every sample also runs the segment test;
/// mismatches outside the boundary window go to `disagreements`.
pub fn estimate_symmetric_difference<T: Real>(
    x: &HPoint<T>,
    y: &HPoint<T>,
    cfg: &McConfig,
) -> Result<CroftonEstimate> {
    let (measure, setup) = HyperplaneSetup::new(x, y, cfg)?;
    let Some(s) = setup else {
        return Ok(CroftonEstimate::short_circuit(measure, cfg.seed));
    };
    let tally = run(cfg, |rng, t| {
        let u = s.draw(rng);
        let mx = classify_point(lorentz(&s.x, &u), &s.x, &u);
        let my = classify_point(lorentz(&s.y, &u), &s.y, &u);
        let differ = mx.indicator() != my.indicator();
        t.record(u64::from(differ));
        if mx == Membership::Boundary || my == Membership::Boundary {
            t.boundary += 1;
            return;
        }
        match s.segment(&u) {
            SegmentOutcome::Transversal if !differ => t.disagreements += 1,
            SegmentOutcome::Disjoint if differ => t.disagreements += 1,
            SegmentOutcome::Touching | SegmentOutcome::Contained => t.boundary += 1,
            _ => {}
        }
    });
    Ok(CroftonEstimate::from_tally(s.d, measure, cfg.seed, tally))
}

/// Half-space indicator vectors over a shared sample of `cfg.samples` hyperplanes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfspaceFeatures {
    /// One row per input point.
    pub features: Vec<Vec<bool>>,
    pub total_measure: f64,
    pub samples: u64,
}

impl HalfspaceFeatures {
    /// `‖χ_i - χ_j‖²` under the sampled measure.
    pub fn distance_sq(&self, i: usize, j: usize) -> f64 {
        let diff = self.features[i]
            .iter()
            .zip(&self.features[j])
            .filter(|(a, b)| a != b)
            .count();
        self.total_measure * (diff as f64 / self.samples as f64)
    }
}

fn shared_samples<U, F>(cfg: &McConfig, draw: F) -> Vec<U>
where
    U: Send,
    F: Fn(&mut ChaCha8Rng) -> U + Sync,
{
    with_workers(cfg.workers, || {
        (0..cfg.batches())
            .into_par_iter()
            .flat_map_iter(|b| {
                let mut rng = stream(cfg.seed, b);
                (0..cfg.batch_len(b))
                    .map(|_| draw(&mut rng))
                    .collect::<Vec<_>>()
            })
            .collect()
    })
}

/// Half-space features of points in `H^n_R`, with hyperplanes restricted to `B_radius(x₀)`.
///
/// With `radius = restriction_radius(&[x, y], margin)` and the same config, the
/// distance between the rows of `x` and `y` equals `estimate_symmetric_difference(x, y)`.
pub fn halfspace_features<T: Real>(
    points: &[HPoint<T>],
    radius: T,
    cfg: &McConfig,
) -> Result<HalfspaceFeatures> {
    let first = points
        .first()
        .ok_or(Error::InvalidMatrix("no points".into()))?;
    let n = first.space().n;
    let coords = points
        .iter()
        .map(|p| {
            same_space(first.space(), p.space())?;
            real_coords(p)
        })
        .collect::<Result<Vec<_>>>()?;
    let half_mass = cosh_power_integral(n - 1, radius);
    let rows: Vec<Vec<bool>> = shared_samples(cfg, |rng| {
        let u = draw_hyperplane(n, radius, half_mass, rng);
        coords
            .iter()
            .map(|x| classify_point(lorentz(x, &u), x, &u).indicator())
            .collect::<Vec<bool>>()
    });
    let features = (0..points.len())
        .map(|i| rows.iter().map(|r| r[i]).collect())
        .collect();
    Ok(HalfspaceFeatures {
        features,
        total_measure: hyperplane_measure(n, radius).as_f64(),
        samples: cfg.samples,
    })
}

/// Mean number of horosphere crossings of `[xy]` times the restricted horosphere measure.
pub fn estimate_horosphere_crofton<T: Real>(
    x: &HPoint<T>,
    y: &HPoint<T>,
    cfg: &McConfig,
) -> Result<CroftonEstimate> {
    same_space(x.space(), y.space())?;
    let space = x.space();
    let r: T = restriction_radius(&[x, y], cfg.radius_margin)?;
    let measure = horosphere_measure(space, r).as_f64();
    let d = hyperbolic_distance(x, y)?;
    if d == T::zero() {
        return Ok(CroftonEstimate::short_circuit(measure, cfg.seed));
    }
    let seg = geodesic_between(x, y)?;
    let (base, w, len): (FVec<T>, FVec<T>, T) = (
        seg.base().coords().to_vec(),
        seg.tangent().to_vec(),
        seg.length(),
    );
    let tally = run(cfg, |rng, t| {
        let xi = draw_horosphere(space, r, rng);
        match intersections_along(&xi, &base, &w, len) {
            Ok(c) => t.record(c as u64),
            Err(_) => {
                t.excluded += 1;
                t.record(0)
            }
        }
    });
    Ok(CroftonEstimate::from_tally(
        d.as_f64(),
        measure,
        cfg.seed,
        tally,
    ))
}

/// Fraction of hyperplanes `u^⊥` of `P^n_R` meeting the short segment `[xy]`; expected `d/π`.
pub fn projective_crofton_estimate<T: Real>(
    x: &PPoint<T>,
    y: &PPoint<T>,
    cfg: &McConfig,
) -> Result<CroftonEstimate> {
    let d = projective_distance(x, y)?;
    if d == T::zero() {
        return Ok(CroftonEstimate::short_circuit(1.0, cfg.seed));
    }
    let (a, b) = aligned_pair(x, y);
    let (a, b) = (a.coords().to_vec(), b.coords().to_vec());
    let dim = a.len();
    let tally = run(cfg, |rng, t| {
        let u: Vec<T> = random_unit_vector(dim, rng);
        let prod = dot(&a, &u) * dot(&b, &u);
        if prod == T::zero() {
            t.boundary += 1;
        }
        t.record(u64::from(prod < T::zero()));
    });
    let mut est = CroftonEstimate::from_tally(d.as_f64(), 1.0, cfg.seed, tally);
    if on_cut_locus(x, y) {
        est.flag = Some(EstimateFlag::CutLocus);
    }
    Ok(est)
}

/// Fraction of half-spaces `{v · u > 0}` of `S^n` containing exactly one of `x`, `y`; expected `d/π`.
pub fn sphere_halfspace_crofton<T: Real>(
    x: &SPoint<T>,
    y: &SPoint<T>,
    cfg: &McConfig,
) -> Result<CroftonEstimate> {
    let d = sphere_distance(x, y)?;
    if d == T::zero() {
        return Ok(CroftonEstimate::short_circuit(1.0, cfg.seed));
    }
    let (a, b) = (x.coords().to_vec(), y.coords().to_vec());
    let tally = run(cfg, |rng, t| {
        let u: Vec<T> = random_unit_vector(a.len(), rng);
        let (sa, sb) = (dot(&a, &u), dot(&b, &u));
        if sa == T::zero() || sb == T::zero() {
            t.boundary += 1;
        }
        t.record(u64::from((sa > T::zero()) != (sb > T::zero())));
    });
    let mut est = CroftonEstimate::from_tally(d.as_f64(), 1.0, cfg.seed, tally);
    if T::one() + dot(&a, &b) <= T::norm_tol() {
        est.flag = Some(EstimateFlag::Antipodal);
    }
    Ok(est)
}

/// Hemisphere indicators `[v · u > 0]` over a shared uniform sample of `u`.
pub fn sphere_features<T: Real>(points: &[SPoint<T>], cfg: &McConfig) -> Result<HalfspaceFeatures> {
    let first = points
        .first()
        .ok_or(Error::InvalidMatrix("no points".into()))?;
    let dim = first.coords().len();
    if let Some(p) = points.iter().find(|p| p.coords().len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            actual: p.coords().len(),
        });
    }
    let rows: Vec<Vec<bool>> = shared_samples(cfg, |rng| {
        let u: Vec<T> = random_unit_vector(dim, rng);
        points
            .iter()
            .map(|p| dot(p.coords(), &u) > T::zero())
            .collect::<Vec<bool>>()
    });
    let features = (0..points.len())
        .map(|i| rows.iter().map(|r| r[i]).collect())
        .collect();
    Ok(HalfspaceFeatures {
        features,
        total_measure: 1.0,
        samples: cfg.samples,
    })
}
