//! Intersection predicates between segments and carriers.

use serde::{Deserialize, Serialize};

use super::carriers::{real_coords, Horosphere, Hyperplane, OrientedHalfSpace};
use crate::algebra::{coeff_norm, form, FieldScalar};
use crate::error::{Error, Result};
use crate::scalar::{euclid_norm, Real};
use crate::spaces::{GeodesicSegment, HPoint};

/// Relative width of the "on the carrier" window for sign tests.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// How a hyperplane meets a segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SegmentOutcome {
    /// The endpoints lie strictly on opposite sides.
    Transversal,
    /// One endpoint lies on the hyperplane.
    Touching,
    Disjoint,
    /// Both endpoints lie on the hyperplane; excluded from counts.
    Contained,
}

impl SegmentOutcome {
    pub fn meets(self) -> bool {
        matches!(self, SegmentOutcome::Transversal | SegmentOutcome::Touching)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Membership {
    Inside,
    Outside,
    Boundary,
}

impl Membership {
    /// Indicator value; the boundary counts as outside.
    pub fn indicator(self) -> bool {
        self == Membership::Inside
    }
}

fn window<T: Real>(x: &[T], u: &[T]) -> T {
    T::lit(BOUNDARY_TOL) * euclid_norm(x) * euclid_norm(u)
}

/// Sign of `<x, u>` with a boundary window.
pub(crate) fn classify_point<T: Real>(value: T, x: &[T], u: &[T]) -> Membership {
    if value.abs() <= window(x, u) {
        Membership::Boundary
    } else if value > T::zero() {
        Membership::Inside
    } else {
        Membership::Outside
    }
}

/// Segment test against `{<·, u> = 0}` given along-geodesic data.
///
/// `fx = <x, u>`, `fw = <w, u>` for the segment `x cosh s + w sinh s`, `s ∈ [0, len]`,
/// and `fy = <y, u>` at the far endpoint. The interior crossing is located by
/// solving `fx cosh s + fw sinh s = 0` rather than by comparing endpoint signs.
pub(crate) fn classify_segment<T: Real>(
    fx: T,
    fw: T,
    fy: T,
    x: &[T],
    y: &[T],
    u: &[T],
    len: T,
) -> SegmentOutcome {
    let on_x = fx.abs() <= window(x, u);
    let on_y = fy.abs() <= window(y, u);
    match (on_x, on_y) {
        (true, true) => SegmentOutcome::Contained,
        (true, false) | (false, true) => SegmentOutcome::Touching,
        (false, false) => match count_cosh_roots(fx, fw, T::zero(), T::zero(), len) {
            Ok(r) if r.count() > 0 => SegmentOutcome::Transversal,
            _ => SegmentOutcome::Disjoint,
        },
    }
}

/// Whether the hyperplane meets the segment, with touching and containment reported separately.
pub fn hyperplane_meets_segment<T: Real>(
    s: &Hyperplane<T>,
    seg: &GeodesicSegment<T>,
) -> Result<SegmentOutcome> {
    let x = real_coords(seg.base())?;
    let y = real_coords(&seg.end())?;
    let u = s.normal();
    if u.len() != x.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            actual: u.len(),
        });
    }
    // Tangent in the same sign convention as `x`.
    let flip = seg.base().coords()[0].re() < T::zero();
    let w: Vec<T> = seg
        .tangent()
        .iter()
        .map(|c| if flip { -c.re() } else { c.re() })
        .collect();
    Ok(classify_segment(
        s.eval(&x),
        s.eval(&w),
        s.eval(&y),
        &x,
        &y,
        u,
        seg.length(),
    ))
}

/// Membership of `x` in `{<x, u> > 0}`.
pub fn halfspace_contains<T: Real>(h: &OrientedHalfSpace<T>, x: &HPoint<T>) -> Result<Membership> {
    let v = real_coords(x)?;
    let u = h.normal();
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: v.len(),
            actual: u.len(),
        });
    }
    Ok(classify_point(h.boundary().eval(&v), &v, u))
}

/// Roots of `α cosh t + β sinh t = γ` in a closed interval, ascending.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoshRoots<T> {
    roots: [T; 2],
    count: usize,
}

impl<T: Real> CoshRoots<T> {
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn roots(&self) -> &[T] {
        &self.roots[..self.count]
    }
}

/// Count solutions of `α cosh t + β sinh t = γ` on `[s0, s1]`.
///
/// With `u = e^t` the equation is `(α+β)u² - 2γu + (α-β) = 0`; only positive `u`
/// give real `t`. A double root (tangency) is counted once.
pub fn count_cosh_roots<T: Real>(
    alpha: T,
    beta: T,
    gamma: T,
    s0: T,
    s1: T,
) -> Result<CoshRoots<T>> {
    if alpha == T::zero() && beta == T::zero() {
        return Err(Error::DegenerateRoots);
    }
    let p = alpha + beta;
    let m = alpha - beta;
    let disc = gamma * gamma - p * m;
    let mut us = [T::nan(); 2];
    if disc < T::zero() {
        // no real u
    } else if disc == T::zero() {
        if p != T::zero() {
            us[0] = gamma / p;
        }
    } else {
        let sq = disc.sqrt();
        let q = if gamma >= T::zero() {
            gamma + sq
        } else {
            gamma - sq
        };
        if p != T::zero() {
            us[0] = q / p;
        }
        if q != T::zero() {
            us[1] = m / q;
        }
    }
    let mut out = CoshRoots {
        roots: [T::zero(); 2],
        count: 0,
    };
    for u in us {
        if !(u > T::zero()) || !u.is_finite() {
            continue;
        }
        let t = u.ln();
        if t < s0 || t > s1 {
            continue;
        }
        if out.count == 1 && out.roots[0] == t {
            continue;
        }
        out.roots[out.count] = t;
        out.count += 1;
    }
    if out.count == 2 && out.roots[0] > out.roots[1] {
        out.roots.swap(0, 1);
    }
    Ok(out)
}

/// `(α, β, γ)` of `|a cosh s + b sinh s|² = α cosh 2s + β sinh 2s + γ`.
pub(crate) fn horosphere_coefficients<T: Real>(a: FieldScalar<T>, b: FieldScalar<T>) -> (T, T, T) {
    let (na, nb) = (a.norm_sqr(), b.norm_sqr());
    let half = T::lit(0.5);
    ((na + nb) * half, a.real_inner(&b), (na - nb) * half)
}

/// Number of points where the horosphere meets the segment (0, 1 or 2).
pub fn count_horosphere_intersections<T: Real>(
    h: &Horosphere<T>,
    seg: &GeodesicSegment<T>,
) -> Result<usize> {
    if h.space() != seg.space() {
        return Err(Error::DimensionMismatch {
            expected: seg.space().real_len(),
            actual: h.space().real_len(),
        });
    }
    intersections_along(h.xi(), seg.base().coords(), seg.tangent(), seg.length())
}

pub(crate) fn intersections_along<T: Real>(
    xi: &[FieldScalar<T>],
    x: &[FieldScalar<T>],
    w: &[FieldScalar<T>],
    len: T,
) -> Result<usize> {
    let a = form(x, xi);
    let b = form(w, xi);
    let (alpha, beta, gamma) = horosphere_coefficients(a, b);
    if alpha == T::zero() && beta == T::zero() {
        return Err(Error::Inconsistent(format!(
            "null pairing with xi of norm {}",
            coeff_norm(xi)
        )));
    }
    Ok(count_cosh_roots(alpha, beta, T::one() - gamma, T::zero(), len + len)?.count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Field, HermitianSpace, Quaternion};
    use crate::crofton::carriers::sample_horosphere;
    use crate::parallel::stream;
    use crate::spaces::{geodesic_between, random_point, GeodesicSegment};
    use num_complex::Complex;
    use rand::Rng;

    fn plane(n: usize) -> HermitianSpace {
        HermitianSpace::new(Field::Real, n).unwrap()
    }

    fn pt(n: usize, c: &[f64]) -> HPoint<f64> {
        HPoint::from_reals(plane(n), c).unwrap()
    }

    #[test]
    fn coordinate_hyperplane_crosses_small_segment() {
        let eps = 1e-3;
        let x = pt(2, &[1.0, 0.0, eps]);
        let y = pt(2, &[1.0, 0.0, -eps]);
        let seg = geodesic_between(&x, &y).unwrap();
        let s = Hyperplane::coordinate(2);
        assert_eq!(
            hyperplane_meets_segment(&s, &seg).unwrap(),
            SegmentOutcome::Transversal
        );
        assert_eq!(
            hyperplane_meets_segment(&s.flipped(), &seg).unwrap(),
            SegmentOutcome::Transversal
        );
    }

    #[test]
    fn segment_on_one_side_misses() {
        let x = pt(2, &[2.0, 0.3, 1.0]);
        let y = pt(2, &[3.0, -0.5, 2.0]);
        let seg = geodesic_between(&x, &y).unwrap();
        assert_eq!(
            hyperplane_meets_segment(&Hyperplane::coordinate(2), &seg).unwrap(),
            SegmentOutcome::Disjoint
        );
    }

    #[test]
    fn endpoint_on_hyperplane_touches() {
        let x = pt(2, &[2.0, 0.3, 1.0]);
        let y = pt(2, &[1.5, 0.7, 0.0]);
        let seg = geodesic_between(&x, &y).unwrap();
        let out = hyperplane_meets_segment(&Hyperplane::coordinate(2), &seg).unwrap();
        assert_eq!(out, SegmentOutcome::Touching);
        assert!(out.meets());
    }

    #[test]
    fn segment_inside_hyperplane_is_contained() {
        let x = pt(2, &[1.0, 0.0, 0.0]);
        let y = pt(2, &[2.0, 3f64.sqrt(), 0.0]);
        let seg = geodesic_between(&x, &y).unwrap();
        let out = hyperplane_meets_segment(&Hyperplane::coordinate(2), &seg).unwrap();
        assert_eq!(out, SegmentOutcome::Contained);
        assert!(!out.meets());
    }

    #[test]
    fn sign_symmetry_on_random_data() {
        let mut rng = stream(4, 0);
        for _ in 0..2000 {
            let x = random_point(plane(3), 2.0, &mut rng);
            let y = random_point(plane(3), 2.0, &mut rng);
            let seg = geodesic_between(&x, &y).unwrap();
            let s = crate::crofton::carriers::sample_hyperplane(3, 2.5, &mut rng);
            assert_eq!(
                hyperplane_meets_segment(&s, &seg).unwrap(),
                hyperplane_meets_segment(&s.flipped(), &seg).unwrap()
            );
            // Sign change of the endpoint values agrees with the along-geodesic solve.
            let (fx, fy) = (
                s.eval(&real_coords(&x).unwrap()),
                s.eval(&real_coords(&y).unwrap()),
            );
            let out = hyperplane_meets_segment(&s, &seg).unwrap();
            if out == SegmentOutcome::Transversal || out == SegmentOutcome::Disjoint {
                assert_eq!(out == SegmentOutcome::Transversal, fx * fy < 0.0);
            }
        }
    }

    #[test]
    fn halfspace_examples() {
        let h0 = OrientedHalfSpace::from(Hyperplane::<f64>::coordinate(2));
        assert_eq!(
            halfspace_contains(&h0, &HPoint::base(plane(2))).unwrap(),
            Membership::Boundary
        );
        let x = pt(2, &[2f64.sqrt(), 0.0, 1.0]);
        assert_eq!(halfspace_contains(&h0, &x).unwrap(), Membership::Inside);
        assert_eq!(
            halfspace_contains(&h0.complement(), &x).unwrap(),
            Membership::Outside
        );
        // The representative sign does not matter.
        let neg = pt(2, &[-(2f64.sqrt()), 0.0, -1.0]);
        assert_eq!(halfspace_contains(&h0, &neg).unwrap(), Membership::Inside);
        let c = HermitianSpace::new(Field::Complex, 2).unwrap();
        assert!(matches!(
            halfspace_contains(&h0, &HPoint::base(c)),
            Err(Error::RequiresRealField(_))
        ));
    }

    #[test]
    fn cosh_root_examples() {
        let r = count_cosh_roots(1.0, 0.0, 2.0, -2.0, 2.0).unwrap();
        assert_eq!(r.count(), 2);
        assert!((r.roots()[0] + 2f64.acosh()).abs() < 1e-12);
        assert!((r.roots()[1] - 2f64.acosh()).abs() < 1e-12);
        assert!((2f64.acosh() - 1.3170).abs() < 1e-4);
        assert_eq!(
            count_cosh_roots(1.0, 0.0, 0.5, -5.0, 5.0).unwrap().count(),
            0
        );
        let r = count_cosh_roots(0.0, 1.0, 0.0, -1.0, 1.0).unwrap();
        assert_eq!(r.count(), 1);
        assert_eq!(r.roots()[0], 0.0);
        // Tangency: cosh t = 1 has the double root 0.
        assert_eq!(
            count_cosh_roots(1.0, 0.0, 1.0, -1.0, 1.0).unwrap().count(),
            1
        );
        // |α| = |β|: e^t / 2 = 3.
        let r = count_cosh_roots(0.5, 0.5, 3.0, 0.0, 2.0).unwrap();
        assert_eq!(r.count(), 1);
        assert!((r.roots()[0] - 6f64.ln()).abs() < 1e-12);
        // |α| < |β|: exactly one real root, here outside the interval.
        assert_eq!(
            count_cosh_roots(0.1, 1.0, 50.0, -1.0, 1.0).unwrap().count(),
            0
        );
        assert!(matches!(
            count_cosh_roots(0.0, 0.0, 1.0, 0.0, 1.0),
            Err(Error::DegenerateRoots)
        ));
    }

    /// Sign-scan count on a grid, trusted only away from tangency and the endpoints.
    fn scan_oracle(alpha: f64, beta: f64, gamma: f64, s0: f64, s1: f64) -> Option<usize> {
        let g = |t: f64| alpha * t.cosh() + beta * t.sinh() - gamma;
        let scale = alpha.abs() + beta.abs() + gamma.abs();
        let margin = 1e-5 * scale;
        if g(s0).abs() < margin || g(s1).abs() < margin {
            return None;
        }
        // The single critical point, where tanh t = -β/α.
        if alpha != 0.0 && (beta / alpha).abs() < 1.0 {
            let tc = (-beta / alpha).atanh();
            if tc > s0 && tc < s1 && g(tc).abs() < margin {
                return None;
            }
        }
        let steps = 10_000;
        let mut count = 0;
        let mut prev = g(s0);
        for i in 1..=steps {
            let cur = g(s0 + (s1 - s0) * i as f64 / steps as f64);
            if prev.signum() != cur.signum() {
                count += 1;
            }
            prev = cur;
        }
        Some(count)
    }

    #[test]
    fn root_counter_agrees_with_sign_scan() {
        let mut rng = stream(77, 0);
        let mut checked = 0;
        let mut seen = [0usize; 3];
        while checked < 1000 {
            let alpha: f64 = rng.random_range(-3.0..3.0);
            let beta: f64 = rng.random_range(-3.0..3.0);
            let gamma: f64 = rng.random_range(-6.0..6.0);
            let s0: f64 = rng.random_range(-3.0..1.0);
            let s1 = s0 + rng.random_range(0.1..4.0);
            let Some(expected) = scan_oracle(alpha, beta, gamma, s0, s1) else {
                continue;
            };
            let got = count_cosh_roots(alpha, beta, gamma, s0, s1).unwrap();
            assert_eq!(
                got.count(),
                expected,
                "α={alpha} β={beta} γ={gamma} [{s0}, {s1}]"
            );
            for &t in got.roots() {
                let resid = alpha * t.cosh() + beta * t.sinh() - gamma;
                assert!(resid.abs() < 1e-9 * (alpha.abs() + beta.abs() + gamma.abs()) * t.cosh());
            }
            seen[expected] += 1;
            checked += 1;
        }
        assert!(
            seen.iter().all(|&c| c >= 10),
            "all root counts exercised: {seen:?}"
        );
    }

    #[test]
    fn horosphere_far_away_is_missed() {
        let s = plane(2);
        let xi = vec![
            FieldScalar::Real(50.0),
            FieldScalar::Real(50.0),
            FieldScalar::Real(0.0),
        ];
        let h = Horosphere::new(s, xi).unwrap();
        let x = HPoint::base(s);
        let y = HPoint::from_polar(s, 1.0, &[0.0, 1.0]).unwrap();
        assert_eq!(
            count_horosphere_intersections(&h, &geodesic_between(&x, &y).unwrap()).unwrap(),
            0
        );
    }

    #[test]
    fn horoball_crossed_twice_by_chord() {
        // ξ = ½(1, 1, 0): x₀ lies inside the horoball, |<x₀, ξ>| = ½. The geodesic
        // through x₀ in direction e₂ has |<x(s), ξ>| = ½ cosh s, equal to 1 at s = ±arccosh 2.
        let s = plane(2);
        let xi = vec![
            FieldScalar::Real(0.5),
            FieldScalar::Real(0.5),
            FieldScalar::Real(0.0),
        ];
        let h = Horosphere::new(s, xi).unwrap();
        let start = HPoint::from_polar(s, 2.0, &[0.0, -1.0]).unwrap();
        let end = HPoint::from_polar(s, 2.0, &[0.0, 1.0]).unwrap();
        let seg = geodesic_between(&start, &end).unwrap();
        assert_eq!(count_horosphere_intersections(&h, &seg).unwrap(), 2);
        // A shorter chord ending inside the ball crosses once.
        let mid = HPoint::from_polar(s, 1.0, &[0.0, 1.0]).unwrap();
        assert_eq!(
            count_horosphere_intersections(&h, &geodesic_between(&start, &mid).unwrap()).unwrap(),
            1
        );
    }

    #[test]
    fn horosphere_count_agrees_with_dense_scan() {
        let mut rng = stream(8, 0);
        let mut twos = 0;
        for f in [Field::Real, Field::Complex, Field::Quaternion] {
            let s = HermitianSpace::new(f, 2).unwrap();
            for _ in 0..300 {
                let x = random_point(s, 1.5, &mut rng);
                let y = random_point(s, 1.5, &mut rng);
                let seg = geodesic_between(&x, &y).unwrap();
                let h = sample_horosphere(s, 2.0, &mut rng);
                let got = count_horosphere_intersections(&h, &seg).unwrap();
                let steps = 4000;
                let vals: Vec<f64> = (0..=steps)
                    .map(|i| {
                        let p = crate::spaces::geodesic_point(
                            &seg,
                            seg.length() * i as f64 / steps as f64,
                        );
                        h.level(&p) - 1.0
                    })
                    .collect();
                if vals.iter().any(|v| v.abs() < 1e-6) {
                    continue;
                }
                let scanned = vals
                    .windows(2)
                    .filter(|w| w[0].signum() != w[1].signum())
                    .count();
                assert_eq!(got, scanned);
                twos += usize::from(got == 2);
            }
        }
        assert!(twos > 0);
    }

    #[test]
    fn horosphere_counts_ignore_phase() {
        let mut rng = stream(9, 0);
        let c = HermitianSpace::new(Field::Complex, 2).unwrap();
        let hq = HermitianSpace::new(Field::Quaternion, 2).unwrap();
        for _ in 0..300 {
            let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            let lc = FieldScalar::Complex(Complex::from_polar(1.0, theta));
            let q = crate::scalar::random_unit_vector::<f64, _>(4, &mut rng);
            let lq = FieldScalar::Quaternion(Quaternion::new(q[0], q[1], q[2], q[3]));
            for (s, lambda) in [(c, lc), (hq, lq)] {
                let seg: GeodesicSegment<f64> = geodesic_between(
                    &random_point(s, 1.5, &mut rng),
                    &random_point(s, 1.5, &mut rng),
                )
                .unwrap();
                let h = sample_horosphere(s, 2.0, &mut rng);
                let turned = h.with_phase(lambda).unwrap();
                assert_eq!(
                    count_horosphere_intersections(&h, &seg).unwrap(),
                    count_horosphere_intersections(&turned, &seg).unwrap()
                );
            }
        }
    }
}
