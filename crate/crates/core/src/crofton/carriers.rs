//! Hyperplanes, oriented half-spaces and horospheres, with their samplers.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    coeff_norm, form, form_norm, scale_right, FVec, Field, FieldScalar, HermitianSpace,
};
use crate::error::{Error, Result};
use crate::scalar::{random_unit_vector, sphere_area, Real};
use crate::spaces::HPoint;

/// Real form `-a₀b₀ + Σ aₖbₖ`.
pub(crate) fn lorentz<T: Real>(a: &[T], b: &[T]) -> T {
    let tail = a[1..]
        .iter()
        .zip(&b[1..])
        .fold(T::zero(), |acc, (&p, &q)| acc + p * q);
    tail - a[0] * b[0]
}

/// Real coordinates of a point of `H^n_R`, with the leading coordinate made positive.
pub(crate) fn real_coords<T: Real>(x: &HPoint<T>) -> Result<Vec<T>> {
    let space = x.space();
    if space.field != Field::Real {
        return Err(Error::RequiresRealField(space.field));
    }
    let mut v: Vec<T> = x.coords().iter().map(|c| c.re()).collect();
    if v[0] < T::zero() {
        v.iter_mut().for_each(|c| *c = -*c);
    }
    Ok(v)
}

/// `{x : <x, u> = 0}` for a spacelike unit vector `u` in `R^{n+1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hyperplane<T> {
    u: Vec<T>,
}

impl<T: Real> Hyperplane<T> {
    pub fn new(u: Vec<T>) -> Result<Self> {
        if u.len() < 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                actual: u.len(),
            });
        }
        let q = lorentz(&u, &u);
        if !(q > T::zero()) {
            return Err(Error::InvalidCoefficients(format!(
                "<u,u> = {q} is not positive"
            )));
        }
        let s = q.sqrt().recip();
        Ok(Self {
            u: u.into_iter().map(|c| c * s).collect(),
        })
    }

    /// The coordinate hyperplane `{x_n = 0}` through `x₀`.
    pub fn coordinate(n: usize) -> Self {
        let mut u = vec![T::zero(); n + 1];
        u[n] = T::one();
        Self { u }
    }

    pub fn normal(&self) -> &[T] {
        &self.u
    }

    pub fn flipped(&self) -> Self {
        Self {
            u: self.u.iter().map(|&c| -c).collect(),
        }
    }

    /// Distance from `x₀`: `sinh r = |u₀|`.
    pub fn distance_from_base(&self) -> T {
        self.u[0].abs().asinh()
    }

    /// `<x, u>` on real coordinates.
    pub fn eval(&self, x: &[T]) -> T {
        lorentz(x, &self.u)
    }
}

/// `{x : <x, u> > 0}`; `x` is taken with positive leading coordinate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrientedHalfSpace<T> {
    u: Vec<T>,
}

impl<T: Real> OrientedHalfSpace<T> {
    pub fn new(u: Vec<T>) -> Result<Self> {
        Hyperplane::new(u).map(Self::from)
    }

    pub fn normal(&self) -> &[T] {
        &self.u
    }

    pub fn complement(&self) -> Self {
        Self {
            u: self.u.iter().map(|&c| -c).collect(),
        }
    }

    pub fn boundary(&self) -> Hyperplane<T> {
        Hyperplane { u: self.u.clone() }
    }
}

impl<T> From<Hyperplane<T>> for OrientedHalfSpace<T> {
    fn from(h: Hyperplane<T>) -> Self {
        Self { u: h.u }
    }
}

/// `{x : |<x, ξ>| = 1}` for a nonzero null vector `ξ` with `ξ₀` real and positive.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Horosphere<T> {
    space: HermitianSpace,
    xi: FVec<T>,
}

impl<T: Real> Horosphere<T> {
    /// Validates `<ξ, ξ> = 0` and fixes the phase of `ξ₀`.
    pub fn new(space: HermitianSpace, xi: FVec<T>) -> Result<Self> {
        space.check(&xi)?;
        let scale = coeff_norm(&xi);
        if !(scale > T::zero()) {
            return Err(Error::ZeroVector);
        }
        let q = form_norm(&xi);
        if q.abs() > T::norm_tol() * scale * scale {
            return Err(Error::InvalidCoefficients(format!(
                "<xi,xi> = {q} is not null"
            )));
        }
        let lead = xi[0];
        let phase = lead.conj().unit().ok_or(Error::ZeroVector)?;
        Ok(Self {
            space,
            xi: scale_right(&xi, phase),
        })
    }

    pub fn space(&self) -> HermitianSpace {
        self.space
    }

    pub fn xi(&self) -> &[FieldScalar<T>] {
        &self.xi
    }

    /// `|<x, ξ>|`; the horosphere is the level set 1, the horoball is below 1.
    pub fn level(&self, x: &HPoint<T>) -> T {
        form(x.coords(), &self.xi).modulus()
    }

    /// Signed Busemann distance of `x₀` from the horosphere, `log ξ₀`.
    pub fn base_offset(&self) -> T {
        self.xi[0].re().ln()
    }

    /// The same horosphere with `ξ` replaced by `ξ·λ` and re-normalized.
    pub fn with_phase(&self, lambda: FieldScalar<T>) -> Result<Self> {
        Self::new(self.space, scale_right(&self.xi, lambda))
    }
}

/// `∫₀^p cosh^k`, by the reduction formula.
pub(crate) fn cosh_power_integral<T: Real>(k: usize, p: T) -> T {
    if k == 0 {
        return p;
    }
    let (s, c) = (p.sinh(), p.cosh());
    let (mut prev2, mut prev1) = (p, s);
    let mut cpow = T::one();
    for j in 2..=k {
        cpow = cpow * c;
        let jf = T::lit(j as f64);
        let next = cpow * s / jf + (jf - T::one()) / jf * prev2;
        prev2 = prev1;
        prev1 = next;
    }
    prev1
}

/// Solve `∫₀^p cosh^k = target` for `p ∈ [-r, r]`.
fn invert_cosh_power<T: Real>(k: usize, target: T, r: T) -> T {
    if k == 0 {
        return target;
    }
    if k == 1 {
        return target.asinh();
    }
    let (mut lo, mut hi) = (-r, r);
    let mut p = target.asinh().max(lo).min(hi);
    let tol = T::lit(1e-12).max(T::epsilon() * T::lit(8.0)) * r.max(T::one());
    for _ in 0..100 {
        let f = cosh_power_integral(k, p) - target;
        if f > T::zero() {
            hi = p;
        } else {
            lo = p;
        }
        let step = f / p.cosh().powi(k as i32);
        let mut next = p - step;
        if !(next > lo && next < hi) {
            next = (lo + hi) / T::lit(2.0);
        }
        let moved = (next - p).abs();
        p = next;
        if moved <= tol || hi - lo <= tol {
            break;
        }
    }
    p
}

/// Measure of hyperplanes within distance `r` of `x₀` in `H^n_R`.
///
/// Density `cosh^{n-1}(p) dp dω` on `(p, ω) ∈ [-r, r] × S^{n-1}`, halved for `u ~ -u`.
pub fn hyperplane_measure<T: Real>(n: usize, r: T) -> T {
    sphere_area::<T>(n - 1) * cosh_power_integral(n - 1, r)
}

/// Draw `u = (sinh p, cosh p · ω)` from the invariant hyperplane measure restricted to `|p| ≤ r`.
pub fn sample_hyperplane<T: Real, R: Rng + ?Sized>(n: usize, r: T, rng: &mut R) -> Hyperplane<T> {
    Hyperplane {
        u: draw_hyperplane(n, r, cosh_power_integral(n - 1, r), rng),
    }
}

pub(crate) fn draw_hyperplane<T: Real, R: Rng + ?Sized>(
    n: usize,
    r: T,
    half_mass: T,
    rng: &mut R,
) -> Vec<T> {
    let v = T::sample_unit(rng);
    let target = (v + v - T::one()) * half_mass;
    let p = invert_cosh_power(n - 1, target, r);
    let omega: Vec<T> = random_unit_vector(n, rng);
    let c = p.cosh();
    std::iter::once(p.sinh())
        .chain(omega.into_iter().map(|w| c * w))
        .collect()
}

/// Radial exponent `k(n+1) - 3` of the horosphere density in `ξ₀ = r`.
pub fn horosphere_exponent(space: HermitianSpace) -> i32 {
    (space.field.real_dim() * (space.n + 1)) as i32 - 3
}

/// Measure of horospheres with `|log ξ₀| ≤ r`: `A(S^{kn-1}) · ∫ ρ^e dρ` over `[e^{-r}, e^{r}]`.
pub fn horosphere_measure<T: Real>(space: HermitianSpace, r: T) -> T {
    let p = horosphere_exponent(space) + 1;
    let radial = if p == 0 {
        r + r
    } else {
        let pf = T::lit(p as f64);
        (r * pf).sinh() * T::lit(2.0) / pf
    };
    sphere_area::<T>(space.field.real_dim() * space.n - 1) * radial
}

/// `log ξ₀` for the radial law `ρ^e dρ` on `[e^{-r}, e^{r}]`, computed in log space.
fn draw_log_radius<T: Real, R: Rng + ?Sized>(p: i32, r: T, rng: &mut R) -> T {
    let v = T::sample_unit(rng);
    if p == 0 {
        return -r + (r + r) * v;
    }
    let pf = T::lit(p as f64);
    let floor = (-(r + r) * pf).exp();
    (r + (v + (T::one() - v) * floor).ln() / pf).max(-r)
}

/// Draw `ξ = ρ(1, ω)` from the invariant horosphere measure restricted to `|log ρ| ≤ r`.
pub fn sample_horosphere<T: Real, R: Rng + ?Sized>(
    space: HermitianSpace,
    r: T,
    rng: &mut R,
) -> Horosphere<T> {
    Horosphere {
        space,
        xi: draw_horosphere(space, r, rng),
    }
}

pub(crate) fn draw_horosphere<T: Real, R: Rng + ?Sized>(
    space: HermitianSpace,
    r: T,
    rng: &mut R,
) -> FVec<T> {
    let k = space.field.real_dim();
    let rho = draw_log_radius(horosphere_exponent(space) + 1, r, rng).exp();
    let omega: Vec<T> = random_unit_vector(k * space.n, rng);
    let mut reals = vec![T::zero(); space.real_len()];
    reals[0] = rho;
    for (slot, w) in reals[k..].iter_mut().zip(omega) {
        *slot = rho * w;
    }
    space
        .vector_from_reals(&reals)
        .expect("length matches the space")
}
