//! Hamilton quaternions `w + x i + y j + z k`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::scalar::Real;

/// A quaternion. The units satisfy `i² = j² = k² = ijk = -1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Quaternion<T> {
    pub w: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> Quaternion<T> {
    pub const fn new(w: T, x: T, y: T, z: T) -> Self {
        Self { w, x, y, z }
    }

    pub fn real(w: T) -> Self {
        Self::new(w, T::zero(), T::zero(), T::zero())
    }

    pub fn zero() -> Self {
        Self::real(T::zero())
    }

    pub fn one() -> Self {
        Self::real(T::one())
    }

    pub fn i() -> Self {
        Self::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    pub fn j() -> Self {
        Self::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    pub fn k() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> T {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> T {
        // hypot chain avoids overflow for large coefficients
        self.w.hypot(self.x).hypot(self.y.hypot(self.z))
    }

    pub fn scale(self, s: T) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self) -> Option<Self> {
        let n2 = self.norm_sqr();
        (n2 > T::zero()).then(|| self.conj().scale(n2.recip()))
    }

    pub fn coeffs(self) -> [T; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn from_coeffs(c: [T; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }
}

/// Hamilton product.
pub fn quat_mul<T: Real>(a: Quaternion<T>, b: Quaternion<T>) -> Quaternion<T> {
    Quaternion::new(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    )
}

impl<T: Real> Mul for Quaternion<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        quat_mul(self, rhs)
    }
}

impl<T: Real> Add for Quaternion<T> {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Self::new(self.w + r.w, self.x + r.x, self.y + r.y, self.z + r.z)
    }
}

impl<T: Real> AddAssign for Quaternion<T> {
    fn add_assign(&mut self, r: Self) {
        *self = *self + r;
    }
}

impl<T: Real> Sub for Quaternion<T> {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Self::new(self.w - r.w, self.x - r.x, self.y - r.y, self.z - r.z)
    }
}

impl<T: Real> Neg for Quaternion<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl<T: Real> fmt::Display for Quaternion<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i + {}j + {}k", self.w, self.x, self.y, self.z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type Q = Quaternion<f64>;

    #[test]
    fn hamilton_relations() {
        assert_eq!(Q::i() * Q::j(), Q::k());
        assert_eq!(Q::j() * Q::k(), Q::i());
        assert_eq!(Q::k() * Q::i(), Q::j());
        assert_eq!(Q::j() * Q::i(), -Q::k());
        assert_eq!(Q::i() * Q::i(), -Q::one());
        assert_eq!(Q::i() * Q::j() * Q::k(), -Q::one());
    }

    #[test]
    fn one_plus_i_times_one_minus_i() {
        let a = Q::new(1.0, 1.0, 0.0, 0.0);
        let b = Q::new(1.0, -1.0, 0.0, 0.0);
        assert_eq!(a * b, Q::real(2.0));
    }

    #[test]
    fn inverse_of_zero_is_none() {
        assert!(Q::zero().inv().is_none());
        let q = Q::new(1.0, 2.0, -3.0, 0.5);
        let p = q * q.inv().unwrap();
        assert!((p - Q::one()).norm() < 1e-15);
    }

    fn quat() -> impl Strategy<Value = Q> {
        (
            -10.0..10.0f64,
            -10.0..10.0f64,
            -10.0..10.0f64,
            -10.0..10.0f64,
        )
            .prop_map(|(w, x, y, z)| Q::new(w, x, y, z))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn norm_is_multiplicative(p in quat(), q in quat()) {
            let lhs = (p * q).norm();
            let rhs = p.norm() * q.norm();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-300));
        }

        #[test]
        fn conjugation_is_involutive_antihomomorphism(p in quat(), q in quat()) {
            prop_assert_eq!(p.conj().conj(), p);
            let lhs = (p * q).conj();
            let rhs = q.conj() * p.conj();
            prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + lhs.norm()));
        }

        #[test]
        fn q_conj_q_is_real_norm_squared(q in quat()) {
            let r = q * q.conj();
            prop_assert!(r.x.abs() + r.y.abs() + r.z.abs() <= 1e-12 * (1.0 + r.w));
            prop_assert!((r.w - q.norm_sqr()).abs() <= 1e-12 * (1.0 + r.w));
        }

        #[test]
        fn product_is_real_bilinear(p in quat(), q in quat(), r in quat(), s in -5.0..5.0f64) {
            let lhs = p * (q.scale(s) + r);
            let rhs = (p * q).scale(s) + p * r;
            prop_assert!((lhs - rhs).norm() <= 1e-11 * (1.0 + lhs.norm()));
        }
    }
}
