use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::quaternion::Quaternion;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// One of the (skew-)fields a hermitian space is defined over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Field {
    #[serde(rename = "r")]
    Real,
    #[serde(rename = "c")]
    Complex,
    #[serde(rename = "h")]
    Quaternion,
}

impl Field {
    /// Dimension over the reals (1, 2 or 4).
    pub const fn real_dim(self) -> usize {
        match self {
            Field::Real => 1,
            Field::Complex => 2,
            Field::Quaternion => 4,
        }
    }

    pub const fn symbol(self) -> &'static str {
        match self {
            Field::Real => "R",
            Field::Complex => "C",
            Field::Quaternion => "H",
        }
    }
}

impl std::str::FromStr for Field {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "r" | "real" => Ok(Field::Real),
            "c" | "complex" => Ok(Field::Complex),
            "h" | "q" | "quaternion" => Ok(Field::Quaternion),
            other => Err(Error::Unsupported(format!("unknown field '{other}'"))),
        }
    }
}

/// A scalar tagged with the field it lives in.
///
/// Arithmetic between different tags promotes along `R ⊂ C ⊂ H`, with
/// `a + bi` embedded as the quaternion `a + bi + 0j + 0k`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum FieldScalar<T> {
    Real(T),
    Complex(Complex<T>),
    Quaternion(Quaternion<T>),
}

fn c_to_q<T: Real>(c: Complex<T>) -> Quaternion<T> {
    Quaternion::new(c.re, c.im, T::zero(), T::zero())
}

impl<T: Real> FieldScalar<T> {
    pub fn zero(field: Field) -> Self {
        Self::from_real(field, T::zero())
    }

    pub fn one(field: Field) -> Self {
        Self::from_real(field, T::one())
    }

    /// A real number viewed as an element of `field`.
    pub fn from_real(field: Field, v: T) -> Self {
        match field {
            Field::Real => Self::Real(v),
            Field::Complex => Self::Complex(Complex::new(v, T::zero())),
            Field::Quaternion => Self::Quaternion(Quaternion::real(v)),
        }
    }

    /// Build from `field.real_dim()` real coefficients.
    pub fn from_coeffs(field: Field, c: &[T]) -> Result<Self> {
        if c.len() != field.real_dim() {
            return Err(Error::DimensionMismatch {
                expected: field.real_dim(),
                actual: c.len(),
            });
        }
        Ok(match field {
            Field::Real => Self::Real(c[0]),
            Field::Complex => Self::Complex(Complex::new(c[0], c[1])),
            Field::Quaternion => Self::Quaternion(Quaternion::new(c[0], c[1], c[2], c[3])),
        })
    }

    pub fn field(&self) -> Field {
        match self {
            Self::Real(_) => Field::Real,
            Self::Complex(_) => Field::Complex,
            Self::Quaternion(_) => Field::Quaternion,
        }
    }

    /// Real coefficients in the basis `1, i, j, k` truncated to the tag's dimension.
    pub fn coeffs(&self) -> Vec<T> {
        match *self {
            Self::Real(v) => vec![v],
            Self::Complex(c) => vec![c.re, c.im],
            Self::Quaternion(q) => q.coeffs().to_vec(),
        }
    }

    /// Embed into a field at least as large as the current tag.
    pub fn embed(self, field: Field) -> Result<Self> {
        if field < self.field() {
            return Err(Error::FieldMismatch {
                expected: self.field(),
                actual: field,
            });
        }
        Ok(match (self, field) {
            (s, f) if s.field() == f => s,
            (Self::Real(v), f) => Self::from_real(f, v),
            (Self::Complex(c), Field::Quaternion) => Self::Quaternion(c_to_q(c)),
            _ => unreachable!("embedding order checked above"),
        })
    }

    pub fn as_quaternion(&self) -> Quaternion<T> {
        match *self {
            Self::Real(v) => Quaternion::real(v),
            Self::Complex(c) => c_to_q(c),
            Self::Quaternion(q) => q,
        }
    }

    pub fn re(&self) -> T {
        match *self {
            Self::Real(v) => v,
            Self::Complex(c) => c.re,
            Self::Quaternion(q) => q.w,
        }
    }

    pub fn conj(self) -> Self {
        match self {
            Self::Real(v) => Self::Real(v),
            Self::Complex(c) => Self::Complex(c.conj()),
            Self::Quaternion(q) => Self::Quaternion(q.conj()),
        }
    }

    pub fn norm_sqr(&self) -> T {
        match *self {
            Self::Real(v) => v * v,
            Self::Complex(c) => c.norm_sqr(),
            Self::Quaternion(q) => q.norm_sqr(),
        }
    }

    /// Euclidean norm of the coefficient vector.
    pub fn modulus(&self) -> T {
        match *self {
            Self::Real(v) => v.abs(),
            Self::Complex(c) => c.norm(),
            Self::Quaternion(q) => q.norm(),
        }
    }

    /// Multiply by a real number.
    pub fn scale(self, s: T) -> Self {
        match self {
            Self::Real(v) => Self::Real(v * s),
            Self::Complex(c) => Self::Complex(c * s),
            Self::Quaternion(q) => Self::Quaternion(q.scale(s)),
        }
    }

    /// `self / |self|`, or `None` when `self` vanishes.
    pub fn unit(self) -> Option<Self> {
        let m = self.modulus();
        (m > T::zero()).then(|| self.scale(m.recip()))
    }

    pub fn inv(self) -> Option<Self> {
        let n2 = self.norm_sqr();
        (n2 > T::zero()).then(|| self.conj().scale(n2.recip()))
    }

    /// Real part of `conj(self) · other`, i.e. the Euclidean dot product of the coefficients.
    pub fn real_inner(&self, other: &Self) -> T {
        let a = self.as_quaternion();
        let b = other.as_quaternion();
        a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z
    }

    /// Approximate equality with tolerance `tol` scaled by operand magnitude.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        let scale = T::one().max(self.modulus()).max(other.modulus());
        (*self - *other).modulus() <= tol * scale
    }

    fn promote(a: Self, b: Self) -> (Self, Self) {
        let f = a.field().max(b.field());
        (
            a.embed(f).expect("promotion"),
            b.embed(f).expect("promotion"),
        )
    }
}

/// Modulus of a field scalar.
pub fn scalar_modulus<T: Real>(s: &FieldScalar<T>) -> T {
    s.modulus()
}

macro_rules! binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl<T: Real> $tr for FieldScalar<T> {
            type Output = Self;
            fn $m(self, rhs: Self) -> Self {
                match Self::promote(self, rhs) {
                    (Self::Real(a), Self::Real(b)) => Self::Real(a $op b),
                    (Self::Complex(a), Self::Complex(b)) => Self::Complex(a $op b),
                    (Self::Quaternion(a), Self::Quaternion(b)) => Self::Quaternion(a $op b),
                    _ => unreachable!("operands promoted to a common field"),
                }
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl<T: Real> Neg for FieldScalar<T> {
    type Output = Self;
    fn neg(self) -> Self {
        match self {
            Self::Real(v) => Self::Real(-v),
            Self::Complex(c) => Self::Complex(-c),
            Self::Quaternion(q) => Self::Quaternion(-q),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type S = FieldScalar<f64>;

    fn scalar(field: Field) -> impl Strategy<Value = S> {
        proptest::collection::vec(-5.0..5.0f64, field.real_dim())
            .prop_map(move |c| S::from_coeffs(field, &c).unwrap())
    }

    #[test]
    fn modulus_examples() {
        assert_eq!(scalar_modulus(&S::zero(Field::Quaternion)), 0.0);
        let q = S::Quaternion(Quaternion::new(-9.0, 8.0, 0.0, 0.0));
        assert!((scalar_modulus(&q) - 145f64.sqrt()).abs() < 1e-14);
        let u = S::Quaternion(Quaternion::new(0.5, 0.5, 0.5, 0.5));
        assert!((scalar_modulus(&u) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn embedding_down_is_rejected() {
        let c = S::Complex(Complex::new(1.0, 2.0));
        assert!(c.embed(Field::Real).is_err());
        assert_eq!(
            c.embed(Field::Quaternion).unwrap().coeffs(),
            vec![1.0, 2.0, 0.0, 0.0]
        );
    }

    #[test]
    fn from_coeffs_checks_length() {
        assert!(S::from_coeffs(Field::Complex, &[1.0]).is_err());
    }

    proptest! {
        #[test]
        fn complex_embeds_in_quaternions(a in scalar(Field::Complex), b in scalar(Field::Complex)) {
            let qa = a.embed(Field::Quaternion).unwrap();
            let qb = b.embed(Field::Quaternion).unwrap();
            let via_c = (a * b).embed(Field::Quaternion).unwrap();
            prop_assert!(via_c.approx_eq(&(qa * qb), 1e-12));
            prop_assert!(((a + b).embed(Field::Quaternion).unwrap()).approx_eq(&(qa + qb), 1e-12));
            prop_assert!(a.conj().embed(Field::Quaternion).unwrap().approx_eq(&qa.conj(), 1e-12));
            prop_assert!((a.modulus() - qa.modulus()).abs() <= 1e-12 * (1.0 + a.modulus()));
        }

        #[test]
        fn reals_embed_in_complex(a in -5.0..5.0f64, b in -5.0..5.0f64) {
            let (ra, rb) = (S::Real(a), S::Real(b));
            let ca = ra.embed(Field::Complex).unwrap();
            let cb = rb.embed(Field::Complex).unwrap();
            prop_assert!((ra * rb).embed(Field::Complex).unwrap().approx_eq(&(ca * cb), 1e-12));
            prop_assert!((ra.modulus() - ca.modulus()).abs() <= 1e-12);
        }

        #[test]
        fn mixed_tags_promote(a in scalar(Field::Real), b in scalar(Field::Quaternion)) {
            let p = a * b;
            prop_assert_eq!(p.field(), Field::Quaternion);
            prop_assert!(p.approx_eq(&b.scale(a.re()), 1e-12));
        }
    }
}
