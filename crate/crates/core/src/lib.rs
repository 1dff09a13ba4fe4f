//! Distance kernels on hyperbolic spaces over R, C and H and on projective
//! and spherical spaces, Monte Carlo Crofton estimators, and negative-type /
//! hypermetric analysis of finite configurations.
//!
//! Everything is generic over a [`Real`] scalar (`f32` or `f64`); the `*64`
//! aliases below fix `f64`, which is what the estimators and the CLI use.

// `!(x > 0)` style guards are deliberate: they reject NaN too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod crofton;
pub mod error;
pub mod kernels;
mod parallel;
pub mod scalar;
pub mod spaces;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Quaternion64 = algebra::Quaternion<f64>;
pub type FieldScalar64 = algebra::FieldScalar<f64>;
pub type HPoint64 = spaces::HPoint<f64>;
pub type PPoint64 = spaces::PPoint<f64>;
pub type SPoint64 = spaces::SPoint<f64>;
pub type GeodesicSegment64 = spaces::GeodesicSegment<f64>;
pub type Isometry64 = spaces::Isometry<f64>;
pub type DistanceMatrix64 = kernels::DistanceMatrix<f64>;
pub type Point64 = kernels::Point<f64>;
pub type Hyperplane64 = crofton::Hyperplane<f64>;
pub type Horosphere64 = crofton::Horosphere<f64>;
