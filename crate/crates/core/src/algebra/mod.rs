//! Scalars over R, C, H and the signature-(1, n) hermitian form.

mod field;
mod form;
mod quaternion;

pub use field::{scalar_modulus, Field, FieldScalar};
pub use form::{
    coeff_norm, combine, form, form_norm, hermitian_form, scale_real, scale_right, sub,
    HermitianSpace,
};
pub use quaternion::{quat_mul, Quaternion};

/// Coordinate vector in `F^{n+1}`.
pub type FVec<T> = Vec<FieldScalar<T>>;
