//! Negative-type and hypermetric analysis of finite distance matrices.

pub mod configs;
mod embed;
mod hypermetric;
mod matrix;
mod negtype;
mod search;

pub use embed::{sqrt_embed, EmbeddingResult, PSD_TOL};
pub use hypermetric::{hypermetric_scan, hypermetric_scan_with, HypermetricViolation, ScanOptions};
pub use matrix::{
    build_distance_matrix, quadratic_form, quadratic_form_raw, CoefficientVector, DistanceMatrix,
    Metric, Point, SumConstraint,
};
pub use negtype::{negative_type_witness, top_direction, Witness, DEFAULT_NEGTYPE_TOL};
pub use search::{violation_search, SearchConfig, SearchOutcome, SearchSpace};
