//! Discrepancy toolkit: exact star/extreme discrepancy of finite point sets,
//! evaluation of the explicit constants in probabilistic discrepancy bounds
//! for random double-infinite matrices, delta-cover constructions for anchored
//! and unanchored boxes, and a Monte Carlo harness that checks the bound
//! curves against sampled point sets.

pub mod constants;
pub mod covers;
pub mod discrepancy;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod matrix;

pub use constants::{BoundQuery, ConstantProfile, VariantTag};
pub use covers::{CoverFamily, CoverSet, ValidationReport};
pub use discrepancy::{DiscrepancyKind, DiscrepancyResult};
pub use error::{Error, Result};
pub use geometry::{Box, BoxKind, CountMode, PointSet};
pub use harness::{FigureData, VerificationReport};
pub use matrix::MatrixSource;
