//! Exact Nielsen and Lefschetz theory for affine self-maps of
//! infra-nilmanifolds, from matrix-level data.
//!
//! Given a finite holonomy group of rational matrices and the linear
//! part of an affine homotopy lift, this crate computes Lefschetz and
//! Nielsen numbers of all iterates by holonomy averaging, classifies
//! the eigenvalues of the linear part exactly (inside / on / outside
//! the unit circle, real counts beyond +-1), constructs the positive
//! part of the group, and reconstructs the Lefschetz and Nielsen
//! dynamical zeta functions as certified rational functions. All
//! arithmetic is exact; nothing is ever rounded.

pub mod cli;
pub mod crystal;
pub mod error;
pub mod fixed_point;
pub mod fixtures;
pub mod maps;
pub mod matrix;
pub mod poly;
pub mod rat;
pub mod ratfun;
pub mod realroot;
pub mod series;
pub mod snf;
pub mod spectral;
pub mod zeta;

pub use crystal::{catalog, catalog_names, close_group, validate, CrystalData, HolonomyGroup, ValidationReport};
pub use error::{Error, Result};
pub use fixed_point::{
    fixed_point_table, lefschetz_number, nielsen_number, nielsen_via_table, sign_diagnostics,
    torus_fixed_count, FixedPointTable,
};
pub use maps::{intertwiner_table, positive_part, IntertwinerTable, MapSpec, PositivePart};
pub use matrix::QMatrix;
pub use poly::QPoly;
pub use rat::Rat;
pub use ratfun::{pade_fit, RatFun};
pub use series::QSeries;
pub use spectral::{
    count_real_outside, count_roots_by_modulus, positive_character, spectral_split, Character,
    ModulusCounts, RealCounts, SpectralSplit,
};
pub use zeta::{lefschetz_log_derivative, lefschetz_zeta, nielsen_zeta, CertifiedRatFun, ZetaReport};
