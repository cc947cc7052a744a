//! Asymmetric topological quantum codes on compact orientable surfaces.
//!
//! X stabilizers live on faces and Z stabilizers on vertices of a
//! `{p,q}`-tessellated surface; `d_x` is the shortest homologically
//! nontrivial cycle of the graph and `d_z` that of the dual graph.

pub mod catalog;
pub mod complex;
pub mod distance;
pub mod error;
pub mod geometry;
pub mod gf2;
pub mod homology;
pub mod stabilizer;
pub mod torus;

pub use catalog::{family_params, swap_dual, CodeParams, Exactness, FamilyRow};
pub use complex::{load_complex, save_complex, SurfaceComplex};
pub use distance::{
    code_distances, oracle_distances, DistanceMethod, DistanceResult, DEFAULT_ORACLE_CEILING,
};
pub use error::{Error, Result};
pub use geometry::{
    classify, DistanceBounds, Genus, GeometryClass, SchlafliPair, TessellationCensus,
};
pub use gf2::{BinaryMatrix, BitVec};
pub use stabilizer::{build_css, verify_stabilizers, CssCode};
pub use torus::{build_hex_torus, build_square_torus, HexTorusSpec, HexVariant, SquareTorusSpec};

/// Exact rational used for counts and rates.
pub type Rational = num_rational::Ratio<i64>;

/// Face, vertex and edge counts over machine integers.
pub type Census = TessellationCensus<i64>;

/// Metric quantities in double precision.
pub type DistanceRatios64 = geometry::DistanceRatios<f64>;

/// Metric quantities in single precision.
pub type DistanceRatios32 = geometry::DistanceRatios<f32>;
