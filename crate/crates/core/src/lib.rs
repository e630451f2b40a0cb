//! Exact checks of boundary-size bounds for sets of chambers cut out by affine
//! hyperplanes, with the tools needed to find where such bounds are tight.
//!
//! Geometry is done in exact rational arithmetic. On top of the arrangement
//! sit the chamber graph, the stratification of a chamber set's thickening,
//! closed-form bounds, exhaustive and randomized boundary searches, and the
//! lazy random walk on chambers.

// Index loops read closer to the matrix and lattice arithmetic they implement.
#![allow(clippy::needless_range_loop)]

pub mod arrangement;
pub mod bitset;
pub mod bounds;
pub mod chamber_graph;
pub mod error;
pub mod feasibility;
pub mod instance;
pub mod linalg;
pub mod mixing;
pub mod rng;
pub mod scalar;
pub mod search;
pub mod sign;
pub mod strata;
pub mod suite;

pub use arrangement::{enumerate_chambers, enumerate_faces, Arrangement, Face, Hyperplane};
pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};
pub use sign::{IndexSet, Sign, SignVector};

/// Arrangement with arbitrary-precision rational coefficients.
pub type ExactArrangement = Arrangement<Rational>;

/// Lazy walk with exact rational kernel.
pub type ExactWalk = mixing::LazyWalk<Rational>;
/// Lazy walk in double precision.
pub type FloatWalk = mixing::LazyWalk<f64>;
