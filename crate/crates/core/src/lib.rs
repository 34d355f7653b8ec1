//! Winding homology of knotoids and the polynomial invariants it categorifies.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: Laurent polynomials with integer coefficients, sparse
//!   matrices and exact rank over any [`scalar::Field`].
//! * [`diagram`]: planar-diagram (PD) data model, parsing, geometric input and
//!   diagram operations (reverse, mirror, symmetric reflection, product, cut,
//!   Reidemeister insertions).
//! * [`resolution`]: states, resolved components and the u-grading `μ(s)`.
//! * [`complex`]: the triply graded chain complex and its differential.
//! * [`homology`]: ranks, Poincaré polynomial, specialisations and the
//!   cancellation reduction.
//! * [`geometry`]: winding potentials for the refined planar invariants.
//! * [`statesum`]: Kauffman bracket, Jones, Turaev and the refined state sums.
//!
//! Linear algebra is generic over the coefficient field and geometry is
//! generic over the float type; the aliases below fix the concrete choices
//! used throughout the pipeline.

pub mod algebra;
pub mod complex;
pub mod diagram;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod homology;
pub mod resolution;
pub mod scalar;
pub mod statesum;

pub use error::{Error, Result};

/// Exact coefficients for homology computations.
pub type Rational = num_rational::BigRational;

/// Integer-coefficient Laurent polynomial used for every invariant.
pub type LaurentPoly = algebra::Poly<i64>;

/// Sparse matrix over the rationals.
pub type RationalMatrix = algebra::SparseMatrix<Rational>;

/// Planar point with double precision coordinates.
pub type Point = geometry::Point2<f64>;

/// Prime field used by the modular rank probe.
pub type ProbeField = scalar::Fp<2_147_483_647>;
