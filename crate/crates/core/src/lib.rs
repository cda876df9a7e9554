//! Exact construction of Laurent-polynomial Landau–Ginzburg models for Fano
//! complete intersections in Grassmannians.
//!
//! The pipeline runs in four stages:
//!
//! 1. [`quiver`] builds the ladder quiver of `G(n, n+k)` and tiles it with the
//!    consecutive blocks selected by an ordered degree list.
//! 2. [`weights`] assigns the per-block vertex weights that define a torus
//!    action on the coordinates, together with its unitriangular matrix.
//! 3. [`superpotential`] eliminates the constraint equations along the torus
//!    section and returns the superpotential as a Laurent polynomial on a torus
//!    of dimension `nk - l`.
//! 4. [`iseries`] and [`periods`] compare the constant terms of its powers
//!    with the closed-form regularized I-series.
//!
//! Everything is exact: coefficients are arbitrary-precision integers and all
//! numeric checks run over the rationals.

pub mod error;
pub mod iseries;
pub mod laurent;
pub mod periods;
pub mod quiver;
pub mod selftest;
pub mod superpotential;
pub mod weights;

pub use error::{Error, Result};
pub use iseries::{fano_index, iseries, SeriesPrefix};
pub use laurent::{Coefficient, ExactEvaluator, ExponentVector, LaurentPolynomial, VariableTable};
pub use periods::{check_period, constant_terms_of_powers, PeriodReport, Verdict};
pub use quiver::{decompose, Arrow, Block, BlockDecomposition, BlockKind, ModelSpec, Quiver, Vertex};
pub use superpotential::{closed_form, eliminate, Elimination};
pub use weights::{action_matrix, weight_table, ActionMatrix, WeightTable};

/// Arbitrary-precision integer coefficients.
pub type Integer = num_bigint::BigInt;
/// Exact rationals, used for evaluation.
pub type Rational = num_rational::BigRational;
/// Laurent polynomial with integer coefficients; the type every construction produces.
pub type IntPoly = LaurentPolynomial<Integer>;
/// Laurent polynomial with rational coefficients.
pub type RatPoly = LaurentPolynomial<Rational>;
