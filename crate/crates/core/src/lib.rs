//! Exact sparse resultants of unmixed bivariate Laurent systems.
//!
//! Given three Laurent polynomials `f1, f2, f3` in two variables sharing a
//! common Newton polygon `Q`, this crate builds the square hybrid matrix
//!
//! ```text
//!     | B  L |
//!     | L~ 0 |
//! ```
//!
//! whose determinant is exactly the sparse resultant of the system. The
//! Sylvester blocks `L` and `L~` hold single coefficients; the Bezout block
//! `B` holds integer linear forms in bracket variables `[abc]` (maximal
//! minors of the 3xN coefficient matrix). All arithmetic is exact: lattice
//! geometry over `i64`, coefficients and determinants over arbitrary
//! precision rationals.
//!
//! The construction is certified by two independent routes:
//! * an exterior-algebra identity relating each Bezout column to the
//!   normalized toric Jacobian ([`exterior`]), and
//! * classical dense (Macaulay) resultants on simplex supports
//!   ([`resultant::macaulay_resultant`]).
//!
//! ```
//! use bires::geometry::{LatticePoint, Support};
//! use bires::matrix::CoefficientAssignment;
//! use bires::resultant::{resultant_value, ResultantOptions};
//!
//! // Three affine-linear forms: the resultant degenerates to the 3x3
//! // coefficient determinant.
//! let support = Support::new(vec![
//!     LatticePoint::new(0, 0),
//!     LatticePoint::new(1, 0),
//!     LatticePoint::new(0, 1),
//! ])?;
//! let coeffs = CoefficientAssignment::from_integers([&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
//! let value = resultant_value(&support, &coeffs, &ResultantOptions::default())?;
//! assert_eq!(value, bires::Rational::from_integer(1.into()));
//! # Ok::<(), bires::Error>(())
//! ```

pub mod bezout;
pub mod error;
pub mod exterior;
pub mod fan;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod matrix;
pub mod resultant;
pub mod rng;
pub mod sylvester;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Rational = num::BigRational;
