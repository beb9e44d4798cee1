//! Crate-wide error type.

use crate::geometry::LatticePoint;

/// Errors produced by geometry construction, matrix assembly and evaluation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Support has fewer than 3 hull points or is collinear.
    #[error("degenerate support: points do not span a 2-dimensional polygon")]
    DegenerateSupport,

    /// The convex hull contains lattice points missing from the support.
    #[error("non-saturated support: hull lattice points {} are not in the support", format_points(.missing))]
    NonSaturatedSupport { missing: Vec<LatticePoint> },

    /// A support point occurs twice.
    #[error("duplicate support point {0}")]
    DuplicatePoint(LatticePoint),

    /// Point claimed to lie in `k*Q` fails a facet inequality.
    #[error("point {point} lies outside {scale}Q")]
    PointOutsidePolytope { point: LatticePoint, scale: i64 },

    /// Distinguished-vertex override is not a vertex of the polygon.
    #[error("override point {0} is not a vertex of the polygon")]
    NotAVertex(LatticePoint),

    /// A column point handed to the Bezout construction is not a support point.
    #[error("point {0} is not in the support hull")]
    PointNotInSupportHull(LatticePoint),

    /// Coefficient matrix shape does not match the support.
    #[error("dimension mismatch: expected 3x{expected} coefficients, got {rows}x{cols}")]
    DimensionMismatch {
        expected: usize,
        rows: usize,
        cols: usize,
    },

    /// Scaling check requested on a system whose resultant is zero.
    #[error("degenerate base value: resultant of the base system is zero")]
    DegenerateBaseValue,

    /// Macaulay oracle called on a support other than a standard simplex.
    #[error("unsupported support for the dense oracle: {0}")]
    UnsupportedSupport(String),

    /// The extraneous Macaulay minor vanished, so the quotient is undefined.
    #[error("dense oracle is degenerate at these coefficients (extraneous minor is zero)")]
    ExtraneousMinorZero,

    /// Malformed textual input (rationals, JSON shapes).
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

fn format_points(points: &[LatticePoint]) -> String {
    points
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}
