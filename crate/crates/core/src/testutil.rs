//! Shared fixtures for unit tests.

use crate::geometry::{LatticePoint, Support};

pub(crate) fn pts(list: &[(i64, i64)]) -> Vec<LatticePoint> {
    list.iter().map(|&(x, y)| LatticePoint::new(x, y)).collect()
}

/// The running six-point support with hull (0,0),(1,0),(2,1),(1,2),(0,1),
/// numbered 1..6 in this order.
pub(crate) fn example_support() -> Support {
    Support::new(pts(&[(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2)])).unwrap()
}

pub(crate) fn unit_triangle() -> Support {
    Support::new(pts(&[(0, 0), (1, 0), (0, 1)])).unwrap()
}

pub(crate) fn unit_square() -> Support {
    Support::new(pts(&[(0, 0), (1, 0), (0, 1), (1, 1)])).unwrap()
}

/// The doubled triangle 2*conv{0, e1, e2}, saturated, canonical order.
pub(crate) fn double_triangle() -> Support {
    Support::new(pts(&[(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)])).unwrap()
}
