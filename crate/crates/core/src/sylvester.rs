//! The pure-coefficient blocks `L` and `L~`.
//!
//! `L~` is the 3xN matrix of all coefficients: row `f_i`, column `a` holds
//! `C[i][a]`, the coefficient of the monomial of support point `a` in `f_i`.
//! `L` is the matrix of the multiplication map `(g1,g2,g3) -> f1g1+f2g2+f3g3`
//! on monomial bases: rows indexed by `int(2Q)`, columns by pairs
//! `(f_i, a)` with `a` interior to `Q`; the entry at row `b` is the
//! coefficient of `x^(b-a)` in `f_i`, zero when `b-a` is not a support point.

use std::fmt;

use crate::geometry::{lattice_points, LatticePoint, Polygon, Support};

/// The symbol `C[i][a]`: coefficient of support monomial `a` in polynomial
/// `f_i`. Both indices are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct CoefficientSymbol {
    pub poly: usize,
    pub support: usize,
}

impl CoefficientSymbol {
    pub fn new(poly: usize, support: usize) -> CoefficientSymbol {
        assert!((1..=3).contains(&poly), "polynomial index out of range");
        assert!(support >= 1, "support index is 1-based");
        CoefficientSymbol { poly, support }
    }
}

impl fmt::Display for CoefficientSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c[{}][{}]", self.poly, self.support)
    }
}

/// The block `L`. Column order is polynomial-major: all of `f1` first, then
/// `f2`, then `f3`, interior points in canonical order within each group.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockL {
    row_points: Vec<LatticePoint>,
    col_labels: Vec<(usize, LatticePoint)>,
    entries: Vec<Vec<Option<CoefficientSymbol>>>,
}

impl BlockL {
    pub fn row_points(&self) -> &[LatticePoint] {
        &self.row_points
    }

    pub fn col_labels(&self) -> &[(usize, LatticePoint)] {
        &self.col_labels
    }

    pub fn num_rows(&self) -> usize {
        self.row_points.len()
    }

    pub fn num_cols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> Option<CoefficientSymbol> {
        self.entries[row][col]
    }
}

pub fn block_l(support: &Support, polygon: &Polygon) -> BlockL {
    let row_points = lattice_points(polygon, 2, true);
    let interior = lattice_points(polygon, 1, true);

    let mut col_labels = Vec::with_capacity(3 * interior.len());
    for poly in 1..=3 {
        for &a in &interior {
            col_labels.push((poly, a));
        }
    }

    let entries = row_points
        .iter()
        .map(|&b| {
            col_labels
                .iter()
                .map(|&(poly, a)| {
                    support
                        .index_of(b - a)
                        .map(|idx| CoefficientSymbol::new(poly, idx))
                })
                .collect()
        })
        .collect();

    BlockL {
        row_points,
        col_labels,
        entries,
    }
}

/// The block `L~`: entry `(i, a) = C[i][a]`, rows `f1, f2, f3`, columns in
/// support order.
pub fn block_ltilde(support: &Support) -> Vec<Vec<CoefficientSymbol>> {
    (1..=3)
        .map(|poly| {
            (1..=support.len())
                .map(|a| CoefficientSymbol::new(poly, a))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{polygon_from_support, Support};
    use crate::testutil::{example_support, pts, unit_triangle};

    #[test]
    fn example_block_l_is_the_full_coefficient_column() {
        let support = example_support();
        let polygon = polygon_from_support(&support).unwrap();
        let block = block_l(&support, &polygon);
        assert_eq!((block.num_rows(), block.num_cols()), (6, 3));
        // Rows are int(2Q) in canonical order; subtracting the single
        // interior point (1,1) walks the support in order 1..6.
        for (poly, col) in [(1usize, 0usize), (2, 1), (3, 2)] {
            for row in 0..6 {
                assert_eq!(
                    block.entry(row, col),
                    Some(CoefficientSymbol::new(poly, row + 1))
                );
            }
        }
        assert_eq!(block.entry(0, 0).unwrap().to_string(), "c[1][1]");
        assert_eq!(block.entry(1, 0).unwrap().to_string(), "c[1][2]");
    }

    #[test]
    fn out_of_support_differences_are_zero() {
        // 4*unit triangle: interior point a=(2,1) and row b=(1,1) give
        // b-a=(-1,0), outside the support.
        let mut points = Vec::new();
        for x in 0..=4i64 {
            for y in 0..=(4 - x) {
                points.push((x, y));
            }
        }
        let support = Support::new(pts(&points)).unwrap();
        let polygon = polygon_from_support(&support).unwrap();
        let block = block_l(&support, &polygon);
        let col = block
            .col_labels()
            .iter()
            .position(|&(poly, a)| poly == 1 && a == crate::geometry::LatticePoint::new(2, 1))
            .unwrap();
        let row = block
            .row_points()
            .iter()
            .position(|&b| b == crate::geometry::LatticePoint::new(1, 1))
            .unwrap();
        assert_eq!(block.entry(row, col), None);
    }

    #[test]
    fn ltilde_is_the_coefficient_matrix() {
        let support = example_support();
        let lt = block_ltilde(&support);
        assert_eq!(lt.len(), 3);
        let row1: Vec<String> = lt[0].iter().map(|c| c.to_string()).collect();
        assert_eq!(
            row1,
            vec!["c[1][1]", "c[1][2]", "c[1][3]", "c[1][4]", "c[1][5]", "c[1][6]"]
        );
        assert_eq!(lt[2][5].to_string(), "c[3][6]");

        let triangle = block_ltilde(&unit_triangle());
        assert_eq!(triangle.iter().map(Vec::len).collect::<Vec<_>>(), vec![3, 3, 3]);
    }

    #[test]
    fn block_l_matches_polynomial_multiplication() {
        // Independent oracle: multiply f_i by the interior monomial and read
        // coefficients off the product.
        let support = example_support();
        let polygon = polygon_from_support(&support).unwrap();
        let block = block_l(&support, &polygon);

        // Symbolic product: f_i * x^a has coefficient C[i][k] at exponent
        // point support[k] + a.
        for (col, &(poly, a)) in block.col_labels().iter().enumerate() {
            let mut product: std::collections::HashMap<LatticePoint, usize> =
                std::collections::HashMap::new();
            for k in 1..=support.len() {
                product.insert(support.point(k) + a, k);
            }
            for (row, &b) in block.row_points().iter().enumerate() {
                let expected = product
                    .get(&b)
                    .map(|&k| CoefficientSymbol::new(poly, k));
                assert_eq!(block.entry(row, col), expected);
            }
        }
    }
}
