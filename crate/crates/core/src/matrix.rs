//! Assembly and evaluation of the hybrid matrix `[[B, L], [L~, 0]]`.
//!
//! Rows: the interior lattice points of `2Q` in canonical order, then
//! `f1, f2, f3`. Columns: the support points in input order, then the pairs
//! `(f_i, a)` over interior points of `Q`, polynomial-major. Squareness,
//! `#int(2Q) + 3 = #Q + 3 * #int(Q)`, holds for every valid polygon and is
//! asserted at assembly time.

use std::fmt;

use num::Zero;

use crate::bezout::{bezout_block, Bracket, BracketForm};
use crate::fan::FanPartition;
use crate::geometry::{LatticePoint, Polygon, Support};
use crate::linalg::RationalMatrix;
use crate::sylvester::{block_l, block_ltilde, CoefficientSymbol};
use crate::{Error, Rational, Result};

/// A cell of the symbolic hybrid matrix.
#[derive(Clone, Debug, PartialEq)]
pub enum SymbolicEntry {
    Zero,
    Coefficient(CoefficientSymbol),
    Brackets(BracketForm),
}

impl fmt::Display for SymbolicEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolicEntry::Zero => write!(f, "0"),
            SymbolicEntry::Coefficient(c) => write!(f, "{c}"),
            SymbolicEntry::Brackets(b) => write!(f, "{b}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowLabel {
    /// Interior lattice point of `2Q`.
    Interior(LatticePoint),
    /// One of the three polynomials (1-based).
    Polynomial(usize),
}

impl fmt::Display for RowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowLabel::Interior(p) => write!(f, "{p}"),
            RowLabel::Polynomial(i) => write!(f, "f{i}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColLabel {
    /// Support point (1-based index, point).
    Monomial(usize, LatticePoint),
    /// Pair `(f_i, a)` with `a` interior to `Q`.
    Product(usize, LatticePoint),
}

impl fmt::Display for ColLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColLabel::Monomial(_, p) => write!(f, "{p}"),
            ColLabel::Product(i, p) => write!(f, "(f{i},{p})"),
        }
    }
}

/// The symbolic hybrid matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct HybridMatrix {
    row_labels: Vec<RowLabel>,
    col_labels: Vec<ColLabel>,
    entries: Vec<Vec<SymbolicEntry>>,
}

impl HybridMatrix {
    pub fn size(&self) -> usize {
        self.row_labels.len()
    }

    pub fn row_labels(&self) -> &[RowLabel] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[ColLabel] {
        &self.col_labels
    }

    pub fn entry(&self, row: usize, col: usize) -> &SymbolicEntry {
        &self.entries[row][col]
    }

    /// Substitute concrete coefficients: brackets become 3x3 minors,
    /// coefficient symbols become the assigned rationals.
    pub fn evaluate(&self, coeffs: &CoefficientAssignment) -> Result<RationalMatrix> {
        let n_support = self
            .col_labels
            .iter()
            .filter(|c| matches!(c, ColLabel::Monomial(..)))
            .count();
        if coeffs.num_points() != n_support {
            return Err(Error::DimensionMismatch {
                expected: n_support,
                rows: 3,
                cols: coeffs.num_points(),
            });
        }
        let rows = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| match e {
                        SymbolicEntry::Zero => Rational::zero(),
                        SymbolicEntry::Coefficient(c) => {
                            coeffs.get(c.poly, c.support).clone()
                        }
                        SymbolicEntry::Brackets(b) => b.evaluate(coeffs),
                    })
                    .collect()
            })
            .collect();
        RationalMatrix::new(rows)
    }
}

/// Build the hybrid matrix for a saturated support with its polygon and fan
/// partition.
pub fn assemble(
    support: &Support,
    polygon: &Polygon,
    partition: &FanPartition,
) -> Result<HybridMatrix> {
    let bezout = bezout_block(support, polygon, partition)?;
    let l = block_l(support, polygon);
    let ltilde = block_ltilde(support);
    debug_assert_eq!(bezout.row_points(), l.row_points());

    let num_interior2 = bezout.num_rows();
    let num_rows = num_interior2 + 3;
    let num_cols = support.len() + l.num_cols();
    assert_eq!(
        num_rows, num_cols,
        "hybrid matrix must be square: 3 + #int(2Q) = #Q + 3*#int(Q)"
    );

    let mut row_labels = Vec::with_capacity(num_rows);
    row_labels.extend(bezout.row_points().iter().map(|&p| RowLabel::Interior(p)));
    row_labels.extend((1..=3).map(RowLabel::Polynomial));

    let mut col_labels = Vec::with_capacity(num_cols);
    col_labels.extend(
        support
            .points()
            .iter()
            .enumerate()
            .map(|(i, &p)| ColLabel::Monomial(i + 1, p)),
    );
    col_labels.extend(
        l.col_labels()
            .iter()
            .map(|&(poly, a)| ColLabel::Product(poly, a)),
    );

    let mut entries = vec![vec![SymbolicEntry::Zero; num_cols]; num_rows];
    for (row, entry_row) in entries.iter_mut().enumerate().take(num_interior2) {
        for (col, cell) in entry_row.iter_mut().enumerate() {
            if col < support.len() {
                let form = bezout.entry(row, col);
                if !form.is_zero() {
                    *cell = SymbolicEntry::Brackets(form.clone());
                }
            } else if let Some(symbol) = l.entry(row, col - support.len()) {
                *cell = SymbolicEntry::Coefficient(symbol);
            }
        }
    }
    for (i, ltilde_row) in ltilde.iter().enumerate() {
        for (col, &symbol) in ltilde_row.iter().enumerate() {
            entries[num_interior2 + i][col] = SymbolicEntry::Coefficient(symbol);
        }
    }

    Ok(HybridMatrix {
        row_labels,
        col_labels,
        entries,
    })
}

/// A concrete 3xN rational coefficient matrix; column `a` belongs to support
/// point `a`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientAssignment {
    rows: Vec<Vec<Rational>>,
}

impl CoefficientAssignment {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<CoefficientAssignment> {
        if rows.len() != 3 {
            return Err(Error::DimensionMismatch {
                expected: rows.first().map_or(0, Vec::len),
                rows: rows.len(),
                cols: rows.first().map_or(0, Vec::len),
            });
        }
        let n = rows[0].len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                rows: 3,
                cols: rows.iter().map(Vec::len).max().unwrap_or(0),
            });
        }
        Ok(CoefficientAssignment { rows })
    }

    pub fn from_integers(rows: [&[i64]; 3]) -> CoefficientAssignment {
        CoefficientAssignment::new(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| Rational::from_integer(x.into()))
                        .collect()
                })
                .collect(),
        )
        .expect("three equal-length rows")
    }

    pub fn num_points(&self) -> usize {
        self.rows[0].len()
    }

    /// Coefficient of support point `a` (1-based) in `f_poly` (1-based).
    pub fn get(&self, poly: usize, a: usize) -> &Rational {
        &self.rows[poly - 1][a - 1]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Determinant of the 3x3 minor on the bracket's columns.
    pub fn bracket_minor(&self, bracket: Bracket) -> Rational {
        let [a, b, c] = bracket.indices();
        let col = |j: usize| [self.get(1, j), self.get(2, j), self.get(3, j)];
        let (x, y, z) = (col(a), col(b), col(c));
        x[0] * y[1] * z[2] + x[1] * y[2] * z[0] + x[2] * y[0] * z[1]
            - x[2] * y[1] * z[0]
            - x[0] * y[2] * z[1]
            - x[1] * y[0] * z[2]
    }

    /// Copy with row `poly` multiplied by `lambda`.
    pub fn with_scaled_row(&self, poly: usize, lambda: &Rational) -> CoefficientAssignment {
        let mut rows = self.rows.clone();
        for x in &mut rows[poly - 1] {
            *x = &*x * lambda;
        }
        CoefficientAssignment { rows }
    }

    /// Copy with rows `i` and `j` exchanged (1-based).
    pub fn with_swapped_rows(&self, i: usize, j: usize) -> CoefficientAssignment {
        let mut rows = self.rows.clone();
        rows.swap(i - 1, j - 1);
        CoefficientAssignment { rows }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{choose_distinguished_cone, partition_fan};
    use crate::geometry::polygon_from_support;
    use crate::rng::SplitMix64;
    use crate::testutil::{example_support, unit_square, unit_triangle};
    use num::BigInt;

    fn build(support: &Support) -> HybridMatrix {
        let polygon = polygon_from_support(support).unwrap();
        let cone = choose_distinguished_cone(&polygon, None).unwrap();
        let partition = partition_fan(&polygon, cone);
        assemble(support, &polygon, &partition).unwrap()
    }

    fn random_coeffs(rng: &mut SplitMix64, n: usize) -> CoefficientAssignment {
        CoefficientAssignment::new(
            (0..3)
                .map(|_| {
                    (0..n)
                        .map(|_| Rational::from_integer(BigInt::from(rng.int_in(-9, 9))))
                        .collect()
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn assembled_sizes() {
        assert_eq!(build(&example_support()).size(), 9);
        assert_eq!(build(&unit_triangle()).size(), 3);
        assert_eq!(build(&unit_square()).size(), 4);
    }

    #[test]
    fn triangle_matrix_is_the_coefficient_block() {
        let m = build(&unit_triangle());
        for row in 0..3 {
            for col in 0..3 {
                assert_eq!(
                    m.entry(row, col).to_string(),
                    format!("c[{}][{}]", row + 1, col + 1)
                );
            }
        }
    }

    #[test]
    fn bracket_at_identity_padded_coefficients() {
        // First three columns are the 3x3 identity, the rest zero.
        let support = example_support();
        let coeffs = CoefficientAssignment::from_integers([
            &[1, 0, 0, 0, 0, 0],
            &[0, 1, 0, 0, 0, 0],
            &[0, 0, 1, 0, 0, 0],
        ]);
        let _ = support;
        let mut form = BracketForm::zero();
        form.add_triple(1, 1, 2, 3);
        assert_eq!(form.evaluate(&coeffs), Rational::from_integer(1.into()));
    }

    #[test]
    fn duplicate_columns_kill_their_brackets() {
        let mut rng = SplitMix64::new(5);
        let mut coeffs = random_coeffs(&mut rng, 6);
        // Force columns 2 and 3 equal.
        let copy: Vec<Rational> = (1..=3).map(|i| coeffs.get(i, 2).clone()).collect();
        let mut rows = coeffs.rows().to_vec();
        for i in 0..3 {
            rows[i][2] = copy[i].clone();
        }
        coeffs = CoefficientAssignment::new(rows).unwrap();

        let mut dead = BracketForm::zero();
        dead.add_triple(1, 2, 3, 4);
        assert!(dead.evaluate(&coeffs).is_zero());

        // [126] survives and matches a cofactor-expansion oracle.
        let mut live = BracketForm::zero();
        live.add_triple(1, 1, 2, 6);
        let oracle = {
            let col = |j: usize| {
                [
                    coeffs.get(1, j).clone(),
                    coeffs.get(2, j).clone(),
                    coeffs.get(3, j).clone(),
                ]
            };
            let (x, y, z) = (col(1), col(2), col(6));
            &x[0] * (&y[1] * &z[2] - &y[2] * &z[1])
                - &y[0] * (&x[1] * &z[2] - &x[2] * &z[1])
                + &z[0] * (&x[1] * &y[2] - &x[2] * &y[1])
        };
        assert_eq!(live.evaluate(&coeffs), oracle);
    }

    #[test]
    fn evaluation_matches_naive_substitution() {
        let support = example_support();
        let m = build(&support);
        let mut rng = SplitMix64::new(99);
        let coeffs = random_coeffs(&mut rng, 6);
        let evaluated = m.evaluate(&coeffs).unwrap();

        for row in 0..m.size() {
            for col in 0..m.size() {
                let expected = match m.entry(row, col) {
                    SymbolicEntry::Zero => Rational::zero(),
                    SymbolicEntry::Coefficient(c) => coeffs.get(c.poly, c.support).clone(),
                    SymbolicEntry::Brackets(form) => {
                        // Cofactor-based minor, independent of bracket_minor.
                        let mut acc = Rational::zero();
                        for (bracket, &k) in form.terms() {
                            let [a, b, c] = bracket.indices();
                            let col = |j: usize| {
                                [
                                    coeffs.get(1, j).clone(),
                                    coeffs.get(2, j).clone(),
                                    coeffs.get(3, j).clone(),
                                ]
                            };
                            let (x, y, z) = (col(a), col(b), col(c));
                            let det = &x[0] * (&y[1] * &z[2] - &y[2] * &z[1])
                                - &y[0] * (&x[1] * &z[2] - &x[2] * &z[1])
                                + &z[0] * (&x[1] * &y[2] - &x[2] * &y[1]);
                            acc += det * Rational::from_integer(k.into());
                        }
                        acc
                    }
                };
                assert_eq!(*evaluated.entry(row, col), expected, "cell ({row},{col})");
            }
        }
    }

    #[test]
    fn evaluation_rejects_wrong_width() {
        let m = build(&example_support());
        let coeffs = CoefficientAssignment::from_integers([&[1, 2], &[3, 4], &[5, 6]]);
        assert!(matches!(
            m.evaluate(&coeffs),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn swapping_coefficient_rows_flips_every_bracket() {
        let mut rng = SplitMix64::new(123);
        let coeffs = random_coeffs(&mut rng, 6);
        let swapped = coeffs.with_swapped_rows(1, 2);
        let mut form = BracketForm::zero();
        form.add_triple(1, 1, 4, 6);
        assert_eq!(form.evaluate(&coeffs), -form.evaluate(&swapped));
    }
}
