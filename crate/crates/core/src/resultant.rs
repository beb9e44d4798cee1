//! End-to-end resultant evaluation plus independent validators: planted
//! common roots, coefficient-scaling degree checks, and a classical dense
//! (Macaulay) oracle for simplex supports.
//!
//! The determinant of the hybrid matrix equals the sparse resultant up to a
//! global sign that depends only on the support order and the canonical
//! row/column orders, never on the coefficients; validators therefore
//! compare absolute values or ratios.

use num::{BigInt, One, Zero};

use crate::fan::{choose_distinguished_cone, partition_fan, FanPartition};
use crate::geometry::{
    normalized_area, polygon_from_support, LatticePoint, Polygon, Support,
};
use crate::linalg::RationalMatrix;
use crate::matrix::{assemble, CoefficientAssignment, HybridMatrix};
use crate::rng::SplitMix64;
use crate::{Error, Rational, Result};

/// Knobs for the pipeline; `vertex` overrides the distinguished vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ResultantOptions {
    pub vertex: Option<LatticePoint>,
}

/// Everything derived from a support, built once and reused.
#[derive(Clone, Debug)]
pub struct Pipeline {
    pub polygon: Polygon,
    pub partition: FanPartition,
    pub matrix: HybridMatrix,
}

pub fn build_pipeline(support: &Support, options: &ResultantOptions) -> Result<Pipeline> {
    let polygon = polygon_from_support(support)?;
    let cone = choose_distinguished_cone(&polygon, options.vertex)?;
    let partition = partition_fan(&polygon, cone);
    let matrix = assemble(support, &polygon, &partition)?;
    Ok(Pipeline {
        polygon,
        partition,
        matrix,
    })
}

/// Determinant of the evaluated hybrid matrix: the sparse resultant of the
/// system, up to a coefficient-independent global sign.
pub fn resultant_value(
    support: &Support,
    coeffs: &CoefficientAssignment,
    options: &ResultantOptions,
) -> Result<Rational> {
    let pipeline = build_pipeline(support, options)?;
    Ok(pipeline.matrix.evaluate(coeffs)?.determinant())
}

fn rational_pow(base: &Rational, exp: i64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp.unsigned_abs() {
        acc *= base;
    }
    if exp < 0 {
        acc = acc.recip();
    }
    acc
}

/// Value of the monomial of `point` at the torus point `(x0, y0)`.
fn monomial_at(point: LatticePoint, x0: &Rational, y0: &Rational) -> Rational {
    rational_pow(x0, point.x) * rational_pow(y0, point.y)
}

/// Value of `f_poly` at a torus point.
pub fn evaluate_at_point(
    support: &Support,
    coeffs: &CoefficientAssignment,
    poly: usize,
    root: (&Rational, &Rational),
) -> Rational {
    (1..=support.len())
        .map(|a| coeffs.get(poly, a) * monomial_at(support.point(a), root.0, root.1))
        .fold(Rational::zero(), |acc, x| acc + x)
}

/// Random integer coefficients in `lo..=hi`, one column per support point.
pub fn random_system(
    rng: &mut SplitMix64,
    num_points: usize,
    lo: i64,
    hi: i64,
) -> CoefficientAssignment {
    CoefficientAssignment::new(
        (0..3)
            .map(|_| {
                (0..num_points)
                    .map(|_| Rational::from_integer(BigInt::from(rng.int_in(lo, hi))))
                    .collect()
            })
            .collect(),
    )
    .expect("three equal-length rows")
}

/// A system with a planted common root on the torus: every row gets random
/// integer coefficients except the entry at support point 1, which is solved
/// exactly so that `f_i(x0, y0) = 0`.
pub fn planted_root_system(
    support: &Support,
    root: (&Rational, &Rational),
    seed: u64,
) -> CoefficientAssignment {
    assert!(!root.0.is_zero() && !root.1.is_zero(), "root must lie on the torus");
    let mut rng = SplitMix64::new(seed);
    let n = support.len();
    let m1 = monomial_at(support.point(1), root.0, root.1);
    let rows = (0..3)
        .map(|_| {
            let tail: Vec<Rational> = (2..=n)
                .map(|_| Rational::from_integer(BigInt::from(rng.int_in(-9, 9))))
                .collect();
            let tail_value: Rational = tail
                .iter()
                .zip(2..=n)
                .map(|(c, a)| c * monomial_at(support.point(a), root.0, root.1))
                .fold(Rational::zero(), |acc, x| acc + x);
            let mut row = Vec::with_capacity(n);
            row.push(-tail_value / &m1);
            row.extend(tail);
            row
        })
        .collect();
    CoefficientAssignment::new(rows).expect("three equal-length rows")
}

/// Does scaling the coefficients of `f_poly` by `lambda` scale the resultant
/// by `lambda^(2*Area(Q))`?
pub fn scaling_degree_check(
    support: &Support,
    coeffs: &CoefficientAssignment,
    lambda: &Rational,
    poly: usize,
) -> Result<bool> {
    if lambda.is_zero() || lambda.is_one() {
        return Err(Error::InvalidInput(
            "scaling factor must differ from 0 and 1".into(),
        ));
    }
    let options = ResultantOptions::default();
    let pipeline = build_pipeline(support, &options)?;
    let base = pipeline.matrix.evaluate(coeffs)?.determinant();
    if base.is_zero() {
        return Err(Error::DegenerateBaseValue);
    }
    let scaled = pipeline
        .matrix
        .evaluate(&coeffs.with_scaled_row(poly, lambda))?
        .determinant();
    let degree = normalized_area(&pipeline.polygon);
    Ok(scaled == rational_pow(lambda, degree) * base)
}

fn simplex_points(d: i64) -> Vec<LatticePoint> {
    let mut out = Vec::new();
    for x in 0..=d {
        for y in 0..=(d - x) {
            out.push(LatticePoint::new(x, y));
        }
    }
    crate::geometry::sort_graded_lex(&mut out);
    out
}

/// Classical dense resultant for the support `d * unit triangle`, `d` in
/// {1, 2}. For `d = 1` this is the determinant of the coefficient matrix.
/// For `d = 2` it is the Macaulay quotient for three ternary quadrics at
/// degree 4: the 15x15 multiplication matrix divided by the 3x3 minor on
/// monomials divisible by at least two of the squared variables.
pub fn macaulay_resultant(
    support: &Support,
    coeffs: &CoefficientAssignment,
    degree: i64,
) -> Result<Rational> {
    if coeffs.num_points() != support.len() {
        return Err(Error::DimensionMismatch {
            expected: support.len(),
            rows: 3,
            cols: coeffs.num_points(),
        });
    }
    let mut have: Vec<LatticePoint> = support.points().to_vec();
    have.sort();
    let mut want = simplex_points(degree);
    want.sort();
    if have != want {
        return Err(Error::UnsupportedSupport(format!(
            "support must be exactly the lattice points of {degree}*triangle"
        )));
    }

    match degree {
        1 => {
            let rows = (1..=3)
                .map(|i| {
                    (1..=3)
                        .map(|a| coeffs.get(i, a).clone())
                        .collect::<Vec<_>>()
                })
                .collect();
            Ok(RationalMatrix::new(rows)?.determinant())
        }
        2 => macaulay_two(support, coeffs),
        _ => Err(Error::UnsupportedSupport(
            "dense oracle only covers degrees 1 and 2".into(),
        )),
    }
}

/// Coefficient of the ternary monomial `(a, b, c)` (degree 2) in the
/// homogenization of `f_poly`.
fn quadric_coeff(
    support: &Support,
    coeffs: &CoefficientAssignment,
    poly: usize,
    exp: (i64, i64, i64),
) -> Rational {
    let (a, b, c) = exp;
    if a < 0 || b < 0 || c < 0 || a + b + c != 2 {
        return Rational::zero();
    }
    match support.index_of(LatticePoint::new(a, b)) {
        Some(idx) => coeffs.get(poly, idx).clone(),
        None => Rational::zero(),
    }
}

fn macaulay_two(support: &Support, coeffs: &CoefficientAssignment) -> Result<Rational> {
    // Degree-4 ternary monomials, 15 of them.
    let mut monomials = Vec::new();
    for x in 0..=4i64 {
        for y in 0..=(4 - x) {
            monomials.push((x, y, 4 - x - y));
        }
    }

    let non_reduced =
        |g: (i64, i64, i64)| (g.0 >= 2) as u8 + (g.1 >= 2) as u8 + (g.2 >= 2) as u8 >= 2;

    // Row for gamma: divide by the first variable whose square divides it,
    // multiply the matching polynomial.
    let mut rows = Vec::with_capacity(monomials.len());
    for &gamma in &monomials {
        let (poly, shift) = if gamma.0 >= 2 {
            (1, (gamma.0 - 2, gamma.1, gamma.2))
        } else if gamma.1 >= 2 {
            (2, (gamma.0, gamma.1 - 2, gamma.2))
        } else {
            (3, (gamma.0, gamma.1, gamma.2 - 2))
        };
        let row: Vec<Rational> = monomials
            .iter()
            .map(|&delta| {
                quadric_coeff(
                    support,
                    coeffs,
                    poly,
                    (delta.0 - shift.0, delta.1 - shift.1, delta.2 - shift.2),
                )
            })
            .collect();
        rows.push(row);
    }

    let full = RationalMatrix::new(rows.clone())?.determinant();

    let minor_positions: Vec<usize> = monomials
        .iter()
        .enumerate()
        .filter(|(_, &g)| non_reduced(g))
        .map(|(i, _)| i)
        .collect();
    debug_assert_eq!(minor_positions.len(), 3);
    let minor_rows: Vec<Vec<Rational>> = minor_positions
        .iter()
        .map(|&r| {
            minor_positions
                .iter()
                .map(|&c| rows[r][c].clone())
                .collect()
        })
        .collect();
    let minor = RationalMatrix::new(minor_rows)?.determinant();
    if minor.is_zero() {
        return Err(Error::ExtraneousMinorZero);
    }
    Ok(full / minor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{double_triangle, example_support, unit_square, unit_triangle};
    use num::Signed;

    fn rat(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn rat2(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn triangle_resultant_is_the_coefficient_determinant() {
        let support = unit_triangle();
        let coeffs = CoefficientAssignment::from_integers([
            &[1, 0, 0],
            &[0, 1, 0],
            &[0, 0, 1],
        ]);
        let r = resultant_value(&support, &coeffs, &ResultantOptions::default()).unwrap();
        assert_eq!(r.clone().abs(), rat(1));

        let mut rng = SplitMix64::new(11);
        for _ in 0..5 {
            let coeffs = random_system(&mut rng, 3, -9, 9);
            let r = resultant_value(&support, &coeffs, &ResultantOptions::default()).unwrap();
            let rows = (1..=3)
                .map(|i| (1..=3).map(|a| coeffs.get(i, a).clone()).collect())
                .collect();
            let det = RationalMatrix::new(rows).unwrap().determinant();
            assert_eq!(r.clone().abs(), det.abs());
        }
    }

    #[test]
    fn planted_roots_vanish_exactly() {
        let support = example_support();
        let root = (rat(2), rat(3));
        let coeffs = planted_root_system(&support, (&root.0, &root.1), 42);
        for poly in 1..=3 {
            assert!(
                evaluate_at_point(&support, &coeffs, poly, (&root.0, &root.1)).is_zero(),
                "f{poly} does not vanish at the planted root"
            );
        }
        let r = resultant_value(&support, &coeffs, &ResultantOptions::default()).unwrap();
        assert!(r.is_zero());
        // Same seed, same assignment.
        assert_eq!(coeffs, planted_root_system(&support, (&root.0, &root.1), 42));
    }

    #[test]
    fn planted_at_one_one_balances_the_row() {
        let support = example_support();
        let one = rat(1);
        let coeffs = planted_root_system(&support, (&one, &one), 7);
        for poly in 1..=3 {
            let sum: Rational = (2..=support.len())
                .map(|a| coeffs.get(poly, a).clone())
                .fold(Rational::zero(), |acc, x| acc + x);
            assert_eq!(coeffs.get(poly, 1).clone(), -sum);
        }
    }

    #[test]
    fn planted_roots_with_rational_coordinates() {
        let support = unit_square();
        let root = (rat2(-3, 2), rat2(5, 7));
        let coeffs = planted_root_system(&support, (&root.0, &root.1), 1234);
        let r = resultant_value(&support, &coeffs, &ResultantOptions::default()).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn scaling_matches_the_area_degree() {
        let mut rng = SplitMix64::new(3141);
        let cases: Vec<(Support, i64)> = vec![
            (example_support(), 5),
            (unit_triangle(), 1),
            (unit_square(), 2),
            (double_triangle(), 4),
        ];
        for (support, degree) in cases {
            let coeffs = loop {
                let c = random_system(&mut rng, support.len(), -9, 9);
                let r = resultant_value(&support, &c, &ResultantOptions::default()).unwrap();
                if !r.is_zero() {
                    break c;
                }
            };
            let polygon = polygon_from_support(&support).unwrap();
            assert_eq!(normalized_area(&polygon), degree);
            for poly in 1..=3 {
                assert!(scaling_degree_check(&support, &coeffs, &rat(2), poly).unwrap());
            }
            assert!(scaling_degree_check(&support, &coeffs, &rat2(5, 2), 1).unwrap());
            assert!(scaling_degree_check(&support, &coeffs, &rat(3), 2).unwrap());
        }
    }

    #[test]
    fn scaling_rejects_zero_base() {
        let support = example_support();
        let root = (rat(1), rat(2));
        let coeffs = planted_root_system(&support, (&root.0, &root.1), 5);
        assert_eq!(
            scaling_degree_check(&support, &coeffs, &rat(2), 1),
            Err(Error::DegenerateBaseValue)
        );
    }

    #[test]
    fn row_swap_changes_determinant_by_a_fixed_sign() {
        let support = example_support();
        let pipeline = build_pipeline(&support, &ResultantOptions::default()).unwrap();
        let mut rng = SplitMix64::new(808);
        let mut ratios = Vec::new();
        for _ in 0..3 {
            let coeffs = random_system(&mut rng, support.len(), -9, 9);
            let base = pipeline.matrix.evaluate(&coeffs).unwrap().determinant();
            if base.is_zero() {
                continue;
            }
            let swapped = pipeline
                .matrix
                .evaluate(&coeffs.with_swapped_rows(1, 2))
                .unwrap()
                .determinant();
            ratios.push(swapped / base);
        }
        assert!(!ratios.is_empty());
        for r in &ratios {
            assert!(r.clone().abs().is_one(), "ratio must be a sign");
            assert_eq!(r, &ratios[0], "sign must not depend on the coefficients");
        }
    }

    #[test]
    fn macaulay_degree_one_is_the_coefficient_determinant() {
        let support = unit_triangle();
        let coeffs = CoefficientAssignment::from_integers([
            &[1, 0, 0],
            &[0, 1, 0],
            &[0, 0, 1],
        ]);
        assert_eq!(
            macaulay_resultant(&support, &coeffs, 1).unwrap().abs(),
            rat(1)
        );
    }

    #[test]
    fn macaulay_rejects_other_supports() {
        let support = unit_square();
        let coeffs = CoefficientAssignment::from_integers([
            &[1, 1, 1, 1],
            &[1, 1, 1, 1],
            &[1, 1, 1, 1],
        ]);
        assert!(matches!(
            macaulay_resultant(&support, &coeffs, 1),
            Err(Error::UnsupportedSupport(_))
        ));
    }

    #[test]
    fn macaulay_vanishes_on_a_planted_conic_triple() {
        let support = double_triangle();
        let root = (rat(2), rat(-3));
        let coeffs = planted_root_system(&support, (&root.0, &root.1), 99);
        let value = macaulay_resultant(&support, &coeffs, 2).unwrap();
        assert!(value.is_zero());
    }

    #[test]
    fn macaulay_agrees_with_the_hybrid_determinant() {
        let support = double_triangle();
        let mut rng = SplitMix64::new(4242);
        let mut done = 0;
        while done < 5 {
            let coeffs = random_system(&mut rng, support.len(), -9, 9);
            let dense = match macaulay_resultant(&support, &coeffs, 2) {
                Ok(v) => v,
                // Unlucky draw made the extraneous minor vanish; redraw.
                Err(Error::ExtraneousMinorZero) => continue,
                Err(e) => panic!("unexpected error: {e}"),
            };
            let hybrid = resultant_value(&support, &coeffs, &ResultantOptions::default())
                .unwrap();
            assert_eq!(hybrid.abs(), dense.abs());
            done += 1;
        }
    }

    #[test]
    fn generic_systems_are_nonzero() {
        let support = example_support();
        let mut rng = SplitMix64::new(1717);
        let mut nonzero = 0;
        for _ in 0..10 {
            let coeffs = random_system(&mut rng, support.len(), -9, 9);
            if !resultant_value(&support, &coeffs, &ResultantOptions::default())
                .unwrap()
                .is_zero()
            {
                nonzero += 1;
            }
        }
        assert!(nonzero >= 9);
    }
}
