//! Problem-file parsing and exact rational serialization.
//!
//! A problem file is JSON:
//!
//! ```json
//! {
//!   "support": [[0,0], [1,0], [0,1]],
//!   "coefficients": [["1", "-2", "1/3"], ["0", "4", "5"], ["7", "-1", "2"]],
//!   "options": {"vertex": [0,0], "complete_support": false, "seed": 7}
//! }
//! ```
//!
//! Support order is significant: it numbers the monomials. Coefficients are
//! `"p/q"` or integer strings (bare JSON integers are also accepted); output
//! rationals are always decimal strings, never floats.

use std::str::FromStr;

use num::{BigInt, One, Zero};
use serde::Deserialize;
use serde_json::Value;

use crate::geometry::{lattice_points, LatticePoint, Polygon, Support};
use crate::matrix::CoefficientAssignment;
use crate::{Error, Rational, Result};

#[derive(Deserialize)]
struct RawProblem {
    support: Vec<(i64, i64)>,
    #[serde(default)]
    coefficients: Option<Vec<Vec<Value>>>,
    #[serde(default)]
    options: Option<RawOptions>,
}

#[derive(Deserialize, Default)]
struct RawOptions {
    #[serde(default)]
    vertex: Option<(i64, i64)>,
    #[serde(default)]
    complete_support: Option<bool>,
    #[serde(default)]
    seed: Option<u64>,
}

/// A parsed problem instance.
#[derive(Clone, Debug)]
pub struct Problem {
    pub support: Support,
    pub coefficients: Option<CoefficientAssignment>,
    pub vertex: Option<LatticePoint>,
    pub complete_support: bool,
    pub seed: Option<u64>,
}

/// Parse `"p"`, `"-p"` or `"p/q"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidInput(format!("malformed rational '{text}'"));
    let mut parts = text.splitn(2, '/');
    let numer = parts.next().ok_or_else(bad)?.trim();
    let numer = BigInt::from_str(numer).map_err(|_| bad())?;
    match parts.next() {
        None => Ok(Rational::from_integer(numer)),
        Some(denom) => {
            let denom = BigInt::from_str(denom.trim()).map_err(|_| bad())?;
            if denom.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(numer, denom))
        }
    }
}

fn rational_from_value(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => n
            .as_i64()
            .map(|x| Rational::from_integer(BigInt::from(x)))
            .ok_or_else(|| {
                Error::InvalidInput(format!("coefficient {n} is not an exact integer"))
            }),
        other => Err(Error::InvalidInput(format!(
            "coefficient must be a string or integer, got {other}"
        ))),
    }
}

/// Render a rational as `"p"` or `"p/q"`.
pub fn render_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse a problem file.
pub fn parse_problem(text: &str) -> Result<Problem> {
    let raw: RawProblem = serde_json::from_str(text)
        .map_err(|e| Error::InvalidInput(format!("malformed problem file: {e}")))?;
    let support = Support::new(raw.support.into_iter().map(LatticePoint::from).collect())?;
    let coefficients = match raw.coefficients {
        None => None,
        Some(rows) => {
            let parsed: Result<Vec<Vec<Rational>>> = rows
                .iter()
                .map(|row| row.iter().map(rational_from_value).collect())
                .collect();
            let assignment = CoefficientAssignment::new(parsed?)?;
            if assignment.num_points() != support.len() {
                return Err(Error::DimensionMismatch {
                    expected: support.len(),
                    rows: 3,
                    cols: assignment.num_points(),
                });
            }
            Some(assignment)
        }
    };
    let options = raw.options.unwrap_or_default();
    Ok(Problem {
        support,
        coefficients,
        vertex: options.vertex.map(LatticePoint::from),
        complete_support: options.complete_support.unwrap_or(false),
        seed: options.seed,
    })
}

/// Saturate a support by appending the missing hull lattice points (in
/// canonical order) with explicit zero coefficient columns. Returns the new
/// support, the padded coefficients and the list of appended points.
pub fn complete_support(
    support: &Support,
    coefficients: Option<&CoefficientAssignment>,
) -> Result<(Support, Option<CoefficientAssignment>, Vec<LatticePoint>)> {
    let polygon = Polygon::from_points(support.points())?;
    let missing = missing_points(&polygon, support);
    if missing.is_empty() {
        return Ok((support.clone(), coefficients.cloned(), missing));
    }
    let mut points = support.points().to_vec();
    points.extend(missing.iter().copied());
    let completed = Support::new(points)?;
    let padded = coefficients.map(|c| {
        let rows = c
            .rows()
            .iter()
            .map(|row| {
                let mut row = row.clone();
                row.extend(std::iter::repeat_n(Rational::zero(), missing.len()));
                row
            })
            .collect();
        CoefficientAssignment::new(rows).expect("padded rows stay rectangular")
    });
    Ok((completed, padded, missing))
}

fn missing_points(polygon: &Polygon, support: &Support) -> Vec<LatticePoint> {
    lattice_points(polygon, 1, false)
        .into_iter()
        .filter(|p| support.index_of(*p).is_none())
        .collect()
}
