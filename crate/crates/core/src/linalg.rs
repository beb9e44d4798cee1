//! Dense exact-rational matrices and fraction-free determinants.

use num::{BigInt, Integer, One, Zero};

use crate::{Error, Rational, Result};

/// Square matrix of exact rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMatrix {
    entries: Vec<Vec<Rational>>,
}

impl RationalMatrix {
    pub fn new(entries: Vec<Vec<Rational>>) -> Result<RationalMatrix> {
        let n = entries.len();
        if entries.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidInput("matrix is not square".into()));
        }
        Ok(RationalMatrix { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row][col]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    /// Exact determinant: denominators are cleared row by row, then a
    /// fraction-free (Bareiss) elimination runs over the integers. Pivoting
    /// takes the first nonzero entry; exact arithmetic needs no magnitude
    /// heuristics.
    pub fn determinant(&self) -> Rational {
        let n = self.size();
        if n == 0 {
            return Rational::one();
        }

        let mut scale = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for row in &self.entries {
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            m.push(
                row.iter()
                    .map(|x| x.numer() * (&lcm / x.denom()))
                    .collect(),
            );
            scale *= lcm;
        }

        let mut sign = 1i64;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            let pivot = match (k..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => r,
                None => return Rational::zero(),
            };
            if pivot != k {
                m.swap(pivot, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev; // exact by the Bareiss identity
                }
            }
            prev = m[k][k].clone();
        }

        let mut det = Rational::new(m[n - 1][n - 1].clone(), scale);
        if sign < 0 {
            det = -det;
        }
        det
    }
}

/// Convenience constructor from integer entries.
pub fn matrix_from_integers(rows: &[&[i64]]) -> RationalMatrix {
    RationalMatrix::new(
        rows.iter()
            .map(|row| {
                row.iter()
                    .map(|&x| Rational::from_integer(BigInt::from(x)))
                    .collect()
            })
            .collect(),
    )
    .unwrap()
}
