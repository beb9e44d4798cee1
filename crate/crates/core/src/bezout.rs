//! The Bezout block `B`: one column per support point, one row per interior
//! lattice point of `2Q`, entries integer linear forms in bracket variables.
//!
//! The column of a support point `alpha` collects, for every admissible
//! ordered triple `(u, v, w)` of support indices, the canonicalized bracket
//! `[uvw]` at row `u + v + w - alpha`. Admissibility is a Boolean combination
//! of per-ray inequalities on homogenized coordinates:
//!
//! ```text
//! forall i in R1:  u_i + v_i + w_i > alpha_i     exists i in R1:  v_i + w_i <= alpha_i
//! forall j in R2:        v_j + w_j > alpha_j     exists j in R2:        w_j <= alpha_j
//! forall k in R3:              w_k > alpha_k
//! ```
//!
//! The refined ray (when present) participates in the `R3` test with exact
//! scaled-integer arithmetic.

use std::collections::BTreeMap;
use std::fmt;

use crate::fan::{coord_table, FanPartition, RaySystem};
use crate::geometry::{lattice_points, sort_graded_lex, LatticePoint, Polygon, Support};
use crate::matrix::CoefficientAssignment;
use crate::{Error, Rational, Result};

/// A bracket variable `[abc]`: the determinant of the 3x3 minor of the
/// coefficient matrix on support columns `a < b < c` (1-based).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Bracket([usize; 3]);

impl Bracket {
    pub fn new(a: usize, b: usize, c: usize) -> Bracket {
        assert!(a < b && b < c, "bracket indices must be strictly increasing");
        Bracket([a, b, c])
    }

    pub fn indices(&self) -> [usize; 3] {
        self.0
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        if c <= 9 {
            write!(f, "[{a}{b}{c}]")
        } else {
            write!(f, "[{a},{b},{c}]")
        }
    }
}

/// Canonicalize an ordered index triple: `None` when two indices coincide,
/// otherwise the parity of the sorting permutation and the sorted bracket.
pub fn canonical_bracket(u: usize, v: usize, w: usize) -> Option<(i64, Bracket)> {
    if u == v || v == w || u == w {
        return None;
    }
    let mut t = [u, v, w];
    let mut sign = 1i64;
    // Three-element bubble sort; each swap flips the sign.
    if t[0] > t[1] {
        t.swap(0, 1);
        sign = -sign;
    }
    if t[1] > t[2] {
        t.swap(1, 2);
        sign = -sign;
    }
    if t[0] > t[1] {
        t.swap(0, 1);
        sign = -sign;
    }
    Some((sign, Bracket(t)))
}

/// Integer linear combination of canonical brackets. The empty combination
/// is the zero form; stored coefficients are never zero.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BracketForm {
    terms: BTreeMap<Bracket, i64>,
}

impl BracketForm {
    pub fn zero() -> BracketForm {
        BracketForm::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Bracket, &i64)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Add `coeff * [uvw]`, canonicalizing; repeated indices contribute nothing.
    pub fn add_triple(&mut self, coeff: i64, u: usize, v: usize, w: usize) {
        if let Some((sign, bracket)) = canonical_bracket(u, v, w) {
            self.add_canonical(coeff * sign, bracket);
        }
    }

    pub fn add_canonical(&mut self, coeff: i64, bracket: Bracket) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(bracket).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&bracket);
        }
    }

    /// The form with every bracket's sign flipped.
    pub fn negated(&self) -> BracketForm {
        BracketForm {
            terms: self.terms.iter().map(|(b, &c)| (*b, -c)).collect(),
        }
    }

    /// Evaluate at a concrete coefficient assignment; each bracket becomes
    /// the determinant of the corresponding 3x3 minor.
    pub fn evaluate(&self, coeffs: &CoefficientAssignment) -> Rational {
        let mut acc = Rational::from_integer(0.into());
        for (bracket, &c) in &self.terms {
            acc += coeffs.bracket_minor(*bracket) * Rational::from_integer(c.into());
        }
        acc
    }
}

impl fmt::Display for BracketForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (bracket, &coeff)) in self.terms.iter().enumerate() {
            if coeff < 0 {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            if coeff.abs() != 1 {
                write!(f, "{}", coeff.abs())?;
            }
            write!(f, "{bracket}")?;
        }
        Ok(())
    }
}

/// Scaled level-1 coordinates of the support points and of `alpha`, with the
/// ray partition translated to 0-based ray indices.
struct TripleContext {
    coords: Vec<Vec<i64>>,
    alpha_coords: Vec<i64>,
    r1: Vec<usize>,
    r2: Vec<usize>,
    r3: Vec<usize>,
}

impl TripleContext {
    fn new(
        support: &Support,
        polygon: &Polygon,
        partition: &FanPartition,
        alpha: LatticePoint,
    ) -> Result<TripleContext> {
        if !polygon.contains(alpha, 1) {
            return Err(Error::PointNotInSupportHull(alpha));
        }
        let rays = RaySystem::new(polygon, partition);
        let coords = coord_table(&rays, support.points());
        let alpha_coords: Vec<i64> = (0..rays.num_rays())
            .map(|k| rays.coord(k, alpha, 1))
            .collect();
        let to0 = |set: &[usize]| set.iter().map(|&i| i - 1).collect();
        Ok(TripleContext {
            coords,
            alpha_coords,
            r1: to0(&partition.r1),
            r2: to0(&partition.r2),
            r3: to0(&partition.r3),
        })
    }
}

/// Ordered support-index triples `(u, v, w)` contributing to the column of
/// `alpha`, in lexicographic order. Indices are 1-based and pairwise
/// distinct: a repeated index kills its bracket, so degenerate solutions of
/// the inequality system are never emitted.
pub fn enumerate_triples(
    support: &Support,
    polygon: &Polygon,
    partition: &FanPartition,
    alpha: LatticePoint,
) -> Result<Vec<(usize, usize, usize)>> {
    let ctx = TripleContext::new(support, polygon, partition, alpha)?;
    let n = support.len();
    let (coords, a) = (&ctx.coords, &ctx.alpha_coords);

    let mut out = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if v == u {
                continue;
            }
            for w in 0..n {
                if w == u || w == v {
                    continue;
                }
                let all_r3 = ctx.r3.iter().all(|&k| coords[w][k] > a[k]);
                if !all_r3 {
                    continue;
                }
                let any_r2 = ctx.r2.iter().any(|&k| coords[w][k] <= a[k]);
                if !any_r2 {
                    continue;
                }
                let all_r2 = ctx.r2.iter().all(|&k| coords[v][k] + coords[w][k] > a[k]);
                if !all_r2 {
                    continue;
                }
                let any_r1 = ctx.r1.iter().any(|&k| coords[v][k] + coords[w][k] <= a[k]);
                if !any_r1 {
                    continue;
                }
                let all_r1 = ctx
                    .r1
                    .iter()
                    .all(|&k| coords[u][k] + coords[v][k] + coords[w][k] > a[k]);
                if !all_r1 {
                    continue;
                }
                out.push((u + 1, v + 1, w + 1));
            }
        }
    }
    Ok(out)
}

/// The column of `alpha`: bracket forms keyed by their interior row point
/// `u + v + w - alpha`, zero rows omitted, rows in canonical order.
pub fn bezout_column(
    support: &Support,
    polygon: &Polygon,
    partition: &FanPartition,
    alpha: LatticePoint,
) -> Result<Vec<(LatticePoint, BracketForm)>> {
    let triples = enumerate_triples(support, polygon, partition, alpha)?;
    let mut rows: BTreeMap<LatticePoint, BracketForm> = BTreeMap::new();
    for (u, v, w) in triples {
        let row = support.point(u) + support.point(v) + support.point(w) - alpha;
        assert!(
            polygon.is_interior(row, 2),
            "triple ({u},{v},{w}) for {alpha} lands on {row}, not interior to 2Q"
        );
        rows.entry(row).or_default().add_triple(1, u, v, w);
    }
    let mut out: Vec<(LatticePoint, BracketForm)> = rows
        .into_iter()
        .filter(|(_, form)| !form.is_zero())
        .collect();
    out.sort_by_key(|(p, _)| p.graded_lex_key());
    Ok(out)
}

/// The assembled Bezout block: rows indexed by `int(2Q)` in canonical order,
/// columns by the support points in input order.
#[derive(Clone, Debug, PartialEq)]
pub struct BezoutBlock {
    row_points: Vec<LatticePoint>,
    num_cols: usize,
    entries: Vec<Vec<BracketForm>>,
}

impl BezoutBlock {
    pub fn row_points(&self) -> &[LatticePoint] {
        &self.row_points
    }

    pub fn num_rows(&self) -> usize {
        self.row_points.len()
    }

    pub fn num_cols(&self) -> usize {
        self.num_cols
    }

    pub fn entry(&self, row: usize, col: usize) -> &BracketForm {
        &self.entries[row][col]
    }
}

pub fn bezout_block(
    support: &Support,
    polygon: &Polygon,
    partition: &FanPartition,
) -> Result<BezoutBlock> {
    let mut row_points = lattice_points(polygon, 2, true);
    sort_graded_lex(&mut row_points);
    let row_index: BTreeMap<LatticePoint, usize> = row_points
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, i))
        .collect();

    let mut entries = vec![vec![BracketForm::zero(); support.len()]; row_points.len()];
    for (col, &alpha) in support.points().iter().enumerate() {
        for (point, form) in bezout_column(support, polygon, partition, alpha)? {
            let row = row_index[&point];
            entries[row][col] = form;
        }
    }
    Ok(BezoutBlock {
        row_points,
        num_cols: support.len(),
        entries,
    })
}
