//! Lattice polygons in the plane: convex hulls with primitive inner facet
//! normals, lattice point enumeration for `kQ` and `int(kQ)`, facet-wise
//! homogenized coordinates, and the normalized area.
//!
//! Conventions used everywhere downstream:
//! * the polygon is `Q = { m : <m, eta_i> >= -a_i }` with `eta_i` the
//!   primitive inner normal of facet `i` and `a_i` its integer offset;
//! * vertices and facets are stored counterclockwise, `vertices[i]` is the
//!   start of the edge carrying `facets[i]`;
//! * facet numbering is 1-based and starts at the facet with normal `(0,1)`
//!   when present, otherwise at the lexicographically smallest normal;
//! * the canonical order on lattice points is graded-lex: total degree
//!   `x+y` ascending, then `x` descending.

use std::collections::HashSet;
use std::fmt;

use num::BigInt;
use serde::{Deserialize, Serialize};

use crate::fan::RefinedRay;
use crate::{Error, Rational, Result};

/// Integer point of the plane lattice; the exponent vector of a monomial.
#[derive(
    Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize, Default,
)]
#[serde(from = "(i64, i64)", into = "(i64, i64)")]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        LatticePoint { x, y }
    }

    /// Sort key for the canonical point order: `x+y` ascending, `x` descending.
    pub fn graded_lex_key(self) -> (i64, i64) {
        (self.x + self.y, -self.x)
    }
}

impl From<(i64, i64)> for LatticePoint {
    fn from(p: (i64, i64)) -> Self {
        LatticePoint::new(p.0, p.1)
    }
}

impl From<LatticePoint> for (i64, i64) {
    fn from(p: LatticePoint) -> Self {
        (p.x, p.y)
    }
}

impl std::ops::Add for LatticePoint {
    type Output = LatticePoint;
    fn add(self, rhs: Self) -> Self {
        LatticePoint::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl std::ops::Sub for LatticePoint {
    type Output = LatticePoint;
    fn sub(self, rhs: Self) -> Self {
        LatticePoint::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Sort points into the canonical graded-lex order.
pub fn sort_graded_lex(points: &mut [LatticePoint]) {
    points.sort_by_key(|p| p.graded_lex_key());
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Cross product `(b - a) x (c - a)`; positive when `a,b,c` turn left.
fn cross(a: LatticePoint, b: LatticePoint, c: LatticePoint) -> i128 {
    let (abx, aby) = ((b.x - a.x) as i128, (b.y - a.y) as i128);
    let (acx, acy) = ((c.x - a.x) as i128, (c.y - a.y) as i128);
    abx * acy - aby * acx
}

/// One edge of the polygon, as the half-plane `<m, normal> >= -offset`.
///
/// `normal` is primitive (gcd of entries is 1) and points into the polygon;
/// equality holds exactly on the edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: (i64, i64),
    pub offset: i64,
    /// 1-based position in the counterclockwise facet order.
    pub index: usize,
}

impl Facet {
    /// Homogenized coordinate of `p` at `level`: `<p, normal> + level*offset`.
    ///
    /// Nonnegative exactly when `p` lies in `level*Q` on this facet's side,
    /// zero exactly on the scaled edge.
    pub fn coordinate(&self, p: LatticePoint, level: i64) -> i64 {
        p.x * self.normal.0 + p.y * self.normal.1 + level * self.offset
    }
}

/// Convex lattice polygon with counterclockwise vertex and facet lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    vertices: Vec<LatticePoint>,
    facets: Vec<Facet>,
}

impl Polygon {
    /// Convex hull of the given points, with facet data.
    ///
    /// Fails with [`Error::DegenerateSupport`] when the hull is not
    /// 2-dimensional. Duplicates are tolerated here; saturation is *not*
    /// checked (see [`polygon_from_support`]).
    pub fn from_points(points: &[LatticePoint]) -> Result<Polygon> {
        let hull = convex_hull(points)?;
        let n = hull.len();

        let mut facets = Vec::with_capacity(n);
        for i in 0..n {
            let a = hull[i];
            let b = hull[(i + 1) % n];
            let (dx, dy) = (b.x - a.x, b.y - a.y);
            // Inner normal of a ccw edge is the left-rotated direction.
            let g = gcd(dx, dy);
            let normal = (-dy / g, dx / g);
            let offset = -(a.x * normal.0 + a.y * normal.1);
            facets.push(Facet {
                normal,
                offset,
                index: 0,
            });
        }

        // Canonical starting facet: normal (0,1) if present, else the
        // lexicographically smallest normal.
        let start = facets
            .iter()
            .position(|f| f.normal == (0, 1))
            .unwrap_or_else(|| {
                let mut best = 0;
                for (i, f) in facets.iter().enumerate() {
                    if f.normal < facets[best].normal {
                        best = i;
                    }
                }
                best
            });

        let mut vertices: Vec<LatticePoint> = Vec::with_capacity(n);
        let mut rotated: Vec<Facet> = Vec::with_capacity(n);
        for i in 0..n {
            let j = (start + i) % n;
            vertices.push(hull[j]);
            rotated.push(Facet {
                index: i + 1,
                ..facets[j]
            });
        }

        Ok(Polygon {
            vertices,
            facets: rotated,
        })
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    /// Facet by 1-based index.
    pub fn facet(&self, index: usize) -> &Facet {
        &self.facets[index - 1]
    }

    /// Does `p` lie in `scale * Q`?
    pub fn contains(&self, p: LatticePoint, scale: i64) -> bool {
        self.facets.iter().all(|f| f.coordinate(p, scale) >= 0)
    }

    /// Does `p` lie strictly inside `scale * Q`?
    pub fn is_interior(&self, p: LatticePoint, scale: i64) -> bool {
        self.facets.iter().all(|f| f.coordinate(p, scale) >= 1)
    }

    /// Position of `p` in the vertex list, if it is a vertex.
    pub fn vertex_position(&self, p: LatticePoint) -> Option<usize> {
        self.vertices.iter().position(|&v| v == p)
    }

    /// 1-based indices of the two facets meeting at vertex position `pos`:
    /// `(incoming, outgoing)` in the counterclockwise boundary walk. The
    /// incoming normal precedes the outgoing normal in counterclockwise
    /// angular order, so the pair spans the vertex's normal cone.
    pub fn incident_facets(&self, pos: usize) -> (usize, usize) {
        let n = self.facets.len();
        (((pos + n - 1) % n) + 1, pos + 1)
    }
}

/// Strictly convex hull, counterclockwise, via the monotone chain.
fn convex_hull(points: &[LatticePoint]) -> Result<Vec<LatticePoint>> {
    let mut pts: Vec<LatticePoint> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return Err(Error::DegenerateSupport);
    }

    let mut lower: Vec<LatticePoint> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<LatticePoint> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return Err(Error::DegenerateSupport);
    }
    Ok(lower)
}

/// Ordered set of support points. The input order is preserved verbatim: it
/// defines the 1-based monomial numbering used by brackets and coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Support {
    points: Vec<LatticePoint>,
}

impl Support {
    /// Build a support from distinct points.
    pub fn new(points: Vec<LatticePoint>) -> Result<Support> {
        let mut seen = HashSet::new();
        for &p in &points {
            if !seen.insert(p) {
                return Err(Error::DuplicatePoint(p));
            }
        }
        Ok(Support { points })
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Point by 1-based monomial index.
    pub fn point(&self, index: usize) -> LatticePoint {
        self.points[index - 1]
    }

    /// 1-based monomial index of `p`, if present.
    pub fn index_of(&self, p: LatticePoint) -> Option<usize> {
        self.points.iter().position(|&q| q == p).map(|i| i + 1)
    }
}

/// Convex hull of a support that must be saturated: every lattice point of
/// the hull has to appear among the support points.
pub fn polygon_from_support(support: &Support) -> Result<Polygon> {
    let polygon = Polygon::from_points(support.points())?;
    let have: HashSet<LatticePoint> = support.points().iter().copied().collect();
    let missing: Vec<LatticePoint> = lattice_points(&polygon, 1, false)
        .into_iter()
        .filter(|p| !have.contains(p))
        .collect();
    if !missing.is_empty() {
        return Err(Error::NonSaturatedSupport { missing });
    }
    Ok(polygon)
}

/// All lattice points of `scale * Q` (or of its interior), in canonical
/// graded-lex order. Bounding-box scan with exact half-plane tests.
pub fn lattice_points(polygon: &Polygon, scale: i64, interior: bool) -> Vec<LatticePoint> {
    assert!(scale >= 1, "scale must be a positive integer");
    let xs: Vec<i64> = polygon.vertices().iter().map(|v| v.x * scale).collect();
    let ys: Vec<i64> = polygon.vertices().iter().map(|v| v.y * scale).collect();
    let (x0, x1) = (*xs.iter().min().unwrap(), *xs.iter().max().unwrap());
    let (y0, y1) = (*ys.iter().min().unwrap(), *ys.iter().max().unwrap());

    let mut out = Vec::new();
    for x in x0..=x1 {
        for y in y0..=y1 {
            let p = LatticePoint::new(x, y);
            let inside = if interior {
                polygon.is_interior(p, scale)
            } else {
                polygon.contains(p, scale)
            };
            if inside {
                out.push(p);
            }
        }
    }
    sort_graded_lex(&mut out);
    out
}

/// Homogenized coordinate vector of `point` at level `scale`: one entry
/// `<point, eta_i> + scale * a_i` per facet, plus the refined coordinate when
/// a refined ray is supplied (that entry may be a non-integer rational).
pub fn homogenize(
    point: LatticePoint,
    polygon: &Polygon,
    scale: i64,
    refined: Option<&RefinedRay>,
) -> Result<Vec<Rational>> {
    if !polygon.contains(point, scale) {
        return Err(Error::PointOutsidePolytope {
            point,
            scale,
        });
    }
    let mut coords: Vec<Rational> = polygon
        .facets()
        .iter()
        .map(|f| Rational::from_integer(BigInt::from(f.coordinate(point, scale))))
        .collect();
    if let Some(ray) = refined {
        coords.push(ray.coordinate(point, scale));
    }
    Ok(coords)
}

/// Twice the Euclidean area of the polygon (shoelace); always an integer.
/// This equals the degree of the sparse resultant in each polynomial.
pub fn normalized_area(polygon: &Polygon) -> i64 {
    let v = polygon.vertices();
    let n = v.len();
    let mut twice: i64 = 0;
    for i in 0..n {
        let a = v[i];
        let b = v[(i + 1) % n];
        twice += a.x * b.y - a.y * b.x;
    }
    twice.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{example_support, pts, unit_square, unit_triangle};

    fn facet_set(polygon: &Polygon) -> HashSet<((i64, i64), i64)> {
        polygon
            .facets()
            .iter()
            .map(|f| (f.normal, f.offset))
            .collect()
    }

    #[test]
    fn example_polygon_facets() {
        let polygon = polygon_from_support(&example_support()).unwrap();
        let expected: HashSet<((i64, i64), i64)> = [
            ((0, 1), 0),
            ((-1, 1), 1),
            ((-1, -1), 3),
            ((1, -1), 1),
            ((1, 0), 0),
        ]
        .into_iter()
        .collect();
        assert_eq!(facet_set(&polygon), expected);
        // Every vertex satisfies every half-plane, with equality exactly on
        // the two incident facets.
        for &v in polygon.vertices() {
            let zero = polygon
                .facets()
                .iter()
                .filter(|f| f.coordinate(v, 1) == 0)
                .count();
            assert!(polygon.contains(v, 1));
            assert_eq!(zero, 2, "vertex {v} should lie on exactly two facets");
        }
    }

    #[test]
    fn unit_triangle_facets() {
        let polygon = polygon_from_support(&unit_triangle()).unwrap();
        let expected: HashSet<((i64, i64), i64)> =
            [((0, 1), 0), ((1, 0), 0), ((-1, -1), 1)].into_iter().collect();
        assert_eq!(facet_set(&polygon), expected);
    }

    #[test]
    fn collinear_support_is_degenerate() {
        let support = Support::new(pts(&[(0, 0), (1, 0)])).unwrap();
        assert_eq!(
            polygon_from_support(&support),
            Err(Error::DegenerateSupport)
        );
        let support = Support::new(pts(&[(0, 0), (1, 0), (2, 0)])).unwrap();
        assert_eq!(
            polygon_from_support(&support),
            Err(Error::DegenerateSupport)
        );
    }

    #[test]
    fn missing_hull_point_is_reported() {
        let support = Support::new(pts(&[(0, 0), (1, 0), (0, 1), (2, 1), (1, 2)])).unwrap();
        match polygon_from_support(&support) {
            Err(Error::NonSaturatedSupport { missing }) => {
                assert_eq!(missing, vec![LatticePoint::new(1, 1)]);
            }
            other => panic!("expected non-saturated error, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_point_rejected() {
        assert_eq!(
            Support::new(pts(&[(0, 0), (1, 0), (0, 0)])),
            Err(Error::DuplicatePoint(LatticePoint::new(0, 0)))
        );
    }

    #[test]
    fn facet_numbering_starts_at_up_normal() {
        let polygon = polygon_from_support(&example_support()).unwrap();
        assert_eq!(polygon.facet(1).normal, (0, 1));
        // Counterclockwise from there.
        let normals: Vec<(i64, i64)> = polygon.facets().iter().map(|f| f.normal).collect();
        assert_eq!(
            normals,
            vec![(0, 1), (-1, 1), (-1, -1), (1, -1), (1, 0)]
        );
    }

    #[test]
    fn lattice_points_example() {
        let polygon = polygon_from_support(&example_support()).unwrap();
        assert_eq!(
            lattice_points(&polygon, 1, false),
            pts(&[(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2)])
        );
        assert_eq!(lattice_points(&polygon, 1, true), pts(&[(1, 1)]));
        // Brute-force half-plane oracle for int(2Q).
        assert_eq!(
            lattice_points(&polygon, 2, true),
            pts(&[(1, 1), (2, 1), (1, 2), (2, 2), (3, 2), (2, 3)])
        );
    }

    #[test]
    fn unit_triangle_has_no_interior_at_two() {
        let polygon = polygon_from_support(&unit_triangle()).unwrap();
        assert!(lattice_points(&polygon, 2, true).is_empty());
    }

    #[test]
    fn homogenize_interior_point_is_all_ones() {
        let polygon = polygon_from_support(&example_support()).unwrap();
        let coords = homogenize(LatticePoint::new(1, 1), &polygon, 1, None).unwrap();
        assert_eq!(coords.len(), 5);
        assert!(coords.iter().all(|c| *c == Rational::from_integer(1.into())));
    }

    #[test]
    fn homogenize_vertex_has_two_zeros() {
        let polygon = polygon_from_support(&example_support()).unwrap();
        for &v in polygon.vertices() {
            let coords = homogenize(v, &polygon, 1, None).unwrap();
            let zeros = coords.iter().filter(|c| c.numer() == &BigInt::from(0)).count();
            assert_eq!(zeros, 2);
        }
    }

    #[test]
    fn homogenize_rejects_outside_point() {
        let polygon = polygon_from_support(&unit_triangle()).unwrap();
        assert!(matches!(
            homogenize(LatticePoint::new(2, 2), &polygon, 1, None),
            Err(Error::PointOutsidePolytope { .. })
        ));
    }

    #[test]
    fn homogenize_appends_the_refined_coordinate() {
        let support = unit_square();
        let polygon = polygon_from_support(&support).unwrap();
        let cone = crate::fan::choose_distinguished_cone(&polygon, None).unwrap();
        let partition = crate::fan::partition_fan(&polygon, cone);
        let refined = partition.refined.as_ref().unwrap();
        let coords = homogenize(LatticePoint::new(0, 0), &polygon, 1, Some(refined)).unwrap();
        assert_eq!(coords.len(), polygon.num_facets() + 1);
        assert_eq!(coords[polygon.num_facets()], Rational::from_integer(2.into()));
    }

    #[test]
    fn normalized_areas() {
        assert_eq!(
            normalized_area(&polygon_from_support(&example_support()).unwrap()),
            5
        );
        assert_eq!(
            normalized_area(&polygon_from_support(&unit_triangle()).unwrap()),
            1
        );
        assert_eq!(
            normalized_area(&polygon_from_support(&unit_square()).unwrap()),
            2
        );
    }

    #[test]
    fn saturated_support_roundtrips_as_a_set() {
        for support in [example_support(), unit_triangle(), unit_square()] {
            let polygon = polygon_from_support(&support).unwrap();
            let got: HashSet<LatticePoint> =
                lattice_points(&polygon, 1, false).into_iter().collect();
            let want: HashSet<LatticePoint> = support.points().iter().copied().collect();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn minkowski_containment_spot_check() {
        let polygon = polygon_from_support(&example_support()).unwrap();
        let q1 = lattice_points(&polygon, 1, false);
        let q2 = lattice_points(&polygon, 2, false);
        for &a in &q1 {
            for &b in &q2 {
                assert!(polygon.contains(a + b, 3), "{a} + {b} escapes 3Q");
            }
            // int(kQ) is contained in kQ.
            assert!(polygon.contains(a, 1));
        }
        for p in lattice_points(&polygon, 2, true) {
            assert!(polygon.contains(p, 2));
        }
    }

    #[test]
    fn graded_lex_order_is_total_degree_then_x_descending() {
        let mut points = pts(&[(0, 1), (1, 0), (2, 3), (3, 2), (0, 0)]);
        sort_graded_lex(&mut points);
        assert_eq!(points, pts(&[(0, 0), (1, 0), (0, 1), (3, 2), (2, 3)]));
    }
}
