//! Distinguished cone and ray partition of the normal fan.
//!
//! A distinguished vertex `p` is fixed together with its two incident facet
//! normals `eta1` (incoming edge of the counterclockwise boundary walk) and
//! `eta2` (outgoing edge). Every ray `eta` of the fan expands uniquely as
//! `eta = c1*eta1 + c2*eta2`; the sign pattern of `(c1, c2)` sorts the rays
//! into three sets:
//!
//! * `R1`: `c1 >= 0, c2 <= 0` (the rays clockwise of the cone, `eta1` included),
//! * `R2`: `c1 <= 0, c2 >= 0` (counterclockwise, `eta2` included),
//! * `R3`: `c1 < 0, c2 < 0` (rays maximized at `p`).
//!
//! When `R3` is empty (every edge has a parallel partner, as for the square)
//! the fan is refined with one extra ray `eta_new = -eta1 - eta2`, whose
//! offset is inherited from the cone containing it.

use num::{BigInt, ToPrimitive};

use crate::geometry::{LatticePoint, Polygon};
use crate::{Error, Rational, Result};

/// Extra ray added when no genuine ray is strictly opposite the
/// distinguished cone. Kept verbatim as `-eta1 - eta2` even when that vector
/// is not primitive; the paired offset keeps the inequalities valid.
#[derive(Clone, Debug, PartialEq)]
pub struct RefinedRay {
    pub normal: (i64, i64),
    pub offset: Rational,
    /// 1-based indices `(i, j)` of the genuine facets whose cone contains
    /// the refined ray.
    pub cone: (usize, usize),
    /// Positive rationals `(c1, c2)` with `normal = c1*eta_i + c2*eta_j`.
    pub coefficients: (Rational, Rational),
}

impl RefinedRay {
    /// Homogenized coordinate of `p` at `level`, in exact rational arithmetic.
    pub fn coordinate(&self, p: LatticePoint, level: i64) -> Rational {
        let dot = BigInt::from(p.x * self.normal.0 + p.y * self.normal.1);
        Rational::from_integer(dot) + Rational::from_integer(BigInt::from(level)) * &self.offset
    }

    pub fn is_primitive(&self) -> bool {
        num::integer::gcd(self.normal.0.abs(), self.normal.1.abs()) == 1
    }
}

/// The distinguished vertex with its ray partition, 1-based facet indices.
/// Index `num_facets + 1` denotes the refined ray when present.
#[derive(Clone, Debug, PartialEq)]
pub struct FanPartition {
    pub vertex: LatticePoint,
    pub eta1: usize,
    pub eta2: usize,
    pub r1: Vec<usize>,
    pub r2: Vec<usize>,
    pub r3: Vec<usize>,
    pub refined: Option<RefinedRay>,
}

fn det(a: (i64, i64), b: (i64, i64)) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

/// Does the cone spanned by facets `(i1, i2)` see a genuine ray with both
/// expansion coefficients strictly negative?
fn has_strict_opposite(polygon: &Polygon, i1: usize, i2: usize) -> bool {
    let eta1 = polygon.facet(i1).normal;
    let eta2 = polygon.facet(i2).normal;
    polygon
        .facets()
        .iter()
        .any(|f| det(f.normal, eta2) < 0 && det(eta1, f.normal) < 0)
}

/// Pick the distinguished vertex and its incident facet pair.
///
/// With an override the vertex is used as given (it must be a vertex).
/// Otherwise prefer a vertex whose partition has non-empty `R3` without
/// refinement; ties, or the absence of any such vertex, are broken by the
/// lexicographically smallest vertex.
pub fn choose_distinguished_cone(
    polygon: &Polygon,
    override_vertex: Option<LatticePoint>,
) -> Result<(LatticePoint, usize, usize)> {
    if let Some(v) = override_vertex {
        let pos = polygon
            .vertex_position(v)
            .ok_or(Error::NotAVertex(v))?;
        let (i1, i2) = polygon.incident_facets(pos);
        return Ok((v, i1, i2));
    }

    let mut best: Option<(LatticePoint, usize, usize)> = None;
    let mut best_fallback: Option<(LatticePoint, usize, usize)> = None;
    for pos in 0..polygon.vertices().len() {
        let v = polygon.vertices()[pos];
        let (i1, i2) = polygon.incident_facets(pos);
        let candidate = (v, i1, i2);
        if has_strict_opposite(polygon, i1, i2)
            && best.is_none_or(|(bv, _, _)| v < bv) {
                best = Some(candidate);
            }
        if best_fallback.is_none_or(|(bv, _, _)| v < bv) {
            best_fallback = Some(candidate);
        }
    }
    Ok(best.or(best_fallback).expect("polygon has vertices"))
}

/// Partition the fan rays relative to the distinguished cone, refining with
/// `-eta1 - eta2` when `R3` would be empty.
pub fn partition_fan(polygon: &Polygon, cone: (LatticePoint, usize, usize)) -> FanPartition {
    let (vertex, i1, i2) = cone;
    let eta1 = polygon.facet(i1).normal;
    let eta2 = polygon.facet(i2).normal;
    let d12 = det(eta1, eta2);
    debug_assert!(d12 > 0, "incident normals must span a positive cone");

    let mut r1 = Vec::new();
    let mut r2 = Vec::new();
    let mut r3 = Vec::new();
    for f in polygon.facets() {
        // Signs of (c1, c2) in eta = c1*eta1 + c2*eta2; d12 > 0 so they are
        // the signs of the two determinants.
        let c1 = det(f.normal, eta2);
        let c2 = det(eta1, f.normal);
        if c1 >= 0 && c2 <= 0 {
            r1.push(f.index);
        } else if c1 <= 0 && c2 >= 0 {
            r2.push(f.index);
        } else if c1 < 0 && c2 < 0 {
            r3.push(f.index);
        } else {
            // c1 > 0 and c2 > 0 would put a genuine ray strictly inside the
            // normal cone of the vertex, contradicting adjacency.
            unreachable!("ray {:?} strictly inside the distinguished cone", f.normal);
        }
    }

    let mut refined = None;
    if r3.is_empty() {
        let new_normal = (-eta1.0 - eta2.0, -eta1.1 - eta2.1);
        let s = polygon.num_facets();
        for i in 1..=s {
            let j = i % s + 1;
            let ni = polygon.facet(i).normal;
            let nj = polygon.facet(j).normal;
            let dij = det(ni, nj);
            if dij <= 0 {
                continue;
            }
            let num1 = det(new_normal, nj);
            let num2 = det(ni, new_normal);
            if num1 > 0 && num2 > 0 {
                let den = Rational::from_integer(BigInt::from(dij));
                let c1 = Rational::from_integer(BigInt::from(num1)) / &den;
                let c2 = Rational::from_integer(BigInt::from(num2)) / &den;
                let ai = Rational::from_integer(BigInt::from(polygon.facet(i).offset));
                let aj = Rational::from_integer(BigInt::from(polygon.facet(j).offset));
                let offset = &c1 * ai + &c2 * aj;
                r3.push(s + 1);
                refined = Some(RefinedRay {
                    normal: new_normal,
                    offset,
                    cone: (i, j),
                    coefficients: (c1, c2),
                });
                break;
            }
        }
        assert!(
            refined.is_some(),
            "refined ray must land strictly inside some cone when R3 is empty"
        );
    }

    FanPartition {
        vertex,
        eta1: i1,
        eta2: i2,
        r1,
        r2,
        r3,
        refined,
    }
}

/// All rays (genuine facets plus the optional refined ray) with their
/// homogenized coordinates scaled to integers.
///
/// The refined offset may be a rational `num/den`; scaling that ray's
/// coordinates by `den` keeps every per-ray comparison exact in `i64`
/// (all tests downstream compare sums of coordinates of one ray).
#[derive(Clone, Debug)]
pub struct RaySystem {
    rays: Vec<ScaledRay>,
}

#[derive(Clone, Copy, Debug)]
struct ScaledRay {
    normal: (i64, i64),
    offset_num: i64,
    offset_den: i64,
}

impl RaySystem {
    pub fn new(polygon: &Polygon, partition: &FanPartition) -> RaySystem {
        let mut rays: Vec<ScaledRay> = polygon
            .facets()
            .iter()
            .map(|f| ScaledRay {
                normal: f.normal,
                offset_num: f.offset,
                offset_den: 1,
            })
            .collect();
        if let Some(refined) = &partition.refined {
            let num = refined
                .offset
                .numer()
                .to_i64()
                .expect("refined offset numerator fits i64");
            let den = refined
                .offset
                .denom()
                .to_i64()
                .expect("refined offset denominator fits i64");
            rays.push(ScaledRay {
                normal: refined.normal,
                offset_num: num,
                offset_den: den,
            });
        }
        RaySystem { rays }
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    /// Scaled homogenized coordinate of `p` at `level` on ray `ray` (0-based):
    /// `den * <p, normal> + level * num`, i.e. `den` times the true coordinate.
    pub fn coord(&self, ray: usize, p: LatticePoint, level: i64) -> i64 {
        let r = &self.rays[ray];
        r.offset_den * (p.x * r.normal.0 + p.y * r.normal.1) + level * r.offset_num
    }
}

/// Scaled level-1 coordinates of a list of points, one row per point.
pub(crate) fn coord_table(rays: &RaySystem, points: &[LatticePoint]) -> Vec<Vec<i64>> {
    points
        .iter()
        .map(|&p| (0..rays.num_rays()).map(|k| rays.coord(k, p, 1)).collect())
        .collect()
}
