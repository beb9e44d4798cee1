//! Exterior-algebra certification of the Bezout block.
//!
//! Elements are integer combinations of terms `(level, point, generators)`:
//! a monomial of the homogeneous coordinate ring, recorded as the lattice
//! point it homogenizes at the given level, tensored with a signed wedge of
//! basis generators `e_a` (one per support point). Generator lists are kept
//! strictly increasing; the sign of any input ordering is folded into the
//! coefficient, and terms with a repeated generator vanish.
//!
//! The certificate: with `m = sum_a y^a (x) e_a` and `J0` the normalized
//! toric Jacobian built from the edge partition of the support, every
//! Bezout column `d_alpha` must satisfy `d_alpha ^ m = J0 ^ e_alpha`
//! exactly. This pins the block down independently of any determinant.

use std::collections::BTreeMap;

use crate::bezout::enumerate_triples;
use crate::fan::{coord_table, FanPartition, RaySystem};
use crate::geometry::{LatticePoint, Polygon, Support};
use crate::Result;

type TermKey = (i64, LatticePoint, Vec<usize>);

/// Integer combination of `(level, lattice point) (x) wedge of generators`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExteriorElement {
    terms: BTreeMap<TermKey, i64>,
}

/// Sort a generator list, returning the permutation sign; `None` on repeats.
fn sort_with_parity(gens: &[usize]) -> Option<(i64, Vec<usize>)> {
    let mut sorted = gens.to_vec();
    let mut sign = 1i64;
    // Insertion sort, counting swaps; lists have at most four entries.
    for i in 1..sorted.len() {
        let mut j = i;
        while j > 0 && sorted[j - 1] > sorted[j] {
            sorted.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, sorted))
}

/// Merge two strictly increasing lists, counting the crossings; `None` when
/// they intersect.
fn merge_with_parity(a: &[usize], b: &[usize]) -> Option<(i64, Vec<usize>)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut sign = 1i64;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            // b[j] jumps over the remaining entries of a.
            if (a.len() - i) % 2 == 1 {
                sign = -sign;
            }
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((sign, out))
}

impl ExteriorElement {
    pub fn zero() -> ExteriorElement {
        ExteriorElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The bare generator `e_index`: no monomial part, level 0.
    pub fn generator(index: usize) -> ExteriorElement {
        let mut e = ExteriorElement::zero();
        e.add_term(0, LatticePoint::new(0, 0), &[index], 1);
        e
    }

    /// A single term `coeff * (level, point) (x) e_gens`, canonicalized.
    pub fn term(level: i64, point: LatticePoint, gens: &[usize], coeff: i64) -> ExteriorElement {
        let mut e = ExteriorElement::zero();
        e.add_term(level, point, gens, coeff);
        e
    }

    pub fn add_term(&mut self, level: i64, point: LatticePoint, gens: &[usize], coeff: i64) {
        if coeff == 0 {
            return;
        }
        let Some((sign, sorted)) = sort_with_parity(gens) else {
            return;
        };
        let key = (level, point, sorted);
        let entry = self.terms.entry(key.clone()).or_insert(0);
        *entry += sign * coeff;
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }

    /// Bilinear associative wedge: levels and points add, generator lists
    /// merge with the crossing sign, intersecting lists vanish.
    pub fn wedge(&self, other: &ExteriorElement) -> ExteriorElement {
        let mut out = ExteriorElement::zero();
        for ((la, pa, ga), &ca) in &self.terms {
            for ((lb, pb, gb), &cb) in &other.terms {
                if let Some((sign, gens)) = merge_with_parity(ga, gb) {
                    let key = (la + lb, *pa + *pb, gens);
                    let entry = out.terms.entry(key.clone()).or_insert(0);
                    *entry += sign * ca * cb;
                    if *entry == 0 {
                        out.terms.remove(&key);
                    }
                }
            }
        }
        out
    }

    pub fn negated(&self) -> ExteriorElement {
        ExteriorElement {
            terms: self.terms.iter().map(|(k, &c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &i64)> {
        self.terms.iter()
    }
}

/// The universal multiplication element `m = sum_a (1, a) (x) e_a`.
pub fn multiplication_element(support: &Support) -> ExteriorElement {
    let mut m = ExteriorElement::zero();
    for a in 1..=support.len() {
        m.add_term(1, support.point(a), &[a], 1);
    }
    m
}

/// Partition of the support indices by incidence to the two distinguished
/// edges: `off_first` is off the `eta1` edge, `on_first_only` is on it but
/// off the `eta2` edge, and `vertex` is the single point on both (the
/// distinguished vertex).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePartition {
    pub off_first: Vec<usize>,
    pub on_first_only: Vec<usize>,
    pub vertex: usize,
}

pub fn edge_partition(
    support: &Support,
    polygon: &Polygon,
    partition: &FanPartition,
) -> EdgePartition {
    let f1 = polygon.facet(partition.eta1);
    let f2 = polygon.facet(partition.eta2);
    let mut off_first = Vec::new();
    let mut on_first_only = Vec::new();
    let mut vertex = None;
    for a in 1..=support.len() {
        let p = support.point(a);
        if f1.coordinate(p, 1) >= 1 {
            off_first.push(a);
        } else if f2.coordinate(p, 1) >= 1 {
            on_first_only.push(a);
        } else {
            assert!(vertex.is_none(), "two support points on both edges");
            assert_eq!(p, partition.vertex, "corner point is not the vertex");
            vertex = Some(a);
        }
    }
    EdgePartition {
        off_first,
        on_first_only,
        vertex: vertex.expect("distinguished vertex is a support point"),
    }
}

/// The normalized toric Jacobian `J0 = sum (3, u+v+w) (x) e_u ^ e_v ^ e_w`
/// over `u` off the first edge, `v` on it only, `w` the vertex. Every term's
/// level-3 point is interior to `3Q`.
pub fn normalized_jacobian(
    support: &Support,
    polygon: &Polygon,
    partition: &FanPartition,
) -> ExteriorElement {
    let mu = edge_partition(support, polygon, partition);
    let mut j0 = ExteriorElement::zero();
    let w = mu.vertex;
    for &u in &mu.off_first {
        for &v in &mu.on_first_only {
            let point = support.point(u) + support.point(v) + support.point(w);
            assert!(
                polygon.is_interior(point, 3),
                "Jacobian term {point} is not interior to 3Q"
            );
            j0.add_term(3, point, &[u, v, w], 1);
        }
    }
    j0
}

/// `J0 ^ e_alpha`, computed directly from the Jacobian element.
pub fn jacobian_wedge_direct(j0: &ExteriorElement, alpha_index: usize) -> ExteriorElement {
    j0.wedge(&ExteriorElement::generator(alpha_index))
}

/// `J0 ^ e_alpha`, computed by enumerating all support 4-tuples
/// `(t, u, v, w)` that satisfy the per-ray inequality system
///
/// ```text
/// forall i in R1:  t_i+u_i+v_i+w_i > alpha_i     exists i in R1:  t_i+v_i+w_i <= alpha_i
/// forall j in R2:  t_j+v_j+w_j     > alpha_j     exists j in R2:  t_j+w_j     <= alpha_j
/// forall k in R3:  w_k             > alpha_k     exists k in R3:  t_k         <= alpha_k
/// ```
///
/// and summing `(3, t+u+v+w-alpha) (x) e_u ^ e_v ^ e_w ^ e_t`. The two
/// routes must agree exactly; degenerate tuples cancel in the wedge.
pub fn jacobian_wedge_enumerated(
    support: &Support,
    polygon: &Polygon,
    partition: &FanPartition,
    alpha_index: usize,
) -> ExteriorElement {
    let alpha = support.point(alpha_index);
    let rays = RaySystem::new(polygon, partition);
    let coords = coord_table(&rays, support.points());
    let a: Vec<i64> = (0..rays.num_rays())
        .map(|k| rays.coord(k, alpha, 1))
        .collect();
    let to0 = |set: &[usize]| -> Vec<usize> { set.iter().map(|&i| i - 1).collect() };
    let (r1, r2, r3) = (to0(&partition.r1), to0(&partition.r2), to0(&partition.r3));

    let n = support.len();
    let mut out = ExteriorElement::zero();
    for w in 0..n {
        if !r3.iter().all(|&k| coords[w][k] > a[k]) {
            continue;
        }
        for t in 0..n {
            if !r3.iter().any(|&k| coords[t][k] <= a[k]) {
                continue;
            }
            if !r2.iter().any(|&k| coords[t][k] + coords[w][k] <= a[k]) {
                continue;
            }
            for v in 0..n {
                if !r2
                    .iter()
                    .all(|&k| coords[t][k] + coords[v][k] + coords[w][k] > a[k])
                {
                    continue;
                }
                if !r1
                    .iter()
                    .any(|&k| coords[t][k] + coords[v][k] + coords[w][k] <= a[k])
                {
                    continue;
                }
                for u in 0..n {
                    if !r1.iter().all(|&k| {
                        coords[t][k] + coords[u][k] + coords[v][k] + coords[w][k] > a[k]
                    }) {
                        continue;
                    }
                    let point = support.point(t + 1)
                        + support.point(u + 1)
                        + support.point(v + 1)
                        + support.point(w + 1)
                        - alpha;
                    out.add_term(3, point, &[u + 1, v + 1, w + 1, t + 1], 1);
                }
            }
        }
    }
    out
}

/// The Bezout column of `alpha` as an exterior element: level-2 interior
/// points with three-generator wedges, one term per admissible triple.
pub fn bezout_column_element(
    support: &Support,
    polygon: &Polygon,
    partition: &FanPartition,
    alpha: LatticePoint,
) -> Result<ExteriorElement> {
    let triples = enumerate_triples(support, polygon, partition, alpha)?;
    let mut d = ExteriorElement::zero();
    for (u, v, w) in triples {
        let point = support.point(u) + support.point(v) + support.point(w) - alpha;
        assert!(
            polygon.is_interior(point, 2),
            "column term {point} is not interior to 2Q"
        );
        d.add_term(2, point, &[u, v, w], 1);
    }
    Ok(d)
}

/// Outcome of checking one column against the Jacobian identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub ok: bool,
    /// Both sides agree after a global sign flip; reported, never accepted.
    pub sign_flipped: bool,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
}

/// Check `d_alpha ^ m = J0 ^ e_alpha` for the support point with 1-based
/// index `alpha_index`. Exact term-by-term equality after canonicalization.
pub fn verify_column_relation(
    support: &Support,
    polygon: &Polygon,
    partition: &FanPartition,
    alpha_index: usize,
) -> Result<RelationReport> {
    let alpha = support.point(alpha_index);
    let column = bezout_column_element(support, polygon, partition, alpha)?;
    let lhs = column.wedge(&multiplication_element(support));
    let j0 = normalized_jacobian(support, polygon, partition);
    let rhs = jacobian_wedge_direct(&j0, alpha_index);
    for ((level, point, _), _) in lhs.terms().chain(rhs.terms()) {
        assert_eq!(*level, 3);
        assert!(
            polygon.is_interior(*point, 3),
            "relation term {point} is not interior to 3Q"
        );
    }
    let ok = lhs == rhs;
    Ok(RelationReport {
        ok,
        sign_flipped: !ok && lhs == rhs.negated(),
        lhs_terms: lhs.num_terms(),
        rhs_terms: rhs.num_terms(),
    })
}
