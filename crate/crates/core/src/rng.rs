//! Seeded pseudo-randomness for the property suites.
//!
//! A tiny explicit generator keeps every "random" acceptance run
//! reproducible bit-for-bit across platforms and toolchains.

use crate::geometry::{lattice_points, polygon_from_support, LatticePoint, Polygon, Support};

/// SplitMix64 stream.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish integer in `lo..=hi`. The modulo bias is irrelevant here;
    /// determinism is what matters.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    /// Nonzero integer in `lo..=hi` (the range must contain one).
    pub fn nonzero_in(&mut self, lo: i64, hi: i64) -> i64 {
        loop {
            let x = self.int_in(lo, hi);
            if x != 0 {
                return x;
            }
        }
    }
}

/// Random 2-dimensional lattice polygon with vertices in
/// `[-bound, bound]^2`, by hulling a handful of random points.
pub fn random_lattice_polygon(rng: &mut SplitMix64, bound: i64) -> Polygon {
    loop {
        let count = rng.int_in(3, 7) as usize;
        let points: Vec<LatticePoint> = (0..count)
            .map(|_| LatticePoint::new(rng.int_in(-bound, bound), rng.int_in(-bound, bound)))
            .collect();
        if let Ok(polygon) = Polygon::from_points(&points) {
            return polygon;
        }
    }
}

/// Random saturated support with at most `max_points` lattice points, in
/// canonical graded-lex order.
pub fn random_saturated_support(rng: &mut SplitMix64, max_points: usize) -> Support {
    loop {
        let polygon = random_lattice_polygon(rng, 2);
        let points = lattice_points(&polygon, 1, false);
        if points.len() <= max_points {
            let support = Support::new(points).expect("hull points are distinct");
            debug_assert!(polygon_from_support(&support).is_ok());
            return support;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn ranges_are_respected() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..1000 {
            let x = rng.int_in(-9, 9);
            assert!((-9..=9).contains(&x));
            assert_ne!(rng.nonzero_in(-3, 3), 0);
        }
    }

    #[test]
    fn random_supports_are_saturated_and_small() {
        let mut rng = SplitMix64::new(2024);
        for _ in 0..20 {
            let support = random_saturated_support(&mut rng, 12);
            assert!(support.len() <= 12);
            assert!(polygon_from_support(&support).is_ok());
        }
    }
}
