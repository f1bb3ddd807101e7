//! Brute-force verification: seeded Monte Carlo, grid scans and the
//! lemma checks built on them.

mod checks;
pub mod rng;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::geom::Point;

pub use checks::{
    find_h_threshold, find_h_threshold_with, h_min_at_zero, run_all, run_check, run_checks, CheckId,
    CheckReport, DeltaCap, H_GRID_POINTS,
};
pub use rng::CounterRng;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 7;

/// Axis-aligned rectangle `[x0, x1] × [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Rect {
    pub fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        Self { x0, y0, x1, y1 }
    }

    /// The square `[-r, r]²`.
    pub fn centered(r: f64) -> Self {
        Self::new(-r, -r, r, r)
    }

    pub fn area(&self) -> f64 {
        (self.x1 - self.x0) * (self.y1 - self.y0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub value: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

/// Hit-or-miss estimate of the area of `{p ∈ bbox : region(p)}`.
///
/// Sample `i` uses draws `2i` and `2i + 1` of the stream keyed by `seed`, so
/// the estimate depends only on `(seed, samples)`.
pub fn mc_area<F>(region: F, bbox: Rect, samples: u64, seed: u64) -> McEstimate
where
    F: Fn(Point) -> bool + Sync,
{
    let rng = CounterRng::new(seed);
    let samples = samples.max(1);
    let (w, h) = (bbox.x1 - bbox.x0, bbox.y1 - bbox.y0);
    let hits = (0..samples)
        .into_par_iter()
        .filter(|&i| {
            let x = bbox.x0 + w * rng.f64_at(2 * i);
            let y = bbox.y0 + h * rng.f64_at(2 * i + 1);
            region(Point::new(x, y))
        })
        .count() as u64;
    let n = samples as f64;
    let q = hits as f64 / n;
    McEstimate {
        value: bbox.area() * q,
        std_error: bbox.area() * (q * (1.0 - q) / n).sqrt(),
        samples,
        seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn full_hits() {
        let est = mc_area(|_| true, Rect::new(0.0, 0.0, 1.0, 1.0), 1000, 1);
        assert_eq!(est.value, 1.0);
        assert_eq!(est.std_error, 0.0);
    }

    #[test]
    fn quarter_disk() {
        let est = mc_area(|p| p.norm_sq() <= 1.0, Rect::new(0.0, 0.0, 1.0, 1.0), 1_000_000, 3);
        assert!((est.value - PI / 4.0).abs() <= 3.0 * est.std_error, "{est:?}");
        let again = mc_area(|p| p.norm_sq() <= 1.0, Rect::new(0.0, 0.0, 1.0, 1.0), 1_000_000, 3);
        assert_eq!(est.value.to_bits(), again.value.to_bits());
        assert_eq!(est.std_error.to_bits(), again.std_error.to_bits());
    }
}
