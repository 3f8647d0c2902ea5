use rand::Rng;
use statrs::distribution::{Continuous, ContinuousCDF, Normal};

use crate::bayesopt::gp::Surrogate;

pub const SCAN_POINTS: usize = 2048;
const DUPLICATE_TOLERANCE: f64 = 1e-9;
const PERTURBATION: f64 = 1e-3;

/// Expected improvement over `incumbent` for a Gaussian with the given mean
/// and variance.
pub fn expected_improvement(mean: f64, variance: f64, incumbent: f64) -> f64 {
    let gain = mean - incumbent;
    let sd = variance.max(0.0).sqrt();
    if sd <= 0.0 {
        return gain.max(0.0);
    }
    let z = gain / sd;
    let normal = Normal::standard();
    (gain * normal.cdf(z) + sd * normal.pdf(z)).max(0.0)
}

/// Radical inverse of `index` in `base`.
pub fn halton(mut index: usize, base: usize) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while index > 0 {
        f /= base as f64;
        r += f * (index % base) as f64;
        index /= base;
    }
    r
}

fn ei_unit(surrogate: &Surrogate, incumbent: f64, u: [f64; 2]) -> f64 {
    let (m, v) = surrogate.predict_unit(u);
    expected_improvement(m, v, incumbent)
}

/// Point maximizing expected improvement: a randomly shifted Halton scan of
/// the unit square, then compass search from the best scan point.
///
/// A proposal that coincides with an observation is moved by 1e-3.
pub fn propose_next<R: Rng>(surrogate: &Surrogate, rng: &mut R) -> [f64; 2] {
    let incumbent = surrogate.standardize(surrogate.incumbent());
    let shift = [rng.gen::<f64>(), rng.gen::<f64>()];
    let mut best = [0.5, 0.5];
    let mut best_ei = f64::NEG_INFINITY;
    for i in 1..=SCAN_POINTS {
        let u = [(halton(i, 2) + shift[0]).fract(), (halton(i, 3) + shift[1]).fract()];
        let ei = ei_unit(surrogate, incumbent, u);
        if ei > best_ei {
            best_ei = ei;
            best = u;
        }
    }

    let mut step = 0.05;
    while step > 1e-4 {
        let mut improved = false;
        for (dx, dy) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
            let u = [(best[0] + dx).clamp(0.0, 1.0), (best[1] + dy).clamp(0.0, 1.0)];
            let ei = ei_unit(surrogate, incumbent, u);
            if ei > best_ei {
                best_ei = ei;
                best = u;
                improved = true;
            }
        }
        if !improved {
            step /= 2.0;
        }
    }

    let domain = surrogate.domain();
    let point = domain.from_unit(best);
    if !surrogate.is_observed(point, DUPLICATE_TOLERANCE) {
        return point;
    }
    for (sx, sy) in [(1.0, 1.0), (-1.0, -1.0), (1.0, -1.0), (-1.0, 1.0)] {
        let moved = domain.clamp([point[0] + sx * PERTURBATION, point[1] + sy * PERTURBATION]);
        if !surrogate.is_observed(moved, DUPLICATE_TOLERANCE) {
            return moved;
        }
    }
    point
}
