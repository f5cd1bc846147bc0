//! Shared inputs for the benchmarks.

use flateta_core::{validate, ZpParams};

/// Exceptional manifolds of increasing size.
pub fn exceptional_samples() -> Vec<ZpParams> {
    [(3, 1), (7, 1), (13, 3), (31, 5)]
        .iter()
        .map(|&(p, a)| validate(p, a, 0, 1).unwrap())
        .collect()
}

/// A few holonomy parameter tuples, smallest first.
pub fn holonomy_samples() -> Vec<ZpParams> {
    [(3, 1, 0, 1), (5, 2, 1, 3), (7, 4, 2, 3), (13, 2, 2, 7)]
        .iter()
        .map(|&(p, a, b, c)| validate(p, a, b, c).unwrap())
        .collect()
}
