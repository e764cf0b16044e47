//! Shared inputs for the criterion benchmarks.

use phsimplify::synth;
use phsimplify::{build_cubical_lower_star, FilteredComplex, VoxelGrid};
use rand::Rng;

/// Lower-star complex of an `n³` grid with values drawn from `0..=levels`.
pub fn noisy_cube(n: usize, levels: i64, seed: u64) -> FilteredComplex {
    let mut rng = synth::rng(seed);
    let values = (0..n * n * n)
        .map(|_| rng.random_range(0..=levels))
        .collect();
    build_cubical_lower_star(&VoxelGrid::new(vec![n, n, n], values).unwrap()).unwrap()
}

pub fn constant_cube(n: usize) -> FilteredComplex {
    build_cubical_lower_star(&VoxelGrid::constant(vec![n, n, n], 0)).unwrap()
}
