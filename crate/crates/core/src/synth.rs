//! Seeded random inputs for property tests and benchmarks.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::builders::{build_cubical_lower_star, build_simplicial_max, SimplexSpec, VoxelGrid};
use crate::complex::{CellId, Filt, FilteredComplex};

pub type SynthRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SynthRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Grid of random dimension `1..=max_shape.len()`, each extent drawn from
/// `1..=max_shape[k]`, values from `0..=max_value`.
pub fn random_grid(rng: &mut impl Rng, max_shape: &[usize], max_value: Filt) -> VoxelGrid {
    let d = rng.random_range(1..=max_shape.len());
    let shape: Vec<usize> = max_shape[..d]
        .iter()
        .map(|&m| rng.random_range(1..=m))
        .collect();
    let n = shape.iter().product();
    let values = (0..n).map(|_| rng.random_range(0..=max_value)).collect();
    VoxelGrid::new(shape, values).expect("shape and values agree")
}

/// Random simplicial complex on at most `max_vertices` vertices. With `pure`
/// set, all maximal simplices share one dimension (faces of one another are
/// allowed in the list; the builder dedupes them).
pub fn random_simplicial(
    rng: &mut impl Rng,
    max_vertices: usize,
    max_value: Filt,
    pure: bool,
) -> SimplexSpec {
    let n = rng.random_range(1..=max_vertices);
    let vertex_values = (0..n).map(|_| rng.random_range(0..=max_value)).collect();
    let fixed = rng.random_range(1..=n.min(4));
    let count = rng.random_range(1..=6);
    let mut maximal_simplices = Vec::with_capacity(count);
    for _ in 0..count {
        let size = if pure {
            fixed
        } else {
            rng.random_range(1..=n.min(4))
        };
        maximal_simplices.push(sample(rng, n, size).into_vec());
    }
    SimplexSpec {
        vertex_values,
        maximal_simplices,
    }
}

/// Replaces the filtration with random values in `0..=max_value`, raised
/// where needed so every cell enters no earlier than its faces.
pub fn randomize_filtration(k: &mut FilteredComplex, rng: &mut impl Rng, max_value: Filt) {
    let ids: Vec<CellId> = k.live_ids().collect();
    // ids are in face-first order for builder output and parsed files
    for id in ids {
        let floor = k.faces(id).iter().map(|&f| k.filt(f)).max().unwrap_or(0);
        let v = rng.random_range(0..=max_value).max(floor);
        k.set_filt(id, v);
    }
}

#[derive(Clone, Debug)]
pub struct Sample {
    pub label: String,
    pub complex: FilteredComplex,
    /// True when built from top-cell values by the lower-star rule.
    pub lower_star: bool,
}

/// Mixed corpus: cubical grids up to 6×6×3 with values in 0..=7 and
/// simplicial complexes on at most 8 vertices filtered by maxima.
pub fn corpus(seed: u64, count: usize) -> Vec<Sample> {
    let mut r = rng(seed);
    (0..count)
        .map(|i| {
            if i % 2 == 0 {
                let grid = random_grid(&mut r, &[6, 6, 3], 7);
                Sample {
                    label: format!("grid#{i} {:?}", grid.shape),
                    complex: build_cubical_lower_star(&grid).expect("valid grid"),
                    lower_star: true,
                }
            } else {
                let pure = i % 4 == 1;
                let spec = random_simplicial(&mut r, 8, 7, pure);
                Sample {
                    label: format!("simplicial#{i} n={} pure={pure}", spec.vertex_values.len()),
                    complex: build_simplicial_max(&spec).expect("valid spec"),
                    lower_star: false,
                }
            }
        })
        .collect()
}
