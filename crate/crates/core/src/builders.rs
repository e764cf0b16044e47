//! Construction of filtered cubical and simplicial complexes.
//!
//! Both builders emit cells in canonical order `(filt, dim, coordinates)`,
//! so ids are deterministic and every face precedes its cofaces.

use std::collections::{BTreeSet, HashMap};

use crate::complex::{CellId, Filt, FilteredComplex};
use crate::error::BuildError;

/// Integer values on a `d`-dimensional grid, row-major with the last axis
/// varying fastest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoxelGrid {
    pub shape: Vec<usize>,
    pub values: Vec<Filt>,
}

impl VoxelGrid {
    pub fn new(shape: Vec<usize>, values: Vec<Filt>) -> Result<Self, BuildError> {
        let grid = Self { shape, values };
        grid.check()?;
        Ok(grid)
    }

    pub fn constant(shape: Vec<usize>, value: Filt) -> Self {
        let n = shape.iter().product();
        Self {
            shape,
            values: vec![value; n],
        }
    }

    fn check(&self) -> Result<(), BuildError> {
        if self.shape.is_empty() || self.shape.contains(&0) {
            return Err(BuildError::EmptyGrid);
        }
        let expected: usize = self.shape.iter().product();
        if self.values.len() != expected {
            return Err(BuildError::ValueCount {
                shape: self.shape.clone(),
                expected,
                got: self.values.len(),
            });
        }
        Ok(())
    }
}

/// How grid values extend to the remaining cells.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Extension {
    /// Values sit on top cells; a lower cell takes the minimum over incident top cells.
    #[default]
    LowerStar,
    /// Values sit on grid vertices; a cell takes the maximum over its vertices.
    VertexMax,
}

/// A cubical complex together with the Khalimsky coordinates of each cell.
///
/// Coordinates are doubled: an even entry is a vertex slice along that axis,
/// an odd entry an interval. The dimension of a cell is its number of odd entries.
#[derive(Clone, Debug)]
pub struct CubicalComplex {
    pub complex: FilteredComplex,
    pub coords: Vec<Vec<usize>>,
}

impl CubicalComplex {
    pub fn id_of(&self, coords: &[usize]) -> Option<CellId> {
        self.coords.iter().position(|c| c == coords).map(CellId)
    }
}

fn for_each_index(extent: &[usize], mut f: impl FnMut(&[usize])) {
    if extent.contains(&0) {
        return;
    }
    let mut idx = vec![0; extent.len()];
    loop {
        f(&idx);
        let mut axis = extent.len();
        loop {
            if axis == 0 {
                return;
            }
            axis -= 1;
            idx[axis] += 1;
            if idx[axis] < extent[axis] {
                break;
            }
            idx[axis] = 0;
        }
    }
}

fn flat(extent: &[usize], coords: &[usize]) -> usize {
    coords
        .iter()
        .zip(extent)
        .fold(0, |acc, (&c, &n)| acc * n + c)
}

pub fn build_cubical_lower_star(grid: &VoxelGrid) -> Result<FilteredComplex, BuildError> {
    Ok(build_cubical(grid, Extension::LowerStar)?.complex)
}

pub fn build_cubical(grid: &VoxelGrid, ext: Extension) -> Result<CubicalComplex, BuildError> {
    grid.check()?;
    let extent: Vec<usize> = match ext {
        Extension::LowerStar => grid.shape.iter().map(|&n| 2 * n + 1).collect(),
        Extension::VertexMax => grid.shape.iter().map(|&n| 2 * n - 1).collect(),
    };
    let total: usize = extent.iter().product();
    let mut filt = vec![Filt::MAX; total];
    let d = grid.shape.len();

    match ext {
        Extension::LowerStar => {
            let mut offsets = vec![0usize; d];
            let ones = vec![3usize; d];
            for_each_index(&grid.shape, |voxel| {
                let value = grid.values[flat(&grid.shape, voxel)];
                for_each_index(&ones, |off| {
                    for k in 0..d {
                        // 2v, 2v+1, 2v+2 around the top cell at 2v+1
                        offsets[k] = 2 * voxel[k] + off[k];
                    }
                    let slot = &mut filt[flat(&extent, &offsets)];
                    *slot = (*slot).min(value);
                });
            });
        }
        Extension::VertexMax => {
            filt.fill(Filt::MIN);
            let mut offsets = vec![0usize; d];
            let threes = vec![3usize; d];
            for_each_index(&grid.shape, |vertex| {
                let value = grid.values[flat(&grid.shape, vertex)];
                for_each_index(&threes, |off| {
                    // cells in the open star of the vertex at 2v
                    for k in 0..d {
                        let c = 2 * vertex[k] + off[k];
                        if c < 1 || c > extent[k] {
                            return;
                        }
                        offsets[k] = c - 1;
                    }
                    let slot = &mut filt[flat(&extent, &offsets)];
                    *slot = (*slot).max(value);
                });
            });
        }
    }

    let mut cells: Vec<(Filt, usize, Vec<usize>)> = Vec::with_capacity(total);
    for_each_index(&extent, |c| {
        let dim = c.iter().filter(|&&x| x % 2 == 1).count();
        cells.push((filt[flat(&extent, c)], dim, c.to_vec()));
    });
    cells.sort();

    let mut id_of = vec![usize::MAX; total];
    for (i, (_, _, c)) in cells.iter().enumerate() {
        id_of[flat(&extent, c)] = i;
    }
    let mut complex = FilteredComplex::new();
    let mut faces = Vec::with_capacity(2 * d);
    let mut probe = vec![0usize; d];
    for (value, dim, c) in &cells {
        faces.clear();
        for k in 0..d {
            if c[k] % 2 == 1 {
                probe.copy_from_slice(c);
                probe[k] = c[k] - 1;
                faces.push(CellId(id_of[flat(&extent, &probe)]));
                probe[k] = c[k] + 1;
                faces.push(CellId(id_of[flat(&extent, &probe)]));
            }
        }
        complex
            .add_cell(*dim, *value, &faces)
            .expect("canonical order places faces first");
    }
    let coords = cells.into_iter().map(|(_, _, c)| c).collect();
    Ok(CubicalComplex { complex, coords })
}

/// Vertex values plus a list of maximal simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexSpec {
    pub vertex_values: Vec<Filt>,
    pub maximal_simplices: Vec<Vec<usize>>,
}

/// A simplicial complex together with the sorted vertex list of each cell.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    pub complex: FilteredComplex,
    pub simplices: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    pub fn id_of(&self, vertices: &[usize]) -> Option<CellId> {
        let mut key = vertices.to_vec();
        key.sort_unstable();
        self.simplices.iter().position(|s| *s == key).map(CellId)
    }
}

pub fn build_simplicial_max(spec: &SimplexSpec) -> Result<FilteredComplex, BuildError> {
    Ok(build_simplicial(spec)?.complex)
}

/// Closes the maximal simplices under faces and filters each simplex by the
/// maximum of its vertex values.
pub fn build_simplicial(spec: &SimplexSpec) -> Result<SimplicialComplex, BuildError> {
    let count = spec.vertex_values.len();
    let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
    for (index, simplex) in spec.maximal_simplices.iter().enumerate() {
        if simplex.is_empty() {
            return Err(BuildError::EmptySimplex(index));
        }
        let mut verts = simplex.clone();
        verts.sort_unstable();
        for w in verts.windows(2) {
            if w[0] == w[1] {
                return Err(BuildError::DuplicateVertex {
                    index,
                    vertex: w[0],
                });
            }
        }
        if let Some(&vertex) = verts.iter().find(|&&v| v >= count) {
            return Err(BuildError::VertexOutOfRange {
                index,
                vertex,
                count,
            });
        }
        let n = verts.len();
        for mask in 1u64..(1u64 << n) {
            let face: Vec<usize> = (0..n)
                .filter(|&i| mask & (1 << i) != 0)
                .map(|i| verts[i])
                .collect();
            all.insert(face);
        }
    }

    let mut cells: Vec<(Filt, usize, Vec<usize>)> = all
        .into_iter()
        .map(|s| {
            let filt = s.iter().map(|&v| spec.vertex_values[v]).max().unwrap();
            (filt, s.len() - 1, s)
        })
        .collect();
    cells.sort();

    let index: HashMap<&[usize], usize> = cells
        .iter()
        .enumerate()
        .map(|(i, (_, _, s))| (s.as_slice(), i))
        .collect();
    let mut complex = FilteredComplex::new();
    let mut faces = Vec::new();
    let mut buf = Vec::new();
    for (filt, dim, s) in &cells {
        faces.clear();
        if *dim > 0 {
            for skip in 0..s.len() {
                buf.clear();
                buf.extend(
                    s.iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &v)| v),
                );
                faces.push(CellId(index[buf.as_slice()]));
            }
        }
        complex
            .add_cell(*dim, *filt, &faces)
            .expect("canonical order places faces first");
    }
    let simplices = cells.into_iter().map(|(_, _, s)| s).collect();
    Ok(SimplicialComplex { complex, simplices })
}
