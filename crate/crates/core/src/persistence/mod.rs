//! Persistence diagrams computed from scratch: boundary-matrix reduction over
//! Z₂, union-find for dimension zero, and diagram comparisons.

mod bottleneck;
mod diagram;

pub use bottleneck::bottleneck;
pub use diagram::{diagrams_equal, Death, DiagramMismatch, Interval, PersistenceDiagram};

use crate::complex::{CellId, FilteredComplex};
use crate::unionfind::UnionFind;
use crate::z2;

/// Reduction variants. Both produce identical pairings.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Reduction {
    /// Left-to-right column additions.
    #[default]
    Standard,
    /// Reduce by decreasing dimension and zero out columns of cells already
    /// known to be destroyers' targets.
    Clearing,
}

/// Sparse Z₂ boundary matrix of the live cells in filtration order.
#[derive(Clone, Debug)]
pub struct BoundaryMatrix {
    /// `order[j]` is the cell in column `j`.
    pub order: Vec<CellId>,
    /// Sorted row indices of each column.
    pub columns: Vec<Vec<usize>>,
}

impl BoundaryMatrix {
    /// Orders live cells by `(filt, dim, id)`.
    pub fn new(complex: &FilteredComplex) -> Self {
        let mut order: Vec<CellId> = complex.live_ids().collect();
        order.sort_by_key(|&id| (complex.filt(id), complex.dim(id), id));
        let mut pos = vec![usize::MAX; complex.capacity()];
        for (j, id) in order.iter().enumerate() {
            pos[id.0] = j;
        }
        let columns = order
            .iter()
            .map(|&id| {
                let mut col: Vec<usize> = complex.faces(id).iter().map(|f| pos[f.0]).collect();
                col.sort_unstable();
                col
            })
            .collect();
        Self { order, columns }
    }

    /// Reduces the matrix and returns `(birth, death)` column pairs plus the
    /// unpaired columns.
    pub fn reduce(mut self, complex: &FilteredComplex, mode: Reduction) -> Pairing {
        let n = self.columns.len();
        let mut owner: Vec<Option<usize>> = vec![None; n];
        let mut buf = Vec::new();
        let mut reduce_column =
            |j: usize, columns: &mut Vec<Vec<usize>>, owner: &mut Vec<Option<usize>>| {
                while let Some(&low) = columns[j].last() {
                    match owner[low] {
                        Some(k) => {
                            let (left, right) = columns.split_at_mut(j);
                            z2::add_into(&mut right[0], &left[k], &mut buf);
                            debug_assert!(right[0].last().is_none_or(|&l| l < low));
                        }
                        None => {
                            owner[low] = Some(j);
                            break;
                        }
                    }
                }
            };
        match mode {
            Reduction::Standard => {
                for j in 0..n {
                    reduce_column(j, &mut self.columns, &mut owner);
                }
            }
            Reduction::Clearing => {
                let top = self
                    .order
                    .iter()
                    .map(|&id| complex.dim(id))
                    .max()
                    .unwrap_or(0);
                for d in (1..=top).rev() {
                    for j in 0..n {
                        if complex.dim(self.order[j]) != d || self.columns[j].is_empty() {
                            continue;
                        }
                        reduce_column(j, &mut self.columns, &mut owner);
                        if let Some(&low) = self.columns[j].last() {
                            // low is a birth, so its own column reduces to zero
                            self.columns[low].clear();
                        }
                    }
                }
            }
        }
        let mut pairs = Vec::new();
        let mut essential = Vec::new();
        for (i, o) in owner.iter().enumerate() {
            match *o {
                Some(j) => pairs.push((self.order[i], self.order[j])),
                None if self.columns[i].is_empty() => essential.push(self.order[i]),
                None => {}
            }
        }
        Pairing { pairs, essential }
    }
}

/// Result of a matrix reduction, in terms of cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairing {
    pub pairs: Vec<(CellId, CellId)>,
    pub essential: Vec<CellId>,
}

impl Pairing {
    pub fn diagram(&self, complex: &FilteredComplex) -> PersistenceDiagram {
        let mut intervals = Vec::with_capacity(self.pairs.len() + self.essential.len());
        for &(b, d) in &self.pairs {
            let (birth, death) = (complex.filt(b), complex.filt(d));
            if birth < death {
                intervals.push(Interval::finite(complex.dim(b), birth, death));
            }
        }
        for &b in &self.essential {
            intervals.push(Interval::infinite(complex.dim(b), complex.filt(b)));
        }
        PersistenceDiagram::new(intervals)
    }
}

pub fn compute_diagram(complex: &FilteredComplex) -> PersistenceDiagram {
    compute_diagram_with(complex, Reduction::Standard)
}

pub fn compute_diagram_with(complex: &FilteredComplex, mode: Reduction) -> PersistenceDiagram {
    BoundaryMatrix::new(complex)
        .reduce(complex, mode)
        .diagram(complex)
}

/// Dimension-zero persistence by the elder rule.
///
/// Expects every live edge to have both endpoints alive; edges with fewer
/// live vertices are skipped.
pub fn zero_dim_unionfind(complex: &FilteredComplex) -> PersistenceDiagram {
    let mut cells: Vec<CellId> = complex
        .live_cells()
        .filter(|c| c.dim <= 1)
        .map(|c| c.id)
        .collect();
    cells.sort_by_key(|&id| (complex.filt(id), complex.dim(id), id));

    let mut uf = UnionFind::new(complex.capacity());
    // birth key of each root: (filt, id) of its oldest vertex
    let mut oldest: Vec<(i64, CellId)> = vec![(i64::MAX, CellId(usize::MAX)); complex.capacity()];
    let mut intervals = Vec::new();
    for id in cells {
        let filt = complex.filt(id);
        if complex.dim(id) == 0 {
            oldest[id.0] = (filt, id);
            continue;
        }
        let faces = complex.faces(id);
        if faces.len() != 2 {
            continue;
        }
        let (ra, rb) = (uf.find(faces[0].0), uf.find(faces[1].0));
        if ra == rb {
            continue;
        }
        let (elder, younger) = if oldest[ra] <= oldest[rb] {
            (oldest[ra], oldest[rb])
        } else {
            (oldest[rb], oldest[ra])
        };
        if younger.0 < filt {
            intervals.push(Interval::finite(0, younger.0, filt));
        }
        let root = uf.union(ra, rb).expect("distinct roots");
        oldest[root] = elder;
    }
    for v in complex.live_cells().filter(|c| c.dim == 0) {
        if uf.find(v.id.0) == v.id.0 {
            intervals.push(Interval::infinite(0, oldest[v.id.0].0));
        }
    }
    PersistenceDiagram::new(intervals)
}
