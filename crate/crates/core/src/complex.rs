//! Filtered chain complexes over Z₂ with a fixed cell basis.
//!
//! Incidence is pure set membership: `b` is a face of `A` iff `b` appears in
//! `A`'s boundary. Cells are never renumbered while reductions run; removed
//! cells are tombstoned and every live neighbour drops its reference to them.
//! [`FilteredComplex::compact`] renumbers once at the end.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use crate::error::ComplexError;
use crate::unionfind::UnionFind;

/// Filtration value. Filtrations are integer valued throughout the crate.
pub type Filt = i64;

/// Dense handle of a cell. Stable for the lifetime of a complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellId(pub usize);

impl CellId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub id: CellId,
    pub dim: usize,
    pub filt: Filt,
    pub faces: Vec<CellId>,
    pub cofaces: Vec<CellId>,
    pub alive: bool,
}

/// A finite filtered S-complex with Z₂ coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FilteredComplex {
    cells: Vec<Cell>,
    live_count: usize,
    max_dim: usize,
}

/// Outcome of [`FilteredComplex::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    /// `(face, coface)` pairs where the face enters the filtration later.
    pub monotonicity: Vec<(CellId, CellId)>,
    /// `(cell, codim-2 face)` pairs reached through an odd number of faces.
    pub boundary: Vec<(CellId, CellId)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.monotonicity.is_empty() && self.boundary.is_empty()
    }
}

impl FilteredComplex {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a cell whose faces already exist. Returns its id.
    pub fn add_cell(
        &mut self,
        dim: usize,
        filt: Filt,
        faces: &[CellId],
    ) -> Result<CellId, ComplexError> {
        let id = CellId(self.cells.len());
        for (k, &f) in faces.iter().enumerate() {
            let face = self.cells.get(f.0).ok_or(ComplexError::UnknownCell(f))?;
            if !face.alive {
                return Err(ComplexError::DeadCell(f));
            }
            if face.dim + 1 != dim {
                return Err(ComplexError::DimensionMismatch { cell: id, face: f });
            }
            if faces[..k].contains(&f) {
                return Err(ComplexError::DuplicateFace { cell: id, face: f });
            }
        }
        for &f in faces {
            self.cells[f.0].cofaces.push(id);
        }
        self.cells.push(Cell {
            id,
            dim,
            filt,
            faces: faces.to_vec(),
            cofaces: Vec::new(),
            alive: true,
        });
        self.live_count += 1;
        self.max_dim = self.max_dim.max(dim);
        Ok(id)
    }

    /// Number of slots, dead cells included. Ids range over `0..capacity()`.
    pub fn capacity(&self) -> usize {
        self.cells.len()
    }

    pub fn live_count(&self) -> usize {
        self.live_count
    }

    pub fn is_empty(&self) -> bool {
        self.live_count == 0
    }

    /// Largest dimension ever inserted.
    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn cell(&self, id: CellId) -> &Cell {
        &self.cells[id.0]
    }

    pub fn get(&self, id: CellId) -> Option<&Cell> {
        self.cells.get(id.0)
    }

    pub fn is_alive(&self, id: CellId) -> bool {
        self.cells.get(id.0).is_some_and(|c| c.alive)
    }

    pub fn dim(&self, id: CellId) -> usize {
        self.cells[id.0].dim
    }

    pub fn filt(&self, id: CellId) -> Filt {
        self.cells[id.0].filt
    }

    pub fn faces(&self, id: CellId) -> &[CellId] {
        &self.cells[id.0].faces
    }

    pub fn cofaces(&self, id: CellId) -> &[CellId] {
        &self.cells[id.0].cofaces
    }

    /// Overwrites a filtration value. Monotonicity is not rechecked.
    pub fn set_filt(&mut self, id: CellId, filt: Filt) {
        self.cells[id.0].filt = filt;
    }

    /// Live cells in id order.
    pub fn live_cells(&self) -> impl Iterator<Item = &Cell> + '_ {
        self.cells.iter().filter(|c| c.alive)
    }

    pub fn live_ids(&self) -> impl Iterator<Item = CellId> + '_ {
        self.live_cells().map(|c| c.id)
    }

    /// Live cell counts indexed by dimension.
    pub fn count_by_dim(&self) -> Vec<usize> {
        let mut counts = vec![0; self.max_dim + 1];
        if self.cells.is_empty() {
            return Vec::new();
        }
        for c in self.live_cells() {
            counts[c.dim] += 1;
        }
        counts
    }

    /// Checks filtration monotonicity and ∂∂ = 0 (mod 2) on live cells.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let mut parity: BTreeMap<CellId, usize> = BTreeMap::new();
        for cell in self.live_cells() {
            for &f in &cell.faces {
                if self.cells[f.0].filt > cell.filt {
                    report.monotonicity.push((f, cell.id));
                }
            }
            parity.clear();
            for &f in &cell.faces {
                for &g in &self.cells[f.0].faces {
                    *parity.entry(g).or_insert(0) += 1;
                }
            }
            for (&g, &n) in &parity {
                if n % 2 == 1 {
                    report.boundary.push((cell.id, g));
                }
            }
        }
        report
    }

    fn check_alive(&self, id: CellId) -> Result<(), ComplexError> {
        match self.cells.get(id.0) {
            None => Err(ComplexError::UnknownCell(id)),
            Some(c) if !c.alive => Err(ComplexError::DeadCell(id)),
            Some(_) => Ok(()),
        }
    }

    /// Removes the pair `(face, coface)`, where `face` must be a face of `coface`.
    pub fn remove_pair(&mut self, face: CellId, coface: CellId) -> Result<(), ComplexError> {
        self.check_alive(face)?;
        self.check_alive(coface)?;
        if !self.cells[coface.0].faces.contains(&face) {
            return Err(ComplexError::NotIncident { face, coface });
        }
        self.detach(coface);
        self.detach(face);
        Ok(())
    }

    /// Removes a single live cell, dropping every incidence reference to it.
    pub fn remove_cell(&mut self, id: CellId) -> Result<(), ComplexError> {
        self.check_alive(id)?;
        self.detach(id);
        Ok(())
    }

    fn detach(&mut self, id: CellId) {
        let faces = std::mem::take(&mut self.cells[id.0].faces);
        let cofaces = std::mem::take(&mut self.cells[id.0].cofaces);
        for f in faces {
            let list = &mut self.cells[f.0].cofaces;
            if let Some(pos) = list.iter().position(|&x| x == id) {
                list.remove(pos);
            }
        }
        for c in cofaces {
            let list = &mut self.cells[c.0].faces;
            if let Some(pos) = list.iter().position(|&x| x == id) {
                list.remove(pos);
            }
        }
        self.cells[id.0].alive = false;
        self.live_count -= 1;
    }

    /// Labels every live cell with a component index. Labels are assigned in
    /// order of the smallest live cell id of each component.
    pub fn cell_components(&self) -> HashMap<CellId, usize> {
        let mut uf = UnionFind::new(self.cells.len());
        for cell in self.live_cells() {
            for &f in &cell.faces {
                uf.union(cell.id.0, f.0);
            }
        }
        let mut label_of_root: HashMap<usize, usize> = HashMap::new();
        let mut labels = HashMap::new();
        for id in self.live_ids() {
            let root = uf.find(id.0);
            let next = label_of_root.len();
            let label = *label_of_root.entry(root).or_insert(next);
            labels.insert(id, label);
        }
        labels
    }

    /// Partition of live vertices into connected components, as a map from
    /// vertex to component label (labels dense, ordered by smallest vertex id).
    pub fn connected_components(&self) -> BTreeMap<CellId, usize> {
        let cells = self.cell_components();
        let mut relabel: HashMap<usize, usize> = HashMap::new();
        let mut out = BTreeMap::new();
        for v in self.live_cells().filter(|c| c.dim == 0) {
            let next = relabel.len();
            let label = *relabel.entry(cells[&v.id]).or_insert(next);
            out.insert(v.id, label);
        }
        out
    }

    /// Smallest downward-closed set of live cells containing `seed`, sorted by id.
    pub fn closure<I>(&self, seed: I) -> Result<Vec<CellId>, ComplexError>
    where
        I: IntoIterator<Item = CellId>,
    {
        let mut seen = vec![false; self.cells.len()];
        let mut queue = VecDeque::new();
        for id in seed {
            self.check_alive(id)?;
            if !seen[id.0] {
                seen[id.0] = true;
                queue.push_back(id);
            }
        }
        while let Some(id) = queue.pop_front() {
            for &f in &self.cells[id.0].faces {
                if !seen[f.0] {
                    seen[f.0] = true;
                    queue.push_back(f);
                }
            }
        }
        Ok(seen
            .iter()
            .enumerate()
            .filter_map(|(i, &s)| s.then_some(CellId(i)))
            .collect())
    }

    /// Copies the live cells into a fresh complex with dense ids, keeping
    /// relative id order. Returns the new complex and, for each new id, the
    /// old id it came from.
    pub fn compact(&self) -> (FilteredComplex, Vec<CellId>) {
        let mut map = vec![usize::MAX; self.cells.len()];
        let mut out = FilteredComplex::new();
        let mut origin = Vec::with_capacity(self.live_count);
        for cell in self.live_cells() {
            let faces: Vec<CellId> = cell.faces.iter().map(|f| CellId(map[f.0])).collect();
            let id = out
                .add_cell(cell.dim, cell.filt, &faces)
                .expect("live faces precede their cofaces");
            map[cell.id.0] = id.0;
            origin.push(cell.id);
        }
        (out, origin)
    }
}
