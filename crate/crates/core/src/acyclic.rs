//! Growth and excision of an acyclic subcomplex compatible with the filtration.
//!
//! Top-dimensional cells are admitted level by level. A cell `T` at level `i`
//! joins only if `closure(T) ∩ A` is acyclic and every cell of `closure(T)`
//! not yet in `A` sits exactly at level `i`; the second condition keeps
//! `A ∩ K_j` unchanged for every `j < i`. Removing the closed result leaves
//! persistence in dimensions ≥ 1 unchanged.

use std::collections::{BTreeMap, VecDeque};

use crate::complex::{CellId, Filt, FilteredComplex};
use crate::error::ComplexError;
use crate::log::{ReductionLog, Rule};
use crate::reductions::ensure_valid;
use crate::z2;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AcyclicSubcomplex {
    /// Admitted top-dimensional cells, sorted by id.
    pub top_cells: Vec<CellId>,
    /// Closure of `top_cells`, sorted by id.
    pub closed_cells: Vec<CellId>,
    /// Number of top cells admitted at each filtration level.
    pub level_counts: Vec<(Filt, usize)>,
}

impl AcyclicSubcomplex {
    pub fn len(&self) -> usize {
        self.closed_cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.closed_cells.is_empty()
    }
}

/// True iff the closed cell set has the Z₂ homology of a point.
pub fn is_acyclic(complex: &FilteredComplex, cells: &[CellId]) -> Result<bool, ComplexError> {
    let mut sorted = cells.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for &c in &sorted {
        if !complex.is_alive(c) {
            return Err(ComplexError::DeadCell(c));
        }
        for &f in complex.faces(c) {
            if sorted.binary_search(&f).is_err() {
                return Err(ComplexError::NotClosed { cell: c, face: f });
            }
        }
    }
    Ok(acyclic_sorted(complex, &sorted))
}

/// `cells` must be sorted, deduplicated and closed.
fn acyclic_sorted(complex: &FilteredComplex, cells: &[CellId]) -> bool {
    if cells.is_empty() {
        return false;
    }
    let mut columns: Vec<Vec<usize>> = cells
        .iter()
        .map(|&c| {
            let mut col: Vec<usize> = complex
                .faces(c)
                .iter()
                .map(|f| cells.binary_search(f).expect("closed"))
                .collect();
            col.sort_unstable();
            col
        })
        .collect();
    // total Betti number = n - 2 rank(∂)
    cells.len() - 2 * z2::rank(&mut columns) == 1
}

/// Sorted, deduplicated closure of one cell.
fn cell_closure(k: &FilteredComplex, top: CellId, out: &mut Vec<CellId>) {
    out.clear();
    out.push(top);
    let mut i = 0;
    while i < out.len() {
        let c = out[i];
        out.extend_from_slice(k.faces(c));
        i += 1;
    }
    out.sort_unstable();
    out.dedup();
}

struct Grower<'a> {
    k: &'a FilteredComplex,
    in_a: Vec<bool>,
    admitted: Vec<bool>,
    closure: Vec<CellId>,
    meet: Vec<CellId>,
}

impl Grower<'_> {
    fn admissible(&mut self, top: CellId, level: Filt) -> bool {
        if self.admitted[top.0] {
            return false;
        }
        cell_closure(self.k, top, &mut self.closure);
        self.meet.clear();
        for &c in &self.closure {
            if self.in_a[c.0] {
                self.meet.push(c);
            } else if self.k.filt(c) != level {
                return false;
            }
        }
        acyclic_sorted(self.k, &self.meet)
    }

    fn admit(&mut self, top: CellId) {
        cell_closure(self.k, top, &mut self.closure);
        for &c in &self.closure {
            self.in_a[c.0] = true;
        }
        self.admitted[top.0] = true;
    }
}

/// Greedily grows an acyclic subcomplex compatible with the filtration.
///
/// Candidates are the maximal cells (those without cofaces), which for a pure
/// complex are exactly the top-dimensional cells. One subcomplex is grown per
/// connected component, seeded at the candidate of minimal `(filt, id)` whose
/// whole closure lies at its own level.
pub fn grow_acyclic(complex: &FilteredComplex) -> Result<AcyclicSubcomplex, ComplexError> {
    grow_acyclic_except(complex, |_| false)
}

/// As [`grow_acyclic`], without seeding at cells for which `anchored` holds;
/// components without a seed get nothing.
pub(crate) fn grow_acyclic_except(
    complex: &FilteredComplex,
    anchored: impl Fn(CellId) -> bool,
) -> Result<AcyclicSubcomplex, ComplexError> {
    ensure_valid(complex)?;
    // maximal cells; for pure complexes these are the top-dimensional ones
    let mut tops: Vec<CellId> = complex
        .live_cells()
        .filter(|c| c.cofaces.is_empty())
        .map(|c| c.id)
        .collect();
    if tops.is_empty() {
        return Ok(AcyclicSubcomplex::default());
    }
    tops.sort_by_key(|&t| (complex.filt(t), t));

    // top cells through each vertex, for neighbour lookup
    let mut star: Vec<Vec<CellId>> = vec![Vec::new(); complex.capacity()];
    let mut buf = Vec::new();
    for &t in &tops {
        cell_closure(complex, t, &mut buf);
        for &c in &buf {
            if complex.dim(c) == 0 {
                star[c.0].push(t);
            }
        }
    }

    let mut g = Grower {
        k: complex,
        in_a: vec![false; complex.capacity()],
        admitted: vec![false; complex.capacity()],
        closure: Vec::new(),
        meet: Vec::new(),
    };
    let mut level_counts: BTreeMap<Filt, usize> = BTreeMap::new();

    let components = complex.cell_components();
    let mut seeded = vec![false; components.values().max().map_or(0, |m| m + 1)];
    for &t in &tops {
        let label = components[&t];
        if seeded[label] || anchored(t) {
            continue;
        }
        let level = complex.filt(t);
        cell_closure(complex, t, &mut buf);
        if buf.iter().all(|&c| complex.filt(c) == level) {
            g.admit(t);
            *level_counts.entry(level).or_insert(0) += 1;
            seeded[label] = true;
        }
    }

    let mut start = 0;
    let mut neighbours = Vec::new();
    while start < tops.len() {
        let level = complex.filt(tops[start]);
        let end = start + tops[start..].partition_point(|&t| complex.filt(t) == level);
        let mut queue: VecDeque<CellId> = VecDeque::new();
        for &t in &tops[start..end] {
            if g.admissible(t, level) {
                queue.push_back(t);
            }
        }
        while let Some(t) = queue.pop_front() {
            if !g.admissible(t, level) {
                continue;
            }
            g.admit(t);
            *level_counts.entry(level).or_insert(0) += 1;
            neighbours.clear();
            for &c in &g.closure {
                if complex.dim(c) == 0 {
                    neighbours.extend(
                        star[c.0]
                            .iter()
                            .copied()
                            .filter(|&n| complex.filt(n) == level),
                    );
                }
            }
            neighbours.sort_unstable();
            neighbours.dedup();
            for &n in &neighbours {
                if g.admissible(n, level) {
                    queue.push_back(n);
                }
            }
        }
        start = end;
    }

    let top_cells = tops
        .iter()
        .copied()
        .filter(|t| g.admitted[t.0])
        .collect::<Vec<_>>();
    let mut top_cells = top_cells;
    top_cells.sort_unstable();
    let closed_cells = (0..complex.capacity())
        .filter(|&i| g.in_a[i])
        .map(CellId)
        .collect();
    Ok(AcyclicSubcomplex {
        top_cells,
        closed_cells,
        level_counts: level_counts.into_iter().collect(),
    })
}

/// Removes every cell of the subcomplex, highest dimension first.
pub fn excise(
    complex: &mut FilteredComplex,
    acyclic: &AcyclicSubcomplex,
) -> Result<ReductionLog, ComplexError> {
    if let Some(&dead) = acyclic.closed_cells.iter().find(|&&c| !complex.is_alive(c)) {
        return Err(ComplexError::DeadCell(dead));
    }
    let mut order = acyclic.closed_cells.clone();
    order.sort_by_key(|&c| (std::cmp::Reverse(complex.dim(c)), c));
    let mut log = ReductionLog::new();
    for c in order {
        let filt = complex.filt(c);
        complex.remove_cell(c)?;
        log.push_single(Rule::Excision, c, filt);
    }
    Ok(log)
}
