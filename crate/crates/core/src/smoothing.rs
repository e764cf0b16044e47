//! ε-smoothing: reductions that may nudge filtration values by less than ε.
//!
//! A pair `(face, coface)` whose values differ is removed after raising the
//! face to the coface's value, provided the face has not moved before, the
//! raise is below ε, and every coface the face had in the *initial* complex
//! enters no earlier than the new value. Checking against the initial complex (not the
//! partially reduced one) is what keeps the perturbed function a filtration
//! of the original complex; without it the raises can chain and drift without
//! bound. A cell is moved at most once and is removed in the same step, so
//! `|f' − f| < ε` everywhere and the bottleneck distance between the original
//! diagram and the reduced one is at most ε.

use std::collections::BTreeMap;

use crate::complex::{CellId, Filt, FilteredComplex};
use crate::error::ComplexError;
use crate::log::ReductionLog;
use crate::reductions::{
    ensure_valid, remove_seed_vertices_except, run_collapses, run_coreductions, PairGuard,
};

/// The original filtration `f` next to its perturbation `f'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerturbedFiltration {
    original: Vec<Filt>,
    current: Vec<Filt>,
    epsilon: u32,
}

impl PerturbedFiltration {
    fn identity(values: Vec<Filt>, epsilon: u32) -> Self {
        Self {
            current: values.clone(),
            original: values,
            epsilon,
        }
    }

    pub fn epsilon(&self) -> u32 {
        self.epsilon
    }

    pub fn original(&self, id: CellId) -> Filt {
        self.original[id.0]
    }

    pub fn current(&self, id: CellId) -> Filt {
        self.current[id.0]
    }

    /// `(cell, old, new)` for every moved cell, in id order.
    pub fn changed(&self) -> impl Iterator<Item = (CellId, Filt, Filt)> + '_ {
        self.original
            .iter()
            .zip(&self.current)
            .enumerate()
            .filter(|(_, (o, c))| o != c)
            .map(|(i, (&o, &c))| (CellId(i), o, c))
    }

    /// `max |f'(c) − f(c)|` over all cells.
    pub fn max_deviation(&self) -> u64 {
        self.changed()
            .map(|(_, o, c)| o.abs_diff(c))
            .max()
            .unwrap_or(0)
    }

    /// Writes `f'` into a copy of the complex the filtration was taken from,
    /// including cells removed since. Used to certify the bound against the
    /// original complex.
    pub fn apply_to(&self, complex: &mut FilteredComplex) {
        for (id, _, new) in self.changed() {
            if id.0 < complex.capacity() {
                complex.set_filt(id, new);
            }
        }
    }

    /// Text lines `perturb <id> <old> <new>`.
    pub fn to_log_lines(&self) -> String {
        self.changed()
            .map(|(id, o, c)| format!("perturb {id} {o} {c}\n"))
            .collect()
    }
}

/// Shared state for a sequence of smoothed reductions on one complex.
///
/// The original values and coface lists are captured once, so running
/// [`Smoother::collapse`] and [`Smoother::coreduce`] in any order still checks
/// every raise against the complex as it was before any reduction.
#[derive(Clone, Debug)]
pub struct Smoother {
    perturbed: PerturbedFiltration,
    initial_cofaces: Vec<Vec<CellId>>,
}

impl Smoother {
    pub fn new(complex: &FilteredComplex, epsilon: u32) -> Result<Self, ComplexError> {
        ensure_valid(complex)?;
        let values = (0..complex.capacity())
            .map(|i| complex.filt(CellId(i)))
            .collect();
        let initial_cofaces = (0..complex.capacity())
            .map(|i| complex.cofaces(CellId(i)).to_vec())
            .collect();
        Ok(Self {
            perturbed: PerturbedFiltration::identity(values, epsilon),
            initial_cofaces,
        })
    }

    /// Continues from an earlier perturbation of the same complex, such as
    /// the output of [`quantize_levels`]. Cells already moved stay put, so
    /// the combined deviation from the original values is still at most ε.
    pub fn resume(
        complex: &FilteredComplex,
        earlier: PerturbedFiltration,
    ) -> Result<Self, ComplexError> {
        let mut s = Self::new(complex, earlier.epsilon)?;
        if earlier.original.len() != complex.capacity()
            || (0..complex.capacity()).any(|i| earlier.current[i] != complex.filt(CellId(i)))
        {
            return Err(ComplexError::PerturbationMismatch);
        }
        s.perturbed = earlier;
        Ok(s)
    }

    pub fn collapse(&mut self, complex: &mut FilteredComplex) -> ReductionLog {
        let mut log = ReductionLog::new();
        run_collapses(complex, self, &mut log);
        log
    }

    pub fn coreduce(&mut self, complex: &mut FilteredComplex) -> ReductionLog {
        self.coreduce_except(complex, |_| false)
    }

    pub(crate) fn coreduce_except(
        &mut self,
        complex: &mut FilteredComplex,
        anchored: impl Fn(CellId) -> bool,
    ) -> ReductionLog {
        let mut log = ReductionLog::new();
        remove_seed_vertices_except(complex, &mut log, anchored);
        run_coreductions(complex, self, &mut log);
        log
    }

    pub fn perturbation(&self) -> &PerturbedFiltration {
        &self.perturbed
    }

    pub fn into_perturbation(self) -> PerturbedFiltration {
        self.perturbed
    }
}

impl PairGuard for Smoother {
    fn admits(&self, k: &FilteredComplex, face: CellId, coface: CellId) -> bool {
        let target = k.filt(coface);
        if k.filt(face) == target {
            return true;
        }
        let p = &self.perturbed;
        if face.0 >= p.original.len() {
            return false;
        }
        // each cell moves at most once, by less than ε
        p.current[face.0] == p.original[face.0]
            && target - p.original[face.0] < Filt::from(p.epsilon)
            && self.initial_cofaces[face.0]
                .iter()
                .all(|&c| p.original[c.0].min(p.current[c.0]) >= target)
    }

    fn apply(&mut self, k: &mut FilteredComplex, face: CellId, coface: CellId) {
        let value = k.filt(coface);
        if k.filt(face) != value {
            k.set_filt(face, value);
            self.perturbed.current[face.0] = value;
        }
    }
}

/// Collapses with ε-relaxed level matching.
pub fn smooth_collapse(
    complex: &mut FilteredComplex,
    epsilon: u32,
) -> Result<(ReductionLog, PerturbedFiltration), ComplexError> {
    let mut s = Smoother::new(complex, epsilon)?;
    let log = s.collapse(complex);
    Ok((log, s.into_perturbation()))
}

/// Coreductions with ε-relaxed level matching. Dimension zero is lost as
/// with plain coreductions.
pub fn smooth_coreduce(
    complex: &mut FilteredComplex,
    epsilon: u32,
) -> Result<(ReductionLog, PerturbedFiltration), ComplexError> {
    let mut s = Smoother::new(complex, epsilon)?;
    let log = s.coreduce(complex);
    Ok((log, s.into_perturbation()))
}

/// Top cells (all of one dimension) and, for every live cell, the minimum
/// value over the top cells in its star.
fn star_minima(
    k: &FilteredComplex,
    top_value: impl Fn(CellId) -> Filt,
) -> Result<(usize, Vec<Filt>), ComplexError> {
    let mut top_dim = None;
    for c in k.live_cells().filter(|c| c.cofaces.is_empty()) {
        match top_dim {
            None => top_dim = Some(c.dim),
            Some(d) if d != c.dim => {
                return Err(ComplexError::MixedTopDimensions(d.min(c.dim), d.max(c.dim)))
            }
            _ => {}
        }
    }
    let top_dim = top_dim.unwrap_or(0);
    let mut cells: Vec<CellId> = k.live_ids().collect();
    cells.sort_by_key(|&c| std::cmp::Reverse((k.dim(c), c)));
    let mut minima = vec![Filt::MAX; k.capacity()];
    for c in cells {
        minima[c.0] = if k.dim(c) == top_dim {
            top_value(c)
        } else {
            k.cofaces(c)
                .iter()
                .map(|f| minima[f.0])
                .min()
                .unwrap_or(Filt::MAX)
        };
    }
    Ok((top_dim, minima))
}

/// Merges nearby top-cell values into fewer levels and re-extends lower
/// cells by minima. Every bucket has diameter at most `2ε` and its
/// representative is `min + ⌊diameter / 2⌋`, so no cell moves more than ε.
pub fn quantize_levels(
    complex: &mut FilteredComplex,
    epsilon: u32,
) -> Result<PerturbedFiltration, ComplexError> {
    let (top_dim, minima) = star_minima(complex, |c| complex.filt(c))?;
    for c in complex.live_cells() {
        if minima[c.id.0] != c.filt {
            return Err(ComplexError::NotLowerStar(c.id));
        }
    }
    let before: Vec<Filt> = (0..complex.capacity())
        .map(|i| complex.filt(CellId(i)))
        .collect();

    let mut levels: Vec<Filt> = complex
        .live_cells()
        .filter(|c| c.dim == top_dim)
        .map(|c| c.filt)
        .collect();
    levels.sort_unstable();
    levels.dedup();
    let width = 2 * Filt::from(epsilon);
    let mut representative: BTreeMap<Filt, Filt> = BTreeMap::new();
    let mut i = 0;
    while i < levels.len() {
        let lo = levels[i];
        let mut j = i;
        while j + 1 < levels.len() && levels[j + 1] - lo <= width {
            j += 1;
        }
        let rep = lo + (levels[j] - lo) / 2;
        for &v in &levels[i..=j] {
            representative.insert(v, rep);
        }
        i = j + 1;
    }

    let (_, after) = star_minima(complex, |c| representative[&complex.filt(c)])?;
    let live: Vec<CellId> = complex.live_ids().collect();
    for c in live {
        complex.set_filt(c, after[c.0]);
    }
    let current = (0..complex.capacity())
        .map(|i| complex.filt(CellId(i)))
        .collect();
    Ok(PerturbedFiltration {
        original: before,
        current,
        epsilon,
    })
}
