//! Elementary collapses and coreductions that leave persistence unchanged.
//!
//! A collapse pair is a free face `b` with its unique coface `A`; a
//! coreduction pair is a cell `B` with its unique face `a`. Either pair is
//! removed only when both cells enter the filtration at the same value. Both
//! drivers are FIFO work queues: candidates are checked when enqueued and
//! again when dequeued, since the neighbourhood may have changed meanwhile.

use std::collections::{BTreeMap, VecDeque};

use crate::complex::{CellId, FilteredComplex};
use crate::error::ComplexError;
use crate::log::{ReductionLog, Rule};

/// Decides whether a `(face, coface)` pair may be removed.
pub(crate) trait PairGuard {
    fn admits(&self, complex: &FilteredComplex, face: CellId, coface: CellId) -> bool;

    /// Runs just before an admitted pair is removed.
    fn apply(&mut self, _complex: &mut FilteredComplex, _face: CellId, _coface: CellId) {}
}

/// Removal only at equal filtration values.
pub(crate) struct EqualFiltration;

impl PairGuard for EqualFiltration {
    fn admits(&self, complex: &FilteredComplex, face: CellId, coface: CellId) -> bool {
        complex.filt(face) == complex.filt(coface)
    }
}

pub(crate) fn ensure_valid(complex: &FilteredComplex) -> Result<(), ComplexError> {
    let report = complex.validate();
    if report.is_valid() {
        Ok(())
    } else {
        Err(ComplexError::Invalid {
            monotonicity: report.monotonicity.len(),
            boundary: report.boundary.len(),
        })
    }
}

/// Repeatedly removes free-face pairs `(A, b)` with `g(A) = g(b)`.
pub fn collapse_reduce(complex: &mut FilteredComplex) -> Result<ReductionLog, ComplexError> {
    ensure_valid(complex)?;
    let mut log = ReductionLog::new();
    run_collapses(complex, &mut EqualFiltration, &mut log);
    Ok(log)
}

/// Removes one vertex per connected component, then repeatedly removes
/// coreduction pairs `(B, a)` with `g(B) = g(a)`.
///
/// Persistence in dimensions ≥ 1 is preserved; dimension zero is not and
/// must be recomputed from the original complex.
pub fn coreduce(complex: &mut FilteredComplex) -> Result<ReductionLog, ComplexError> {
    ensure_valid(complex)?;
    let mut log = ReductionLog::new();
    remove_seed_vertices(complex, &mut log);
    run_coreductions(complex, &mut EqualFiltration, &mut log);
    Ok(log)
}

fn collapse_partner<G: PairGuard>(k: &FilteredComplex, guard: &G, b: CellId) -> Option<CellId> {
    if !k.is_alive(b) {
        return None;
    }
    match k.cofaces(b) {
        &[a] if guard.admits(k, b, a) => Some(a),
        _ => None,
    }
}

fn coreduction_partner<G: PairGuard>(
    k: &FilteredComplex,
    guard: &G,
    big: CellId,
) -> Option<CellId> {
    if !k.is_alive(big) {
        return None;
    }
    match k.faces(big) {
        &[a] if guard.admits(k, a, big) => Some(a),
        _ => None,
    }
}

pub(crate) fn run_collapses<G: PairGuard>(
    k: &mut FilteredComplex,
    guard: &mut G,
    log: &mut ReductionLog,
) {
    let mut queue: VecDeque<CellId> = k
        .live_ids()
        .filter(|&b| collapse_partner(k, guard, b).is_some())
        .collect();
    let mut touched = Vec::new();
    while let Some(b) = queue.pop_front() {
        let Some(a) = collapse_partner(k, guard, b) else {
            continue;
        };
        touched.clear();
        touched.extend(k.faces(a).iter().copied().filter(|&c| c != b));
        touched.extend_from_slice(k.faces(b));
        guard.apply(k, b, a);
        let filt = k.filt(a);
        k.remove_pair(b, a).expect("partner is a live coface");
        log.push_pair(Rule::Collapse, a, b, filt);
        for &c in &touched {
            if collapse_partner(k, guard, c).is_some() {
                queue.push_back(c);
            }
        }
    }
}

/// Removes, per connected component, the vertex of minimal `(filt, id)`.
pub(crate) fn remove_seed_vertices(k: &mut FilteredComplex, log: &mut ReductionLog) {
    remove_seed_vertices_except(k, log, |_| false);
}

/// As [`remove_seed_vertices`], skipping vertices for which `anchored`
/// holds. A component that already lost a point (to an excised acyclic
/// subcomplex or an earlier seed) must not lose another.
pub(crate) fn remove_seed_vertices_except(
    k: &mut FilteredComplex,
    log: &mut ReductionLog,
    anchored: impl Fn(CellId) -> bool,
) {
    let mut seeds: BTreeMap<usize, CellId> = BTreeMap::new();
    for (v, label) in k.connected_components() {
        if anchored(v) {
            continue;
        }
        seeds
            .entry(label)
            .and_modify(|best| {
                if (k.filt(v), v) < (k.filt(*best), *best) {
                    *best = v;
                }
            })
            .or_insert(v);
    }
    for v in seeds.into_values() {
        let filt = k.filt(v);
        k.remove_cell(v).expect("seed vertex is live");
        log.push_single(Rule::VertexRemoval, v, filt);
    }
}

pub(crate) fn run_coreductions<G: PairGuard>(
    k: &mut FilteredComplex,
    guard: &mut G,
    log: &mut ReductionLog,
) {
    let mut queue: VecDeque<CellId> = k
        .live_ids()
        .filter(|&c| coreduction_partner(k, guard, c).is_some())
        .collect();
    let mut touched = Vec::new();
    while let Some(big) = queue.pop_front() {
        let Some(a) = coreduction_partner(k, guard, big) else {
            continue;
        };
        touched.clear();
        touched.extend(k.cofaces(a).iter().copied().filter(|&c| c != big));
        touched.extend_from_slice(k.cofaces(big));
        guard.apply(k, a, big);
        let filt = k.filt(big);
        k.remove_pair(a, big).expect("partner is a live face");
        log.push_pair(Rule::Coreduction, big, a, filt);
        for &c in &touched {
            if coreduction_partner(k, guard, c).is_some() {
                queue.push_back(c);
            }
        }
    }
}
