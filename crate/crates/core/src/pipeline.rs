//! Reductions chained in a fixed order, optionally with ε-smoothing.

use std::fmt;
use std::str::FromStr;

use crate::acyclic::{excise, grow_acyclic_except};
use crate::complex::{CellId, Filt, FilteredComplex};
use crate::error::ComplexError;
use crate::log::ReductionLog;
use crate::reductions::{
    collapse_reduce, ensure_valid, remove_seed_vertices_except, run_coreductions, EqualFiltration,
};
use crate::smoothing::{quantize_levels, PerturbedFiltration, Smoother};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Acyclic,
    Collapse,
    Coreduce,
}

impl Method {
    /// Recommended order: acyclic subspace first, then collapses, then
    /// coreductions.
    pub const ALL: [Method; 3] = [Method::Acyclic, Method::Collapse, Method::Coreduce];

    pub fn name(self) -> &'static str {
        match self {
            Method::Acyclic => "acyclic",
            Method::Collapse => "collapse",
            Method::Coreduce => "coreduce",
        }
    }

    /// Whether the method loses dimension-zero persistence.
    pub fn loses_dim0(self) -> bool {
        !matches!(self, Method::Collapse)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown method `{0}` (expected acyclic, collapse or coreduce)")]
pub struct UnknownMethod(pub String);

impl FromStr for Method {
    type Err = UnknownMethod;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "acyclic" => Ok(Method::Acyclic),
            "collapse" => Ok(Method::Collapse),
            "coreduce" => Ok(Method::Coreduce),
            _ => Err(UnknownMethod(s.to_owned())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub method: Method,
    pub removed: usize,
    /// For acyclic steps: cells in the excised subcomplex and top cells
    /// admitted per level.
    pub acyclic_size: usize,
    pub level_counts: Vec<(Filt, usize)>,
}

#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub steps: Vec<Step>,
    pub log: ReductionLog,
    /// Present when run with a tolerance.
    pub perturbation: Option<PerturbedFiltration>,
    /// Set when a tolerance was given but the acyclic step ran on exact
    /// values because the filtration is not a lower-star extension.
    pub quantize_skipped: bool,
}

impl PipelineReport {
    /// True when dimension zero must be taken from the original complex.
    pub fn loses_dim0(&self) -> bool {
        self.steps.iter().any(|s| s.method.loses_dim0())
    }
}

/// Applies `methods` in the given order.
///
/// A coreduction step seeds only components that no earlier acyclic or
/// coreduction step has touched, so any order keeps dimensions ≥ 1 intact.
///
/// With a tolerance, collapses and coreductions share one [`Smoother`], and
/// if an acyclic step is requested the top-level values are first merged by
/// [`quantize_levels`]; the resulting `f'` differs from the input by at most
/// ε cell-wise.
pub fn run_pipeline(
    complex: &mut FilteredComplex,
    methods: &[Method],
    epsilon: Option<u32>,
) -> Result<PipelineReport, ComplexError> {
    let mut report = PipelineReport {
        steps: Vec::with_capacity(methods.len()),
        log: ReductionLog::new(),
        perturbation: None,
        quantize_skipped: false,
    };
    let mut smoother = match epsilon {
        None => None,
        Some(eps) => {
            let mut trial = complex.clone();
            let quantized = if methods.contains(&Method::Acyclic) {
                match quantize_levels(&mut trial, eps) {
                    Ok(p) => Some(p),
                    Err(ComplexError::NotLowerStar(_))
                    | Err(ComplexError::MixedTopDimensions(..)) => {
                        report.quantize_skipped = true;
                        None
                    }
                    Err(e) => return Err(e),
                }
            } else {
                None
            };
            Some(match quantized {
                Some(p) => {
                    *complex = trial;
                    Smoother::resume(complex, p)?
                }
                None => Smoother::new(complex, eps)?,
            })
        }
    };

    // components of the input that already lost a point; coreductions must
    // not seed there again
    let components = complex.cell_components();
    let mut anchored = vec![false; components.values().max().map_or(0, |m| m + 1)];

    for &method in methods {
        let mut step = Step {
            method,
            removed: 0,
            acyclic_size: 0,
            level_counts: Vec::new(),
        };
        let log = match (method, smoother.as_mut()) {
            (Method::Acyclic, _) => {
                let a = grow_acyclic_except(complex, |t| anchored[components[&t]])?;
                step.acyclic_size = a.len();
                step.level_counts = a.level_counts.clone();
                for t in &a.top_cells {
                    anchored[components[t]] = true;
                }
                excise(complex, &a)?
            }
            (Method::Collapse, None) => collapse_reduce(complex)?,
            (Method::Collapse, Some(s)) => s.collapse(complex),
            (Method::Coreduce, guard) => {
                let skip = |v: CellId| anchored[components[&v]];
                let log = match guard {
                    None => {
                        ensure_valid(complex)?;
                        let mut log = ReductionLog::new();
                        remove_seed_vertices_except(complex, &mut log, skip);
                        run_coreductions(complex, &mut EqualFiltration, &mut log);
                        log
                    }
                    Some(s) => s.coreduce_except(complex, skip),
                };
                anchored.iter_mut().for_each(|a| *a = true);
                log
            }
        };
        step.removed = log.removed_count();
        report.log.extend(log);
        report.steps.push(step);
    }
    report.perturbation = smoother.map(Smoother::into_perturbation);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{build_cubical_lower_star, VoxelGrid};

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("both".parse::<Method>().is_err());
    }

    #[test]
    fn constant_grid_vanishes() {
        let mut k = build_cubical_lower_star(&VoxelGrid::constant(vec![4, 4], 2)).unwrap();
        let before = k.live_count();
        let report = run_pipeline(&mut k, &Method::ALL, None).unwrap();
        assert!(k.is_empty());
        assert_eq!(report.log.removed_count(), before);
        assert_eq!(report.steps[0].removed, before);
        assert_eq!(report.steps[0].level_counts, vec![(2, 16)]);
        assert!(report.loses_dim0());
        assert!(report.perturbation.is_none());
    }

    #[test]
    fn smoothing_stays_within_tolerance() {
        let grid = VoxelGrid::new(vec![4, 4], (0..16).map(|i| (i * 7) % 5).collect()).unwrap();
        let original = build_cubical_lower_star(&grid).unwrap();
        for eps in 0..4 {
            let mut k = original.clone();
            let report = run_pipeline(&mut k, &Method::ALL, Some(eps)).unwrap();
            let p = report.perturbation.unwrap();
            assert!(p.max_deviation() <= u64::from(eps));
            let mut moved = original.clone();
            p.apply_to(&mut moved);
            assert!(moved.validate().is_valid());
        }
    }
}
