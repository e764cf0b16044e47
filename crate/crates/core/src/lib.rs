//! Reduction of filtered cell complexes ahead of persistent homology.
//!
//! Three reductions shrink a complex while keeping its persistence diagram:
//!
//! * [`collapse_reduce`] removes free-face pairs at equal filtration values
//!   and preserves the diagram in every dimension;
//! * [`coreduce`] removes one vertex per component and then coreduction
//!   pairs, preserving dimensions ≥ 1;
//! * [`grow_acyclic`] + [`excise`] cut out an acyclic subcomplex compatible
//!   with the filtration, preserving dimensions ≥ 1.
//!
//! Dimension zero is recovered from the original complex with
//! [`zero_dim_unionfind`]. The [`smoothing`] module relaxes the level-matching
//! guard by a tolerance ε with a bottleneck-distance guarantee, and
//! [`persistence`] holds the reference matrix reduction used to check all of
//! the above.

pub mod acyclic;
pub mod builders;
pub mod complex;
pub mod error;
pub mod io;
pub mod log;
pub mod persistence;
pub mod pipeline;
pub mod reductions;
pub mod smoothing;
pub mod synth;
mod unionfind;
mod z2;

pub use acyclic::{excise, grow_acyclic, is_acyclic, AcyclicSubcomplex};
pub use builders::{
    build_cubical, build_cubical_lower_star, build_simplicial, build_simplicial_max, Extension,
    SimplexSpec, VoxelGrid,
};
pub use complex::{Cell, CellId, Filt, FilteredComplex, ValidationReport};
pub use error::{BuildError, ComplexError, FormatError};
pub use io::{load_complex, save_complex};
pub use log::{Event, ReductionLog, Rule};
pub use persistence::{
    bottleneck, compute_diagram, diagrams_equal, zero_dim_unionfind, Death, Interval,
    PersistenceDiagram,
};
pub use pipeline::{run_pipeline, Method, PipelineReport};
pub use reductions::{collapse_reduce, coreduce};
pub use smoothing::{
    quantize_levels, smooth_collapse, smooth_coreduce, PerturbedFiltration, Smoother,
};
pub use unionfind::UnionFind;
