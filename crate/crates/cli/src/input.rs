use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use phsimplify::io::{parse_complex, parse_simplicial, parse_voxel};
use phsimplify::{build_cubical, build_simplicial_max, Extension, FilteredComplex};
use rayon::prelude::*;

use crate::{ExtensionArg, Failure, Format, InputArgs};

fn detect(text: &str) -> Format {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .and_then(|l| l.split_whitespace().next());
    match first {
        Some("voxel") => Format::Voxel,
        Some("simplicial") => Format::Simplicial,
        _ => Format::Complex,
    }
}

pub(crate) fn load(
    path: &Path,
    format: Format,
    ext: ExtensionArg,
) -> Result<FilteredComplex, Failure> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::data)?;
    let format = match format {
        Format::Auto => detect(&text),
        f => f,
    };
    let built: anyhow::Result<FilteredComplex> = match format {
        Format::Voxel => parse_voxel(&text).map_err(Into::into).and_then(|grid| {
            let ext = match ext {
                ExtensionArg::LowerStar => Extension::LowerStar,
                ExtensionArg::VertexMax => Extension::VertexMax,
            };
            Ok(build_cubical(&grid, ext)?.complex)
        }),
        Format::Simplicial => parse_simplicial(&text)
            .map_err(Into::into)
            .and_then(|spec| Ok(build_simplicial_max(&spec)?)),
        Format::Complex | Format::Auto => parse_complex(&text).map_err(Into::into),
    };
    built
        .with_context(|| format!("invalid input {}", path.display()))
        .map_err(Failure::data)
}

/// Where per-input output goes: the path itself for a single input, or a
/// file inside the directory named by `path` otherwise.
pub(crate) fn output_path(
    path: &Option<PathBuf>,
    input: &Path,
    many: bool,
    suffix: &str,
) -> Option<PathBuf> {
    let path = path.as_ref()?;
    if !many {
        return Some(path.clone());
    }
    let name = input
        .file_name()
        .map_or_else(|| "input".into(), |n| n.to_string_lossy().into_owned());
    Some(path.join(format!("{name}.{suffix}")))
}

pub(crate) fn prepare_dirs(paths: &[&Option<PathBuf>], many: bool) -> Result<(), Failure> {
    if !many {
        return Ok(());
    }
    for p in paths.iter().filter_map(|p| p.as_ref()) {
        fs::create_dir_all(p)
            .with_context(|| format!("cannot create directory {}", p.display()))
            .map_err(Failure::data)?;
    }
    Ok(())
}

pub(crate) fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text)
        .with_context(|| format!("cannot write {}", path.display()))
        .map_err(Failure::data)
}

/// Runs `job` on every input, `jobs` at a time, returning results in input
/// order so that printed output does not depend on scheduling.
pub(crate) fn for_each_input<T: Send>(
    args: &InputArgs,
    job: impl Fn(&Path) -> Result<T, Failure> + Sync,
) -> Result<Vec<T>, Failure> {
    if args.jobs == 1 || args.inputs.len() == 1 {
        return args.inputs.iter().map(|p| job(p)).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.into())
        .build()
        .map_err(Failure::data)?;
    pool.install(|| args.inputs.par_iter().map(|p| job(p)).collect())
}
