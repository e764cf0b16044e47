//! Plain-text formats.
//!
//! * complex: one cell per line, `<dim> <filt> <k> <face_1> ... <face_k>`,
//!   ids implicit by line order; every face precedes its cofaces.
//! * voxel: header `voxel <d> <n1> ... <nd>`, then the values row-major.
//! * simplicial: header `simplicial <n>`, one line of vertex values, then one
//!   maximal simplex per line.
//!
//! Blank lines and `#` comments are ignored everywhere.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::builders::{SimplexSpec, VoxelGrid};
use crate::complex::{CellId, Filt, FilteredComplex};
use crate::error::FormatError;

/// Non-empty, comment-stripped lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_num<T: FromStr>(tok: &str, line: usize, what: &str) -> Result<T, FormatError> {
    tok.parse().map_err(|_| FormatError::Malformed {
        line,
        msg: format!("invalid {what} `{tok}`"),
    })
}

pub fn parse_complex(text: &str) -> Result<FilteredComplex, FormatError> {
    let rows: Vec<(usize, &str)> = content_lines(text).collect();
    let total = rows.len();
    let mut complex = FilteredComplex::new();
    let mut faces = Vec::new();
    for (index, &(line, row)) in rows.iter().enumerate() {
        let toks: Vec<&str> = row.split_whitespace().collect();
        if toks.len() < 3 {
            return Err(FormatError::Malformed {
                line,
                msg: "expected `<dim> <filt> <k> <faces...>`".into(),
            });
        }
        let dim: usize = parse_num(toks[0], line, "dimension")?;
        let filt: Filt = parse_num(toks[1], line, "filtration value")?;
        let k: usize = parse_num(toks[2], line, "face count")?;
        if toks.len() != 3 + k {
            return Err(FormatError::Malformed {
                line,
                msg: format!("declared {k} faces, found {}", toks.len() - 3),
            });
        }
        faces.clear();
        for tok in &toks[3..] {
            let face: usize = parse_num(tok, line, "face id")?;
            if face >= total {
                return Err(FormatError::DanglingFace { line, face });
            }
            if face >= index {
                return Err(FormatError::FaceOrder { line, face });
            }
            faces.push(CellId(face));
        }
        complex
            .add_cell(dim, filt, &faces)
            .map_err(|source| FormatError::Complex { line, source })?;
    }
    Ok(complex)
}

/// Serializes the live cells, renumbered densely in id order.
pub fn format_complex(complex: &FilteredComplex) -> String {
    let (compact, _) = complex.compact();
    let mut out = String::new();
    for cell in compact.live_cells() {
        write!(out, "{} {} {}", cell.dim, cell.filt, cell.faces.len()).unwrap();
        for f in &cell.faces {
            write!(out, " {f}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn load_complex(path: impl AsRef<Path>) -> Result<FilteredComplex, FormatError> {
    parse_complex(&fs::read_to_string(path)?)
}

pub fn save_complex(complex: &FilteredComplex, path: impl AsRef<Path>) -> Result<(), FormatError> {
    fs::write(path, format_complex(complex))?;
    Ok(())
}

pub fn parse_voxel(text: &str) -> Result<VoxelGrid, FormatError> {
    let mut tokens =
        content_lines(text).flat_map(|(line, row)| row.split_whitespace().map(move |t| (line, t)));
    let (line, head) = tokens.next().ok_or(FormatError::Malformed {
        line: 1,
        msg: "missing `voxel` header".into(),
    })?;
    if head != "voxel" {
        return Err(FormatError::Malformed {
            line,
            msg: format!("expected `voxel`, found `{head}`"),
        });
    }
    let (line, tok) = tokens.next().ok_or(FormatError::Malformed {
        line,
        msg: "missing dimension".into(),
    })?;
    let d: usize = parse_num(tok, line, "dimension")?;
    let mut shape = Vec::with_capacity(d);
    for _ in 0..d {
        let (line, tok) = tokens.next().ok_or(FormatError::Malformed {
            line,
            msg: "header shape is truncated".into(),
        })?;
        shape.push(parse_num(tok, line, "extent")?);
    }
    let values = tokens
        .map(|(line, tok)| parse_num(tok, line, "value"))
        .collect::<Result<Vec<Filt>, _>>()?;
    Ok(VoxelGrid::new(shape, values)?)
}

pub fn format_voxel(grid: &VoxelGrid) -> String {
    let mut out = format!("voxel {}", grid.shape.len());
    for n in &grid.shape {
        write!(out, " {n}").unwrap();
    }
    out.push('\n');
    let row = *grid.shape.last().unwrap_or(&1);
    for chunk in grid.values.chunks(row.max(1)) {
        let line: Vec<String> = chunk.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_simplicial(text: &str) -> Result<SimplexSpec, FormatError> {
    let mut lines = content_lines(text);
    let (line, head) = lines.next().ok_or(FormatError::Malformed {
        line: 1,
        msg: "missing `simplicial` header".into(),
    })?;
    let toks: Vec<&str> = head.split_whitespace().collect();
    if toks.len() != 2 || toks[0] != "simplicial" {
        return Err(FormatError::Malformed {
            line,
            msg: "expected `simplicial <num_vertices>`".into(),
        });
    }
    let n: usize = parse_num(toks[1], line, "vertex count")?;
    let mut vertex_values = Vec::new();
    if n > 0 {
        let (line, row) = lines.next().ok_or(FormatError::Malformed {
            line,
            msg: "missing vertex values".into(),
        })?;
        vertex_values = row
            .split_whitespace()
            .map(|t| parse_num(t, line, "vertex value"))
            .collect::<Result<_, _>>()?;
        if vertex_values.len() != n {
            return Err(FormatError::Malformed {
                line,
                msg: format!("expected {n} vertex values, found {}", vertex_values.len()),
            });
        }
    }
    let maximal_simplices = lines
        .map(|(line, row)| {
            row.split_whitespace()
                .map(|t| parse_num(t, line, "vertex id"))
                .collect::<Result<Vec<usize>, _>>()
        })
        .collect::<Result<_, _>>()?;
    Ok(SimplexSpec {
        vertex_values,
        maximal_simplices,
    })
}

pub fn format_simplicial(spec: &SimplexSpec) -> String {
    let mut out = format!("simplicial {}\n", spec.vertex_values.len());
    let vals: Vec<String> = spec.vertex_values.iter().map(|v| v.to_string()).collect();
    if !vals.is_empty() {
        out.push_str(&vals.join(" "));
        out.push('\n');
    }
    for s in &spec.maximal_simplices {
        let ids: Vec<String> = s.iter().map(|v| v.to_string()).collect();
        out.push_str(&ids.join(" "));
        out.push('\n');
    }
    out
}
