use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use anyhow::Context;
use phsimplify::{bottleneck, diagrams_equal, PersistenceDiagram};

use crate::{DiffArgs, Failure, UNEQUAL};

fn read(path: &Path) -> Result<PersistenceDiagram, Failure> {
    fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .and_then(|t| {
            t.parse::<PersistenceDiagram>()
                .with_context(|| format!("invalid diagram {}", path.display()))
        })
        .map_err(Failure::data)
}

pub(crate) fn run(args: &DiffArgs) -> Result<u8, Failure> {
    let left = read(&args.left)?;
    let right = read(&args.right)?;
    if !args.bottleneck {
        return Ok(match diagrams_equal(&left, &right, |d| args.keeps(d)) {
            Ok(()) => {
                println!("equal");
                0
            }
            Err(m) => {
                println!("differ: {m}");
                UNEQUAL
            }
        });
    }
    let dims: BTreeSet<usize> = left
        .intervals()
        .iter()
        .chain(right.intervals())
        .map(|iv| iv.dim)
        .filter(|&d| args.keeps(d))
        .collect();
    let mut worst = 0.0f64;
    for d in dims {
        let dist = bottleneck(&left, &right, d);
        worst = worst.max(dist);
        println!("dim {d} {dist}");
    }
    match args.epsilon {
        Some(eps) if worst > eps => {
            println!("exceeds {eps}");
            Ok(UNEQUAL)
        }
        _ => Ok(0),
    }
}
