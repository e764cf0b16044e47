use phsimplify::persistence::{compute_diagram_with, Reduction};
use phsimplify::zero_dim_unionfind;

use crate::input::{for_each_input, load, output_path, prepare_dirs, write};
use crate::{Failure, PersistArgs};

pub(crate) fn run(args: &PersistArgs) -> Result<u8, Failure> {
    let many = args.input.inputs.len() > 1;
    prepare_dirs(&[&args.out], many)?;
    let mode = if args.clearing {
        Reduction::Clearing
    } else {
        Reduction::Standard
    };
    let texts = for_each_input(&args.input, |path| {
        let k = load(path, args.input.format, args.input.extension)?;
        let diagram = if args.dim0_unionfind {
            zero_dim_unionfind(&k)
        } else {
            compute_diagram_with(&k, mode)
        };
        let text = diagram.to_text();
        if let Some(out) = output_path(&args.out, path, many, "dgm") {
            write(&out, &text)?;
        }
        Ok(text)
    })?;
    if args.out.is_none() {
        for (path, text) in args.input.inputs.iter().zip(&texts) {
            if many {
                println!("# {}", path.display());
            }
            print!("{text}");
        }
    }
    Ok(0)
}
