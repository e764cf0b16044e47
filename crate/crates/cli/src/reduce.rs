use std::fmt::Write as _;
use std::path::Path;

use phsimplify::io::format_complex;
use phsimplify::{
    compute_diagram, run_pipeline, zero_dim_unionfind, FilteredComplex, Method, PipelineReport,
};

use crate::input::{for_each_input, load, output_path, prepare_dirs, write};
use crate::{Failure, ReduceArgs};

fn dim_counts(k: &FilteredComplex) -> String {
    let counts = k.count_by_dim();
    let mut s = format!("total {}", k.live_count());
    for (d, n) in counts.iter().enumerate() {
        write!(s, " dim{d} {n}").unwrap();
    }
    s
}

fn summary(
    path: &Path,
    before: &FilteredComplex,
    after: &FilteredComplex,
    report: &PipelineReport,
) -> String {
    let mut s = format!("{}\n", path.display());
    writeln!(s, "  before   {}", dim_counts(before)).unwrap();
    writeln!(s, "  after    {}", dim_counts(after)).unwrap();
    for step in &report.steps {
        writeln!(s, "  {:<8} removed {}", step.method.name(), step.removed).unwrap();
    }
    let total = before.live_count();
    let removed = total - after.live_count();
    let pct = if total == 0 {
        0.0
    } else {
        100.0 * removed as f64 / total as f64
    };
    writeln!(s, "  removed  {removed} of {total} ({pct:.1}%)").unwrap();
    if let Some(p) = &report.perturbation {
        writeln!(
            s,
            "  perturbed {} cells, max change {}",
            p.changed().count(),
            p.max_deviation()
        )
        .unwrap();
    }
    if report.quantize_skipped {
        writeln!(
            s,
            "  note: input is not a lower-star filtration; levels were not merged"
        )
        .unwrap();
    }
    s
}

fn log_text(report: &PipelineReport) -> String {
    let mut s = String::new();
    for step in report.steps.iter().filter(|s| s.method == Method::Acyclic) {
        writeln!(s, "# acyclic cells {}", step.acyclic_size).unwrap();
        for (level, n) in &step.level_counts {
            writeln!(s, "# acyclic level {level} {n}").unwrap();
        }
    }
    s.push_str(&report.log.to_string());
    if let Some(p) = &report.perturbation {
        s.push_str(&p.to_log_lines());
    }
    s
}

pub(crate) fn run(args: &ReduceArgs) -> Result<u8, Failure> {
    let methods = args.method_list();
    let many = args.input.inputs.len() > 1;
    prepare_dirs(&[&args.out, &args.log, &args.diagram], many)?;
    let summaries = for_each_input(&args.input, |path| {
        let original = load(path, args.input.format, args.input.extension)?;
        let mut k = original.clone();
        let report = run_pipeline(&mut k, &methods, args.epsilon).map_err(Failure::data)?;
        let dim0 = report.loses_dim0().then(|| zero_dim_unionfind(&original));

        if let Some(out) = output_path(&args.out, path, many, "complex") {
            write(&out, &format_complex(&k))?;
            if let Some(d0) = &dim0 {
                let mut name = out.into_os_string();
                name.push(".dim0");
                write(Path::new(&name), &d0.to_text())?;
            }
        }
        if let Some(log) = output_path(&args.log, path, many, "log") {
            write(&log, &log_text(&report))?;
        }
        if let Some(dgm) = output_path(&args.diagram, path, many, "dgm") {
            let reduced = compute_diagram(&k);
            let diagram = match &dim0 {
                Some(d0) => reduced.restrict(|d| d >= 1).merged(d0),
                None => reduced,
            };
            write(&dgm, &diagram.to_text())?;
        }
        Ok(summary(path, &original, &k, &report))
    })?;
    for s in summaries {
        print!("{s}");
    }
    Ok(0)
}
