//! End-to-end acceptance checks. Prints one PASS/FAIL line per check and
//! exits non-zero if any fails.

use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use phsimplify::synth::{self, corpus, random_grid, randomize_filtration, Sample};
use phsimplify::{
    bottleneck, build_cubical, build_cubical_lower_star, build_simplicial_max, collapse_reduce,
    compute_diagram, coreduce, diagrams_equal, excise, grow_acyclic, run_pipeline, smooth_collapse,
    smooth_coreduce, zero_dim_unionfind, CellId, Death, Extension, Filt, FilteredComplex, Interval,
    Method, PersistenceDiagram, PerturbedFiltration, SimplexSpec, VoxelGrid,
};
use rand::seq::index::sample;
use rand::Rng;

type Check = Result<(), String>;
type Smoothed = Box<dyn Fn(&mut FilteredComplex) -> PerturbedFiltration>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn same(
    a: &PersistenceDiagram,
    b: &PersistenceDiagram,
    dims: impl Fn(usize) -> bool,
    what: &str,
) -> Check {
    diagrams_equal(a, b, dims).map_err(|m| format!("{what}: {m}"))
}

fn cube(top: Filt) -> (FilteredComplex, Vec<CellId>, CellId) {
    let mut k = FilteredComplex::new();
    let v: Vec<CellId> = (0..4).map(|_| k.add_cell(0, 0, &[]).unwrap()).collect();
    let e: Vec<CellId> = (0..4)
        .map(|i| k.add_cell(1, 0, &[v[i], v[(i + 1) % 4]]).unwrap())
        .collect();
    let sq = k.add_cell(2, top, &e).unwrap();
    (k, e, sq)
}

fn cube_collapse_guard() -> Check {
    let (k, e, sq) = cube(10);
    let d = compute_diagram(&k);
    ensure(d.intervals().contains(&Interval::finite(1, 0, 10)), || {
        format!("oracle gave\n{d}")
    })?;
    let mut r = k.clone();
    let log = collapse_reduce(&mut r).map_err(|e| e.to_string())?;
    ensure(log.is_empty() && r == k, || {
        format!("collapse removed {} cells", log.removed_count())
    })?;
    let mut forced = k.clone();
    forced.remove_pair(e[0], sq).map_err(|e| e.to_string())?;
    ensure(compute_diagram(&forced).in_dim(1).next().is_none(), || {
        "forced collapse kept the interval".into()
    })
}

fn square_coreduction_guard() -> Check {
    let (k, _, sq) = cube(10);
    let mut r = k.clone();
    let log = coreduce(&mut r).map_err(|e| e.to_string())?;
    ensure(log.events().iter().all(|e| e.first != sq), || {
        "square was paired".into()
    })?;
    let d = compute_diagram(&r);
    ensure(d.in_dim(1).eq([&Interval::finite(1, 0, 10)]), || {
        format!("after coreduce:\n{d}")
    })
}

fn raised_ring_admission_guard() -> Check {
    let mut values = vec![0; 9];
    values[4] = 1;
    let cub = build_cubical(
        &VoxelGrid::new(vec![3, 3], values).unwrap(),
        Extension::LowerStar,
    )
    .unwrap();
    let middle = cub.id_of(&[3, 3]).unwrap();
    let a = grow_acyclic(&cub.complex).map_err(|e| e.to_string())?;
    ensure(!a.top_cells.contains(&middle), || {
        "middle cell admitted".into()
    })?;
    let mut r = cub.complex.clone();
    excise(&mut r, &a).map_err(|e| e.to_string())?;
    let d = compute_diagram(&r);
    ensure(d.intervals().contains(&Interval::finite(1, 0, 1)), || {
        format!("after excision:\n{d}")
    })
}

fn samples() -> Vec<Sample> {
    corpus(2024, 500)
}

fn corpus_collapses() -> Check {
    for s in samples() {
        let mut k = s.complex.clone();
        collapse_reduce(&mut k).map_err(|e| e.to_string())?;
        same(
            &compute_diagram(&s.complex),
            &compute_diagram(&k),
            |_| true,
            &s.label,
        )?;
    }
    Ok(())
}

fn corpus_coreductions_and_acyclic() -> Check {
    for s in samples() {
        let oracle = compute_diagram(&s.complex);
        let mut k = s.complex.clone();
        coreduce(&mut k).map_err(|e| e.to_string())?;
        same(
            &oracle,
            &compute_diagram(&k),
            |d| d >= 1,
            &format!("{} coreduce", s.label),
        )?;

        let mut k = s.complex.clone();
        let a = grow_acyclic(&k).map_err(|e| e.to_string())?;
        excise(&mut k, &a).map_err(|e| e.to_string())?;
        same(
            &oracle,
            &compute_diagram(&k),
            |d| d >= 1,
            &format!("{} acyclic", s.label),
        )?;

        same(
            &oracle,
            &zero_dim_unionfind(&s.complex),
            |d| d == 0,
            &format!("{} dim 0", s.label),
        )?;
    }
    Ok(())
}

fn corpus_unionfind() -> Check {
    for s in samples() {
        let expected = compute_diagram(&s.complex).restrict(|d| d == 0);
        ensure(zero_dim_unionfind(&s.complex) == expected, || {
            s.label.clone()
        })?;
    }
    Ok(())
}

// brute-force persistent Betti numbers over bit-mask chains
fn rank(mut rows: Vec<u64>) -> usize {
    let mut r = 0;
    for bit in 0..64 {
        let Some(p) = (r..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i] >> bit & 1 == 1 {
                rows[i] ^= rows[r];
            }
        }
        r += 1;
    }
    r
}

fn persistent_betti(k: &FilteredComplex, p: usize, i: Filt, j: Filt) -> usize {
    let bd = |c: CellId| k.faces(c).iter().fold(0u64, |m, f| m | 1 << f.0);
    let cells: Vec<CellId> = k
        .live_ids()
        .filter(|&c| k.dim(c) == p && k.filt(c) <= i)
        .collect();
    let mut rows: Vec<u64> = k
        .live_ids()
        .filter(|&c| k.dim(c) == p + 1 && k.filt(c) <= j)
        .map(bd)
        .collect();
    let rb = rank(rows.clone());
    for subset in 1u64..1 << cells.len() {
        let (mut chain, mut b) = (0u64, 0u64);
        for (bit, &c) in cells.iter().enumerate() {
            if subset >> bit & 1 == 1 {
                chain |= 1 << c.0;
                b ^= bd(c);
            }
        }
        if b == 0 {
            rows.push(chain);
        }
    }
    rank(rows) - rb
}

fn small_complex(r: &mut impl Rng) -> FilteredComplex {
    loop {
        let mut k = if r.random_bool(0.2) {
            build_cubical_lower_star(&random_grid(r, &[3, 2], 3)).unwrap()
        } else {
            let n = r.random_range(2..=5);
            let mut spec = SimplexSpec {
                vertex_values: (0..n).map(|_| r.random_range(0..=3)).collect(),
                maximal_simplices: (0..n).map(|v| vec![v]).collect(),
            };
            for a in 0..n {
                for b in a + 1..n {
                    if r.random_bool(0.5) {
                        spec.maximal_simplices.push(vec![a, b]);
                    }
                }
            }
            if n >= 3 && r.random_bool(0.4) {
                spec.maximal_simplices.push(sample(r, n, 3).into_vec());
            }
            build_simplicial_max(&spec).unwrap()
        };
        if k.live_count() <= 12 {
            if r.random_bool(0.5) {
                randomize_filtration(&mut k, r, 4);
            }
            return k;
        }
    }
}

fn brute_force_oracle() -> Check {
    let mut r = synth::rng(0xbeef);
    for n in 0..100 {
        let k = small_complex(&mut r);
        let d = compute_diagram(&k);
        let mut levels: Vec<Filt> = k.live_cells().map(|c| c.filt).collect();
        levels.sort_unstable();
        levels.dedup();
        for p in 0..=k.max_dim() {
            for (a, &i) in levels.iter().enumerate() {
                for &j in &levels[a..] {
                    let got = d
                        .in_dim(p)
                        .filter(|iv| iv.birth <= i && iv.death > Death::Finite(j))
                        .count();
                    let want = persistent_betti(&k, p, i, j);
                    ensure(got == want, || {
                        format!("complex {n}, dim {p}, ({i},{j}): {got} vs {want}")
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn smoothing_stability() -> Check {
    for s in corpus(77, 100) {
        let k = &s.complex;
        let before = compute_diagram(k);
        for eps in [0u32, 1, 2, 5] {
            let bound = f64::from(eps);
            let runs: [(&str, usize, Smoothed); 3] = [
                (
                    "collapse",
                    0,
                    Box::new(move |c| smooth_collapse(c, eps).unwrap().1),
                ),
                (
                    "coreduce",
                    1,
                    Box::new(move |c| smooth_coreduce(c, eps).unwrap().1),
                ),
                (
                    "pipeline",
                    1,
                    Box::new(move |c| {
                        run_pipeline(c, &Method::ALL, Some(eps))
                            .unwrap()
                            .perturbation
                            .unwrap()
                    }),
                ),
            ];
            for (name, low, run) in &runs {
                let mut c = k.clone();
                let p = run(&mut c);
                ensure(p.max_deviation() <= u64::from(eps), || {
                    format!("{} {name} ε={eps}: |f'-f| = {}", s.label, p.max_deviation())
                })?;
                let after = compute_diagram(&c);
                for d in *low..=k.max_dim() {
                    let dist = bottleneck(&before, &after, d);
                    ensure(dist <= bound, || {
                        format!("{} {name} ε={eps} dim {d}: {dist}", s.label)
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn strip_cascade_blocked() -> Check {
    let values = vec![0, 0, 4, 2, 3, 0, 1000, 0, 1, 3, 3, 0, 1, 2, 1];
    let cub = build_cubical(
        &VoxelGrid::new(vec![3, 5], values).unwrap(),
        Extension::LowerStar,
    )
    .unwrap();
    let hole = cub.id_of(&[3, 3]).unwrap();
    let mut k = cub.complex;
    k.remove_cell(hole).map_err(|e| e.to_string())?;
    let k = k.compact().0;
    let births = |k: &FilteredComplex| -> Vec<Filt> {
        compute_diagram(k)
            .in_dim(1)
            .filter(|iv| iv.is_essential())
            .map(|iv| iv.birth)
            .collect()
    };
    let truth = births(&k);
    for eps in [1u32, 2] {
        let mut r = k.clone();
        smooth_collapse(&mut r, eps).map_err(|e| e.to_string())?;
        let b = births(&r);
        ensure(
            b.len() == 1 && b[0].abs_diff(truth[0]) <= u64::from(eps),
            || format!("ε={eps}: births {b:?}, true {truth:?}"),
        )?;
    }
    Ok(())
}

fn zero_tolerance_degenerates() -> Check {
    for s in samples() {
        let (mut a, mut b) = (s.complex.clone(), s.complex.clone());
        let (la, _) = smooth_collapse(&mut a, 0).map_err(|e| e.to_string())?;
        let lb = collapse_reduce(&mut b).map_err(|e| e.to_string())?;
        ensure(la == lb && a == b, || format!("{} collapse", s.label))?;
        let (mut a, mut b) = (s.complex.clone(), s.complex.clone());
        let (la, _) = smooth_coreduce(&mut a, 0).map_err(|e| e.to_string())?;
        let lb = coreduce(&mut b).map_err(|e| e.to_string())?;
        ensure(la == lb && a == b, || format!("{} coreduce", s.label))?;
    }
    Ok(())
}

fn constant_grids_shrink() -> Check {
    for shape in [vec![10, 10], vec![6, 6, 6]] {
        let k = build_cubical_lower_star(&VoxelGrid::constant(shape.clone(), 0)).unwrap();
        let mut r = k.clone();
        run_pipeline(&mut r, &Method::ALL, None).map_err(|e| e.to_string())?;
        let removed = k.live_count() - r.live_count();
        ensure(removed * 10 >= k.live_count() * 9, || {
            format!("{shape:?}: removed {removed} of {}", k.live_count())
        })?;
        let oracle = compute_diagram(&k);
        same(
            &oracle,
            &compute_diagram(&r),
            |d| d >= 1,
            &format!("{shape:?}"),
        )?;
        same(
            &oracle,
            &zero_dim_unionfind(&k),
            |d| d == 0,
            &format!("{shape:?} dim 0"),
        )?;
    }
    Ok(())
}

fn cli_is_deterministic() -> Check {
    let dir = tempfile::TempDir::new().map_err(|e| e.to_string())?;
    let p = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let mut r = synth::rng(5);
    let grid = random_grid(&mut r, &[6, 6, 3], 7);
    fs::write(p("in.vox"), phsimplify::io::format_voxel(&grid)).map_err(|e| e.to_string())?;
    let runs: Vec<Vec<String>> = vec![
        vec![
            "reduce",
            "IN",
            "--method",
            "all",
            "--epsilon",
            "2",
            "--out",
            "OUT.complex",
            "--log",
            "OUT.log",
            "--diagram",
            "OUT.dgm",
        ],
        vec!["persist", "IN", "--out", "OUT.persist"],
        vec!["persist", "IN", "--dim0-unionfind"],
        vec!["diff", "OUT.persist", "OUT.dgm", "--bottleneck"],
    ]
    .into_iter()
    .map(|v| v.into_iter().map(String::from).collect())
    .collect();
    let mut snapshots = Vec::new();
    for round in ["a", "b"] {
        let mut snap = Vec::new();
        for args in &runs {
            let args: Vec<String> = args
                .iter()
                .map(|a| a.replace("IN", &p("in.vox")).replace("OUT", &p(round)))
                .collect();
            let o = Command::new(env!("CARGO_BIN_EXE_phsimplify"))
                .args(&args)
                .output()
                .map_err(|e| e.to_string())?;
            ensure(o.status.success(), || format!("{args:?} failed"))?;
            snap.push(o.stdout.clone());
        }
        for ext in ["complex", "complex.dim0", "log", "dgm", "persist"] {
            snap.push(fs::read(format!("{}.{ext}", p(round))).map_err(|e| e.to_string())?);
        }
        snapshots.push(snap);
    }
    // file paths differ between rounds only in stdout of `reduce`
    let strip = |b: &[u8], round: &str| String::from_utf8_lossy(b).replace(&p(round), "");
    for (i, (x, y)) in snapshots[0].iter().zip(&snapshots[1]).enumerate() {
        ensure(strip(x, "a") == strip(y, "b"), || {
            format!("output {i} differs between runs")
        })?;
    }
    Ok(())
}

struct Criterion(&'static str, u64, fn() -> Check);

fn main() -> ExitCode {
    let checks = [
        Criterion("cube: collapse guard keeps [0,10]", 1, cube_collapse_guard),
        Criterion(
            "square: coreduction guard keeps [0,10]",
            1,
            square_coreduction_guard,
        ),
        Criterion(
            "raised ring: admission guard keeps [0,1]",
            1,
            raised_ring_admission_guard,
        ),
        Criterion(
            "corpus: collapses preserve all dimensions",
            60,
            corpus_collapses,
        ),
        Criterion(
            "corpus: coreductions and acyclic excision preserve dims >= 1",
            120,
            corpus_coreductions_and_acyclic,
        ),
        Criterion(
            "corpus: union-find dimension 0 equals matrix reduction",
            60,
            corpus_unionfind,
        ),
        Criterion(
            "brute-force persistent Betti numbers",
            30,
            brute_force_oracle,
        ),
        Criterion(
            "smoothing: bottleneck and |f'-f| within epsilon",
            120,
            smoothing_stability,
        ),
        Criterion(
            "strip: tolerance cascade is blocked",
            1,
            strip_cascade_blocked,
        ),
        Criterion(
            "epsilon = 0 equals exact reductions",
            60,
            zero_tolerance_degenerates,
        ),
        Criterion(
            "constant 10x10 and 6x6x6 grids lose >= 90% of cells",
            10,
            constant_grids_shrink,
        ),
        Criterion("cli: reruns are byte-identical", 60, cli_is_deterministic),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, Criterion(name, limit, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let took = start.elapsed();
        let result = result.and_then(|()| {
            ensure(took <= Duration::from_secs(*limit), || {
                format!("took longer than {limit} s")
            })
        });
        match result {
            Ok(()) => println!("PASS {:>2} {name} ({:.2} s)", n + 1, took.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!(
                    "FAIL {:>2} {name} ({:.2} s): {msg}",
                    n + 1,
                    took.as_secs_f64()
                );
            }
        }
    }
    println!("{} of {} passed", checks.len() - failed, checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
