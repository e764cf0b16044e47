//! Tolerance-relaxed reductions stay within ε of the original diagram.

use phsimplify::synth::corpus;
use phsimplify::{
    bottleneck, compute_diagram, quantize_levels, run_pipeline, smooth_collapse, smooth_coreduce,
    FilteredComplex, Method, PersistenceDiagram, PerturbedFiltration,
};

const EPSILONS: [u32; 4] = [0, 1, 2, 5];

fn within(
    label: &str,
    eps: u32,
    before: &PersistenceDiagram,
    after: &PersistenceDiagram,
    dims: impl Iterator<Item = usize>,
) {
    for d in dims {
        let dist = bottleneck(before, after, d);
        assert!(dist <= f64::from(eps), "{label} ε={eps} dim {d}: {dist}");
    }
}

fn check_perturbation(label: &str, original: &FilteredComplex, p: &PerturbedFiltration, eps: u32) {
    assert!(p.max_deviation() <= u64::from(eps), "{label} ε={eps}");
    let mut moved = original.clone();
    p.apply_to(&mut moved);
    assert!(
        moved.validate().is_valid(),
        "{label} ε={eps}: f' is not a filtration"
    );
}

#[test]
fn smoothed_reductions_respect_the_bound() {
    let mut moved_any = [false; EPSILONS.len()];
    for s in corpus(77, 100) {
        let k = &s.complex;
        let before = compute_diagram(k);
        let top = k.max_dim();
        for (i, &eps) in EPSILONS.iter().enumerate() {
            let mut a = k.clone();
            let (_, p) = smooth_collapse(&mut a, eps).unwrap();
            check_perturbation(&s.label, k, &p, eps);
            moved_any[i] |= p.changed().count() > 0;
            within(&s.label, eps, &before, &compute_diagram(&a), 0..=top);

            let mut b = k.clone();
            let (_, p) = smooth_coreduce(&mut b, eps).unwrap();
            check_perturbation(&s.label, k, &p, eps);
            within(&s.label, eps, &before, &compute_diagram(&b), 1..=top);

            let mut c = k.clone();
            let report = run_pipeline(&mut c, &Method::ALL, Some(eps)).unwrap();
            if s.lower_star {
                assert!(!report.quantize_skipped, "{}", s.label);
            }
            let p = report.perturbation.unwrap();
            check_perturbation(&s.label, k, &p, eps);
            within(&s.label, eps, &before, &compute_diagram(&c), 1..=top);
        }
    }
    assert_eq!(moved_any, [false, false, true, true]);
}

#[test]
fn quantized_grids_stay_close() {
    for s in corpus(78, 100).into_iter().filter(|s| s.lower_star) {
        let before = compute_diagram(&s.complex);
        for eps in EPSILONS {
            let mut k = s.complex.clone();
            let p = quantize_levels(&mut k, eps).unwrap();
            check_perturbation(&s.label, &s.complex, &p, eps);
            within(
                &s.label,
                eps,
                &before,
                &compute_diagram(&k),
                0..=s.complex.max_dim(),
            );
        }
    }
}
