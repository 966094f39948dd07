mod common;

use common::{complement_property_by_minors, cv, det, e, rv};
use itertools::Itertools;
use num_complex::Complex64;
use proptest::prelude::*;
use rank2lift::geometry::{Subspace, Tolerance, Vector};
use rank2lift::realify::{companion, lift, scalar_between};
use rank2lift::retrieval::*;
use rank2lift::rng::{gaussian_complex, gaussian_real, unit_complex, unit_real, Streams};

fn tol() -> Tolerance<f64> {
    Tolerance::default()
}

fn opts(seed: u64) -> SearchOptions<f64> {
    SearchOptions::default().with_seed(seed)
}

fn lines(vs: &[Vector<f64>]) -> ProjectionFamily<f64> {
    ProjectionFamily::from_vectors(vs, &tol()).unwrap()
}

fn max_gap(f: &ProjectionFamily<f64>, w: &Vector<f64>, v: &Vector<f64>) -> f64 {
    f.members()
        .iter()
        .map(|m| (m.projection_norm(w) - m.projection_norm(v)).abs())
        .fold(0.0, f64::max)
}

fn random_subspace(rng: &mut rand_chacha::ChaCha8Rng, n: usize, d: usize) -> Subspace<f64> {
    let gens: Vec<Vector<f64>> = (0..d).map(|_| gaussian_real(rng, n)).collect();
    Subspace::span(&gens, &tol()).unwrap()
}

#[test]
fn distinguishes_examples() {
    let f = lines(&[e(2, 0), e(2, 1)]);
    let same = distinguishes(&f, &rv(&[1.0, 1.0]), &rv(&[1.0, -1.0]), &tol()).unwrap();
    assert!(!same.separates());
    let apart = distinguishes(&f, &rv(&[2.0, 0.0]), &rv(&[1.0, 0.0]), &tol()).unwrap();
    assert_eq!(apart.first_separating, Some(0));
    assert_eq!(apart.separating, vec![true, false]);
}

#[test]
fn distinguishes_criteria_agree_on_random_inputs() {
    let streams = Streams::new(21);
    for i in 0..50 {
        let mut rng = streams.stream("retrieval/distinguish", i);
        let n = 2 + (i as usize % 4);
        let f = ProjectionFamily::new((0..4).map(|k| random_subspace(&mut rng, n, 1 + k % n)).collect()).unwrap();
        let x: Vector<f64> = gaussian_real(&mut rng, n);
        let y: Vector<f64> = gaussian_real(&mut rng, n);
        let d = distinguishes(&f, &x, &y, &tol()).unwrap();
        assert!(d.consistent);
        // the inner-product form written out directly
        for (j, m) in f.members().iter().enumerate() {
            let ip = (&x - &y).dot(&m.project(&(&x + &y)).unwrap());
            let norms = m.projection_norm(&x).powi(2) - m.projection_norm(&y).powi(2);
            assert!(
                (ip - norms).abs() < 1e-10 * (1.0 + x.norm_sq() + y.norm_sq()),
                "index {j}"
            );
        }
    }
}

#[test]
fn complement_property_examples() {
    let t = tol();
    let sum = rv(&[1.0, 1.0]);
    assert_eq!(
        complement_property(&[e(2, 0), e(2, 1), sum], &t).unwrap().verdict,
        Verdict::PassExhaustive
    );
    let r = complement_property(&[e(2, 0), e(2, 1)], &t).unwrap();
    assert_eq!(r.verdict, Verdict::CertifiedFail);
    assert_eq!(r.violating_subset, Some(vec![0]));

    let streams = Streams::new(22);
    let mut rng = streams.stream("retrieval/cp", 0);
    let five: Vec<Vector<f64>> = (0..5).map(|_| gaussian_real(&mut rng, 3)).collect();
    assert_eq!(complement_property(&five, &t).unwrap().verdict, Verdict::PassExhaustive);
}

#[test]
fn complement_property_matches_minor_oracle_on_integer_families() {
    let streams = Streams::new(23);
    for i in 0..60 {
        let mut rng = streams.stream("retrieval/cp-int", i);
        let n = 2 + (i as usize % 2);
        let m = 2 + (i as usize % 5);
        let vs: Vec<Vector<f64>> = (0..m)
            .map(|_| loop {
                let g: Vector<f64> = gaussian_real(&mut rng, n);
                let v = rv(&g
                    .coords()
                    .iter()
                    .map(|c| c.round().clamp(-1.0, 1.0))
                    .collect::<Vec<_>>());
                if v.norm() > 0.0 {
                    break v;
                }
            })
            .collect();
        let raw: Vec<Vec<f64>> = vs.iter().map(|v| v.coords().to_vec()).collect();
        let got = complement_property(&vs, &tol()).unwrap();
        assert_eq!(got.is_pass(), complement_property_by_minors(&raw), "instance {i}");
        if let Some(side) = got.violating_subset {
            let inside: Vec<Vec<f64>> = side.iter().map(|&k| raw[k].clone()).collect();
            let outside: Vec<Vec<f64>> = (0..m).filter(|k| !side.contains(k)).map(|k| raw[k].clone()).collect();
            assert!(!common::spans_by_minors(&inside, n) && !common::spans_by_minors(&outside, n));
        }
    }
}

#[test]
fn full_spark_examples() {
    let t = tol();
    let sum = rv(&[1.0, 1.0]);
    assert!(full_spark(&[e(2, 0), e(2, 1), sum], &t).unwrap().full);
    let bad = full_spark(&[e(2, 0), e(2, 1), e(2, 0)], &t).unwrap();
    assert_eq!(bad.defective_subset, Some(vec![0, 2]));

    let streams = Streams::new(24);
    let mut rng = streams.stream("retrieval/spark", 0);
    let six: Vec<Vector<f64>> = (0..6).map(|_| gaussian_real(&mut rng, 3)).collect();
    for subset in (0..6).combinations(3) {
        let m = subset.iter().map(|&k| six[k].coords().to_vec()).collect();
        assert!(det(m).abs() > 1e-9);
    }
    assert!(full_spark(&six, &t).unwrap().full);
}

#[test]
fn edidin_examples() {
    let r = edidin_check(&lines(&[e(2, 0), e(2, 1)]), &opts(0)).unwrap();
    assert_eq!(r.verdict, Verdict::CertifiedFail);
    let (w, v) = r.witness_pair().unwrap();
    let f = lines(&[e(2, 0), e(2, 1)]);
    assert!(!distinguishes(&f, w, v, &tol()).unwrap().separates());
    assert!((w - v).norm() > 1e-3 && (w + v).norm() > 1e-3);

    let sum = rv(&[1.0, 1.0]);
    let pass = edidin_check(&lines(&[e(2, 0), e(2, 1), sum]), &opts(0)).unwrap();
    assert_eq!(pass.verdict, Verdict::PassProbabilistic);
}

#[test]
fn two_planes_in_three_space_fail_phase_retrieval() {
    let streams = Streams::new(25);
    for i in 0..5 {
        let mut rng = streams.stream("retrieval/planes", i);
        let f = ProjectionFamily::new(vec![random_subspace(&mut rng, 3, 2), random_subspace(&mut rng, 3, 2)]).unwrap();
        let r = edidin_check(&f, &opts(i)).unwrap();
        assert_eq!(r.verdict, Verdict::CertifiedFail, "instance {i}");
        let (w, v) = r.witness_pair().unwrap();
        assert!(!distinguishes(&f, w, v, &tol()).unwrap().separates());
        assert!(max_gap(&f, w, v) < 1e-9);
    }
}

#[test]
fn indistinguishable_pair_examples() {
    let t = tol();
    let f = lines(&[e(2, 0)]);
    let (w, v) = indistinguishable_pair(&f, &e(2, 0), &t).unwrap().unwrap();
    assert!(w.max_abs_diff(&rv(&[0.5, 0.5])) < 1e-15);
    assert!(v.max_abs_diff(&rv(&[0.5, -0.5])) < 1e-15);

    let sum = rv(&[1.0, 1.0]);
    let spanning = lines(&[e(2, 0), e(2, 1), sum]);
    assert_eq!(indistinguishable_pair(&spanning, &rv(&[0.3, -0.7]), &t).unwrap(), None);
    assert!(indistinguishable_pair(&f, &rv(&[0.0, 0.0]), &t).is_err());

    let streams = Streams::new(26);
    for i in 0..10 {
        let mut rng = streams.stream("retrieval/pair", i);
        let f = ProjectionFamily::new((0..3).map(|_| random_subspace(&mut rng, 4, 1)).collect()).unwrap();
        let x: Vector<f64> = gaussian_real(&mut rng, 4);
        let (w, v) = indistinguishable_pair(&f, &x, &t).unwrap().unwrap();
        assert!(!distinguishes(&f, &w, &v, &t).unwrap().separates());
        assert!((&w + &v).max_abs_diff(&x) < 1e-12);
    }
}

fn assert_complex_witness(vs: &[Vector<Complex64>], r: &CheckReport<Complex64>) {
    let (w, v) = r.witness_pair().expect("failure carries a witness");
    for f in vs {
        assert!((w.inner(f).norm() - v.inner(f).norm()).abs() < 1e-9);
    }
    if let Ok(Some(c)) = scalar_between(w, v, &tol()) {
        assert!((c.norm() - 1.0).abs() > 1e-9)
    }
}

#[test]
fn complex_thresholds_in_two_dimensions() {
    let streams = Streams::new(27);
    for i in 0..5 {
        let mut rng = streams.stream("retrieval/c2", i);
        let three: Vec<Vector<Complex64>> = (0..3).map(|_| gaussian_complex(&mut rng, 2)).collect();
        let r = complex_pr_check(&three, &opts(i)).unwrap();
        assert_eq!(r.verdict, Verdict::CertifiedFail);
        assert_complex_witness(&three, &r);

        let four: Vec<Vector<Complex64>> = (0..4).map(|_| gaussian_complex(&mut rng, 2)).collect();
        let r = complex_pr_check(&four, &opts(i)).unwrap();
        assert_eq!(r.verdict, Verdict::PassProbabilistic);
        let lifted = lift_vector_family(&four, &tol()).unwrap();
        for k in 0..200 {
            let x: Vector<f64> = unit_real(&mut streams.stream("retrieval/c2-sample", k), 4);
            assert_eq!(lifted.image_span_dim(&x, &tol()).unwrap(), 3);
        }
    }
}

#[test]
fn complex_zero_vector_rejected() {
    let vs = [cv(&[(1.0, 0.0), (0.0, 0.0)]), cv(&[(0.0, 0.0), (0.0, 0.0)])];
    assert!(complex_pr_check(&vs, &opts(0)).is_err());
}

#[test]
fn subspace_check_agrees_with_vector_check_on_lines() {
    let streams = Streams::new(28);
    for i in 0..20 {
        let mut rng = streams.stream("retrieval/lines", i);
        let m = 3 + (i as usize % 2);
        let vs: Vec<Vector<Complex64>> = (0..m).map(|_| gaussian_complex(&mut rng, 2)).collect();
        let subs: Vec<Subspace<Complex64>> = vs
            .iter()
            .map(|v| Subspace::span(std::slice::from_ref(v), &tol()).unwrap())
            .collect();
        let a = complex_pr_check(&vs, &opts(i)).unwrap();
        let b = complex_projection_pr_check(&subs, &opts(i)).unwrap();
        assert_eq!(a.verdict, b.verdict, "instance {i}");
        if !b.is_pass() {
            assert_complex_witness(&vs, &b);
        }
    }
}

#[test]
fn subspace_check_examples() {
    let whole = complex_projection_pr_check(&[Subspace::<Complex64>::whole(2)], &opts(0)).unwrap();
    assert_eq!(whole.verdict, Verdict::CertifiedFail);
    let (w, v) = whole.witness_pair().unwrap();
    assert!((w.norm() - v.norm()).abs() < 1e-9);

    let streams = Streams::new(29);
    let mut rng = streams.stream("retrieval/c3", 0);
    let subs: Vec<Subspace<Complex64>> = (0..6)
        .map(|_| Subspace::span(&[gaussian_complex(&mut rng, 3)], &tol()).unwrap())
        .collect();
    let r = complex_projection_pr_check(&subs, &opts(0)).unwrap();
    assert_eq!(r.verdict, Verdict::CertifiedFail);
    let f = ProjectionFamily::new(subs).unwrap();
    let (w, v) = r.witness_pair().unwrap();
    assert!(!distinguishes(&f, w, v, &tol()).unwrap().separates());

    let zero = complex_projection_pr_check(&[Subspace::<Complex64>::zero(2), Subspace::whole(2)], &opts(0));
    assert!(zero.is_err());
}

#[test]
fn support_statistics() {
    let t = tol();
    let onb = [cv(&[(1.0, 0.0), (0.0, 0.0)]), cv(&[(0.0, 0.0), (1.0, 0.0)])];
    assert_eq!(nonvanishing_support_stats(&onb, &onb[0], &t).unwrap(), (1, 1));
    let x = cv(&[(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
    let perp = [
        cv(&[(1.0, 0.0), (0.0, 2.0), (0.0, 0.0)]),
        cv(&[(0.0, 1.0), (0.0, 0.0), (0.0, 0.0)]),
    ];
    assert_eq!(nonvanishing_support_stats(&perp, &x, &t).unwrap(), (0, 0));

    let streams = Streams::new(30);
    let mut rng = streams.stream("retrieval/support", 0);
    let four: Vec<Vector<Complex64>> = (0..4).map(|_| gaussian_complex(&mut rng, 2)).collect();
    assert!(complex_pr_check(&four, &opts(0)).unwrap().is_pass());
    for _ in 0..20 {
        let x: Vector<Complex64> = gaussian_complex(&mut rng, 2);
        let (size, dim) = nonvanishing_support_stats(&four, &x, &t).unwrap();
        assert!(size >= 3 && dim == 2);
    }
}

#[test]
fn norm_retrieval_examples() {
    let onb = lines(&[e(3, 0), e(3, 1), e(3, 2)]);
    assert_eq!(
        norm_retrieval_check(&onb, &opts(0)).unwrap().verdict,
        Verdict::PassProbabilistic
    );

    let single = lines(&[e(2, 0)]);
    let r = norm_retrieval_check(&single, &opts(0)).unwrap();
    assert_eq!(r.verdict, Verdict::CertifiedFail);
    let (a, b) = r.witness_pair().unwrap();
    assert!(max_gap(&single, a, b) < 1e-12);
    assert!((a.norm() - b.norm()).abs() > 1e-3);

    // the stated witness for x = e1 + e2
    let (a, b) = norm_retrieval_witness(&single, &rv(&[1.0, 1.0]), &tol())
        .unwrap()
        .unwrap();
    assert!(a.max_abs_diff(&rv(&[0.5, 1.0])) < 1e-15);
    assert!(b.max_abs_diff(&rv(&[0.5, 0.0])) < 1e-15);
}

#[test]
fn phase_retrieval_implies_norm_retrieval() {
    let streams = Streams::new(31);
    let mut checked = 0;
    for i in 0..20 {
        let mut rng = streams.stream("retrieval/pr-nr", i);
        let n = 2 + (i as usize % 2);
        let vs: Vec<Vector<f64>> = (0..2 * n - 1 + (i as usize % 2))
            .map(|_| gaussian_real(&mut rng, n))
            .collect();
        let f = lines(&vs);
        if edidin_check(&f, &opts(i)).unwrap().is_pass() {
            checked += 1;
            assert!(norm_retrieval_check(&f, &opts(i)).unwrap().is_pass(), "instance {i}");
        }
    }
    assert!(checked >= 10);
}

#[test]
fn scalar_identity_sums_retrieve_norms() {
    // Mercedes-Benz lines sum to (3/2) I; lifted harmonic planes sum to I
    let r = 3f64.sqrt() / 2.0;
    let mb = lines(&[rv(&[0.0, 1.0]), rv(&[-r, -0.5]), rv(&[r, -0.5])]);
    assert!(norm_retrieval_check(&mb, &opts(0)).unwrap().is_pass());
    let tight = rank2lift::frames::tight_fusion_existence::<f64>(5, 3, &tol()).unwrap();
    let planes = ProjectionFamily::new(tight.subspaces().to_vec()).unwrap();
    assert!(norm_retrieval_check(&planes, &opts(0)).unwrap().is_pass());
}

#[test]
fn coefficient_examples() {
    let t = tol();
    let onb = lines(&[e(2, 0), e(2, 1)]);
    let s = coefficient_analysis(&onb, &rv(&[0.6, 0.8]), &t).unwrap();
    assert!(s.condition_holds());
    let rep = s.reproducing.expect("solvable");
    assert!((rep.coefficients[0] - 1.0).abs() < 1e-12 && (rep.coefficients[1] - 1.0).abs() < 1e-12);
    assert!((rep.sum - 2.0).abs() < 1e-12);

    let identity = ProjectionFamily::new(vec![Subspace::<f64>::whole(2)]).unwrap();
    let report = complement_transfer_check(&identity, 10, 0, &t).unwrap();
    assert!(!report.holds_at_all_samples);
    assert!(report
        .samples
        .iter()
        .all(|s| s.reproducing.is_none() && s.annihilating.is_none()));
}

#[test]
fn coefficient_solutions_solve_their_systems() {
    let streams = Streams::new(32);
    for i in 0..20 {
        let mut rng = streams.stream("retrieval/coeff", i);
        let n = 2 + (i as usize % 3);
        let f = ProjectionFamily::new((0..n + 2).map(|k| random_subspace(&mut rng, n, 1 + k % 2)).collect()).unwrap();
        let y: Vector<f64> = unit_real(&mut rng, n);
        let s = coefficient_analysis(&f, &y, &tol()).unwrap();
        let images = f.images(&y).unwrap();
        let combine = |a: &[f64]| {
            let mut out = Vector::zeros(n);
            for (p, &c) in images.iter().zip(a) {
                out.axpy(c, p);
            }
            out
        };
        if let Some(r) = &s.reproducing {
            assert!(combine(&r.coefficients).max_abs_diff(&y) < 1e-9);
            assert!((r.sum - 1.0).abs() > 1e-9);
        }
        if let Some(a) = &s.annihilating {
            assert!(combine(&a.coefficients).norm() < 1e-9);
            assert!(a.sum.abs() > 1e-9);
        }
    }
}

/// Random orthogonal decomposition into `blocks` pieces plus `extra` random
/// subspaces. The pieces sum to the identity, so every `y` is reproduced
/// with coefficient sum `blocks`.
fn decomposition_with_extras(
    rng: &mut rand_chacha::ChaCha8Rng,
    n: usize,
    blocks: usize,
    extra: usize,
) -> ProjectionFamily<f64> {
    let gens: Vec<Vector<f64>> = (0..n).map(|_| gaussian_real(rng, n)).collect();
    let basis = Subspace::span(&gens, &tol()).unwrap().basis().to_vec();
    let mut members: Vec<Subspace<f64>> = (0..blocks)
        .map(|b| {
            let piece: Vec<Vector<f64>> = basis.iter().skip(b).step_by(blocks).cloned().collect();
            Subspace::span(&piece, &tol()).unwrap()
        })
        .collect();
    members.extend((0..extra).map(|k| random_subspace(rng, n, 1 + k % (n - 1))));
    ProjectionFamily::new(members).unwrap()
}

#[test]
fn complements_inherit_norm_retrieval() {
    let streams = Streams::new(33);
    for i in 0..20 {
        let mut rng = streams.stream("retrieval/complements", i);
        let n = 3 + (i as usize % 2);
        let f = decomposition_with_extras(&mut rng, n, 2 + (i as usize % 2), 1 + (i as usize % 3));
        let transfer = complement_transfer_check(&f, 50, i, &tol()).unwrap();
        assert!(transfer.holds_at_all_samples, "instance {i}");
        assert!(norm_retrieval_check(&f, &opts(i)).unwrap().is_pass(), "instance {i}");
        let c = complement_family(&f);
        assert!(norm_retrieval_check(&c, &opts(i)).unwrap().is_pass(), "instance {i}");
    }
}

#[test]
fn complement_failures_sit_where_the_coefficient_condition_fails() {
    // Generic families satisfy the condition at sampled y but can violate it
    // on a thin set; a failing complement must point into that set.
    let streams = Streams::new(36);
    let mut failures = 0;
    for i in 0..30 {
        let mut rng = streams.stream("retrieval/complement-failures", i);
        let n = 3;
        let f = ProjectionFamily::new((0..4).map(|k| random_subspace(&mut rng, n, 1 + k % 2)).collect()).unwrap();
        let c = complement_family(&f);
        let r = norm_retrieval_check(&c, &opts(i)).unwrap();
        if let Some(y) = &r.probe_x {
            failures += 1;
            let (a, b) = r.witness_pair().unwrap();
            assert!(max_gap(&c, a, b) < 1e-9);
            assert!(
                !coefficient_analysis(&f, y, &tol()).unwrap().condition_holds(),
                "instance {i}"
            );
        }
    }
    assert!(failures > 0);
}

#[test]
fn complement_family_examples() {
    let t = tol();
    let f = ProjectionFamily::new(vec![Subspace::span(&[e(3, 0)], &t).unwrap()]).unwrap();
    let c = complement_family(&f);
    assert!(c.members()[0].same_as(&Subspace::span(&[e(3, 1), e(3, 2)], &t).unwrap(), &t));
    let streams = Streams::new(34);
    for i in 0..20 {
        let mut rng = streams.stream("retrieval/complement", i);
        let n = 2 + (i as usize % 4);
        let s = random_subspace(&mut rng, n, 1 + (i as usize % n));
        let f = ProjectionFamily::new(vec![s.clone()]).unwrap();
        let cc = complement_family(&complement_family(&f));
        assert!(cc.members()[0].distance(&s) < 1e-10);
        assert_eq!(s.dim() + complement_family(&f).members()[0].dim(), n);
    }
}

#[test]
fn reports_are_reproducible() {
    let streams = Streams::new(35);
    let mut rng = streams.stream("retrieval/repro", 0);
    let three: Vec<Vector<Complex64>> = (0..3).map(|_| gaussian_complex(&mut rng, 2)).collect();
    let a = complex_pr_check(&three, &opts(9)).unwrap();
    let b = complex_pr_check(&three, &opts(9)).unwrap();
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn companion_is_orthogonal_to_every_image(seed in any::<u64>(), n in 1usize..5, m in 1usize..7) {
        let streams = Streams::new(seed);
        let mut rng = streams.stream("prop/companion", 0);
        let vs: Vec<Vector<Complex64>> = (0..m).map(|_| gaussian_complex(&mut rng, n)).collect();
        let lifted = lift_vector_family(&vs, &tol()).unwrap();
        let x: Vector<Complex64> = unit_complex(&mut rng, n);
        let xp = lift(&x).v_prime().clone();
        prop_assert!(companion_overlap(&lifted, &xp).unwrap() < 1e-10);
        let xpp = companion(&xp).unwrap();
        for img in lifted.images(&xp).unwrap() {
            prop_assert!(xpp.dot(&img).abs() < 1e-10);
        }
    }

    #[test]
    fn failures_always_carry_verified_witnesses(seed in any::<u64>(), n in 2usize..4, m in 1usize..5) {
        let streams = Streams::new(seed);
        let mut rng = streams.stream("prop/witness", 0);
        let vs: Vec<Vector<f64>> = (0..m).map(|_| gaussian_real(&mut rng, n)).collect();
        let f = lines(&vs);
        let r = edidin_check(&f, &opts(seed)).unwrap();
        prop_assert_eq!(r.is_pass(), complement_property(&vs, &tol()).unwrap().is_pass());
        if let Some((w, v)) = r.witness_pair() {
            prop_assert!(max_gap(&f, w, v) < 1e-9);
            prop_assert!((w - v).norm() > 1e-9 && (w + v).norm() > 1e-9);
        }
    }
}
