use lpmaj_core::genfun::{self, Catalyst, SeriesTemplate};
use lpmaj_core::majorization::{self, psi_compare, PsiLambda};
use lpmaj_core::rational::{self, frac, int};
use lpmaj_core::report::{FullReportDoc, Theorem1Doc};
use lpmaj_core::spectral::{self, IntMatrix};
use lpmaj_core::sympoly;
use lpmaj_core::theorem1;
use lpmaj_core::{Rational, RationalVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn example() -> (IntMatrix, IntMatrix) {
    let q = vec![vec![1, 1, 1, 1], vec![0, 1, 1, 0], vec![0, 0, 1, 0], vec![0, 0, 1, 1]];
    let mut r = q.clone();
    r[3][3] = -1;
    (
        spectral::gram(&IntMatrix::from_rows(&q).unwrap()).unwrap(),
        spectral::gram(&IntMatrix::from_rows(&r).unwrap()).unwrap(),
    )
}

fn spectrum(m: &IntMatrix) -> RationalVector {
    let ev = theorem1::clamp_psd(spectral::eigenvalues_f64(m).unwrap());
    RationalVector::new(ev.into_iter().map(|v| rational::from_f64(v).unwrap()).collect()).unwrap()
}

#[test]
fn psi_comparison_on_the_example_spectra() {
    let (x, y) = example();
    let lambdas: Vec<PsiLambda> = [frac(1, 4), frac(1, 2), int(1), int(2), int(4)]
        .into_iter()
        .map(|l| PsiLambda::new(l).unwrap())
        .collect();
    let rows = psi_compare(&spectrum(&x), &spectrum(&y), &lambdas, 1e-9).unwrap();
    assert_eq!(rows.len(), 5);
    // (L) is not implied here: the F hypotheses already fail at r = 3, and
    // the comparison does fail for small lambda.
    let held: Vec<bool> = rows.iter().map(|r| r.holds).collect();
    assert_eq!(held, [false, false, true, true, true], "{rows:?}");
    assert!(!theorem1::check_hypotheses_spectral(&x, &y, 3).unwrap().all_pass);
}

#[test]
fn float_spectra_reproduce_the_exact_coefficients() {
    let (x, y) = example();
    for m in [&x, &y] {
        let ev = spectrum(m);
        let exact = spectral::f_from_matrix(m, 2).unwrap();
        let approx = sympoly::f_kr_all(&ev, 2).unwrap();
        for (a, b) in exact.iter().zip(&approx) {
            let (a, b) = (rational::to_f64(a), rational::to_f64(b));
            assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0), "{a} vs {b}");
        }
    }
}

#[test]
fn permuted_gram_matrices_share_coefficients() {
    let (x, _) = example();
    let p = x.permute_symmetric(&[2, 0, 3, 1]).unwrap();
    let s = spectral::summarize(&x, &[1, 2, 3]).unwrap();
    assert_eq!(s, spectral::summarize(&p, &[1, 2, 3]).unwrap());
    assert!(s.nonnegative());
    // r = 1 is the elementary route.
    assert_eq!(s.f_coeffs[0].1, s.e_coeffs);
}

#[test]
fn sign_flip_one_is_the_second_factor() {
    let q = IntMatrix::from_rows(&[vec![1, 1, 1, 1], vec![0, 1, 1, 0], vec![0, 0, 1, 0], vec![0, 0, 1, 1]]).unwrap();
    let (_, y) = example();
    let variants: Vec<IntMatrix> = spectral::sign_flip_variants(&q, 2).collect();
    assert_eq!(variants[0], q);
    assert_eq!(spectral::gram(&variants[1]).unwrap(), y);
}

#[test]
fn reports_round_trip_through_json_values() {
    let (x, y) = example();
    let full = theorem1::full_report_spectral(&x, &y, 3, 11, 1e-9).unwrap();
    let doc = FullReportDoc::new(&full, 3, 5);
    assert_eq!(doc.failure_witness.map(|w| (w.r, w.k)), Some((3, 10)));
    assert_eq!(doc.grids.len(), 22);

    let h = theorem1::check_hypotheses_spectral(&x, &y, 2).unwrap();
    let c = theorem1::verify_conclusions_spectral(&x, &y, 2, 11, 1e-9).unwrap();
    let doc = Theorem1Doc::new(&h, &c, &[], 5);
    assert_eq!(doc.certified_interval, Some([0.0, 3.0]));
    assert!(doc.all_pass);
    assert_eq!(doc.checks.iter().map(|c| c.k).collect::<Vec<_>>(), (2..=8).collect::<Vec<_>>());
}

#[test]
fn scaled_vectors_pass_every_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..30 {
        let n = rng.gen_range(1..=4);
        let x = majorization::random_vector(&mut rng, n, 9, 3);
        let y = x.scale(&frac(rng.gen_range(11..=30), 10)).unwrap();
        for r in 1..=3 {
            assert!(theorem1::check_hypotheses(&x, &y, r).unwrap().all_pass);
        }
    }
}

#[test]
fn majorization_pairs_satisfy_theorem2_directions() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..60 {
        let n = rng.gen_range(2..=4);
        let (x, y) = majorization::random_majorization_pair(&mut rng, n, 2);
        let scan = majorization::theorem2_scan(&x, &y, 6).unwrap();
        assert!(scan.majorization.holds && scan.g_holds() && scan.m_holds() && scan.consistent());
    }
}

#[test]
fn catalyst_route_matches_the_tensor_vector() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let n = rng.gen_range(1..=3);
        let x = majorization::random_vector(&mut rng, n, 9, 4);
        let c = Catalyst::new(vec![int(1), frac(rng.gen_range(0..=6), 3)]).unwrap();
        for r in 1..=2 {
            let tpl = SeriesTemplate::taylor(r);
            let top = 2 * n * r;
            let direct = genfun::catalyst_product(&x, &c, &tpl, top).into_coeffs();
            let tensor = sympoly::f_kr_all(&genfun::tensor(&x, &c), r).unwrap();
            let pad = |mut v: Vec<Rational>| {
                v.resize(top + 1, int(0));
                v
            };
            assert_eq!(pad(direct), pad(tensor));
        }
    }
}
