use num_complex::Complex;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use slag_core::linalg::{CMatrix, CVector};
use slag_core::scalar::reduce_angle;
use slag_core::slag::{frame_constant, frame_volume_with, integrate_profile, invariant_g, moment_residual, ProfileForm};
use slag_core::verification::random_point;
use slag_core::{PairKind, PotentialOde, PotentialTable, ProfileCurve, ProjectivePair, SymmetricPairCase, VolumeNormalization};

fn kinds() -> impl Strategy<Value = PairKind> {
    prop_oneof![
        Just(PairKind::AiiiAiii { p: 2, q: 1 }),
        Just(PairKind::AiiiAiii { p: 3, q: 2 }),
        Just(PairKind::Aiii { m: 3 }),
        Just(PairKind::Bdi { m: 3 }),
        Just(PairKind::Bdi { m: 5 }),
        Just(PairKind::Diii),
    ]
}

fn cvec(len: usize) -> impl Strategy<Value = CVector<f64>> {
    prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), len).prop_map(|v| CVector::new(v.into_iter().map(|(a, b)| Complex::new(a, b)).collect()))
}

fn case(kind: PairKind) -> SymmetricPairCase<f64> {
    SymmetricPairCase::new(kind).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn n_is_at_least_one_and_gauge_invariant(z in cvec(4), w in cvec(4), l in (0.2..3.0f64, -3.0..3.0f64), m in (0.2..3.0f64, -3.0..3.0f64)) {
        if let Ok(p) = ProjectivePair::new(z, w) {
            let n = p.eval_n();
            prop_assert!(n >= 1.0 - 1e-12);
            let q = p.rescaled(Complex::from_polar(l.0, l.1), Complex::from_polar(m.0, m.1)).unwrap();
            prop_assert!((q.eval_n() - n).abs() <= 1e-9 * n);
        }
    }

    #[test]
    fn determinant_is_multiplicative(a in cvec(9), b in cvec(9)) {
        let ma = CMatrix::from_fn(3, 3, |i, j| a[3 * i + j]);
        let mb = CMatrix::from_fn(3, 3, |i, j| b[3 * i + j]);
        let lhs = ma.matmul(&mb).det();
        let rhs = ma.det() * mb.det();
        prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()));
    }

    #[test]
    fn sigma_lies_on_zero_level(kind in kinds(), re in 0.02..0.98f64, im in -0.5..0.5f64) {
        let c = case(kind);
        let tau = Complex::new(re * c.strip_halfwidth(), im);
        prop_assert!(moment_residual(&c, &c.sigma_curve(tau).unwrap()).unwrap() < 1e-10);
    }

    #[test]
    fn zero_level_is_k_invariant(kind in kinds(), re in 0.05..0.95f64, im in -0.3..0.3f64, seed in 0u64..1000) {
        let c = case(kind);
        let p = c.sigma_curve(Complex::new(re * c.strip_halfwidth(), im)).unwrap();
        let g = c.random_group_element(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(moment_residual(&c, &g.act(&p).unwrap()).unwrap() < 1e-9);
    }

    #[test]
    fn chart_volume_equals_constant_times_g(kind in kinds(), re in 0.05..0.95f64, im in -0.3..0.3f64, d in (-1.0..1.0f64, -1.0..1.0f64)) {
        let c = case(kind);
        let tau = Complex::new(re * c.strip_halfwidth(), im);
        let dtau = Complex::new(d.0, d.1);
        prop_assume!(dtau.norm() > 1e-3);
        let v = frame_volume_with(&c, tau, dtau, VolumeNormalization::Chart).unwrap();
        let expect = invariant_g(kind, tau) * dtau * frame_constant::<f64>(kind);
        prop_assert!((v - expect).norm() <= 1e-8 * (1.0 + expect.norm()));
    }

    #[test]
    fn profile_satisfies_its_ode(kind in kinds(), re in 0.1..0.9f64, im in -0.2..0.2f64, psi in -3.0..3.0f64) {
        let c = case(kind);
        let tau0 = Complex::new(re * c.strip_halfwidth(), im);
        if let Ok(curve) = integrate_profile(&c, psi, tau0, 1e-3, 60, ProfileForm::Invariant) {
            let field = curve.field();
            for &(_, tau) in &curve.samples {
                let v = field.velocity(curve.psi, tau).unwrap();
                let g = invariant_g(kind, tau);
                prop_assert!((curve.psi.unit() * g * v).im.abs() < 1e-9);
                prop_assert!(tau.re > 0.0 && tau.re < c.strip_halfwidth());
            }
            for w in curve.samples.windows(2) {
                prop_assert!((w[1].1 - w[0].1).norm() <= 2.0 * curve.step);
            }
        }
    }

    #[test]
    fn random_points_round_trip_through_charts(seed in 0u64..500) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_point::<f64, _>(4, 0.8, &mut rng).unwrap();
        let chart = p.best_chart();
        let (zt, wt) = p.to_inhomogeneous(chart).unwrap();
        let q = slag_core::projective::from_inhomogeneous(&zt, &wt, chart).unwrap();
        prop_assert!(p.projective_distance(&q) < 1e-12);
    }

    #[test]
    fn reduced_angles_lie_in_range(a in -100.0..100.0f64) {
        let r = reduce_angle(a);
        prop_assert!((0.0..std::f64::consts::TAU).contains(&r));
        prop_assert!(((a - r) / std::f64::consts::TAU - ((a - r) / std::f64::consts::TAU).round()).abs() < 1e-9);
    }
}

#[test]
fn time_reversal_runs_backwards() {
    let c = case(PairKind::AiiiAiii { p: 2, q: 1 });
    let tau0 = Complex::new(0.6, 0.1);
    let fwd = integrate_profile(&c, 0.7, tau0, 1e-3, 5, ProfileForm::Invariant).unwrap();
    let bwd = integrate_profile(&c, 0.7 + std::f64::consts::PI, tau0, 1e-3, 5, ProfileForm::Invariant).unwrap();
    let a = fwd.samples[1].1 - tau0;
    let b = bwd.samples[1].1 - tau0;
    assert!((a + b).norm() < 10.0 * 1e-6 * a.norm() / 1e-3);
    let field = fwd.field();
    let va = field.velocity(fwd.psi, tau0).unwrap();
    let vb = field.velocity(bwd.psi, tau0).unwrap();
    assert!((va + vb).norm() < 1e-12 * va.norm());
}

#[test]
fn negative_start_keeps_sign_and_halts_at_boundary() {
    let c = case(PairKind::Bdi { m: 3 });
    let curve = integrate_profile(&c, 0.3, Complex::new(-0.4, 0.05), 1e-2, 100_000, ProfileForm::Invariant).unwrap();
    assert!(curve.samples.iter().all(|(_, t)| t.re < 0.0));
    assert_ne!(curve.halt, slag_core::HaltReason::MaxSteps);
}

#[test]
fn profile_csv_round_trip() {
    let c = case(PairKind::Diii);
    let curve = integrate_profile(&c, -std::f64::consts::FRAC_PI_2, Complex::new(0.4, 0.01), 1e-3, 50, ProfileForm::Invariant).unwrap();
    let mut buf = Vec::new();
    curve.write_csv(&mut buf).unwrap();
    assert!(String::from_utf8_lossy(&buf).starts_with("s,re_tau,im_tau\n"));
    let back = ProfileCurve::<f64>::read_csv(&buf[..], curve.kind, curve.psi.value(), curve.form, curve.step).unwrap();
    assert_eq!(back.samples, curve.samples);
}

#[test]
fn potential_csv_round_trip() {
    let t = PotentialTable::<f64>::solve(3, 2.0, 1e-4, PotentialOde::TwoN).unwrap();
    let mut buf = Vec::new();
    t.write_csv(&mut buf).unwrap();
    assert!(String::from_utf8_lossy(&buf).starts_with("N,h,hprime\n"));
    let back = PotentialTable::<f64>::read_csv(&buf[..], 3, PotentialOde::TwoN).unwrap();
    assert_eq!(back.h(), t.h());
    assert_eq!(back.hprime(), t.hprime());
}

#[test]
fn single_precision_pipeline() {
    let c = SymmetricPairCase::<f32>::new(PairKind::Bdi { m: 3 }).unwrap();
    let p = c.sigma_curve(Complex::new(0.3f32, 0.1)).unwrap();
    assert!(moment_residual(&c, &p).unwrap() < 1e-5);
    let t = PotentialTable::<f32>::solve(2, 3.0, 1e-2, PotentialOde::TwoNMinusOne).unwrap();
    assert!(t.max_residual() < 5e-2);
    let curve = integrate_profile(&c, 0.0f32, Complex::new(0.3, 0.05), 1e-2, 20, ProfileForm::Invariant).unwrap();
    assert!(curve.samples.len() > 1);
}

#[test]
fn verification_reports_are_deterministic() {
    let cfg = {
        let mut c = slag_core::SuiteConfig::new(PairKind::Bdi { m: 3 });
        c.seed = 11;
        c.curve_points = 5;
        c.orbit_samples = 3;
        c.random_points = 5;
        c
    };
    let a = slag_core::run_theorem_suite::<f64>(cfg.kind, None, &cfg).unwrap().to_json();
    let b = slag_core::run_theorem_suite::<f64>(cfg.kind, None, &cfg).unwrap().to_json();
    assert_eq!(a, b);
}

#[test]
fn hamiltonian_residual_shrinks_with_step() {
    let c = case(PairKind::Aiii { m: 3 });
    let mut cfg = slag_core::SuiteConfig::new(c.kind());
    cfg.random_points = 5;
    cfg.fd_step = 2e-2;
    let coarse = slag_core::verification::check_hamiltonian(&c, &cfg).unwrap();
    cfg.fd_step = 1e-2;
    let fine = slag_core::verification::check_hamiltonian(&c, &cfg).unwrap();
    assert!(fine <= coarse, "{fine} > {coarse}");
}
