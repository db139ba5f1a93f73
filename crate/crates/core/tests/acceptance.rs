//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::time::Instant;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slag_core::pairs::real_linear_commutes_with_i;
use slag_core::slag::{
    closed_form_g, frame_volume, integrate_profile, matched_phase, moment_residual, potential_for_curve,
    verify_special_on_curve, BdiPhase, ProfileForm, VerifyOptions,
};
use slag_core::verification::{bdi_phase_experiment, check_cy_at_random_points, check_flow_invariance, omega_form_experiment};
use slag_core::{CMatrix, PairKind, Potential, PotentialOde, PotentialTable, ProjectivePair, SymmetricPairCase};

type Case = SymmetricPairCase<f64>;

const CASES: [PairKind; 6] = [
    PairKind::AiiiAiii { p: 2, q: 1 },
    PairKind::AiiiAiii { p: 3, q: 2 },
    PairKind::Aiii { m: 3 },
    PairKind::Bdi { m: 3 },
    PairKind::Bdi { m: 4 },
    PairKind::Diii,
];

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn strip_taus(case: &Case, count: usize, seed: u64) -> Vec<Complex<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hw = case.strip_halfwidth();
    (0..count).map(|_| Complex::new(hw * (0.02 + 0.96 * rng.random::<f64>()), 0.6 * (rng.random::<f64>() - 0.5))).collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for kind in CASES {
        let case = Case::new(kind).unwrap();
        for tau in strip_taus(&case, 100, 1) {
            worst = worst.max(moment_residual(&case, &case.sigma_curve(tau).unwrap()).unwrap());
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome { pass: worst < 1e-10 && secs < 30.0, detail: format!("max moment residual {worst:.2e} over 6 cases x 100 samples in {secs:.2}s") }
}

fn criterion_2() -> Outcome {
    let expected = [
        (PairKind::AiiiAiii { p: 2, q: 1 }, 8.0),
        (PairKind::AiiiAiii { p: 3, q: 2 }, 32.0),
        (PairKind::Aiii { m: 3 }, 32.0),
        (PairKind::Aiii { m: 4 }, 128.0),
        (PairKind::Diii, 1024.0),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (kind, modulus) in expected {
        let case = Case::new(kind).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let ratios: Vec<f64> = strip_taus(&case, 50, 2)
            .into_iter()
            .map(|tau| {
                let dtau = Complex::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
                (frame_volume(&case, tau, dtau).unwrap() / (closed_form_g(kind, tau, BdiPhase::Frame).unwrap() * dtau)).norm()
            })
            .collect();
        let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
        let spread = ratios.iter().map(|r| (r - mean).abs()).fold(0.0, f64::max) / mean;
        let off = (mean - modulus).abs() / modulus;
        pass &= spread < 1e-7 && off < 1e-9;
        parts.push(format!("{kind} |ratio| {mean:.12} (spread {spread:.1e})"));
    }
    Outcome { pass, detail: parts.join("; ") }
}

fn criterion_3() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for kind in CASES {
        let case = Case::new(kind).unwrap();
        let psi = matched_phase::<f64>(kind, BdiPhase::Frame);
        let tau0 = Complex::new(0.3 * case.strip_halfwidth(), 0.05);
        let curve = integrate_profile(&case, psi, tau0, 1e-3, 400, ProfileForm::Invariant).unwrap();
        let table = potential_for_curve(&case, &curve).unwrap();
        let mut options = VerifyOptions { seed: 3, potential: Potential::Table(&table), ..VerifyOptions::default() };
        let main = verify_special_on_curve(&case, &curve, &options).unwrap();
        options.psi = Some(psi + 0.3);
        let offset = verify_special_on_curve(&case, &curve, &options).unwrap();
        options.psi = None;
        options.perturb_w = Some(1e-2);
        let moved = verify_special_on_curve(&case, &curve, &options).unwrap();
        let ok = main.pass && main.n_samples >= 200 && !offset.pass && !moved.pass;
        pass &= ok;
        parts.push(format!(
            "{kind} ({} samples) moment {:.1e} im {:.1e} omega {:.1e}, controls fail: {}",
            main.n_samples,
            main.residual_moment,
            main.residual_imomega,
            main.residual_omega,
            !offset.pass && !moved.pass
        ));
    }
    Outcome { pass, detail: parts.join("; ") }
}

fn criterion_4() -> Outcome {
    let kinds = [PairKind::AiiiAiii { p: 2, q: 1 }, PairKind::Aiii { m: 3 }, PairKind::Bdi { m: 3 }, PairKind::Diii];
    let mut pass = true;
    let mut parts = Vec::new();
    for kind in kinds {
        let case = Case::new(kind).unwrap();
        let step = if matches!(kind, PairKind::AiiiAiii { .. }) { FRAC_PI_2 } else { FRAC_PI_4 };
        let rank = |theta: f64| {
            let z = case.slice_point(theta);
            case.orbit_tangent_rank(&ProjectivePair::new(z.clone(), z.conj()).unwrap()).unwrap()
        };
        let generic: Vec<usize> = [0.17, 0.41, 0.77].iter().map(|f| rank(step * f)).collect();
        let lattice: Vec<usize> = [0.0, step].iter().map(|&t| rank(t)).collect();
        let target = case.principal_rank();
        let ok = generic.iter().all(|&r| r == target) && lattice.iter().all(|&r| r < target);
        pass &= ok;
        parts.push(format!("{kind} generic {generic:?} lattice {lattice:?} (2n-1 = {target})"));
    }
    Outcome { pass, detail: parts.join("; ") }
}

fn criterion_5() -> Outcome {
    let mut pass = true;
    let mut worst_res = 0.0f64;
    for n in [2, 3, 5] {
        for ode in [PotentialOde::TwoN, PotentialOde::TwoNMinusOne] {
            let t = PotentialTable::<f64>::solve(n, 4.0, 1e-4, ode).unwrap();
            worst_res = worst_res.max(t.max_residual());
        }
    }
    pass &= worst_res < 1e-9;
    let kinds = [PairKind::AiiiAiii { p: 2, q: 1 }, PairKind::Aiii { m: 3 }, PairKind::Bdi { m: 3 }, PairKind::Diii];
    let mut worst_cy = 0.0f64;
    let mut worst_flow = 0.0f64;
    for kind in kinds {
        let case = Case::new(kind).unwrap();
        worst_cy = worst_cy.max(check_cy_at_random_points(&case, 20, 5).unwrap());
        worst_flow = worst_flow.max(check_flow_invariance(&case, 20, 5).unwrap());
    }
    pass &= worst_cy < 1e-4 && worst_flow < 1e-8;
    Outcome {
        pass,
        detail: format!("potential residual {worst_res:.1e}, CY defect {worst_cy:.1e}, flow invariance {worst_flow:.1e}"),
    }
}

fn criterion_6() -> Outcome {
    let kinds = [
        (PairKind::AiiiAiii { p: 2, q: 1 }, 5),
        (PairKind::AiiiAiii { p: 3, q: 2 }, 13),
        (PairKind::Aiii { m: 3 }, 12),
        (PairKind::Aiii { m: 4 }, 19),
        (PairKind::Bdi { m: 3 }, 4),
        (PairKind::Bdi { m: 5 }, 11),
        (PairKind::Diii, 25),
    ];
    let mut pass = true;
    let (mut trace, mut skew, mut linear, mut closure, mut hom, mut j0) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (kind, count) in kinds {
        let case = Case::new(kind).unwrap();
        pass &= case.basis_k().len() == count;
        let n1 = case.ambient();
        let id = CMatrix::<f64>::identity(n1);
        for x in case.basis_k() {
            let r = &x.induced;
            let tr = r.trace();
            let traceless = r - &id.scale(tr / n1 as f64);
            trace = trace.max(traceless.trace().norm());
            skew = skew.max((r + &r.adjoint()).max_abs());
            let v = slag_core::CVector::new((0..n1).map(|_| Complex::new(rng.random::<f64>(), rng.random::<f64>())).collect());
            linear = linear.max(real_linear_commutes_with_i(&case, &x.matrix, &v).unwrap());
        }
        for a in case.basis_k() {
            for b in case.basis_k() {
                let c = a.matrix.commutator(&b.matrix);
                closure = closure.max(case.k_defect(&c));
                let lhs = case.induced_for(&c).unwrap();
                hom = hom.max((&lhs - &a.induced.commutator(&b.induced)).max_abs());
            }
        }
        j0 = j0.max((&case.j0().induced - &id.scale(Complex::new(0.0, 1.0))).max_abs());
    }
    let tol = 1e-12;
    pass &= trace < tol && skew < tol && linear < tol && closure < tol && hom < tol && j0 < tol;
    Outcome {
        pass,
        detail: format!(
            "cardinalities ok: {pass}; trace-free part {trace:.1e}, skew {skew:.1e}, complex-linear {linear:.1e}, closure {closure:.1e}, homomorphism {hom:.1e}, ad(J0)-i {j0:.1e}"
        ),
    }
}

fn criterion_7() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for m in [3, 4] {
        let a = bdi_phase_experiment::<f64>(m, 7).unwrap();
        let b = bdi_phase_experiment::<f64>(m, 7).unwrap();
        let ok = a.to_json() == b.to_json() && a.supported == format!("i^{}", m - 1);
        pass &= ok;
        parts.push(format!("bdi({m}) supports {}", a.supported));
    }
    for kind in [PairKind::AiiiAiii { p: 2, q: 1 }, PairKind::Aiii { m: 3 }, PairKind::Bdi { m: 3 }, PairKind::Diii] {
        let a = omega_form_experiment::<f64>(kind, 4, 7).unwrap();
        let b = omega_form_experiment::<f64>(kind, 4, 7).unwrap();
        let ok = a.to_json() == b.to_json() && a.supported.starts_with("2n-form");
        pass &= ok;
        parts.push(format!("{kind} Omega supports {}", a.supported));
    }
    Outcome { pass, detail: parts.join("; ") }
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("moment-level membership", criterion_1),
        ("frame-determinant identities", criterion_2),
        ("special Lagrangian end-to-end", criterion_3),
        ("codimension criteria", criterion_4),
        ("Stenzel structure identities", criterion_5),
        ("structural invariants", criterion_6),
        ("convention experiments", criterion_7),
    ];
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let verdict = if out.pass { "PASS" } else { "FAIL" };
        println!("criterion {} [{verdict}] {name} ({:.2}s): {}", k + 1, start.elapsed().as_secs_f64(), out.detail);
        failures += usize::from(!out.pass);
    }
    println!("acceptance: {} of 7 criteria passed", 7 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
