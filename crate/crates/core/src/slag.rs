//! Moment-map residuals, frame functions `G(τ)`, integration of the profile
//! ODE `Im(e^{iψ} G(τ) τ′) = 0`, and verification of the special Lagrangian
//! conditions on the swept-out submanifold `L = K·σ(τ(s))`.

use std::fmt;
use std::io::{Read, Write};

use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{GeometryError, Result};
use crate::linalg::{CMatrix, CVector};
use crate::pairs::{fundamental_from_induced, GroupElement, PairKind, SymmetricPairCase};
use crate::potential::PotentialTable;
use crate::projective::{ProjectivePair, TangentRep};
use crate::scalar::{i_pow, Scalar};
use crate::stenzel::{
    central_derivative, default_fd_step, holomorphic_volume_with, kahler_two_form_induced, liouville, CalibrationPhase,
    Potential, VolumeNormalization,
};

/// `max_X |α(X*)|` over the basis of `𝔨` with `f′ ≡ 1`.
pub fn moment_residual<T: Scalar>(case: &SymmetricPairCase<T>, p: &ProjectivePair<T>) -> Result<T> {
    moment_residual_with(case, p, &Potential::Unit)
}

/// [`moment_residual`] with an arbitrary potential.
pub fn moment_residual_with<T: Scalar>(
    case: &SymmetricPairCase<T>,
    p: &ProjectivePair<T>,
    potential: &Potential<'_, T>,
) -> Result<T> {
    case.basis_k().iter().try_fold(T::zero(), |acc, x| Ok(acc.max(liouville(&x.fundamental_vector(p)?, potential)?.abs())))
}

/// Power of `i` in the BDI frame function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, serde::Deserialize)]
pub enum BdiPhase {
    /// `i^{m−1}`, the value produced by the frame determinant.
    #[default]
    Frame,
    /// `i^{m−2}`.
    Stated,
}

impl BdiPhase {
    pub fn name(self) -> &'static str {
        match self {
            Self::Frame => "frame",
            Self::Stated => "stated",
        }
    }
}

/// Which frame function drives the profile ODE.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, serde::Deserialize)]
pub enum ProfileForm {
    /// Entire functions matching the chart-normalized volume form on complex `τ`.
    #[default]
    Invariant,
    /// The `tan τ` closed forms, exact only on the real axis for the unitary and DIII cases.
    ClosedForm(BdiPhase),
}

impl ProfileForm {
    pub fn name(self) -> String {
        match self {
            Self::Invariant => "invariant".into(),
            Self::ClosedForm(BdiPhase::Frame) => "closed".into(),
            Self::ClosedForm(BdiPhase::Stated) => "closed-stated".into(),
        }
    }

    pub fn g<T: Scalar>(self, kind: PairKind, tau: Complex<T>) -> Result<Complex<T>> {
        match self {
            Self::Invariant => Ok(invariant_g(kind, tau)),
            Self::ClosedForm(phase) => closed_form_g(kind, tau, phase),
        }
    }
}

impl std::str::FromStr for ProfileForm {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "invariant" => Ok(Self::Invariant),
            "closed" => Ok(Self::ClosedForm(BdiPhase::Frame)),
            "closed-stated" => Ok(Self::ClosedForm(BdiPhase::Stated)),
            other => Err(GeometryError::InvalidParameters(format!("unknown profile form '{other}'"))),
        }
    }
}

/// Exponent `k` in the factor `i^k` of the frame function.
pub fn i_exponent(kind: PairKind, phase: BdiPhase) -> i64 {
    match kind {
        PairKind::AiiiAiii { p, q } => (p + q) as i64 - 1,
        PairKind::Aiii { m } => 2 * m as i64 - 1,
        PairKind::Bdi { m } => match phase {
            BdiPhase::Frame => m as i64 - 1,
            BdiPhase::Stated => m as i64 - 2,
        },
        PairKind::Diii => 1,
    }
}

/// Phase `ψ = −kπ/2` for which `e^{iψ} G` is real on the real axis, so real
/// initial data stays real.
pub fn matched_phase<T: Scalar>(kind: PairKind, phase: BdiPhase) -> T {
    -T::from_i64(i_exponent(kind, phase)).unwrap_or_else(T::zero) * T::FRAC_PI_2()
}

/// Closed-form frame function with `tan τ`.
pub fn closed_form_g<T: Scalar>(kind: PairKind, tau: Complex<T>, phase: BdiPhase) -> Result<Complex<T>> {
    let cos = tau.cos();
    if !matches!(kind, PairKind::Bdi { .. }) && cos.norm() < T::lit(1e-6) {
        return Err(GeometryError::PoleProximity { cos_abs: cos.norm().as_f64() });
    }
    let one = Complex::new(T::one(), T::zero());
    let ip = i_pow::<T>(i_exponent(kind, phase));
    let g = match kind {
        PairKind::AiiiAiii { q, .. } => {
            let t = tau.tan();
            (one + t * t) * t.powi(2 * q as i32 - 1)
        }
        PairKind::Aiii { m } => {
            let t = tau.tan();
            let c2 = (tau * T::lit(2.0)).cos();
            t.powi(2 * m as i32 - 3) * (one + t * t).powi(3) * c2 * c2
        }
        PairKind::Bdi { m } => (tau * T::lit(2.0)).sin().powi(m as i32 - 3) * (tau * T::lit(4.0)).sin(),
        PairKind::Diii => {
            let t = tau.tan();
            let t2 = t * t;
            (one - t2).powi(4) * (one + t2) * t.powi(5)
        }
    };
    Ok(ip * g)
}

/// Frame function matched to the chart-normalized volume form; entire in `τ`.
pub fn invariant_g<T: Scalar>(kind: PairKind, tau: Complex<T>) -> Complex<T> {
    let (c, s) = (tau.cos(), tau.sin());
    let ip = i_pow::<T>(i_exponent(kind, BdiPhase::Frame));
    let g = match kind {
        PairKind::AiiiAiii { p, q } => c.powi(2 * p as i32 - 1) * s.powi(2 * q as i32 - 1),
        PairKind::Aiii { m } => {
            let c2 = (tau * T::lit(2.0)).cos();
            (s * c).powi(2 * m as i32 - 3) * c2 * c2
        }
        PairKind::Bdi { m } => (tau * T::lit(2.0)).sin().powi(m as i32 - 3) * (tau * T::lit(4.0)).sin(),
        PairKind::Diii => (tau * T::lit(2.0)).cos().powi(4) * (c * s).powi(5),
    };
    ip * g
}

/// Constant `C` in `frame_volume = C · G · dτ` for the given normalization and frame function:
/// representative normalization with the closed forms, or chart normalization with the invariant forms.
pub fn frame_constant<T: Scalar>(kind: PairKind) -> T {
    match kind {
        PairKind::AiiiAiii { p, q } => {
            let sign = if (p * q - 1) % 2 == 0 { T::one() } else { -T::one() };
            sign * T::lit(2.0).powi((p + q) as i32)
        }
        PairKind::Aiii { m } => T::lit(2.0).powi(2 * m as i32 - 1),
        PairKind::Bdi { .. } => T::one(),
        PairKind::Diii => T::lit(1024.0),
    }
}

/// The `2n`-frame at `σ(τ)`: `σ′(τ)·dτ` followed by the listed fundamental vectors.
pub fn frame_at<T: Scalar>(case: &SymmetricPairCase<T>, tau: Complex<T>, dtau: Complex<T>) -> Result<Vec<TangentRep<T>>> {
    let first = case.sigma_tangent(tau, dtau)?;
    let base = first.base.clone();
    let mut frame = vec![first];
    for x in case.frame_elements() {
        frame.push(x.fundamental_vector(&base)?);
    }
    Ok(frame)
}

/// `Ω` evaluated on [`frame_at`] in chart 0 with representative normalization.
pub fn frame_volume<T: Scalar>(case: &SymmetricPairCase<T>, tau: Complex<T>, dtau: Complex<T>) -> Result<Complex<T>> {
    frame_volume_with(case, tau, dtau, VolumeNormalization::Representative)
}

/// [`frame_volume`] with a choice of normalization.
pub fn frame_volume_with<T: Scalar>(
    case: &SymmetricPairCase<T>,
    tau: Complex<T>,
    dtau: Complex<T>,
    normalization: VolumeNormalization,
) -> Result<Complex<T>> {
    case.check_strip(tau)?;
    holomorphic_volume_with(&frame_at(case, tau, dtau)?, 0, normalization)
}

/// Why profile integration stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum HaltReason {
    Boundary,
    Pole,
    ZeroOfG,
    MaxSteps,
}

impl fmt::Display for HaltReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Boundary => "boundary",
            Self::Pole => "pole",
            Self::ZeroOfG => "zero-of-G",
            Self::MaxSteps => "max-steps",
        })
    }
}

/// Distance kept from `Re τ = 0` and from the strip edge.
pub const BOUNDARY_GUARD: f64 = 1e-3;
/// Smallest `|cos τ|` allowed near a `tan` pole.
pub const POLE_GUARD: f64 = 1e-6;
/// Smallest `|G|` treated as off the zero locus.
pub const ZERO_GUARD: f64 = 1e-10;

/// The profile vector field `τ′ = conj(e^{iψ} G(τ)) / max(1, |G(τ)|)`.
///
/// `e^{iψ} G τ′ = |G|²/max(1,|G|)` is real and nonnegative, so every
/// integral curve solves the profile ODE; the speed cap keeps steps bounded.
#[derive(Debug, Clone, Copy)]
pub struct ProfileField {
    pub kind: PairKind,
    pub form: ProfileForm,
}

impl ProfileField {
    pub fn velocity<T: Scalar>(&self, psi: CalibrationPhase<T>, tau: Complex<T>) -> Result<Complex<T>> {
        let g = self.form.g(self.kind, tau)?;
        let v = (psi.unit() * g).conj();
        Ok(v / g.norm().max(T::one()))
    }

    /// One classical RK4 step of length `h` (negative `h` runs backwards).
    pub fn step<T: Scalar>(&self, psi: CalibrationPhase<T>, tau: Complex<T>, h: T) -> Result<Complex<T>> {
        let half = h * T::lit(0.5);
        let k1 = self.velocity(psi, tau)?;
        let k2 = self.velocity(psi, tau + k1 * half)?;
        let k3 = self.velocity(psi, tau + k2 * half)?;
        let k4 = self.velocity(psi, tau + k3 * h)?;
        Ok(tau + (k1 + (k2 + k3) * T::lit(2.0) + k4) * (h / T::lit(6.0)))
    }
}

/// Sampled profile curve `τ(s)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileCurve<T: Scalar> {
    pub kind: PairKind,
    pub psi: CalibrationPhase<T>,
    pub form: ProfileForm,
    pub step: T,
    pub samples: Vec<(T, Complex<T>)>,
    pub halt: HaltReason,
}

impl<T: Scalar> ProfileCurve<T> {
    pub fn field(&self) -> ProfileField {
        ProfileField { kind: self.kind, form: self.form }
    }

    /// Write `s,re_tau,im_tau` rows.
    pub fn write_csv<W: Write>(&self, out: W) -> std::result::Result<(), csv::Error> {
        let mut wr = csv::Writer::from_writer(out);
        wr.write_record(["s", "re_tau", "im_tau"])?;
        for (s, tau) in &self.samples {
            wr.write_record([s.as_f64().to_string(), tau.re.as_f64().to_string(), tau.im.as_f64().to_string()])?;
        }
        wr.flush()?;
        Ok(())
    }

    /// Read samples written by [`ProfileCurve::write_csv`]; metadata is supplied by the caller.
    pub fn read_csv<R: Read>(
        input: R,
        kind: PairKind,
        psi: T,
        form: ProfileForm,
        step: T,
    ) -> std::result::Result<Self, csv::Error> {
        let mut rd = csv::Reader::from_reader(input);
        let mut samples = Vec::new();
        for rec in rd.deserialize::<(f64, f64, f64)>() {
            let (s, a, b) = rec?;
            samples.push((T::lit(s), Complex::new(T::lit(a), T::lit(b))));
        }
        Ok(Self { kind, psi: CalibrationPhase::new(psi), form, step, samples, halt: HaltReason::MaxSteps })
    }
}

fn guard_violation<T: Scalar>(case: &SymmetricPairCase<T>, tau: Complex<T>, g: Complex<T>) -> Option<HaltReason> {
    let guard = T::lit(BOUNDARY_GUARD);
    let r = tau.re.abs();
    if !(r > guard && r < case.strip_halfwidth() - guard) || !tau.im.is_finite() {
        return Some(HaltReason::Boundary);
    }
    if tau.cos().norm() < T::lit(POLE_GUARD) {
        return Some(HaltReason::Pole);
    }
    if !(g.norm() >= T::lit(ZERO_GUARD)) {
        return Some(HaltReason::ZeroOfG);
    }
    None
}

/// Integrate the profile field by fixed-step RK4 from `τ₀`.
///
/// Stops before the first sample that would come within the boundary, pole
/// or zero guards, or after `max_steps` steps.
pub fn integrate_profile<T: Scalar>(
    case: &SymmetricPairCase<T>,
    psi: T,
    tau0: Complex<T>,
    step: T,
    max_steps: usize,
    form: ProfileForm,
) -> Result<ProfileCurve<T>> {
    case.check_strip(tau0)?;
    if !(step > T::zero()) {
        return Err(GeometryError::InvalidParameters("profile step must be positive".into()));
    }
    let field = ProfileField { kind: case.kind(), form };
    let psi = CalibrationPhase::new(psi);
    let g0 = match form.g(case.kind(), tau0) {
        Ok(g) => g,
        Err(GeometryError::PoleProximity { cos_abs }) => return Err(GeometryError::PoleProximity { cos_abs }),
        Err(e) => return Err(e),
    };
    if !(g0.norm() >= T::lit(ZERO_GUARD)) {
        return Err(GeometryError::StagnationAtZeroOfG { g_abs: g0.norm().as_f64() });
    }
    let mut samples = vec![(T::zero(), tau0)];
    let mut tau = tau0;
    let mut halt = HaltReason::MaxSteps;
    for k in 1..=max_steps {
        let next = match field.step(psi, tau, step) {
            Ok(t) => t,
            Err(GeometryError::PoleProximity { .. }) => {
                halt = HaltReason::Pole;
                break;
            }
            Err(e) => return Err(e),
        };
        let g = match form.g(case.kind(), next) {
            Ok(g) => g,
            Err(_) => {
                halt = HaltReason::Pole;
                break;
            }
        };
        if let Some(reason) = guard_violation(case, next, g) {
            halt = reason;
            break;
        }
        tau = next;
        samples.push((step * T::from_usize_lossy(k), tau));
    }
    Ok(ProfileCurve { kind: case.kind(), psi, form, step, samples, halt })
}

/// Point of `L` labelled by the curve parameter and a group element, `g·σ(τ)`.
#[derive(Debug, Clone)]
struct LabeledPoint<T: Scalar> {
    tau: Complex<T>,
    g: GroupElement<T>,
}

/// Tolerances for [`verify_special_on_curve`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpecialTolerances {
    pub moment: f64,
    pub im_omega: f64,
    pub omega: f64,
}

impl Default for SpecialTolerances {
    fn default() -> Self {
        Self { moment: 1e-9, im_omega: 1e-8, omega: 1e-5 }
    }
}

/// Options for [`verify_special_on_curve`].
#[derive(Debug, Clone)]
pub struct VerifyOptions<'a, T: Scalar> {
    /// Number of curve samples, spread evenly along the curve.
    pub curve_points: usize,
    /// Random group elements per curve sample.
    pub orbit_samples: usize,
    pub seed: u64,
    pub tolerances: SpecialTolerances,
    /// Phase used in the calibration check; defaults to the curve's phase.
    pub psi: Option<T>,
    /// Potential used for `α` and `ω`.
    pub potential: Potential<'a, T>,
    /// Normalization of `Ω` in the calibration check.
    pub normalization: VolumeNormalization,
    /// Displace `w` by this amount in a random direction (negative control).
    pub perturb_w: Option<T>,
}

impl<T: Scalar> Default for VerifyOptions<'_, T> {
    fn default() -> Self {
        Self {
            curve_points: 20,
            orbit_samples: 10,
            seed: 0,
            tolerances: SpecialTolerances::default(),
            psi: None,
            potential: Potential::Unit,
            normalization: VolumeNormalization::Chart,
            perturb_w: None,
        }
    }
}

/// Maximum residuals of the three special Lagrangian checks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub case: String,
    pub params: serde_json::Value,
    pub psi: f64,
    pub n_samples: usize,
    pub residual_moment: f64,
    pub residual_imomega: f64,
    pub residual_omega: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, Default)]
struct Residuals {
    moment: f64,
    imomega: f64,
    omega: f64,
}

impl Residuals {
    fn merge(self, o: Self) -> Self {
        Self { moment: self.moment.max(o.moment), imomega: self.imomega.max(o.imomega), omega: self.omega.max(o.omega) }
    }
}

/// Evenly spaced indices into a sequence of length `len`.
pub fn spread_indices(len: usize, count: usize) -> Vec<usize> {
    if len == 0 || count == 0 {
        return Vec::new();
    }
    if count >= len {
        return (0..len).collect();
    }
    if count == 1 {
        return vec![len / 2];
    }
    (0..count).map(|k| k * (len - 1) / (count - 1)).collect()
}

/// Check `μ = 0`, `Im(e^{iψ}Ω)|_L = 0` and `ω|_L = 0` at points `k·σ(τ(s))`
/// for sampled `s` and random `k ∈ K`, returning the largest residuals.
///
/// Samples are processed in parallel; each draws its group elements from a
/// ChaCha8 stream keyed by `(seed, sample index)`, so the report does not
/// depend on scheduling.
pub fn verify_special_on_curve<T: Scalar>(
    case: &SymmetricPairCase<T>,
    curve: &ProfileCurve<T>,
    options: &VerifyOptions<'_, T>,
) -> Result<VerificationReport> {
    if curve.samples.is_empty() {
        return Err(GeometryError::InvalidParameters("curve has no samples".into()));
    }
    let psi = options.psi.map(CalibrationPhase::new).unwrap_or(curve.psi);
    let idx = spread_indices(curve.samples.len(), options.curve_points);
    let per = options.orbit_samples.max(1);
    let jobs: Vec<(usize, usize)> =
        idx.iter().enumerate().flat_map(|(a, &i)| (0..per).map(move |b| (a * per + b, i))).collect();
    let results: Vec<Result<Residuals>> = jobs
        .par_iter()
        .map(|&(stream, i)| {
            let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
            rng.set_stream(stream as u64);
            let g = case.random_group_element(&mut rng);
            let perturb = options.perturb_w.map(|eps| {
                let dir = random_direction::<T>(case.ambient(), &mut rng);
                (eps, dir)
            });
            check_point(case, curve, psi, options, curve.samples[i].1, g, perturb)
        })
        .collect();
    let mut total = Residuals::default();
    for r in results {
        total = total.merge(r?);
    }
    let tol = options.tolerances;
    let pass = total.moment < tol.moment && total.imomega < tol.im_omega && total.omega < tol.omega;
    Ok(VerificationReport {
        case: case.kind().name().to_string(),
        params: case.kind().params_json(),
        psi: psi.value().as_f64(),
        n_samples: jobs.len(),
        residual_moment: total.moment,
        residual_imomega: total.imomega,
        residual_omega: total.omega,
        pass,
    })
}

fn random_direction<T: Scalar>(len: usize, rng: &mut ChaCha8Rng) -> CVector<T> {
    use rand_distr::{Distribution, StandardNormal};
    let v: Vec<Complex<T>> = (0..len)
        .map(|_| {
            let a: f64 = StandardNormal.sample(rng);
            let b: f64 = StandardNormal.sample(rng);
            Complex::new(T::lit(a), T::lit(b))
        })
        .collect();
    let v = CVector::new(v);
    let n = v.norm();
    v.scale_real(T::one() / n)
}

fn check_point<T: Scalar>(
    case: &SymmetricPairCase<T>,
    curve: &ProfileCurve<T>,
    psi: CalibrationPhase<T>,
    options: &VerifyOptions<'_, T>,
    tau: Complex<T>,
    g: GroupElement<T>,
    perturb: Option<(T, CVector<T>)>,
) -> Result<Residuals> {
    let field = curve.field();
    let pot = &options.potential;
    let dtau = field.velocity(curve.psi, tau)?;
    let frame0 = frame_at(case, tau, dtau)?;
    let mut frame = frame0.iter().map(|v| g.act_tangent(v)).collect::<Result<Vec<_>>>()?;
    if let Some((eps, dir)) = &perturb {
        let base = &frame[0].base;
        let moved = ProjectivePair::new(base.z().clone(), base.w().axpy(Complex::new(*eps * base.w().norm(), T::zero()), dir))?;
        for v in &mut frame {
            v.base = moved.clone();
        }
    }
    let p = frame[0].base.clone();

    let moment = moment_residual_with(case, &p, pot)?;

    let omega_vol = holomorphic_volume_with(&frame, p.best_chart(), options.normalization)?;
    let imomega = if omega_vol.norm() > T::zero() {
        (psi.unit() * omega_vol).im.abs() / omega_vol.norm()
    } else {
        T::one()
    };

    // Induced operators of the transported frame elements, Ad(k)X.
    let rho_inv = g.rho.adjoint();
    let transported: Vec<CMatrix<T>> =
        case.frame_elements().iter().map(|x| g.rho.matmul(&x.induced).matmul(&rho_inv)).collect();
    let h = default_fd_step::<T>();
    let mut omega = T::zero();
    for a in 0..transported.len() {
        for b in a + 1..transported.len() {
            let v = kahler_two_form_induced(&transported[a], &transported[b], &p, pot, h)?;
            omega = omega.max(v.abs());
        }
    }
    if perturb.is_none() {
        let label = LabeledPoint { tau, g: g.clone() };
        for r in &transported {
            omega = omega.max(omega_profile_fundamental(case, &field, curve.psi, &label, r, pot, h)?.abs());
        }
    }
    Ok(Residuals { moment: moment.as_f64(), imomega: imomega.as_f64(), omega: omega.as_f64() })
}

fn profile_vector_at<T: Scalar>(
    case: &SymmetricPairCase<T>,
    field: &ProfileField,
    psi: CalibrationPhase<T>,
    at: &LabeledPoint<T>,
) -> Result<TangentRep<T>> {
    let dtau = field.velocity(psi, at.tau)?;
    at.g.act_tangent(&case.sigma_tangent(at.tau, dtau)?)
}

/// `ω(V, X*) = −(V α(X*) − X* α(V))` for the profile field `V`, which commutes with `X*`.
fn omega_profile_fundamental<T: Scalar>(
    case: &SymmetricPairCase<T>,
    field: &ProfileField,
    psi: CalibrationPhase<T>,
    at: &LabeledPoint<T>,
    r: &CMatrix<T>,
    pot: &Potential<'_, T>,
    h: T,
) -> Result<T> {
    let v_ax = central_derivative(h, |t| {
        let tau = field.step(psi, at.tau, t)?;
        let p = at.g.act(&case.sigma_point(tau)?)?;
        liouville(&fundamental_from_induced(r, &p)?, pot)
    })?;
    let x_av = central_derivative(h, |t| {
        let e = r.scale_real(t).exp();
        let moved = LabeledPoint { tau: at.tau, g: GroupElement { ambient: at.g.ambient.clone(), rho: e.matmul(&at.g.rho) } };
        liouville(&profile_vector_at(case, field, psi, &moved)?, pot)
    })?;
    Ok(-(v_ax - x_av))
}

/// Largest `N` reached on `K·σ(τ)` along the curve (the action preserves `N`).
pub fn max_n_on_curve<T: Scalar>(case: &SymmetricPairCase<T>, curve: &ProfileCurve<T>) -> Result<T> {
    curve.samples.iter().try_fold(T::one(), |acc, &(_, tau)| Ok(acc.max(case.sigma_point(tau)?.eval_n())))
}

/// Convenience: a corrected potential table covering the curve with margin.
pub fn potential_for_curve<T: Scalar>(case: &SymmetricPairCase<T>, curve: &ProfileCurve<T>) -> Result<PotentialTable<T>> {
    let n_max = (max_n_on_curve(case, curve)? * T::lit(1.5)).max(T::lit(2.0)) + T::one();
    PotentialTable::solve(case.n(), n_max, T::lit(1e-4), crate::potential::PotentialOde::TwoNMinusOne)
}
