//! The Calabi–Yau data on `M`: the Liouville form `α = Im ∂̄f(N)`, the Kähler
//! form `ω = −dα` evaluated on vector fields, and the holomorphic volume form.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{GeometryError, Result};
use crate::linalg::{CMatrix, CVector};
use crate::pairs::{fundamental_from_induced, LieAlgebraElement};
use crate::potential::PotentialTable;
use crate::projective::{from_inhomogeneous, ProjectivePair, TangentRep};
use crate::scalar::{reduce_angle, Scalar};

/// Source of `f′(N)`.
#[derive(Debug, Clone, Copy)]
pub enum Potential<'a, T: Scalar> {
    /// `f′ ≡ 1`. Zero sets of `α` do not depend on the positive factor `f′`.
    Unit,
    Table(&'a PotentialTable<T>),
}

impl<T: Scalar> Potential<'_, T> {
    pub fn fprime(&self, big_n: T) -> Result<T> {
        match self {
            Self::Unit => Ok(T::one()),
            Self::Table(t) => t.h_at(big_n),
        }
    }
}

/// A calibration phase `ψ`, stored reduced to `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct CalibrationPhase<T: Scalar>(T);

impl<T: Scalar> CalibrationPhase<T> {
    pub fn new(psi: T) -> Self {
        Self(reduce_angle(psi))
    }

    pub fn value(self) -> T {
        self.0
    }

    /// `e^{iψ}`.
    pub fn unit(self) -> Complex<T> {
        Complex::from_polar(T::one(), self.0)
    }
}

/// `∂̄N` paired with a homogeneous velocity: `Σ (∂N/∂z̄_j) conj(dz_j) + (∂N/∂w̄_j) conj(dw_j)`.
fn dbar_n<T: Scalar>(p: &ProjectivePair<T>, dz: &CVector<T>, dw: &CVector<T>) -> Complex<T> {
    let (z, w) = (p.z(), p.w());
    let (zz, ww) = (z.norm_sqr(), w.norm_sqr());
    let b = p.eval_b();
    let b2 = b.norm_sqr();
    let a = zz * ww;
    let k = Complex::new(a / b2, T::zero()) / b.conj();
    let mut acc = Complex::zero();
    for j in 0..z.len() {
        let cz = z[j] * (ww / b2) - k * w[j].conj();
        let cw = w[j] * (zz / b2) - k * z[j].conj();
        acc = acc + cz * dz[j].conj() + cw * dw[j].conj();
    }
    acc
}

/// `α(v) = f′(N) · Im ∂̄N(v)`.
pub fn liouville<T: Scalar>(v: &TangentRep<T>, potential: &Potential<'_, T>) -> Result<T> {
    liouville_at(&v.base, &v.dz, &v.dw, potential)
}

/// [`liouville`] with the base point and velocity given separately.
pub fn liouville_at<T: Scalar>(
    p: &ProjectivePair<T>,
    dz: &CVector<T>,
    dw: &CVector<T>,
    potential: &Potential<'_, T>,
) -> Result<T> {
    let fp = potential.fprime(p.eval_n())?;
    Ok(fp * dbar_n(p, dz, dw).im)
}

/// Central difference of `g` at zero with one Richardson extrapolation,
/// `(4·D(h/2) − D(h)) / 3`.
pub fn central_derivative<T: Scalar>(h: T, mut g: impl FnMut(T) -> Result<T>) -> Result<T> {
    let d = |g: &mut dyn FnMut(T) -> Result<T>, s: T| -> Result<T> { Ok((g(s)? - g(-s)?) / (s + s)) };
    let coarse = d(&mut g, h)?;
    let fine = d(&mut g, h * T::lit(0.5))?;
    Ok((T::lit(4.0) * fine - coarse) / T::lit(3.0))
}

/// Default first-difference step.
pub fn default_fd_step<T: Scalar>() -> T {
    // The optimum for a Richardson-extrapolated central difference is near ε^{1/5}.
    T::epsilon().powf(T::lit(0.2)).max(T::lit(1e-5))
}

/// The flow of `X*` applied for time `t`.
pub fn flow_fundamental<T: Scalar>(induced: &CMatrix<T>, p: &ProjectivePair<T>, t: T) -> Result<ProjectivePair<T>> {
    let g = induced.scale_real(t).exp();
    ProjectivePair::new(g.mul_vec(p.z()), g.conj().mul_vec(p.w()))
}

/// `ω(X*, Y*) = −(X*α(Y*) − Y*α(X*) − α([X*,Y*]))` at `p`, with
/// `[X*, Y*] = −[X, Y]*` computed exactly and the directional derivatives by
/// central differences along the flows.
pub fn kahler_two_form<T: Scalar>(
    x: &LieAlgebraElement<T>,
    y: &LieAlgebraElement<T>,
    p: &ProjectivePair<T>,
    potential: &Potential<'_, T>,
) -> Result<T> {
    kahler_two_form_induced(&x.induced, &y.induced, p, potential, default_fd_step())
}

/// [`kahler_two_form`] on induced operators with explicit step.
pub fn kahler_two_form_induced<T: Scalar>(
    rx: &CMatrix<T>,
    ry: &CMatrix<T>,
    p: &ProjectivePair<T>,
    potential: &Potential<'_, T>,
    h: T,
) -> Result<T> {
    let alpha_of = |r: &CMatrix<T>, q: &ProjectivePair<T>| liouville(&fundamental_from_induced(r, q)?, potential);
    let x_ay = central_derivative(h, |t| alpha_of(ry, &flow_fundamental(rx, p, t)?))?;
    let y_ax = central_derivative(h, |t| alpha_of(rx, &flow_fundamental(ry, p, t)?))?;
    let bracket = rx.commutator(ry);
    let a_br = -alpha_of(&bracket, p)?;
    Ok(-(x_ay - y_ax - a_br))
}

/// `dα(U, W)` for constant homogeneous velocity fields `U`, `W`:
/// `U(α(W)) − W(α(U))` by central differences along straight lines.
///
/// The pullback of `α` to `C^{n+1}×C^{n+1}` is evaluated directly, so this is
/// independent of any bracket identity.
pub fn d_alpha_constant_fields<T: Scalar>(
    u: &TangentRep<T>,
    w: &TangentRep<T>,
    potential: &Potential<'_, T>,
    h: T,
) -> Result<T> {
    let p = &u.base;
    let shift = |v: &TangentRep<T>, t: T| {
        let s = Complex::new(t, T::zero());
        ProjectivePair::new(p.z().axpy(s, &v.dz), p.w().axpy(s, &v.dw))
    };
    let u_aw = central_derivative(h, |t| liouville_at(&shift(u, t)?, &w.dz, &w.dw, potential))?;
    let w_au = central_derivative(h, |t| liouville_at(&shift(w, t)?, &u.dz, &u.dw, potential))?;
    Ok(u_aw - w_au)
}

/// `ω(U, W) = −dα(U, W)` through [`d_alpha_constant_fields`].
pub fn kahler_two_form_oracle<T: Scalar>(u: &TangentRep<T>, w: &TangentRep<T>, potential: &Potential<'_, T>) -> Result<T> {
    Ok(-d_alpha_constant_fields(u, w, potential, default_fd_step())?)
}

/// How `B` enters the holomorphic volume form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, serde::Serialize, serde::Deserialize)]
pub enum VolumeNormalization {
    /// `B` of the homogeneous representatives as given.
    #[default]
    Representative,
    /// `B̃ = 1 + Σ z̃_j w̃_j` of the affine chart, which makes `Ω` a well-defined form on `M`.
    Chart,
}

/// Chart matrix whose columns are the `(dz̃, dw̃)` pushes of the frame.
pub fn frame_chart_matrix<T: Scalar>(frame: &[TangentRep<T>], chart: usize) -> Result<CMatrix<T>> {
    let cols = frame.iter().map(|v| v.chart_column(chart)).collect::<Result<Vec<_>>>()?;
    Ok(CMatrix::from_columns(&cols))
}

/// `B^{−(n+1)} det(dz̃, dw̃)` on a `2n`-frame at a common base point, with `B`
/// taken from the homogeneous representatives of the base.
pub fn holomorphic_volume<T: Scalar>(frame: &[TangentRep<T>], chart: usize) -> Result<Complex<T>> {
    holomorphic_volume_with(frame, chart, VolumeNormalization::Representative)
}

/// [`holomorphic_volume`] with a choice of normalization.
pub fn holomorphic_volume_with<T: Scalar>(
    frame: &[TangentRep<T>],
    chart: usize,
    normalization: VolumeNormalization,
) -> Result<Complex<T>> {
    let base = &frame.first().ok_or(GeometryError::FrameSizeMismatch { expected: 2, found: 0 })?.base;
    let n = base.dim();
    if frame.len() != 2 * n {
        return Err(GeometryError::FrameSizeMismatch { expected: 2 * n, found: frame.len() });
    }
    if frame.iter().any(|v| v.base.projective_distance(base) > T::membership_eps()) {
        return Err(GeometryError::InvalidParameters("frame vectors must share one base point".into()));
    }
    let det = frame_chart_matrix(frame, chart)?.det();
    let b = match normalization {
        VolumeNormalization::Representative => base.eval_b(),
        VolumeNormalization::Chart => base.eval_b() / (base.z()[chart] * base.w()[chart]),
    };
    Ok(det / b.powi(n as i32 + 1))
}

/// `N` in affine coordinates `u = (z̃, w̃)`.
fn n_affine<T: Scalar>(u: &[Complex<T>], n: usize) -> (T, Complex<T>) {
    let (zt, wt) = u.split_at(n);
    let zz: T = zt.iter().map(|c| c.norm_sqr()).sum();
    let ww: T = wt.iter().map(|c| c.norm_sqr()).sum();
    let b = Complex::<T>::one() + zt.iter().zip(wt).map(|(&a, &b)| a * b).sum::<Complex<T>>();
    ((T::one() + zz) * (T::one() + ww) / b.norm_sqr(), b)
}

/// Complex Hessian `∂_a ∂̄_b F` of a real function on `C^d` by second central differences.
pub fn complex_hessian<T: Scalar>(u: &[Complex<T>], h: T, f: &dyn Fn(&[Complex<T>]) -> Result<T>) -> Result<CMatrix<T>> {
    let d = u.len();
    let dir = |a: usize, imag: bool| {
        let mut e = vec![Complex::zero(); d];
        e[a] = if imag { Complex::new(T::zero(), h) } else { Complex::new(h, T::zero()) };
        e
    };
    let eval = |ea: &[Complex<T>], sa: T, eb: &[Complex<T>], sb: T| {
        let pt: Vec<Complex<T>> = (0..d).map(|k| u[k] + ea[k] * sa + eb[k] * sb).collect();
        f(&pt)
    };
    let one = T::one();
    let second = |ea: &[Complex<T>], eb: &[Complex<T>]| -> Result<T> {
        Ok((eval(ea, one, eb, one)? - eval(ea, one, eb, -one)? - eval(ea, -one, eb, one)? + eval(ea, -one, eb, -one)?)
            / (T::lit(4.0) * h * h))
    };
    let mut hess = CMatrix::zeros(d, d);
    for a in 0..d {
        for b in a..d {
            let (xa, ya, xb, yb) = (dir(a, false), dir(a, true), dir(b, false), dir(b, true));
            let dxx = second(&xa, &xb)?;
            let dyy = second(&ya, &yb)?;
            let dxy = second(&xa, &yb)?;
            let dyx = second(&ya, &xb)?;
            let q = T::lit(0.25);
            let entry = Complex::new(q * (dxx + dyy), q * (dxy - dyx));
            hess[(a, b)] = entry;
            hess[(b, a)] = entry.conj();
        }
    }
    Ok(hess)
}

/// Relative defect of `det ∂∂̄f(N) = |B̃|^{−2(n+1)}` at `p`, in the affine chart
/// selected by `p`, with `f` reconstructed from the table.
pub fn check_cy_condition<T: Scalar>(p: &ProjectivePair<T>, table: &PotentialTable<T>) -> Result<T> {
    check_cy_condition_in_chart(p, table, p.best_chart())
}

/// [`check_cy_condition`] in a given chart.
pub fn check_cy_condition_in_chart<T: Scalar>(p: &ProjectivePair<T>, table: &PotentialTable<T>, chart: usize) -> Result<T> {
    let (det, target) = cy_determinants(p, table, chart, false)?;
    Ok((det - target).abs() / target)
}

/// `(det H, |B̃|^{−2(n+1)})` where `H` is the full `2n × 2n` complex Hessian of
/// `f∘N`, or only its `n × n` block in the `z̃` variables when `z_block_only`.
pub fn cy_determinants<T: Scalar>(
    p: &ProjectivePair<T>,
    table: &PotentialTable<T>,
    chart: usize,
    z_block_only: bool,
) -> Result<(T, T)> {
    let n = p.dim();
    let (zt, wt) = p.to_inhomogeneous(chart)?;
    let mut u = zt.into_inner();
    u.extend(wt.into_inner());
    let (n0, b0) = n_affine(&u, n);
    if n0 > table.n_max() {
        return Err(GeometryError::OutOfTable { value: n0.as_f64(), max: table.n_max().as_f64() });
    }
    let f = |v: &[Complex<T>]| table.f_at(n_affine(v, n).0.max(T::one()));
    let h = T::lit(1e-4);
    let hess = complex_hessian(&u, h, &f)?;
    let hess = if z_block_only { hess.block(0, 0, n, n) } else { hess };
    let target = b0.norm_sqr().powi(-(n as i32 + 1));
    Ok((hess.det().re, target))
}

/// Defect of flow invariance `α_{φ_t(p)}(dφ_t v) − α_p(v)` for the flow of `X*`.
pub fn flow_invariance_defect<T: Scalar>(
    induced: &CMatrix<T>,
    v: &TangentRep<T>,
    t: T,
    potential: &Potential<'_, T>,
) -> Result<T> {
    let g = induced.scale_real(t).exp();
    let gc = g.conj();
    let moved = TangentRep::new(
        ProjectivePair::new(g.mul_vec(v.base.z()), gc.mul_vec(v.base.w()))?,
        g.mul_vec(&v.dz),
        gc.mul_vec(&v.dw),
    )?;
    Ok((liouville(&moved, potential)? - liouville(v, potential)?).abs())
}

/// Lift of an affine chart point, used when sampling points of `M` near a chart origin.
pub fn point_from_chart<T: Scalar>(zt: &CVector<T>, wt: &CVector<T>, chart: usize) -> Result<ProjectivePair<T>> {
    from_inhomogeneous(zt, wt, chart)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::PotentialOde;
    use crate::projective::phi_hat;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn sample_point() -> ProjectivePair<f64> {
        ProjectivePair::new(
            CVector::new(vec![c(1.0, 0.2), c(-0.3, 0.5), c(0.4, -0.1)]),
            CVector::new(vec![c(0.9, -0.4), c(0.2, 0.1), c(-0.5, 0.3)]),
        )
        .unwrap()
    }

    #[test]
    fn gauge_directions_are_annihilated() {
        let p = sample_point();
        for (l, m) in [(c(0.0, 1.0), c(0.0, 0.0)), (c(0.0, 0.0), c(1.3, -0.7)), (c(2.0, 1.0), c(-1.0, 0.5))] {
            let v = TangentRep::gauge(&p, l, m);
            assert!(liouville(&v, &Potential::Unit).unwrap().abs() < 1e-14);
        }
    }

    #[test]
    fn zero_section_rotation_is_null() {
        let z = CVector::new(vec![c(0.6, 0.0), c(0.0, 0.8), c(0.0, 0.0)]);
        let p = ProjectivePair::zero_section(z.clone()).unwrap();
        let v = TangentRep::new(p, z.scale(c(0.0, 1.0)), z.conj().scale(c(0.0, -1.0))).unwrap();
        assert!(liouville(&v, &Potential::Unit).unwrap().abs() < 1e-15);
    }

    #[test]
    fn liouville_is_real_linear() {
        let p = sample_point();
        let v1 = TangentRep::new(p.clone(), CVector::basis(3, 1), CVector::basis(3, 2).scale(c(0.0, 1.0))).unwrap();
        let v2 = TangentRep::new(p, CVector::basis(3, 2).scale(c(1.0, 1.0)), CVector::basis(3, 0)).unwrap();
        let (a, b) = (0.7, -2.1);
        let lhs = liouville(&v1.combine(a, &v2, b), &Potential::Unit).unwrap();
        let rhs = a * liouville(&v1, &Potential::Unit).unwrap() + b * liouville(&v2, &Potential::Unit).unwrap();
        assert!((lhs - rhs).abs() < 1e-14);
    }

    #[test]
    fn volume_vanishes_on_gauge_and_repeats() {
        let p = sample_point();
        let mk = |k: usize| TangentRep::new(p.clone(), CVector::basis(3, k), CVector::basis(3, (k + 1) % 3)).unwrap();
        let frame = vec![mk(1), mk(2), TangentRep::gauge(&p, c(1.0, 0.0), c(0.0, 0.0)), mk(0)];
        assert_eq!(holomorphic_volume(&frame, 0).unwrap().norm(), 0.0);
        let frame = vec![mk(1), mk(2), mk(1), mk(0)];
        assert!(holomorphic_volume(&frame, 0).unwrap().norm() < 1e-14);
        assert!(matches!(holomorphic_volume(&frame[..3], 0), Err(GeometryError::FrameSizeMismatch { .. })));
    }

    #[test]
    fn cy_identity_holds_for_corrected_potential_and_fails_for_perturbed() {
        let t = PotentialTable::<f64>::solve(2, 8.0, 1e-4, PotentialOde::TwoNMinusOne).unwrap();
        let z = CVector::new(vec![c(0.8, 0.0), c(0.0, 0.6), c(0.0, 0.0)]);
        let p0 = ProjectivePair::zero_section(z.clone()).unwrap();
        assert!(check_cy_condition(&p0, &t).unwrap() < 1e-4);
        let xi = crate::projective::project_to_fiber(&z, &CVector::new(vec![c(0.1, 0.3), c(0.2, 0.0), c(-0.4, 0.5)]));
        let p1 = phi_hat(&z, &xi).unwrap();
        assert!(check_cy_condition(&p1, &t).unwrap() < 1e-4);
        let bumped: Vec<f64> = t.h().iter().zip(t.grid()).map(|(h, n)| h * (1.0 + 0.1 * (n - 1.0))).collect();
        let bad = PotentialTable::from_samples(2, PotentialOde::TwoNMinusOne, t.grid().to_vec(), bumped, t.hprime().to_vec()).unwrap();
        assert!(check_cy_condition(&p1, &bad).unwrap() > 1e-2);
    }

    #[test]
    fn oracle_and_bracket_formula_agree() {
        use crate::pairs::{PairKind, SymmetricPairCase};
        let case = SymmetricPairCase::<f64>::new(PairKind::Bdi { m: 3 }).unwrap();
        let p = case.sigma_point(c(0.3, 0.4)).unwrap();
        let t = PotentialTable::<f64>::solve(2, 20.0, 1e-4, PotentialOde::TwoNMinusOne).unwrap();
        let pot = Potential::Table(&t);
        let basis = case.basis_k();
        // A point off the moment level so that ω is not identically zero on fundamental fields.
        let q = ProjectivePair::new(p.z().clone(), p.w().axpy(c(0.1, 0.2), &CVector::basis(3, 2))).unwrap();
        for (x, y) in [(&basis[1], &basis[2]), (&basis[2], &basis[3]), (&basis[0], &basis[1])] {
            let a = kahler_two_form(x, y, &q, &pot).unwrap();
            let b = kahler_two_form_oracle(&x.fundamental_vector(&q).unwrap(), &y.fundamental_vector(&q).unwrap(), &pot).unwrap();
            assert!((a - b).abs() < 1e-6, "{} {}: {a} vs {b}", x.label, y.label);
            let s = kahler_two_form(y, x, &q, &pot).unwrap();
            assert!((a + s).abs() < 1e-9);
        }
    }
}
