//! Points and tangent vectors of `M = {([z],[w]) ∈ CPⁿ×CPⁿ : Σ z_j w_j ≠ 0}`
//! in homogeneous coordinates, the invariants `A`, `B`, `N`, and the map
//! from the cotangent bundle model `{(ζ, ξ) : ξ·ζ̄ = 0}`.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{GeometryError, Result};
use crate::linalg::CVector;
use crate::scalar::{imag_unit, sinhc, Scalar};

/// `Σ z_j w_j` on raw homogeneous vectors.
pub fn pairing<T: Scalar>(z: &CVector<T>, w: &CVector<T>) -> Complex<T> {
    z.bilinear(w)
}

/// A point of `M` held by homogeneous representatives `z`, `w` of length `n+1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectivePair<T: Scalar> {
    z: CVector<T>,
    w: CVector<T>,
}

impl<T: Scalar> ProjectivePair<T> {
    /// Validates lengths, nonvanishing of both vectors, and `|B| > ε|z||w|`.
    pub fn new(z: CVector<T>, w: CVector<T>) -> Result<Self> {
        if z.len() != w.len() {
            return Err(GeometryError::DimensionMismatch { expected: z.len(), found: w.len() });
        }
        if z.len() < 2 {
            return Err(GeometryError::InvalidParameters("homogeneous vectors need length at least 2".into()));
        }
        let (nz, nw) = (z.norm(), w.norm());
        if nz == T::zero() || nw == T::zero() {
            return Err(GeometryError::ZeroVector);
        }
        let b = pairing(&z, &w);
        let rel = b.norm() / (nz * nw);
        if !(rel > T::degeneracy_eps()) {
            return Err(GeometryError::DegeneratePoint { pairing: rel.as_f64() });
        }
        Ok(Self { z, w })
    }

    /// The zero-section point `(ζ; ζ̄)`.
    pub fn zero_section(zeta: CVector<T>) -> Result<Self> {
        let w = zeta.conj();
        Self::new(zeta, w)
    }

    pub fn z(&self) -> &CVector<T> {
        &self.z
    }

    pub fn w(&self) -> &CVector<T> {
        &self.w
    }

    /// Length of the homogeneous vectors, `n + 1`.
    pub fn ambient(&self) -> usize {
        self.z.len()
    }

    /// Complex dimension `n` of each projective factor.
    pub fn dim(&self) -> usize {
        self.z.len() - 1
    }

    /// `A = Σ_{j,k} |z_j w_k|² = |z|²|w|²`.
    pub fn eval_a(&self) -> T {
        self.z.norm_sqr() * self.w.norm_sqr()
    }

    /// `B = Σ z_j w_j`.
    pub fn eval_b(&self) -> Complex<T> {
        pairing(&self.z, &self.w)
    }

    /// `N = A / |B|²`, at least one by Cauchy–Schwarz.
    pub fn eval_n(&self) -> T {
        self.eval_a() / self.eval_b().norm_sqr()
    }

    /// Rescale the representatives, `(λz; νw)`.
    pub fn rescaled(&self, lambda: Complex<T>, nu: Complex<T>) -> Result<Self> {
        Self::new(self.z.scale(lambda), self.w.scale(nu))
    }

    /// Representatives with unit norm and `z_c = |z_c|`, `w_c = |w_c|` at the best chart,
    /// so that equal projective points give equal output.
    pub fn normalized(&self) -> Self {
        let c = self.best_chart();
        let fz = self.z[c].conj() / (self.z[c].norm() * self.z.norm());
        let fw = self.w[c].conj() / (self.w[c].norm() * self.w.norm());
        Self { z: self.z.scale(fz), w: self.w.scale(fw) }
    }

    /// Chart index maximizing `min(|z_j|, |w_j|)`.
    pub fn best_chart(&self) -> usize {
        (0..self.ambient())
            .map(|j| (j, (self.z[j].norm() / self.z.norm()).min(self.w[j].norm() / self.w.norm())))
            .fold((0, -T::one()), |acc, x| if x.1 > acc.1 { x } else { acc })
            .0
    }

    fn check_chart(&self, chart: usize) -> Result<()> {
        if chart >= self.ambient() {
            return Err(GeometryError::DimensionMismatch { expected: self.ambient(), found: chart });
        }
        let eps = T::degeneracy_eps();
        if self.z[chart].norm() <= eps * self.z.norm() || self.w[chart].norm() <= eps * self.w.norm() {
            return Err(GeometryError::ChartSingular { chart });
        }
        Ok(())
    }

    /// Affine coordinates `(z̃, w̃)` with `z̃_i = z_i / z_chart` over `i ≠ chart`.
    pub fn to_inhomogeneous(&self, chart: usize) -> Result<(CVector<T>, CVector<T>)> {
        self.check_chart(chart)?;
        Ok((dehomogenize(&self.z, chart), dehomogenize(&self.w, chart)))
    }

    /// Projective distance to another point, gauge-free: `1 − |⟨a,b⟩|²/(|a|²|b|²)` summed over factors.
    pub fn projective_distance(&self, other: &Self) -> T {
        let d = |a: &CVector<T>, b: &CVector<T>| {
            T::one() - a.hermitian(b).norm_sqr() / (a.norm_sqr() * b.norm_sqr())
        };
        d(&self.z, &other.z).abs() + d(&self.w, &other.w).abs()
    }
}

fn dehomogenize<T: Scalar>(v: &CVector<T>, chart: usize) -> CVector<T> {
    let pivot = v[chart];
    CVector::new((0..v.len()).filter(|&i| i != chart).map(|i| v[i] / pivot).collect())
}

/// Inverse of [`ProjectivePair::to_inhomogeneous`]: insert a one at `chart`.
pub fn from_inhomogeneous<T: Scalar>(zt: &CVector<T>, wt: &CVector<T>, chart: usize) -> Result<ProjectivePair<T>> {
    let lift = |v: &CVector<T>| {
        let mut out = Vec::with_capacity(v.len() + 1);
        out.extend_from_slice(&v.as_slice()[..chart]);
        out.push(Complex::new(T::one(), T::zero()));
        out.extend_from_slice(&v.as_slice()[chart..]);
        CVector::new(out)
    };
    ProjectivePair::new(lift(zt), lift(wt))
}

/// Tangent vector at a [`ProjectivePair`] as homogeneous velocities.
///
/// Adding `(λz, νw)` does not change the underlying tangent vector of `CPⁿ×CPⁿ`.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentRep<T: Scalar> {
    pub base: ProjectivePair<T>,
    pub dz: CVector<T>,
    pub dw: CVector<T>,
}

impl<T: Scalar> TangentRep<T> {
    pub fn new(base: ProjectivePair<T>, dz: CVector<T>, dw: CVector<T>) -> Result<Self> {
        let n1 = base.ambient();
        for v in [&dz, &dw] {
            if v.len() != n1 {
                return Err(GeometryError::DimensionMismatch { expected: n1, found: v.len() });
            }
        }
        Ok(Self { base, dz, dw })
    }

    /// The gauge direction `(λz, νw)`.
    pub fn gauge(base: &ProjectivePair<T>, lambda: Complex<T>, nu: Complex<T>) -> Self {
        Self { base: base.clone(), dz: base.z().scale(lambda), dw: base.w().scale(nu) }
    }

    pub fn scale_real(&self, s: T) -> Self {
        Self { base: self.base.clone(), dz: self.dz.scale_real(s), dw: self.dw.scale_real(s) }
    }

    /// Real linear combination `a·self + b·other` at the same base.
    pub fn combine(&self, a: T, other: &Self, b: T) -> Self {
        Self {
            base: self.base.clone(),
            dz: &self.dz.scale_real(a) + &other.dz.scale_real(b),
            dw: &self.dw.scale_real(a) + &other.dw.scale_real(b),
        }
    }

    /// Chain rule for `z̃_i = z_i / z_c`: `dz̃_i = (z_c dz_i − z_i dz_c) / z_c²`.
    pub fn push_to_chart(&self, chart: usize) -> Result<(CVector<T>, CVector<T>)> {
        self.base.check_chart(chart)?;
        Ok((push(self.base.z(), &self.dz, chart), push(self.base.w(), &self.dw, chart)))
    }

    /// Concatenated chart velocity `(dz̃, dw̃)` of length `2n`.
    pub fn chart_column(&self, chart: usize) -> Result<CVector<T>> {
        let (a, b) = self.push_to_chart(chart)?;
        let mut v = a.into_inner();
        v.extend(b.into_inner());
        Ok(CVector::new(v))
    }
}

fn push<T: Scalar>(v: &CVector<T>, dv: &CVector<T>, chart: usize) -> CVector<T> {
    let c = v[chart];
    let dc = dv[chart];
    let c2 = c * c;
    CVector::new((0..v.len()).filter(|&i| i != chart).map(|i| (c * dv[i] - v[i] * dc) / c2).collect())
}

/// Free-function form of [`TangentRep::push_to_chart`].
pub fn push_tangent_to_chart<T: Scalar>(v: &TangentRep<T>, chart: usize) -> Result<(CVector<T>, CVector<T>)> {
    v.push_to_chart(chart)
}

/// `Φ̂(ζ, ξ) = (cosh μ·ζ + i sinh μ/μ·ξ ; cosh μ·ζ̄ + i sinh μ/μ·ξ̄)` with `μ = |ξ|/|ζ|`.
pub fn phi_hat<T: Scalar>(zeta: &CVector<T>, xi: &CVector<T>) -> Result<ProjectivePair<T>> {
    if zeta.len() != xi.len() {
        return Err(GeometryError::DimensionMismatch { expected: zeta.len(), found: xi.len() });
    }
    let nzeta = zeta.norm();
    if nzeta == T::zero() {
        return Err(GeometryError::ZeroVector);
    }
    let defect = xi.hermitian(zeta).norm() / nzeta;
    let scale = T::one().max(xi.norm());
    if defect > T::membership_eps() * scale {
        return Err(GeometryError::NotInBundle { defect: defect.as_f64() });
    }
    let mu = xi.norm() / nzeta;
    let ch = Complex::new(mu.cosh(), T::zero());
    let sh = imag_unit::<T>() * sinhc(mu);
    let z = zeta.scale(ch).axpy(sh, xi);
    let w = zeta.conj().scale(ch).axpy(sh, &xi.conj());
    ProjectivePair::new(z, w)
}

/// Component of `xi` orthogonal to `ζ` in the Hermitian sense, so that `ξ·ζ̄ = 0`.
pub fn project_to_fiber<T: Scalar>(zeta: &CVector<T>, xi: &CVector<T>) -> CVector<T> {
    let c = xi.hermitian(zeta) / Complex::new(zeta.norm_sqr(), T::zero());
    if c.is_zero() {
        return xi.clone();
    }
    xi.axpy(-c, zeta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn v(xs: &[Complex<f64>]) -> CVector<f64> {
        CVector::new(xs.to_vec())
    }

    #[test]
    fn unit_vectors_give_unit_invariants() {
        let e = CVector::<f64>::basis(3, 0);
        let p = ProjectivePair::new(e.clone(), e).unwrap();
        assert_eq!(p.eval_a(), 1.0);
        assert_eq!(p.eval_b(), c(1.0, 0.0));
        assert_eq!(p.eval_n(), 1.0);
    }

    #[test]
    fn orthogonal_pairing_is_rejected() {
        let err = ProjectivePair::new(CVector::<f64>::basis(3, 0), CVector::basis(3, 1)).unwrap_err();
        assert!(matches!(err, GeometryError::DegeneratePoint { .. }));
    }

    #[test]
    fn zero_section_has_unit_pairing() {
        let s = 0.5f64.sqrt();
        let z = v(&[c(s, 0.0), c(0.0, s), c(0.0, 0.0)]);
        let p = ProjectivePair::zero_section(z).unwrap();
        assert!((p.eval_b() - c(1.0, 0.0)).norm() < 1e-15);
        assert!((p.eval_n() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn chart_coordinates() {
        let (a, b) = (c(0.3, 1.0), c(-2.0, 0.5));
        let z = v(&[c(1.0, 0.0), a, b]);
        let p = ProjectivePair::new(z.clone(), z).unwrap();
        let (zt, _) = p.to_inhomogeneous(0).unwrap();
        assert_eq!(zt.as_slice(), &[a, b]);
        let q = p.rescaled(c(0.0, 3.0), c(1.0, 1.0)).unwrap();
        let (zq, _) = q.to_inhomogeneous(0).unwrap();
        assert!((&zq - &zt).max_abs() < 1e-15);
        let bad = ProjectivePair::new(v(&[c(0.0, 0.0), c(1.0, 0.0)]), v(&[c(1.0, 0.0), c(1.0, 0.0)])).unwrap();
        assert!(matches!(bad.to_inhomogeneous(0), Err(GeometryError::ChartSingular { chart: 0 })));
    }

    #[test]
    fn chart_push_kills_gauge_and_matches_unit_case() {
        let z = v(&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let p = ProjectivePair::new(z.clone(), z).unwrap();
        let g = TangentRep::gauge(&p, c(0.4, -1.0), c(2.0, 0.1));
        let (a, b) = g.push_to_chart(0).unwrap();
        assert!(a.max_abs() == 0.0 && b.max_abs() == 0.0);
        let t = TangentRep::new(p.clone(), CVector::basis(3, 1), CVector::zeros(3)).unwrap();
        let (a, _) = t.push_to_chart(0).unwrap();
        assert_eq!(a[0], c(1.0, 0.0));
    }

    #[test]
    fn phi_hat_reference_point() {
        let zeta = CVector::<f64>::basis(3, 0);
        let xi = CVector::<f64>::basis(3, 1);
        let p = phi_hat(&zeta, &xi).unwrap();
        let expect = [c(1f64.cosh(), 0.0), c(0.0, 1f64.sinh()), c(0.0, 0.0)];
        for (k, e) in expect.iter().enumerate() {
            assert!((p.z()[k] - e).norm() < 1e-15);
            assert!((p.w()[k] - e).norm() < 1e-15);
        }
    }

    #[test]
    fn phi_hat_zero_fiber_is_zero_section() {
        let zeta = v(&[c(0.6, 0.0), c(0.0, 0.8)]);
        let p = phi_hat(&zeta, &CVector::zeros(2)).unwrap();
        assert_eq!(p.z(), &zeta);
        assert_eq!(p.w(), &zeta.conj());
    }

    #[test]
    fn phi_hat_rejects_off_bundle_input() {
        let zeta = CVector::<f64>::basis(2, 0);
        let err = phi_hat(&zeta, &zeta).unwrap_err();
        assert!(matches!(err, GeometryError::NotInBundle { .. }));
    }

    #[test]
    fn single_precision_pair() {
        let z = CVector::<f32>::new(vec![Complex::new(1.0, 0.0), Complex::new(0.5, 0.5)]);
        let p = ProjectivePair::zero_section(z).unwrap();
        assert!((p.eval_n() - 1.0).abs() < 1e-6);
    }
}
