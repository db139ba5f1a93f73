//! Real scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar: `f32` or `f64`.
///
/// The associated tolerances scale with the precision of the type, so the
/// same algorithms run in single precision with proportionally looser
/// degeneracy guards.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Sum + Send + Sync + 'static
{
    /// Relative threshold below which a pairing or chart pivot is treated as zero.
    fn degeneracy_eps() -> Self;

    /// Relative threshold used when deciding whether a matrix lies in a subspace.
    fn membership_eps() -> Self;

    /// Pointwise tolerance for the potential-table residual audit.
    fn audit_tol() -> Self;

    /// Lossless-enough conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn degeneracy_eps() -> f64 {
        1e-12
    }

    fn membership_eps() -> f64 {
        1e-10
    }

    fn audit_tol() -> f64 {
        1e-9
    }
}

impl Scalar for f32 {
    fn degeneracy_eps() -> f32 {
        1e-6
    }

    fn membership_eps() -> f32 {
        1e-4
    }

    fn audit_tol() -> f32 {
        5e-2
    }
}

/// `i` in the complex numbers over `T`.
#[inline]
pub fn imag_unit<T: Scalar>() -> Complex<T> {
    Complex::new(T::zero(), T::one())
}

/// `i^k` for any integer `k`, computed exactly.
pub fn i_pow<T: Scalar>(k: i64) -> Complex<T> {
    let (o, z) = (T::one(), T::zero());
    match k.rem_euclid(4) {
        0 => Complex::new(o, z),
        1 => Complex::new(z, o),
        2 => Complex::new(-o, z),
        _ => Complex::new(z, -o),
    }
}

/// `sinh(x)/x` with the removable singularity at zero filled in.
pub fn sinhc<T: Scalar>(x: T) -> T {
    if x.abs() < T::lit(1e-4) {
        let x2 = x * x;
        T::one() + x2 / T::lit(6.0) + x2 * x2 / T::lit(120.0)
    } else {
        x.sinh() / x
    }
}

/// Reduce an angle to `[0, 2π)`.
pub fn reduce_angle<T: Scalar>(psi: T) -> T {
    let two_pi = T::TAU();
    let r = psi % two_pi;
    let r = if r < T::zero() { r + two_pi } else { r + T::zero() };
    // Tiny negative inputs can round up to exactly 2π.
    if r >= two_pi {
        T::zero()
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_powers_cycle() {
        for k in -8..8 {
            let direct = Complex::new(0.0f64, 1.0).powi(k as i32);
            let exact: Complex<f64> = i_pow(k);
            assert!((direct - exact).norm() < 1e-12, "k = {k}");
        }
    }

    #[test]
    fn sinhc_is_continuous_across_series_switch() {
        for x in [0.99e-4f64, 1.01e-4, 3e-5] {
            assert!((sinhc(x) - x.sinh() / x).abs() < 1e-15);
        }
        assert_eq!(sinhc(0.0f64), 1.0);
    }

    #[test]
    fn angle_reduction() {
        assert!((reduce_angle(-std::f64::consts::FRAC_PI_2) - 1.5 * std::f64::consts::PI).abs() < 1e-15);
        assert!(reduce_angle(7.0f64) < std::f64::consts::TAU);
    }
}
