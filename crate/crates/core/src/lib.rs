//! Numerical construction and verification of cohomogeneity-one special
//! Lagrangian submanifolds of `T*CPⁿ` with the Stenzel Calabi–Yau structure.
//!
//! The cotangent bundle is modelled as `M = {(z; w) ∈ CPⁿ × CPⁿ : Σ z_j w_j ≠ 0}`.
//! The crate provides:
//!
//! * [`projective`]: points and tangent vectors in homogeneous coordinates, charts and the map `Φ̂`;
//! * [`potential`]: the potential ODE solved into an interpolating table;
//! * [`stenzel`]: the Liouville form, Kähler form, holomorphic volume and the determinant identity;
//! * [`pairs`]: the four symmetric pairs with bases, slices and orbit ranks;
//! * [`slag`]: moment residuals, frame functions, profile curves and the special Lagrangian check;
//! * [`verification`]: suites, negative controls and convention experiments.
//!
//! Everything is generic over [`Scalar`] (`f32` or `f64`); the aliases below fix `f64`.
//!
//! ```
//! use num_complex::Complex;
//! use slag_core::{moment_residual, PairKind, SymmetricPairCase64};
//!
//! let case = SymmetricPairCase64::new(PairKind::Bdi { m: 3 }).unwrap();
//! let p = case.sigma_curve(Complex::new(0.3, 0.1)).unwrap();
//! assert!(moment_residual(&case, &p).unwrap() < 1e-12);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod linalg;
pub mod pairs;
pub mod potential;
pub mod projective;
pub mod scalar;
pub mod slag;
pub mod stenzel;
pub mod verification;

pub use error::{GeometryError, Result};
pub use linalg::{CMatrix, CVector};
pub use pairs::{GroupElement, LieAlgebraElement, PairKind, SymmetricPairCase};
pub use potential::{PotentialOde, PotentialTable, TableIoError};
pub use projective::{phi_hat, ProjectivePair, TangentRep};
pub use scalar::Scalar;
pub use slag::{
    closed_form_g, frame_volume, integrate_profile, invariant_g, matched_phase, moment_residual, verify_special_on_curve,
    BdiPhase, HaltReason, ProfileCurve, ProfileForm, VerificationReport, VerifyOptions,
};
pub use stenzel::{
    check_cy_condition, holomorphic_volume, kahler_two_form, liouville, CalibrationPhase, Potential, VolumeNormalization,
};
pub use verification::{run_theorem_suite, Check, ExperimentReport, SuiteConfig, SuiteReport};

pub type CVector64 = CVector<f64>;
pub type CMatrix64 = CMatrix<f64>;
pub type ProjectivePair64 = ProjectivePair<f64>;
pub type TangentRep64 = TangentRep<f64>;
pub type PotentialTable64 = PotentialTable<f64>;
pub type SymmetricPairCase64 = SymmetricPairCase<f64>;
pub type ProfileCurve64 = ProfileCurve<f64>;
