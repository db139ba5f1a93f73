//! Matrix models of the four rank-two Hermitian symmetric pairs used for the
//! cohomogeneity-one constructions: `𝔲 = 𝔨 ⊕ 𝔭`, the complex structure
//! `ad(J₀)` identifying `𝔭` with `C^{n+1}`, named bases of `𝔨`, slice points
//! and fundamental vector fields on `M`.

use std::fmt;

use num_complex::Complex;
use num_traits::One;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{GeometryError, Result};
use crate::linalg::{singular_values, CMatrix, CVector};
use crate::projective::{ProjectivePair, TangentRep};
use crate::scalar::{imag_unit, Scalar};

/// Which symmetric pair, with its size parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairKind {
    /// `su(p+1) ⊕ su(q+1)` with `p ≥ q ≥ 1`, `p > 1`; `𝔭 ≅ C^{p+q}`.
    AiiiAiii { p: usize, q: usize },
    /// `su(m+2)` over `s(u(2) ⊕ u(m))`, `m ≥ 3`; `𝔭 ≅ C^{2m}`.
    Aiii { m: usize },
    /// `so(m+2)` over `so(2) ⊕ so(m)`, `m ≥ 3`; `𝔭 ≅ C^m`.
    Bdi { m: usize },
    /// `so(10)` over `u(5)`; `𝔭 ≅ C^{10}`.
    Diii,
}

impl PairKind {
    /// Short command-line name.
    pub fn name(&self) -> &'static str {
        match self {
            Self::AiiiAiii { .. } => "aiii-aiii",
            Self::Aiii { .. } => "aiii",
            Self::Bdi { .. } => "bdi",
            Self::Diii => "diii",
        }
    }

    /// Parameters as a JSON object, e.g. `{"p":2,"q":1}`.
    pub fn params_json(&self) -> serde_json::Value {
        match *self {
            Self::AiiiAiii { p, q } => serde_json::json!({ "p": p, "q": q }),
            Self::Aiii { m } | Self::Bdi { m } => serde_json::json!({ "m": m }),
            Self::Diii => serde_json::json!({}),
        }
    }

    /// Check the admissible parameter ranges.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(GeometryError::InvalidParameters(msg));
        match *self {
            Self::AiiiAiii { p, q } if !(q >= 1 && p >= q && p > 1) => {
                bad(format!("aiii-aiii needs p >= q >= 1 and p > 1, got p = {p}, q = {q}"))
            }
            Self::Aiii { m } if m < 3 => bad(format!("aiii needs m >= 3, got m = {m}")),
            Self::Bdi { m } if m < 3 => bad(format!("bdi needs m >= 3, got m = {m}")),
            _ => Ok(()),
        }
    }

    /// Complex dimension `n + 1` of `𝔭`.
    pub fn ambient(&self) -> usize {
        match *self {
            Self::AiiiAiii { p, q } => p + q,
            Self::Aiii { m } => 2 * m,
            Self::Bdi { m } => m,
            Self::Diii => 10,
        }
    }

    /// Real dimension of `𝔨`.
    pub fn dim_k(&self) -> usize {
        match *self {
            Self::AiiiAiii { p, q } => p * p + q * q,
            Self::Aiii { m } => m * m + 3,
            Self::Bdi { m } => m * (m - 1) / 2 + 1,
            Self::Diii => 25,
        }
    }

    /// Size of the ambient matrices.
    pub fn matrix_size(&self) -> usize {
        match *self {
            Self::AiiiAiii { p, q } => p + q + 2,
            Self::Aiii { m } | Self::Bdi { m } => m + 2,
            Self::Diii => 10,
        }
    }

    /// Spacing of the lattice of slice angles where the orbit is not a hypersurface.
    /// It coincides with the half-width of the admissible strip for `τ`.
    pub fn lattice_step<T: Scalar>(&self) -> T {
        match self {
            Self::AiiiAiii { .. } => T::FRAC_PI_2(),
            _ => T::FRAC_PI_4(),
        }
    }

    /// Whether `θ` lies on the degenerate lattice, to within `1e−9` in angle.
    pub fn is_degenerate_angle<T: Scalar>(&self, theta: T) -> bool {
        let r = theta / self.lattice_step::<T>();
        (r - r.round()).abs() * self.lattice_step::<T>() < T::lit(1e-9)
    }
}

impl fmt::Display for PairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::AiiiAiii { p, q } => write!(f, "aiii-aiii({p},{q})"),
            Self::Aiii { m } => write!(f, "aiii({m})"),
            Self::Bdi { m } => write!(f, "bdi({m})"),
            Self::Diii => write!(f, "diii"),
        }
    }
}

/// An element of `𝔨` with its ambient matrix and the induced operator on `𝔭 ≅ C^{n+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebraElement<T: Scalar> {
    pub label: String,
    pub matrix: CMatrix<T>,
    pub induced: CMatrix<T>,
}

impl<T: Scalar> LieAlgebraElement<T> {
    /// `X*` at `p`: `(ρ(X)z ; conj(ρ(X))w)`.
    pub fn fundamental_vector(&self, p: &ProjectivePair<T>) -> Result<TangentRep<T>> {
        fundamental_from_induced(&self.induced, p)
    }

    /// Real linear combination `a·self + b·other`.
    pub fn combine(&self, a: T, other: &Self, b: T) -> Self {
        Self {
            label: format!("{a}*{}+{b}*{}", self.label, other.label),
            matrix: &self.matrix.scale_real(a) + &other.matrix.scale_real(b),
            induced: &self.induced.scale_real(a) + &other.induced.scale_real(b),
        }
    }

    pub fn scale(&self, s: T) -> Self {
        Self {
            label: format!("{s}*{}", self.label),
            matrix: self.matrix.scale_real(s),
            induced: self.induced.scale_real(s),
        }
    }

    /// Group element `exp(X)` in both representations.
    pub fn exp(&self) -> GroupElement<T> {
        GroupElement { ambient: self.matrix.exp(), rho: self.induced.exp() }
    }
}

/// `(Rz ; conj(R)w)` for an induced operator `R`.
pub fn fundamental_from_induced<T: Scalar>(r: &CMatrix<T>, p: &ProjectivePair<T>) -> Result<TangentRep<T>> {
    if r.rows() != p.ambient() || r.cols() != p.ambient() {
        return Err(GeometryError::DimensionMismatch { expected: p.ambient(), found: r.rows() });
    }
    TangentRep::new(p.clone(), r.mul_vec(p.z()), r.conj().mul_vec(p.w()))
}

/// `k = exp(X)` as an ambient matrix and as the unitary `ρ(k)` on `C^{n+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement<T: Scalar> {
    pub ambient: CMatrix<T>,
    pub rho: CMatrix<T>,
}

impl<T: Scalar> GroupElement<T> {
    pub fn identity(size: usize, ambient: usize) -> Self {
        Self { ambient: CMatrix::identity(size), rho: CMatrix::identity(ambient) }
    }

    /// `(ρ(k)z ; conj(ρ(k))w)`.
    pub fn act(&self, p: &ProjectivePair<T>) -> Result<ProjectivePair<T>> {
        ProjectivePair::new(self.rho.mul_vec(p.z()), self.rho.conj().mul_vec(p.w()))
    }

    /// Push a tangent vector forward by the linear action.
    pub fn act_tangent(&self, v: &TangentRep<T>) -> Result<TangentRep<T>> {
        let base = self.act(&v.base)?;
        TangentRep::new(base, self.rho.mul_vec(&v.dz), self.rho.conj().mul_vec(&v.dw))
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self { ambient: self.ambient.matmul(&other.ambient), rho: self.rho.matmul(&other.rho) }
    }
}

/// A symmetric pair together with its basis of `𝔨` and induced operators.
#[derive(Debug, Clone)]
pub struct SymmetricPairCase<T: Scalar> {
    kind: PairKind,
    involution: CMatrix<T>,
    basis: Vec<LieAlgebraElement<T>>,
    frame: Vec<String>,
}

fn unit<T: Scalar>(size: usize, i: usize, j: usize) -> CMatrix<T> {
    let mut m = CMatrix::zeros(size, size);
    m[(i, j)] = Complex::one();
    m
}

fn re<T: Scalar>(x: f64) -> Complex<T> {
    Complex::new(T::lit(x), T::zero())
}

fn pairs5() -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            v.push((i, j));
        }
    }
    v
}

fn pair_index(i: usize, j: usize) -> usize {
    pairs5().iter().position(|&pr| pr == (i, j)).expect("valid o(5) index pair")
}

/// `−E_ij + E_ji`, `i(E_ij + E_ji)` and `i(E_kk − E_{k+1,k+1})` blocks of `su(k)`.
struct SuBlocks<T: Scalar> {
    z: Vec<(usize, usize, CMatrix<T>)>,
    w: Vec<(usize, usize, CMatrix<T>)>,
    diag: Vec<(usize, CMatrix<T>)>,
}

fn su_blocks<T: Scalar>(k: usize) -> SuBlocks<T> {
    let i_unit = imag_unit::<T>();
    let mut z = Vec::new();
    let mut w = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            z.push((a + 1, b + 1, &unit::<T>(k, b, a) - &unit::<T>(k, a, b)));
            w.push((a + 1, b + 1, (&unit::<T>(k, a, b) + &unit::<T>(k, b, a)).scale(i_unit)));
        }
    }
    let diag =
        (0..k.saturating_sub(1)).map(|a| (a + 1, (&unit::<T>(k, a, a) - &unit::<T>(k, a + 1, a + 1)).scale(i_unit))).collect();
    SuBlocks { z, w, diag }
}

impl<T: Scalar> SymmetricPairCase<T> {
    pub fn new(kind: PairKind) -> Result<Self> {
        kind.validate()?;
        let size = kind.matrix_size();
        let mut raw: Vec<(String, CMatrix<T>)> = Vec::new();
        let i_unit = imag_unit::<T>();
        let involution;
        let frame: Vec<String>;
        match kind {
            PairKind::AiiiAiii { p, q } => {
                let d = |k: usize| {
                    let mut e = vec![re::<T>(-1.0); k + 1];
                    e[0] = re(k as f64);
                    CMatrix::diagonal(&e).scale(i_unit / re::<T>((k + 1) as f64))
                };
                let (j0p, j0q) = (d(p), d(q));
                let blk = |a: &CMatrix<T>, b: &CMatrix<T>| {
                    let mut m = CMatrix::zeros(size, size);
                    m.set_block(0, 0, a);
                    m.set_block(p + 1, p + 1, b);
                    m
                };
                let lower = |k: usize, a: &CMatrix<T>| {
                    let mut m = CMatrix::zeros(k + 1, k + 1);
                    m.set_block(1, 1, a);
                    m
                };
                let (zp, zq) = (CMatrix::zeros(p + 1, p + 1), CMatrix::zeros(q + 1, q + 1));
                raw.push(("J_0".into(), blk(&j0p, &j0q)));
                raw.push(("J_1".into(), blk(&j0p, &j0q.scale_real(-T::one()))));
                let sp = su_blocks::<T>(p);
                for (a, b, m) in &sp.z {
                    raw.push((format!("Z_{{{a},{b}}}"), blk(&lower(p, m), &zq)));
                }
                for (a, b, m) in &sp.w {
                    raw.push((format!("W_{{{a},{b}}}"), blk(&lower(p, m), &zq)));
                }
                for (a, m) in &sp.diag {
                    raw.push((format!("W_{{{a}}}"), blk(&lower(p, m), &zq)));
                }
                let sq = su_blocks::<T>(q);
                for (a, b, m) in &sq.z {
                    raw.push((format!("Z'_{{{a},{b}}}"), blk(&zp, &lower(q, m))));
                }
                for (a, b, m) in &sq.w {
                    raw.push((format!("W'_{{{a},{b}}}"), blk(&zp, &lower(q, m))));
                }
                for (a, m) in &sq.diag {
                    raw.push((format!("W'_{{{a}}}"), blk(&zp, &lower(q, m))));
                }
                let mut s = vec![re::<T>(-1.0); size];
                s[0] = re(1.0);
                s[p + 1] = re(1.0);
                involution = CMatrix::diagonal(&s);
                frame = (2..=p)
                    .map(|j| format!("Z_{{1,{j}}}"))
                    .chain((2..=p).map(|j| format!("W_{{1,{j}}}")))
                    .chain(std::iter::once("J_1".to_string()))
                    .chain((2..=q).map(|t| format!("Z'_{{1,{t}}}")))
                    .chain((2..=q).map(|t| format!("W'_{{1,{t}}}")))
                    .collect();
            }
            PairKind::Aiii { m } => {
                let mut e = vec![re::<T>(-2.0); size];
                e[0] = re(m as f64);
                e[1] = re(m as f64);
                raw.push(("J_0".into(), CMatrix::diagonal(&e).scale(i_unit / re::<T>((m + 2) as f64))));
                let top = |a: CMatrix<T>| {
                    let mut t = CMatrix::zeros(size, size);
                    t.set_block(0, 0, &a);
                    t
                };
                let bot = |a: &CMatrix<T>| {
                    let mut t = CMatrix::zeros(size, size);
                    t.set_block(2, 2, a);
                    t
                };
                let (o, z) = (T::one(), T::zero());
                let c = |a: T, b: T| Complex::new(a, b);
                raw.push(("X_{1}".into(), top(CMatrix::from_rows(&[vec![c(z, z), c(-o, z)], vec![c(o, z), c(z, z)]]))));
                raw.push(("X_{2}".into(), top(CMatrix::from_rows(&[vec![c(z, z), c(z, o)], vec![c(z, o), c(z, z)]]))));
                raw.push(("X_{3}".into(), top(CMatrix::from_rows(&[vec![c(z, o), c(z, z)], vec![c(z, z), c(z, -o)]]))));
                let sm = su_blocks::<T>(m);
                for (a, b, mat) in &sm.z {
                    raw.push((format!("Z_{{{a},{b}}}"), bot(mat)));
                }
                for (a, b, mat) in &sm.w {
                    raw.push((format!("W_{{{a},{b}}}"), bot(mat)));
                }
                for (a, mat) in &sm.diag {
                    raw.push((format!("W_{{{a}}}"), bot(mat)));
                }
                let mut s = vec![re::<T>(-1.0); size];
                s[0] = re(1.0);
                s[1] = re(1.0);
                involution = CMatrix::diagonal(&s);
                let mut fr = vec!["X_{1}".to_string(), "X_{2}".to_string()];
                for letter in ["Z", "W"] {
                    for i in 1..=2 {
                        for j in i + 1..=m {
                            fr.push(format!("{letter}_{{{i},{j}}}"));
                        }
                    }
                }
                fr.push("W_{2}".into());
                frame = fr;
            }
            PairKind::Bdi { m } => {
                let mut j0 = CMatrix::zeros(size, size);
                j0[(0, 1)] = re(-1.0);
                j0[(1, 0)] = re(1.0);
                raw.push(("J_0".into(), j0));
                for a in 0..m {
                    for b in a + 1..m {
                        let mut y = CMatrix::zeros(size, size);
                        y[(2 + a, 2 + b)] = re(-1.0);
                        y[(2 + b, 2 + a)] = re(1.0);
                        raw.push((format!("Y_{{{},{}}}", a + 1, b + 1), y));
                    }
                }
                let mut s = vec![re::<T>(-1.0); size];
                s[0] = re(1.0);
                s[1] = re(1.0);
                involution = CMatrix::diagonal(&s);
                frame = (2..=m)
                    .map(|j| format!("Y_{{1,{j}}}"))
                    .chain((3..=m).map(|j| format!("Y_{{2,{j}}}")))
                    .collect();
            }
            PairKind::Diii => {
                let mut jm = CMatrix::zeros(10, 10);
                for k in 0..5 {
                    jm[(k, 5 + k)] = re(1.0);
                    jm[(5 + k, k)] = re(-1.0);
                }
                raw.push(("J_0".into(), jm.scale_real(T::lit(0.5))));
                let diag2 = |s: &CMatrix<T>| {
                    let mut t = CMatrix::zeros(10, 10);
                    t.set_block(0, 0, s);
                    t.set_block(5, 5, s);
                    t
                };
                let anti = |s: &CMatrix<T>| {
                    let mut t = CMatrix::zeros(10, 10);
                    t.set_block(0, 5, s);
                    t.set_block(5, 0, &s.scale_real(-T::one()));
                    t
                };
                for &(i, j) in &pairs5() {
                    let s = &unit::<T>(5, j, i) - &unit::<T>(5, i, j);
                    raw.push((format!("Zt_{{{},{}}}", i + 1, j + 1), diag2(&s)));
                }
                for &(i, j) in &pairs5() {
                    let t = &unit::<T>(5, i, j) + &unit::<T>(5, j, i);
                    raw.push((format!("Wt_{{{},{}}}", i + 1, j + 1), anti(&t)));
                }
                for k in 0..4 {
                    let t = &unit::<T>(5, k, k) - &unit::<T>(5, k + 1, k + 1);
                    raw.push((format!("Wt_{{{}}}", k + 1), anti(&t)));
                }
                involution = jm;
                let pr = [(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 5), (4, 5)];
                frame = pr
                    .iter()
                    .map(|(i, j)| format!("Zt_{{{i},{j}}}"))
                    .chain(pr.iter().map(|(i, j)| format!("Wt_{{{i},{j}}}")))
                    .chain(std::iter::once("Wt_{2}".to_string()))
                    .collect();
            }
        }
        let mut case = Self { kind, involution, basis: Vec::new(), frame };
        let basis = raw
            .into_iter()
            .map(|(label, matrix)| {
                let induced = case.induced_for(&matrix)?;
                Ok(LieAlgebraElement { label, matrix, induced })
            })
            .collect::<Result<Vec<_>>>()?;
        case.basis = basis;
        Ok(case)
    }

    pub fn kind(&self) -> PairKind {
        self.kind
    }

    /// `n + 1`, the length of homogeneous coordinates.
    pub fn ambient(&self) -> usize {
        self.kind.ambient()
    }

    /// Complex dimension `n` of `CPⁿ`; `M` has complex dimension `2n`.
    pub fn n(&self) -> usize {
        self.ambient() - 1
    }

    pub fn strip_halfwidth(&self) -> T {
        self.kind.lattice_step()
    }

    /// The named basis of `𝔨`, starting with `J_0`.
    pub fn basis_k(&self) -> &[LieAlgebraElement<T>] {
        &self.basis
    }

    pub fn element(&self, label: &str) -> Option<&LieAlgebraElement<T>> {
        self.basis.iter().find(|e| e.label == label)
    }

    pub fn j0(&self) -> &LieAlgebraElement<T> {
        &self.basis[0]
    }

    /// The `2n − 1` basis labels that, with the curve velocity, span the tangent space of `L`.
    pub fn frame_labels(&self) -> &[String] {
        &self.frame
    }

    pub fn frame_elements(&self) -> Vec<&LieAlgebraElement<T>> {
        self.frame.iter().map(|l| self.element(l).expect("frame label names a basis element")).collect()
    }

    /// The involution `θ(X) = S X S⁻¹` with `S² = ±1`.
    pub fn involution(&self, x: &CMatrix<T>) -> CMatrix<T> {
        let s = &self.involution;
        let s_inv = match self.kind {
            PairKind::Diii => s.scale_real(-T::one()),
            _ => s.clone(),
        };
        s.matmul(x).matmul(&s_inv)
    }

    /// Distance of `x` from the ambient Lie algebra `𝔲` (skew-Hermitian, real or
    /// traceless per block as appropriate).
    pub fn u_defect(&self, x: &CMatrix<T>) -> T {
        let mut d = (x + &x.adjoint()).max_abs();
        match self.kind {
            PairKind::Bdi { .. } | PairKind::Diii => {
                d = d.max(x.as_slice().iter().map(|c| c.im.abs()).fold(T::zero(), T::max));
            }
            PairKind::Aiii { .. } => d = d.max(x.trace().norm()),
            PairKind::AiiiAiii { p, .. } => {
                let s = x.rows();
                let a = x.block(0, 0, p + 1, p + 1);
                let b = x.block(p + 1, p + 1, s - p - 1, s - p - 1);
                let off = x.block(0, p + 1, p + 1, s - p - 1).max_abs().max(x.block(p + 1, 0, s - p - 1, p + 1).max_abs());
                d = d.max(off).max(a.trace().norm()).max(b.trace().norm());
            }
        }
        d
    }

    /// Distance of `x` from `𝔨`.
    pub fn k_defect(&self, x: &CMatrix<T>) -> T {
        self.u_defect(x).max((&self.involution(x) - x).max_abs())
    }

    /// Distance of `x` from `𝔭`.
    pub fn p_defect(&self, x: &CMatrix<T>) -> T {
        self.u_defect(x).max((&self.involution(x) + x).max_abs())
    }

    /// The element of `𝔭` with complex coordinates `v`.
    pub fn embed_p(&self, v: &CVector<T>) -> Result<CMatrix<T>> {
        let n1 = self.ambient();
        if v.len() != n1 {
            return Err(GeometryError::DimensionMismatch { expected: n1, found: v.len() });
        }
        let size = self.kind.matrix_size();
        let mut x = CMatrix::zeros(size, size);
        match self.kind {
            PairKind::AiiiAiii { p, q } => {
                for j in 0..p {
                    x[(0, 1 + j)] = v[j];
                    x[(1 + j, 0)] = -v[j].conj();
                }
                for t in 0..q {
                    x[(p + 1, p + 2 + t)] = v[p + t];
                    x[(p + 2 + t, p + 1)] = -v[p + t].conj();
                }
            }
            PairKind::Aiii { m } => {
                for r in 0..2 {
                    for c in 0..m {
                        x[(r, 2 + c)] = v[r * m + c];
                        x[(2 + c, r)] = -v[r * m + c].conj();
                    }
                }
            }
            PairKind::Bdi { m } => {
                for j in 0..m {
                    let (a, b) = (Complex::new(v[j].re, T::zero()), Complex::new(v[j].im, T::zero()));
                    x[(0, 2 + j)] = a;
                    x[(1, 2 + j)] = b;
                    x[(2 + j, 0)] = -a;
                    x[(2 + j, 1)] = -b;
                }
            }
            PairKind::Diii => {
                for (k, &(i, j)) in pairs5().iter().enumerate() {
                    let (a, b) = (Complex::new(v[k].re, T::zero()), Complex::new(v[k].im, T::zero()));
                    // [[Y, X], [X, −Y]] with X + iY = Z.
                    x[(i, j)] = b;
                    x[(j, i)] = -b;
                    x[(5 + i, 5 + j)] = -b;
                    x[(5 + j, 5 + i)] = b;
                    x[(i, 5 + j)] = a;
                    x[(j, 5 + i)] = -a;
                    x[(5 + i, j)] = a;
                    x[(5 + j, i)] = -a;
                }
            }
        }
        Ok(x)
    }

    /// Coordinates of `x ∈ 𝔭`; rejects matrices outside `𝔭`.
    pub fn project_p(&self, x: &CMatrix<T>) -> Result<CVector<T>> {
        let size = self.kind.matrix_size();
        if x.rows() != size || x.cols() != size {
            return Err(GeometryError::DimensionMismatch { expected: size, found: x.rows() });
        }
        let v = self.project_unchecked(x);
        let back = self.embed_p(&v)?;
        let defect = (&back - x).max_abs();
        if defect > T::membership_eps() * T::one().max(x.max_abs()) {
            return Err(GeometryError::NotInP { defect: defect.as_f64() });
        }
        Ok(v)
    }

    fn project_unchecked(&self, x: &CMatrix<T>) -> CVector<T> {
        let i_unit = imag_unit::<T>();
        let v: Vec<Complex<T>> = match self.kind {
            PairKind::AiiiAiii { p, q } => {
                (0..p).map(|j| x[(0, 1 + j)]).chain((0..q).map(|t| x[(p + 1, p + 2 + t)])).collect()
            }
            PairKind::Aiii { m } => (0..2 * m).map(|k| x[(k / m, 2 + k % m)]).collect(),
            PairKind::Bdi { m } => (0..m).map(|j| x[(0, 2 + j)] + i_unit * x[(1, 2 + j)]).collect(),
            PairKind::Diii => pairs5().iter().map(|&(i, j)| x[(i, 5 + j)] + i_unit * x[(i, j)]).collect(),
        };
        CVector::new(v)
    }

    /// The operator `v ↦ [X, embed(v)]` on `C^{n+1}`, assembled column by column.
    pub fn induced_for(&self, x: &CMatrix<T>) -> Result<CMatrix<T>> {
        let n1 = self.ambient();
        let mut out = CMatrix::zeros(n1, n1);
        for k in 0..n1 {
            let e = self.embed_p(&CVector::basis(n1, k))?;
            out.set_column(k, &self.project_p(&x.commutator(&e))?);
        }
        Ok(out)
    }

    /// Unit vector of the slice `𝔞` at angle `θ`.
    pub fn slice_point(&self, theta: T) -> CVector<T> {
        self.sigma_vectors(Complex::new(theta, T::zero())).0
    }

    /// The pair `(z, w)` of the curve at complex `τ`, without the strip check.
    pub fn sigma_vectors(&self, tau: Complex<T>) -> (CVector<T>, CVector<T>) {
        self.sigma_entries(tau, false)
    }

    /// `d/dτ` of [`Self::sigma_vectors`].
    pub fn sigma_derivative(&self, tau: Complex<T>) -> (CVector<T>, CVector<T>) {
        self.sigma_entries(tau, true)
    }

    fn sigma_entries(&self, tau: Complex<T>, derivative: bool) -> (CVector<T>, CVector<T>) {
        let n1 = self.ambient();
        let (c, s) = if derivative { (-tau.sin(), tau.cos()) } else { (tau.cos(), tau.sin()) };
        let i_unit = imag_unit::<T>();
        let mut z = CVector::zeros(n1);
        let mut w = CVector::zeros(n1);
        match self.kind {
            PairKind::AiiiAiii { p, .. } => {
                z[0] = c;
                z[p] = s;
                w = z.clone();
            }
            PairKind::Aiii { m } => {
                z[0] = c;
                z[m + 1] = s;
                w = z.clone();
            }
            PairKind::Bdi { .. } => {
                z[0] = c;
                z[1] = i_unit * s;
                w[0] = c;
                w[1] = -i_unit * s;
            }
            PairKind::Diii => {
                z[pair_index(0, 1)] = i_unit * c;
                z[pair_index(2, 3)] = i_unit * s;
                w = -&z;
            }
        }
        (z, w)
    }

    /// Check `0 < |Re τ| < half-width`.
    pub fn check_strip(&self, tau: Complex<T>) -> Result<()> {
        let hw = self.strip_halfwidth();
        let r = tau.re.abs();
        if !(r > T::zero() && r < hw) || !tau.im.is_finite() {
            return Err(GeometryError::OutOfStrip { re: tau.re.as_f64(), im: tau.im.as_f64(), halfwidth: hw.as_f64() });
        }
        Ok(())
    }

    /// The point `σ(τ)` of `M` for `τ` in the admissible strip.
    pub fn sigma_curve(&self, tau: Complex<T>) -> Result<ProjectivePair<T>> {
        self.check_strip(tau)?;
        self.sigma_point(tau)
    }

    /// `σ(τ)` for any `τ` where the pairing does not vanish (real lattice points included).
    pub fn sigma_point(&self, tau: Complex<T>) -> Result<ProjectivePair<T>> {
        let (z, w) = self.sigma_vectors(tau);
        ProjectivePair::new(z, w)
    }

    /// Velocity `σ′(τ)·dτ` at `σ(τ)`.
    pub fn sigma_tangent(&self, tau: Complex<T>, dtau: Complex<T>) -> Result<TangentRep<T>> {
        let base = self.sigma_point(tau)?;
        let (dz, dw) = self.sigma_derivative(tau);
        TangentRep::new(base, dz.scale(dtau), dw.scale(dtau))
    }

    /// The fibre vector `ξ` over the slice point `ζ_θ` that solves the moment
    /// equations, with scalar parameter real (unitary cases) or imaginary
    /// (orthogonal cases) of size `λ`.
    pub fn bundle_fiber_solution(&self, theta: T, lambda: T) -> Result<(CVector<T>, CVector<T>)> {
        if self.kind.is_degenerate_angle(theta) {
            return Err(GeometryError::DegenerateSlice { theta: theta.as_f64() });
        }
        self.bundle_fiber_with_scalar(theta, self.fiber_scalar(lambda))
    }

    /// The scalar `α` used by [`Self::bundle_fiber_solution`].
    pub fn fiber_scalar(&self, lambda: T) -> Complex<T> {
        match self.kind {
            PairKind::AiiiAiii { .. } | PairKind::Aiii { .. } => Complex::new(lambda, T::zero()),
            PairKind::Bdi { .. } | PairKind::Diii => Complex::new(T::zero(), lambda),
        }
    }

    /// Fibre vector over `ζ_θ` with free components zero and arbitrary complex scalar `α`.
    pub fn bundle_fiber_with_scalar(&self, theta: T, alpha: Complex<T>) -> Result<(CVector<T>, CVector<T>)> {
        let zeta = self.slice_point(theta);
        let n1 = self.ambient();
        let (c, s) = (Complex::new(theta.cos(), T::zero()), Complex::new(theta.sin(), T::zero()));
        let mut xi = CVector::zeros(n1);
        match self.kind {
            PairKind::AiiiAiii { p, .. } => {
                xi[0] = alpha * s;
                xi[p] = -alpha * c;
            }
            PairKind::Aiii { m } => {
                xi[0] = alpha * s;
                xi[m + 1] = -alpha * c;
            }
            PairKind::Bdi { .. } => {
                xi[0] = alpha * imag_unit::<T>() * s;
                xi[1] = alpha * c;
            }
            PairKind::Diii => {
                xi[pair_index(0, 1)] = alpha * s;
                xi[pair_index(2, 3)] = -alpha * c;
            }
        }
        Ok((zeta, xi))
    }

    /// The curve parameter `τ` with `Φ̂(ζ_θ, ξ_λ) = σ(τ)`.
    pub fn fiber_tau(&self, theta: T, lambda: T) -> Complex<T> {
        match self.kind {
            PairKind::Bdi { .. } => Complex::new(theta, lambda),
            _ => Complex::new(theta, -lambda),
        }
    }

    /// Real rank of the span of all fundamental vectors at `p`, measured in the best chart.
    ///
    /// The point is normalized first, so chart coordinates and basis operators
    /// are of unit scale and singular values are compared against
    /// `1e−8 · max(σ_max, 1)`. A purely relative cutoff would count rounding
    /// noise as rank on orbits that collapse to a point.
    pub fn orbit_tangent_rank(&self, p: &ProjectivePair<T>) -> Result<usize> {
        let p = p.normalized();
        let chart = p.best_chart();
        let cols = self
            .basis
            .iter()
            .map(|x| x.fundamental_vector(&p)?.chart_column(chart))
            .collect::<Result<Vec<_>>>()?;
        let sv = singular_values(&real_span_rows(&cols));
        let cutoff = T::lit(1e-8) * sv.first().copied().unwrap_or_else(T::zero).max(T::one());
        Ok(sv.iter().filter(|&&s| s > cutoff).count())
    }

    /// `2n − 1`, the rank of a principal orbit.
    pub fn principal_rank(&self) -> usize {
        2 * self.n() - 1
    }

    /// A random element `Σ c_k X_k` with standard normal coefficients, scaled so
    /// that the induced operator has unit operator norm.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> LieAlgebraElement<T> {
        let size = self.kind.matrix_size();
        let n1 = self.ambient();
        let mut matrix = CMatrix::zeros(size, size);
        let mut induced = CMatrix::zeros(n1, n1);
        for e in &self.basis {
            let c: f64 = StandardNormal.sample(rng);
            matrix = &matrix + &e.matrix.scale_real(T::lit(c));
            induced = &induced + &e.induced.scale_real(T::lit(c));
        }
        let norm = singular_values(&induced.realify()).first().copied().unwrap_or_else(T::one);
        let s = if norm > T::zero() { T::one() / norm } else { T::one() };
        LieAlgebraElement { label: "random".into(), matrix: matrix.scale_real(s), induced: induced.scale_real(s) }
    }

    /// `exp` of a random unit element of `𝔨`.
    pub fn random_group_element<R: Rng + ?Sized>(&self, rng: &mut R) -> GroupElement<T> {
        self.random_element(rng).exp()
    }

    /// `Ad(k)X = g X g⁻¹` with induced operator recomputed from the ambient matrix.
    pub fn adjoint_action(&self, k: &GroupElement<T>, x: &LieAlgebraElement<T>) -> Result<LieAlgebraElement<T>> {
        let g_inv = k.ambient.solve(&CMatrix::identity(k.ambient.rows()))?;
        let matrix = k.ambient.matmul(&x.matrix).matmul(&g_inv);
        let induced = self.induced_for(&matrix)?;
        Ok(LieAlgebraElement { label: format!("Ad({})", x.label), matrix, induced })
    }

    /// Generators of `𝔞`: the slice directions at `θ = 0` and `θ = π/2`.
    pub fn a_generators(&self) -> Result<[CMatrix<T>; 2]> {
        Ok([self.embed_p(&self.slice_point(T::zero()))?, self.embed_p(&self.slice_point(T::FRAC_PI_2()))?])
    }
}

/// Rows of the real matrix whose columns are `(Re v, Im v)` for each `v`, so
/// that its rank is the dimension of the real span of the vectors.
pub fn real_span_rows<T: Scalar>(cols: &[CVector<T>]) -> Vec<Vec<T>> {
    let len = cols.first().map_or(0, CVector::len);
    (0..2 * len)
        .map(|r| cols.iter().map(|v| if r < len { v[r].re } else { v[r - len].im }).collect())
        .collect()
}

/// Complex-linearity test helper: `‖R(i v) − i R v‖` is automatic for matrices,
/// so the meaningful check is that the real-linear map defined through
/// `embed → ad → project` commutes with `i`.
pub fn real_linear_commutes_with_i<T: Scalar>(case: &SymmetricPairCase<T>, x: &CMatrix<T>, v: &CVector<T>) -> Result<T> {
    let i_unit = imag_unit::<T>();
    let lhs = case.project_p(&x.commutator(&case.embed_p(&v.scale(i_unit))?))?;
    let rhs = case.project_p(&x.commutator(&case.embed_p(v)?))?.scale(i_unit);
    Ok((&lhs - &rhs).max_abs())
}

impl<T: Scalar> fmt::Display for SymmetricPairCase<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.kind.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn all_kinds() -> Vec<PairKind> {
        vec![
            PairKind::AiiiAiii { p: 2, q: 1 },
            PairKind::AiiiAiii { p: 3, q: 2 },
            PairKind::Aiii { m: 3 },
            PairKind::Bdi { m: 3 },
            PairKind::Bdi { m: 4 },
            PairKind::Diii,
        ]
    }

    #[test]
    fn parameter_ranges() {
        assert!(PairKind::Aiii { m: 2 }.validate().is_err());
        assert!(PairKind::Bdi { m: 2 }.validate().is_err());
        assert!(PairKind::AiiiAiii { p: 1, q: 1 }.validate().is_err());
        assert!(PairKind::AiiiAiii { p: 2, q: 3 }.validate().is_err());
        assert!(PairKind::AiiiAiii { p: 2, q: 2 }.validate().is_ok());
    }

    #[test]
    fn basis_cardinalities() {
        for kind in all_kinds() {
            let case = SymmetricPairCase::<f64>::new(kind).unwrap();
            assert_eq!(case.basis_k().len(), kind.dim_k(), "{kind}");
        }
        assert_eq!(SymmetricPairCase::<f64>::new(PairKind::Diii).unwrap().basis_k().len(), 25);
        assert_eq!(SymmetricPairCase::<f64>::new(PairKind::Aiii { m: 3 }).unwrap().basis_k().len(), 12);
    }

    #[test]
    fn j0_acts_as_i() {
        for kind in all_kinds() {
            let case = SymmetricPairCase::<f64>::new(kind).unwrap();
            let r = &case.j0().induced;
            let target = CMatrix::identity(case.ambient()).scale(Complex::new(0.0, 1.0));
            assert!((r - &target).max_abs() < 1e-12, "{kind}");
        }
    }

    #[test]
    fn bdi_embedding_of_first_basis_vector() {
        let case = SymmetricPairCase::<f64>::new(PairKind::Bdi { m: 3 }).unwrap();
        let x = case.embed_p(&CVector::basis(3, 0)).unwrap();
        assert_eq!(x[(0, 2)], Complex::new(1.0, 0.0));
        assert_eq!(x[(2, 0)], Complex::new(-1.0, 0.0));
        assert_eq!(x.as_slice().iter().filter(|c| c.norm() > 0.0).count(), 2);
    }

    #[test]
    fn aiii_slice_display() {
        let case = SymmetricPairCase::<f64>::new(PairKind::Aiii { m: 3 }).unwrap();
        let th = std::f64::consts::FRAC_PI_6;
        let x = case.embed_p(&case.slice_point(th)).unwrap();
        assert!((x[(0, 2)].re - th.cos()).abs() < 1e-15);
        assert!((x[(1, 3)].re - th.sin()).abs() < 1e-15);
        let bdi = SymmetricPairCase::<f64>::new(PairKind::Bdi { m: 3 }).unwrap();
        assert_eq!(bdi.slice_point(0.0), CVector::basis(3, 0));
    }

    #[test]
    fn project_rejects_k() {
        for kind in all_kinds() {
            let case = SymmetricPairCase::<f64>::new(kind).unwrap();
            let x = &case.basis_k()[1].matrix;
            assert!(matches!(case.project_p(x), Err(GeometryError::NotInP { .. })), "{kind}");
            let zero = CMatrix::zeros(kind.matrix_size(), kind.matrix_size());
            assert_eq!(case.project_p(&zero).unwrap().max_abs(), 0.0);
        }
    }

    #[test]
    fn fiber_solution_maps_to_shifted_curve() {
        for kind in all_kinds() {
            let case = SymmetricPairCase::<f64>::new(kind).unwrap();
            let (theta, lambda) = (0.3, 0.7);
            let (zeta, xi) = case.bundle_fiber_solution(theta, lambda).unwrap();
            let p = crate::projective::phi_hat(&zeta, &xi).unwrap();
            let q = case.sigma_point(case.fiber_tau(theta, lambda)).unwrap();
            assert!(p.projective_distance(&q) < 1e-13, "{kind}");
        }
    }

    #[test]
    fn orbit_rank_examples() {
        let case = SymmetricPairCase::<f64>::new(PairKind::Bdi { m: 3 }).unwrap();
        let p = case.sigma_point(Complex::new(std::f64::consts::FRAC_PI_6, 0.0)).unwrap();
        assert_eq!(case.orbit_tangent_rank(&p).unwrap(), 3);
        let p0 = case.sigma_point(Complex::new(0.0, 0.0)).unwrap();
        assert!(case.orbit_tangent_rank(&p0).unwrap() < 3);
        let aa = SymmetricPairCase::<f64>::new(PairKind::AiiiAiii { p: 2, q: 1 }).unwrap();
        let p = aa.sigma_point(Complex::new(std::f64::consts::FRAC_PI_3, 0.0)).unwrap();
        assert_eq!(aa.orbit_tangent_rank(&p).unwrap(), 3);
    }

    #[test]
    fn random_elements_are_unit_and_in_k() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for kind in all_kinds() {
            let case = SymmetricPairCase::<f64>::new(kind).unwrap();
            let x = case.random_element(&mut rng);
            assert!(case.k_defect(&x.matrix) < 1e-12);
            let top = singular_values(&x.induced.realify())[0];
            assert!((top - 1.0).abs() < 1e-12);
            let g = x.exp();
            let u = g.rho.matmul(&g.rho.adjoint());
            assert!((&u - &CMatrix::identity(case.ambient())).max_abs() < 1e-12);
        }
    }

    #[test]
    fn frame_lengths() {
        for kind in all_kinds() {
            let case = SymmetricPairCase::<f64>::new(kind).unwrap();
            assert_eq!(case.frame_labels().len(), 2 * case.n() - 1, "{kind}");
            assert_eq!(case.frame_elements().len(), case.frame_labels().len());
        }
    }
}
