//! Dense complex vectors and matrices sized for the low-dimensional
//! geometry in this crate (at most a few dozen rows).

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{GeometryError, Result};
use crate::scalar::Scalar;

/// Fixed-length complex vector.
#[derive(Debug, Clone, PartialEq)]
pub struct CVector<T: Scalar>(Vec<Complex<T>>);

impl<T: Scalar> CVector<T> {
    pub fn new(entries: Vec<Complex<T>>) -> Self {
        debug_assert!(entries.iter().all(|c| c.re.is_finite() && c.im.is_finite()));
        Self(entries)
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![Complex::zero(); len])
    }

    pub fn basis(len: usize, k: usize) -> Self {
        let mut v = Self::zeros(len);
        v.0[k] = Complex::one();
        v
    }

    /// Real vector embedded in the complex numbers.
    pub fn from_real(entries: &[T]) -> Self {
        Self(entries.iter().map(|&x| Complex::new(x, T::zero())).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Complex<T>> {
        self.0.iter()
    }

    pub fn into_inner(self) -> Vec<Complex<T>> {
        self.0
    }

    pub fn conj(&self) -> Self {
        Self(self.0.iter().map(|c| c.conj()).collect())
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self(self.0.iter().map(|&c| c * s).collect())
    }

    pub fn scale_real(&self, s: T) -> Self {
        Self(self.0.iter().map(|&c| c * s).collect())
    }

    /// Bilinear pairing `Σ a_j b_j` (no conjugation).
    pub fn bilinear(&self, other: &Self) -> Complex<T> {
        self.0.iter().zip(&other.0).map(|(&a, &b)| a * b).sum()
    }

    /// Hermitian inner product `Σ a_j conj(b_j)`.
    pub fn hermitian(&self, other: &Self) -> Complex<T> {
        self.0.iter().zip(&other.0).map(|(&a, &b)| a * b.conj()).sum()
    }

    pub fn norm_sqr(&self) -> T {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.0.iter().map(|c| c.norm()).fold(T::zero(), T::max)
    }

    /// `self + s * other`.
    pub fn axpy(&self, s: Complex<T>, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(&a, &b)| a + s * b).collect())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(Complex<T>) -> Complex<U>) -> CVector<U> {
        CVector(self.0.iter().map(|&c| f(c)).collect())
    }
}

impl<T: Scalar> Index<usize> for CVector<T> {
    type Output = Complex<T>;
    fn index(&self, i: usize) -> &Complex<T> {
        &self.0[i]
    }
}

impl<T: Scalar> IndexMut<usize> for CVector<T> {
    fn index_mut(&mut self, i: usize) -> &mut Complex<T> {
        &mut self.0[i]
    }
}

impl<T: Scalar> Add for &CVector<T> {
    type Output = CVector<T>;
    fn add(self, rhs: Self) -> CVector<T> {
        assert_eq!(self.len(), rhs.len());
        CVector(self.0.iter().zip(&rhs.0).map(|(&a, &b)| a + b).collect())
    }
}

impl<T: Scalar> Sub for &CVector<T> {
    type Output = CVector<T>;
    fn sub(self, rhs: Self) -> CVector<T> {
        assert_eq!(self.len(), rhs.len());
        CVector(self.0.iter().zip(&rhs.0).map(|(&a, &b)| a - b).collect())
    }
}

impl<T: Scalar> Neg for &CVector<T> {
    type Output = CVector<T>;
    fn neg(self) -> CVector<T> {
        CVector(self.0.iter().map(|&a| -a).collect())
    }
}

impl<T: Scalar> From<Vec<Complex<T>>> for CVector<T> {
    fn from(v: Vec<Complex<T>>) -> Self {
        Self::new(v)
    }
}

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Scalar> CMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<Complex<T>>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.concat() }
    }

    /// Build from column vectors.
    pub fn from_columns(cols: &[CVector<T>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, CVector::len);
        Self::from_fn(r, c, |i, j| cols[j][i])
    }

    pub fn diagonal(entries: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &d) in entries.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, j: usize) -> CVector<T> {
        CVector((0..self.rows).map(|i| self[(i, j)]).collect())
    }

    pub fn set_column(&mut self, j: usize, v: &CVector<T>) {
        for i in 0..self.rows {
            self[(i, j)] = v[i];
        }
    }

    /// Copy `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &CMatrix<T>) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)];
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> CMatrix<T> {
        Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)])
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|c| c.conj()).collect() }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&c| c * s).collect() }
    }

    pub fn scale_real(&self, s: T) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&c| c * s).collect() }
    }

    pub fn mul_vec(&self, v: &CVector<T>) -> CVector<T> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        CVector(
            (0..self.rows)
                .map(|i| {
                    let row = &self.data[i * self.cols..(i + 1) * self.cols];
                    row.iter().zip(v.iter()).map(|(&a, &b)| a * b).sum()
                })
                .collect(),
        )
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] = out.data[i * rhs.cols + j] + a * rhs[(k, j)];
                }
            }
        }
        out
    }

    /// `[self, rhs] = self·rhs − rhs·self`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        &self.matmul(rhs) - &rhs.matmul(self)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.data.iter().map(|c| c.norm()).fold(T::zero(), T::max)
    }

    pub fn frobenius(&self) -> T {
        self.data.iter().map(|c| c.norm_sqr()).sum::<T>().sqrt()
    }

    /// Maximum absolute row sum, an upper bound for the spectral norm.
    pub fn norm_inf(&self) -> T {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].norm()).sum::<T>())
            .fold(T::zero(), T::max)
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    /// LU factorization with partial pivoting: packed factors, row permutation,
    /// permutation parity, and whether an exactly zero pivot was met.
    fn lu(&self) -> (Self, Vec<usize>, bool, bool) {
        assert!(self.is_square(), "LU of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut odd = false;
        let mut singular = false;
        for k in 0..n {
            let (piv, best) = (k..n)
                .map(|i| (i, a[(i, k)].norm()))
                .fold((k, -T::one()), |acc, x| if x.1 > acc.1 { x } else { acc });
            if best <= T::zero() {
                singular = true;
                continue;
            }
            if piv != k {
                for j in 0..n {
                    a.data.swap(k * n + j, piv * n + j);
                }
                perm.swap(k, piv);
                odd = !odd;
            }
            let pivot = a[(k, k)];
            for i in k + 1..n {
                let f = a[(i, k)] / pivot;
                a[(i, k)] = f;
                if f.is_zero() {
                    continue;
                }
                for j in k + 1..n {
                    let u = a[(k, j)];
                    a[(i, j)] = a[(i, j)] - f * u;
                }
            }
        }
        (a, perm, odd, singular)
    }

    /// Determinant via LU with partial pivoting.
    pub fn det(&self) -> Complex<T> {
        if self.rows == 0 {
            return Complex::one();
        }
        let (lu, _, odd, singular) = self.lu();
        if singular {
            return Complex::zero();
        }
        let d: Complex<T> = (0..self.rows).map(|i| lu[(i, i)]).fold(Complex::one(), |acc, x| acc * x);
        if odd {
            -d
        } else {
            d
        }
    }

    /// Solve `self · X = rhs` for square, nonsingular `self`.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        let n = self.rows;
        if rhs.rows != n {
            return Err(GeometryError::DimensionMismatch { expected: n, found: rhs.rows });
        }
        let (lu, perm, _, singular) = self.lu();
        if singular {
            return Err(GeometryError::InvalidParameters("singular linear system".into()));
        }
        let mut x = Self::zeros(n, rhs.cols);
        for c in 0..rhs.cols {
            let mut y: Vec<Complex<T>> = perm.iter().map(|&p| rhs[(p, c)]).collect();
            for i in 0..n {
                for k in 0..i {
                    let l = lu[(i, k)];
                    y[i] = y[i] - l * y[k];
                }
            }
            for i in (0..n).rev() {
                for k in i + 1..n {
                    let u = lu[(i, k)];
                    y[i] = y[i] - u * y[k];
                }
                y[i] = y[i] / lu[(i, i)];
            }
            for i in 0..n {
                x[(i, c)] = y[i];
            }
        }
        Ok(x)
    }

    /// Matrix exponential by scaling and squaring with a diagonal Padé(6) approximant.
    pub fn exp(&self) -> Self {
        assert!(self.is_square(), "exponential of a non-square matrix");
        let n = self.rows;
        let norm = self.norm_inf();
        let mut s = 0i32;
        if norm > T::lit(0.5) {
            s = (norm / T::lit(0.5)).log2().ceil().to_i32().unwrap_or(0).max(0);
        }
        let a = self.scale_real(T::lit(2.0).powi(-s));
        // Padé(6,6) coefficients c_k = (12-k)! 6! / (12! k! (6-k)!)
        const C: [f64; 7] = [
            1.0,
            0.5,
            5.0 / 44.0,
            1.0 / 66.0,
            1.0 / 792.0,
            1.0 / 15840.0,
            1.0 / 665280.0,
        ];
        let id = Self::identity(n);
        let mut pow = id.clone();
        let mut num = id.clone();
        let mut den = id;
        for (k, &ck) in C.iter().enumerate().skip(1) {
            pow = pow.matmul(&a);
            let term = pow.scale_real(T::lit(ck));
            num = &num + &term;
            den = if k % 2 == 0 { &den + &term } else { &den - &term };
        }
        let mut e = den.solve(&num).expect("Padé denominator is nonsingular for scaled input");
        for _ in 0..s {
            e = e.matmul(&e);
        }
        e
    }

    /// Real `2r × 2c` matrix `[[Re, −Im], [Im, Re]]` representing the
    /// complex matrix as a real-linear map on `R^{2c}`.
    pub fn realify(&self) -> Vec<Vec<T>> {
        let (r, c) = (self.rows, self.cols);
        let mut out = vec![vec![T::zero(); 2 * c]; 2 * r];
        for i in 0..r {
            for j in 0..c {
                let z = self[(i, j)];
                out[i][j] = z.re;
                out[i][j + c] = -z.im;
                out[i + r][j] = z.im;
                out[i + r][j + c] = z.re;
            }
        }
        out
    }
}

impl<T: Scalar> Index<(usize, usize)> for CMatrix<T> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T: Scalar> IndexMut<(usize, usize)> for CMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Add for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn add(self, rhs: Self) -> CMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl<T: Scalar> Sub for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn sub(self, rhs: Self) -> CMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a - b).collect(),
        }
    }
}

impl<T: Scalar> Mul for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn mul(self, rhs: Self) -> CMatrix<T> {
        self.matmul(rhs)
    }
}

/// Singular values of a real matrix (given as rows) by one-sided Jacobi
/// rotations, sorted in decreasing order.
pub fn singular_values<T: Scalar>(rows: &[Vec<T>]) -> Vec<T> {
    let m = rows.len();
    if m == 0 {
        return Vec::new();
    }
    let n = rows[0].len();
    // Work on columns of A (or A^T when wide) so that rotations act on the short side.
    let (r, c) = if m >= n { (m, n) } else { (n, m) };
    let mut cols: Vec<Vec<T>> = (0..c)
        .map(|j| (0..r).map(|i| if m >= n { rows[i][j] } else { rows[j][i] }).collect())
        .collect();
    let tol = T::epsilon() * T::lit(10.0);
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..c {
            for q in p + 1..c {
                let alpha: T = cols[p].iter().map(|&x| x * x).sum();
                let beta: T = cols[q].iter().map(|&x| x * x).sum();
                let gamma: T = cols[p].iter().zip(&cols[q]).map(|(&x, &y)| x * y).sum();
                if gamma.abs() <= tol * (alpha * beta).sqrt() || gamma == T::zero() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (T::lit(2.0) * gamma);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let cs = T::one() / (T::one() + t * t).sqrt();
                let sn = cs * t;
                let (head, tail) = cols.split_at_mut(q);
                for (x, y) in head[p].iter_mut().zip(tail[0].iter_mut()) {
                    let (a, b) = (*x, *y);
                    *x = cs * a - sn * b;
                    *y = sn * a + cs * b;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<T> = cols.iter().map(|col| col.iter().map(|&x| x * x).sum::<T>().sqrt()).collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    sv
}

/// Numerical rank: singular values above `rel_tol × σ_max`.
pub fn numerical_rank<T: Scalar>(rows: &[Vec<T>], rel_tol: T) -> usize {
    let sv = singular_values(rows);
    let top = sv.first().copied().unwrap_or_else(T::zero);
    if top <= T::zero() {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * top).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn det_of_small_matrices() {
        let m = CMatrix::from_rows(&[vec![c(1.0, 0.0), c(2.0, 0.0)], vec![c(3.0, 0.0), c(4.0, 0.0)]]);
        assert!((m.det() - c(-2.0, 0.0)).norm() < 1e-14);
        let m = CMatrix::from_rows(&[vec![c(0.0, 1.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 1.0)]]);
        // i·i − 1 = −2
        assert!((m.det() - c(-2.0, 0.0)).norm() < 1e-14);
        let z = CMatrix::<f64>::zeros(3, 3);
        assert_eq!(z.det(), c(0.0, 0.0));
    }

    #[test]
    fn det_matches_permutation_expansion() {
        // 3x3 Leibniz formula as an independent oracle.
        let m = CMatrix::from_fn(3, 3, |i, j| c((i * 3 + j) as f64 * 0.7 - 1.0, (i as f64 - j as f64).sin()));
        let perms = [([0, 1, 2], 1.0), ([1, 2, 0], 1.0), ([2, 0, 1], 1.0), ([0, 2, 1], -1.0), ([2, 1, 0], -1.0), ([1, 0, 2], -1.0)];
        let leibniz: Complex<f64> =
            perms.iter().map(|(p, s)| m[(0, p[0])] * m[(1, p[1])] * m[(2, p[2])] * *s).sum();
        assert!((m.det() - leibniz).norm() < 1e-12);
    }

    #[test]
    fn exp_of_rotation_generator() {
        let t = 2.7;
        let g = CMatrix::from_rows(&[vec![c(0.0, 0.0), c(-t, 0.0)], vec![c(t, 0.0), c(0.0, 0.0)]]);
        let e = g.exp();
        assert!((e[(0, 0)] - c(t.cos(), 0.0)).norm() < 1e-13);
        assert!((e[(1, 0)] - c(t.sin(), 0.0)).norm() < 1e-13);
        let d = CMatrix::diagonal(&[c(0.0, 3.0), c(1.5, 0.0)]).exp();
        assert!((d[(0, 0)] - c(0.0, 3.0).exp()).norm() < 1e-13);
        assert!((d[(1, 1)] - c(1.5f64.exp(), 0.0)).norm() < 1e-12);
    }

    #[test]
    fn solve_recovers_rhs() {
        let a = CMatrix::from_fn(4, 4, |i, j| c(if i == j { 3.0 } else { 0.3 * (i + j) as f64 }, 0.1 * i as f64));
        let b = CMatrix::from_fn(4, 2, |i, j| c(i as f64, j as f64));
        let x = a.solve(&b).unwrap();
        assert!((&a.matmul(&x) - &b).max_abs() < 1e-12);
    }

    #[test]
    fn singular_values_of_diagonal_and_rank() {
        let rows: Vec<Vec<f64>> = vec![vec![3.0, 0.0, 0.0], vec![0.0, -2.0, 0.0], vec![0.0, 0.0, 0.0], vec![0.0, 0.0, 0.0]];
        let sv = singular_values(&rows);
        assert!((sv[0] - 3.0).abs() < 1e-14 && (sv[1] - 2.0).abs() < 1e-14 && sv[2].abs() < 1e-14);
        assert_eq!(numerical_rank(&rows, 1e-8), 2);
        let wide = vec![vec![1.0, 1.0, 0.0], vec![1.0, 1.0, 0.0]];
        assert_eq!(numerical_rank(&wide, 1e-8), 1);
    }

    #[test]
    fn realify_preserves_products() {
        let a = CMatrix::from_fn(2, 2, |i, j| c(i as f64 + 0.5, j as f64 - 0.3));
        let v = CVector::new(vec![c(0.2, -1.0), c(1.1, 0.4)]);
        let av = a.mul_vec(&v);
        let r = a.realify();
        let x = [v[0].re, v[1].re, v[0].im, v[1].im];
        for i in 0..2 {
            let re: f64 = (0..4).map(|k| r[i][k] * x[k]).sum();
            let im: f64 = (0..4).map(|k| r[i + 2][k] * x[k]).sum();
            assert!((re - av[i].re).abs() < 1e-14 && (im - av[i].im).abs() < 1e-14);
        }
    }
}
