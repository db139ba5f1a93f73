//! The radial potential of the Stenzel metric.
//!
//! The Kähler potential is `f(N)` with `N = A/|B|²`. Its derivative
//! `h = f′` solves a first-order ODE that is singular at `N = 1`; the table
//! stores `h` and `h′` on a uniform grid over `[1, N_max]`.

use std::io::{Read, Write};

use crate::error::{GeometryError, Result};
use crate::scalar::Scalar;

/// Which form of the potential ODE to integrate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, serde::Serialize, serde::Deserialize)]
pub enum PotentialOde {
    /// `2N·N^{n−1} h^{2n} + 2(N−1)N^n h^{2n} h′ = 1`, seeded with `h(1) = 2^{−1/(2n)}`.
    #[default]
    TwoN,
    /// `(2N−1)N^{n−1} h^{2n} + 2(N−1)N^n h^{2n−1} h′ = 1`, seeded with `h(1) = 1`.
    ///
    /// This is the form for which `det ∂∂̄f(N) = |B|^{−2(n+1)}` holds exactly.
    TwoNMinusOne,
}

impl PotentialOde {
    pub fn name(self) -> &'static str {
        match self {
            Self::TwoN => "two-n",
            Self::TwoNMinusOne => "two-n-minus-one",
        }
    }

    /// Coefficient of `h^{2n}` in the non-derivative term.
    fn lead<T: Scalar>(self, n: usize, big_n: T) -> T {
        let pow = big_n.powi(n as i32 - 1);
        match self {
            Self::TwoN => T::lit(2.0) * big_n * pow,
            Self::TwoNMinusOne => (T::lit(2.0) * big_n - T::one()) * pow,
        }
    }

    /// Power of `h` multiplying `h′`.
    fn derivative_power(self, n: usize) -> i32 {
        match self {
            Self::TwoN => 2 * n as i32,
            Self::TwoNMinusOne => 2 * n as i32 - 1,
        }
    }

    /// `lhs − 1` of the ODE at `(N, h, h′)`.
    pub fn residual<T: Scalar>(self, n: usize, big_n: T, h: T, hp: T) -> T {
        let x = big_n - T::one();
        let h2n = h.powi(2 * n as i32);
        self.lead(n, big_n) * h2n
            + T::lit(2.0) * x * big_n.powi(n as i32) * h.powi(self.derivative_power(n)) * hp
            - T::one()
    }

    /// `h′` solved from the ODE; valid for `N > 1`.
    pub fn rhs<T: Scalar>(self, n: usize, big_n: T, h: T) -> T {
        let x = big_n - T::one();
        let h2n = h.powi(2 * n as i32);
        (T::one() - self.lead(n, big_n) * h2n)
            / (T::lit(2.0) * x * big_n.powi(n as i32) * h.powi(self.derivative_power(n)))
    }

    /// Regular value `h(1)` and slope `h′(1)` of the solution that stays smooth at `N = 1`.
    pub fn seed<T: Scalar>(self, n: usize) -> (T, T) {
        let nn = T::from_usize_lossy(n);
        match self {
            Self::TwoN => {
                let h0 = T::lit(2.0).powf(-T::one() / (T::lit(2.0) * nn));
                (h0, -nn * h0 / (h0 + T::lit(2.0) * nn))
            }
            Self::TwoNMinusOne => (T::one(), T::lit(-0.5)),
        }
    }
}

impl std::str::FromStr for PotentialOde {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "two-n" => Ok(Self::TwoN),
            "two-n-minus-one" => Ok(Self::TwoNMinusOne),
            other => Err(GeometryError::InvalidParameters(format!("unknown potential ODE '{other}'"))),
        }
    }
}

/// Offset from `N = 1` where numerical integration starts; the first stretch uses the series.
const SEED_OFFSET: f64 = 1e-6;

/// Tabulated `h = f′` and `h′ = f″` on a uniform grid over `[1, N_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialTable<T: Scalar> {
    n: usize,
    ode: PotentialOde,
    spacing: T,
    grid: Vec<T>,
    h: Vec<T>,
    hprime: Vec<T>,
    f: Vec<T>,
    max_residual: T,
}

impl<T: Scalar> PotentialTable<T> {
    /// Integrate the potential ODE with the default audit tolerance for `T`.
    pub fn solve(n: usize, n_max: T, step: T, ode: PotentialOde) -> Result<Self> {
        Self::solve_with_tolerance(n, n_max, step, ode, T::audit_tol())
    }

    /// Integrate by classical RK4 on a uniform grid of spacing at most `step`.
    ///
    /// Close to `N = 1` the ODE is stiff with rate of order `n/(N−1)`, so each
    /// grid cell is traversed in substeps no longer than `(N−1)/(12n)`.
    /// Integration begins at `1 + 10⁻⁶` from the first-order series.
    ///
    /// The result is audited by recomputing `h′` with five-point differences of
    /// the tabulated `h` and substituting into the ODE.
    pub fn solve_with_tolerance(n: usize, n_max: T, step: T, ode: PotentialOde, tol: T) -> Result<Self> {
        if n < 2 {
            return Err(GeometryError::InvalidParameters(format!("n must be at least 2, got {n}")));
        }
        if !(n_max > T::one()) || !n_max.is_finite() {
            return Err(GeometryError::InvalidParameters("N_max must exceed 1".into()));
        }
        if !(step > T::zero()) || !step.is_finite() {
            return Err(GeometryError::InvalidParameters("step must be positive".into()));
        }
        let span = n_max - T::one();
        let cells = (span / step).ceil().to_usize().unwrap_or(0).max(4);
        let spacing = span / T::from_usize_lossy(cells);
        let grid: Vec<T> = (0..=cells).map(|i| T::one() + spacing * T::from_usize_lossy(i)).collect();

        let (h0, slope) = ode.seed::<T>(n);
        let delta = T::lit(SEED_OFFSET).min(spacing * T::lit(0.5));
        let ratio = T::lit(12.0) * T::from_usize_lossy(n);
        let rhs = |big_n: T, h: T| ode.rhs(n, big_n, h);

        let mut h = vec![h0];
        let mut hprime = vec![slope];
        let mut x_cur = delta;
        let mut h_cur = h0 + slope * delta;
        for &node in &grid[1..=cells] {
            let x_target = node - T::one();
            while x_cur < x_target {
                let s = (x_target - x_cur).min(x_cur / ratio).min(spacing);
                let big_n = T::one() + x_cur;
                let half = s * T::lit(0.5);
                let k1 = rhs(big_n, h_cur);
                let k2 = rhs(big_n + half, h_cur + half * k1);
                let k3 = rhs(big_n + half, h_cur + half * k2);
                let k4 = rhs(big_n + s, h_cur + s * k3);
                h_cur = h_cur + s / T::lit(6.0) * (k1 + T::lit(2.0) * (k2 + k3) + k4);
                x_cur = if x_target - x_cur - s <= T::epsilon() * x_target { x_target } else { x_cur + s };
                if !(h_cur > T::zero()) || !h_cur.is_finite() {
                    return Err(GeometryError::NonPositive { at: (T::one() + x_cur).as_f64() });
                }
            }
            h.push(h_cur);
            hprime.push(rhs(node, h_cur));
        }

        let mut table = Self::assemble(n, ode, spacing, grid, h, hprime);
        table.max_residual = table.audit();
        if !(table.max_residual < tol) {
            return Err(GeometryError::StepTooLarge { residual: table.max_residual.as_f64() });
        }
        Ok(table)
    }

    /// Build a table from externally supplied samples on a uniform grid starting at `N = 1`.
    ///
    /// No residual gate is applied; [`PotentialTable::max_residual`] reports the audit.
    pub fn from_samples(n: usize, ode: PotentialOde, grid: Vec<T>, h: Vec<T>, hprime: Vec<T>) -> Result<Self> {
        let len = grid.len();
        if len < 5 {
            return Err(GeometryError::InvalidParameters("a potential table needs at least 5 samples".into()));
        }
        for v in [&h, &hprime] {
            if v.len() != len {
                return Err(GeometryError::DimensionMismatch { expected: len, found: v.len() });
            }
        }
        if (grid[0] - T::one()).abs() > T::membership_eps() {
            return Err(GeometryError::InvalidParameters("table grid must start at N = 1".into()));
        }
        let spacing = (grid[len - 1] - grid[0]) / T::from_usize_lossy(len - 1);
        let uniform = grid
            .windows(2)
            .all(|w| ((w[1] - w[0]) - spacing).abs() <= T::lit(1e-6) * spacing);
        if !(spacing > T::zero()) || !uniform {
            return Err(GeometryError::InvalidParameters("table grid must be uniform and increasing".into()));
        }
        if let Some(i) = h.iter().position(|&x| !(x > T::zero())) {
            return Err(GeometryError::NonPositive { at: grid[i].as_f64() });
        }
        let mut table = Self::assemble(n, ode, spacing, grid, h, hprime);
        table.max_residual = table.audit();
        Ok(table)
    }

    fn assemble(n: usize, ode: PotentialOde, spacing: T, grid: Vec<T>, h: Vec<T>, hprime: Vec<T>) -> Self {
        // f(1) = 0; each cell adds the exact integral of the Hermite cubic.
        let mut f = Vec::with_capacity(grid.len());
        f.push(T::zero());
        for i in 1..grid.len() {
            let cell = spacing * (h[i - 1] + h[i]) * T::lit(0.5)
                + spacing * spacing * (hprime[i - 1] - hprime[i]) / T::lit(12.0);
            f.push(f[i - 1] + cell);
        }
        Self { n, ode, spacing, grid, h, hprime, f, max_residual: T::zero() }
    }

    /// Maximum over the grid of the ODE residual with `h′` taken from
    /// fourth-order finite differences of the tabulated `h`.
    fn audit(&self) -> T {
        let d = self.finite_difference_hprime();
        (0..self.grid.len())
            .map(|i| self.ode.residual(self.n, self.grid[i], self.h[i], d[i]).abs())
            .fold(T::zero(), T::max)
    }

    /// Fourth-order finite-difference derivative of the tabulated `h`.
    pub fn finite_difference_hprime(&self) -> Vec<T> {
        let h = &self.h;
        let len = h.len();
        let c = |x: f64| T::lit(x);
        let denom = c(12.0) * self.spacing;
        let fwd0 = |k: usize, s: T| {
            s * (c(-25.0) * h[k] + c(48.0) * h[idx(k, 1, s)] - c(36.0) * h[idx(k, 2, s)]
                + c(16.0) * h[idx(k, 3, s)]
                - c(3.0) * h[idx(k, 4, s)])
        };
        let fwd1 = |k: usize, s: T| {
            s * (c(-3.0) * h[idx(k, -1, s)] - c(10.0) * h[k] + c(18.0) * h[idx(k, 1, s)]
                - c(6.0) * h[idx(k, 2, s)]
                + h[idx(k, 3, s)])
        };
        (0..len)
            .map(|i| {
                let num = if i == 0 {
                    fwd0(i, T::one())
                } else if i == 1 {
                    fwd1(i, T::one())
                } else if i == len - 1 {
                    fwd0(i, -T::one())
                } else if i == len - 2 {
                    fwd1(i, -T::one())
                } else {
                    -h[i + 2] + c(8.0) * h[i + 1] - c(8.0) * h[i - 1] + h[i - 2]
                };
                num / denom
            })
            .collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ode(&self) -> PotentialOde {
        self.ode
    }

    pub fn grid(&self) -> &[T] {
        &self.grid
    }

    pub fn h(&self) -> &[T] {
        &self.h
    }

    pub fn hprime(&self) -> &[T] {
        &self.hprime
    }

    pub fn n_max(&self) -> T {
        self.grid[self.grid.len() - 1]
    }

    pub fn spacing(&self) -> T {
        self.spacing
    }

    /// Largest audited ODE residual over the grid.
    pub fn max_residual(&self) -> T {
        self.max_residual
    }

    /// Residual of the ODE at `N` using interpolated `h` and `h′`.
    pub fn residual_at(&self, big_n: T) -> Result<T> {
        Ok(self.ode.residual(self.n, big_n, self.h_at(big_n)?, self.hprime_at(big_n)?))
    }

    fn locate(&self, big_n: T) -> Result<(usize, T)> {
        let slack = T::lit(1e-12) * self.n_max();
        if !(big_n >= T::one() - slack && big_n <= self.n_max() + slack) {
            return Err(GeometryError::OutOfTable { value: big_n.as_f64(), max: self.n_max().as_f64() });
        }
        let cells = self.grid.len() - 1;
        let pos = ((big_n - T::one()) / self.spacing).max(T::zero());
        let i = pos.floor().to_usize().unwrap_or(0).min(cells - 1);
        let u = (pos - T::from_usize_lossy(i)).max(T::zero()).min(T::one());
        Ok((i, u))
    }

    /// `f′(N)` by cubic Hermite interpolation.
    pub fn h_at(&self, big_n: T) -> Result<T> {
        let (i, u) = self.locate(big_n)?;
        let (u2, u3) = (u * u, u * u * u);
        let two = T::lit(2.0);
        let three = T::lit(3.0);
        let h00 = two * u3 - three * u2 + T::one();
        let h10 = u3 - two * u2 + u;
        let h01 = three * u2 - two * u3;
        let h11 = u3 - u2;
        let d = self.spacing;
        Ok(h00 * self.h[i] + h10 * d * self.hprime[i] + h01 * self.h[i + 1] + h11 * d * self.hprime[i + 1])
    }

    /// `f″(N)`, the derivative of the Hermite interpolant.
    pub fn hprime_at(&self, big_n: T) -> Result<T> {
        let (i, u) = self.locate(big_n)?;
        let u2 = u * u;
        let six = T::lit(6.0);
        let d00 = six * u2 - six * u;
        let d10 = T::lit(3.0) * u2 - T::lit(4.0) * u + T::one();
        let d01 = six * u - six * u2;
        let d11 = T::lit(3.0) * u2 - T::lit(2.0) * u;
        let d = self.spacing;
        Ok(d00 * self.h[i] / d + d10 * self.hprime[i] + d01 * self.h[i + 1] / d + d11 * self.hprime[i + 1])
    }

    /// `f(N) = ∫₁^N h`, integrating the Hermite interpolant exactly (`f(1) = 0`).
    pub fn f_at(&self, big_n: T) -> Result<T> {
        let (i, u) = self.locate(big_n)?;
        let (u2, u3, u4) = (u * u, u * u * u, u * u * u * u);
        let half = T::lit(0.5);
        let i00 = half * u4 - u3 + u;
        let i10 = u4 / T::lit(4.0) - T::lit(2.0) * u3 / T::lit(3.0) + half * u2;
        let i01 = u3 - half * u4;
        let i11 = u4 / T::lit(4.0) - u3 / T::lit(3.0);
        let d = self.spacing;
        let partial =
            d * (i00 * self.h[i] + i10 * d * self.hprime[i] + i01 * self.h[i + 1] + i11 * d * self.hprime[i + 1]);
        Ok(self.f[i] + partial)
    }

    /// Write `N,h,hprime` rows with shortest round-trip formatting.
    pub fn write_csv<W: Write>(&self, out: W) -> std::result::Result<(), csv::Error> {
        let mut wr = csv::Writer::from_writer(out);
        wr.write_record(["N", "h", "hprime"])?;
        for i in 0..self.grid.len() {
            wr.write_record([
                self.grid[i].as_f64().to_string(),
                self.h[i].as_f64().to_string(),
                self.hprime[i].as_f64().to_string(),
            ])?;
        }
        wr.flush()?;
        Ok(())
    }

    /// Read a table written by [`PotentialTable::write_csv`].
    pub fn read_csv<R: Read>(input: R, n: usize, ode: PotentialOde) -> std::result::Result<Self, TableIoError> {
        let mut rd = csv::Reader::from_reader(input);
        let headers = rd.headers()?.clone();
        if headers.iter().collect::<Vec<_>>() != ["N", "h", "hprime"] {
            return Err(TableIoError::Header(headers.iter().collect::<Vec<_>>().join(",")));
        }
        let (mut grid, mut h, mut hp) = (Vec::new(), Vec::new(), Vec::new());
        for rec in rd.deserialize::<(f64, f64, f64)>() {
            let (a, b, c) = rec?;
            grid.push(T::lit(a));
            h.push(T::lit(b));
            hp.push(T::lit(c));
        }
        Ok(Self::from_samples(n, ode, grid, h, hp)?)
    }
}

fn idx(k: usize, off: i64, dir: impl Scalar) -> usize {
    let signed = if dir > num_traits::Zero::zero() { off } else { -off };
    (k as i64 + signed) as usize
}

/// Failure while reading a potential table.
#[derive(Debug, thiserror::Error)]
pub enum TableIoError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("expected header N,h,hprime, found {0}")]
    Header(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
