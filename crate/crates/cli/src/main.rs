//! `slag`: solve the Stenzel potential, integrate profile curves, and run
//! verification suites and convention experiments.
//!
//! Exit codes: 0 success, 1 a check failed, 2 invalid arguments.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex;
use slag_core::slag::BdiPhase;
use slag_core::verification::{
    bdi_phase_experiment, omega_form_experiment, potential_ode_experiment, profile_form_experiment,
    volume_normalization_experiment, ExperimentReport, SuiteTolerances,
};
use slag_core::{
    integrate_profile, matched_phase, run_theorem_suite, GeometryError, PairKind, PotentialOde, PotentialTable, ProfileForm,
    SuiteConfig, SymmetricPairCase,
};

const AFTER_HELP: &str = "\
Output formats:
  potential table  CSV with header N,h,hprime
  profile curve    CSV with header s,re_tau,im_tau
  verify report    JSON {suite, case, params, psi, seed, checks: [{name, residual, tol, pass}], pass}
  experiments      JSON {experiment, case, params, seed, results: [...], supported, summary}

Complex values are written a+bi or a-bi without spaces, e.g. 0.4+0.1i.
SLAG_SEED, when set, overrides --seed.
Exit codes: 0 success, 1 a check failed, 2 invalid arguments.";

#[derive(Parser, Debug)]
#[command(name = "slag", version, about = "Special Lagrangian profile curves in the Stenzel cotangent bundle of CP^n", after_help = AFTER_HELP)]
struct Cli {
    /// Worker threads for verification sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate h = f'(N) on [1, N_max] and report the ODE residual.
    SolvePotential(SolveArgs),
    /// Integrate a profile curve and write it as CSV.
    Profile(ProfileArgs),
    /// Run the theorem suite for a case and write a JSON report.
    Verify(VerifyArgs),
    /// Run convention experiments and write JSON reports.
    Report(ReportArgs),
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// Complex dimension n of CP^n (at least 2).
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 4.0)]
    nmax: f64,
    #[arg(long, default_value_t = 1e-4)]
    step: f64,
    /// Which form of the potential ODE to solve.
    #[arg(long, value_enum, default_value_t = OdeArg::TwoN)]
    ode: OdeArg,
    /// CSV destination; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OdeArg {
    TwoN,
    TwoNMinusOne,
}

impl From<OdeArg> for PotentialOde {
    fn from(o: OdeArg) -> Self {
        match o {
            OdeArg::TwoN => PotentialOde::TwoN,
            OdeArg::TwoNMinusOne => PotentialOde::TwoNMinusOne,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum CaseName {
    #[value(name = "aiii-aiii")]
    AiiiAiii,
    Aiii,
    Bdi,
    Diii,
}

#[derive(Args, Debug, Clone)]
struct CaseArgs {
    #[arg(long = "case", value_enum)]
    case: CaseName,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
}

impl CaseArgs {
    fn kind(&self) -> Result<PairKind, String> {
        let need = |v: Option<usize>, name: &str| v.ok_or_else(|| format!("--{name} is required for this case"));
        let kind = match self.case {
            CaseName::AiiiAiii => PairKind::AiiiAiii { p: need(self.p, "p")?, q: need(self.q, "q")? },
            CaseName::Aiii => PairKind::Aiii { m: need(self.m, "m")? },
            CaseName::Bdi => PairKind::Bdi { m: need(self.m, "m")? },
            CaseName::Diii => PairKind::Diii,
        };
        kind.validate().map_err(|e| e.to_string())?;
        Ok(kind)
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormArg {
    Invariant,
    Closed,
    ClosedStated,
}

impl From<FormArg> for ProfileForm {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::Invariant => ProfileForm::Invariant,
            FormArg::Closed => ProfileForm::ClosedForm(BdiPhase::Frame),
            FormArg::ClosedStated => ProfileForm::ClosedForm(BdiPhase::Stated),
        }
    }
}

#[derive(Args, Debug)]
struct ProfileArgs {
    #[command(flatten)]
    case: CaseArgs,
    /// Phase of the ODE; defaults to the phase that keeps real starts real.
    #[arg(long, allow_hyphen_values = true)]
    psi: Option<f64>,
    /// Initial point, e.g. 0.4 or 0.4+0.1i.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    tau0: Complex<f64>,
    #[arg(long, default_value_t = 1e-3)]
    step: f64,
    #[arg(long, default_value_t = 10_000)]
    max_steps: usize,
    #[arg(long, value_enum, default_value_t = FormArg::Invariant)]
    form: FormArg,
    /// CSV destination; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    case: CaseArgs,
    /// Calibration phase tested on the surface; defaults to the curve phase.
    #[arg(long, allow_hyphen_values = true)]
    psi: Option<f64>,
    /// Phase of the profile ODE; defaults to the matched phase.
    #[arg(long, allow_hyphen_values = true)]
    curve_psi: Option<f64>,
    /// Initial point of the profile curve; defaults to 30% across the strip with imaginary part 0.05.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    tau0: Option<Complex<f64>>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-3)]
    step: f64,
    #[arg(long, default_value_t = 400)]
    max_steps: usize,
    #[arg(long, default_value_t = 20)]
    curve_points: usize,
    #[arg(long, default_value_t = 10)]
    orbit_samples: usize,
    #[arg(long, default_value_t = 1e-9)]
    tol_moment: f64,
    #[arg(long, default_value_t = 1e-8)]
    tol_im_omega: f64,
    #[arg(long, default_value_t = 1e-5)]
    tol_omega: f64,
    #[arg(long, value_enum, default_value_t = FormArg::Invariant)]
    form: FormArg,
    /// JSON destination; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Experiment {
    BdiIPower,
    OmegaDwFactor,
    PotentialOde,
    VolumeNormalization,
    ProfileForm,
    All,
}

#[derive(Args, Debug)]
struct ReportArgs {
    #[arg(long, value_enum, default_value_t = Experiment::All)]
    experiment: Experiment,
    /// Case for the case-dependent experiments (default: diii, or bdi with m = 3 for the i-power experiment).
    #[arg(long = "case", value_enum)]
    case: Option<CaseName>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random points for the determinant experiments.
    #[arg(long, default_value_t = 10)]
    points: usize,
    /// JSON destination; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parse `a`, `bi`, `a+bi` or `a-bi` (exponents allowed, no spaces).
fn parse_complex(s: &str) -> Result<Complex<f64>, String> {
    if s.contains(char::is_whitespace) {
        return Err(format!("'{s}': spaces are not allowed in complex values"));
    }
    s.parse::<Complex<f64>>().map_err(|_| format!("'{s}' is not a complex number of the form a+bi"))
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("i/o error: {e}"))
    }
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn seed_override(flag: u64) -> Result<u64, Failure> {
    match std::env::var("SLAG_SEED") {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Usage(format!("SLAG_SEED='{v}' is not an unsigned integer"))),
        Err(_) => Ok(flag),
    }
}

fn solve_potential(args: &SolveArgs) -> Result<(), Failure> {
    let ode = PotentialOde::from(args.ode);
    let table = PotentialTable::<f64>::solve_with_tolerance(args.n, args.nmax, args.step, ode, f64::INFINITY)?;
    let mut w = sink(&args.out)?;
    table.write_csv(&mut w).map_err(|e| Failure::Usage(e.to_string()))?;
    w.flush()?;
    let res = table.max_residual();
    eprintln!("h(1) = {}", table.h()[0]);
    eprintln!("max ODE residual = {res:e}");
    if res < 1e-9 {
        Ok(())
    } else {
        Err(Failure::Check(format!("ODE residual {res:e} exceeds 1e-9; reduce --step")))
    }
}

fn profile(args: &ProfileArgs) -> Result<(), Failure> {
    let kind = args.case.kind().map_err(Failure::Usage)?;
    let case = SymmetricPairCase::<f64>::new(kind)?;
    let psi = args.psi.unwrap_or_else(|| matched_phase(kind, BdiPhase::Frame));
    let curve = integrate_profile(&case, psi, args.tau0, args.step, args.max_steps, args.form.into())?;
    let mut w = sink(&args.out)?;
    curve.write_csv(&mut w).map_err(|e| Failure::Usage(e.to_string()))?;
    w.flush()?;
    eprintln!("samples: {}", curve.samples.len());
    eprintln!("halt: {}", curve.halt);
    Ok(())
}

fn verify(args: &VerifyArgs) -> Result<(), Failure> {
    let kind = args.case.kind().map_err(Failure::Usage)?;
    let mut config = SuiteConfig::new(kind);
    config.seed = seed_override(args.seed)?;
    config.tolerances = SuiteTolerances {
        moment: args.tol_moment,
        im_omega: args.tol_im_omega,
        omega: args.tol_omega,
        ..SuiteTolerances::default()
    };
    config.curve_points = args.curve_points;
    config.orbit_samples = args.orbit_samples;
    config.tau0 = args.tau0;
    config.curve_psi = args.curve_psi;
    config.step = args.step;
    config.max_steps = args.max_steps;
    config.form = args.form.into();
    let report = run_theorem_suite::<f64>(kind, args.psi, &config)?;
    let mut w = sink(&args.out)?;
    writeln!(w, "{}", report.to_json())?;
    w.flush()?;
    for c in report.checks.iter().filter(|c| !c.pass) {
        eprintln!("check failed: {} (residual {:e}, tol {:e})", c.name, c.residual, c.tol);
    }
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Check("verification failed".into()))
    }
}

fn report(args: &ReportArgs) -> Result<(), Failure> {
    let seed = seed_override(args.seed)?;
    let explicit = match args.case {
        Some(case) => Some(CaseArgs { case, p: args.p, q: args.q, m: args.m }.kind().map_err(Failure::Usage)?),
        None => None,
    };
    let general = explicit.unwrap_or(PairKind::Diii);
    let bdi_m = match explicit {
        Some(PairKind::Bdi { m }) => m,
        Some(other) if args.experiment == Experiment::BdiIPower => {
            return Err(Failure::Usage(format!("the i-power experiment needs a bdi case, got {other}")))
        }
        _ => 3,
    };
    let wanted = |e: Experiment| args.experiment == e || args.experiment == Experiment::All;
    let mut reports: Vec<ExperimentReport> = Vec::new();
    if wanted(Experiment::BdiIPower) {
        reports.push(bdi_phase_experiment::<f64>(bdi_m, seed)?);
    }
    if wanted(Experiment::OmegaDwFactor) {
        reports.push(omega_form_experiment::<f64>(general, args.points, seed)?);
    }
    if wanted(Experiment::PotentialOde) {
        reports.push(potential_ode_experiment::<f64>(general, args.points, seed)?);
    }
    if wanted(Experiment::VolumeNormalization) {
        reports.push(volume_normalization_experiment::<f64>(general, seed)?);
    }
    if wanted(Experiment::ProfileForm) {
        reports.push(profile_form_experiment::<f64>(general, seed)?);
    }
    let json = if reports.len() == 1 {
        serde_json::to_string_pretty(&reports[0])
    } else {
        serde_json::to_string_pretty(&reports)
    }
    .map_err(|e| Failure::Usage(e.to_string()))?;
    let mut w = sink(&args.out)?;
    writeln!(w, "{json}")?;
    w.flush()?;
    for r in &reports {
        eprintln!("{} ({}): supported convention {}", r.experiment, r.case, r.supported);
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::SolvePotential(a) => solve_potential(a),
        Command::Profile(a) => profile(a),
        Command::Verify(a) => verify(a),
        Command::Report(a) => report(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        builder = builder.num_threads(jobs);
    }
    let pool = match builder.build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| run(&cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::parse_complex;
    use num_complex::Complex;

    #[test]
    fn complex_flag_syntax() {
        assert_eq!(parse_complex("0.4").unwrap(), Complex::new(0.4, 0.0));
        assert_eq!(parse_complex("0.4+0.1i").unwrap(), Complex::new(0.4, 0.1));
        assert_eq!(parse_complex("0.4-0.1i").unwrap(), Complex::new(0.4, -0.1));
        assert_eq!(parse_complex("-1e-3+2e-2i").unwrap(), Complex::new(-1e-3, 2e-2));
        assert_eq!(parse_complex("2i").unwrap(), Complex::new(0.0, 2.0));
        assert!(parse_complex("0.4 + 0.1i").is_err());
        assert!(parse_complex("abc").is_err());
    }
}
