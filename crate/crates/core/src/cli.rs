//! Command-line front end: eigenvalue tables, closed-form solve, figure CSV
//! emission, ratio curves, the ODE oracle check, precision comparison, and
//! series statistics.
//!
//! Exit codes: 0 success, 2 usage, 3 solver/computation, 4 format,
//! 5 oracle threshold exceeded.

use clap::{Args, Parser, Subcommand};
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use crate::basis;
use crate::eigenvalues::EigenTable;
use crate::error::Error;
use crate::evaluator::{self, EvaluationGrid};
use crate::initial_data::{self, CoeffSource, SpectralCoeffs};
use crate::kernel::KernelSpec;
use crate::oracle::{self, Stepper};
use crate::solver::{solve, SolutionSeries, SolverOptions};

#[derive(Parser)]
#[command(
    name = "boltzspect",
    about = "Closed-form spectral solver for the non-cutoff radially symmetric homogeneous Boltzmann equation (Maxwellian molecules)",
    long_about = "Computes exact linear/nonlinear eigenvalue tables, the closed-form \
spectral coefficients g_n(t) = e^(-lambda_n t)(G_n + h_n(t)), physical-space \
reconstructions and diagnostics, and validates everything against an \
independent Runge-Kutta integration of the truncated coefficient system.\n\n\
Reference outputs: `eigen` reproduces the eigenvalue tables; `solve` + `eval` \
produce the initial-data, norm/ratio, surface and correction curves \
(fig3/fig4/fig5/fig7/fig8 CSV files); `stats` prints the term-count growth; \
`compare-precision` reruns the pipeline at two precisions; `oracle` checks \
the closed form against the ODE integration."
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write lambda.csv and mu.csv eigenvalue tables
    Eigen(EigenArgs),
    /// Solve the closed-form hierarchy and write a series file
    Solve(SolveArgs),
    /// Evaluate a series file into figure CSVs
    Eval(EvalArgs),
    /// Write the nonlinear/linear ratio curve of a series
    Ratio(RatioArgs),
    /// Integrate the truncated ODE system and compare with the closed form
    Oracle(OracleArgs),
    /// Rerun the pipeline at two precisions and report the drift
    #[command(name = "compare-precision")]
    ComparePrecision(CompareArgs),
    /// Print term counts and sup bounds of a series
    Stats(StatsArgs),
}

#[derive(Args)]
struct EigenArgs {
    #[arg(long = "n-max", default_value_t = 20)]
    n_max: u32,
    #[arg(long, default_value_t = 10)]
    digits: u32,
    /// Kernel: "exact" (sin^-2) or "power-law"
    #[arg(long, default_value = "exact")]
    kernel: String,
    /// Singularity exponent for the power-law kernel
    #[arg(long)]
    s: Option<f64>,
    /// Quadrature tolerance for kernels without closed forms
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct SolveArgs {
    /// Initial data: bigauss | measure | eps:<e> | coeffs:<path.csv>
    #[arg(long)]
    init: String,
    #[arg(long = "N", default_value_t = 20)]
    n: usize,
    #[arg(long, default_value_t = 30)]
    digits: u32,
    /// Drop coefficients below this magnitude (0 keeps all terms)
    #[arg(long, default_value_t = 0.0)]
    prune: f64,
    /// Output series file
    #[arg(long, default_value = "series.json")]
    out: PathBuf,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    series: PathBuf,
    /// Output directory for the figure CSVs
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long = "t-max", default_value_t = 2.0)]
    t_max: f64,
    #[arg(long = "t-step", default_value_t = 0.08)]
    t_step: f64,
    #[arg(long = "v-max", default_value_t = 5.0)]
    v_max: f64,
    #[arg(long = "v-step", default_value_t = 0.125)]
    v_step: f64,
}

#[derive(Args)]
struct RatioArgs {
    #[arg(long)]
    series: PathBuf,
    #[arg(long, default_value = "ratio.csv")]
    out: PathBuf,
    #[arg(long = "t-max", default_value_t = 2.0)]
    t_max: f64,
    #[arg(long = "t-step", default_value_t = 0.08)]
    t_step: f64,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    init: String,
    #[arg(long = "N", default_value_t = 12)]
    n: usize,
    #[arg(long = "t-end", default_value_t = 2.0)]
    t_end: f64,
    /// Fixed RK4 step (ignored with --stepper rk45)
    #[arg(long, default_value_t = 1e-4)]
    step: f64,
    /// Compare only from this time onward
    #[arg(long = "t-start", default_value_t = 0.0)]
    t_start: f64,
    #[arg(long, default_value_t = 1e-7)]
    threshold: f64,
    /// rk4 | rk45
    #[arg(long, default_value = "rk4")]
    stepper: String,
    #[arg(long, default_value_t = 30)]
    digits: u32,
    /// Grid spacing for the comparison records
    #[arg(long = "record-dt", default_value_t = 0.05)]
    record_dt: f64,
    /// Optional CSV dump of the numerical trajectory
    #[arg(long)]
    dump: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long)]
    init: String,
    #[arg(long = "N", default_value_t = 20)]
    n: usize,
    #[arg(long)]
    p1: u32,
    #[arg(long)]
    p2: u32,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long)]
    series: PathBuf,
}

/// Parse and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // help/version are successful exits; real parse errors are usage errors
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Eigen(a) => cmd_eigen(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Eval(a) => cmd_eval(a),
        Command::Ratio(a) => cmd_ratio(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::ComparePrecision(a) => cmd_compare_precision(a),
        Command::Stats(a) => cmd_stats(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Usage(_) => 2,
        Error::Format(_) => 4,
        Error::Io(_) => 4,
        _ => 3,
    }
}

type CmdResult = Result<i32, Error>;

fn parse_kernel(name: &str, s: Option<f64>, _tol: f64) -> Result<KernelSpec, Error> {
    match name {
        "exact" | "exact_inv_sin_sq" | "sin-2" => Ok(KernelSpec::ExactInverseSinSq),
        "power-law" | "power_law" => {
            let s = s.ok_or_else(|| Error::Usage("power-law kernel needs --s".into()))?;
            KernelSpec::power_law(s)
        }
        other => Err(Error::Usage(format!("unknown kernel {other:?}"))),
    }
}

fn build_init(init: &str, n_max: usize, digits: u32) -> Result<SpectralCoeffs, Error> {
    if init == "bigauss" {
        let (coeffs, _) = initial_data::project_function_data(initial_data::bi_gaussian, n_max, digits)?;
        Ok(coeffs)
    } else if init == "measure" {
        initial_data::measure_coeffs(n_max, digits)
    } else if let Some(e) = init.strip_prefix("eps:") {
        let eps: f64 = e
            .parse()
            .map_err(|_| Error::Usage(format!("bad eps value {e:?}")))?;
        initial_data::eps_coeffs(n_max, eps, digits)
    } else if let Some(path) = init.strip_prefix("coeffs:") {
        let f = fs::File::open(path)?;
        let coeffs = SpectralCoeffs::read_csv(std::io::BufReader::new(f), digits)?;
        if coeffs.len() < n_max + 1 {
            return Err(Error::Usage(format!(
                "coefficient file has {} entries, need {}",
                coeffs.len(),
                n_max + 1
            )));
        }
        Ok(coeffs)
    } else {
        Err(Error::Usage(format!(
            "unknown initial data {init:?} (expected bigauss | measure | eps:<e> | coeffs:<path>)"
        )))
    }
}

fn cmd_eigen(a: EigenArgs) -> CmdResult {
    let kernel = parse_kernel(&a.kernel, a.s, a.tol)?;
    let table = EigenTable::build_with_tol(a.n_max, kernel, a.digits, a.tol)?;
    fs::create_dir_all(&a.out)?;
    let mut lam = fs::File::create(a.out.join("lambda.csv"))?;
    table.write_lambda_csv(&mut lam)?;
    let mut mu = fs::File::create(a.out.join("mu.csv"))?;
    table.write_mu_csv(&mut mu)?;
    println!(
        "wrote {} and {}",
        a.out.join("lambda.csv").display(),
        a.out.join("mu.csv").display()
    );
    Ok(0)
}

fn cmd_solve(a: SolveArgs) -> CmdResult {
    if a.n < 4 {
        return Err(Error::Usage(format!("--N {} must be at least 4", a.n)));
    }
    if a.digits < 10 {
        return Err(Error::Usage(format!("--digits {} must be at least 10", a.digits)));
    }
    let started = Instant::now();
    let eigen = EigenTable::build(a.n as u32, KernelSpec::ExactInverseSinSq, a.digits)?;
    let coeffs = build_init(&a.init, a.n, a.digits)?;
    let series = solve(
        &coeffs,
        &eigen,
        a.n,
        SolverOptions { digits: a.digits, prune_threshold: a.prune },
    )?;
    series.save(&a.out)?;
    let elapsed = started.elapsed();
    println!("n,terms");
    for n in 4..=a.n {
        println!("{n},{}", series.h(n).term_count());
    }
    println!("solved N={} at {} digits in {:.3}s -> {}", a.n, a.digits, elapsed.as_secs_f64(), a.out.display());
    Ok(0)
}

fn figure_grid(a: &EvalArgs) -> Result<EvaluationGrid, Error> {
    if !(a.t_step > 0.0) || !(a.v_step > 0.0) || a.t_max < 0.0 || a.v_max < 0.0
        || a.t_max < a.t_step || a.v_max < a.v_step
    {
        return Err(Error::Usage(format!(
            "empty or invalid grid: t to {} step {}, v to {} step {}",
            a.t_max, a.t_step, a.v_max, a.v_step
        )));
    }
    EvaluationGrid::new(
        evaluator::linspace_step(0.0, a.t_max, a.t_step),
        evaluator::linspace_step(0.0, a.v_max, a.v_step),
    )
}

fn cmd_eval(a: EvalArgs) -> CmdResult {
    let series = SolutionSeries::load(&a.series)?;
    let grid = figure_grid(&a)?;
    fs::create_dir_all(&a.out)?;
    let digits = series.digits() as usize;
    let eigen = EigenTable::build(
        series.n_max() as u32,
        series.kernel().clone(),
        series.digits(),
    )?;

    let initial_path = a.out.join("fig3_initial.csv");
    let mut w = fs::File::create(&initial_path)?;
    write_initial_by_source(&mut w, &series, &grid)?;

    let mut w = fs::File::create(a.out.join("fig4_norms.csv"))?;
    evaluator::write_norms_csv(&mut w, &series, &eigen, &grid.times, digits)?;

    let mut w = fs::File::create(a.out.join("fig5_surface.csv"))?;
    evaluator::write_surface_csv(&mut w, &series, &grid, digits)?;

    let mut w = fs::File::create(a.out.join("fig7_hn.csv"))?;
    evaluator::write_hn_csv(&mut w, &series, &grid.times, digits)?;

    if matches!(series.coeffs().source(), CoeffSource::MeasureClosedForm) {
        let mut w = fs::File::create(a.out.join("fig8_measure.csv"))?;
        evaluator::write_initial_csv(
            &mut w,
            "F_reg",
            initial_data::measure_regular_part,
            series.coeffs(),
            &grid.speeds,
            digits,
        )?;
    }
    println!("wrote figure CSVs to {}", a.out.display());
    Ok(0)
}

/// The reference profile of the initial-data CSV depends on provenance:
/// the regular part for the measure datum, the explicit Gaussian blend for
/// the eps family, the rescaled built-in bi-Gaussian for projected data, and
/// the highest reconstruction for user-supplied coefficients.
fn write_initial_by_source(
    w: &mut impl std::io::Write,
    series: &SolutionSeries,
    grid: &EvaluationGrid,
) -> Result<(), Error> {
    let digits = series.digits() as usize;
    let coeffs = series.coeffs();
    match coeffs.source() {
        CoeffSource::MeasureClosedForm => evaluator::write_initial_csv(
            w,
            "F_reg",
            initial_data::measure_regular_part,
            coeffs,
            &grid.speeds,
            digits,
        ),
        CoeffSource::EpsApprox(eps) => {
            let g = initial_data::eps_g_function(*eps);
            evaluator::write_initial_csv(
                w,
                "F",
                move |v| basis::maxwellian(v) + basis::sqrt_maxwellian(v) * g(v),
                coeffs,
                &grid.speeds,
                digits,
            )
        }
        CoeffSource::Projected => {
            let params = initial_data::rescale_params(
                crate::quadrature::radial_integral(initial_data::bi_gaussian, 20.0, 400),
                crate::quadrature::radial_integral(
                    |r| r * r * initial_data::bi_gaussian(r),
                    20.0,
                    400,
                ),
            )?;
            evaluator::write_initial_csv(
                w,
                "F",
                move |v| params.alpha * initial_data::bi_gaussian(params.beta * v),
                coeffs,
                &grid.speeds,
                digits,
            )
        }
        CoeffSource::UserSupplied => {
            let table = basis::BasisFunctionTable::new(coeffs.n_max());
            let g = coeffs.values_f64();
            let n_max = coeffs.n_max();
            evaluator::write_initial_csv(
                w,
                "F",
                move |v| {
                    let row = table.phi_row(v);
                    let s: f64 = (2..=n_max).map(|n| g[n] * row[n]).sum();
                    basis::maxwellian(v) + basis::sqrt_maxwellian(v) * s
                },
                coeffs,
                &grid.speeds,
                digits,
            )
        }
    }
}

fn cmd_ratio(a: RatioArgs) -> CmdResult {
    let series = SolutionSeries::load(&a.series)?;
    if !(a.t_step > 0.0) || a.t_max < a.t_step {
        return Err(Error::Usage("empty ratio grid".into()));
    }
    let eigen = EigenTable::build(
        series.n_max() as u32,
        series.kernel().clone(),
        series.digits(),
    )?;
    let times = evaluator::linspace_step(0.0, a.t_max, a.t_step);
    let mut w = fs::File::create(&a.out)?;
    writeln!(w, "t,R_{},R_tilde", series.n_max())?;
    for &t in &times {
        let point = evaluator::ratio(&series, &eigen, t)?;
        writeln!(w, "{:.6e},{:.12e},{:.12e}", t, point.ratio, point.two_mode)?;
    }
    println!("wrote {}", a.out.display());
    Ok(0)
}

fn cmd_oracle(a: OracleArgs) -> CmdResult {
    if a.n > 24 {
        return Err(Error::Usage(format!(
            "--N {} beyond the supported oracle range (24)",
            a.n
        )));
    }
    let eigen = EigenTable::build(a.n as u32, KernelSpec::ExactInverseSinSq, a.digits)?;
    let coeffs = build_init(&a.init, a.n, a.digits)?;
    let series = solve(&coeffs, &eigen, a.n, SolverOptions::with_digits(a.digits))?;
    let stepper = match a.stepper.as_str() {
        "rk4" => Stepper::Rk4 { step: a.step },
        "rk45" => Stepper::Rk45 { tol: a.threshold * 1e-3 },
        other => return Err(Error::Usage(format!("unknown stepper {other:?}"))),
    };
    let run = oracle::integrate(&coeffs, &eigen, a.n, a.t_end, a.record_dt, stepper)?;
    if let Some(path) = &a.dump {
        let mut w = fs::File::create(path)?;
        oracle::write_run_csv(&mut w, &run, a.digits as usize)?;
    }
    let report = oracle::compare(&run, &series, a.t_start)?;
    println!("n,max_deviation");
    for (n, d) in report.per_mode.iter().enumerate() {
        println!("{n},{d:.3e}");
    }
    println!("max deviation {:.3e} (threshold {:.3e})", report.max, a.threshold);
    if report.max > a.threshold {
        eprintln!("oracle deviation exceeds threshold");
        return Ok(5);
    }
    Ok(0)
}

fn cmd_compare_precision(a: CompareArgs) -> CmdResult {
    if a.p1 >= a.p2 {
        return Err(Error::Usage(format!("need p1 < p2, got {} and {}", a.p1, a.p2)));
    }
    let digits = a.p2.max(30);
    let eigen = EigenTable::build(a.n as u32, KernelSpec::ExactInverseSinSq, digits)?;
    let coeffs = build_init(&a.init, a.n, digits)?;
    let grid = EvaluationGrid::new(
        evaluator::linspace_step(0.0, 2.0, 0.25),
        evaluator::linspace_step(0.0, 5.0, 0.5),
    )?;
    let err = evaluator::precision_compare(&coeffs, &eigen, a.n, a.p1, a.p2, &grid)?;
    println!("relative sup-norm difference ({}, {}): {err:.6e}", a.p1, a.p2);
    Ok(0)
}

fn cmd_stats(a: StatsArgs) -> CmdResult {
    let series = SolutionSeries::load(&a.series)?;
    let p = series.precision();
    println!("n,terms,sup_bound");
    for n in 4..=series.n_max() {
        let st = series.h(n).stats(p);
        println!("{n},{},{:.6e}", st.term_count, st.sup_bound);
    }
    Ok(0)
}

/// Names of all registered subcommands.
pub fn subcommand_names() -> Vec<String> {
    use clap::CommandFactory;
    Cli::command()
        .get_subcommands()
        .map(|c| c.get_name().to_string())
        .collect()
}
