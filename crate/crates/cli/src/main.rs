use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use schwarzian_cli::suites::check_perturb;
use schwarzian_cli::{all_passed, emit_report, run_suites, Config, Format, Suite};
use schwarzian_core::algebra::{int, rat, RatFunc, RatMat};
use schwarzian_core::mass_spring::{integrate_system, two_mass_stiffness, SpringSystem};
use schwarzian_core::modular::{delta, eisenstein, DeltaMethod};
use schwarzian_core::random::DEFAULT_SEED;

const USAGE_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "schwarz", version, about = "Exact verification of matrix Schwarzian identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and print one record per check.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// q-series truncation order.
        #[arg(long, default_value_t = 64)]
        order: usize,
        /// Random instances per randomized law.
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Integrator step for numeric suites.
        #[arg(long, default_value_t = 0.001)]
        step: f64,
        #[arg(long, value_enum, hide = true, value_parser = parse_perturb)]
        perturb: Option<Suite>,
    },
    /// Print q-expansion coefficients.
    Series {
        #[arg(value_enum)]
        kind: SeriesKind,
        #[arg(long)]
        weight: Option<u32>,
        #[arg(long, default_value_t = 64)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Method::Product)]
        method: Method,
    },
    /// Write a sample trajectory as CSV.
    Trajectory {
        #[arg(value_enum)]
        system: System,
        #[arg(long, default_value_t = 10.0)]
        t1: f64,
        #[arg(long, default_value_t = 0.001)]
        step: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesKind {
    Eisenstein,
    Delta,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Product,
    Eisenstein,
}

#[derive(Clone, Copy, ValueEnum)]
enum System {
    /// psi'' = -psi from psi = 1, psi' = 0.
    Unit,
    /// Two masses, k1 = k2 = 1, from psi = (1, 0), psi' = (0, 1/2).
    TwoMass,
    /// psi'' = -psi'/10 - psi from psi = 1, psi' = 0.
    Damped,
}

fn parse_perturb(s: &str) -> Result<Suite, String> {
    let suite = Suite::from_str(s, true)?;
    check_perturb(suite).map_err(|e| e.to_string())
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(USAGE_ERROR)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let mut stdout = std::io::stdout().lock();
    match cli.command {
        Command::Verify {
            suite,
            order,
            trials,
            seed,
            format,
            step,
            perturb,
        } => {
            if !(step > 0.0 && step.is_finite()) {
                return usage(format!("--step must be positive, got {step}"));
            }
            let cfg = Config {
                order,
                trials,
                seed,
                step,
                perturb,
            };
            let reports = match run_suites(&[suite], &cfg) {
                Ok(r) => r,
                Err(e) => return usage(e),
            };
            let _ = stdout.write_all(emit_report(&reports, format).as_bytes());
            if all_passed(&reports) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Series {
            kind,
            weight,
            order,
            method,
        } => {
            let series = match (kind, weight) {
                (SeriesKind::Eisenstein, Some(k)) => eisenstein(k, order),
                (SeriesKind::Eisenstein, None) => return usage("series eisenstein requires --weight"),
                (SeriesKind::Delta, _) => delta(
                    order,
                    match method {
                        Method::Product => DeltaMethod::Product,
                        Method::Eisenstein => DeltaMethod::Eisenstein,
                    },
                ),
            };
            match series {
                Ok(s) => {
                    let _ = writeln!(stdout, "{}", s.series.coeff_list());
                    ExitCode::SUCCESS
                }
                Err(e) => usage(e),
            }
        }
        Command::Trajectory { system, t1, step } => {
            let c = |x| RatMat::scalar(1, RatFunc::constant(x));
            let (s, psi0, v0) = match system {
                System::Unit => (SpringSystem::undamped(c(int(-1))), vec![1.0], vec![0.0]),
                System::TwoMass => (
                    SpringSystem::undamped(two_mass_stiffness(&int(1), &int(1)).expect("positive stiffness")),
                    vec![1.0, 0.0],
                    vec![0.0, 0.5],
                ),
                System::Damped => (
                    SpringSystem::new(c(rat(-1, 10)), c(int(-1))).expect("1x1"),
                    vec![1.0],
                    vec![0.0],
                ),
            };
            match integrate_system(&s, &psi0, &v0, 0.0, t1, step).and_then(|t| t.write_csv(&mut stdout)) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => usage(e),
            }
        }
    }
}
