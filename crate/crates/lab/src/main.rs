use std::process::ExitCode;

use clap::{Parser, Subcommand};
use platelab::commands::{
    describe_checks, open_output, oracle_rows, verify, write_constants_csv, write_lemma_csv,
    write_report_csv, write_roots_csv, write_verify_csv, OracleArgs, OracleSelection,
};
use platelab::scenario::{Scenario, ScenarioFlags};
use platelab::{LabError, LabResult};

/// Numerical lab for the damped plate equation with rotational inertia.
#[derive(Debug, Parser)]
#[command(name = "platelab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Characteristic roots per frequency radius, or the branch constants.
    Roots {
        /// Comma-separated radii.
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["range", "constants"])]
        r: Option<Vec<f64>>,
        /// `lo:hi:count`, evenly spaced and inclusive.
        #[arg(long, conflicts_with = "constants")]
        range: Option<String>,
        /// Print the branch point and the low-frequency cutoff with residuals.
        #[arg(long)]
        constants: bool,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Run a scenario and check the fitted slopes; exit 1 on a failed check.
    Verify(ScenarioFlags),
    /// Closed form against RK4 and the auxiliary inequalities.
    Oracle {
        /// all, ode, 4.2, 4.4, 4.6 or 4.7.
        #[arg(long, default_value = "all")]
        lemma: OracleSelection,
        /// Power in the sup bound.
        #[arg(long, default_value_t = 2.0)]
        l: f64,
        /// Comma-separated times for the sup checks.
        #[arg(long, value_delimiter = ',')]
        t: Option<Vec<f64>>,
        /// Horizon for the ODE comparison.
        #[arg(long, default_value_t = 50.0)]
        t_end: f64,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Scenario series with error estimates and fit diagnostics, unchecked.
    Report(ScenarioFlags),
}

fn parse_range(spec: &str) -> LabResult<Vec<f64>> {
    let bad = || LabError::Usage(format!("--range `{spec}`: expected lo:hi:count"));
    let parts: Vec<&str> = spec.split(':').collect();
    let [lo, hi, count] = parts.as_slice() else {
        return Err(bad());
    };
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    let count: usize = count.trim().parse().map_err(|_| bad())?;
    if count == 0 || lo.is_nan() || hi.is_nan() || lo > hi || (count == 1 && lo != hi) {
        return Err(bad());
    }
    if count == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..count)
        .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
        .collect())
}

fn run(cli: Cli) -> LabResult<bool> {
    match cli.command {
        Command::Roots {
            r,
            range,
            constants,
            out,
        } => {
            let w = open_output(out.as_deref())?;
            if constants {
                write_constants_csv(w)?;
                return Ok(true);
            }
            let radii = match (r, range) {
                (Some(r), _) => r,
                (None, Some(spec)) => parse_range(&spec)?,
                (None, None) => {
                    return Err(LabError::Usage(
                        "roots needs --r, --range or --constants".into(),
                    ))
                }
            };
            write_roots_csv(&radii, w)?;
            Ok(true)
        }
        Command::Verify(flags) => {
            let scenario = Scenario::resolve(&flags)?;
            let outcome = verify(&scenario)?;
            write_verify_csv(&outcome, open_output(scenario.out.as_deref())?)?;
            for line in describe_checks(&outcome) {
                eprintln!("{line}");
            }
            Ok(outcome.passed())
        }
        Command::Report(flags) => {
            let scenario = Scenario::resolve(&flags)?;
            let outcome = verify(&scenario)?;
            write_report_csv(&outcome, open_output(scenario.out.as_deref())?)?;
            Ok(true)
        }
        Command::Oracle {
            lemma,
            l,
            t,
            t_end,
            out,
        } => {
            let rows = oracle_rows(&OracleArgs {
                selection: lemma,
                l,
                times: t,
                t_end,
            })?;
            write_lemma_csv(&rows, open_output(out.as_deref())?)?;
            for r in rows.iter().filter(|r| !r.pass) {
                eprintln!("failed: {} {}", r.lemma, r.parameter);
            }
            Ok(rows.iter().all(|r| r.pass))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
