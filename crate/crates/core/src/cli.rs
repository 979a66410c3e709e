//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 numerical failure. Failures print one `error: <code>: <message>` line
//! on stderr.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::branch::{
    bifurcation_interval, default_probes, estimate_bifurcation_set, logspace, nodal_solutions_at_unity, trace_branch,
    NodalOptions,
};
use crate::error::Error;
use crate::problem::ProblemSpec;
use crate::spectrum::{eigenvalue, half_spectrum, write_spectrum_csv};
use crate::verify::{run_suite, VerifyOptions, DEFAULT_SAMPLES, DEFAULT_SEED, SUITES};
use crate::Sign;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "plap", version, about = "Spectra, half-spectra and nodal branches of 1-D p-Laplacian problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ProblemArg {
    /// Problem file (TOML).
    #[arg(long)]
    problem: PathBuf,
}

#[derive(Debug, Args)]
struct OutArg {
    /// Output path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct AmplitudeArgs {
    #[arg(long = "s-min", default_value_t = 1e-4)]
    s_min: f64,
    #[arg(long = "s-max", default_value_t = 1e4)]
    s_max: f64,
    #[arg(long, default_value_t = 33, value_parser = clap::value_parser!(u64).range(2..))]
    points: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eigenvalues λ_1..λ_kmax of a problem without jumping terms.
    Spectrum {
        #[command(flatten)]
        problem: ProblemArg,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        kmax: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Half-eigenvalues λ_k^± for k = 1..kmax.
    HalfSpectrum {
        #[command(flatten)]
        problem: ProblemArg,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        kmax: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Continue the nodal branch of class (k, ν) over a geometric amplitude grid.
    Branch {
        #[command(flatten)]
        problem: ProblemArg,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        #[arg(long, allow_hyphen_values = true, default_value = "+")]
        nu: Sign,
        #[command(flatten)]
        amplitude: AmplitudeArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Solutions at λ = 1 for k = 1..kmax (both signs unless --nu is given).
    Nodal {
        #[command(flatten)]
        problem: ProblemArg,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        kmax: u64,
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<Sign>,
        #[command(flatten)]
        amplitude: AmplitudeArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Bifurcation intervals I_k = [λ_k - M/a0, λ_k + M/a0] and adjacent overlaps.
    Intervals {
        #[command(flatten)]
        problem: ProblemArg,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        kmax: u64,
        #[arg(long = "M")]
        m: f64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Independent λ estimates of the perturbed problem at probe amplitudes.
    EstimateBifurcation {
        #[command(flatten)]
        problem: ProblemArg,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        #[arg(long, allow_hyphen_values = true, default_value = "+")]
        nu: Sign,
        #[arg(long = "s-min")]
        s_min: Option<f64>,
        #[arg(long = "s-max")]
        s_max: Option<f64>,
        /// Number of probe amplitudes.
        #[arg(long)]
        samples: Option<usize>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Run a named verification suite (or `all`) and print a JSON report.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[command(flatten)]
        out: OutArg,
    },
}

enum Failure {
    Solver(Error),
    Io(io::Error),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Solver(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn writer(out: &OutArg) -> Result<Box<dyn Write>, Failure> {
    Ok(match &out.out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn load(p: &ProblemArg) -> Result<ProblemSpec, Failure> {
    let spec = ProblemSpec::from_path(&p.problem)?;
    spec.check()?;
    Ok(spec)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => EXIT_OK,
        Err(Failure::Solver(e)) => {
            eprintln!("error: {}: {}", e.code(), e);
            if e.is_numerical() {
                EXIT_NUMERICAL
            } else {
                EXIT_USAGE
            }
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: io: {e}");
            EXIT_USAGE
        }
        Err(Failure::Verify(msg)) => {
            eprintln!("error: verification_failed: {msg}");
            EXIT_VERIFY
        }
    }
}

fn dispatch(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Spectrum { problem, kmax, out } => {
            let spec = load(&problem)?;
            if !spec.is_half_linear() || !spec.has_no_jumping() {
                return Err(Error::InvalidInput(
                    "spectrum needs alpha = beta = 0 and no f, g; use half-spectrum".into(),
                )
                .into());
            }
            let pairs = (1..=kmax as usize).map(|k| eigenvalue(&spec, k)).collect::<crate::Result<Vec<_>>>()?;
            let mut w = writer(&out)?;
            write_spectrum_csv(&mut w, &pairs)?;
            w.flush()?;
        }
        Command::HalfSpectrum { problem, kmax, out } => {
            let spec = load(&problem)?;
            let pairs = half_spectrum(&spec, kmax as usize)?;
            let mut w = writer(&out)?;
            write_spectrum_csv(&mut w, &pairs)?;
            w.flush()?;
        }
        Command::Branch { problem, k, nu, amplitude, out } => {
            let spec = load(&problem)?;
            let b = trace_branch(&spec, k as usize, nu, amplitude.s_min, amplitude.s_max, amplitude.points as usize)?;
            let mut w = writer(&out)?;
            b.write_csv(&mut w)?;
            w.flush()?;
        }
        Command::Nodal { problem, kmax, nu, amplitude, out } => {
            let spec = load(&problem)?;
            let nus: Vec<Sign> = match nu {
                Some(n) => vec![n],
                None => Sign::BOTH.to_vec(),
            };
            let opts =
                NodalOptions { s_min: amplitude.s_min, s_max: amplitude.s_max, n_points: amplitude.points as usize };
            let sols = nodal_solutions_at_unity(&spec, 1..=kmax as usize, &nus, &opts)?;
            let mut w = writer(&out)?;
            writeln!(w, "k,nu,s,zero_count,residual,hypothesis_holds")?;
            for s in &sols {
                writeln!(
                    w,
                    "{},{},{:.15e},{},{:.3e},{}",
                    s.k, s.nu, s.s, s.zero_count, s.residual, s.hypothesis_holds
                )?;
            }
            w.flush()?;
        }
        Command::Intervals { problem, kmax, m, out } => {
            let spec = load(&problem)?;
            let ivs = (1..=kmax as usize + 1)
                .map(|k| bifurcation_interval(&spec, k, m))
                .collect::<crate::Result<Vec<_>>>()?;
            let mut w = writer(&out)?;
            writeln!(w, "k,lambda_k,lo,hi,overlaps_next")?;
            for (i, (lo, hi)) in ivs.iter().take(kmax as usize).enumerate() {
                let overlaps = ivs[i + 1].0 <= *hi;
                writeln!(w, "{},{:.15e},{:.15e},{:.15e},{}", i + 1, 0.5 * (lo + hi), lo, hi, overlaps)?;
            }
            w.flush()?;
        }
        Command::EstimateBifurcation { problem, k, nu, s_min, s_max, samples, out } => {
            let spec = load(&problem)?;
            let probes = match (s_min, s_max, samples) {
                (None, None, None) => default_probes(),
                (a, b, n) => {
                    let d = default_probes();
                    let (lo, hi) = (a.unwrap_or(d[0]), b.unwrap_or(*d.last().unwrap()));
                    if !(lo > 0.0 && lo <= hi) {
                        return Err(Error::InvalidInput(format!("need 0 < s-min <= s-max, got {lo}, {hi}")).into());
                    }
                    logspace(lo, hi, n.unwrap_or(d.len()).max(1))
                }
            };
            let set = estimate_bifurcation_set(&spec, k as usize, nu, &probes)?;
            let mut w = writer(&out)?;
            set.write_csv(&mut w)?;
            w.flush()?;
            for e in set.estimates.iter().filter(|e| e.lambda_estimate.is_none()) {
                eprintln!("warning: s = {:.6e}: {}", e.s, e.error.as_deref().unwrap_or("unsolved"));
            }
            let outside = set.estimates.iter().filter(|e| e.lambda_estimate.is_some() && !e.in_interval).count();
            if outside > 0 {
                return Err(Failure::Verify(format!(
                    "{outside} estimate(s) outside I_{k} = [{:.9e}, {:.9e}]",
                    set.interval.0, set.interval.1
                )));
            }
        }
        Command::Verify { suite, seed, samples, out } => {
            let opts = VerifyOptions { seed, samples };
            let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
            let mut reports = Vec::with_capacity(names.len());
            for name in names {
                reports.push(run_suite(name, &opts)?);
            }
            let mut w = writer(&out)?;
            let text = if reports.len() == 1 {
                reports[0].to_json()
            } else {
                serde_json::to_string_pretty(&reports).expect("reports serialize")
            };
            writeln!(w, "{text}")?;
            w.flush()?;
            let failed: Vec<&str> =
                reports.iter().filter(|r| !r.pass && !r.informational).map(|r| r.suite.as_str()).collect();
            if !failed.is_empty() {
                return Err(Failure::Verify(format!("suite(s) failed: {}", failed.join(", "))));
            }
        }
    }
    Ok(())
}
