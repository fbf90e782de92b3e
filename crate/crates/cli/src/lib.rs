//! Command-line front end: every verification of the `cyclocns` library as a
//! reproducible JSON, text or CSV report.
//!
//! Exit codes: 0 when the report passes, 1 when a checked property fails,
//! 2 on usage or validation errors.

mod commands;
pub mod report;

use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

pub use report::Report;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "cyclocns",
    version,
    about = "Canonical number systems and multiplicative independence in cyclotomic orders"
)]
pub struct Cli {
    /// Output format; csv is only available for sweep commands
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Worker threads for sweeps (default: all cores)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Report elapsed_ms as 0 so output is byte-identical across runs
    #[arg(long, global = true)]
    pub no_timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A basis given either as `Phi_k(m + X)` or as explicit coefficients.
#[derive(clap::Args, Debug, Clone)]
pub struct BasisArgs {
    #[arg(long, requires = "m", conflicts_with = "poly")]
    pub k: Option<u64>,
    #[arg(long, requires = "k")]
    pub m: Option<u64>,
    /// Monic basis polynomial, constant term first, e.g. "-2,1" for X - 2
    #[arg(long, allow_hyphen_values = true)]
    pub poly: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cyclotomic polynomial Phi_k
    Poly {
        #[arg(long)]
        k: u64,
    },
    /// Base polynomial Phi_k(m + X) of -m + zeta_k
    Base {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        m: u64,
    },
    /// Criterion check, coefficient bounds and optional exhaustive expansion
    CheckCns {
        #[command(flatten)]
        basis: BasisArgs,
        /// Expand every element of the coefficient box
        #[arg(long)]
        exhaustive: bool,
        /// Box radius for --exhaustive
        #[arg(long = "box", default_value_t = 2)]
        box_radius: u64,
        #[arg(long)]
        max_steps: Option<usize>,
    },
    /// Digit expansion of an element, least significant digit first
    Encode {
        #[command(flatten)]
        basis: BasisArgs,
        /// Coefficients in the power basis, constant first, e.g. "-1,0"
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[arg(long)]
        max_steps: Option<usize>,
    },
    /// Element from digits, least significant digit first
    Decode {
        #[command(flatten)]
        basis: BasisArgs,
        #[arg(long)]
        digits: String,
    },
    /// Criterion over all k >= 3 with phi(k) <= phi-max and phi(k) < m <= m-max
    SweepTheorem1 {
        #[arg(long, default_value_t = 26)]
        phi_max: u64,
        #[arg(long, default_value_t = 19)]
        m_max: u64,
    },
    /// Exact independence verdict for -m + zeta_k and -n + zeta_k
    Independence {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
    },
    /// Verdicts for all 1 <= n < m <= max
    SweepIndependence {
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 50)]
        max: u64,
    },
    /// Solutions of (x^k - 1)/(x - 1) = y^q
    Nagell {
        #[arg(long, default_value_t = 200)]
        x_max: u64,
        #[arg(long, default_value_t = 20)]
        k_max: u64,
        #[arg(long, default_value_t = 20)]
        q_max: u64,
    },
    /// Solutions of X^2 + 3 = 4 Y^q
    Quartic {
        #[arg(long, default_value_t = 100_000)]
        x_max: u64,
        #[arg(long, default_value_t = 50)]
        q_max: u32,
    },
    /// Polynomial gcd certificates for the prime exponent q
    Certificates {
        #[arg(long)]
        q: u64,
    },
}

impl Command {
    fn is_sweep(&self) -> bool {
        matches!(
            self,
            Command::SweepTheorem1 { .. } | Command::SweepIndependence { .. }
        )
    }
}

/// Parses `argv` (including the program name), runs the command and writes
/// the report to `out`. Diagnostics go to `err`.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    if cli.format == Format::Csv && !cli.command.is_sweep() {
        let _ = writeln!(
            err,
            "error: --format csv is only available for sweep commands"
        );
        return EXIT_USAGE;
    }

    if cli.jobs == Some(0) {
        let _ = writeln!(err, "error: --jobs must be positive");
        return EXIT_USAGE;
    }
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.unwrap_or(0))
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };

    let start = Instant::now();
    let report = pool.install(|| commands::execute(&cli.command));
    let mut report = match report {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    report.elapsed_ms = if cli.no_timing {
        0
    } else {
        start.elapsed().as_millis() as u64
    };

    let rendered = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
        Format::Csv => report.to_csv().expect("sweep commands carry a table"),
    };
    if out.write_all(rendered.as_bytes()).is_err() {
        return EXIT_USAGE;
    }
    if report.pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

/// [`run_with`] on the process's standard streams.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
