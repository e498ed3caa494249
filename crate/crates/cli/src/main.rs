use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hcpair::validation::Fault;
use hcpair_cli::config::worker_cap;
use hcpair_cli::{execute, render, CliError, CommandKind, Metadata, OutputFormat, Overrides, RunConfig, WORKERS_ENV};

/// Two hard-core particles in a 1-D box: spectra, waveforms, δ-limit, thermal and
/// power-law studies as plot-ready tables.
///
/// Defaults: L = 2, ħ = m = k_B = 1, npoints = 4000, n/N up to 3,
/// A = 0,1e1..1e6, w = 1 grid cell, α = 0.5,1,1.5 with B = 1, k = 2,
/// T = 0.01..100 T₀, csv to stdout. Set HCPAIR_WORKERS to cap worker threads.
#[derive(Debug, Parser)]
#[command(name = "hcpair", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// TOML file with RunConfig keys; flags below override it.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Box length L.
    #[arg(long = "L", global = true, allow_negative_numbers = true)]
    length: Option<f64>,

    /// Grid points for numeric solves and waveform dumps.
    #[arg(long, global = true)]
    npoints: Option<usize>,

    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,

    /// Write output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Highest relative quantum number n.
    #[arg(long = "n-max", global = true)]
    n_max: Option<u32>,

    /// Highest centre-of-mass quantum number N.
    #[arg(long = "N-max", global = true)]
    cm_max: Option<u32>,

    /// Comma-separated barrier strengths, ascending.
    #[arg(long = "A-ladder", global = true, value_delimiter = ',', num_args = 1.., allow_negative_numbers = true)]
    a_ladder: Option<Vec<f64>>,

    /// Comma-separated power-law exponents.
    #[arg(long, global = true, value_delimiter = ',', num_args = 1.., allow_negative_numbers = true)]
    alpha: Option<Vec<f64>>,

    /// Comma-separated temperatures in units of T₀.
    #[arg(long = "T-ladder", global = true, value_delimiter = ',', num_args = 1.., allow_negative_numbers = true)]
    t_ladder: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    #[value(name = "json-like", alias = "json")]
    JsonLike,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FaultArg {
    PerturbedStencil,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Pair levels E(n, N) with the non-interacting reference.
    Spectrum,
    /// Sampled relative, centre-of-mass and macro-orbital waveforms.
    Eigenfunction,
    /// Mean separation and phase on [0, λ].
    Expectation,
    /// Finite-difference ground state along the barrier-strength ladder.
    DeltaLimit,
    /// Power-law contact strength: regime and measured integrand slope per α.
    AlphaScan,
    /// Boltzmann occupations and thermally averaged force per temperature.
    Thermal,
    /// Zero-point force by closed form and by finite difference.
    Force,
    /// Momentum-pair enumeration under the three counting schemes.
    Compare,
    /// Run the invariant suite; exit status 4 on any failure.
    Selftest {
        /// Deliberately break the solver to check that the suite notices.
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<FaultArg>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let workers = worker_cap(std::env::var(WORKERS_ENV).ok().as_deref())?;
    if let Some(n) = workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::InvalidConfig(format!("cannot start {n} workers: {e}")))?;
    }

    let base = match &cli.common.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let c = cli.common;
    let config = base.apply(Overrides {
        length: c.length,
        npoints: c.npoints,
        n_max: c.n_max,
        cm_max: c.cm_max,
        a_ladder: c.a_ladder,
        alpha: c.alpha,
        t_ladder: c.t_ladder,
        format: c.format.map(|f| match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::JsonLike => OutputFormat::JsonLike,
        }),
        out: c.out,
    });

    let kind = match cli.command {
        Cmd::Spectrum => CommandKind::Spectrum,
        Cmd::Eigenfunction => CommandKind::Eigenfunction,
        Cmd::Expectation => CommandKind::Expectation,
        Cmd::DeltaLimit => CommandKind::DeltaLimit,
        Cmd::AlphaScan => CommandKind::AlphaScan,
        Cmd::Thermal => CommandKind::Thermal,
        Cmd::Force => CommandKind::Force,
        Cmd::Compare => CommandKind::Compare,
        Cmd::Selftest { inject_fault } => CommandKind::Selftest {
            fault: inject_fault.map(|FaultArg::PerturbedStencil| Fault::PerturbedStencil),
        },
    };

    let report = execute(kind, &config)?;
    let bytes = render(&report.table, &Metadata::now(&config), config.format)?;
    match &config.out {
        Some(path) => std::fs::write(path, &bytes).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(&bytes)
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })?
        }
    }
    match report.failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hcpair: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
