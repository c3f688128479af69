//! `biosc`: figure data and verification suites for non-Hermitian oscillators.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use biosc_cli::commands::{cmd_coherent, cmd_limits, cmd_potential};
use biosc_cli::config::{CoherentFamily, RunConfig};
use biosc_cli::output::Format;
use biosc_cli::presets::{load_preset, DEFAULT_PRESET, PRESET_DIR_VAR};
use biosc_cli::verify::{run_suite, Suite};
use biosc_cli::CliError;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(version, about, long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Configuration file (INI-style)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Built-in parameter set: fig1a..fig1f, fig3, fig4, fig5a, fig5b
    #[arg(long, global = true, conflicts_with = "config")]
    preset: Option<String>,

    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,

    /// Write here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Multiplies every verification tolerance
    #[arg(long, global = true, default_value_t = 1.0)]
    tolerance_scale: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Real and imaginary parts of the potential on the grid
    Potential,
    /// Run a verification suite; exit 1 if any check is over tolerance
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
    /// Coherent-state uncertainty against r = |z|
    Coherent {
        /// Overrides `family` from the configuration
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
    },
    /// Deviation from the oscillator eigenfunctions as gamma grows
    Limits,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Biorthogonality,
    Algebra,
    Measures,
    Bargmann,
    Limits,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Natural,
    Distorted,
}

fn load_config(cli: &Cli) -> Result<RunConfig, CliError> {
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        return RunConfig::parse(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())));
    }
    let name = cli.preset.as_deref().unwrap_or(DEFAULT_PRESET);
    let dir = std::env::var_os(PRESET_DIR_VAR).map(PathBuf::from);
    load_preset(name, dir.as_deref()).map_err(|e| CliError::Config(e.to_string()))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Config(format!("cannot write to stdout: {e}")))
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    if !(cli.tolerance_scale.is_finite() && cli.tolerance_scale > 0.0) {
        return Err(CliError::Config(format!("--tolerance-scale must be positive, got {}", cli.tolerance_scale)));
    }
    let cfg = load_config(cli)?;
    let configured = cfg.output_format;
    let format = |fallback: Format| match cli.format {
        Some(FormatArg::Csv) => Format::Csv,
        Some(FormatArg::Json) => Format::Json,
        None => configured.unwrap_or(fallback),
    };
    let out = cli.out.clone().or_else(|| cfg.output_path.clone());

    match &cli.command {
        Command::Potential => emit(&cmd_potential(&cfg)?.render(format(Format::Csv)), out.as_deref()),
        Command::Coherent { family } => {
            let family = match family {
                Some(FamilyArg::Natural) => CoherentFamily::Natural,
                Some(FamilyArg::Distorted) => CoherentFamily::Distorted,
                None => cfg.family,
            };
            emit(&cmd_coherent(&cfg, family)?.render(format(Format::Csv)), out.as_deref())
        }
        Command::Limits => emit(&cmd_limits(&cfg)?.render(format(Format::Csv)), out.as_deref()),
        Command::Verify { suite } => {
            let suite = match suite {
                SuiteArg::Biorthogonality => Suite::Biorthogonality,
                SuiteArg::Algebra => Suite::Algebra,
                SuiteArg::Measures => Suite::Measures,
                SuiteArg::Bargmann => Suite::Bargmann,
                SuiteArg::Limits => Suite::Limits,
                SuiteArg::All => Suite::All,
            };
            let report = run_suite(&cfg, suite, cli.tolerance_scale);
            let text = match format(Format::Json) {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&report.to_json()).expect("plain values serialize");
                    s.push('\n');
                    s
                }
                Format::Csv => report.to_table().to_csv(),
            };
            emit(&text, out.as_deref())?;
            let failed: Vec<String> = report
                .failures()
                .map(|c| match &c.error {
                    Some(e) => format!("{} [{}]: {e}", c.key, c.case),
                    None => format!("{} [{}]: {:e} > {:e}", c.key, c.case, c.value, c.tolerance),
                })
                .collect();
            eprintln!("{}: {} checks, {} over tolerance", suite.name(), report.checks.len(), failed.len());
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::Failure(failed.join("\n")))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if n == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot start {n} worker threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
