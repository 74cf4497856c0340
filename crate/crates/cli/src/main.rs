use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use vibpol::response::{preset, PRESET_NAMES};
use vibpol::Technique;

mod commands;
mod config;
mod error;
mod output;
mod verify;

use config::{load_config, RunConfig};
use error::CliError;

#[derive(Parser)]
#[command(name = "vibpol", version, about = "Cavity vibron-polariton energies, kinetics and 2D spectra")]
struct Cli {
    /// TOML configuration; omitted keys take the reference defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory (overrides [output] dir).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Run a single named pulse case (dqc-a … dqc-f, pe-a … pe-f).
    #[arg(long, global = true)]
    preset: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Energies, eigenvector weights, transition dipoles and gap table.
    Eigen,
    /// Population transport after excitation of each polariton state.
    Populations {
        /// Restrict to manifold 1 or 2.
        #[arg(long)]
        manifold: Option<usize>,
        /// One-based initial state within --manifold.
        #[arg(long)]
        initial: Option<usize>,
    },
    /// Double-quantum-coherence 2D spectra.
    Dqc,
    /// Photon-echo 2D spectra.
    Pe,
    /// Polariton energies against cavity frequency.
    Scan,
    /// Spectral density and bath correlation function.
    Bath,
    /// Invariant and oracle checks on the configured model.
    Verify,
    /// Print the configuration in canonical form.
    Config,
}

fn spectra(config: &RunConfig, dir: &std::path::Path, technique: Technique, preset_name: Option<&str>) -> Result<Vec<PathBuf>, CliError> {
    let cases = match preset_name {
        Some(name) => {
            let (t, case) = preset(name).ok_or_else(|| {
                CliError::Validation(format!("unknown preset `{name}`; expected one of {}", PRESET_NAMES.join(", ")))
            })?;
            if t != technique {
                return Err(CliError::Validation(format!("preset `{name}` is not a {} case", technique.name())));
            }
            vec![case]
        }
        None => config.cases(technique).1.to_vec(),
    };
    commands::spectra(config, &dir.join(technique.name().to_lowercase()), technique, &cases)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut config = load_config(cli.config.as_deref())?;
    if let Some(out) = cli.out {
        config.output.dir = out;
    }
    let dir = config.output.dir.clone();
    if cli.preset.is_some() && !matches!(cli.command, Command::Dqc | Command::Pe) {
        return Err(CliError::Validation("--preset applies to the dqc and pe commands only".into()));
    }
    let files = match cli.command {
        Command::Eigen => commands::eigen(&config, &dir.join("eigen"))?,
        Command::Populations { manifold, initial } => commands::populations(&config, &dir.join("populations"), manifold, initial)?,
        Command::Dqc => spectra(&config, &dir, Technique::Dqc, cli.preset.as_deref())?,
        Command::Pe => spectra(&config, &dir, Technique::Pe, cli.preset.as_deref())?,
        Command::Scan => commands::scan(&config, &dir.join("scan"))?,
        Command::Bath => commands::bath(&config, &dir.join("bath"))?,
        Command::Config => {
            print!("{}", config.to_toml());
            return Ok(());
        }
        Command::Verify => {
            let checks = verify::run(&config, &dir.join("verify"))?;
            let mut failed = 0;
            for c in &checks {
                println!(
                    "{} {} (residual {:.3e}, tolerance {:.1e})",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.residual,
                    c.tolerance
                );
                failed += usize::from(!c.pass);
            }
            if failed > 0 {
                return Err(CliError::VerificationFailed { failed });
            }
            return Ok(());
        }
    };
    for f in files {
        println!("{}", f.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
