use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use a2g_sim::commands::{
    cmd_cluster, cmd_figures, cmd_link, cmd_scenario, cmd_sweep, GridOverride, SweepKind,
};
use a2g_sim::config::{parse_config, RunConfig};
use a2g_sim::Result;

#[derive(Parser)]
#[command(name = "a2g-sim", version, about = "UAV emergency-coverage simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one cluster-head-to-UAV link
    Link {
        /// JSON config file; omitted means built-in defaults
        #[arg(long)]
        config: Option<PathBuf>,
        /// Cluster head x coordinate, meters
        #[arg(long)]
        x: f64,
        /// Cluster head y coordinate, meters
        #[arg(long)]
        y: f64,
        #[arg(long, value_enum, default_value_t = LinkFormat::Text)]
        format: LinkFormat,
    },
    /// Run one figure sweep with optional grid overrides
    Sweep {
        #[arg(value_enum)]
        name: SweepName,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output directory (defaults to the configured one)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Swept-axis start override
        #[arg(long)]
        min: Option<f64>,
        /// Swept-axis end override
        #[arg(long)]
        max: Option<f64>,
        /// Swept-axis step override
        #[arg(long)]
        step: Option<f64>,
        /// Also render an SVG chart
        #[arg(long)]
        svg: bool,
        #[arg(long, value_enum, default_value_t = SweepFormat::Csv)]
        format: SweepFormat,
    },
    /// Place devices, elect cluster heads, and assign members
    Cluster {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the configured generator seed
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run the full scenario end to end
    Scenario {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Regenerate all five figure data files and charts
    Figures {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LinkFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepName {
    PlosDistance,
    PlosElevation,
    ElevationDistance,
    RxPowerElevation,
    BerRxPower,
}

impl From<SweepName> for SweepKind {
    fn from(name: SweepName) -> Self {
        match name {
            SweepName::PlosDistance => SweepKind::PlosDistance,
            SweepName::PlosElevation => SweepKind::PlosElevation,
            SweepName::ElevationDistance => SweepKind::ElevationDistance,
            SweepName::RxPowerElevation => SweepKind::RxPowerElevation,
            SweepName::BerRxPower => SweepKind::BerRxPower,
        }
    }
}

fn load_config(path: &Option<PathBuf>) -> Result<RunConfig> {
    match path {
        Some(p) => parse_config(p),
        None => Ok(RunConfig::default()),
    }
}

fn out_dir(flag: Option<PathBuf>, config: &RunConfig) -> PathBuf {
    flag.unwrap_or_else(|| PathBuf::from(&config.output.directory))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Link {
            config,
            x,
            y,
            format,
        } => {
            let config = load_config(&config)?;
            print!(
                "{}",
                cmd_link(&config, x, y, matches!(format, LinkFormat::Json))?
            );
        }
        Command::Sweep {
            name,
            config,
            out,
            min,
            max,
            step,
            svg,
            format,
        } => {
            let config = load_config(&config)?;
            let dir = out_dir(out, &config);
            let written = cmd_sweep(
                &config,
                name.into(),
                GridOverride { min, max, step },
                &dir,
                svg,
                matches!(format, SweepFormat::Json),
            )?;
            for path in written {
                println!("wrote {}", path.display());
            }
        }
        Command::Cluster { config, out, seed } => {
            let config = load_config(&config)?;
            let dir = out_dir(out, &config);
            print!("{}", cmd_cluster(&config, &dir, seed)?);
        }
        Command::Scenario { config, out, seed } => {
            let config = load_config(&config)?;
            let dir = out_dir(out, &config);
            print!("{}", cmd_scenario(&config, &dir, seed)?);
        }
        Command::Figures { config, out } => {
            let config = load_config(&config)?;
            let dir = out_dir(out, &config);
            for path in cmd_figures(&config, &dir)? {
                println!("wrote {}", path.display());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    // clap's default usage-error exit code (2) is reserved here for
    // infeasible scenarios, so argument errors map to 1 instead.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
