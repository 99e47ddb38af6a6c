use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dicke_lattice::{LatticeMode, Statistics};

#[derive(Debug, Parser)]
#[command(name = "dicke-lattice", version, about = "Superradiant emission curves for atoms in a 2D optical lattice")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normalized emission peak of a lattice state versus the delay.
    Curve(CurveArgs),
    /// Interaction switched off suddenly from the Mott or Néel state.
    Quench(CurveArgs),
    /// Slow transition out of the Mott or Néel state.
    Adiabatic(CurveArgs),
    /// Two classical pulses separated by the delay.
    Classical(ClassicalArgs),
    /// Exact-diagonalization cross-checks on the 2×2 lattice.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StatisticsArg {
    Bose,
    Fermi,
}

impl From<StatisticsArg> for Statistics {
    fn from(s: StatisticsArg) -> Self {
        match s {
            StatisticsArg::Bose => Statistics::Bose,
            StatisticsArg::Fermi => Statistics::Fermi,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
}

/// Lattice state selector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateArg {
    Superfluid,
    Partial { condensed: f64, spread: f64 },
    Thermal { inverse_temperature: f64 },
    Metallic,
    Uniform,
    Mott,
    Neel,
}

impl FromStr for StateArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, params) = match s.split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (s, None),
        };
        let number = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("bad number '{v}': {e}"));
        match (name, params) {
            ("superfluid", None) => Ok(StateArg::Superfluid),
            ("metallic", None) => Ok(StateArg::Metallic),
            ("uniform", None) => Ok(StateArg::Uniform),
            ("mott", None) => Ok(StateArg::Mott),
            ("neel", None) => Ok(StateArg::Neel),
            ("partial", Some(p)) => {
                let (a, b) = p.split_once(',').ok_or("partial expects N1,N2")?;
                Ok(StateArg::Partial { condensed: number(a)?, spread: number(b)? })
            }
            ("thermal", Some(p)) => Ok(StateArg::Thermal { inverse_temperature: number(p)? }),
            _ => Err(format!(
                "unknown state '{s}' (expected superfluid, partial:N1,N2, thermal:BETA, metallic, uniform, mott or neel)"
            )),
        }
    }
}

pub fn parse_mode(s: &str) -> Result<LatticeMode, String> {
    let (n, m) = s.split_once(',').ok_or_else(|| format!("expected n,m, got '{s}'"))?;
    let int = |v: &str| v.trim().parse::<i32>().map_err(|e| format!("bad index '{v}': {e}"));
    Ok(LatticeMode::new(int(n)?, int(m)?))
}

#[derive(Debug, Clone, Args)]
pub struct LatticeArgs {
    #[arg(long, value_enum)]
    pub statistics: StatisticsArg,

    /// Lattice side; the lattice holds L×L sites.
    #[arg(long = "L", default_value_t = 100)]
    pub l: usize,

    /// Photon wave vector as grid indices n,m, i.e. κ = 2π/(Lℓ)·(n,m).
    #[arg(long, value_parser = parse_mode, allow_hyphen_values = true, default_value = "1,1")]
    pub kappa: LatticeMode,

    /// Tunneling amplitude J.
    #[arg(long = "J", default_value_t = 1.0)]
    pub tunneling: f64,

    /// On-site interaction U.
    #[arg(long = "U", default_value_t = 0.0)]
    pub interaction: f64,

    /// Largest delay, in units of ħ/J.
    #[arg(long, default_value_t = 100.0)]
    pub tmax: f64,

    /// Number of delays on [0, tmax], both ends included.
    #[arg(long, default_value_t = 500)]
    pub steps: usize,

    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Evaluate on one thread.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub lattice: LatticeArgs,

    /// superfluid | partial:N1,N2 | thermal:BETA | metallic | uniform | mott | neel
    #[arg(long)]
    pub state: Option<StateArg>,

    /// Detected wave vector; defaults to --kappa.
    #[arg(long, value_parser = parse_mode, allow_hyphen_values = true)]
    pub kappa_out: Option<LatticeMode>,
}

#[derive(Debug, Clone, Args)]
pub struct ClassicalArgs {
    #[command(flatten)]
    pub lattice: LatticeArgs,

    #[arg(long)]
    pub state: StateArg,

    /// First pulse angle.
    #[arg(long, allow_hyphen_values = true)]
    pub rotation_in: f64,

    /// Second pulse angle.
    #[arg(long, allow_hyphen_values = true)]
    pub rotation_out: f64,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    /// Probe wave vector on the 2×2 grid.
    #[arg(long, value_parser = parse_mode, allow_hyphen_values = true, default_value = "1,0")]
    pub kappa: LatticeMode,

    #[arg(long, default_value_t = 2015)]
    pub seed: u64,

    #[arg(long)]
    pub output: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}
