use std::fs;
use std::io::{self, Write};
use std::path::Path;

use dicke_lattice::drive::drive_curve;
use dicke_lattice::oracle::suite::{self, SuiteConfig};
use dicke_lattice::superradiance::{emission_curve, time_grid, ProbeGeometry, Scenario};
use dicke_lattice::{Execution, LatticeSpec, MomentumDistribution, Statistics};

use crate::args::{ClassicalArgs, Command, CurveArgs, LatticeArgs, OracleArgs, StateArg};
use crate::output;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Model(#[from] dicke_lattice::Error),
    #[error("{0}")]
    Config(String),
    #[error("cannot write output: {0}")]
    Io(#[from] io::Error),
    #[error("{failed} oracle check(s) failed")]
    OracleFailed { failed: usize },
}

impl RunError {
    pub fn exit_code(&self) -> u8 {
        match self {
            RunError::Model(e) if e.is_numerical() => 2,
            RunError::OracleFailed { .. } => 2,
            _ => 1,
        }
    }
}

type Result<T> = std::result::Result<T, RunError>;

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Curve(a) => curve(a, Mode::Curve),
        Command::Quench(a) => curve(a, Mode::Quench),
        Command::Adiabatic(a) => curve(a, Mode::Adiabatic),
        Command::Classical(a) => classical(a),
        Command::Oracle(a) => oracle(a),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Curve,
    Quench,
    Adiabatic,
}

fn lattice(args: &LatticeArgs) -> Result<LatticeSpec> {
    Ok(LatticeSpec::with_parameters(args.l, 1.0, args.tunneling, args.interaction)?)
}

fn execution(args: &LatticeArgs) -> Execution {
    if args.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

fn distribution(state: StateArg, statistics: Statistics, spec: &LatticeSpec) -> Result<MomentumDistribution> {
    let atoms = spec.sites() as f64;
    let bose_only = |name: &str| {
        if statistics == Statistics::Bose {
            Ok(())
        } else {
            Err(RunError::Config(format!("state '{name}' needs --statistics bose")))
        }
    };
    Ok(match state {
        StateArg::Superfluid => {
            bose_only("superfluid")?;
            MomentumDistribution::superfluid(spec)
        }
        StateArg::Partial { condensed, spread } => {
            bose_only("partial")?;
            MomentumDistribution::partial_condensation(spec, condensed, spread)?
        }
        StateArg::Thermal { inverse_temperature } => match statistics {
            Statistics::Bose => MomentumDistribution::bose_einstein(spec, inverse_temperature, atoms)?,
            Statistics::Fermi => MomentumDistribution::fermi_dirac(spec, inverse_temperature, atoms)?,
        },
        StateArg::Metallic => {
            if statistics != Statistics::Fermi {
                return Err(RunError::Config("state 'metallic' needs --statistics fermi".into()));
            }
            MomentumDistribution::metallic(spec)
        }
        StateArg::Uniform => MomentumDistribution::uniform(spec, statistics),
        StateArg::Mott | StateArg::Neel => {
            return Err(RunError::Config("insulators have no momentum-diagonal description here".into()))
        }
    })
}

fn insulator_matches(state: StateArg, statistics: Statistics) -> bool {
    matches!(
        (state, statistics),
        (StateArg::Mott, Statistics::Bose) | (StateArg::Neel, Statistics::Fermi)
    )
}

fn curve(args: CurveArgs, mode: Mode) -> Result<()> {
    let spec = lattice(&args.lattice)?;
    let statistics: Statistics = args.lattice.statistics.into();
    let kappa_out = args.kappa_out.unwrap_or(args.lattice.kappa);
    let geometry = ProbeGeometry::new(&spec, args.lattice.kappa, kappa_out)?;
    let delays = time_grid(args.lattice.tmax, args.lattice.steps)?;
    let scenario = match (mode, args.state) {
        (Mode::Curve, None) => return Err(RunError::Config("curve needs --state".into())),
        (Mode::Curve, Some(s)) if insulator_matches(s, statistics) => Scenario::Separable(vec![1.0; spec.sites()]),
        (Mode::Curve, Some(s)) => Scenario::Distribution(distribution(s, statistics, &spec)?),
        (_, Some(s)) if !insulator_matches(s, statistics) => {
            return Err(RunError::Config(format!(
                "quench and adiabatic start from the {} state",
                if statistics == Statistics::Bose { "mott" } else { "neel" }
            )))
        }
        (Mode::Quench, _) => Scenario::Quench,
        (Mode::Adiabatic, _) => Scenario::Adiabatic(statistics),
    };
    let curve = emission_curve(&scenario, &delays, &spec, &geometry, execution(&args.lattice))?;
    let rows = curve.iter().map(|(t, v)| vec![t, v]);
    emit(args.lattice.output.as_deref(), &output::table(&["delta_t", "normalized_peak"], rows))
}

fn classical(args: ClassicalArgs) -> Result<()> {
    let spec = lattice(&args.lattice)?;
    let statistics: Statistics = args.lattice.statistics.into();
    let dist = match args.state {
        // Without interactions only the one-body density matrix enters, and
        // both insulators have uniform momentum occupations.
        s if insulator_matches(s, statistics) => MomentumDistribution::uniform(&spec, statistics),
        s => distribution(s, statistics, &spec)?,
    };
    let delays = time_grid(args.lattice.tmax, args.lattice.steps)?;
    let curve = drive_curve(
        &dist,
        args.rotation_in,
        args.rotation_out,
        args.lattice.kappa,
        &delays,
        execution(&args.lattice),
    )?;
    let rows = (0..delays.len()).map(|i| vec![curve.delays[i], curve.sigma_z[i], curve.metastable[i]]);
    emit(args.lattice.output.as_deref(), &output::table(&["delta_t", "sigma_z", "n_meta"], rows))
}

fn oracle(args: OracleArgs) -> Result<()> {
    let config = SuiteConfig { kappa: args.kappa, seed: args.seed, ..SuiteConfig::default() };
    let checks = suite::run(&config)?;
    emit(args.output.as_deref(), &output::oracle_report(&checks))?;
    match checks.iter().filter(|c| !c.passed()).count() {
        0 => Ok(()),
        failed => Err(RunError::OracleFailed { failed }),
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
