//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};
use spinpair_core::chain::{chain_pair_concurrence, Boundary, ChainParams};
use spinpair_core::model::{boundary_xi, ground_phase, PairParams};
use spinpair_core::thermal::{threshold_temperature, CouplingSign, ThermalPoint};

use crate::format::sig;
use crate::record::{
    ChainRecord, GroundRecord, Method, PointRecord, ThresholdRecord, ThresholdRow, THRESHOLD_CURVE_HEADER,
};
use crate::sweep::{run_sweep, Axis, AxisName, FixedParams, SweepSpec};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "spinpair",
    version,
    about = "Thermal entanglement of an inhomogeneous Heisenberg spin pair"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Gibbs state, concurrence and entanglement of formation at one point.
    #[command(allow_negative_numbers = true)]
    Point(PointArgs),
    /// Ground-state phase, or the phase boundary over a range of fields.
    #[command(allow_negative_numbers = true)]
    Ground(GroundArgs),
    /// Threshold temperature above which the pair is separable.
    #[command(allow_negative_numbers = true)]
    Threshold(ThresholdArgs),
    /// Concurrence on a two-axis grid, as CSV.
    #[command(allow_negative_numbers = true)]
    Sweep(SweepArgs),
    /// Pairwise concurrence in an open or periodic chain.
    #[command(allow_negative_numbers = true)]
    Chain(ChainArgs),
}

/// Exactly one of `--b` or `--xi`.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Inhomogeneity {
    /// Field inhomogeneity b.
    #[arg(long = "b")]
    pub b: Option<f64>,
    /// ξ = √(1 + b²/J²) ≥ 1.
    #[arg(long = "xi")]
    pub xi: Option<f64>,
}

impl Inhomogeneity {
    fn params(&self, coupling: f64, field: f64) -> spinpair_core::Result<PairParams> {
        match (self.b, self.xi) {
            (Some(b), None) => PairParams::new(coupling, field, b),
            (None, Some(xi)) => PairParams::from_xi(coupling, field, xi),
            _ => unreachable!("clap enforces exactly one"),
        }
    }
}

#[derive(Debug, Args)]
pub struct PointArgs {
    /// Exchange coupling (negative: ferromagnetic).
    #[arg(long = "J")]
    pub coupling: f64,
    /// Uniform field.
    #[arg(long = "B")]
    pub field: f64,
    #[command(flatten)]
    pub inhomogeneity: Inhomogeneity,
    /// Temperature (k_B = 1).
    #[arg(long = "T")]
    pub temperature: f64,
    #[arg(long, value_enum, default_value_t = Method::Closed)]
    pub method: Method,
    /// Print a JSON object instead of CSV.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("inhom").args(["b", "xi"]).multiple(false)))]
pub struct GroundArgs {
    #[arg(long = "J")]
    pub coupling: f64,
    #[arg(long = "B", conflicts_with = "boundary_curve")]
    pub field: Option<f64>,
    #[arg(long = "b", conflicts_with = "boundary_curve")]
    pub b: Option<f64>,
    #[arg(long = "xi", conflicts_with = "boundary_curve")]
    pub xi: Option<f64>,
    /// Emit the critical ξ as a function of B instead of a single record.
    #[arg(long, requires_all = ["field_min", "field_max", "steps"])]
    pub boundary_curve: bool,
    #[arg(long = "B-min", requires = "boundary_curve")]
    pub field_min: Option<f64>,
    #[arg(long = "B-max", requires = "boundary_curve")]
    pub field_max: Option<f64>,
    #[arg(long, requires = "boundary_curve")]
    pub steps: Option<usize>,
    #[arg(long, conflicts_with = "boundary_curve")]
    pub json: bool,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("target").args(["xi", "xi_range"]).required(true)))]
pub struct ThresholdArgs {
    /// Coupling; only its sign and magnitude matter. Required unless --xi-range is given.
    #[arg(long = "J", required_unless_present = "xi_range")]
    pub coupling: Option<f64>,
    #[arg(long = "xi")]
    pub xi: Option<f64>,
    /// `MIN,MAX`: tabulate both coupling signs over this ξ range.
    #[arg(long = "xi-range", value_parser = parse_pair::<f64>, requires = "steps")]
    pub xi_range: Option<(f64, f64)>,
    #[arg(long, requires = "xi_range")]
    pub steps: Option<usize>,
    #[arg(long, conflicts_with = "xi_range")]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Outer axis, `NAME:MIN:MAX:STEPS` with NAME one of T, B, xi, b.
    #[arg(long)]
    pub axis1: Axis,
    /// Inner axis, same syntax as --axis1.
    #[arg(long)]
    pub axis2: Axis,
    #[arg(long = "J")]
    pub coupling: f64,
    #[arg(long = "B")]
    pub field: Option<f64>,
    #[arg(long = "xi")]
    pub xi: Option<f64>,
    #[arg(long = "b")]
    pub b: Option<f64>,
    #[arg(long = "T")]
    pub temperature: Option<f64>,
    /// Space the T axis geometrically.
    #[arg(long)]
    pub log: bool,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ChainArgs {
    /// Number of sites.
    #[arg(long)]
    pub n: usize,
    #[arg(long = "J")]
    pub coupling: f64,
    /// Comma-separated site fields, one per site.
    #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true)]
    pub fields: Vec<f64>,
    #[arg(long = "T")]
    pub temperature: f64,
    /// `I,J` site indices with I < J.
    #[arg(long, value_parser = parse_pair::<usize>)]
    pub pair: (usize, usize),
    /// Close the chain into a ring.
    #[arg(long)]
    pub periodic: bool,
    #[arg(long)]
    pub json: bool,
}

fn parse_pair<T: std::str::FromStr>(s: &str) -> Result<(T, T), String>
where
    T::Err: std::fmt::Display,
{
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected two comma-separated values, got {s:?}"))?;
    let p = |x: &str| x.trim().parse::<T>().map_err(|e| format!("{x:?}: {e}"));
    Ok((p(a)?, p(b)?))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(CliError::stdout)
}

fn grid(min: f64, max: f64, steps: usize, what: &str) -> Result<Vec<f64>, CliError> {
    if steps < 2 {
        return Err(CliError::usage(format!("{what}: steps must be >= 2")));
    }
    if !(min.is_finite() && max.is_finite() && min < max) {
        return Err(CliError::usage(format!("{what}: need finite min < max")));
    }
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| {
            if i + 1 == steps {
                max
            } else {
                min + (max - min) * i as f64 / last
            }
        })
        .collect())
}

pub fn cmd_point(args: &PointArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let params = args.inhomogeneity.params(args.coupling, args.field)?;
    let pt = ThermalPoint::new(params, args.temperature)?;
    let rec = PointRecord::evaluate(&pt, args.method)?;
    emit(out, &if args.json { rec.to_json() } else { rec.to_csv() })
}

pub fn cmd_ground(args: &GroundArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if !(args.coupling.is_finite() && args.coupling != 0.0) {
        return Err(CliError::usage("--J must be finite and nonzero"));
    }
    if args.boundary_curve {
        let (lo, hi) = (args.field_min.unwrap_or(0.0), args.field_max.unwrap_or(0.0));
        let fields = grid(lo, hi, args.steps.unwrap_or(0), "--B-min/--B-max")?;
        let mut text = String::from("B,xi_boundary\n");
        for b in fields {
            text.push_str(&format!("{},{}\n", sig(b), sig(boundary_xi(args.coupling, b))));
        }
        return emit(out, &text);
    }
    let field = args.field.ok_or_else(|| CliError::usage("--B is required"))?;
    let params = match (args.b, args.xi) {
        (Some(b), None) => PairParams::new(args.coupling, field, b)?,
        (None, Some(xi)) => PairParams::from_xi(args.coupling, field, xi)?,
        _ => return Err(CliError::usage("exactly one of --b or --xi is required")),
    };
    let rec = GroundRecord::new(&params, &ground_phase(&params));
    emit(out, &if args.json { rec.to_json() } else { rec.to_csv() })
}

pub fn cmd_threshold(args: &ThresholdArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let coupling = args.coupling.unwrap_or(1.0);
    if !(coupling.is_finite() && coupling != 0.0) {
        return Err(CliError::usage("--J must be finite and nonzero"));
    }
    if let Some((lo, hi)) = args.xi_range {
        let scale = coupling.abs();
        let mut text = format!("{THRESHOLD_CURVE_HEADER}\n");
        for xi in grid(lo, hi, args.steps.unwrap_or(0), "--xi-range")? {
            let ferro = threshold_temperature(CouplingSign::Ferromagnetic, xi)?;
            let antiferro = threshold_temperature(CouplingSign::Antiferromagnetic, xi)?;
            let row = ThresholdRow {
                xi,
                ferro: ferro.temperature.map(|t| t * scale),
                antiferro: antiferro.temperature.map(|t| t * scale),
            };
            text.push_str(&row.to_csv_line());
        }
        return emit(out, &text);
    }
    let xi = args.xi.expect("clap requires --xi or --xi-range");
    let r = threshold_temperature(CouplingSign::of(coupling), xi)?;
    let rec = ThresholdRecord::new(coupling, xi, &r);
    emit(out, &if args.json { rec.to_json() } else { rec.to_csv() })
}

impl SweepArgs {
    pub fn spec(&self) -> Result<SweepSpec, CliError> {
        let (mut axis1, mut axis2) = (self.axis1, self.axis2);
        if self.log {
            let t_axis = [&mut axis1, &mut axis2]
                .into_iter()
                .find(|a| a.name == AxisName::Temperature)
                .ok_or_else(|| CliError::usage("--log needs a T axis"))?;
            t_axis.log = true;
        }
        Ok(SweepSpec {
            axis1,
            axis2,
            coupling: self.coupling,
            fixed: FixedParams {
                field: self.field,
                xi: self.xi,
                inhomogeneity: self.b,
                temperature: self.temperature,
            },
        })
    }
}

pub fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let grid = run_sweep(&args.spec()?, args.jobs)?;
    match &args.out {
        None => grid.write_csv(out).map_err(CliError::stdout),
        Some(path) => {
            let io_err = |source| CliError::Io {
                path: path.clone(),
                source,
            };
            let file = File::create(path).map_err(io_err)?;
            grid.write_csv(BufWriter::new(file)).map_err(io_err)
        }
    }
}

pub fn cmd_chain(args: &ChainArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if args.fields.len() != args.n {
        return Err(CliError::usage(format!(
            "--fields has {} values but --n is {}",
            args.fields.len(),
            args.n
        )));
    }
    let boundary = if args.periodic {
        Boundary::Periodic
    } else {
        Boundary::Open
    };
    let cp = ChainParams::new(args.coupling, args.fields.clone(), boundary)?;
    let report = chain_pair_concurrence(&cp, args.pair, args.temperature)?;
    let rec = ChainRecord::new(&cp, &report);
    emit(out, &if args.json { rec.to_json() } else { rec.to_csv() })
}

pub fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Point(a) => cmd_point(a, out),
        Command::Ground(a) => cmd_ground(a, out),
        Command::Threshold(a) => cmd_threshold(a, out),
        Command::Sweep(a) => cmd_sweep(a, out),
        Command::Chain(a) => cmd_chain(a, out),
    }
}

/// Parses `args` (including the program name), runs the subcommand and
/// returns the process exit code. Help and version text go to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
