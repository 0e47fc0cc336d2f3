//! `steer`: command-line access to bounds, optimization, hemisphere
//! constructions, violations, sweeps, PPT checks and table reproduction.
//!
//! Exit codes: 0 success, 1 reproduction mismatch, 2 invalid input or usage,
//! 3 capacity exceeded. Data goes to stdout, diagnostics to stderr.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use steering_core::golden;
use steering_core::hemisphere::{
    all_ones_bound, analytic_bound, build_hemisphere_set, convergence_table, exact_bound_small, HemisphereConfig,
};
use steering_core::io::{self, format_sig12 as sig, OptimizationReport};
use steering_core::optimizer::{anneal, anneal_parallel, AnnealingConfig};
use steering_core::qstate::{min_eigenvalue, partial_transpose};
use steering_core::violation::{critical_parameter, detect, sweep, Family, SweepGrid};
use steering_core::{lhs_bound, MeasurementSet, SteeringError};

mod reproduce;

pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Core(SteeringError),
    Usage(String),
    Mismatch(String),
    Io(std::io::Error),
}

impl From<SteeringError> for CliError {
    fn from(e: SteeringError) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_capacity() => EXIT_CAPACITY,
            CliError::Mismatch(_) => EXIT_MISMATCH,
            _ => EXIT_VALIDATION,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) | CliError::Mismatch(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

type CliResult<T = ()> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "steer", version, about = "Linear EPR-steering inequalities: LHS bounds, optimal sets, violations")]
pub struct Cli {
    /// Worker threads for parallel paths (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact LHS bound of a measurement set.
    Bound {
        #[command(flatten)]
        set: SetArg,
        /// Write the bound result as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Re-emit the set as measurement-set JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a set with minimal bound by simulated annealing.
    Optimize {
        /// Number of settings N (2..=20).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Annealing configuration JSON; --n and --seed override it.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Write the result (set, bound, config echo) as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the canonical best set as measurement-set JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rounded hemisphere construction and its all-ones bound.
    Hemisphere {
        /// Number of bands parameter n (band angles kπ/(2n), k < n).
        #[arg(long)]
        n: usize,
        /// Density P: band k holds max(1, round(P sin kα)) points.
        #[arg(long)]
        density: f64,
        /// Convergence table for n' = 2..=n at this density.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write the set as measurement-set JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Optimal quantum value of a state against a set, and detection.
    Violate {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        set: SetArg,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Detection over a uniform parameter grid of a state family.
    Sweep {
        #[arg(long)]
        family: FamilyArg,
        #[command(flatten)]
        set: SetArg,
        /// Grid points per axis.
        #[arg(long, default_value_t = 101)]
        n: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Minimal eigenvalue of the partial transpose.
    Ppt {
        #[command(flatten)]
        state: StateArgs,
        /// Write the state as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Regenerate a published table or comparison and check it.
    Reproduce {
        target: reproduce::Target,
        /// Output directory for the report and data files.
        #[arg(long, default_value = "reproduce")]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
struct SetArg {
    /// Measurement-set JSON file, or a built-in key such as table2-n6.
    #[arg(long = "set")]
    set: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    Werner,
    #[value(alias = "generalized-werner", alias = "generalized_werner")]
    Gw,
    Mems,
    Avn,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Werner => Family::Werner,
            FamilyArg::Gw => Family::GeneralizedWerner,
            FamilyArg::Mems => Family::Mems,
            FamilyArg::Avn => Family::Avn,
        }
    }
}

#[derive(Debug, Args)]
struct StateArgs {
    #[arg(long)]
    family: FamilyArg,
    #[arg(long)]
    v: Option<f64>,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
}

impl StateArgs {
    fn build(&self) -> CliResult<steering_core::DensityMatrix> {
        let family = Family::from(self.family);
        let need = |x: Option<f64>, flag: &str| {
            x.ok_or_else(|| CliError::Usage(format!("family {} requires --{flag}", family.name())))
        };
        let p1 = match family {
            Family::Mems => need(self.gamma, "gamma")?,
            _ => need(self.v, "v")?,
        };
        let p2 = if family.is_two_dimensional() {
            Some(need(self.theta, "theta")?)
        } else {
            None
        };
        Ok(family.state(p1, p2)?)
    }
}

/// Resolves `--set`: an existing file, else a built-in golden key.
pub fn load_set(spec: &str, err: &mut dyn Write) -> CliResult<MeasurementSet> {
    let path = Path::new(spec);
    if path.is_file() {
        let (set, delta) = io::read_set(path)?;
        if delta > 0.0 {
            writeln!(err, "note: directions renormalized (max delta {delta:.3e})")?;
        }
        return Ok(set);
    }
    match golden::lookup(spec) {
        Some(g) => {
            let (set, delta) = g.measurement_set()?;
            if delta > 1e-12 {
                writeln!(err, "note: {} directions renormalized (max delta {delta:.3e})", g.key())?;
            }
            Ok(set)
        }
        None => {
            let keys: Vec<String> = golden::all_sets().iter().map(|g| g.key()).collect();
            Err(CliError::Usage(format!(
                "'{spec}' is neither a file nor a built-in set (built-in: {})",
                keys.join(", ")
            )))
        }
    }
}

fn signs_text(signs: &[i8]) -> String {
    signs.iter().map(|&s| if s > 0 { "+1" } else { "-1" }).collect::<Vec<_>>().join(" ")
}

fn vec_text(v: [f64; 3]) -> String {
    format!("{} {} {}", sig(v[0]), sig(v[1]), sig(v[2]))
}

fn cmd_bound(
    set: &SetArg,
    json: Option<&Path>,
    set_out: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult {
    let set = load_set(&set.set, err)?;
    let r = lhs_bound(&set)?;
    writeln!(out, "N = {}", set.len())?;
    writeln!(out, "C_N = {}", sig(r.value))?;
    writeln!(out, "signs = {}", signs_text(&r.signs))?;
    writeln!(out, "resultant = {}", vec_text(r.resultant))?;
    if let Some(p) = json {
        io::write_json(p, &r)?;
    }
    if let Some(p) = set_out {
        io::write_set(p, &set)?;
    }
    Ok(())
}

fn cmd_optimize(
    n: Option<usize>,
    seed: Option<u64>,
    config: Option<&Path>,
    threads: Option<usize>,
    json: Option<&Path>,
    set_out: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult {
    let mut c = match (config, n) {
        (Some(p), _) => io::read_config(p)?,
        (None, Some(n)) => AnnealingConfig::new(n, seed.unwrap_or(1)),
        (None, None) => return Err(CliError::Usage("optimize needs --n or --config".into())),
    };
    if let Some(n) = n {
        if n != c.n_settings {
            let d = AnnealingConfig::new(n, c.seed);
            c.n_settings = n;
            c.sweeps_per_temperature = d.sweeps_per_temperature;
        }
    }
    if let Some(s) = seed {
        c.seed = s;
    }
    c.validate()?;
    writeln!(
        err,
        "annealing N={} seed={} restarts={} ({} temperatures x {} sweeps)",
        c.n_settings,
        c.seed,
        c.restarts,
        c.temperature_steps(),
        c.sweeps_per_temperature
    )?;
    let r = if threads == Some(1) { anneal(&c)? } else { anneal_parallel(&c)? };
    writeln!(out, "N = {}", c.n_settings)?;
    writeln!(out, "C_N = {}", sig(r.best_bound))?;
    writeln!(out, "evaluations = {}", r.evaluations)?;
    for d in r.best_set.rows() {
        writeln!(out, "b = {}", vec_text(d))?;
    }
    if let Some(p) = json {
        io::write_json(p, &OptimizationReport::new(&c, &r))?;
    }
    if let Some(p) = set_out {
        io::write_set(p, &r.best_set)?;
    }
    Ok(())
}

fn cmd_hemisphere(
    n: usize,
    density: f64,
    csv: Option<&Path>,
    json: Option<&Path>,
    out: &mut dyn Write,
) -> CliResult {
    let config = HemisphereConfig::new(n, density);
    let hs = build_hemisphere_set(&config)?;
    writeln!(out, "n = {n}")?;
    writeln!(out, "N = {}", hs.len())?;
    writeln!(out, "points_per_band = {:?}", hs.points_per_band)?;
    writeln!(out, "all_ones = {}", sig(all_ones_bound(&hs)))?;
    writeln!(out, "analytic = {}", sig(analytic_bound(n)?))?;
    if hs.len() <= 20 {
        let exact = exact_bound_small(&hs)?;
        writeln!(out, "exact = {}", sig(exact.bound.value))?;
        writeln!(out, "all_ones_maximizing = {}", exact.all_ones_maximizing)?;
    }
    if let Some(p) = csv {
        let rows = convergence_table(2..=n, |_| density)?;
        io::convergence_csv_file(p, &rows)?;
    }
    if let Some(p) = json {
        io::write_set(p, &hs.set)?;
    }
    Ok(())
}

fn cmd_violate(state: &StateArgs, set: &SetArg, json: Option<&Path>, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let rho = state.build()?;
    let set = load_set(&set.set, err)?;
    let r = detect(&rho, &set)?;
    writeln!(out, "Q = {}", sig(r.quantum_value))?;
    writeln!(out, "C_N = {}", sig(r.lhs_bound))?;
    writeln!(out, "margin = {}", sig(r.margin))?;
    writeln!(out, "detected = {}", r.detected)?;
    if let Some(p) = json {
        io::write_json(p, &r)?;
    }
    Ok(())
}

fn cmd_sweep(family: FamilyArg, set: &SetArg, points: usize, csv: Option<&Path>, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let family = Family::from(family);
    let set = load_set(&set.set, err)?;
    let grid = SweepGrid::uniform(family, points, set.label());
    let rows = sweep(&grid, &set)?;
    let detected = rows.iter().filter(|r| r.result.detected).count();
    writeln!(out, "points = {}", rows.len())?;
    writeln!(out, "detected = {detected}")?;
    writeln!(out, "C_N = {}", sig(lhs_bound(&set)?.value))?;
    if !family.is_two_dimensional() {
        match critical_parameter(family, &grid.axis1, None, &set, 1e-6)? {
            Some(c) => {
                writeln!(out, "first_detected = {}", sig(c.first_detected))?;
                writeln!(out, "critical = {}", sig(c.refined))?;
            }
            None => writeln!(out, "critical = none")?,
        }
    }
    if let Some(p) = csv {
        io::sweep_csv_file(p, &rows)?;
    }
    Ok(())
}

fn cmd_ppt(state: &StateArgs, json: Option<&Path>, out: &mut dyn Write) -> CliResult {
    let rho = state.build()?;
    let m = min_eigenvalue(&partial_transpose(&rho))?;
    writeln!(out, "min_pt_eigenvalue = {}", sig(m))?;
    writeln!(out, "entangled = {}", m < 0.0)?;
    if let Some(p) = json {
        io::write_state(p, &rho)?;
    }
    Ok(())
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        // a pool may already exist when run() is called repeatedly in-process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match cli.command {
        Command::Bound { set, json, out: set_out } => cmd_bound(&set, json.as_deref(), set_out.as_deref(), out, err),
        Command::Optimize {
            n,
            seed,
            config,
            json,
            out: set_out,
        } => cmd_optimize(n, seed, config.as_deref(), cli.threads, json.as_deref(), set_out.as_deref(), out, err),
        Command::Hemisphere { n, density, csv, json } => cmd_hemisphere(n, density, csv.as_deref(), json.as_deref(), out),
        Command::Violate { state, set, json } => cmd_violate(&state, &set, json.as_deref(), out, err),
        Command::Sweep { family, set, n, csv } => cmd_sweep(family, &set, n, csv.as_deref(), out, err),
        Command::Ppt { state, json } => cmd_ppt(&state, json.as_deref(), out),
        Command::Reproduce { target, out: dir } => reproduce::run(target, &dir, out, err),
    }
}

/// Parses `argv` (including the program name) and runs it; returns the
/// process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Mismatch("x".into()).exit_code(), EXIT_MISMATCH);
        assert_eq!(CliError::Usage("x".into()).exit_code(), EXIT_VALIDATION);
        let cap = SteeringError::Capacity {
            what: "t",
            n: 30,
            limit: 20,
        };
        assert_eq!(CliError::from(cap).exit_code(), EXIT_CAPACITY);
    }

    #[test]
    fn in_process_run() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["steer", "bound", "--set", "table1-n3"], &mut out, &mut err), 0);
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("C_N = 0.577350269190"), "{text}");
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["steer", "--help"], &mut out, &mut err), 0);
        assert!(String::from_utf8(out).unwrap().contains("reproduce"));
    }

    #[test]
    fn signs_and_vectors() {
        assert_eq!(signs_text(&[1, -1, 1]), "+1 -1 +1");
        assert_eq!(vec_text([0.5, 0.0, 1.0]), "0.500000000000 0.00000000000 1.00000000000");
    }
}
