//! Command-line front end.
//!
//! Every command resolves its parameters (flags > optional key=value
//! config file > defaults), runs the corresponding solver, writes CSV/JSON
//! artifacts plus a run manifest into the output directory, and prints a
//! short report. Exit codes distinguish parameter errors, the no-bound-state
//! and no-threshold regimes, and solver failures.

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;
use std::collections::HashMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::dynamics::{
    self, Classification, IntegratorMode, IntegratorSettings, PacketState, ThresholdSettings,
};
use crate::error::Error;
use crate::model::{gamma_to_lambda, lambda_to_gamma, ScaledParams};
use crate::oracle::{self, GridConfig, ImaginaryTimeSettings, SplitStepSettings};
use crate::util::{atomic_write, fmt_sig15};
use crate::variational;

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_PARAM: i32 = 2;
pub const EXIT_NO_BOUND_STATE: i32 = 3;
pub const EXIT_NO_THRESHOLD: i32 = 4;
pub const EXIT_SOLVER: i32 = 5;

/// Environment variable overriding the default output directory.
pub const OUT_DIR_ENV: &str = "GPE_MORSE_OUT";

#[derive(Parser)]
#[command(name = "gpe-morse", version, about = "Bound states and wave-packet dynamics of the 1D GPE in a Morse trap")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output directory for CSV/JSON artifacts.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Optional key=value config file supplying defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Variational ground state at fixed (K, lambda).
    GroundState(GroundStateArgs),
    /// Critical coupling where the bound state disappears.
    Critical(CriticalArgs),
    /// Integrate the Gaussian-packet ODEs and classify the run.
    Dynamics(DynamicsArgs),
    /// Threshold momenta/energies by bisection.
    Threshold(ThresholdArgs),
    /// Grid-GPE cross-checks.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct GroundStateArgs {
    #[arg(long)]
    k: f64,
    #[arg(long, conflicts_with = "gamma")]
    lambda: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    /// Emit the full reference grid K in {2..6}, lambda = 1 as CSV.
    #[arg(long)]
    table1: bool,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct CriticalArgs {
    #[arg(long, required_unless_present = "sweep")]
    k: Option<f64>,
    /// Comma-separated K values; emits (K, lambda_c) CSV plus the fitted
    /// power-law exponent.
    #[arg(long)]
    sweep: Option<String>,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct DynamicsArgs {
    #[arg(long)]
    k: f64,
    #[arg(long, allow_negative_numbers = true)]
    gamma: f64,
    #[arg(long)]
    delta0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    p0: Option<f64>,
    #[arg(long)]
    t_max: Option<f64>,
    #[arg(long)]
    dt: Option<f64>,
    /// Use the embedded adaptive integrator instead of fixed-step RK4.
    #[arg(long)]
    adaptive: bool,
    #[arg(long)]
    x_esc: Option<f64>,
}

#[derive(Args)]
struct ThresholdArgs {
    #[arg(long)]
    k: Option<f64>,
    /// Comma-separated K sweep.
    #[arg(long)]
    k_list: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    /// Comma-separated gamma list.
    #[arg(long, allow_negative_numbers = true)]
    gamma_list: Option<String>,
    #[arg(long)]
    delta0: Option<f64>,
    /// Preset: K in {2..6} x gamma in {0.5, -0.5}.
    #[arg(long)]
    table2: bool,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct OracleArgs {
    #[command(subcommand)]
    command: OracleCommand,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Real-time split-step evolution; writes moment series and a final
    /// snapshot.
    Evolve {
        #[arg(long)]
        k: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        gamma: f64,
        #[arg(long)]
        delta0: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        p0: Option<f64>,
        #[arg(long)]
        t_max: Option<f64>,
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long)]
        hbar_eff: Option<f64>,
        /// Right edge of the grid box.
        #[arg(long)]
        x_max: Option<f64>,
        /// Grid points (power of two).
        #[arg(long)]
        n: Option<usize>,
    },
    /// Imaginary-time ground-state energy.
    Ground {
        #[arg(long)]
        k: f64,
        #[arg(long, conflicts_with = "gamma")]
        lambda: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        gamma: Option<f64>,
        #[arg(long)]
        hbar_eff: Option<f64>,
    },
    /// Run both solvers from the same packet and report deviations.
    Compare {
        #[arg(long)]
        k: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        gamma: f64,
        #[arg(long)]
        delta0: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        p0: Option<f64>,
        #[arg(long)]
        t_max: Option<f64>,
    },
}

/// key=value defaults loaded from `--config`.
struct FileConfig(HashMap<String, String>);

impl FileConfig {
    fn load(path: Option<&Path>) -> Result<Self, Error> {
        let mut map = HashMap::new();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path)?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (key, value) = line.split_once('=').ok_or_else(|| {
                    Error::InvalidParameter(format!(
                        "config line {} is not key=value: {line}",
                        lineno + 1
                    ))
                })?;
                map.insert(key.trim().to_string(), value.trim().to_string());
            }
        }
        Ok(Self(map))
    }

    fn f64(&self, key: &str) -> Result<Option<f64>, Error> {
        match self.0.get(key) {
            Some(raw) => raw
                .parse::<f64>()
                .map(Some)
                .map_err(|_| Error::InvalidParameter(format!("config key {key}: bad number {raw}"))),
            None => Ok(None),
        }
    }

    fn string(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }
}

/// Run manifest written atomically alongside every output set.
#[derive(Serialize)]
struct RunManifest {
    command: String,
    version: String,
    parameters: serde_json::Value,
    settings: serde_json::Value,
    outputs: Vec<String>,
    duration_seconds: f64,
}

struct OutputWriter {
    dir: PathBuf,
    outputs: Vec<String>,
}

impl OutputWriter {
    fn new(dir: PathBuf) -> Result<Self, Error> {
        std::fs::create_dir_all(&dir)?;
        Ok(Self { dir, outputs: Vec::new() })
    }

    fn write(&mut self, name: &str, contents: &str) -> Result<(), Error> {
        atomic_write(&self.dir.join(name), contents)?;
        self.outputs.push(name.to_string());
        Ok(())
    }

    fn finish(
        mut self,
        command: &str,
        parameters: serde_json::Value,
        settings: serde_json::Value,
        started: Instant,
    ) -> Result<(), Error> {
        let manifest = RunManifest {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            parameters,
            settings,
            outputs: self.outputs.clone(),
            duration_seconds: started.elapsed().as_secs_f64(),
        };
        let name = format!("{command}_manifest.json");
        let body = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        self.write(&name, &body)
    }
}

/// Parses the arguments and runs one command, returning the process exit
/// code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version through this path too.
            let _ = e.print();
            return if e.use_stderr() { EXIT_PARAM } else { EXIT_OK };
        }
    };
    match dispatch(cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParameter(_) => EXIT_PARAM,
        Error::NoBoundState { .. } => EXIT_NO_BOUND_STATE,
        Error::NoThreshold => EXIT_NO_THRESHOLD,
        Error::Io(_) => EXIT_OTHER,
        _ => EXIT_SOLVER,
    }
}

fn dispatch(cli: Cli) -> Result<(), Error> {
    let config = FileConfig::load(cli.config.as_deref())?;
    let out_dir = cli
        .out
        .or_else(|| config.string("out").map(PathBuf::from))
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    match cli.command {
        Command::GroundState(args) => cmd_ground_state(args, &config, out_dir),
        Command::Critical(args) => cmd_critical(args, &config, out_dir),
        Command::Dynamics(args) => cmd_dynamics(args, &config, out_dir),
        Command::Threshold(args) => cmd_threshold(args, &config, out_dir),
        Command::Oracle(args) => cmd_oracle(args, &config, out_dir),
    }
}

fn resolve_lambda(k: f64, lambda: Option<f64>, gamma: Option<f64>) -> Result<f64, Error> {
    match (lambda, gamma) {
        (Some(l), None) => Ok(l),
        (None, Some(g)) => Ok(gamma_to_lambda(g, k)),
        (None, None) => Err(Error::InvalidParameter(
            "one of --lambda or --gamma is required".into(),
        )),
        (Some(_), Some(_)) => Err(Error::InvalidParameter(
            "--lambda and --gamma are mutually exclusive".into(),
        )),
    }
}

fn parse_list(raw: &str, what: &str) -> Result<Vec<f64>, Error> {
    raw.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidParameter(format!("bad {what} value: {s}")))
        })
        .collect()
}

fn cmd_ground_state(
    args: GroundStateArgs,
    config: &FileConfig,
    out_dir: PathBuf,
) -> Result<(), Error> {
    let started = Instant::now();
    let tol = args
        .tol
        .or(config.f64("tol")?)
        .unwrap_or(variational::DEFAULT_GRADIENT_TOL);
    let lambda = resolve_lambda(args.k, args.lambda, args.gamma)?;
    let mut writer = OutputWriter::new(out_dir)?;

    if args.table1 {
        let mut csv = String::from("K,E_asymptotic,E_quadratic,E_full,alpha_star\n");
        for k in 2..=6 {
            let k = k as f64;
            let r = variational::minimize_energy(k, 1.0, tol)?;
            csv.push_str(&format!(
                "{},{},{},{},{}\n",
                fmt_sig15(k),
                fmt_sig15(variational::asymptotic_energy(k, 1.0)),
                fmt_sig15(r.e_quadratic),
                fmt_sig15(r.e_full),
                fmt_sig15(r.alpha_star),
            ));
        }
        writer.write("table1.csv", &csv)?;
        print!("{csv}");
    }

    let result = variational::minimize_energy(args.k, lambda, tol)?;
    println!(
        "K = {}, lambda = {}: alpha* = {:.10}, E_full = {:.10}, E_quadratic = {:.10}, E_asymptotic = {:.10}",
        args.k,
        lambda,
        result.alpha_star,
        result.e_full,
        result.e_quadratic,
        variational::asymptotic_energy(args.k, lambda)
    );
    writer.write(
        "ground_state.json",
        &serde_json::to_string_pretty(&json!({
            "k": args.k,
            "lambda": lambda,
            "gamma": lambda_to_gamma(lambda, args.k),
            "result": result,
            "e_asymptotic": variational::asymptotic_energy(args.k, lambda),
        }))
        .expect("report serializes"),
    )?;
    writer.finish(
        "ground_state",
        json!({ "k": args.k, "lambda": lambda, "table1": args.table1 }),
        json!({ "gradient_tol": tol }),
        started,
    )
}

fn cmd_critical(args: CriticalArgs, config: &FileConfig, out_dir: PathBuf) -> Result<(), Error> {
    let started = Instant::now();
    let tol = args
        .tol
        .or(config.f64("tol")?)
        .unwrap_or(variational::DEFAULT_LAMBDA_TOL);
    let mut writer = OutputWriter::new(out_dir)?;

    if let Some(raw) = &args.sweep {
        let ks = parse_list(raw, "K")?;
        let mut csv = String::from("K,lambda_c,gamma_c,lambda_c_asymptotic\n");
        let mut lambdas = Vec::with_capacity(ks.len());
        for &k in &ks {
            let lc = variational::critical_lambda(k, tol)?;
            lambdas.push(lc);
            csv.push_str(&format!(
                "{},{},{},{}\n",
                fmt_sig15(k),
                fmt_sig15(lc),
                fmt_sig15(lambda_to_gamma(lc, k)),
                fmt_sig15(variational::critical_lambda_asymptotic(k)),
            ));
        }
        let slope = variational::log_log_slope(&ks, &lambdas);
        writer.write("critical_sweep.csv", &csv)?;
        print!("{csv}");
        println!("fitted exponent of log lambda_c vs log K: {slope:.6}");
        writer.finish(
            "critical",
            json!({ "sweep": ks, "tol": tol }),
            json!({ "fitted_exponent": slope }),
            started,
        )
    } else {
        let k = args.k.expect("clap enforces --k without --sweep");
        let lc = variational::critical_lambda(k, tol)?;
        println!(
            "K = {}: lambda_c = {:.8}, gamma_c = {:.8}, lambda_c(asymptotic) = {:.8}",
            k,
            lc,
            lambda_to_gamma(lc, k),
            variational::critical_lambda_asymptotic(k)
        );
        writer.write(
            "critical.json",
            &serde_json::to_string_pretty(&json!({
                "k": k,
                "lambda_c": lc,
                "gamma_c": lambda_to_gamma(lc, k),
                "lambda_c_asymptotic": variational::critical_lambda_asymptotic(k),
            }))
            .expect("report serializes"),
        )?;
        writer.finish("critical", json!({ "k": k, "tol": tol }), json!({}), started)
    }
}

fn cmd_dynamics(args: DynamicsArgs, config: &FileConfig, out_dir: PathBuf) -> Result<(), Error> {
    let started = Instant::now();
    let delta0 = args.delta0.or(config.f64("delta0")?).unwrap_or(0.4);
    let p0 = args.p0.or(config.f64("p0")?).unwrap_or(0.0);
    let t_max = args.t_max.or(config.f64("t_max")?).unwrap_or(200.0);
    let x_esc = args.x_esc.or(config.f64("x_esc")?).unwrap_or(15.0);
    let mut settings = IntegratorSettings {
        dt: args.dt.or(config.f64("dt")?).unwrap_or(1e-3),
        stop_x: Some(x_esc),
        ..Default::default()
    };
    if args.adaptive {
        settings.mode = IntegratorMode::Adaptive;
    }

    let init = PacketState::initial(p0, delta0);
    let traj = dynamics::integrate(init, args.k, args.gamma, t_max, &settings)?;
    let verdict = dynamics::classify(&traj, x_esc, t_max)?;
    let width = dynamics::width_behavior(&traj)?;

    let mut writer = OutputWriter::new(out_dir)?;
    writer.write("trajectory.csv", &traj.to_csv())?;
    let verdict_json = serde_json::to_string_pretty(&json!({
        "classification": verdict,
        "width_behavior": width,
        "initial_energy": crate::model::initial_energy(&ScaledParams::new(
            args.k, args.gamma, delta0, p0,
        )?)?,
    }))
    .expect("verdict serializes");
    writer.write("dynamics_verdict.json", &verdict_json)?;
    println!("{verdict_json}");
    writer.finish(
        "dynamics",
        json!({ "k": args.k, "gamma": args.gamma, "delta0": delta0, "p0": p0, "t_max": t_max }),
        serde_json::to_value(&settings).expect("settings serialize"),
        started,
    )
}

fn cmd_threshold(args: ThresholdArgs, config: &FileConfig, out_dir: PathBuf) -> Result<(), Error> {
    let started = Instant::now();
    let delta0 = args.delta0.or(config.f64("delta0")?).unwrap_or(0.4);
    let tol = args.tol.or(config.f64("tol")?).unwrap_or(1e-3);

    let (ks, gammas) = if args.table2 {
        (vec![2.0, 3.0, 4.0, 5.0, 6.0], vec![0.5, -0.5])
    } else {
        let ks = match (&args.k, &args.k_list) {
            (Some(k), None) => vec![*k],
            (None, Some(raw)) => parse_list(raw, "K")?,
            _ => {
                return Err(Error::InvalidParameter(
                    "provide exactly one of --k / --k-list (or --table2)".into(),
                ))
            }
        };
        let gammas = match (&args.gamma, &args.gamma_list) {
            (Some(g), None) => vec![*g],
            (None, Some(raw)) => parse_list(raw, "gamma")?,
            _ => {
                return Err(Error::InvalidParameter(
                    "provide exactly one of --gamma / --gamma-list (or --table2)".into(),
                ))
            }
        };
        (ks, gammas)
    };

    let rows = dynamics::threshold_energy_table(&ks, &gammas, delta0, tol);
    let mut csv = String::from("K,gamma,p_th,E_th,status\n");
    for row in &rows {
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt_sig15(row.k),
            fmt_sig15(row.gamma),
            row.p_th.map(fmt_sig15).unwrap_or_default(),
            row.e_th.map(fmt_sig15).unwrap_or_default(),
            row.status,
        ));
    }
    let name = if args.table2 { "table2.csv" } else { "threshold.csv" };
    let mut writer = OutputWriter::new(out_dir)?;
    writer.write(name, &csv)?;
    print!("{csv}");
    writer.finish(
        "threshold",
        json!({ "k": ks, "gamma": gammas, "delta0": delta0, "tol": tol, "table2": args.table2 }),
        json!({ "search": ThresholdSettings::default() }),
        started,
    )?;
    // A single-cell query without a threshold is a distinguished outcome.
    if rows.len() == 1 && rows[0].status == "no-threshold" {
        return Err(Error::NoThreshold);
    }
    Ok(())
}

fn cmd_oracle(args: OracleArgs, config: &FileConfig, out_dir: PathBuf) -> Result<(), Error> {
    let started = Instant::now();
    match args.command {
        OracleCommand::Evolve { k, gamma, delta0, p0, t_max, dt, hbar_eff, x_max, n } => {
            let delta0 = delta0.or(config.f64("delta0")?).unwrap_or(0.4);
            let p0 = p0.or(config.f64("p0")?).unwrap_or(0.0);
            let settings = SplitStepSettings {
                dt: dt.or(config.f64("dt")?).unwrap_or(5e-4),
                t_max: t_max.or(config.f64("t_max")?).unwrap_or(10.0),
                ..Default::default()
            };
            let mut cfg = GridConfig { hbar_eff, ..Default::default() };
            if let Some(x_max) = x_max {
                cfg.x_max = x_max;
            }
            if let Some(n) = n {
                cfg.n = n;
            }
            let mut wf = oracle::init_gaussian(0.0, p0, delta0, &cfg, k)?;
            let samples = oracle::split_step_evolve(&mut wf, gamma, &settings)?;
            let drift = (wf.norm - 1.0).abs();
            let residuals = oracle::ehrenfest_residuals(&samples);
            let mut writer = OutputWriter::new(out_dir)?;
            writer.write("moments.csv", &oracle::moments_csv(&samples))?;
            writer.write("snapshot.csv", &wf.snapshot_csv())?;
            println!(
                "evolved to t = {}: norm drift = {:.3e}, Ehrenfest residuals (max) x: {:.3e}, p: {:.3e}",
                samples.last().map(|s| s.t).unwrap_or(0.0),
                drift,
                residuals.x_identity_max,
                residuals.p_identity_max,
            );
            writer.finish(
                "oracle_evolve",
                json!({ "k": k, "gamma": gamma, "delta0": delta0, "p0": p0,
                        "hbar_eff": wf.hbar_eff }),
                serde_json::to_value(&settings).expect("settings serialize"),
                started,
            )
        }
        OracleCommand::Ground { k, lambda, gamma, hbar_eff } => {
            let lambda = resolve_lambda(k, lambda, gamma)?;
            let cfg = GridConfig { hbar_eff, ..Default::default() };
            let settings = ImaginaryTimeSettings::default();
            let e0 = oracle::imaginary_time_ground_state(k, lambda, &cfg, &settings)?;
            let hbar_used = cfg.hbar_eff.unwrap_or(std::f64::consts::SQRT_2 / k);
            println!("K = {k}, lambda = {lambda}: E0 = {e0:.10} (units hbar^2 a^2 / 2m, hbar_eff = {hbar_used})");
            let mut writer = OutputWriter::new(out_dir)?;
            writer.write(
                "ground.json",
                &serde_json::to_string_pretty(&json!({
                    "k": k,
                    "lambda": lambda,
                    "e0": e0,
                    "hbar_eff": hbar_used,
                }))
                .expect("report serializes"),
            )?;
            writer.finish(
                "oracle_ground",
                json!({ "k": k, "lambda": lambda, "hbar_eff": hbar_used }),
                serde_json::to_value(&settings).expect("settings serialize"),
                started,
            )
        }
        OracleCommand::Compare { k, gamma, delta0, p0, t_max } => {
            let delta0 = delta0.or(config.f64("delta0")?).unwrap_or(0.4);
            let p0 = p0.or(config.f64("p0")?).unwrap_or(0.0);
            let t_max = t_max.or(config.f64("t_max")?).unwrap_or(20.0);
            let report = oracle::compare_with_variational(k, gamma, delta0, p0, t_max)?;
            let body = serde_json::to_string_pretty(&report).expect("report serializes");
            let mut writer = OutputWriter::new(out_dir)?;
            writer.write("compare.json", &body)?;
            println!("{body}");
            writer.finish(
                "oracle_compare",
                json!({ "k": k, "gamma": gamma, "delta0": delta0, "p0": p0, "t_max": t_max }),
                json!({}),
                started,
            )
        }
    }
}

/// Maps a verdict to a stable short string for reports.
pub fn classification_label(c: &Classification) -> &'static str {
    match c {
        Classification::Trapped { .. } => "trapped",
        Classification::Escaped { .. } => "escaped",
    }
}
