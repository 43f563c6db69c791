use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use optosteer::config::{read_config, Config};
use optosteer::error::Error;
use optosteer::linalg::{self, read_cm};
use optosteer::model::{check_stability, Model, NoiseConvention};
use optosteer::plot::emit_plot_script;
use optosteer::steering::{gaussian_steering, Partition, SteeringClass};
use optosteer::sweep::{emit_csv, find_windows, read_csv, run_sweep, Predicate, SweepConfig};
use optosteer::{tol, Convention, CovarianceMatrix};

#[derive(Parser)]
#[command(
    name = "optosteer",
    version,
    about = "Gaussian steering in a two-cavity optomechanical system"
)]
struct Cli {
    /// Parameter file (flat `key = value`).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides the config file's noise convention.
    #[arg(long, global = true, value_parser = ["physical", "paper-literal"])]
    noise_convention: Option<String>,
    /// Output CSV path for `sweep`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    r_min: Option<f64>,
    #[arg(long, global = true)]
    r_max: Option<f64>,
    #[arg(long, global = true)]
    steps: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep r, write the CSV table and a gnuplot script next to it.
    Sweep,
    /// Steering between two parties of a covariance-matrix file.
    Steer {
        cm: PathBuf,
        /// Steering party, e.g. `0,1` or `A,B`.
        #[arg(long)]
        x: String,
        /// Steered party.
        #[arg(long)]
        y: String,
    },
    /// Physicality, symplectic spectrum, stability and Lyapunov residual.
    Check {
        /// Covariance-matrix file; without it the model from `--config` is checked.
        cm: Option<PathBuf>,
    },
    /// Grid intervals where a predicate holds.
    Windows {
        /// genuine_tripartite | one_way(P) | two_way(P) | no_way(P) | positive(COLUMN),
        /// with P one of ab, ab_c, ac_b, bc_a.
        #[arg(long)]
        predicate: String,
        /// Read rows from an existing sweep CSV instead of running a sweep.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

/// Process exit status: 2 config/parse, 3 numerical, 4 IO.
fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Io { .. } => 4,
        e if e.is_numerical() => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn load_config(cli: &Cli) -> Result<Config, Error> {
    let mut cfg = match &cli.config {
        Some(path) => read_config(path)?,
        None => Config::default(),
    };
    if let Some(conv) = &cli.noise_convention {
        cfg.noise_convention = conv.parse()?;
    }
    Ok(cfg)
}

fn sweep_config(cli: &Cli) -> Result<SweepConfig, Error> {
    let cfg = load_config(cli)?;
    let defaults = SweepConfig::default();
    let sweep = SweepConfig {
        physical: cfg.params,
        r_min: cli.r_min.unwrap_or(defaults.r_min),
        r_max: cli.r_max.unwrap_or(defaults.r_max),
        steps: cli.steps.unwrap_or(defaults.steps),
        noise_convention: cfg.noise_convention,
        output_path: cli.out.clone().unwrap_or(defaults.output_path),
    };
    sweep.validate()?;
    Ok(sweep)
}

fn run(cli: &Cli) -> Result<u8, Error> {
    match &cli.command {
        Command::Sweep => cmd_sweep(cli),
        Command::Steer { cm, x, y } => cmd_steer(cm, x, y),
        Command::Check { cm } => cmd_check(cli, cm.as_deref()),
        Command::Windows { predicate, csv } => cmd_windows(cli, predicate, csv.as_deref()),
    }
}

fn cmd_sweep(cli: &Cli) -> Result<u8, Error> {
    let cfg = sweep_config(cli)?;
    let rows = run_sweep(&cfg)?;
    emit_csv(&rows, &cfg.output_path)?;

    let script = cfg.output_path.with_extension("gp");
    let csv_name = cfg
        .output_path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "sweep.csv".into());
    emit_plot_script(&rows, &script, &csv_name)?;

    let failed = rows.iter().filter(|r| !r.is_ok()).count();
    println!(
        "wrote {} rows to {} ({failed} failed), plot script {}",
        rows.len(),
        cfg.output_path.display(),
        script.display()
    );
    Ok(if failed > 0 { 3 } else { 0 })
}

fn parse_modes(spec: &str) -> Result<Vec<usize>, Error> {
    let tokens: Vec<&str> = if spec.contains(',') {
        spec.split(',').map(str::trim).collect()
    } else if spec.chars().all(|c| c.is_ascii_alphabetic()) {
        spec.split("").filter(|s| !s.is_empty()).collect()
    } else {
        vec![spec.trim()]
    };
    tokens
        .into_iter()
        .map(|t| {
            if let Ok(i) = t.parse::<usize>() {
                return Ok(i);
            }
            match t.chars().next() {
                Some(c) if t.len() == 1 && c.is_ascii_alphabetic() => {
                    Ok((c.to_ascii_uppercase() as u8 - b'A') as usize)
                }
                _ => Err(Error::InvalidPartition(format!(
                    "bad mode `{t}` in `{spec}`"
                ))),
            }
        })
        .collect()
}

fn cmd_steer(cm_path: &Path, x: &str, y: &str) -> Result<u8, Error> {
    let cm = CovarianceMatrix::new(read_cm(cm_path)?, Convention::VacuumHalf)?;
    let part = Partition::new(parse_modes(x)?, parse_modes(y)?)?;
    let forward = gaussian_steering(&cm, &part)?;
    let backward = gaussian_steering(&cm, &part.reversed())?;
    for v in [&forward, &backward] {
        println!("G({}) = {:.9} nats", v.direction, v.value);
        println!("  nu_bar = {:?}", v.nu_bar);
    }
    let class = SteeringClass::from_values(forward.value, backward.value);
    println!("class({}) = {class}", part);
    Ok(0)
}

fn print_spectrum(cm: &CovarianceMatrix) -> bool {
    match cm.symplectic_spectrum() {
        Ok(nu) => {
            let ok = nu.iter().all(|&v| v >= 1.0 - 1e-8);
            println!(
                "symplectic spectrum of 2σ: {nu:?}{}",
                if ok { "" } else { "  (below 1)" }
            );
            ok
        }
        Err(e) => {
            println!("symplectic spectrum of 2σ: error: {e}");
            false
        }
    }
}

fn cmd_check(cli: &Cli, cm_path: Option<&Path>) -> Result<u8, Error> {
    let mut ok = true;
    let cm = match cm_path {
        Some(path) => {
            let cm = CovarianceMatrix::new(read_cm(path)?, Convention::VacuumHalf)?;
            println!("source: {}", path.display());
            println!("stability: n/a (no drift matrix for a CM file)");
            println!("lyapunov residual: n/a");
            cm
        }
        None => {
            let cfg = load_config(cli)?;
            let model = Model::new(&cfg.params, cfg.noise_convention)?;
            let d = &model.derived;
            println!(
                "source: {} (r = {}, noise = {})",
                cli.config
                    .as_ref()
                    .map(|p| p.display().to_string())
                    .unwrap_or_else(|| "defaults".into()),
                cfg.params.r,
                cfg.noise_convention
            );
            println!(
                "cooperativities: C1 = {:.6e}, C2 = {:.6e}",
                d.coop_1, d.coop_2
            );
            let stab = check_stability(&model.drift)?;
            println!(
                "stability: {} (max Re λ = {:.6e} rad/s)",
                if stab.stable { "stable" } else { "UNSTABLE" },
                stab.max_real_part
            );
            ok &= stab.stable;
            let sigma = linalg::solve_lyapunov(&model.drift, &model.noise)?;
            let res = model.relative_residual(&sigma);
            let res_ok = res <= tol::LYAPUNOV_REL_RESIDUAL;
            println!(
                "lyapunov residual: {res:.3e} (relative){}",
                if res_ok { "" } else { "  (above tolerance)" }
            );
            ok &= res_ok;
            CovarianceMatrix::new(sigma, Convention::VacuumHalf)?
        }
    };

    let margin = cm.physicality_margin()?;
    let physical = margin >= -tol::PHYSICALITY_EPS;
    println!(
        "physicality margin min eig(σ + iΩ/2) = {margin:.6e}{}",
        if physical { "" } else { "  -> Unphysical" }
    );
    ok &= physical;
    ok &= print_spectrum(&cm);

    if cm_path.is_none() && load_config(cli)?.noise_convention == NoiseConvention::PaperLiteral {
        println!("note: paper-literal noise is not expected to be physical");
    }
    println!(
        "{}",
        if ok {
            "all checks passed"
        } else {
            "checks FAILED"
        }
    );
    Ok(if ok { 0 } else { 3 })
}

fn cmd_windows(cli: &Cli, predicate: &str, csv: Option<&Path>) -> Result<u8, Error> {
    let predicate: Predicate = predicate.parse()?;
    let rows = match csv {
        Some(path) => read_csv(path)?,
        None => run_sweep(&sweep_config(cli)?)?,
    };
    let window = find_windows(&rows, &predicate)?;
    println!(
        "{}: {} interval(s)",
        window.quantity,
        window.intervals.len()
    );
    for (lo, hi) in &window.intervals {
        println!("  [{lo:.6}, {hi:.6}]");
    }
    Ok(0)
}
