//! Command-line front end: single-shot correlation queries, β-scans to
//! CSV, CHSH optimization, Monte Carlo runs, and the self-check suite.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage error, 3 degenerate
//! observable, 4 optimizer non-convergence.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use relbell::chsh::{max_chsh, scan_beta, AngleSet, ScanCase, ScanOptions};
use relbell::epr::{correlation_analytic, mc_estimate};
use relbell::fmt::{fixed, scan_to_csv, LINE_DECIMALS};
use relbell::relspin::Direction;
use relbell::{check, Dir, Error, Kin};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DEGENERATE: u8 = 3;
const EXIT_NOT_CONVERGED: u8 = 4;

#[derive(Parser)]
#[command(
    name = "relbell",
    about = "Relativistic singlet correlations and CHSH optimization",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the singlet correlation E(a, b) for one configuration.
    Correlate(CorrelateArgs),
    /// Sweep β and emit a CSV table.
    Scan(ScanArgs),
    /// Maximize the CHSH functional at fixed β.
    Chsh(ChshArgs),
    /// Monte Carlo estimate of E(a, b) from sampled joint outcomes.
    Mc(McArgs),
    /// Run the self-verification suites.
    Check,
}

#[derive(Args)]
struct KinFlags {
    /// Speed as a fraction of c, in [0, 1].
    #[arg(long)]
    beta: Option<f64>,
    /// Particle mass in natural units (with --p).
    #[arg(long)]
    mass: Option<f64>,
    /// Momentum magnitude in natural units (with --mass).
    #[arg(long)]
    p: Option<f64>,
    /// Momentum direction as x,y,z.
    #[arg(long, default_value = "0,0,1", allow_hyphen_values = true)]
    n: String,
}

#[derive(Args)]
struct CorrelateArgs {
    #[command(flatten)]
    kin: KinFlags,
    /// First measurement axis as x,y,z.
    #[arg(long, conflicts_with = "a_angles", allow_hyphen_values = true)]
    a: Option<String>,
    /// First measurement axis as theta,phi in degrees.
    #[arg(long, allow_hyphen_values = true)]
    a_angles: Option<String>,
    /// Second measurement axis as x,y,z.
    #[arg(long, conflicts_with = "b_angles", allow_hyphen_values = true)]
    b: Option<String>,
    /// Second measurement axis as theta,phi in degrees.
    #[arg(long, allow_hyphen_values = true)]
    b_angles: Option<String>,
    /// Put particle 2 on the antiparallel momentum −n.
    #[arg(long)]
    antiparallel: bool,
}

#[derive(Args)]
struct ScanArgs {
    /// eq16 | fixed | chsh-max
    #[arg(long)]
    case: String,
    #[arg(long, default_value_t = 0.0)]
    beta_min: f64,
    #[arg(long, default_value_t = 1.0)]
    beta_max: f64,
    /// Number of rows (β values), endpoints inclusive.
    #[arg(long, default_value_t = 11)]
    steps: usize,
    /// Momentum direction as x,y,z.
    #[arg(long, default_value = "0,0,1", allow_hyphen_values = true)]
    n: String,
    /// Settings for --case fixed, each theta,phi in degrees.
    #[arg(long, allow_hyphen_values = true)]
    a_angles: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    ap_angles: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b_angles: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    bp_angles: Option<String>,
    /// Restarts per row for --case chsh-max.
    #[arg(long, default_value_t = 16)]
    restarts: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Output path; standard output when absent.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct ChshArgs {
    #[command(flatten)]
    kin: KinFlags,
    #[arg(long, default_value_t = 32)]
    restarts: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

#[derive(Args)]
struct McArgs {
    #[command(flatten)]
    kin: KinFlags,
    #[arg(long, conflicts_with = "a_angles", allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a_angles: Option<String>,
    #[arg(long, conflicts_with = "b_angles", allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b_angles: Option<String>,
    /// Number of sampled outcome pairs (minimum 100).
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    antiparallel: bool,
}

fn usage_err(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn parse_triple(s: &str, flag: &str) -> Result<Dir, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("--{flag} expects x,y,z"));
    }
    let mut v = [0.0f64; 3];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p
            .trim()
            .parse()
            .map_err(|_| format!("--{flag}: cannot parse `{p}` as a number"))?;
    }
    let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if (norm - 1.0).abs() > 1e-6 {
        return Err(format!(
            "--{flag}: vector norm {norm} deviates from 1 by more than 1e-6"
        ));
    }
    Direction::new(v[0], v[1], v[2]).map_err(|e| format!("--{flag}: {e}"))
}

fn parse_angle_pair(s: &str, flag: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("--{flag} expects theta,phi in degrees"));
    }
    let theta: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| format!("--{flag}: bad theta"))?;
    let phi: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| format!("--{flag}: bad phi"))?;
    Ok((theta.to_radians(), phi.to_radians()))
}

fn parse_axis(
    triple: &Option<String>,
    angles: &Option<String>,
    flag: &str,
) -> Result<Dir, String> {
    match (triple, angles) {
        (Some(t), None) => parse_triple(t, flag),
        (None, Some(a)) => {
            let (theta, phi) = parse_angle_pair(a, &format!("{flag}-angles"))?;
            Ok(relbell::chsh::direction_from_angles(theta, phi))
        }
        _ => Err(format!("exactly one of --{flag} | --{flag}-angles required")),
    }
}

fn parse_kin(flags: &KinFlags) -> Result<Kin, String> {
    let n = parse_triple(&flags.n, "n")?;
    match (flags.beta, flags.mass, flags.p) {
        (Some(beta), None, None) => Kin::from_beta(n, beta).map_err(|e| e.to_string()),
        (None, Some(mass), Some(p)) => Kin::from_momentum(n, mass, p).map_err(|e| e.to_string()),
        _ => Err("exactly one of --beta | (--mass and --p) required".into()),
    }
}

fn physics_exit(err: &Error) -> ExitCode {
    eprintln!("error: {err}");
    match err {
        Error::DegenerateObservable => ExitCode::from(EXIT_DEGENERATE),
        _ => ExitCode::from(EXIT_USAGE),
    }
}

fn run_correlate(args: &CorrelateArgs) -> ExitCode {
    let kin = match parse_kin(&args.kin) {
        Ok(k) => k,
        Err(e) => return usage_err(&e),
    };
    let a = match parse_axis(&args.a, &args.a_angles, "a") {
        Ok(d) => d,
        Err(e) => return usage_err(&e),
    };
    let b = match parse_axis(&args.b, &args.b_angles, "b") {
        Ok(d) => d,
        Err(e) => return usage_err(&e),
    };
    if args.antiparallel {
        eprintln!(
            "note: antiparallel geometry (n2 = -n) gives the same correlation as the \
             shared-momentum configuration; the value below covers both"
        );
    }
    match correlation_analytic(&a, &b, &kin) {
        Ok(e) => {
            println!("{}", fixed(e, LINE_DECIMALS));
            ExitCode::SUCCESS
        }
        Err(e) => physics_exit(&e),
    }
}

fn run_scan(args: &ScanArgs) -> ExitCode {
    let n = match parse_triple(&args.n, "n") {
        Ok(d) => d,
        Err(e) => return usage_err(&e),
    };
    if args.steps == 0 {
        return usage_err("--steps must be >= 1");
    }
    if !(0.0..=1.0).contains(&args.beta_min)
        || !(0.0..=1.0).contains(&args.beta_max)
        || args.beta_min > args.beta_max
        || (args.steps > 1 && args.beta_min == args.beta_max)
    {
        return usage_err("bad beta grid: need 0 <= beta-min < beta-max <= 1");
    }
    let grid: Vec<f64> = if args.steps == 1 {
        vec![args.beta_min]
    } else {
        (0..args.steps)
            .map(|i| {
                args.beta_min
                    + (args.beta_max - args.beta_min) * i as f64 / (args.steps - 1) as f64
            })
            .collect()
    };
    let case = match args.case.as_str() {
        "eq16" | "orthogonal" => ScanCase::OrthogonalPair,
        "chsh-max" => ScanCase::ChshMax,
        "fixed" => {
            let mut pairs = [(0.0, 0.0); 4];
            let sources = [
                (&args.a_angles, "a-angles"),
                (&args.ap_angles, "ap-angles"),
                (&args.b_angles, "b-angles"),
                (&args.bp_angles, "bp-angles"),
            ];
            for (slot, (src, flag)) in pairs.iter_mut().zip(&sources) {
                match src {
                    Some(s) => match parse_angle_pair(s, flag) {
                        Ok(p) => *slot = p,
                        Err(e) => return usage_err(&e),
                    },
                    None => return usage_err(&format!("--case fixed requires --{flag}")),
                }
            }
            ScanCase::FixedAngles(AngleSet { pairs })
        }
        other => return usage_err(&format!("unknown --case `{other}`")),
    };
    let options = ScanOptions {
        n,
        restarts: args.restarts,
        seed: args.seed,
        tol: args.tol,
    };
    let table = match scan_beta(&case, &grid, &options) {
        Ok(t) => t,
        Err(e) => return physics_exit(&e),
    };
    let csv = scan_to_csv(&table);
    match &args.out {
        None => {
            print!("{csv}");
            ExitCode::SUCCESS
        }
        Some(path) => match std::fs::File::create(path).and_then(|mut f| f.write_all(csv.as_bytes()))
        {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => usage_err(&format!("cannot write {}: {e}", path.display())),
        },
    }
}

fn run_chsh(args: &ChshArgs) -> ExitCode {
    let kin = match parse_kin(&args.kin) {
        Ok(k) => k,
        Err(e) => return usage_err(&e),
    };
    if args.restarts == 0 {
        return usage_err("--restarts must be >= 1");
    }
    match max_chsh(&kin, args.restarts, args.seed, args.tol) {
        Ok(r) => {
            println!("value={}", fixed(r.value, LINE_DECIMALS));
            for (name, (theta, phi)) in ["a", "ap", "b", "bp"].iter().zip(&r.angles.pairs) {
                println!("theta_{name}={}", fixed(*theta, LINE_DECIMALS));
                println!("phi_{name}={}", fixed(*phi, LINE_DECIMALS));
            }
            println!("restarts={}", r.restarts_used);
            println!("converged={}", r.converged);
            if r.converged {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_NOT_CONVERGED)
            }
        }
        Err(e) => physics_exit(&e),
    }
}

fn run_mc(args: &McArgs) -> ExitCode {
    let kin = match parse_kin(&args.kin) {
        Ok(k) => k,
        Err(e) => return usage_err(&e),
    };
    let a = match parse_axis(&args.a, &args.a_angles, "a") {
        Ok(d) => d,
        Err(e) => return usage_err(&e),
    };
    let b = match parse_axis(&args.b, &args.b_angles, "b") {
        Ok(d) => d,
        Err(e) => return usage_err(&e),
    };
    if args.samples < 100 {
        return usage_err("--samples must be >= 100");
    }
    if args.antiparallel {
        eprintln!(
            "note: antiparallel geometry (n2 = -n) gives the same correlation as the \
             shared-momentum configuration; the run below covers both"
        );
    }
    let analytic = match correlation_analytic(&a, &b, &kin) {
        Ok(e) => e,
        Err(e) => return physics_exit(&e),
    };
    match mc_estimate(&a, &b, &kin, args.samples, args.seed) {
        Ok(r) => {
            println!("E_hat={}", fixed(r.e_hat, LINE_DECIMALS));
            println!("stderr={}", fixed(r.stderr, LINE_DECIMALS));
            println!("samples={}", r.samples);
            println!("seed={}", r.seed);
            println!("E_analytic={}", fixed(analytic, LINE_DECIMALS));
            ExitCode::SUCCESS
        }
        Err(e) => physics_exit(&e),
    }
}

fn run_check() -> ExitCode {
    let suites = check::run_all();
    let mut all_passed = true;
    for s in &suites {
        all_passed &= s.passed;
        println!(
            "suite={} max_err={:.3e} threshold={:.3e} status={}",
            s.name,
            s.max_err,
            s.threshold,
            if s.passed { "pass" } else { "fail" }
        );
    }
    println!("overall={}", if all_passed { "pass" } else { "fail" });
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Correlate(args) => run_correlate(args),
        Command::Scan(args) => run_scan(args),
        Command::Chsh(args) => run_chsh(args),
        Command::Mc(args) => run_mc(args),
        Command::Check => run_check(),
    }
}
