use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use hsf::checks::{run_checks, write_checks_csv, ChecksConfig, MC_RADII};
use hsf::fncore::DEFAULT_MAX_ARITY;
use hsf::junta::{extract_junta, ReportSummary, TheoremConfig, REPORT_HEADER};
use hsf::ltf::{CriticalIndex, Ltf, ThetaLaw, WeightFamily};
use hsf::noise::{gaussian_ns_bound, gaussian_ns_mc, ns_exact};
use hsf::output::{fmt_real, write_csv};
use hsf::restriction::{bias_profile, DEFAULT_HEAD_CAP};
use hsf::seed::derive_seed;
use hsf::sweep::{run_sweep, write_sweep_csv, SweepConfig};

#[derive(Parser)]
#[command(name = "hsf", version, about = "Noise sensitivity and junta approximation of halfspaces")]
struct Cli {
    /// Base seed for every randomized computation.
    #[arg(long, global = true, env = "HSF_SEED", default_value_t = 0)]
    seed: u64,
    /// Largest arity materialized as a truth table.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ARITY)]
    max_n: usize,
    /// Write the CSV output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Suppress reports and summaries; only CSV output is written.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structural report of one LTF.
    Analyze(AnalyzeArgs),
    /// Junta approximation of one LTF.
    Junta(JuntaArgs),
    /// Junta engine over seeded random LTFs.
    Sweep(SweepArgs),
    /// Gaussian disagreement probabilities against the closed-form lower bound.
    Gaussian(GaussianArgs),
    /// Seeded property suites.
    Checks(ChecksArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long)]
    ltf: PathBuf,
    #[arg(long, value_delimiter = ',', default_values_t = [0.01, 0.05, 0.1, 0.25, 0.5])]
    epsilons: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_values_t = [0.05, 0.1, 0.25, 0.5, 1.0])]
    taus: Vec<f64>,
    /// Regularity parameter whose critical head gets a bias profile.
    #[arg(long, default_value_t = 0.25)]
    head_tau: f64,
}

#[derive(Args)]
struct TheoremArgs {
    #[arg(long, default_value_t = 1.0)]
    c_ns: f64,
    #[arg(long, default_value_t = 1.0)]
    c_l: f64,
    /// Replace the premise exponent (2 - eps)/(1 - eps).
    #[arg(long)]
    premise_exponent: Option<f64>,
    /// Always follow the critical-index cases.
    #[arg(long)]
    no_small_delta_shortcut: bool,
}

impl TheoremArgs {
    fn config(&self, max_n: usize) -> TheoremConfig {
        TheoremConfig {
            c_ns: self.c_ns,
            c_l: self.c_l,
            premise_exponent: self.premise_exponent,
            max_arity: max_n,
            head_cap: max_n,
            small_delta_shortcut: !self.no_small_delta_shortcut,
            ..TheoremConfig::default()
        }
    }
}

#[derive(Args)]
struct JuntaArgs {
    #[arg(long)]
    ltf: PathBuf,
    #[arg(long)]
    epsilon: f64,
    #[arg(long)]
    delta: f64,
    #[command(flatten)]
    theorem: TheoremArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// Weight families, cycled over instances.
    #[arg(long, value_delimiter = ',', default_values = ["gaussian", "geometric:0.5", "equal"])]
    families: Vec<WeightFamily>,
    #[arg(long, default_value = "uniform:-3:3")]
    theta_law: ThetaLaw,
    #[arg(long, default_value_t = 14)]
    n: usize,
    #[arg(long, default_value_t = 500)]
    count: usize,
    #[arg(long, value_delimiter = ',', default_values_t = [0.05, 0.1, 0.25])]
    epsilons: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_values_t = [0.05, 0.1, 0.2])]
    deltas: Vec<f64>,
    #[command(flatten)]
    theorem: TheoremArgs,
}

#[derive(Args)]
struct GaussianArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [0.0, 0.5, 1.0, 2.0])]
    theta: Vec<f64>,
    /// Flip rates; `rho = 1 - 2 eps`.
    #[arg(long, value_delimiter = ',', default_values_t = [0.5, 0.25, 0.05])]
    epsilon: Vec<f64>,
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
}

#[derive(Args)]
struct ChecksArgs {
    #[arg(long, default_value_t = 100)]
    instances: usize,
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    /// Largest arity of the random functions.
    #[arg(long, default_value_t = 10)]
    function_n: usize,
}

enum Failure {
    Usage(String),
    Checks(String),
}

impl From<hsf::Error> for Failure {
    fn from(e: hsf::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("i/o error: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks(msg)) => {
            eprintln!("hsf: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("hsf: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Analyze(args) => analyze(cli, args),
        Command::Junta(args) => junta(cli, args),
        Command::Sweep(args) => sweep(cli, args),
        Command::Gaussian(args) => gaussian(cli, args),
        Command::Checks(args) => checks(cli, args),
    }
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| {
            Failure::Usage(format!("cannot create {}: {e}", p.display()))
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn read_ltf(path: &Path) -> Result<Ltf, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ltf::from_toml_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn to_toml<T: Serialize>(value: &T) -> Result<String, Failure> {
    toml::to_string(value).map_err(|e| Failure::Usage(format!("cannot render report: {e}")))
}

#[derive(Serialize)]
struct AnalyzeReport {
    input_arity: usize,
    theta: f64,
    weights: Vec<f64>,
    coordinates: Vec<usize>,
    dropped: Vec<usize>,
    tau_star: f64,
    sigma: Vec<f64>,
    weight_by_degree: Vec<f64>,
    critical_index: Vec<CriticalRow>,
    noise_sensitivity: Vec<NsRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bias_profile: Option<BiasRow>,
}

#[derive(Serialize)]
struct CriticalRow {
    tau: f64,
    ell: CriticalIndex,
}

#[derive(Serialize)]
struct NsRow {
    epsilon: f64,
    ns: f64,
}

#[derive(Serialize)]
struct BiasRow {
    tau: f64,
    ell: CriticalIndex,
    head: Vec<usize>,
    mean: f64,
    min_abs_bias: f64,
    max_abs_bias: f64,
    /// Listed when the head has at most 10 coordinates.
    #[serde(skip_serializing_if = "Option::is_none")]
    biases: Option<Vec<f64>>,
}

fn analyze(cli: &Cli, args: &AnalyzeArgs) -> Result<(), Failure> {
    let ltf = read_ltf(&args.ltf)?;
    let table = ltf.truth_table_capped(cli.max_n)?;
    let spectrum = table.wht();
    let profile = ltf.profile();
    let critical_index = args
        .taus
        .iter()
        .map(|&tau| Ok(CriticalRow { tau, ell: ltf.critical_index(tau)? }))
        .collect::<hsf::Result<_>>()?;
    let noise_sensitivity = args
        .epsilons
        .iter()
        .map(|&epsilon| Ok(NsRow { epsilon, ns: ns_exact(&spectrum, epsilon)? }))
        .collect::<hsf::Result<_>>()?;
    let ell = ltf.critical_index(args.head_tau)?;
    let bias_profile = match ell {
        CriticalIndex::Finite(k) if k <= DEFAULT_HEAD_CAP => {
            let head = ltf.head_set(k);
            let p = bias_profile(&table, head)?;
            let abs = || p.biases.iter().map(|b| b.abs());
            Some(BiasRow {
                tau: args.head_tau,
                ell,
                head: head.iter().collect(),
                mean: p.mean(),
                min_abs_bias: abs().fold(f64::INFINITY, f64::min),
                max_abs_bias: abs().fold(0.0, f64::max),
                biases: (k <= 10).then(|| p.biases.clone()),
            })
        }
        _ => None,
    };
    let report = AnalyzeReport {
        input_arity: ltf.input_arity(),
        theta: ltf.threshold(),
        weights: ltf.weights().to_vec(),
        coordinates: ltf.original_index().to_vec(),
        dropped: ltf.dropped().to_vec(),
        tau_star: profile.tau_star,
        sigma: profile.tail_norms,
        weight_by_degree: spectrum.weight_by_degree(),
        critical_index,
        noise_sensitivity,
        bias_profile,
    };
    let text = to_toml(&report)?;
    let mut out = output(&cli.out)?;
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct JuntaView {
    case: String,
    verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict_reason: Option<String>,
    junta_set: Vec<usize>,
    distance: f64,
    /// `+1`/`-1` values of the approximator when the junta has at most 12
    /// coordinates, rows indexed with bit `i` set meaning coordinate `i` is `-1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    approximator: Option<Vec<i8>>,
    diagnostics: hsf::junta::Diagnostics,
}

fn junta(cli: &Cli, args: &JuntaArgs) -> Result<(), Failure> {
    let ltf = read_ltf(&args.ltf)?;
    let config = args.theorem.config(cli.max_n);
    let report = extract_junta(&ltf, args.epsilon, args.delta, &config)?;
    let summary = ReportSummary::new(&report);
    if !cli.quiet {
        let view = JuntaView {
            case: report.case.to_string(),
            verdict: summary.verdict.to_string(),
            verdict_reason: match &summary.verdict {
                hsf::junta::Verdict::Fail(why) => Some(why.clone()),
                _ => None,
            },
            junta_set: report.junta_set.iter().collect(),
            distance: report.distance,
            approximator: (report.junta_set.len() <= 12)
                .then(|| report.approximator.values().to_vec()),
            diagnostics: report.diagnostics.clone(),
        };
        println!("{}", to_toml(&view)?);
    }
    let mut out = output(&cli.out)?;
    write_csv(&mut out, REPORT_HEADER, [summary.csv_record()], cli.seed)?;
    out.flush()?;
    if summary.verdict.is_failure() {
        return Err(Failure::Checks(format!("theorem check failed: {:?}", summary.verdict)));
    }
    Ok(())
}

fn sweep(cli: &Cli, args: &SweepArgs) -> Result<(), Failure> {
    let config = SweepConfig {
        families: args.families.clone(),
        theta: args.theta_law,
        n: args.n,
        count: args.count,
        epsilons: args.epsilons.clone(),
        deltas: args.deltas.clone(),
        seed: cli.seed,
        theorem: args.theorem.config(cli.max_n),
    };
    let rows = run_sweep(&config)?;
    let mut out = output(&cli.out)?;
    write_sweep_csv(&rows, cli.seed, &mut out)?;
    out.flush()?;
    let failures = rows.iter().filter(|r| r.summary.verdict.is_failure()).count();
    let vacuous = rows.iter().filter(|r| !r.summary.premise_holds).count();
    if !cli.quiet {
        eprintln!(
            "{} rows: {} premise-violated, {} failed",
            rows.len(),
            vacuous,
            failures
        );
    }
    if failures > 0 {
        return Err(Failure::Checks(format!("{failures} sweep rows failed")));
    }
    Ok(())
}

const GAUSSIAN_HEADER: &str = "theta,rho,bound,mc_value,mc_radius,holds";

fn gaussian(cli: &Cli, args: &GaussianArgs) -> Result<(), Failure> {
    let mut records = Vec::new();
    let mut failures = 0;
    let mut index = 0;
    for &theta in &args.theta {
        for &epsilon in &args.epsilon {
            let bound = gaussian_ns_bound(theta, epsilon)?;
            let rho = 1.0 - 2.0 * epsilon;
            let est = gaussian_ns_mc(theta, rho, args.samples, derive_seed(cli.seed, index))?;
            index += 1;
            let holds = est.value >= bound - MC_RADII * est.radius;
            failures += usize::from(!holds);
            records.push(vec![
                fmt_real(theta),
                fmt_real(rho),
                fmt_real(bound),
                fmt_real(est.value),
                fmt_real(est.radius),
                holds.to_string(),
            ]);
        }
    }
    let mut out = output(&cli.out)?;
    write_csv(&mut out, GAUSSIAN_HEADER, records, cli.seed)?;
    out.flush()?;
    if failures > 0 {
        return Err(Failure::Checks(format!("{failures} grid points below the bound")));
    }
    Ok(())
}

fn checks(cli: &Cli, args: &ChecksArgs) -> Result<(), Failure> {
    let config = ChecksConfig {
        seed: cli.seed,
        instances: args.instances,
        samples: args.samples,
        max_n: args.function_n,
    };
    let rows = run_checks(&config)?;
    let mut out = output(&cli.out)?;
    write_checks_csv(&rows, cli.seed, &mut out)?;
    out.flush()?;
    let failed: Vec<_> = rows.iter().filter(|r| !r.holds).collect();
    if !cli.quiet {
        eprintln!("{} checks, {} failed", rows.len(), failed.len());
        for r in &failed {
            eprintln!("  failed: {} seed={} lhs={} rhs={}", r.check, r.instance_seed, r.lhs, r.rhs);
        }
    }
    if !failed.is_empty() {
        return Err(Failure::Checks(format!("{} checks failed", failed.len())));
    }
    Ok(())
}
