//! The `scdcn` command line.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::harness::{
    par::resolve_threads, run_bench, run_loadsim, sample_pairs, write_bench_csv, write_histogram_csv, Algorithm,
    BenchConfig, LoadConfig,
};
use crate::routing::{bfs_route, dim_route, pr_route, NullCheck, PrOptions};
use crate::topology::{compute_sizes, validate, Family, Network, NetworkSpec, Topology};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_SPEC: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "scdcn", version, about = "Server-centric data-centre topologies and proxy routing")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Print sizes and link counts, computed without building the graph.
    Stats {
        #[command(flatten)]
        net: NetArgs,
        /// Emit one JSON object instead of text.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Build the graph and check every structural invariant.
    Validate {
        #[command(flatten)]
        net: NetArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Compute one route.
    Route {
        #[command(flatten)]
        net: NetArgs,
        #[arg(long)]
        src: u64,
        #[arg(long)]
        dst: u64,
        /// One of dim, bfs, gp_e, gp_i, gp_0.
        #[arg(long, default_value = "dim")]
        algo: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Hop-length statistics over seeded random pairs, as CSV.
    Bench {
        #[command(flatten)]
        net: NetArgs,
        /// Comma-separated algorithm ids.
        #[arg(long, default_value = "dim,bfs,gp_e,gp_i,gp_0")]
        algos: String,
        #[arg(long, default_value_t = 10_000)]
        pairs: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Link-load histogram over seeded random flows, as CSV.
    Loadsim {
        #[command(flatten)]
        net: NetArgs,
        #[arg(long, default_value = "gp_i")]
        algo: String,
        #[arg(long, default_value_t = 1_000_000)]
        flows: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        bin_width: u64,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Debug, Args)]
struct NetArgs {
    /// dcell, beta_dcell or ficonn.
    #[arg(long)]
    family: String,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: u64,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Write data here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    threads: Option<usize>,
    /// Route proxy sub-paths with the same strategy instead of dimensionally.
    #[arg(long)]
    recursive: bool,
    /// Add the proxy-side block property to the interval searches.
    #[arg(long)]
    p2: bool,
    /// Decline the interval search when either endpoint is near its link.
    #[arg(long)]
    null_or: bool,
    /// Graph size budget in GiB.
    #[arg(long, default_value_t = 16.0)]
    capacity_gib: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Stats { json: bool },
    Validate,
    Route { src: u64, dst: u64, algo: Algorithm },
    Bench { algos: Vec<Algorithm>, pairs: usize, seed: u64 },
    Loadsim { algo: Algorithm, flows: usize, seed: u64, bin_width: u64 },
}

/// A validated invocation.
#[derive(Debug, Clone)]
pub struct CliConfig {
    pub command: Command,
    pub spec: NetworkSpec,
    pub out: Option<PathBuf>,
    pub threads: usize,
    pub pr: PrOptions,
    pub capacity_bytes: u64,
}

/// Why an invocation did not produce a config.
#[derive(Debug)]
pub enum CliError {
    /// Help or version was requested; the text is ready to print.
    Info(String),
    Usage(String),
    Spec(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Info(_) => EXIT_OK,
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Spec(_) => EXIT_SPEC,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Info(s) | CliError::Usage(s) | CliError::Spec(s) => s,
        }
    }
}

pub fn parse_args<I, T>(argv: I) -> Result<CliConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| {
        use clap::error::ErrorKind;
        match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliError::Info(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    })?;
    let algo = |s: &str, flag: &str| {
        s.parse::<Algorithm>().map_err(|e| CliError::Usage(format!("--{flag}: {e}")))
    };
    let (net, run, command) = match cli.command {
        Cmd::Stats { net, json, run } => (net, run, Command::Stats { json }),
        Cmd::Validate { net, run } => (net, run, Command::Validate),
        Cmd::Route { net, src, dst, algo: a, run } => {
            let algo = algo(&a, "algo")?;
            (net, run, Command::Route { src, dst, algo })
        }
        Cmd::Bench { net, algos, pairs, seed, run } => {
            let algos = Algorithm::parse_list(&algos).map_err(|e| CliError::Usage(format!("--algos: {e}")))?;
            if algos.is_empty() {
                return Err(CliError::Usage("--algos: no algorithm given".into()));
            }
            (net, run, Command::Bench { algos, pairs, seed })
        }
        Cmd::Loadsim { net, algo: a, flows, seed, bin_width, run } => {
            let algo = algo(&a, "algo")?;
            if bin_width == 0 {
                return Err(CliError::Usage("--bin-width must be positive".into()));
            }
            (net, run, Command::Loadsim { algo, flows, seed, bin_width })
        }
    };

    let family: Family = net.family.parse().map_err(|e: Error| CliError::Usage(format!("--family: {e}")))?;
    let spec = NetworkSpec::new(family, net.k, net.n).map_err(|e| CliError::Spec(e.to_string()))?;
    compute_sizes(&spec).map_err(|e| CliError::Spec(e.to_string()))?;
    if run.threads == Some(0) {
        return Err(CliError::Usage("--threads must be positive".into()));
    }
    if !(run.capacity_gib.is_finite() && run.capacity_gib > 0.0) {
        return Err(CliError::Usage("--capacity-gib must be a positive number".into()));
    }
    let pr = PrOptions {
        recursive: run.recursive,
        p2: run.p2,
        null_check: if run.null_or { NullCheck::Or } else { NullCheck::And },
        memo: None,
    };
    Ok(CliConfig {
        command,
        spec,
        out: run.out,
        threads: resolve_threads(run.threads),
        pr,
        capacity_bytes: (run.capacity_gib * (1u64 << 30) as f64) as u64,
    })
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        _ if e.is_spec_error() => EXIT_SPEC,
        Error::UidOutOfRange { .. } => EXIT_USAGE,
        _ => EXIT_RUNTIME,
    }
}

/// Runs a validated config: data to `--out` or standard output, progress to
/// standard error. Returns the process exit code.
pub fn dispatch(config: &CliConfig) -> i32 {
    match run(config) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn output(config: &CliConfig) -> Result<Box<dyn Write>, Error> {
    Ok(match &config.out {
        Some(path) => Box::new(io::BufWriter::new(File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn run(config: &CliConfig) -> Result<i32, Error> {
    let spec = config.spec;
    let started = Instant::now();
    let code = match &config.command {
        Command::Stats { json } => {
            let stats = crate::topology::stats(&spec)?;
            let mut out = output(config)?;
            if *json {
                writeln!(out, "{}", stats.to_json())?;
            } else {
                writeln!(out, "network   {spec}")?;
                writeln!(out, "servers   {}", stats.servers)?;
                writeln!(out, "switches  {}", stats.switches)?;
                writeln!(out, "links     {}", stats.links)?;
                writeln!(out, "dim bound {}", stats.dim_route_bound)?;
                writeln!(out, "g         {:?}", stats.g)?;
                writeln!(out, "t         {:?}", stats.t)?;
            }
            out.flush()?;
            EXIT_OK
        }
        Command::Validate => {
            let net = Network::new(spec)?;
            let topo = Topology::build_with_budget(&net, config.capacity_bytes)?;
            let report = validate(&topo);
            let mut out = output(config)?;
            write!(out, "{report}")?;
            out.flush()?;
            if report.is_valid() {
                EXIT_OK
            } else {
                EXIT_RUNTIME
            }
        }
        Command::Route { src, dst, algo } => {
            let net = Network::new(spec)?;
            let route = match algo {
                Algorithm::Dim => dim_route(&net, *src, *dst)?,
                Algorithm::Bfs => {
                    net.sizes().check_uid(*src)?;
                    net.sizes().check_uid(*dst)?;
                    bfs_route(&Topology::build_with_budget(&net, config.capacity_bytes)?, *src, *dst)?
                }
                a => pr_route(&net, *src, *dst, a.strategy().expect("proxy algorithm"), &config.pr)?,
            };
            let mut out = output(config)?;
            writeln!(out, "{}", route.to_text())?;
            out.flush()?;
            EXIT_OK
        }
        Command::Bench { algos, pairs, seed } => {
            let sample = sample_pairs(&spec, *pairs, *seed)?;
            let bench = BenchConfig { threads: config.threads, pr: config.pr.clone(), capacity_bytes: config.capacity_bytes };
            let records = run_bench(&spec, algos, &sample, *seed, &bench)?;
            for r in records.iter().filter(|r| r.is_skipped()) {
                eprintln!("skipped {} on {spec}: graph exceeds the capacity budget", r.algo);
            }
            write_bench_csv(&records, output(config)?)?;
            EXIT_OK
        }
        Command::Loadsim { algo, flows, seed, bin_width } => {
            let load = LoadConfig {
                threads: config.threads,
                pr: config.pr.clone(),
                bin_width: *bin_width,
                capacity_bytes: config.capacity_bytes,
            };
            let hist = run_loadsim(&spec, *algo, *flows, *seed, &load)?;
            eprintln!("max load {} total load {}", hist.max_load, hist.total_load);
            write_histogram_csv(&hist, output(config)?)?;
            EXIT_OK
        }
    };
    eprintln!("done in {:.2?}", started.elapsed());
    Ok(code)
}
