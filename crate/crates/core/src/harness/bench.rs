use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};

use super::par::map_with;
use crate::error::{Error, Result};
use crate::routing::{dim_length, pr_decide, BfsSearch, PrOptions, ProxyStrategy};
use crate::topology::{Family, Network, NetworkSpec, Topology, DEFAULT_CAPACITY_BYTES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "dim")]
    Dim,
    #[serde(rename = "bfs")]
    Bfs,
    #[serde(rename = "gp_e")]
    GpE,
    #[serde(rename = "gp_i")]
    GpI,
    #[serde(rename = "gp_0")]
    Gp0,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [Algorithm::Dim, Algorithm::Bfs, Algorithm::GpE, Algorithm::GpI, Algorithm::Gp0];

    pub fn id(self) -> &'static str {
        match self {
            Algorithm::Dim => "dim",
            Algorithm::Bfs => "bfs",
            Algorithm::GpE => "gp_e",
            Algorithm::GpI => "gp_i",
            Algorithm::Gp0 => "gp_0",
        }
    }

    /// The proxy strategy behind a proxy-routing algorithm.
    pub fn strategy(self) -> Option<ProxyStrategy> {
        match self {
            Algorithm::GpE => Some(ProxyStrategy::Exhaustive),
            Algorithm::GpI => Some(ProxyStrategy::Intermediate),
            Algorithm::Gp0 => Some(ProxyStrategy::LevelZero),
            Algorithm::Dim | Algorithm::Bfs => None,
        }
    }

    pub fn needs_graph(self) -> bool {
        self == Algorithm::Bfs
    }

    /// Parses a comma-separated list such as `dim,bfs,gp_e`.
    pub fn parse_list(s: &str) -> Result<Vec<Algorithm>> {
        s.split(',').filter(|p| !p.trim().is_empty()).map(|p| p.trim().parse()).collect()
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.id() == s.to_ascii_lowercase().replace('-', "_"))
            .ok_or_else(|| Error::Parse(format!("unknown algorithm `{s}` (expected dim, bfs, gp_e, gp_i or gp_0)")))
    }
}

/// Per-pair result of one algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PairOutcome {
    pub length: u64,
    /// Proxy candidates whose routes were measured (0 for non-proxy routing).
    pub candidates: u64,
    /// Candidates no longer than the dimensional route.
    pub good_routes: u64,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub threads: usize,
    pub pr: PrOptions,
    /// Budget for the graph BFS needs.
    pub capacity_bytes: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            threads: super::par::resolve_threads(None),
            pr: PrOptions::default(),
            capacity_bytes: DEFAULT_CAPACITY_BYTES,
        }
    }
}

/// One row of benchmark output. Summary fields are `None` for a skipped run;
/// `mean_candidates` and `mean_good_routes` are `None` for non-proxy routing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub family: Family,
    pub k: usize,
    pub n: u64,
    pub algo: Algorithm,
    pub pairs: u64,
    pub seed: u64,
    #[serde(serialize_with = "fixed6")]
    pub mean_len: Option<f64>,
    #[serde(serialize_with = "fixed6")]
    pub sem: Option<f64>,
    #[serde(serialize_with = "fixed6")]
    pub savings_pct: Option<f64>,
    #[serde(serialize_with = "fixed6")]
    pub mean_candidates: Option<f64>,
    #[serde(serialize_with = "fixed6")]
    pub mean_good_routes: Option<f64>,
    #[serde(serialize_with = "fixed6")]
    pub success_rate_pct: Option<f64>,
    pub max_len: Option<u64>,
}

fn fixed6<S: Serializer>(v: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_str(&format!("{x:.6}")),
        None => s.serialize_none(),
    }
}

impl BenchRecord {
    pub fn spec(&self) -> NetworkSpec {
        NetworkSpec { family: self.family, k: self.k, n: self.n }
    }

    pub fn is_skipped(&self) -> bool {
        self.mean_len.is_none()
    }

    fn skipped(spec: &NetworkSpec, algo: Algorithm, pairs: u64, seed: u64) -> Self {
        BenchRecord {
            family: spec.family,
            k: spec.k,
            n: spec.n,
            algo,
            pairs,
            seed,
            mean_len: None,
            sem: None,
            savings_pct: None,
            mean_candidates: None,
            mean_good_routes: None,
            success_rate_pct: None,
            max_len: None,
        }
    }
}

/// Sample mean and standard error of the mean (sample standard deviation
/// over the square root of the sample size).
pub fn mean_and_sem(values: &[u64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (0.0, 0.0);
    }
    let mean = values.iter().map(|&v| v as f64).sum::<f64>() / n as f64;
    if n < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = values.iter().map(|&v| (v as f64 - mean).powi(2)).sum();
    (mean, (ss / (n - 1) as f64).sqrt() / (n as f64).sqrt())
}

/// Routes every pair with `algo` and reports per-pair results in pair order.
pub fn evaluate_pairs(
    net: &Network,
    topology: Option<&Topology>,
    algo: Algorithm,
    pairs: &[(u64, u64)],
    config: &BenchConfig,
) -> Result<Vec<PairOutcome>> {
    let threads = config.threads;
    let results: Vec<Result<PairOutcome>> = match algo {
        Algorithm::Dim => map_with(pairs, threads, || (), |_, &(s, d)| {
            Ok(PairOutcome { length: dim_length(net, s, d)?, ..Default::default() })
        }),
        Algorithm::Bfs => {
            let topo = topology.ok_or_else(|| {
                Error::PreconditionViolated("BFS needs a materialized topology".into())
            })?;
            map_with(pairs, threads, || BfsSearch::new(topo), |search, &(s, d)| {
                Ok(PairOutcome { length: search.distance(s, d)?, ..Default::default() })
            })
        }
        proxy => {
            let strategy = proxy.strategy().expect("proxy algorithm");
            map_with(pairs, threads, || (), |_, &(s, d)| {
                let dec = pr_decide(net, s, d, strategy, &config.pr)?;
                Ok(PairOutcome {
                    length: dec.length,
                    candidates: dec.candidate_count(),
                    good_routes: dec.good_route_count(),
                })
            })
        }
    };
    results.into_iter().collect()
}

/// Aggregates per-pair outcomes against the dimensional lengths of the same
/// pairs.
pub fn summarize(
    spec: &NetworkSpec,
    algo: Algorithm,
    seed: u64,
    dim: &[u64],
    outcomes: &[PairOutcome],
) -> BenchRecord {
    let lengths: Vec<u64> = outcomes.iter().map(|o| o.length).collect();
    let (mean, sem) = mean_and_sem(&lengths);
    let (dim_mean, _) = mean_and_sem(dim);
    let pairs = outcomes.len();
    let avg = |f: fn(&PairOutcome) -> u64| {
        if pairs == 0 {
            0.0
        } else {
            outcomes.iter().map(f).sum::<u64>() as f64 / pairs as f64
        }
    };
    let proxy = algo.strategy().is_some();
    let shorter = outcomes.iter().zip(dim).filter(|(o, &d)| o.length < d).count();
    BenchRecord {
        mean_len: Some(mean),
        sem: Some(sem),
        savings_pct: Some(if dim_mean > 0.0 { 100.0 * (dim_mean - mean) / dim_mean } else { 0.0 }),
        mean_candidates: proxy.then(|| avg(|o| o.candidates)),
        mean_good_routes: proxy.then(|| avg(|o| o.good_routes)),
        success_rate_pct: Some(if pairs == 0 { 0.0 } else { 100.0 * shorter as f64 / pairs as f64 }),
        max_len: Some(lengths.iter().copied().max().unwrap_or(0)),
        ..BenchRecord::skipped(spec, algo, pairs as u64, seed)
    }
}

/// Evaluates each algorithm on the same pairs. Records come out in
/// [`Algorithm`] order; BFS is reported as skipped when its graph would
/// exceed the capacity budget.
pub fn run_bench(
    spec: &NetworkSpec,
    algorithms: &[Algorithm],
    pairs: &[(u64, u64)],
    seed: u64,
    config: &BenchConfig,
) -> Result<Vec<BenchRecord>> {
    let net = Network::new(*spec)?;
    let mut algos = algorithms.to_vec();
    algos.sort();
    algos.dedup();

    let topology = if algos.iter().any(|a| a.needs_graph()) {
        match Topology::build_with_budget(&net, config.capacity_bytes) {
            Ok(t) => Some(t),
            Err(Error::CapacityExceeded { .. }) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };

    let dim: Vec<u64> = evaluate_pairs(&net, None, Algorithm::Dim, pairs, config)?
        .into_iter()
        .map(|o| o.length)
        .collect();
    let mut out = Vec::with_capacity(algos.len());
    for algo in algos {
        if algo.needs_graph() && topology.is_none() {
            out.push(BenchRecord::skipped(spec, algo, pairs.len() as u64, seed));
            continue;
        }
        let outcomes = if algo == Algorithm::Dim {
            dim.iter().map(|&length| PairOutcome { length, ..Default::default() }).collect()
        } else {
            evaluate_pairs(&net, topology.as_ref(), algo, pairs, config)?
        };
        out.push(summarize(spec, algo, seed, &dim, &outcomes));
    }
    Ok(out)
}
