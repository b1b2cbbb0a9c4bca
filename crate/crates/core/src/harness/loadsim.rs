use std::collections::BTreeMap;

use super::bench::Algorithm;
use super::pairs::sample_pairs;
use super::par::fold_with;
use crate::error::{Error, Result};
use crate::routing::{dim_route, pr_route, BfsSearch, PrOptions};
use crate::topology::{NetworkSpec, Topology, DEFAULT_CAPACITY_BYTES};

/// Distribution of per-link load over every physical link of a network.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadHistogram {
    pub spec: NetworkSpec,
    pub algorithm: Algorithm,
    pub flows: u64,
    pub seed: u64,
    /// Loads are grouped into bins `[j w, (j+1) w)` keyed by `j w`.
    pub bin_width: u64,
    /// Physical links in the network, zero-load links included.
    pub links: u64,
    pub bins: BTreeMap<u64, u64>,
    pub max_load: u64,
    pub total_load: u64,
}

impl LoadHistogram {
    /// Builds the histogram of `loads`, one entry per physical link.
    pub fn from_loads(spec: NetworkSpec, algorithm: Algorithm, flows: u64, seed: u64, bin_width: u64, loads: &[u64]) -> Self {
        let bin_width = bin_width.max(1);
        let mut bins = BTreeMap::new();
        for &l in loads {
            *bins.entry(l / bin_width * bin_width).or_insert(0) += 1;
        }
        LoadHistogram {
            spec,
            algorithm,
            flows,
            seed,
            bin_width,
            links: loads.len() as u64,
            bins,
            max_load: loads.iter().copied().max().unwrap_or(0),
            total_load: loads.iter().sum(),
        }
    }

    pub fn fraction(&self, count: u64) -> f64 {
        if self.links == 0 {
            0.0
        } else {
            count as f64 / self.links as f64
        }
    }

    /// `(load, count, fraction)` by ascending load.
    pub fn rows(&self) -> Vec<(u64, u64, f64)> {
        self.bins.iter().map(|(&load, &count)| (load, count, self.fraction(count))).collect()
    }
}

#[derive(Debug, Clone)]
pub struct LoadConfig {
    pub threads: usize,
    pub pr: PrOptions,
    pub bin_width: u64,
    pub capacity_bytes: u64,
}

impl Default for LoadConfig {
    fn default() -> Self {
        LoadConfig {
            threads: super::par::resolve_threads(None),
            pr: PrOptions::default(),
            bin_width: 1,
            capacity_bytes: DEFAULT_CAPACITY_BYTES,
        }
    }
}

const CHUNK: usize = 4096;

/// Load on each physical link after routing every flow with `algo`. A
/// switch-transit hop loads two links, a direct hop one.
pub fn link_loads(topology: &Topology, algo: Algorithm, flows: &[(u64, u64)], config: &LoadConfig) -> Result<Vec<u64>> {
    let net = topology.network();
    let links = topology.physical_link_count() as usize;
    let chunks: Vec<&[(u64, u64)]> = flows.chunks(CHUNK).collect();
    let tally = fold_with(
        &chunks,
        config.threads,
        || Ok(vec![0u64; links]),
        |acc: &mut Result<Vec<u64>>, chunk| {
            let Ok(loads) = acc else { return };
            let mut bfs = (algo == Algorithm::Bfs).then(|| BfsSearch::new(topology));
            for &(s, d) in *chunk {
                let hops = match (algo, bfs.as_mut()) {
                    (Algorithm::Dim, _) => dim_route(net, s, d).map(|r| r.hops),
                    (Algorithm::Bfs, Some(search)) => search.route(s, d).map(|r| r.hops),
                    (a, _) => pr_route(net, s, d, a.strategy().expect("proxy algorithm"), &config.pr).map(|r| r.hops),
                };
                let hops = match hops {
                    Ok(h) => h,
                    Err(e) => {
                        *acc = Err(e);
                        return;
                    }
                };
                for w in hops.windows(2) {
                    match topology.hop_links(w[0], w[1]) {
                        Some((first, second)) => {
                            loads[first as usize] += 1;
                            if let Some(l) = second {
                                loads[l as usize] += 1;
                            }
                        }
                        None => {
                            *acc = Err(Error::Internal(format!("route hop {} -> {} is not a link", w[0], w[1])));
                            return;
                        }
                    }
                }
            }
        },
        |a, b| match (a, b) {
            (Ok(mut a), Ok(b)) => {
                a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                Ok(a)
            }
            (Err(e), _) | (_, Err(e)) => Err(e),
        },
    );
    tally
}

/// Routes `flows` seeded uniform pairs and bins the resulting link loads.
pub fn run_loadsim(spec: &NetworkSpec, algo: Algorithm, flows: usize, seed: u64, config: &LoadConfig) -> Result<LoadHistogram> {
    let net = crate::topology::Network::new(*spec)?;
    let topology = Topology::build_with_budget(&net, config.capacity_bytes)?;
    let pairs = sample_pairs(spec, flows, seed)?;
    let loads = link_loads(&topology, algo, &pairs, config)?;
    Ok(LoadHistogram::from_loads(*spec, algo, flows as u64, seed, config.bin_width, &loads))
}
