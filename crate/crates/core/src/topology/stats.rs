use serde::{Deserialize, Serialize};

use super::{Family, Network, Topology};

/// Size and link counts of one network instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsRecord {
    pub family: Family,
    pub k: usize,
    pub n: u64,
    pub servers: u64,
    pub switches: u64,
    /// Physical links: one per server-switch attachment plus every direct link.
    pub links: u64,
    /// Upper bound `2^{k+1} - 1` on dimensional route length.
    pub dim_route_bound: u64,
    pub g: Vec<u64>,
    pub t: Vec<u64>,
}

impl StatsRecord {
    pub(crate) fn analytic(network: &Network) -> Self {
        let spec = network.spec();
        let sizes = network.sizes();
        let servers = sizes.servers();
        let direct: u64 = (1..=sizes.k())
            .map(|m| {
                let g = sizes.g(m);
                (servers / sizes.t(m)) * (g * (g - 1) / 2)
            })
            .sum();
        StatsRecord {
            family: spec.family,
            k: spec.k,
            n: spec.n,
            servers,
            switches: servers / spec.n,
            links: servers + direct,
            dim_route_bound: (1u64 << (spec.k + 1)) - 1,
            g: sizes.g_all().to_vec(),
            t: sizes.t_all().to_vec(),
        }
    }

    /// The same record with counts measured on a built graph.
    pub fn measured(topology: &Topology) -> Self {
        let mut rec = Self::analytic(topology.network());
        rec.servers = topology.server_count();
        rec.switches = topology.switch_count();
        rec.links = topology.physical_link_count();
        rec
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("stats serialize")
    }
}
