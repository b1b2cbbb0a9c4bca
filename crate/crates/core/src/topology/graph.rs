use std::ops::Range;

use super::{Network, NetworkSpec};
use crate::error::{Error, Result};

/// Default budget for a materialized adjacency: 16 GiB.
pub const DEFAULT_CAPACITY_BYTES: u64 = 16 << 30;

/// One direct server-to-server link as seen from one endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DirectLink {
    pub peer: u64,
    pub level: usize,
    /// Physical link id, `>= N` (ids `< N` are server-switch links).
    pub link: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HopKind {
    /// Server to server through the shared switch (two physical links).
    SwitchTransit,
    /// A level-`level` server-to-server link.
    Direct { level: usize },
}

impl HopKind {
    /// Physical links traversed by one hop of this kind.
    pub fn physical_links(self) -> u64 {
        match self {
            HopKind::SwitchTransit => 2,
            HopKind::Direct { .. } => 1,
        }
    }
}

/// Materialized server/switch graph.
///
/// Switch `s` owns servers `[s n, (s+1) n)`, and server `u`'s switch link has
/// physical id `u`. Direct links are stored per server in a CSR layout sorted
/// by peer uid. The co-switch clique is never stored.
#[derive(Debug, Clone)]
pub struct Topology {
    network: Network,
    offsets: Vec<usize>,
    direct: Vec<DirectLink>,
    link_count: u64,
}

/// Estimated bytes of the adjacency [`Topology::build`] would allocate.
pub fn estimate_graph_bytes(network: &Network) -> u64 {
    let stats = network.stats();
    let direct = stats.links.saturating_sub(stats.servers);
    let entry = std::mem::size_of::<DirectLink>() as u64;
    (stats.servers + 1)
        .saturating_mul(std::mem::size_of::<usize>() as u64)
        .saturating_add(direct.saturating_mul(2 * entry))
}

/// Builds `spec` under the default capacity budget.
pub fn build_graph(spec: &NetworkSpec) -> Result<Topology> {
    Topology::build(&Network::new(*spec)?)
}

impl Topology {
    pub fn build(network: &Network) -> Result<Self> {
        Self::build_with_budget(network, DEFAULT_CAPACITY_BYTES)
    }

    pub fn build_with_budget(network: &Network, budget_bytes: u64) -> Result<Self> {
        let estimated_bytes = estimate_graph_bytes(network);
        if estimated_bytes > budget_bytes {
            return Err(Error::CapacityExceeded { estimated_bytes, budget_bytes });
        }
        let sizes = network.sizes();
        let mut links = Vec::new();
        for m in 1..=network.k() {
            let g = sizes.g(m);
            let block = sizes.t(m);
            for group in 0..sizes.servers() / block {
                let base = group * block;
                for x in 0..g {
                    for y in x + 1..g {
                        let l = network.link_endpoints(m, x, y)?;
                        links.push((base + l.global.0, base + l.global.1, m));
                    }
                }
            }
        }
        Self::from_links(network.clone(), links)
    }

    /// Builds a topology from an explicit list of direct links
    /// `(u, v, level)`. Link ids follow the order of `links`. No structural
    /// checks are made here; see [`validate`](super::validate).
    pub fn from_links(
        network: Network,
        links: impl IntoIterator<Item = (u64, u64, usize)>,
    ) -> Result<Self> {
        let servers = network.servers();
        let links: Vec<_> = links.into_iter().collect();
        let mut degree = vec![0usize; servers as usize + 1];
        for &(u, v, _) in &links {
            for w in [u, v] {
                network.sizes().check_uid(w)?;
            }
            if u == v {
                return Err(Error::PreconditionViolated(format!("self-loop at server {u}")));
            }
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(servers as usize + 1);
        let mut acc = 0;
        for d in &degree[..servers as usize] {
            offsets.push(acc);
            acc += d;
        }
        offsets.push(acc);
        let mut fill = offsets.clone();
        let placeholder = DirectLink { peer: 0, level: 0, link: 0 };
        let mut direct = vec![placeholder; acc];
        for (i, &(u, v, level)) in links.iter().enumerate() {
            let link = servers + i as u64;
            direct[fill[u as usize]] = DirectLink { peer: v, level, link };
            fill[u as usize] += 1;
            direct[fill[v as usize]] = DirectLink { peer: u, level, link };
            fill[v as usize] += 1;
        }
        for w in offsets.windows(2) {
            direct[w[0]..w[1]].sort_unstable_by_key(|d| (d.peer, d.link));
        }
        Ok(Topology { network, offsets, direct, link_count: links.len() as u64 })
    }

    pub fn network(&self) -> &Network {
        &self.network
    }

    pub fn server_count(&self) -> u64 {
        self.network.servers()
    }

    pub fn switch_count(&self) -> u64 {
        self.server_count() / self.ports()
    }

    /// Direct (server-to-server) links.
    pub fn direct_link_count(&self) -> u64 {
        self.link_count
    }

    /// Server-switch links plus direct links.
    pub fn physical_link_count(&self) -> u64 {
        self.server_count() + self.link_count
    }

    #[inline]
    fn ports(&self) -> u64 {
        self.network.sizes().n()
    }

    #[inline]
    pub fn switch_of(&self, uid: u64) -> u64 {
        uid / self.ports()
    }

    #[inline]
    pub fn switch_members(&self, switch: u64) -> Range<u64> {
        let n = self.ports();
        switch * n..(switch + 1) * n
    }

    /// Physical id of `uid`'s server-switch link.
    #[inline]
    pub fn switch_link(&self, uid: u64) -> u64 {
        uid
    }

    #[inline]
    pub fn direct_links(&self, uid: u64) -> &[DirectLink] {
        let u = uid as usize;
        &self.direct[self.offsets[u]..self.offsets[u + 1]]
    }

    /// How `u` and `v` are adjacent under the server-hop metric, if at all.
    #[inline]
    pub fn hop_between(&self, u: u64, v: u64) -> Option<HopKind> {
        if u == v {
            return None;
        }
        if self.switch_of(u) == self.switch_of(v) {
            return Some(HopKind::SwitchTransit);
        }
        self.direct_links(u)
            .iter()
            .find(|d| d.peer == v)
            .map(|d| HopKind::Direct { level: d.level })
    }

    /// Physical link ids used by the hop `u -> v`.
    pub fn hop_links(&self, u: u64, v: u64) -> Option<(u64, Option<u64>)> {
        if u == v {
            return None;
        }
        if self.switch_of(u) == self.switch_of(v) {
            return Some((self.switch_link(u), Some(self.switch_link(v))));
        }
        self.direct_links(u).iter().find(|d| d.peer == v).map(|d| (d.link, None))
    }

    /// Server-hop adjacency of `uid`, sorted by uid: its `n-1` co-switch
    /// servers and every directly linked server.
    pub fn server_neighbors(&self, uid: u64) -> Result<Vec<(u64, HopKind)>> {
        self.network.sizes().check_uid(uid)?;
        let mut out: Vec<(u64, HopKind)> = self
            .switch_members(self.switch_of(uid))
            .filter(|&w| w != uid)
            .map(|w| (w, HopKind::SwitchTransit))
            .chain(self.direct_links(uid).iter().map(|d| (d.peer, HopKind::Direct { level: d.level })))
            .collect();
        out.sort_by_key(|&(w, _)| w);
        out.dedup_by_key(|&mut (w, _)| w);
        Ok(out)
    }
}
