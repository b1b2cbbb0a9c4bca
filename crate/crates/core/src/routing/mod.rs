//! Dimensional, shortest-path and proxy routing under the server-hop metric.
//!
//! One hop is one server-to-server step, whether it crosses the shared switch
//! or a direct link.

mod bfs;
mod dim;
pub mod interval;
mod memo;
mod pr;
mod proxy;

use std::fmt;

use crate::error::{Error, Result};
use crate::topology::{Network, Topology};

pub use bfs::{bfs_distances, bfs_route, BfsSearch};
pub use dim::{dim_length, dim_route};
pub use memo::DimMemo;
pub use pr::{pr_decide, pr_length, pr_route, PrDecision, PrOptions, ProxyStrategy};
pub use proxy::{
    gp_exhaustive, gp_intervals, select_proxy, NullCheck, ProxyCandidateSet, ProxySelection,
    Provenance, SearchVariant,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RouteKind {
    Dimensional,
    Proxy,
    Shortest,
}

/// A loop-free server path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Route {
    pub hops: Vec<u64>,
    pub kind: RouteKind,
    /// Entry `m - 1` is the number of maximal runs of consecutive servers in
    /// the same level-`m-1` copy, for `m = 1..=k`.
    pub order_profile: Vec<usize>,
    /// Level of the smallest structure holding both endpoints, `None` when
    /// source and destination coincide.
    pub decision_level: Option<usize>,
}

impl Route {
    pub(crate) fn new(net: &Network, hops: Vec<u64>, kind: RouteKind) -> Self {
        let sizes = net.sizes();
        let order_profile = (1..=net.k()).map(|m| runs(&hops, sizes.t(m - 1))).collect();
        let decision_level = sizes.common_level(hops[0], hops[hops.len() - 1]);
        Route { hops, kind, order_profile, decision_level }
    }

    /// Hop count.
    pub fn len(&self) -> u64 {
        self.hops.len() as u64 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.hops.len() <= 1
    }

    pub fn src(&self) -> u64 {
        self.hops[0]
    }

    pub fn dst(&self) -> u64 {
        self.hops[self.hops.len() - 1]
    }

    /// Order at the decision level: 2 for a dimensional route, 3 for a proxy
    /// route. Routes inside one switch have order 1.
    pub fn order(&self) -> usize {
        match self.decision_level {
            Some(m) if m >= 1 => self.order_profile[m - 1],
            _ => 1,
        }
    }

    /// `"u0 u1 ... uL\nlen=L order=t"`.
    pub fn to_text(&self) -> String {
        let uids: Vec<String> = self.hops.iter().map(u64::to_string).collect();
        format!("{}\nlen={} order={}", uids.join(" "), self.len(), self.order())
    }
}

fn runs(hops: &[u64], block: u64) -> usize {
    let mut count = 0;
    let mut prev = None;
    for &h in hops {
        let key = h / block;
        if prev != Some(key) {
            count += 1;
            prev = Some(key);
        }
    }
    count
}

/// Number of maximal runs of the route's servers lying in the same level-`m-1`
/// copy; the route must stay inside one level-`m` structure.
pub fn route_order(net: &Network, route: &Route, m: usize) -> Result<usize> {
    if m == 0 || m > net.k() {
        return Err(Error::LevelOutOfRange { level: m, k: net.k() });
    }
    let sizes = net.sizes();
    let outer = route.src() / sizes.t(m);
    if let Some(&h) = route.hops.iter().find(|&&h| h / sizes.t(m) != outer) {
        return Err(Error::PreconditionViolated(format!(
            "server {h} leaves the level-{m} structure of {}",
            route.src()
        )));
    }
    Ok(runs(&route.hops, sizes.t(m - 1)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RouteViolation {
    Empty,
    OutOfRange { uid: u64 },
    NotAdjacent { position: usize, from: u64, to: u64 },
    Repeated { uid: u64 },
}

impl fmt::Display for RouteViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RouteViolation::Empty => write!(f, "route has no servers"),
            RouteViolation::OutOfRange { uid } => write!(f, "server {uid} does not exist"),
            RouteViolation::NotAdjacent { position, from, to } => {
                write!(f, "hop {position}: {from} -> {to} is not a server hop")
            }
            RouteViolation::Repeated { uid } => write!(f, "server {uid} repeats"),
        }
    }
}

/// First violation of route well-formedness on `topology`, if any.
pub fn check_route(topology: &Topology, hops: &[u64]) -> std::result::Result<(), RouteViolation> {
    if hops.is_empty() {
        return Err(RouteViolation::Empty);
    }
    if let Some(&uid) = hops.iter().find(|&&u| u >= topology.server_count()) {
        return Err(RouteViolation::OutOfRange { uid });
    }
    for (i, w) in hops.windows(2).enumerate() {
        if w[0] == w[1] {
            return Err(RouteViolation::Repeated { uid: w[0] });
        }
        if topology.hop_between(w[0], w[1]).is_none() {
            return Err(RouteViolation::NotAdjacent { position: i, from: w[0], to: w[1] });
        }
    }
    let mut sorted = hops.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(RouteViolation::Repeated { uid: w[0] });
    }
    Ok(())
}

/// Whether the route is a loop-free walk of server hops, with the first
/// violation when it is not.
pub fn route_is_valid(topology: &Topology, route: &Route) -> (bool, Option<RouteViolation>) {
    match check_route(topology, &route.hops) {
        Ok(()) => (true, None),
        Err(v) => (false, Some(v)),
    }
}
