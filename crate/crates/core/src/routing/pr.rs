use std::sync::Arc;

use super::dim::{crossing, dim_len, dim_path_into};
use super::memo::DimMemo;
use super::proxy::{
    intervals_at, select_from, LevelPair, NullCheck, ProxyCandidateSet, ProxySelection, Provenance,
    SearchVariant,
};
use super::{Route, RouteKind};
use crate::error::Result;
use crate::topology::Network;

/// Which candidate set the proxy search draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProxyStrategy {
    /// Every other copy.
    Exhaustive,
    /// Block search over level-`m-2` substructures.
    Intermediate,
    /// Block search over switches, for decision levels `>= 3`; at level 2
    /// the two block sizes coincide and it behaves as `Intermediate`.
    LevelZero,
}

#[derive(Debug, Clone)]
pub struct PrOptions {
    /// Route the three sub-paths (and the fallback halves) with the same
    /// proxy strategy instead of dimensionally.
    pub recursive: bool,
    /// Include `P2` in both block searches. One flag serves both so that the
    /// switch-block candidates stay a subset of the level-`m-2` ones.
    pub p2: bool,
    pub null_check: NullCheck,
    /// Optional cache of dimensional sub-path lengths.
    pub memo: Option<Arc<DimMemo>>,
}

impl Default for PrOptions {
    fn default() -> Self {
        PrOptions {
            recursive: false,
            p2: false,
            null_check: NullCheck::And,
            memo: None,
        }
    }
}

impl PrOptions {
    fn properties(&self) -> Provenance {
        let base = Provenance::P1 | Provenance::P3;
        if self.p2 {
            base | Provenance::P2
        } else {
            base
        }
    }
}

/// Outcome of the proxy decision for one pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrDecision {
    /// Level where `src` and `dst` first share a structure.
    pub level: Option<usize>,
    /// The searched candidates; `None` when no search ran (level `<= 1`).
    pub candidates: Option<ProxyCandidateSet>,
    pub selection: Option<ProxySelection>,
    /// Length of the route through the direct link at the decision level.
    pub dim_length: u64,
    /// Length of the returned route.
    pub length: u64,
    pub adopted: bool,
}

impl PrDecision {
    /// Candidates whose routes were measured.
    pub fn candidate_count(&self) -> u64 {
        self.selection.as_ref().map_or(0, |s| s.examined.len() as u64)
    }

    pub fn good_route_count(&self) -> u64 {
        self.selection.as_ref().map_or(0, |s| s.good_route_count)
    }
}

struct Pr<'a> {
    net: &'a Network,
    strategy: ProxyStrategy,
    opts: &'a PrOptions,
}

impl Pr<'_> {
    fn sub_len(&self, u: u64, v: u64) -> u64 {
        if self.opts.recursive {
            self.decide(u, v).length
        } else {
            dim_len(self.net, self.opts.memo.as_deref(), u, v)
        }
    }

    fn candidates(&self, lp: &LevelPair, src: u64, dst: u64) -> ProxyCandidateSet {
        let variant = match self.strategy {
            ProxyStrategy::Exhaustive => {
                return ProxyCandidateSet::universe(lp.m, self.net.sizes().g(lp.m), lp.a, lp.b);
            }
            ProxyStrategy::LevelZero if lp.m >= 3 => SearchVariant::LevelZero,
            _ => SearchVariant::Intermediate,
        };
        let null_check = self.opts.null_check;
        if variant == SearchVariant::LevelZero {
            // A pair the level-(m-2) search declines is declined here too;
            // the switch-block test alone is weaker and would let this
            // search find proxies the coarser one never sees.
            let coarse = intervals_at(self.net, lp, src, dst, SearchVariant::Intermediate, Provenance::NONE, null_check);
            if coarse.null {
                return coarse;
            }
        }
        intervals_at(self.net, lp, src, dst, variant, self.opts.properties(), null_check)
    }

    fn decide(&self, src: u64, dst: u64) -> PrDecision {
        let net = self.net;
        let level = net.sizes().common_level(src, dst);
        let m = match level {
            None | Some(0) => {
                let length = u64::from(level.is_some());
                return PrDecision { level, candidates: None, selection: None, dim_length: length, length, adopted: false };
            }
            Some(m) => m,
        };
        let lp = LevelPair::new(net, src, dst, m).expect("pair resolved at its common level");
        let sub = |u, v| self.sub_len(u, v);
        let dim_length = lp.direct_length(net, src, dst, &sub);
        if m == 1 {
            return PrDecision { level, candidates: None, selection: None, dim_length, length: dim_length, adopted: false };
        }
        let set = self.candidates(&lp, src, dst);
        let selection = select_from(net, &lp, src, dst, &set, dim_length, &sub);
        let adopted = selection.as_ref().is_some_and(|s| s.length < dim_length);
        let length = if adopted { selection.as_ref().map_or(dim_length, |s| s.length) } else { dim_length };
        PrDecision { level, candidates: Some(set), selection, dim_length, length, adopted }
    }

    fn sub_path(&self, u: u64, v: u64, out: &mut Vec<u64>) {
        if self.opts.recursive {
            self.path_into(u, v, out);
        } else {
            dim_path_into(self.net, u, v, out);
        }
    }

    fn path_into(&self, src: u64, dst: u64, out: &mut Vec<u64>) -> bool {
        let d = self.decide(src, dst);
        match (&d.selection, d.level) {
            (Some(sel), _) if d.adopted => {
                let [ac, ca, cb, bc] = sel.waypoints;
                self.sub_path(src, ac, out);
                self.sub_path(ca, cb, out);
                self.sub_path(bc, dst, out);
                true
            }
            (_, Some(m)) if m >= 1 && self.opts.recursive => {
                let (exit, entry) = crossing(self.net, m, src, dst);
                self.sub_path(src, exit, out);
                self.sub_path(entry, dst, out);
                false
            }
            _ => {
                dim_path_into(self.net, src, dst, out);
                false
            }
        }
    }
}

/// Runs the proxy decision at the level separating `src` and `dst`.
pub fn pr_decide(
    net: &Network,
    src: u64,
    dst: u64,
    strategy: ProxyStrategy,
    options: &PrOptions,
) -> Result<PrDecision> {
    net.sizes().check_uid(src)?;
    net.sizes().check_uid(dst)?;
    Ok(Pr { net, strategy, opts: options }.decide(src, dst))
}

/// The proxy route when one is strictly shorter than the dimensional route,
/// otherwise the dimensional route.
pub fn pr_route(net: &Network, src: u64, dst: u64, strategy: ProxyStrategy, options: &PrOptions) -> Result<Route> {
    net.sizes().check_uid(src)?;
    net.sizes().check_uid(dst)?;
    let mut hops = Vec::with_capacity(1 << (net.k() + 2));
    let adopted = Pr { net, strategy, opts: options }.path_into(src, dst, &mut hops);
    let kind = if adopted { RouteKind::Proxy } else { RouteKind::Dimensional };
    Ok(Route::new(net, hops, kind))
}

pub fn pr_length(net: &Network, src: u64, dst: u64, strategy: ProxyStrategy, options: &PrOptions) -> Result<u64> {
    Ok(pr_decide(net, src, dst, strategy, options)?.length)
}
