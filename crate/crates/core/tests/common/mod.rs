//! Reference implementations used as test oracles. Everything here works
//! pointwise from `link_endpoints` and explicit path construction, without the
//! interval machinery under test.
#![allow(dead_code)]

use scdcn::routing::{dim_route, NullCheck, Provenance};
use scdcn::topology::{Network, NetworkSpec};

pub fn net(spec: scdcn::Result<NetworkSpec>) -> Network {
    Network::new(spec.unwrap()).unwrap()
}

/// Absolute uid of the node in copy `from` linked toward copy `to`.
pub fn exit(net: &Network, base: u64, m: usize, from: u64, to: u64) -> u64 {
    let l = net.link_endpoints(m, from.min(to), from.max(to)).unwrap();
    base + if from < to { l.global.0 } else { l.global.1 }
}

/// Every ordered pair with its common level `m >= min_level`.
pub fn cross_pairs(net: &Network, min_level: usize) -> Vec<(u64, u64, usize)> {
    let sizes = net.sizes();
    let mut out = Vec::new();
    for s in 0..net.servers() {
        for d in 0..net.servers() {
            if let Some(m) = sizes.common_level(s, d) {
                if m >= min_level {
                    out.push((s, d, m));
                }
            }
        }
    }
    out
}

/// Brute-force candidate filter: `(null, [(c, provenance)])`.
pub fn brute_candidates(
    net: &Network,
    src: u64,
    dst: u64,
    m: usize,
    block: u64,
    props: Provenance,
    null_check: NullCheck,
) -> (bool, Vec<(u64, Provenance)>) {
    let sizes = net.sizes();
    let base = sizes.base(src, m);
    let (a, b) = (sizes.digit(src, m), sizes.digit(dst, m));
    let t = sizes.t(m - 1);
    let blk = |uid: u64| (uid - base) % t / block;
    let near_src = blk(exit(net, base, m, a, b)) == blk(src);
    let near_dst = blk(exit(net, base, m, b, a)) == blk(dst);
    let null = match null_check {
        NullCheck::And => near_src && near_dst,
        NullCheck::Or => near_src || near_dst,
    };
    if null {
        return (true, Vec::new());
    }
    let mut out = Vec::new();
    for c in (0..sizes.g(m)).filter(|&c| c != a && c != b) {
        let mut p = Provenance::NONE;
        if props.contains(Provenance::P1) && blk(exit(net, base, m, a, c)) == blk(src) {
            p = p | Provenance::P1;
        }
        if props.contains(Provenance::P2) && blk(exit(net, base, m, c, a)) == blk(exit(net, base, m, c, b)) {
            p = p | Provenance::P2;
        }
        if props.contains(Provenance::P3) && blk(exit(net, base, m, b, c)) == blk(dst) {
            p = p | Provenance::P3;
        }
        if !p.is_empty() {
            out.push((c, p));
        }
    }
    (false, out)
}

/// The proxy path through copy `c`, assembled from three dimensional routes.
pub fn proxy_path(net: &Network, src: u64, dst: u64, m: usize, c: u64) -> Vec<u64> {
    let sizes = net.sizes();
    let base = sizes.base(src, m);
    let (a, b) = (sizes.digit(src, m), sizes.digit(dst, m));
    let mut hops = dim_route(net, src, exit(net, base, m, a, c)).unwrap().hops;
    hops.extend(dim_route(net, exit(net, base, m, c, a), exit(net, base, m, c, b)).unwrap().hops);
    hops.extend(dim_route(net, exit(net, base, m, b, c), dst).unwrap().hops);
    hops
}

/// `(c, length)` of the shortest explicit proxy path, ties to the smallest c.
pub fn brute_best(net: &Network, src: u64, dst: u64, m: usize, candidates: impl IntoIterator<Item = u64>) -> Option<(u64, u64)> {
    let mut best: Option<(u64, u64)> = None;
    for c in candidates {
        let len = proxy_path(net, src, dst, m, c).len() as u64 - 1;
        if best.is_none_or(|(_, l)| len < l) {
            best = Some((c, len));
        }
    }
    best
}

/// The seven non-empty subsets of `{P1, P2, P3}`.
pub fn property_subsets() -> Vec<Provenance> {
    let single = [Provenance::P1, Provenance::P2, Provenance::P3];
    (1..8u8)
        .map(|bits| (0..3).filter(|i| bits >> i & 1 == 1).fold(Provenance::NONE, |acc, i| acc | single[i]))
        .collect()
}
