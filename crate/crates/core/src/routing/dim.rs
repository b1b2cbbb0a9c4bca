use super::memo::DimMemo;
use super::{Route, RouteKind};
use crate::error::Result;
use crate::topology::Network;

/// The dimensional route: cross the single link joining the two top-level
/// copies that separate `src` and `dst`, and recurse on both sides.
pub fn dim_route(net: &Network, src: u64, dst: u64) -> Result<Route> {
    net.sizes().check_uid(src)?;
    net.sizes().check_uid(dst)?;
    let mut hops = Vec::with_capacity(1 << (net.k() + 1));
    dim_path_into(net, src, dst, &mut hops);
    Ok(Route::new(net, hops, RouteKind::Dimensional))
}

pub fn dim_length(net: &Network, src: u64, dst: u64) -> Result<u64> {
    net.sizes().check_uid(src)?;
    net.sizes().check_uid(dst)?;
    Ok(dim_len(net, None, src, dst))
}

/// Appends the dimensional path `src ..= dst` to `out`.
pub(crate) fn dim_path_into(net: &Network, src: u64, dst: u64, out: &mut Vec<u64>) {
    let sizes = net.sizes();
    match sizes.common_level(src, dst) {
        None => out.push(src),
        Some(0) => out.extend([src, dst]),
        Some(m) => {
            let (exit, entry) = crossing(net, m, src, dst);
            dim_path_into(net, src, exit, out);
            dim_path_into(net, entry, dst, out);
        }
    }
}

/// The level-`m` link `(dst', src')` from `src`'s copy toward `dst`'s copy.
#[inline]
pub(crate) fn crossing(net: &Network, m: usize, src: u64, dst: u64) -> (u64, u64) {
    let sizes = net.sizes();
    let base = sizes.base(src, m);
    let (a, b) = (sizes.digit(src, m), sizes.digit(dst, m));
    (net.exit_global(base, m, a, b), net.exit_global(base, m, b, a))
}

pub(crate) fn dim_len(net: &Network, memo: Option<&DimMemo>, src: u64, dst: u64) -> u64 {
    let sizes = net.sizes();
    match sizes.common_level(src, dst) {
        None => 0,
        Some(0) => 1,
        Some(m) => {
            let key = memo
                .filter(|c| c.covers(m))
                .map(|_| (m, sizes.local(src, m), sizes.local(dst, m)));
            if let (Some(cache), Some(key)) = (memo, key) {
                if let Some(len) = cache.get(key) {
                    return len;
                }
            }
            let (exit, entry) = crossing(net, m, src, dst);
            let len = dim_len(net, memo, src, exit) + 1 + dim_len(net, memo, entry, dst);
            if let (Some(cache), Some(key)) = (memo, key) {
                cache.put(key, len);
            }
            len
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::routing::{bfs_distances, check_route};
    use crate::topology::{NetworkSpec, Topology};

    #[test]
    fn identity_and_switch() {
        let net = Network::new(NetworkSpec::dcell(2, 3).unwrap()).unwrap();
        assert_eq!(dim_route(&net, 7, 7).unwrap().len(), 0);
        assert_eq!(dim_route(&net, 6, 8).unwrap().hops, vec![6, 8]);
    }

    #[test]
    fn dcell_1_3_example() {
        let net = Network::new(NetworkSpec::dcell(1, 3).unwrap()).unwrap();
        let r = dim_route(&net, 1, 5).unwrap();
        assert_eq!(r.hops, vec![1, 0, 3, 5]);
        let topo = Topology::build(&net).unwrap();
        assert_eq!(bfs_distances(&topo, 1).unwrap()[5], 3);
    }

    #[test]
    fn out_of_range() {
        let net = Network::new(NetworkSpec::dcell(1, 3).unwrap()).unwrap();
        assert!(dim_route(&net, 0, 12).is_err());
        assert!(dim_length(&net, 12, 0).is_err());
    }

    #[test]
    fn all_pairs_valid_bounded_and_no_shorter_than_bfs() {
        for spec in [NetworkSpec::dcell(2, 3), NetworkSpec::beta_dcell(2, 3), NetworkSpec::ficonn(2, 4)] {
            let net = Network::new(spec.unwrap()).unwrap();
            let topo = Topology::build(&net).unwrap();
            let bound = (1u64 << (net.k() + 1)) - 1;
            for s in 0..net.servers() {
                let dist = bfs_distances(&topo, s).unwrap();
                for d in 0..net.servers() {
                    let r = dim_route(&net, s, d).unwrap();
                    assert_eq!(check_route(&topo, &r.hops), Ok(()));
                    assert!(r.len() <= bound);
                    assert_eq!(r.len(), dim_len(&net, None, s, d));
                    assert!(dist[d as usize] as u64 <= r.len());
                    if s != d {
                        assert!(r.order() <= 2);
                    }
                }
            }
        }
    }

    #[test]
    fn memo_agrees() {
        let net = Network::new(NetworkSpec::beta_dcell(3, 3).unwrap()).unwrap();
        let memo = DimMemo::for_levels_below_top(3, 1 << 16);
        for (s, d) in [(0u64, 24491u64), (5, 7000), (100, 155), (9000, 9001), (3, 11)] {
            let want = dim_len(&net, None, s, d);
            assert_eq!(dim_len(&net, Some(&memo), s, d), want);
            assert_eq!(dim_len(&net, Some(&memo), s, d), want);
        }
        assert!(!memo.is_empty());
    }
}
