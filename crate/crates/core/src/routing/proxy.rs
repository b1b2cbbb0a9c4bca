use std::fmt;
use std::ops::{BitOr, Range};

use super::dim::dim_len;
use super::interval::{co_block, invert_segment, IntervalSet};
use crate::error::{Error, Result};
use crate::topology::{LinkEndpoints, Network};

/// Set of the three block properties a candidate proxy `c` can satisfy.
///
/// With `T` the block size of the search variant, `src` in copy `a` and `dst`
/// in copy `b`:
/// - `P1`: `a^c` lies in the same `T`-block of copy `a` as `src`;
/// - `P2`: `c^a` and `c^b` lie in the same `T`-block of copy `c`;
/// - `P3`: `b^c` lies in the same `T`-block of copy `b` as `dst`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Provenance(u8);

impl Provenance {
    pub const NONE: Provenance = Provenance(0);
    pub const P1: Provenance = Provenance(1);
    pub const P2: Provenance = Provenance(2);
    pub const P3: Provenance = Provenance(4);
    pub const ALL: Provenance = Provenance(7);

    pub fn contains(self, other: Provenance) -> bool {
        self.0 & other.0 == other.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn bits(self) -> u8 {
        self.0
    }
}

impl BitOr for Provenance {
    type Output = Provenance;

    fn bitor(self, rhs: Provenance) -> Provenance {
        Provenance(self.0 | rhs.0)
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = [(Self::P1, "P1"), (Self::P2, "P2"), (Self::P3, "P3")]
            .iter()
            .filter(|(p, _)| self.contains(*p))
            .map(|&(_, s)| s)
            .collect();
        if names.is_empty() {
            f.write_str("-")
        } else {
            f.write_str(&names.join("|"))
        }
    }
}

/// Block granularity of an interval search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SearchVariant {
    /// Blocks are level-`m-2` substructures; needs `m >= 2`.
    Intermediate,
    /// Blocks are single switches; needs `m >= 3`.
    LevelZero,
}

impl SearchVariant {
    pub fn min_level(self) -> usize {
        match self {
            SearchVariant::Intermediate => 2,
            SearchVariant::LevelZero => 3,
        }
    }

    fn block(self, net: &Network, m: usize) -> u64 {
        match self {
            SearchVariant::Intermediate => net.sizes().t(m - 2),
            SearchVariant::LevelZero => net.sizes().t(0),
        }
    }
}

/// How the two halves of the null test combine.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum NullCheck {
    /// Null only when both `a^b` shares `src`'s block and `b^a` shares `dst`'s.
    #[default]
    And,
    /// Null when either does.
    Or,
}

/// Candidate proxy copies for one pair at one level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProxyCandidateSet {
    pub level: usize,
    pub source_index: u64,
    pub dest_index: u64,
    /// The search declined to look for proxies.
    pub null: bool,
    /// Sorted by index, with the properties each candidate satisfies.
    pub candidates: Vec<(u64, Provenance)>,
    /// Solution intervals of `P1`, `P2`, `P3` before `a` and `b` are removed;
    /// empty for properties that were not requested.
    pub intervals: [Vec<Range<u64>>; 3],
}

impl ProxyCandidateSet {
    /// Every index other than `a` and `b`, as examined by exhaustive search.
    pub fn universe(level: usize, g: u64, a: u64, b: u64) -> Self {
        ProxyCandidateSet {
            level,
            source_index: a,
            dest_index: b,
            null: false,
            candidates: (0..g).filter(|&c| c != a && c != b).map(|c| (c, Provenance::NONE)).collect(),
            intervals: Default::default(),
        }
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn indices(&self) -> impl Iterator<Item = u64> + '_ {
        self.candidates.iter().map(|&(c, _)| c)
    }
}

/// The best proxy among a candidate set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProxySelection {
    pub proxy: u64,
    pub level: usize,
    /// The `a`–`c` and `c`–`b` links, with uids relative to the enclosing
    /// level-`m` structure.
    pub links: [LinkEndpoints; 2],
    /// Absolute uids of `a^c`, `c^a`, `c^b`, `b^c`.
    pub waypoints: [u64; 4],
    pub length: u64,
    /// Length of the dimensional alternative the candidates were compared to.
    pub dim_length: u64,
    /// `(c, length)` for every candidate, in index order.
    pub examined: Vec<(u64, u64)>,
    /// Candidates whose route is no longer than `dim_length`.
    pub good_route_count: u64,
}

/// `src` and `dst` resolved against level `m`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LevelPair {
    pub m: usize,
    pub base: u64,
    pub a: u64,
    pub b: u64,
}

impl LevelPair {
    pub(crate) fn new(net: &Network, src: u64, dst: u64, m: usize) -> Result<Self> {
        let sizes = net.sizes();
        sizes.check_uid(src)?;
        sizes.check_uid(dst)?;
        if m == 0 || m > net.k() {
            return Err(Error::LevelOutOfRange { level: m, k: net.k() });
        }
        if src / sizes.t(m) != dst / sizes.t(m) {
            return Err(Error::PreconditionViolated(format!(
                "{src} and {dst} are not in one level-{m} structure"
            )));
        }
        let (a, b) = (sizes.digit(src, m), sizes.digit(dst, m));
        if a == b {
            return Err(Error::PreconditionViolated(format!(
                "{src} and {dst} are in the same level-{} copy {a}",
                m - 1
            )));
        }
        Ok(LevelPair { m, base: sizes.base(src, m), a, b })
    }

    #[inline]
    pub(crate) fn exit(&self, net: &Network, from: u64, to: u64) -> u64 {
        net.exit_global(self.base, self.m, from, to)
    }

    /// Length through the direct `a`–`b` link.
    pub(crate) fn direct_length(&self, net: &Network, src: u64, dst: u64, sub: &dyn Fn(u64, u64) -> u64) -> u64 {
        sub(src, self.exit(net, self.a, self.b)) + 1 + sub(self.exit(net, self.b, self.a), dst)
    }
}

/// Exhaustive proxy search: every index other than `a` and `b` is a candidate.
pub fn gp_exhaustive(net: &Network, src: u64, dst: u64, m: usize) -> Result<Option<ProxySelection>> {
    let lp = LevelPair::new(net, src, dst, m)?;
    let set = ProxyCandidateSet::universe(m, net.sizes().g(m), lp.a, lp.b);
    Ok(select_dimensional(net, &lp, src, dst, &set))
}

/// Candidate proxies by block membership, solved on index intervals.
pub fn gp_intervals(
    net: &Network,
    src: u64,
    dst: u64,
    m: usize,
    variant: SearchVariant,
    properties: Provenance,
    null_check: NullCheck,
) -> Result<ProxyCandidateSet> {
    let lp = LevelPair::new(net, src, dst, m)?;
    if m < variant.min_level() {
        return Err(Error::UnsupportedLevel { level: m, minimum: variant.min_level() });
    }
    Ok(intervals_at(net, &lp, src, dst, variant, properties, null_check))
}

pub(crate) fn intervals_at(
    net: &Network,
    lp: &LevelPair,
    src: u64,
    dst: u64,
    variant: SearchVariant,
    properties: Provenance,
    null_check: NullCheck,
) -> ProxyCandidateSet {
    let sizes = net.sizes();
    let (m, a, b) = (lp.m, lp.a, lp.b);
    let block = variant.block(net, m);
    let ls = sizes.local(src, m - 1);
    let ld = sizes.local(dst, m - 1);
    let mut set = ProxyCandidateSet {
        level: m,
        source_index: a,
        dest_index: b,
        null: false,
        candidates: Vec::new(),
        intervals: Default::default(),
    };

    let src_near = net.exit_local(m, a, b) / block == ls / block;
    let dst_near = net.exit_local(m, b, a) / block == ld / block;
    set.null = match null_check {
        NullCheck::And => src_near && dst_near,
        NullCheck::Or => src_near || dst_near,
    };
    if set.null {
        return set;
    }

    let g = sizes.g(m);
    let same_block = |from: u64, local: u64| -> Vec<Range<u64>> {
        let j = (local / block) as i64;
        let target = j * block as i64..(j + 1) * block as i64;
        net.rule()
            .outgoing_segments(sizes, m, from)
            .iter()
            .map(|seg| invert_segment(seg, &target, &(0..g)))
            .collect()
    };
    if properties.contains(Provenance::P1) {
        set.intervals[0] = IntervalSet::from_ranges(same_block(a, ls)).ranges().to_vec();
    }
    if properties.contains(Provenance::P2) {
        let to_a = net.rule().incoming_segments(sizes, m, a);
        let to_b = net.rule().incoming_segments(sizes, m, b);
        let mut ranges = Vec::new();
        for f in &to_a {
            for h in &to_b {
                ranges.extend(co_block(f, h, block));
            }
        }
        set.intervals[1] = IntervalSet::from_ranges(ranges).ranges().to_vec();
    }
    if properties.contains(Provenance::P3) {
        set.intervals[2] = IntervalSet::from_ranges(same_block(b, ld)).ranges().to_vec();
    }

    let tagged: Vec<(IntervalSet, Provenance)> = set
        .intervals
        .iter()
        .zip([Provenance::P1, Provenance::P2, Provenance::P3])
        .map(|(r, p)| (IntervalSet::from_ranges(r.iter().cloned()), p))
        .collect();
    let mut all = IntervalSet::from_ranges(set.intervals.iter().flatten().cloned());
    all.remove(a);
    all.remove(b);
    set.candidates = all
        .iter()
        .map(|c| {
            let prov = tagged
                .iter()
                .filter(|(s, _)| s.contains(c))
                .fold(Provenance::NONE, |acc, &(_, p)| acc | p);
            (c, prov)
        })
        .collect();
    set
}

/// Picks the shortest proxy route among `candidates`, with dimensional
/// sub-paths. Ties go to the smallest index.
pub fn select_proxy(
    net: &Network,
    src: u64,
    dst: u64,
    candidates: &ProxyCandidateSet,
) -> Result<Option<ProxySelection>> {
    let lp = LevelPair::new(net, src, dst, candidates.level)?;
    if (lp.a, lp.b) != (candidates.source_index, candidates.dest_index) {
        return Err(Error::PreconditionViolated(format!(
            "candidate set is for copies ({}, {}), pair lies in ({}, {})",
            candidates.source_index, candidates.dest_index, lp.a, lp.b
        )));
    }
    let g = net.sizes().g(lp.m);
    if let Some(&(c, _)) = candidates.candidates.iter().find(|&&(c, _)| c >= g || c == lp.a || c == lp.b) {
        return Err(Error::PreconditionViolated(format!("{c} is not a valid proxy index")));
    }
    Ok(select_dimensional(net, &lp, src, dst, candidates))
}

fn select_dimensional(
    net: &Network,
    lp: &LevelPair,
    src: u64,
    dst: u64,
    candidates: &ProxyCandidateSet,
) -> Option<ProxySelection> {
    let sub = |u, v| dim_len(net, None, u, v);
    let dim_length = lp.direct_length(net, src, dst, &sub);
    select_from(net, lp, src, dst, candidates, dim_length, &sub)
}

/// Core of proxy selection; `sub` measures the route between two servers of
/// one copy.
pub(crate) fn select_from(
    net: &Network,
    lp: &LevelPair,
    src: u64,
    dst: u64,
    candidates: &ProxyCandidateSet,
    dim_length: u64,
    sub: &dyn Fn(u64, u64) -> u64,
) -> Option<ProxySelection> {
    if candidates.is_empty() {
        return None;
    }
    let (a, b) = (lp.a, lp.b);
    let mut examined = Vec::with_capacity(candidates.len());
    let mut best: Option<(u64, u64)> = None;
    for c in candidates.indices() {
        let len = sub(src, lp.exit(net, a, c))
            + sub(lp.exit(net, c, a), lp.exit(net, c, b))
            + sub(lp.exit(net, b, c), dst)
            + 2;
        examined.push((c, len));
        if best.is_none_or(|(_, l)| len < l) {
            best = Some((c, len));
        }
    }
    let (proxy, length) = best?;
    let good_route_count = examined.iter().filter(|&&(_, l)| l <= dim_length).count() as u64;
    let m = lp.m;
    let link = |x: u64, y: u64| net.link_endpoints(m, x.min(y), x.max(y)).expect("indices checked");
    Some(ProxySelection {
        proxy,
        level: m,
        links: [link(a, proxy), link(proxy, b)],
        waypoints: [
            lp.exit(net, a, proxy),
            lp.exit(net, proxy, a),
            lp.exit(net, proxy, b),
            lp.exit(net, b, proxy),
        ],
        length,
        dim_length,
        examined,
        good_route_count,
    })
}
