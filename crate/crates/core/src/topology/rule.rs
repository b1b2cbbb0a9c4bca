use std::ops::Range;

use super::LevelSizes;

/// The level-`m` link joining substructures `lower_index < higher_index`.
///
/// `global` holds the endpoint uids relative to the enclosing level-`m`
/// structure, i.e. `local + index * t_{m-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LinkEndpoints {
    pub level: usize,
    pub lower_index: u64,
    pub higher_index: u64,
    pub node_in_lower: u64,
    pub node_in_higher: u64,
    pub global: (u64, u64),
}

/// `f(c) = slope * c + intercept` for `c` in `c_range`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSegment {
    pub c_range: Range<u64>,
    pub slope: i64,
    pub intercept: i64,
}

impl LinearSegment {
    pub fn new(c_range: Range<u64>, slope: i64, intercept: i64) -> Self {
        LinearSegment { c_range, slope, intercept }
    }

    #[inline]
    pub fn eval(&self, c: u64) -> i64 {
        self.slope * c as i64 + self.intercept
    }

    pub fn contains(&self, c: u64) -> bool {
        self.c_range.contains(&c)
    }
}

/// A level-`m` connection rule: a perfect matching between the servers of the
/// `g_m` copies of the level-`m-1` structure, with one link per pair of copies.
///
/// Only [`link_local`](ConnectionRule::link_local) is required. The segment
/// methods default to one constant segment per index, which is always a valid
/// (if unhelpful) piecewise-linear description; the built-in rules override
/// them with their closed forms.
pub trait ConnectionRule: Send + Sync {
    /// Local uids `(in x, in y)` of the level-`m` link between copies `x < y`.
    fn link_local(&self, sizes: &LevelSizes, m: usize, x: u64, y: u64) -> (u64, u64);

    /// Pieces of `v -> u^v`, the node in copy `u` linked toward copy `v`,
    /// covering `[0, g_m) \ {u}`.
    fn outgoing_segments(&self, sizes: &LevelSizes, m: usize, u: u64) -> Vec<LinearSegment> {
        (0..sizes.g(m))
            .filter(|&v| v != u)
            .map(|v| {
                let value = if u < v {
                    self.link_local(sizes, m, u, v).0
                } else {
                    self.link_local(sizes, m, v, u).1
                };
                LinearSegment::new(v..v + 1, 0, value as i64)
            })
            .collect()
    }

    /// Pieces of `c -> c^v`, the node in copy `c` linked toward a fixed copy
    /// `v`, covering `[0, g_m) \ {v}`.
    fn incoming_segments(&self, sizes: &LevelSizes, m: usize, v: u64) -> Vec<LinearSegment> {
        (0..sizes.g(m))
            .filter(|&c| c != v)
            .map(|c| {
                let value = if c < v {
                    self.link_local(sizes, m, c, v).0
                } else {
                    self.link_local(sizes, m, v, c).1
                };
                LinearSegment::new(c..c + 1, 0, value as i64)
            })
            .collect()
    }
}

/// Two pieces split at `pivot`: `[0, pivot)` and `(pivot, g)`.
fn split(pivot: u64, g: u64, below: (i64, i64), above: (i64, i64)) -> Vec<LinearSegment> {
    let mut out = Vec::with_capacity(2);
    if pivot > 0 {
        out.push(LinearSegment::new(0..pivot, below.0, below.1));
    }
    if pivot + 1 < g {
        out.push(LinearSegment::new(pivot + 1..g, above.0, above.1));
    }
    out
}

/// DCell: node `y-1` in copy `x` to node `x` in copy `y`.
#[derive(Debug, Clone, Copy, Default)]
pub struct DCellRule;

impl ConnectionRule for DCellRule {
    #[inline]
    fn link_local(&self, _: &LevelSizes, _: usize, x: u64, y: u64) -> (u64, u64) {
        (y - 1, x)
    }

    fn outgoing_segments(&self, sizes: &LevelSizes, m: usize, u: u64) -> Vec<LinearSegment> {
        split(u, sizes.g(m), (1, 0), (1, -1))
    }

    fn incoming_segments(&self, sizes: &LevelSizes, m: usize, v: u64) -> Vec<LinearSegment> {
        let v = v as i64;
        split(v as u64, sizes.g(m), (0, v - 1), (0, v))
    }
}

/// beta-connection rule: node `y-x-1` in copy `x` to node `t_{m-1}-y+x` in
/// copy `y`.
#[derive(Debug, Clone, Copy, Default)]
pub struct BetaRule;

impl ConnectionRule for BetaRule {
    #[inline]
    fn link_local(&self, sizes: &LevelSizes, m: usize, x: u64, y: u64) -> (u64, u64) {
        (y - x - 1, sizes.t(m - 1) - y + x)
    }

    fn outgoing_segments(&self, sizes: &LevelSizes, m: usize, u: u64) -> Vec<LinearSegment> {
        let t = sizes.t(m - 1) as i64;
        let ui = u as i64;
        split(u, sizes.g(m), (1, t - ui), (1, -ui - 1))
    }

    fn incoming_segments(&self, sizes: &LevelSizes, m: usize, v: u64) -> Vec<LinearSegment> {
        let t = sizes.t(m - 1) as i64;
        let vi = v as i64;
        split(v, sizes.g(m), (-1, vi - 1), (-1, t + vi))
    }
}

/// FiConn: node `(y-1) 2^m + 2^{m-1} - 1` in copy `x` to node
/// `x 2^m + 2^{m-1} - 1` in copy `y`. Level-`m` links use exactly the servers
/// with local uid `= 2^{m-1} - 1 (mod 2^m)`, which are the ones no lower level
/// has used.
#[derive(Debug, Clone, Copy, Default)]
pub struct FiConnRule;

impl FiConnRule {
    #[inline]
    fn offset(m: usize) -> u64 {
        (1u64 << (m - 1)) - 1
    }
}

impl ConnectionRule for FiConnRule {
    #[inline]
    fn link_local(&self, _: &LevelSizes, m: usize, x: u64, y: u64) -> (u64, u64) {
        let step = 1u64 << m;
        let off = Self::offset(m);
        ((y - 1) * step + off, x * step + off)
    }

    fn outgoing_segments(&self, sizes: &LevelSizes, m: usize, u: u64) -> Vec<LinearSegment> {
        let step = 1i64 << m;
        let off = Self::offset(m) as i64;
        split(u, sizes.g(m), (step, off), (step, off - step))
    }

    fn incoming_segments(&self, sizes: &LevelSizes, m: usize, v: u64) -> Vec<LinearSegment> {
        let step = 1i64 << m;
        let off = Self::offset(m) as i64;
        let vi = v as i64;
        split(v, sizes.g(m), (0, (vi - 1) * step + off), (0, vi * step + off))
    }
}
