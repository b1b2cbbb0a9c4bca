//! Recursively-defined server-centric topologies.
//!
//! A level-`k` network is built from `g_k` disjoint copies of the level-`k-1`
//! network, with exactly one level-`k` link between every pair of copies. The
//! level-0 network is a single switch with `n` servers. Servers are identified
//! by a mixed-radix uid in `[0, t_k)` whose digits are the copy indices at each
//! level.

mod graph;
mod rule;
mod stats;
mod validate;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use graph::{build_graph, estimate_graph_bytes, HopKind, Topology, DEFAULT_CAPACITY_BYTES};
pub use rule::{
    BetaRule, ConnectionRule, DCellRule, FiConnRule, LinearSegment, LinkEndpoints,
};
pub use stats::StatsRecord;
pub use validate::{validate, ValidationReport, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "dcell")]
    DCell,
    #[serde(rename = "beta_dcell")]
    BetaDCell,
    #[serde(rename = "ficonn")]
    FiConn,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::DCell, Family::BetaDCell, Family::FiConn];

    /// Stable identifier used in CSV and JSON output.
    pub fn id(self) -> &'static str {
        match self {
            Family::DCell => "dcell",
            Family::BetaDCell => "beta_dcell",
            Family::FiConn => "ficonn",
        }
    }

    fn default_rule(self) -> Arc<dyn ConnectionRule> {
        match self {
            Family::DCell => Arc::new(DCellRule),
            Family::BetaDCell => Arc::new(BetaRule),
            Family::FiConn => Arc::new(FiConnRule),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "dcell" | "d" => Ok(Family::DCell),
            "beta_dcell" | "beta" | "betadcell" | "bdcell" | "b" => Ok(Family::BetaDCell),
            "ficonn" | "f" => Ok(Family::FiConn),
            other => Err(Error::InvalidSpec(format!("unknown family `{other}`"))),
        }
    }
}

/// Family plus `(k, n)`: identifies one topology instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NetworkSpec {
    pub family: Family,
    pub k: usize,
    pub n: u64,
}

impl NetworkSpec {
    pub fn new(family: Family, k: usize, n: u64) -> Result<Self> {
        let spec = NetworkSpec { family, k, n };
        spec.check()?;
        Ok(spec)
    }

    pub fn dcell(k: usize, n: u64) -> Result<Self> {
        Self::new(Family::DCell, k, n)
    }

    pub fn beta_dcell(k: usize, n: u64) -> Result<Self> {
        Self::new(Family::BetaDCell, k, n)
    }

    pub fn ficonn(k: usize, n: u64) -> Result<Self> {
        Self::new(Family::FiConn, k, n)
    }

    /// Checks the parameter bounds (not the FiConn divisibility, which needs
    /// the full recurrence; see [`compute_sizes`]).
    pub fn check(&self) -> Result<()> {
        match self.family {
            Family::DCell | Family::BetaDCell if self.n <= 2 => Err(Error::InvalidSpec(format!(
                "{} requires n > 2, got n = {}",
                self.family, self.n
            ))),
            Family::FiConn if self.n <= 3 || !self.n.is_multiple_of(2) => Err(Error::InvalidSpec(format!(
                "ficonn requires an even n > 3, got n = {}",
                self.n
            ))),
            _ if self.k > 62 => Err(Error::InvalidSpec(format!("level k = {} is too large", self.k))),
            _ => Ok(()),
        }
    }

    /// Short human-readable id, e.g. `dcell(3,3)`.
    pub fn id(&self) -> String {
        format!("{}({},{})", self.family, self.k, self.n)
    }
}

impl fmt::Display for NetworkSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.family, self.k, self.n)
    }
}

/// Server counts `t_0..t_k`, copy counts `g_1..g_k` and, for FiConn, the
/// available-server counts `b_1..b_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSizes {
    n: u64,
    t: Vec<u64>,
    g: Vec<u64>,
    b: Vec<u64>,
}

impl LevelSizes {
    pub fn k(&self) -> usize {
        self.g.len()
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Servers in a level-`level` structure.
    pub fn t(&self, level: usize) -> u64 {
        self.t[level]
    }

    /// Copies of the level-`m-1` structure inside a level-`m` one, `1 <= m <= k`.
    pub fn g(&self, m: usize) -> u64 {
        self.g[m - 1]
    }

    pub fn t_all(&self) -> &[u64] {
        &self.t
    }

    /// `g_1..g_k`.
    pub fn g_all(&self) -> &[u64] {
        &self.g
    }

    /// FiConn available-server counts `b_1..b_k`; empty for the DCell family.
    pub fn b_all(&self) -> &[u64] {
        &self.b
    }

    pub fn servers(&self) -> u64 {
        self.t[self.k()]
    }

    /// Radix of label position `i` (0 = least significant).
    pub fn radix(&self, i: usize) -> u64 {
        if i == 0 {
            self.n
        } else {
            self.g(i)
        }
    }

    /// Index of the level-`m-1` copy containing `uid` inside its level-`m`
    /// structure (label digit `x_m`).
    #[inline]
    pub fn digit(&self, uid: u64, m: usize) -> u64 {
        if m == 0 {
            uid % self.n
        } else {
            (uid % self.t[m]) / self.t[m - 1]
        }
    }

    /// uid of `uid` relative to its level-`level` structure.
    #[inline]
    pub fn local(&self, uid: u64, level: usize) -> u64 {
        uid % self.t[level]
    }

    /// First uid of the level-`level` structure containing `uid`.
    #[inline]
    pub fn base(&self, uid: u64, level: usize) -> u64 {
        uid - uid % self.t[level]
    }

    /// Smallest level whose structure contains both servers; `None` when
    /// `a == b`. Level 0 means the two servers share a switch.
    #[inline]
    pub fn common_level(&self, a: u64, b: u64) -> Option<usize> {
        if a == b {
            return None;
        }
        (0..=self.k()).find(|&m| a / self.t[m] == b / self.t[m])
    }

    pub fn check_uid(&self, uid: u64) -> Result<()> {
        if uid < self.servers() {
            Ok(())
        } else {
            Err(Error::UidOutOfRange { uid, servers: self.servers() })
        }
    }
}

/// Computes the level recurrences for `spec`, detecting overflow and FiConn
/// divisibility failures.
pub fn compute_sizes(spec: &NetworkSpec) -> Result<LevelSizes> {
    spec.check()?;
    let mut t = Vec::with_capacity(spec.k + 1);
    let mut g = Vec::with_capacity(spec.k);
    let mut b = Vec::new();
    t.push(spec.n);
    for m in 1..=spec.k {
        let prev = t[m - 1];
        let copies = match spec.family {
            Family::DCell | Family::BetaDCell => {
                prev.checked_add(1).ok_or(Error::SizeOverflow { level: m })?
            }
            Family::FiConn => {
                let divisor = 1u64 << m;
                if prev % divisor != 0 {
                    return Err(Error::NonIntegralFiConn { level: m, t_prev: prev, divisor });
                }
                b.push(prev >> (m - 1));
                prev / divisor + 1
            }
        };
        g.push(copies);
        t.push(prev.checked_mul(copies).ok_or(Error::SizeOverflow { level: m })?);
    }
    Ok(LevelSizes { n: spec.n, t, g, b })
}

/// Mixed-radix server label, most significant digit first (`x_k .. x_0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ServerLabel {
    pub digits: Vec<u64>,
}

impl ServerLabel {
    pub fn new(digits: Vec<u64>) -> Self {
        ServerLabel { digits }
    }
}

impl fmt::Display for ServerLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.digits.iter().map(u64::to_string).collect();
        write!(f, "{}", parts.join("."))
    }
}

pub fn uid_from_label(label: &ServerLabel, sizes: &LevelSizes) -> Result<u64> {
    let k = sizes.k();
    if label.digits.len() != k + 1 {
        return Err(Error::LabelLength { got: label.digits.len(), expected: k + 1 });
    }
    let mut uid = 0u64;
    for (pos, &digit) in label.digits.iter().enumerate() {
        let level = k - pos;
        let bound = sizes.radix(level);
        if digit >= bound {
            return Err(Error::DigitOutOfRange { position: level, digit, bound });
        }
        uid += if level == 0 { digit } else { digit * sizes.t(level - 1) };
    }
    Ok(uid)
}

pub fn label_from_uid(uid: u64, sizes: &LevelSizes) -> Result<ServerLabel> {
    sizes.check_uid(uid)?;
    let k = sizes.k();
    let digits = (0..=k).rev().map(|level| sizes.digit(uid, level)).collect();
    Ok(ServerLabel { digits })
}

/// A topology instance: parameters, level sizes and the connection rule used
/// at every level.
#[derive(Clone)]
pub struct Network {
    spec: NetworkSpec,
    sizes: LevelSizes,
    rule: Arc<dyn ConnectionRule>,
}

impl fmt::Debug for Network {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Network")
            .field("spec", &self.spec)
            .field("sizes", &self.sizes)
            .finish()
    }
}

impl Network {
    pub fn new(spec: NetworkSpec) -> Result<Self> {
        let sizes = compute_sizes(&spec)?;
        Ok(Network { spec, rule: spec.family.default_rule(), sizes })
    }

    /// A Generalized DCell with a caller-supplied connection rule. The level
    /// sizes follow the family recurrence of `spec`.
    pub fn with_rule(spec: NetworkSpec, rule: Arc<dyn ConnectionRule>) -> Result<Self> {
        let sizes = compute_sizes(&spec)?;
        Ok(Network { spec, sizes, rule })
    }

    pub fn spec(&self) -> &NetworkSpec {
        &self.spec
    }

    pub fn sizes(&self) -> &LevelSizes {
        &self.sizes
    }

    pub fn k(&self) -> usize {
        self.sizes.k()
    }

    pub fn servers(&self) -> u64 {
        self.sizes.servers()
    }

    pub fn rule(&self) -> &dyn ConnectionRule {
        self.rule.as_ref()
    }

    fn check_level_pair(&self, m: usize, x: u64, y: u64) -> Result<()> {
        if m == 0 || m > self.k() {
            return Err(Error::LevelOutOfRange { level: m, k: self.k() });
        }
        let g = self.sizes.g(m);
        for idx in [x, y] {
            if idx >= g {
                return Err(Error::IndexOutOfRange { index: idx, bound: g });
            }
        }
        Ok(())
    }

    /// The unique level-`m` link between substructures `x < y`.
    pub fn link_endpoints(&self, m: usize, x: u64, y: u64) -> Result<LinkEndpoints> {
        self.check_level_pair(m, x, y)?;
        if x >= y {
            return Err(Error::PreconditionViolated(format!(
                "link endpoints need x < y, got ({x}, {y})"
            )));
        }
        let (lo, hi) = self.rule.link_local(&self.sizes, m, x, y);
        let block = self.sizes.t(m - 1);
        Ok(LinkEndpoints {
            level: m,
            lower_index: x,
            higher_index: y,
            node_in_lower: lo,
            node_in_higher: hi,
            global: (lo + x * block, hi + y * block),
        })
    }

    /// Segments of `v -> u^v` for substructure `u` at level `m`.
    pub fn connection_segments(&self, m: usize, u: u64) -> Result<Vec<LinearSegment>> {
        self.check_level_pair(m, u, u)?;
        Ok(self.rule.outgoing_segments(&self.sizes, m, u))
    }

    /// Segments of `c -> c^v` for a fixed target substructure `v` at level `m`.
    pub fn incoming_segments(&self, m: usize, v: u64) -> Result<Vec<LinearSegment>> {
        self.check_level_pair(m, v, v)?;
        Ok(self.rule.incoming_segments(&self.sizes, m, v))
    }

    /// Local uid (within copy `from`) of the node linked toward copy `to` at
    /// level `m`. Unchecked: `from != to`, both `< g_m`.
    #[inline]
    pub(crate) fn exit_local(&self, m: usize, from: u64, to: u64) -> u64 {
        if from < to {
            self.rule.link_local(&self.sizes, m, from, to).0
        } else {
            self.rule.link_local(&self.sizes, m, to, from).1
        }
    }

    /// Global uid of the node in copy `from` linked toward copy `to`, inside the
    /// level-`m` structure starting at uid `base`.
    #[inline]
    pub(crate) fn exit_global(&self, base: u64, m: usize, from: u64, to: u64) -> u64 {
        base + from * self.sizes.t(m - 1) + self.exit_local(m, from, to)
    }

    pub fn stats(&self) -> StatsRecord {
        StatsRecord::analytic(self)
    }
}

/// Analytic statistics for `spec` without building the graph.
pub fn stats(spec: &NetworkSpec) -> Result<StatsRecord> {
    Ok(Network::new(*spec)?.stats())
}
