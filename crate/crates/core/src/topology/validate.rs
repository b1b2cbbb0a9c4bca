use std::fmt;

use super::{Family, Topology};

/// One violated topology invariant with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The server count is not a whole number of switches.
    PartialSwitch { servers: u64, ports: u64 },
    /// DCell-family server without exactly one link at `level`.
    LevelDegree { uid: u64, level: usize, count: usize },
    /// FiConn server with more than one direct link.
    FiConnDegree { uid: u64, count: usize },
    /// A level-`level` link whose endpoints are not in distinct level-`level-1`
    /// copies of one level-`level` structure.
    MisplacedLink { level: usize, u: u64, v: u64 },
    /// Copies `x` and `y` of structure `group` at `level` are not joined.
    MissingLink { level: usize, group: u64, x: u64, y: u64 },
    /// Copies `x` and `y` are joined by more than one level-`level` link.
    DuplicateLink { level: usize, group: u64, x: u64, y: u64, count: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::PartialSwitch { servers, ports } => {
                write!(f, "{servers} servers do not fill switches of {ports} ports")
            }
            Violation::LevelDegree { uid, level, count } => {
                write!(f, "server {uid} has {count} level-{level} links (expected 1)")
            }
            Violation::FiConnDegree { uid, count } => {
                write!(f, "server {uid} has {count} direct links (at most 1 allowed)")
            }
            Violation::MisplacedLink { level, u, v } => {
                write!(f, "level-{level} link ({u}, {v}) does not join two sibling copies")
            }
            Violation::MissingLink { level, group, x, y } => {
                write!(f, "level-{level} structure {group}: copies {x} and {y} are not linked")
            }
            Violation::DuplicateLink { level, group, x, y, count } => {
                write!(f, "level-{level} structure {group}: copies {x} and {y} joined {count} times")
            }
        }
    }
}

/// Violations found by [`validate`]; empty means the topology is valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return writeln!(f, "ok");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

#[inline]
fn pair_index(g: u64, x: u64, y: u64) -> u64 {
    x * g - x * (x + 1) / 2 + (y - x - 1)
}

/// Checks every structural invariant of a built topology.
pub fn validate(topology: &Topology) -> ValidationReport {
    let net = topology.network();
    let sizes = net.sizes();
    let k = net.k();
    let servers = topology.server_count();
    let mut violations = Vec::new();

    if !servers.is_multiple_of(sizes.n()) {
        violations.push(Violation::PartialSwitch { servers, ports: sizes.n() });
    }

    // Per-level pair counters: slot `group * C(g, 2) + pair`.
    let mut counts: Vec<Vec<u32>> = (1..=k)
        .map(|m| {
            let g = sizes.g(m);
            vec![0u32; ((servers / sizes.t(m)) * (g * (g - 1) / 2)) as usize]
        })
        .collect();

    let mut per_level = vec![0usize; k + 1];
    for u in 0..servers {
        let links = topology.direct_links(u);
        per_level.iter_mut().for_each(|c| *c = 0);
        for d in links {
            let m = d.level;
            if m == 0 || m > k {
                if u < d.peer {
                    violations.push(Violation::MisplacedLink { level: m, u, v: d.peer });
                }
                continue;
            }
            per_level[m] += 1;
            if u > d.peer {
                continue;
            }
            let v = d.peer;
            let same_parent = u / sizes.t(m) == v / sizes.t(m);
            let (x, y) = (sizes.digit(u, m), sizes.digit(v, m));
            if !same_parent || x == y {
                violations.push(Violation::MisplacedLink { level: m, u, v });
                continue;
            }
            let g = sizes.g(m);
            let group = u / sizes.t(m);
            let slot = group * (g * (g - 1) / 2) + pair_index(g, x.min(y), x.max(y));
            counts[m - 1][slot as usize] += 1;
        }
        match net.spec().family {
            Family::DCell | Family::BetaDCell => {
                for (level, &count) in per_level.iter().enumerate().skip(1) {
                    if count != 1 {
                        violations.push(Violation::LevelDegree { uid: u, level, count });
                    }
                }
            }
            Family::FiConn => {
                if links.len() > 1 {
                    violations.push(Violation::FiConnDegree { uid: u, count: links.len() });
                }
            }
        }
    }

    for m in 1..=k {
        let g = sizes.g(m);
        let pairs = g * (g - 1) / 2;
        for (slot, &count) in counts[m - 1].iter().enumerate() {
            if count == 1 {
                continue;
            }
            let slot = slot as u64;
            let (group, mut rest) = (slot / pairs, slot % pairs);
            let mut x = 0;
            while rest >= g - x - 1 {
                rest -= g - x - 1;
                x += 1;
            }
            let y = x + 1 + rest;
            violations.push(if count == 0 {
                Violation::MissingLink { level: m, group, x, y }
            } else {
                Violation::DuplicateLink { level: m, group, x, y, count }
            });
        }
    }

    ValidationReport { violations }
}
