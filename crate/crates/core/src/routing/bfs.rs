use std::collections::VecDeque;

use super::{Route, RouteKind};
use crate::error::{Error, Result};
use crate::topology::Topology;

const NONE: u64 = u64::MAX;

/// Reusable scratch for bidirectional breadth-first search on one topology.
///
/// Each side keeps epoch-stamped visit marks, so a query costs time in the
/// size of the explored region rather than the network. A switch is expanded
/// at most once per side: the first server reaching it discovers all of its
/// co-switch servers in one hop.
pub struct BfsSearch<'a> {
    topo: &'a Topology,
    epoch: u32,
    seen: [Vec<u32>; 2],
    parent: [Vec<u64>; 2],
    switch_seen: [Vec<u32>; 2],
    frontier: [Vec<u64>; 2],
    next: Vec<u64>,
    meets: Vec<u64>,
}

impl<'a> BfsSearch<'a> {
    pub fn new(topo: &'a Topology) -> Self {
        let n = topo.server_count() as usize;
        let s = topo.switch_count() as usize;
        BfsSearch {
            topo,
            epoch: 0,
            seen: [vec![0; n], vec![0; n]],
            parent: [vec![NONE; n], vec![NONE; n]],
            switch_seen: [vec![0; s], vec![0; s]],
            frontier: [Vec::new(), Vec::new()],
            next: Vec::new(),
            meets: Vec::new(),
        }
    }

    fn bump_epoch(&mut self) {
        if self.epoch == u32::MAX {
            for side in 0..2 {
                self.seen[side].iter_mut().for_each(|x| *x = 0);
                self.switch_seen[side].iter_mut().for_each(|x| *x = 0);
            }
            self.epoch = 0;
        }
        self.epoch += 1;
    }

    #[inline]
    fn visit(&mut self, side: usize, u: u64, parent: u64) -> bool {
        let i = u as usize;
        if self.seen[side][i] == self.epoch {
            return false;
        }
        self.seen[side][i] = self.epoch;
        self.parent[side][i] = parent;
        true
    }

    /// Expands one full layer of `side`; returns whether the sides met.
    fn expand(&mut self, side: usize) -> bool {
        let other = 1 - side;
        let frontier = std::mem::take(&mut self.frontier[side]);
        self.next.clear();
        self.meets.clear();
        let topo = self.topo;
        for &u in &frontier {
            let sw = topo.switch_of(u) as usize;
            let members = if self.switch_seen[side][sw] == self.epoch {
                0..0
            } else {
                self.switch_seen[side][sw] = self.epoch;
                topo.switch_members(sw as u64)
            };
            // ascending merge of co-switch servers and direct peers
            let direct = topo.direct_links(u);
            let (mut i, mut j) = (members.start, 0);
            loop {
                let w = match (i < members.end, direct.get(j)) {
                    (true, Some(d)) if d.peer < i => {
                        j += 1;
                        d.peer
                    }
                    (true, _) => {
                        i += 1;
                        i - 1
                    }
                    (false, Some(d)) => {
                        j += 1;
                        d.peer
                    }
                    (false, None) => break,
                };
                if w != u && self.visit(side, w, u) {
                    self.next.push(w);
                    if self.seen[other][w as usize] == self.epoch {
                        self.meets.push(w);
                    }
                }
            }
        }
        self.frontier[side] = std::mem::take(&mut self.next);
        self.next = frontier;
        !self.meets.is_empty()
    }

    /// A minimum-hop route from `src` to `dst`. Among equal-length routes the
    /// meeting server with the smallest uid is chosen.
    pub fn route(&mut self, src: u64, dst: u64) -> Result<Route> {
        let hops = self.path(src, dst)?;
        Ok(Route::new(self.topo.network(), hops, RouteKind::Shortest))
    }

    pub fn distance(&mut self, src: u64, dst: u64) -> Result<u64> {
        Ok(self.path(src, dst)?.len() as u64 - 1)
    }

    pub(crate) fn path(&mut self, src: u64, dst: u64) -> Result<Vec<u64>> {
        let sizes = self.topo.network().sizes();
        sizes.check_uid(src)?;
        sizes.check_uid(dst)?;
        if src == dst {
            return Ok(vec![src]);
        }
        self.bump_epoch();
        self.visit(0, src, NONE);
        self.visit(1, dst, NONE);
        self.frontier[0].clear();
        self.frontier[1].clear();
        self.frontier[0].push(src);
        self.frontier[1].push(dst);
        loop {
            let side = usize::from(self.frontier[1].len() < self.frontier[0].len());
            if self.frontier[side].is_empty() {
                return Err(Error::Internal(format!("{dst} unreachable from {src}")));
            }
            if self.expand(side) {
                let meet = *self.meets.iter().min().expect("non-empty");
                return Ok(self.splice(meet));
            }
        }
    }

    fn splice(&self, meet: u64) -> Vec<u64> {
        let mut hops = Vec::new();
        let mut u = meet;
        while u != NONE {
            hops.push(u);
            u = self.parent[0][u as usize];
        }
        hops.reverse();
        let mut u = self.parent[1][meet as usize];
        while u != NONE {
            hops.push(u);
            u = self.parent[1][u as usize];
        }
        hops
    }
}

/// Minimum-hop route between two servers.
pub fn bfs_route(topology: &Topology, src: u64, dst: u64) -> Result<Route> {
    BfsSearch::new(topology).route(src, dst)
}

/// Hop distance from `src` to every server (`u32::MAX` if unreachable).
pub fn bfs_distances(topology: &Topology, src: u64) -> Result<Vec<u32>> {
    topology.network().sizes().check_uid(src)?;
    let mut dist = vec![u32::MAX; topology.server_count() as usize];
    let mut switch_done = vec![false; topology.switch_count() as usize];
    let mut queue = VecDeque::new();
    dist[src as usize] = 0;
    queue.push_back(src);
    while let Some(u) = queue.pop_front() {
        let d = dist[u as usize] + 1;
        let sw = topology.switch_of(u);
        let members = if switch_done[sw as usize] {
            0..0
        } else {
            switch_done[sw as usize] = true;
            topology.switch_members(sw)
        };
        for w in members.chain(topology.direct_links(u).iter().map(|l| l.peer)) {
            if dist[w as usize] == u32::MAX {
                dist[w as usize] = d;
                queue.push_back(w);
            }
        }
    }
    Ok(dist)
}
