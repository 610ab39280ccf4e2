//! Shortest-path statistics: exact and sampled average path length, and the
//! insertion-order property of shortest paths.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::RngStream;
use crate::graph::{Graph, VertexId};

pub const DEFAULT_EXACT_APL_MAX: usize = 5000;
pub const DEFAULT_APL_PAIRS: usize = 100_000;

const UNREACHED: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AplMethod {
    Exact,
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AplEstimate {
    pub mean_distance: f64,
    pub pairs_evaluated: u64,
    pub method: AplMethod,
    /// Standard error of the mean; `None` for exact results.
    pub std_error: Option<f64>,
}

/// BFS distances from `source`, restricted to vertices with id `<= limit`.
fn bfs_into(g: &Graph, source: usize, limit: usize, dist: &mut [u32], queue: &mut VecDeque<usize>) {
    dist.fill(UNREACHED);
    queue.clear();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let next = dist[u] + 1;
        for &w in g.adj(u) {
            let w = w.index();
            if w <= limit && dist[w] == UNREACHED {
                dist[w] = next;
                queue.push_back(w);
            }
        }
    }
}

/// Hop distances from `source` to every vertex; `None` marks unreachable ones.
pub fn bfs_distances(g: &Graph, source: VertexId) -> Result<Vec<Option<u32>>> {
    g.degree(source)?;
    let mut dist = vec![UNREACHED; g.vertex_count()];
    bfs_into(
        g,
        source.index(),
        usize::MAX,
        &mut dist,
        &mut VecDeque::new(),
    );
    Ok(dist
        .into_iter()
        .map(|d| (d != UNREACHED).then_some(d))
        .collect())
}

/// Mean shortest-path length over all unordered pairs, one BFS per vertex.
pub fn apl_exact(g: &Graph, max_vertices: usize) -> Result<AplEstimate> {
    let n = g.vertex_count();
    if n > max_vertices {
        return Err(Error::TooLargeForExact {
            vertices: n,
            limit: max_vertices,
        });
    }
    if n < 2 {
        return Err(Error::Config(
            "path length needs at least two vertices".into(),
        ));
    }
    let mut dist = vec![UNREACHED; n];
    let mut queue = VecDeque::with_capacity(n);
    let mut total: u64 = 0;
    for s in 0..n {
        bfs_into(g, s, usize::MAX, &mut dist, &mut queue);
        for &d in &dist[s + 1..] {
            if d == UNREACHED {
                return Err(Error::Disconnected);
            }
            total += d as u64;
        }
    }
    let pairs = (n as u64) * (n as u64 - 1) / 2;
    Ok(AplEstimate {
        mean_distance: total as f64 / pairs as f64,
        pairs_evaluated: pairs,
        method: AplMethod::Exact,
        std_error: None,
    })
}

/// Reusable bidirectional BFS for single-pair distances.
///
/// Visit marks are generation stamps, so consecutive queries cost only the
/// vertices they touch.
pub struct PairDistance<'g> {
    graph: &'g Graph,
    stamp: u32,
    seen: [Vec<u32>; 2],
    dist: [Vec<u32>; 2],
    frontier: [Vec<usize>; 2],
    next: Vec<usize>,
}

impl<'g> PairDistance<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        let n = graph.vertex_count();
        PairDistance {
            graph,
            stamp: 0,
            seen: [vec![0; n], vec![0; n]],
            dist: [vec![0; n], vec![0; n]],
            frontier: [Vec::new(), Vec::new()],
            next: Vec::new(),
        }
    }

    /// Hop distance between `s` and `t`, or `None` if they are disconnected.
    pub fn distance(&mut self, s: VertexId, t: VertexId) -> Option<u32> {
        let (s, t) = (s.index(), t.index());
        if s == t {
            return Some(0);
        }
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            for side in &mut self.seen {
                side.fill(0);
            }
            self.stamp = 1;
        }
        let stamp = self.stamp;
        for (side, v) in [(0, s), (1, t)] {
            self.seen[side][v] = stamp;
            self.dist[side][v] = 0;
            self.frontier[side].clear();
            self.frontier[side].push(v);
        }
        loop {
            if self.frontier[0].is_empty() || self.frontier[1].is_empty() {
                return None;
            }
            let side = usize::from(self.frontier[1].len() < self.frontier[0].len());
            let other = 1 - side;
            self.next.clear();
            // The two visited sets are disjoint before each layer expansion, so
            // the first crossing edge closes a shortest path.
            for &u in &self.frontier[side] {
                let du = self.dist[side][u];
                for &w in self.graph.adj(u) {
                    let w = w.index();
                    if self.seen[other][w] == stamp {
                        return Some(du + 1 + self.dist[other][w]);
                    }
                    if self.seen[side][w] != stamp {
                        self.seen[side][w] = stamp;
                        self.dist[side][w] = du + 1;
                        self.next.push(w);
                    }
                }
            }
            std::mem::swap(&mut self.frontier[side], &mut self.next);
        }
    }
}

/// Mean distance over `num_pairs` independently drawn pairs of distinct
/// vertices.
pub fn apl_sampled(g: &Graph, num_pairs: usize, rng: &mut RngStream) -> Result<AplEstimate> {
    if num_pairs < 1 {
        return Err(Error::Config("need at least one sampled pair".into()));
    }
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::Config(
            "path length needs at least two vertices".into(),
        ));
    }
    let mut bfs = PairDistance::new(g);
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for i in 0..num_pairs {
        let s = rng.below(n);
        let mut t = rng.below(n - 1);
        if t >= s {
            t += 1;
        }
        let d = bfs
            .distance(VertexId(s as u32), VertexId(t as u32))
            .ok_or(Error::Disconnected)? as f64;
        let delta = d - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (d - mean);
    }
    let var = if num_pairs > 1 {
        m2 / (num_pairs - 1) as f64
    } else {
        0.0
    };
    Ok(AplEstimate {
        mean_distance: mean,
        pairs_evaluated: num_pairs as u64,
        method: AplMethod::Sampled,
        std_error: Some((var / num_pairs as f64).sqrt()),
    })
}

/// True iff for every pair `(i, j)` some shortest path avoids all vertices
/// inserted after both endpoints.
pub fn ordering_shortest_path_check(g: &Graph) -> bool {
    let n = g.vertex_count();
    let mut full = vec![UNREACHED; n];
    let mut restricted = vec![UNREACHED; n];
    let mut queue = VecDeque::with_capacity(n);
    for j in 1..n {
        bfs_into(g, j, usize::MAX, &mut full, &mut queue);
        bfs_into(g, j, j, &mut restricted, &mut queue);
        if full[..j] != restricted[..j] {
            return false;
        }
    }
    true
}
