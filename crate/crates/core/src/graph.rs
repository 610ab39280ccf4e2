//! Growable simple graph with an explicit registry of (d+1)-cliques.
//!
//! Every generator in this crate is built on a single primitive,
//! [`Graph::insert_vertex_in_clique`]: a new vertex is attached to all members
//! of a registered clique, and the d+1 cliques formed by swapping the new
//! vertex for one member are appended to the registry.
//!
//! Vertex ids are insertion ordinals, so appending the newest vertex to a
//! neighbor list keeps every list sorted without any extra work.

use std::fmt;

use crate::error::{Error, Result};

/// Insertion-ordered vertex identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Clique identifier, equal to the clique's creation order in the registry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CliqueId(pub u32);

impl CliqueId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Dimension `d >= 1` of an Apollonian construction. Cliques have `d + 1`
/// members.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dimension(usize);

impl Dimension {
    pub fn new(d: usize) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidDimension(d));
        }
        Ok(Dimension(d))
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }

    /// Number of vertices in a registered clique.
    #[inline]
    pub fn clique_size(self) -> usize {
        self.0 + 1
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Borrowed view of one registered clique.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CliqueRecord<'a> {
    /// Sorted member vertices, exactly `d + 1` of them.
    pub members: &'a [VertexId],
    /// Number of insertions that selected this clique.
    pub parallel_degree: u32,
}

/// Append-only clique registry. Members are stored flat with stride `d + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueRegistry {
    stride: usize,
    members: Vec<VertexId>,
    parallel: Vec<u32>,
}

impl CliqueRegistry {
    fn new(dim: Dimension) -> Self {
        CliqueRegistry {
            stride: dim.clique_size(),
            members: Vec::new(),
            parallel: Vec::new(),
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.parallel.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.parallel.is_empty()
    }

    #[inline]
    pub fn members(&self, c: CliqueId) -> &[VertexId] {
        let start = c.index() * self.stride;
        &self.members[start..start + self.stride]
    }

    #[inline]
    pub fn parallel_degree(&self, c: CliqueId) -> u32 {
        self.parallel[c.index()]
    }

    pub fn get(&self, c: CliqueId) -> Option<CliqueRecord<'_>> {
        (c.index() < self.len()).then(|| CliqueRecord {
            members: self.members(c),
            parallel_degree: self.parallel[c.index()],
        })
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = CliqueRecord<'_>> + '_ {
        self.members
            .chunks_exact(self.stride)
            .zip(self.parallel.iter())
            .map(|(members, &parallel_degree)| CliqueRecord {
                members,
                parallel_degree,
            })
    }

    pub fn parallel_degrees(&self) -> &[u32] {
        &self.parallel
    }

    fn push(&mut self, members: &[VertexId], parallel_degree: u32) -> CliqueId {
        debug_assert_eq!(members.len(), self.stride);
        let id = CliqueId(self.len() as u32);
        self.members.extend_from_slice(members);
        self.parallel.push(parallel_degree);
        id
    }
}

/// Undirected simple graph with insertion-ordered vertices and an optional
/// clique registry.
///
/// Graphs read back from an edge list without a registry sidecar carry no
/// registry; clique operations on them return [`Error::RegistryUnavailable`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    dimension: Dimension,
    adjacency: Vec<Vec<VertexId>>,
    edge_count: usize,
    registry: Option<CliqueRegistry>,
    steps: usize,
}

impl Graph {
    /// Complete graph on `d + 2` vertices with all `d + 2` facets registered.
    pub fn new_seed_graph(d: usize) -> Result<Self> {
        let dim = Dimension::new(d)?;
        let n = d + 2;
        let mut g = Graph::complete(dim, n);
        let mut registry = CliqueRegistry::new(dim);
        let mut facet = Vec::with_capacity(dim.clique_size());
        for omitted in 0..n {
            facet.clear();
            facet.extend((0..n).filter(|&v| v != omitted).map(|v| VertexId(v as u32)));
            registry.push(&facet, 0);
        }
        g.registry = Some(registry);
        Ok(g)
    }

    /// A single (d+1)-clique, registered once.
    pub fn new_simplex_graph(d: usize) -> Result<Self> {
        let dim = Dimension::new(d)?;
        let n = dim.clique_size();
        let mut g = Graph::complete(dim, n);
        let mut registry = CliqueRegistry::new(dim);
        let all: Vec<VertexId> = (0..n as u32).map(VertexId).collect();
        registry.push(&all, 0);
        g.registry = Some(registry);
        Ok(g)
    }

    fn complete(dimension: Dimension, n: usize) -> Self {
        let adjacency = (0..n)
            .map(|v| {
                (0..n)
                    .filter(|&u| u != v)
                    .map(|u| VertexId(u as u32))
                    .collect()
            })
            .collect();
        Graph {
            dimension,
            adjacency,
            edge_count: n * (n - 1) / 2,
            registry: None,
            steps: 0,
        }
    }

    /// Builds a registry-less graph from an explicit edge set.
    ///
    /// Rejects self-loops, duplicate edges and endpoints `>= vertex_count`.
    pub fn from_edges<I>(dimension: Dimension, vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut adjacency: Vec<Vec<VertexId>> = vec![Vec::new(); vertex_count];
        let mut edge_count = 0;
        for (u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if u as usize >= vertex_count || v as usize >= vertex_count {
                return Err(Error::InvalidVertex(u.max(v)));
            }
            adjacency[u as usize].push(VertexId(v));
            adjacency[v as usize].push(VertexId(u));
            edge_count += 1;
        }
        for (v, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (v as u32, w[0].0);
                return Err(Error::DuplicateEdge(a.min(b), a.max(b)));
            }
        }
        Ok(Graph {
            dimension,
            adjacency,
            edge_count,
            registry: None,
            steps: 0,
        })
    }

    /// Attaches a clique registry read from a sidecar file.
    ///
    /// Every record must have `d + 1` distinct, pairwise adjacent members.
    /// The step count is restored as the sum of parallel degrees.
    pub fn attach_registry<I>(&mut self, cliques: I) -> Result<()>
    where
        I: IntoIterator<Item = (Vec<u32>, u32)>,
    {
        let mut registry = CliqueRegistry::new(self.dimension);
        let mut steps = 0usize;
        for (idx, (mut members, m)) in cliques.into_iter().enumerate() {
            members.sort_unstable();
            let bad = members.len() != self.dimension.clique_size()
                || members.windows(2).any(|w| w[0] == w[1])
                || members.iter().any(|&v| v as usize >= self.vertex_count());
            if bad {
                return Err(Error::MalformedClique(idx));
            }
            let ids: Vec<VertexId> = members.into_iter().map(VertexId).collect();
            for (i, &a) in ids.iter().enumerate() {
                for &b in &ids[i + 1..] {
                    if !self.has_edge(a, b) {
                        return Err(Error::MalformedClique(idx));
                    }
                }
            }
            registry.push(&ids, m);
            steps += m as usize;
        }
        self.registry = Some(registry);
        self.steps = steps;
        Ok(())
    }

    /// Inserts a new vertex inside clique `c`, adjacent to all of its members.
    ///
    /// Appends the d+1 child cliques (each one member of `c` replaced by the
    /// new vertex) and bumps the parallel degree of `c`.
    pub fn insert_vertex_in_clique(&mut self, c: CliqueId) -> Result<VertexId> {
        let registry = self.registry.as_mut().ok_or(Error::RegistryUnavailable)?;
        if c.index() >= registry.len() {
            return Err(Error::InvalidClique(c.0));
        }
        let new = VertexId(self.adjacency.len() as u32);
        let size = self.dimension.clique_size();

        let parent = registry.members(c).to_vec();
        for &u in &parent {
            self.adjacency[u.index()].push(new);
        }
        self.edge_count += size;

        registry.parallel[c.index()] += 1;
        // Members stay sorted: drop one, append the (largest) new id.
        let mut child = Vec::with_capacity(size);
        for skip in 0..size {
            child.clear();
            child.extend(
                parent
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v),
            );
            child.push(new);
            registry.push(&child, 0);
        }
        self.adjacency.push(parent);
        self.steps += 1;
        Ok(new)
    }

    #[inline]
    pub fn dimension(&self) -> Dimension {
        self.dimension
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Number of insertions performed since seeding.
    #[inline]
    pub fn step_count(&self) -> usize {
        self.steps
    }

    pub fn registry(&self) -> Option<&CliqueRegistry> {
        self.registry.as_ref()
    }

    pub fn has_registry(&self) -> bool {
        self.registry.is_some()
    }

    pub fn clique_count(&self) -> Option<usize> {
        self.registry.as_ref().map(CliqueRegistry::len)
    }

    pub fn clique(&self, c: CliqueId) -> Result<CliqueRecord<'_>> {
        self.registry
            .as_ref()
            .ok_or(Error::RegistryUnavailable)?
            .get(c)
            .ok_or(Error::InvalidClique(c.0))
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.index() < self.adjacency.len() {
            Ok(())
        } else {
            Err(Error::InvalidVertex(v.0))
        }
    }

    pub fn degree(&self, v: VertexId) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adjacency[v.index()].len())
    }

    /// Sorted neighbor list.
    pub fn neighbors(&self, v: VertexId) -> Result<&[VertexId]> {
        self.check_vertex(v)?;
        Ok(&self.adjacency[v.index()])
    }

    /// Unchecked neighbor access for hot loops over known-valid ids.
    #[inline]
    pub(crate) fn adj(&self, v: usize) -> &[VertexId] {
        &self.adjacency[v]
    }

    pub fn degrees(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.adjacency.iter().map(Vec::len)
    }

    #[inline]
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        let (a, b) = if self.adjacency[u.index()].len() <= self.adjacency[v.index()].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adjacency[a.index()].binary_search(&b).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            let u = VertexId(u as u32);
            list.iter().filter(move |&&v| v > u).map(move |&v| (u, v))
        })
    }

    /// Number of registered cliques containing `v`. Linear in the registry
    /// size.
    pub fn clique_membership_count(&self, v: VertexId) -> Result<usize> {
        self.check_vertex(v)?;
        let registry = self.registry.as_ref().ok_or(Error::RegistryUnavailable)?;
        Ok(registry
            .iter()
            .filter(|c| c.members.binary_search(&v).is_ok())
            .count())
    }

    /// Membership counts for every vertex in one registry pass.
    pub fn clique_membership_counts(&self) -> Result<Vec<usize>> {
        let registry = self.registry.as_ref().ok_or(Error::RegistryUnavailable)?;
        let mut counts = vec![0usize; self.vertex_count()];
        for &v in &registry.members {
            counts[v.index()] += 1;
        }
        Ok(counts)
    }
}
