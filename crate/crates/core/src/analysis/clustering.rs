use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::theory::Rational;

/// Size of the intersection of two sorted slices.
fn intersection_len(a: &[VertexId], b: &[VertexId]) -> u64 {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Fraction of realized edges among the neighbors of `v`, counted directly
/// from the adjacency lists.
pub fn local_clustering(g: &Graph, v: VertexId) -> Result<Rational> {
    let nbrs = g.neighbors(v)?;
    let k = nbrs.len();
    if k < 2 {
        return Err(Error::DegreeTooSmall {
            vertex: v.0,
            degree: k,
            needed: 2,
        });
    }
    // each neighbor-neighbor edge is seen from both ends
    let twice_edges: u64 = nbrs
        .iter()
        .map(|&u| intersection_len(g.adj(u.index()), nbrs))
        .sum();
    Ok(Rational::new(twice_edges as i64, (k * (k - 1)) as i64))
}

/// Number of triangles through each vertex.
///
/// Edges are oriented from lower to higher (degree, id) rank, so each
/// triangle is found exactly once by intersecting out-lists.
pub fn triangle_counts(g: &Graph) -> Vec<u64> {
    let n = g.vertex_count();
    let rank_lt = |a: usize, b: usize| (g.adj(a).len(), a) < (g.adj(b).len(), b);
    let out: Vec<Vec<VertexId>> = (0..n)
        .map(|u| {
            g.adj(u)
                .iter()
                .copied()
                .filter(|w| rank_lt(u, w.index()))
                .collect()
        })
        .collect();
    let mut counts = vec![0u64; n];
    for u in 0..n {
        for &v in &out[u] {
            let (a, b) = (&out[u], &out[v.index()]);
            let (mut i, mut j) = (0, 0);
            while i < a.len() && j < b.len() {
                match a[i].cmp(&b[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        counts[u] += 1;
                        counts[v.index()] += 1;
                        counts[a[i].index()] += 1;
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
    }
    counts
}

/// Mean local clustering over all vertices. Every vertex needs degree >= 2.
pub fn average_clustering(g: &Graph) -> Result<f64> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::Config("empty graph".into()));
    }
    if let Some((v, k)) = g.degrees().enumerate().find(|&(_, k)| k < 2) {
        return Err(Error::DegreeTooSmall {
            vertex: v as u32,
            degree: k,
            needed: 2,
        });
    }
    let sum: f64 = triangle_counts(g)
        .iter()
        .zip(g.degrees())
        .map(|(&t, k)| 2.0 * t as f64 / (k * (k - 1)) as f64)
        .sum();
    Ok(sum / n as f64)
}
