use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Sparse count table over non-negative integer values.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Histogram {
    counts: BTreeMap<u64, u64>,
    total: u64,
}

impl Histogram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: u64) {
        self.add_n(value, 1);
    }

    pub fn add_n(&mut self, value: u64, n: u64) {
        if n == 0 {
            return;
        }
        *self.counts.entry(value).or_default() += n;
        self.total += n;
    }

    pub fn count(&self, value: u64) -> u64 {
        self.counts.get(&value).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn min_value(&self) -> Option<u64> {
        self.counts.keys().next().copied()
    }

    pub fn max_value(&self) -> Option<u64> {
        self.counts.keys().next_back().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts.iter().map(|(&v, &c)| (v, c))
    }

    pub fn values(&self) -> impl Iterator<Item = u64> + '_ {
        self.counts.keys().copied()
    }

    /// Empirical probability of `value`; 0 for an empty histogram.
    pub fn probability(&self, value: u64) -> f64 {
        if self.total == 0 {
            return 0.0;
        }
        self.count(value) as f64 / self.total as f64
    }

    pub fn pmf(&self) -> BTreeMap<u64, f64> {
        self.counts
            .keys()
            .map(|&v| (v, self.probability(v)))
            .collect()
    }

    pub fn mean(&self) -> f64 {
        if self.total == 0 {
            return 0.0;
        }
        let weighted: u128 = self.iter().map(|(v, c)| v as u128 * c as u128).sum();
        weighted as f64 / self.total as f64
    }
}

impl FromIterator<u64> for Histogram {
    fn from_iter<I: IntoIterator<Item = u64>>(iter: I) -> Self {
        let mut h = Histogram::new();
        for v in iter {
            h.add(v);
        }
        h
    }
}

pub fn degree_histogram(g: &Graph) -> Histogram {
    g.degrees().map(|k| k as u64).collect()
}

/// Parallel degrees of every registered clique.
pub fn parallel_degree_histogram(g: &Graph) -> Result<Histogram> {
    let registry = g.registry().ok_or(Error::RegistryUnavailable)?;
    Ok(registry
        .parallel_degrees()
        .iter()
        .map(|&m| m as u64)
        .collect())
}

/// Mean parallel degree over all cliques.
pub fn empirical_avg_parallel_degree(g: &Graph) -> Result<f64> {
    Ok(parallel_degree_histogram(g)?.mean())
}

/// `sum_{m >= 2} m * pmf(m)`, i.e. the mean minus the fraction with `m = 1`.
pub fn empirical_parallel_coefficient(g: &Graph) -> Result<f64> {
    let h = parallel_degree_histogram(g)?;
    if h.is_empty() {
        return Ok(0.0);
    }
    let heavy: u64 = h.iter().filter(|&(m, _)| m >= 2).map(|(m, c)| m * c).sum();
    Ok(heavy as f64 / h.total() as f64)
}
