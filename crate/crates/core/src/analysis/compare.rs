use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::Histogram;
use crate::error::{Error, Result};

/// One value of an empirical-vs-theory table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub value: u64,
    /// Empirical probability averaged over runs.
    pub empirical: f64,
    pub theoretical: f64,
    pub abs_error: f64,
    /// Sample standard deviation of the per-run probabilities.
    pub std_dev: f64,
}

/// Tabulates every value seen in any run against `law`.
pub fn compare_to_theory<F>(runs: &[Histogram], law: F) -> Result<Vec<ComparisonRow>>
where
    F: Fn(u64) -> f64,
{
    if runs.is_empty() {
        return Err(Error::EmptyRuns);
    }
    let values: BTreeSet<u64> = runs.iter().flat_map(Histogram::values).collect();
    let n = runs.len() as f64;
    Ok(values
        .into_iter()
        .map(|value| {
            let probs: Vec<f64> = runs.iter().map(|h| h.probability(value)).collect();
            let empirical = probs.iter().sum::<f64>() / n;
            let std_dev = if runs.len() > 1 {
                (probs.iter().map(|p| (p - empirical).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
            } else {
                0.0
            };
            let theoretical = law(value);
            ComparisonRow {
                value,
                empirical,
                theoretical,
                abs_error: (empirical - theoretical).abs(),
                std_dev,
            }
        })
        .collect())
}
