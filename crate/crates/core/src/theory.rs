//! Closed-form laws of d-dimensional P-RAN.
//!
//! Rational quantities are returned exactly; only the infinite sums (the
//! degree pmf tail and the network clustering coefficient) are evaluated in
//! double precision.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Dimension;

pub type Rational = Ratio<i64>;

/// Asymptotic parallel-degree pmf, `(d+1) / (d+2)^(m+1)`.
pub fn pc_theory(d: Dimension, m: u32) -> BigRational {
    let d = d.get() as i64;
    let den = num_traits::pow(BigInt::from(d + 2), m as usize + 1);
    BigRational::new(BigInt::from(d + 1), den)
}

/// Floating-point evaluation of [`pc_theory`].
pub fn pc_theory_f64(d: Dimension, m: u32) -> f64 {
    let d = d.get() as f64;
    (d + 1.0) / (d + 2.0).powi(m as i32 + 1)
}

/// Expected parallel degree `M = 1/(d+1)`.
pub fn avg_parallel_degree_theory(d: Dimension) -> Rational {
    Rational::new(1, d.get() as i64 + 1)
}

/// Parallel coefficient `rho = (2d+3) / ((d+1)(d+2)^2)`.
pub fn parallel_coefficient_theory(d: Dimension) -> Rational {
    let d = d.get() as i64;
    Rational::new(2 * d + 3, (d + 1) * (d + 2) * (d + 2))
}

/// Degree exponent `gamma = (2d+1)/d`.
pub fn gamma_theory(d: Dimension) -> Rational {
    let d = d.get() as i64;
    Rational::new(2 * d + 1, d)
}

/// Ratio `P(k) / P(k-1)` of the degree recursion, valid for `k > d+1`.
pub fn degree_ratio(d: Dimension, k: u64) -> Rational {
    let d = d.get() as i64;
    let k = k as i64;
    debug_assert!(k > d + 1);
    Rational::new(d * k - d * d - d + 1, d * k - d * d + d + 2)
}

/// Degree pmf truncated at `k_max`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreePmf {
    pub d: usize,
    pub k_max: u64,
    /// `probabilities[i]` is `P(d + 1 + i)`.
    pub probabilities: Vec<f64>,
    /// Mass of the untruncated law above `k_max`.
    pub tail_mass: f64,
}

impl DegreePmf {
    pub fn k_min(&self) -> u64 {
        self.d as u64 + 1
    }

    pub fn get(&self, k: u64) -> f64 {
        if k < self.k_min() {
            return 0.0;
        }
        self.probabilities
            .get((k - self.k_min()) as usize)
            .copied()
            .unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        let k0 = self.k_min();
        self.probabilities
            .iter()
            .enumerate()
            .map(move |(i, &p)| (k0 + i as u64, p))
    }
}

/// Iterates `(k, P(k))` for `k = d+1, d+2, ...` without bound.
fn degree_law(d: Dimension) -> impl Iterator<Item = (u64, f64)> {
    let dd = d.get() as f64;
    let k0 = d.get() as u64 + 1;
    let mut p = 0.5;
    (k0..).map(move |k| {
        if k > k0 {
            let kf = k as f64;
            p *= (dd * kf - dd * dd - dd + 1.0) / (dd * kf - dd * dd + dd + 2.0);
        }
        (k, p)
    })
}

pub fn degree_pmf_theory(d: Dimension, k_max: u64) -> Result<DegreePmf> {
    if k_max < d.get() as u64 + 1 {
        return Err(Error::Config(format!(
            "k_max = {k_max} is below the minimum degree {}",
            d.get() + 1
        )));
    }
    let probabilities: Vec<f64> = degree_law(d)
        .take_while(|&(k, _)| k <= k_max)
        .map(|(_, p)| p)
        .collect();
    let tail_mass = tail_bound(
        d,
        k_max,
        *probabilities.last().unwrap(),
        probabilities.iter().sum(),
    );
    Ok(DegreePmf {
        d: d.get(),
        k_max,
        probabilities,
        tail_mass,
    })
}

/// Upper estimate of `sum_{k > k_max} P(k)`: the larger of the complement of
/// the partial sum and the integral of the `k^-gamma` asymptote.
fn tail_bound(d: Dimension, k_max: u64, p_at_kmax: f64, partial: f64) -> f64 {
    let gamma = gamma_theory(d).to_f64().unwrap();
    let asymptote = p_at_kmax * k_max as f64 / (gamma - 1.0);
    (1.0 - partial).max(asymptote).max(0.0)
}

/// Local clustering of a degree-`k` vertex, `d(2k-d-1) / (k(k-1))`.
pub fn local_clustering_theory(d: Dimension, k: u64) -> Result<Rational> {
    let dd = d.get() as i64;
    if (k as i64) < dd + 1 {
        return Err(Error::DegreeOutOfRange {
            degree: k,
            min: dd as u64 + 1,
        });
    }
    let k = k as i64;
    Ok(Rational::new(dd * (2 * k - dd - 1), k * (k - 1)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClusteringTheory {
    pub value: f64,
    /// Last degree included in the sum.
    pub truncation_k: u64,
    /// Bound on the omitted mass (and hence on the truncation error).
    pub tail_bound: f64,
}

/// Network clustering `sum_k C(k) P(k)`, truncated once the remaining degree
/// mass (which bounds the error since `C(k) <= 1`) drops below `tail_tol`.
pub fn clustering_theory(d: Dimension, tail_tol: f64) -> Result<ClusteringTheory> {
    if !(tail_tol > 0.0) {
        return Err(Error::Config(format!(
            "tail tolerance must be positive, got {tail_tol}"
        )));
    }
    let dd = d.get() as f64;
    let mut value = 0.0;
    let mut mass = 0.0;
    for (k, p) in degree_law(d) {
        let kf = k as f64;
        value += dd * (2.0 * kf - dd - 1.0) / (kf * (kf - 1.0)) * p;
        mass += p;
        let tail = tail_bound(d, k, p, mass);
        if tail < tail_tol {
            return Ok(ClusteringTheory {
                value,
                truncation_k: k,
                tail_bound: tail,
            });
        }
    }
    unreachable!("degree law iterator is unbounded")
}

/// Scalar laws for one dimension.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LawSummary {
    pub d: usize,
    pub gamma: f64,
    pub avg_parallel_degree: f64,
    pub parallel_coefficient: f64,
    pub clustering: ClusteringTheory,
}

pub fn law_summary(d: Dimension, tail_tol: f64) -> Result<LawSummary> {
    Ok(LawSummary {
        d: d.get(),
        gamma: gamma_theory(d).to_f64().unwrap(),
        avg_parallel_degree: avg_parallel_degree_theory(d).to_f64().unwrap(),
        parallel_coefficient: parallel_coefficient_theory(d).to_f64().unwrap(),
        clustering: clustering_theory(d, tail_tol)?,
    })
}

/// Exact `M - Pc(1)`, for cross-checking [`parallel_coefficient_theory`].
pub fn rho_from_pc(d: Dimension) -> BigRational {
    let m = avg_parallel_degree_theory(d);
    let m = BigRational::new(BigInt::from(*m.numer()), BigInt::from(*m.denom()));
    m - pc_theory(d, 1)
}

/// Partial sum `sum_{m <= upto} Pc(m)` in exact arithmetic.
pub fn pc_partial_sum(d: Dimension, upto: u32) -> BigRational {
    (0..=upto).fold(BigRational::zero(), |acc, m| acc + pc_theory(d, m))
}

/// `1 - sum_{m <= upto} Pc(m)`, equal to `(d+2)^-(upto+1)`.
pub fn pc_tail(d: Dimension, upto: u32) -> BigRational {
    BigRational::one() - pc_partial_sum(d, upto)
}
