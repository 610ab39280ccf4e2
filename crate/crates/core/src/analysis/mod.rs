//! Empirical measurements over built graphs and their comparison with the
//! closed-form laws in [`crate::theory`].

mod clustering;
mod compare;
mod histogram;
mod mle;
mod paths;

pub use clustering::{average_clustering, local_clustering, triangle_counts};
pub use compare::{compare_to_theory, ComparisonRow};
pub use histogram::{
    degree_histogram, empirical_avg_parallel_degree, empirical_parallel_coefficient,
    parallel_degree_histogram, Histogram,
};
pub use mle::gamma_mle;
pub use paths::{
    apl_exact, apl_sampled, bfs_distances, ordering_shortest_path_check, AplEstimate, AplMethod,
    PairDistance, DEFAULT_APL_PAIRS, DEFAULT_EXACT_APL_MAX,
};
