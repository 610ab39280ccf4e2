//! Parallel random Apollonian networks.
//!
//! Generators for P-RAN, RAN (HDRAN) and P-DAN graphs in any dimension `d`,
//! empirical measurements over them, and exact evaluators of the laws those
//! measurements should follow.
//!
//! ```
//! use apollonet::{analysis, generators::{generate, GrowthConfig}};
//!
//! let g = generate(&GrowthConfig::pran(2, 1000, 42)).unwrap();
//! assert_eq!(g.clique_count(), Some(4 + 3 * 996));
//! let rho = analysis::empirical_parallel_coefficient(&g).unwrap();
//! assert!(rho > 0.0);
//! ```

pub mod analysis;
pub mod error;
pub mod experiment;
pub mod generators;
pub mod graph;
pub mod io;
pub mod theory;

pub use error::{Error, Result};
pub use generators::{generate, GrowthConfig, Model, PdanPolicy, RngStream, Target};
pub use graph::{CliqueId, CliqueRecord, CliqueRegistry, Dimension, Graph, VertexId};
