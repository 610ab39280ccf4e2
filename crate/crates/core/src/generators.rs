//! Growth processes: P-RAN, RAN (HDRAN) and the deterministic P-DAN.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_pcg::Pcg64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{CliqueId, Dimension, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// Uniform draw over every registered clique.
    Pran,
    /// Uniform draw over cliques nobody has been inserted into yet.
    Ran,
    /// Deterministic generations of `m` insertions per clique.
    Pdan,
}

impl Model {
    pub fn as_str(self) -> &'static str {
        match self {
            Model::Pran => "pran",
            Model::Ran => "ran",
            Model::Pdan => "pdan",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pran" => Ok(Model::Pran),
            "ran" => Ok(Model::Ran),
            "pdan" => Ok(Model::Pdan),
            other => Err(Error::Config(format!("unknown model {other:?}"))),
        }
    }
}

/// Which cliques receive vertices in each P-DAN generation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PdanPolicy {
    /// Only the cliques created during the previous generation.
    #[default]
    Frontier,
    /// Every clique registered before the generation starts.
    All,
}

impl PdanPolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            PdanPolicy::Frontier => "frontier",
            PdanPolicy::All => "all",
        }
    }
}

impl FromStr for PdanPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "frontier" => Ok(PdanPolicy::Frontier),
            "all" => Ok(PdanPolicy::All),
            other => Err(Error::Config(format!("unknown P-DAN policy {other:?}"))),
        }
    }
}

/// Size of the graph to grow: insertion steps (generations for P-DAN) or a
/// final vertex count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Steps(usize),
    Vertices(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthConfig {
    pub dimension: usize,
    pub target: Target,
    pub model: Model,
    pub pdan_m: usize,
    pub pdan_policy: PdanPolicy,
    pub seed: u64,
}

impl GrowthConfig {
    pub fn new(model: Model, dimension: usize, target: Target, seed: u64) -> Self {
        GrowthConfig {
            dimension,
            target,
            model,
            pdan_m: 1,
            pdan_policy: PdanPolicy::Frontier,
            seed,
        }
    }

    pub fn pran(dimension: usize, vertices: usize, seed: u64) -> Self {
        GrowthConfig::new(Model::Pran, dimension, Target::Vertices(vertices), seed)
    }

    pub fn ran(dimension: usize, vertices: usize, seed: u64) -> Self {
        GrowthConfig::new(Model::Ran, dimension, Target::Vertices(vertices), seed)
    }

    pub fn pdan(dimension: usize, generations: usize, m: usize, policy: PdanPolicy) -> Self {
        GrowthConfig {
            pdan_m: m,
            pdan_policy: policy,
            ..GrowthConfig::new(Model::Pdan, dimension, Target::Steps(generations), 0)
        }
    }

    pub fn validate(&self) -> Result<Dimension> {
        let dim = Dimension::new(self.dimension)?;
        if self.model == Model::Pdan && self.pdan_m < 1 {
            return Err(Error::Config(
                "P-DAN needs at least one vertex per clique".into(),
            ));
        }
        self.steps()?;
        Ok(dim)
    }

    /// Number of insertion steps (P-RAN/RAN) or generations (P-DAN).
    pub fn steps(&self) -> Result<usize> {
        let d = self.dimension;
        match (self.model, self.target) {
            (_, Target::Steps(t)) => Ok(t),
            (Model::Pran | Model::Ran, Target::Vertices(n)) => {
                n.checked_sub(d + 2).ok_or_else(|| {
                    Error::Config(format!("{n} vertices is below the {}-vertex seed", d + 2))
                })
            }
            (Model::Pdan, Target::Vertices(n)) => {
                let mut t = 0;
                loop {
                    let nt = pdan_vertex_count(d, self.pdan_m, self.pdan_policy, t);
                    if nt == n {
                        return Ok(t);
                    }
                    if nt > n {
                        return Err(Error::Config(format!(
                            "no P-DAN generation has exactly {n} vertices (generation {t} has {nt})"
                        )));
                    }
                    t += 1;
                }
            }
        }
    }

    /// Vertex count of the finished graph.
    pub fn vertex_count(&self) -> Result<usize> {
        let t = self.steps()?;
        Ok(match self.model {
            Model::Pran | Model::Ran => self.dimension + 2 + t,
            Model::Pdan => pdan_vertex_count(self.dimension, self.pdan_m, self.pdan_policy, t),
        })
    }
}

/// Vertex count of a P-DAN after `generations` generations.
pub fn pdan_vertex_count(d: usize, m: usize, policy: PdanPolicy, generations: usize) -> usize {
    let mut vertices = d + 1;
    let mut receiving = 1usize;
    for _ in 0..generations {
        vertices = vertices.saturating_add(m.saturating_mul(receiving));
        let created = receiving.saturating_mul(m * (d + 1));
        receiving = match policy {
            PdanPolicy::Frontier => created,
            PdanPolicy::All => receiving.saturating_add(created),
        };
    }
    vertices
}

/// Deterministic random stream for one run.
#[derive(Debug, Clone)]
pub struct RngStream(Pcg64);

impl RngStream {
    pub fn new(seed: u64) -> Self {
        RngStream(Pcg64::seed_from_u64(seed))
    }

    /// Independent stream for run `run` of an experiment seeded with `base`.
    pub fn for_run(base: u64, run: u64) -> Self {
        RngStream::new(base.wrapping_add(run))
    }

    /// Uniform integer in `0..n`; unbiased (no modulo reduction).
    #[inline]
    pub fn below(&mut self, n: usize) -> usize {
        self.0.gen_range(0..n)
    }
}

impl rand::RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.0.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.0.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> std::result::Result<(), rand::Error> {
        self.0.try_fill_bytes(dest)
    }
}

/// Dispatches on `cfg.model`. Stochastic models draw from a stream seeded
/// with `cfg.seed`.
pub fn generate(cfg: &GrowthConfig) -> Result<Graph> {
    match cfg.model {
        Model::Pran => generate_pran(cfg, &mut RngStream::new(cfg.seed)),
        Model::Ran => generate_ran(cfg, &mut RngStream::new(cfg.seed)),
        Model::Pdan => generate_pdan(cfg),
    }
}

fn check_model(cfg: &GrowthConfig, want: Model) -> Result<()> {
    if cfg.model != want {
        return Err(Error::Config(format!(
            "expected model {want}, got {}",
            cfg.model
        )));
    }
    Ok(())
}

/// Grows the (d+2)-clique seed, inserting each new vertex into a clique drawn
/// uniformly from the whole registry.
pub fn generate_pran(cfg: &GrowthConfig, rng: &mut RngStream) -> Result<Graph> {
    check_model(cfg, Model::Pran)?;
    cfg.validate()?;
    let steps = cfg.steps()?;
    let mut g = Graph::new_seed_graph(cfg.dimension)?;
    for _ in 0..steps {
        let nc = g.clique_count().expect("seed graph has a registry");
        let c = CliqueId(rng.below(nc) as u32);
        g.insert_vertex_in_clique(c)?;
    }
    Ok(g)
}

/// Like [`generate_pran`], but only cliques with parallel degree 0 are
/// eligible; a selected clique leaves the pool for good.
pub fn generate_ran(cfg: &GrowthConfig, rng: &mut RngStream) -> Result<Graph> {
    check_model(cfg, Model::Ran)?;
    let dim = cfg.validate()?;
    let steps = cfg.steps()?;
    let mut g = Graph::new_seed_graph(cfg.dimension)?;
    let mut pool: Vec<CliqueId> = (0..dim.get() as u32 + 2).map(CliqueId).collect();
    pool.reserve(steps * dim.get());
    for _ in 0..steps {
        let c = pool.swap_remove(rng.below(pool.len()));
        let first_child = g.clique_count().expect("seed graph has a registry") as u32;
        g.insert_vertex_in_clique(c)?;
        pool.extend((first_child..first_child + dim.clique_size() as u32).map(CliqueId));
    }
    Ok(g)
}

/// Deterministic P-DAN: starting from one (d+1)-clique, each generation
/// inserts `pdan_m` vertices into every receiving clique.
pub fn generate_pdan(cfg: &GrowthConfig) -> Result<Graph> {
    check_model(cfg, Model::Pdan)?;
    cfg.validate()?;
    let generations = cfg.steps()?;
    let mut g = Graph::new_simplex_graph(cfg.dimension)?;
    let mut receiving = 0..1u32;
    for _ in 0..generations {
        let before = g.clique_count().expect("simplex graph has a registry") as u32;
        for c in receiving.clone() {
            for _ in 0..cfg.pdan_m {
                g.insert_vertex_in_clique(CliqueId(c))?;
            }
        }
        let after = g.clique_count().expect("simplex graph has a registry") as u32;
        receiving = match cfg.pdan_policy {
            PdanPolicy::Frontier => before..after,
            PdanPolicy::All => 0..after,
        };
    }
    Ok(g)
}
