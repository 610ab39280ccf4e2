//! Multi-run experiments: generate seeded graphs, measure them, and tabulate
//! the measurements against theory.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::analysis::{self, AplEstimate, ComparisonRow, Histogram};
use crate::error::{Error, Result};
use crate::generators::{
    generate_pdan, generate_pran, generate_ran, GrowthConfig, Model, RngStream,
};
use crate::graph::{Dimension, Graph};
use crate::io::{save_graph, EdgeListHeader};
use crate::theory;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_K_MIN: u64 = 30;
/// Truncation tolerance for the theoretical clustering sum.
pub const CLUSTERING_TAIL_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Analysis {
    Degree,
    Parallel,
    Clustering,
    Gamma,
    Apl,
}

impl Analysis {
    pub const ALL: [Analysis; 5] = [
        Analysis::Degree,
        Analysis::Parallel,
        Analysis::Clustering,
        Analysis::Gamma,
        Analysis::Apl,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Analysis::Degree => "degree",
            Analysis::Parallel => "parallel",
            Analysis::Clustering => "clustering",
            Analysis::Gamma => "gamma",
            Analysis::Apl => "apl",
        }
    }
}

impl fmt::Display for Analysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Analysis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Analysis::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown analysis {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub growth: GrowthConfig,
    pub runs: usize,
    pub analyses: Vec<Analysis>,
    pub k_min: u64,
    pub apl_pairs: usize,
    pub exact_apl_max: usize,
    /// Largest acceptable `abs_error` in any comparison-table row.
    pub tolerance: Option<f64>,
}

impl ExperimentSpec {
    pub fn new(growth: GrowthConfig, runs: usize, analyses: Vec<Analysis>) -> Self {
        ExperimentSpec {
            growth,
            runs,
            analyses,
            k_min: DEFAULT_K_MIN,
            apl_pairs: analysis::DEFAULT_APL_PAIRS,
            exact_apl_max: analysis::DEFAULT_EXACT_APL_MAX,
            tolerance: None,
        }
    }

    pub fn validate(&self) -> Result<Dimension> {
        let dim = self.growth.validate()?;
        if self.runs < 1 {
            return Err(Error::Config("runs must be at least 1".into()));
        }
        if self.analyses.is_empty() {
            return Err(Error::Config("no analyses requested".into()));
        }
        if self.k_min < 1 {
            return Err(Error::Config("k_min must be at least 1".into()));
        }
        if self.apl_pairs < 1 {
            return Err(Error::Config("apl_pairs must be at least 1".into()));
        }
        if let Some(tol) = self.tolerance {
            if !(tol >= 0.0) {
                return Err(Error::Config(format!("bad tolerance {tol}")));
            }
        }
        Ok(dim)
    }

    fn wants(&self, a: Analysis) -> bool {
        self.analyses.contains(&a)
    }

    /// Seed of run `run`: the base seed plus the run index.
    pub fn run_seed(&self, run: usize) -> u64 {
        self.growth.seed.wrapping_add(run as u64)
    }
}

/// Builds the graph of run `run` and returns the stream positioned after
/// generation, for any later sampling.
pub fn generate_run(spec: &ExperimentSpec, run: usize) -> Result<(Graph, RngStream)> {
    let mut rng = RngStream::for_run(spec.growth.seed, run as u64);
    let cfg = GrowthConfig {
        seed: spec.run_seed(run),
        ..spec.growth.clone()
    };
    let g = match cfg.model {
        Model::Pran => generate_pran(&cfg, &mut rng)?,
        Model::Ran => generate_ran(&cfg, &mut rng)?,
        Model::Pdan => generate_pdan(&cfg)?,
    };
    Ok((g, rng))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetrics {
    pub run: usize,
    pub seed: u64,
    pub vertices: usize,
    pub edges: usize,
    pub cliques: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub avg_parallel_degree: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parallel_coefficient: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_degree_fraction: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub average_clustering: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub apl: Option<AplEstimate>,
}

/// Cross-run mean of one scalar metric next to its theoretical value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalarSummary {
    pub metric: String,
    pub runs: usize,
    pub mean: f64,
    pub std_dev: f64,
    pub theoretical: Option<f64>,
    pub abs_error: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Tables {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parallel: Option<Vec<ComparisonRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<Vec<ComparisonRow>>,
}

/// Everything an experiment produces except wall-clock timings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub spec: ExperimentSpec,
    pub runs: Vec<RunMetrics>,
    pub tables: Tables,
    pub summary: Vec<ScalarSummary>,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub run_seconds: Vec<f64>,
    pub total_seconds: f64,
}

struct RunOutput {
    metrics: RunMetrics,
    degrees: Option<Histogram>,
    parallel: Option<Histogram>,
}

fn measure_run(spec: &ExperimentSpec, run: usize) -> Result<RunOutput> {
    let (g, mut rng) = generate_run(spec, run)?;
    let d = g.dimension().get();
    let mut metrics = RunMetrics {
        run,
        seed: spec.run_seed(run),
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        cliques: g.clique_count().unwrap_or(0),
        avg_parallel_degree: None,
        parallel_coefficient: None,
        min_degree_fraction: None,
        average_clustering: None,
        gamma: None,
        apl: None,
    };
    let (mut degrees, mut parallel) = (None, None);
    if spec.wants(Analysis::Degree) {
        let h = analysis::degree_histogram(&g);
        metrics.min_degree_fraction = Some(h.probability(d as u64 + 1));
        degrees = Some(h);
    }
    if spec.wants(Analysis::Parallel) {
        let h = analysis::parallel_degree_histogram(&g)?;
        metrics.avg_parallel_degree = Some(h.mean());
        metrics.parallel_coefficient = Some(analysis::empirical_parallel_coefficient(&g)?);
        parallel = Some(h);
    }
    if spec.wants(Analysis::Clustering) {
        metrics.average_clustering = Some(analysis::average_clustering(&g)?);
    }
    if spec.wants(Analysis::Gamma) {
        let ks: Vec<u64> = g.degrees().map(|k| k as u64).collect();
        metrics.gamma = match analysis::gamma_mle(&ks, spec.k_min) {
            Ok(gamma) => Some(gamma),
            Err(Error::NoSamples(_)) => None,
            Err(e) => return Err(e),
        };
    }
    if spec.wants(Analysis::Apl) {
        metrics.apl = Some(if g.vertex_count() <= spec.exact_apl_max {
            analysis::apl_exact(&g, spec.exact_apl_max)?
        } else {
            analysis::apl_sampled(&g, spec.apl_pairs, &mut rng)?
        });
    }
    Ok(RunOutput {
        metrics,
        degrees,
        parallel,
    })
}

fn summarize(metric: &str, values: &[f64], theoretical: Option<f64>) -> Option<ScalarSummary> {
    if values.is_empty() {
        return None;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let std_dev = if values.len() > 1 {
        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    Some(ScalarSummary {
        metric: metric.to_string(),
        runs: values.len(),
        mean,
        std_dev,
        theoretical,
        abs_error: theoretical.map(|t| (mean - t).abs()),
    })
}

/// Runs every seeded replicate of `spec` and assembles the report.
///
/// Theoretical columns are the P-RAN laws for the experiment's dimension, whatever
/// the model, so RAN and P-DAN runs show their departure from them.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<(ExperimentReport, Timings)> {
    let dim = spec.validate()?;
    let started = Instant::now();
    let mut outputs = Vec::with_capacity(spec.runs);
    let mut run_seconds = Vec::with_capacity(spec.runs);
    for run in 0..spec.runs {
        let t = Instant::now();
        outputs.push(measure_run(spec, run)?);
        run_seconds.push(t.elapsed().as_secs_f64());
    }

    let mut tables = Tables::default();
    if spec.wants(Analysis::Parallel) {
        let runs: Vec<Histogram> = outputs.iter().filter_map(|o| o.parallel.clone()).collect();
        tables.parallel = Some(analysis::compare_to_theory(&runs, |m| {
            theory::pc_theory(dim, m as u32).to_f64().unwrap_or(0.0)
        })?);
    }
    if spec.wants(Analysis::Degree) {
        let runs: Vec<Histogram> = outputs.iter().filter_map(|o| o.degrees.clone()).collect();
        let k_max = runs
            .iter()
            .filter_map(Histogram::max_value)
            .max()
            .unwrap_or(0)
            .max(dim.get() as u64 + 1);
        let pmf = theory::degree_pmf_theory(dim, k_max)?;
        tables.degree = Some(analysis::compare_to_theory(&runs, |k| pmf.get(k))?);
    }

    let metrics: Vec<RunMetrics> = outputs.into_iter().map(|o| o.metrics).collect();
    let collect =
        |f: fn(&RunMetrics) -> Option<f64>| -> Vec<f64> { metrics.iter().filter_map(f).collect() };
    let exact = |r: theory::Rational| r.to_f64();
    let mut summary = Vec::new();
    summary.extend(summarize(
        "min_degree_fraction",
        &collect(|m| m.min_degree_fraction),
        Some(0.5),
    ));
    summary.extend(summarize(
        "avg_parallel_degree",
        &collect(|m| m.avg_parallel_degree),
        exact(theory::avg_parallel_degree_theory(dim)),
    ));
    summary.extend(summarize(
        "parallel_coefficient",
        &collect(|m| m.parallel_coefficient),
        exact(theory::parallel_coefficient_theory(dim)),
    ));
    if spec.wants(Analysis::Clustering) {
        let c = theory::clustering_theory(dim, CLUSTERING_TAIL_TOL)?;
        summary.extend(summarize(
            "average_clustering",
            &collect(|m| m.average_clustering),
            Some(c.value),
        ));
    }
    summary.extend(summarize(
        "gamma",
        &collect(|m| m.gamma),
        exact(theory::gamma_theory(dim)),
    ));
    summary.extend(summarize(
        "apl",
        &collect(|m| m.apl.map(|a| a.mean_distance)),
        None,
    ));

    let mut violations = Vec::new();
    if let Some(tol) = spec.tolerance {
        for (name, rows) in [("parallel", &tables.parallel), ("degree", &tables.degree)] {
            for row in rows.iter().flatten() {
                if row.abs_error > tol {
                    violations.push(format!(
                        "{name}[{}]: |{:.6} - {:.6}| = {:.6} > {tol}",
                        row.value, row.empirical, row.theoretical, row.abs_error
                    ));
                }
            }
        }
    }

    let report = ExperimentReport {
        spec: spec.clone(),
        runs: metrics,
        tables,
        summary,
        violations,
    };
    let timings = Timings {
        run_seconds,
        total_seconds: started.elapsed().as_secs_f64(),
    };
    Ok((report, timings))
}

/// File name stem of one generated run.
pub fn run_stem(spec: &ExperimentSpec, run: usize) -> String {
    format!(
        "{}_d{}_run{}",
        spec.growth.model, spec.growth.dimension, run
    )
}

/// Generates every run of `spec` into `out_dir` as edge list plus registry
/// sidecar. Returns the edge-list paths.
pub fn generate_to_dir(spec: &ExperimentSpec, out_dir: &Path) -> Result<Vec<PathBuf>> {
    spec.growth.validate()?;
    if spec.runs < 1 {
        return Err(Error::Config("runs must be at least 1".into()));
    }
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    (0..spec.runs)
        .map(|run| {
            let (g, _) = generate_run(spec, run)?;
            let seed = (spec.growth.model != Model::Pdan).then(|| spec.run_seed(run));
            let header = EdgeListHeader::for_graph(&g, Some(spec.growth.model), seed);
            let path = out_dir.join(format!("{}.edges", run_stem(spec, run)));
            save_graph(&g, &header, &path)?;
            Ok(path)
        })
        .collect()
}

pub const CSV_HEADER: &str = "value,empirical,theoretical,abs_error,std_dev";

pub fn comparison_csv(rows: &[ComparisonRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out += &format!(
            "{},{},{},{},{}\n",
            r.value, r.empirical, r.theoretical, r.abs_error, r.std_dev
        );
    }
    out
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn summary_csv(reports: &[ExperimentReport]) -> String {
    let mut out = String::from("model,d,vertices,metric,runs,mean,std_dev,theoretical,abs_error\n");
    for report in reports {
        let g = &report.spec.growth;
        let n = report.runs.first().map_or(0, |r| r.vertices);
        for s in &report.summary {
            out += &format!(
                "{},{},{},{},{},{},{},{},{}\n",
                g.model,
                g.dimension,
                n,
                s.metric,
                s.runs,
                s.mean,
                s.std_dev,
                opt(s.theoretical),
                opt(s.abs_error)
            );
        }
    }
    out
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// Writes `report.json`, `timings.json` and one CSV per comparison table.
pub fn write_report(report: &ExperimentReport, timings: &Timings, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let json = serde_json::to_string_pretty(report).expect("report serializes");
    write(&dir.join("report.json"), &(json + "\n"))?;
    let json = serde_json::to_string_pretty(timings).expect("timings serialize");
    write(&dir.join("timings.json"), &(json + "\n"))?;
    if let Some(rows) = &report.tables.parallel {
        write(&dir.join("parallel.csv"), &comparison_csv(rows))?;
    }
    if let Some(rows) = &report.tables.degree {
        write(&dir.join("degree.csv"), &comparison_csv(rows))?;
    }
    write(
        &dir.join("summary.csv"),
        &summary_csv(std::slice::from_ref(report)),
    )
}

/// CSV of the closed-form laws for dimension `d`: scalar rows followed by the
/// parallel-degree pmf (`m <= 20`) and the degree pmf up to `k_max`.
pub fn theory_csv(d: Dimension, k_max: u64) -> Result<String> {
    let laws = theory::law_summary(d, CLUSTERING_TAIL_TOL)?;
    let pmf = theory::degree_pmf_theory(d, k_max)?;
    let mut out = String::from("quantity,value\n");
    out += &format!("d,{}\n", laws.d);
    out += &format!("gamma,{}\n", laws.gamma);
    out += &format!("avg_parallel_degree,{}\n", laws.avg_parallel_degree);
    out += &format!("rho,{}\n", laws.parallel_coefficient);
    out += &format!("clustering,{}\n", laws.clustering.value);
    out += &format!("clustering_truncation_k,{}\n", laws.clustering.truncation_k);
    out += &format!("clustering_tail_bound,{}\n", laws.clustering.tail_bound);
    for m in 0..=20 {
        out += &format!("pc({m}),{}\n", theory::pc_theory_f64(d, m));
    }
    for (k, p) in pmf.iter() {
        out += &format!("P({k}),{p}\n");
    }
    out += &format!("degree_tail_mass,{}\n", pmf.tail_mass);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_spec() -> ExperimentSpec {
        ExperimentSpec::new(GrowthConfig::pran(2, 100, 3), 1, Analysis::ALL.to_vec())
    }

    #[test]
    fn smoke_report_has_all_sections() {
        let (report, timings) = run_experiment(&small_spec()).unwrap();
        assert_eq!(report.runs.len(), 1);
        assert!(report
            .tables
            .parallel
            .as_ref()
            .is_some_and(|t| !t.is_empty()));
        assert!(report.tables.degree.as_ref().is_some_and(|t| !t.is_empty()));
        let r = &report.runs[0];
        assert!(
            r.average_clustering.is_some() && r.apl.is_some() && r.parallel_coefficient.is_some()
        );
        assert_eq!(r.apl.unwrap().method, analysis::AplMethod::Exact);
        assert_eq!(timings.run_seconds.len(), 1);
        assert!(report.violations.is_empty());
    }

    #[test]
    fn report_is_reproducible() {
        let mut spec = small_spec();
        spec.runs = 3;
        spec.exact_apl_max = 10;
        spec.apl_pairs = 200;
        let (a, _) = run_experiment(&spec).unwrap();
        let (b, _) = run_experiment(&spec).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        assert_eq!(a.runs[2].seed, 5);
    }

    #[test]
    fn tolerance_violations_are_reported() {
        let mut spec =
            ExperimentSpec::new(GrowthConfig::pran(2, 60, 0), 2, vec![Analysis::Parallel]);
        spec.tolerance = Some(0.0);
        let (report, _) = run_experiment(&spec).unwrap();
        assert!(!report.violations.is_empty());
    }

    #[test]
    fn invalid_specs() {
        let mut spec = small_spec();
        spec.runs = 0;
        assert!(run_experiment(&spec).is_err());
        let mut spec = small_spec();
        spec.analyses.clear();
        assert!(run_experiment(&spec).is_err());
        assert!("bogus".parse::<Analysis>().is_err());
    }

    #[test]
    fn theory_csv_rows() {
        let csv = theory_csv(Dimension::new(2).unwrap(), 10).unwrap();
        assert!(csv.lines().any(|l| l == "gamma,2.5"));
        let rho: f64 = csv
            .lines()
            .find_map(|l| l.strip_prefix("rho,"))
            .unwrap()
            .parse()
            .unwrap();
        assert!((rho - 7.0 / 48.0).abs() < 1e-15);
        assert!(csv.lines().any(|l| l == "P(3),0.5"));
        assert!(csv.lines().any(|l| l == "pc(0),0.75"));
    }

    #[test]
    fn generated_files_are_deterministic() {
        let dir = tempfile::tempdir().unwrap();
        let mut spec = small_spec();
        spec.runs = 2;
        let a = generate_to_dir(&spec, &dir.path().join("a")).unwrap();
        let b = generate_to_dir(&spec, &dir.path().join("b")).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(fs::read(x).unwrap(), fs::read(y).unwrap());
        }
        assert!(a[0].ends_with("pran_d2_run0.edges"));
    }
}
