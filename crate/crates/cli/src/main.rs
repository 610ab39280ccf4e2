use std::path::{Path, PathBuf};
use std::process::ExitCode;

use apollonet::experiment::{
    generate_to_dir, run_experiment, summary_csv, theory_csv, write_report, Analysis,
    ExperimentSpec, DEFAULT_K_MIN, DEFAULT_SEED,
};
use apollonet::{analysis, Dimension, Error, GrowthConfig, Model, PdanPolicy, Target};
use clap::{Args, Parser, Subcommand};

const EXIT_CONFIG: u8 = 1;
const EXIT_TOLERANCE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "apollonet",
    version,
    about = "Parallel random Apollonian network experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write one edge list (and clique sidecar) per run.
    Generate(GrowthArgs),
    /// Print the closed-form laws for one dimension as CSV.
    Theory {
        #[arg(long, short = 'd', default_value_t = 2)]
        dimension: usize,
        #[arg(long, default_value_t = 100)]
        kmax: u64,
    },
    /// Generate seeded runs, measure them and compare with theory.
    Compare {
        #[command(flatten)]
        growth: GrowthArgs,
        /// Comma-separated subset of degree,parallel,clustering,gamma,apl.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "degree,parallel,clustering,gamma,apl"
        )]
        analyses: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_K_MIN)]
        kmin: u64,
        #[arg(long, default_value_t = analysis::DEFAULT_APL_PAIRS)]
        apl_pairs: usize,
        #[arg(long, default_value_t = analysis::DEFAULT_EXACT_APL_MAX)]
        exact_apl_max: usize,
        /// Fail with exit code 2 if any table row's abs_error exceeds this.
        #[arg(long)]
        tolerance: Option<f64>,
    },
}

#[derive(Args)]
struct GrowthArgs {
    /// One or more dimensions, comma separated.
    #[arg(long, short = 'd', value_delimiter = ',', default_value = "2")]
    dimension: Vec<usize>,
    #[arg(long, short = 'n', conflicts_with = "steps")]
    vertices: Option<usize>,
    /// Insertion steps (generations for pdan).
    #[arg(long, short = 't')]
    steps: Option<usize>,
    /// One or more of pran, ran, pdan, comma separated.
    #[arg(long, short = 'm', value_delimiter = ',', default_value = "pran")]
    model: Vec<String>,
    #[arg(long, default_value_t = 1)]
    pdan_m: usize,
    #[arg(long, default_value = "frontier")]
    pdan_policy: String,
    #[arg(long, env = "APOLLONET_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    runs: usize,
    #[arg(long, short = 'o')]
    out: Option<PathBuf>,
}

impl GrowthArgs {
    /// One spec per (model, dimension) combination.
    fn specs(&self, analyses: Vec<Analysis>) -> Result<Vec<ExperimentSpec>, Error> {
        let target = match (self.vertices, self.steps) {
            (Some(n), None) => Target::Vertices(n),
            (None, Some(t)) => Target::Steps(t),
            _ => {
                return Err(Error::Config(
                    "give exactly one of --vertices or --steps".into(),
                ))
            }
        };
        let policy: PdanPolicy = self.pdan_policy.parse()?;
        let mut specs = Vec::new();
        for model in &self.model {
            let model: Model = model.parse()?;
            for &d in &self.dimension {
                let growth = GrowthConfig {
                    pdan_m: self.pdan_m,
                    pdan_policy: policy,
                    ..GrowthConfig::new(model, d, target, self.seed)
                };
                let spec = ExperimentSpec::new(growth, self.runs, analyses.clone());
                spec.growth.validate()?;
                specs.push(spec);
            }
        }
        Ok(specs)
    }
}

fn combo_dir(out: &Path, spec: &ExperimentSpec) -> PathBuf {
    out.join(format!("{}_d{}", spec.growth.model, spec.growth.dimension))
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Io { .. } => EXIT_IO,
        _ => EXIT_CONFIG,
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Error> {
    std::fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Generate(args) => {
            let out = args
                .out
                .clone()
                .ok_or_else(|| Error::Config("generate needs --out".into()))?;
            for spec in args.specs(vec![Analysis::Degree])? {
                for path in generate_to_dir(&spec, &out)? {
                    println!("{}", path.display());
                }
            }
            Ok(0)
        }
        Command::Theory { dimension, kmax } => {
            print!("{}", theory_csv(Dimension::new(dimension)?, kmax)?);
            Ok(0)
        }
        Command::Compare {
            growth,
            analyses,
            kmin,
            apl_pairs,
            exact_apl_max,
            tolerance,
        } => {
            let analyses = analyses
                .iter()
                .map(|a| a.parse())
                .collect::<Result<Vec<Analysis>, _>>()?;
            let mut reports = Vec::new();
            for mut spec in growth.specs(analyses)? {
                spec.k_min = kmin;
                spec.apl_pairs = apl_pairs;
                spec.exact_apl_max = exact_apl_max;
                spec.tolerance = tolerance;
                let (report, timings) = run_experiment(&spec)?;
                if let Some(out) = &growth.out {
                    write_report(&report, &timings, &combo_dir(out, &spec))?;
                }
                for v in &report.violations {
                    eprintln!("{} d={}: {v}", spec.growth.model, spec.growth.dimension);
                }
                reports.push(report);
            }
            let summary = summary_csv(&reports);
            match &growth.out {
                Some(out) => write_file(&out.join("summary.csv"), &summary)?,
                None => print!("{summary}"),
            }
            let violated = reports.iter().any(|r| !r.violations.is_empty());
            Ok(if violated { EXIT_TOLERANCE } else { 0 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_CONFIG } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
