//! `cubelab` command line: run inequality suites, exhaustive scans, zoo
//! exports, sharpness experiments, and the heat-flow reconstruction demo.
//!
//! Exit status: 0 on success with all enforced inequalities passing,
//! 2 when some enforced inequality failed, 1 on any other error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use cubelab::fileio::{self, SpaceDescriptor};
use cubelab::ineq::{self, ScanEvaluator};
use cubelab::report::{self, InequalityReport};
use cubelab::sharpness::{self, DiscreteRandomVariable};
use cubelab::space::{influences, NormedSpace};
use cubelab::suite::{self, FunctionSource, OutputFormat, SuiteConfig};
use cubelab::weights::WeightFunction;
use cubelab::zoo;
use cubelab::QuadratureSpec;

#[derive(Parser)]
#[command(
    name = "cubelab",
    about = "Inequality verification on the discrete hypercube",
    version
)]
struct Cli {
    /// Worker threads for parallel scans (default: CUBELAB_THREADS or all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    /// Write reports here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Rows,
    Structured,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Rows => OutputFormat::Rows,
            FormatArg::Structured => OutputFormat::Structured,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run a suite config: every evaluator on every function
    Verify {
        /// Suite config (JSON)
        #[arg(long)]
        suite: PathBuf,
        /// Override the config's quadrature relative tolerance
        #[arg(long)]
        tol: Option<f64>,
        /// Override the seed of every randomized function source
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exhaustively evaluate all boolean functions at small n
    Scan {
        #[arg(long)]
        n: usize,
        /// Evaluator: kkl-boolean, kkl-corollary, or poincare
        #[arg(long, value_enum)]
        eval: ScanArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Materialize a named function and print its statistics
    Zoo {
        /// Spec such as tribes:w=2,s=4 or majority:n=5
        #[arg(long)]
        spec: String,
        /// Save the function file here
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Sharpness experiments for the one-dimensional machinery
    Sharpness {
        #[command(subcommand)]
        experiment: SharpnessCommand,
    },
    /// Reconstruct f - Ef from the heat-flow decomposition and report the error
    Reconstruct {
        /// Zoo spec of the function to reconstruct
        #[arg(long)]
        spec: String,
        /// Quadrature relative tolerance
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Save the reconstruction here as a function file
        #[arg(long)]
        save: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ScanArg {
    KklBoolean,
    KklCorollary,
    Poincare,
}

impl From<ScanArg> for ScanEvaluator {
    fn from(s: ScanArg) -> Self {
        match s {
            ScanArg::KklBoolean => ScanEvaluator::KklBoolean,
            ScanArg::KklCorollary => ScanEvaluator::KklCorollary,
            ScanArg::Poincare => ScanEvaluator::Poincare,
        }
    }
}

#[derive(Subcommand)]
enum SharpnessCommand {
    /// Randomized sweep of the moment lemma over seeded variables
    Lemma {
        /// Weight label for g (h-side registry label)
        #[arg(long, default_value = "one")]
        g: String,
        /// Number of random variables
        #[arg(long, default_value_t = 100)]
        cases: u64,
        /// Atoms per variable
        #[arg(long, default_value_t = 10)]
        atoms: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Lower-bound construction matching the lemma, over a range of levels
    Lower {
        #[arg(long, default_value = "one")]
        g: String,
        /// Level counts, comma separated
        #[arg(long, default_value = "2,4,6,8")]
        levels: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Growth of the weighted-form ratio showing no universal constant exists
    Ratio {
        /// Level counts, comma separated
        #[arg(long, default_value = "1,2,4,8,16,32")]
        levels: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn parse_levels(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .with_context(|| format!("invalid level count {part:?}"))
        })
        .collect()
}

fn write_reports(
    reports: &[InequalityReport],
    format: OutputFormat,
    out: Option<&Path>,
) -> Result<()> {
    let mut buffer = Vec::new();
    match format {
        OutputFormat::Rows => report::emit_rows(reports, &mut buffer)?,
        OutputFormat::Structured => report::emit_structured(reports, &mut buffer)?,
    }
    match out {
        Some(path) => std::fs::write(path, buffer)
            .with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(&buffer)?,
    }
    Ok(())
}

fn status_from(reports: &[InequalityReport]) -> ExitCode {
    if report::any_enforced_failure(reports) {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}

fn run_verify(
    suite: &Path,
    tol: Option<f64>,
    seed: Option<u64>,
    output: &OutputArgs,
) -> Result<ExitCode> {
    let mut config = SuiteConfig::from_file(suite)
        .with_context(|| format!("loading suite {}", suite.display()))?;
    if let Some(tol) = tol {
        config.quadrature.rel_tol = Some(tol);
    }
    if let Some(seed) = seed {
        for source in &mut config.functions {
            match source {
                FunctionSource::RandomBoolean { seed: s, .. } => *s = seed,
                FunctionSource::RandomVector { seed: s, .. } => *s = seed,
                _ => {}
            }
        }
    }
    let base = suite.parent().unwrap_or(Path::new("."));
    let reports = suite::run_suite(&config, base)?;
    let format = output.format.map(Into::into).unwrap_or(config.format);
    write_reports(&reports, format, output.out.as_deref())?;
    Ok(status_from(&reports))
}

fn run_scan(n: usize, eval: ScanEvaluator, output: &OutputArgs) -> Result<ExitCode> {
    let outcome = ineq::exhaustive_scan(n, eval)?;
    eprintln!(
        "scan n={n} evaluator={} functions={} min_slack={} argmin_table={:#x} all_pass={}",
        eval.name(),
        outcome.scanned,
        report::format_number(outcome.worst.slack),
        outcome.argmin_truth_table,
        outcome.all_pass
    );
    let reports = vec![outcome.worst.clone()];
    let format = output.format.map(Into::into).unwrap_or_default();
    write_reports(&reports, format, output.out.as_deref())?;
    Ok(if outcome.all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn run_zoo(spec: &str, save: Option<&Path>) -> Result<ExitCode> {
    let f = zoo::from_spec(spec)?;
    let mean = f.mean()[0];
    println!("function {spec}: n={} d={} boolean={}", f.n(), f.d(), f.is_boolean());
    println!("mean = {}", report::format_number(mean));
    if f.is_boolean() {
        println!("variance = {}", report::format_number(1.0 - mean * mean));
        let infs = influences(&f)?;
        let rendered: Vec<String> = infs.iter().map(|v| report::format_number(*v)).collect();
        println!("influences = [{}]", rendered.join(", "));
        println!("monotone = {}", zoo::is_monotone(&f)?);
    }
    if let Some(path) = save {
        let space = SpaceDescriptor::from_normed(&NormedSpace::scalar());
        fileio::save_function(&f, Some(&space), path)?;
        println!("saved to {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn run_sharpness(experiment: &SharpnessCommand) -> Result<ExitCode> {
    let quad = QuadratureSpec::default();
    match experiment {
        SharpnessCommand::Lemma {
            g,
            cases,
            atoms,
            seed,
            output,
        } => {
            let weight = WeightFunction::registry(g)?;
            let mut reports = Vec::new();
            for case in 0..*cases {
                let x = DiscreteRandomVariable::random(*atoms, seed.wrapping_add(case))?;
                let mut r = sharpness::lemma_check(&x, &weight, &quad)?;
                r.inputs = format!("case={case};{}", r.inputs);
                reports.push(r);
            }
            let format = output.format.map(Into::into).unwrap_or_default();
            write_reports(&reports, format, output.out.as_deref())?;
            Ok(status_from(&reports))
        }
        SharpnessCommand::Lower { g, levels, output } => {
            let weight = WeightFunction::registry(g)?;
            let mut reports = Vec::new();
            for count in parse_levels(levels)? {
                reports.push(sharpness::lemma_sharpness_check(&weight, count, &quad)?);
                let x = sharpness::lemma_sharp_variable(&weight, count)?;
                let mut upper = sharpness::lemma_check(&x, &weight, &quad)?;
                upper.inputs = format!("levels={count};{}", upper.inputs);
                reports.push(upper);
            }
            let format = output.format.map(Into::into).unwrap_or_default();
            write_reports(&reports, format, output.out.as_deref())?;
            Ok(status_from(&reports))
        }
        SharpnessCommand::Ratio { levels, output } => {
            let mut reports = Vec::new();
            for count in parse_levels(levels)? {
                let ratio = sharpness::weighted_form_ratio(count, &quad)?;
                let rhs = (count as f64).sqrt();
                reports.push(
                    InequalityReport::upper("weighted_form_ratio", ratio * rhs, rhs, ratio)
                        .with_inputs(format!("levels={count}"))
                        .with_detail("ratio", ratio)
                        .informational(),
                );
            }
            let format = output.format.map(Into::into).unwrap_or_default();
            write_reports(&reports, format, output.out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_reconstruct(spec: &str, tol: f64, save: Option<&Path>) -> Result<ExitCode> {
    let f = zoo::from_spec(spec)?;
    let quad = QuadratureSpec::with_rel_tol(tol);
    let reconstruction = f.chain_reconstruct(&quad)?;
    let error = reconstruction.max_pointwise_distance(&f.minus_mean());
    println!(
        "reconstructed {spec} at tolerance {}: max |reconstruction - (f - Ef)| = {}",
        report::format_number(tol),
        report::format_number(error)
    );
    if let Some(path) = save {
        fileio::save_function(&reconstruction, None, path)?;
        println!("saved to {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    let threads = cli.threads.or_else(|| {
        std::env::var("CUBELAB_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(threads) = threads.filter(|&t| t > 0) {
        // a second initialization in tests is harmless
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }

    let result = match &cli.command {
        Command::Verify {
            suite,
            tol,
            seed,
            output,
        } => run_verify(suite, *tol, *seed, output),
        Command::Scan { n, eval, output } => run_scan(*n, (*eval).into(), output),
        Command::Zoo { spec, save } => run_zoo(spec, save.as_deref()),
        Command::Sharpness { experiment } => run_sharpness(experiment),
        Command::Reconstruct { spec, tol, save } => {
            run_reconstruct(spec, *tol, save.as_deref())
        }
    };

    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
