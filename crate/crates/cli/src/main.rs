//! `gvlc` command line: run the verification suites and tracking
//! experiments, inspect field snapshots, and generate a default config.
//!
//! Exit codes: 0 all enabled assertions passed, 1 at least one check
//! failed, 2 usage or input-format errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use gvlc_experiments::config::ExperimentConfig;
use gvlc_experiments::report::{write_text, ExperimentReport};
use gvlc_experiments::suites;

#[derive(Parser)]
#[command(name = "gvlc", version, about = "Spectral verification laboratory", max_term_width = 100)]
struct Cli {
    /// Configuration file (TOML); defaults apply when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override the initial-data seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory (falls back to $GVLC_OUT_DIR, then "gvlc-out").
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also write the JSON report.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and report pass/fail per check.
    Verify {
        #[arg(value_enum)]
        suite: VerifySuite,
    },
    /// Run a tracking experiment (solver-backed).
    Run {
        #[arg(value_enum)]
        experiment: RunExperiment,
    },
    /// Print the header and coefficient summary of a snapshot file.
    Inspect { snapshot: PathBuf },
    /// Print a default configuration file.
    GenConfig,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifySuite {
    Kernel,
    Bilinear,
    Toolkit,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum RunExperiment {
    Gevrey,
    Decay,
    Picard,
}

fn out_dir(cli: &Cli, cfg: &ExperimentConfig) -> PathBuf {
    if let Some(o) = &cli.out {
        return o.clone();
    }
    if !cfg.output.dir.is_empty() {
        return PathBuf::from(&cfg.output.dir);
    }
    if let Ok(env) = std::env::var("GVLC_OUT_DIR") {
        if !env.is_empty() {
            return PathBuf::from(env);
        }
    }
    PathBuf::from("gvlc-out")
}

fn load_config(cli: &Cli) -> anyhow::Result<ExperimentConfig> {
    let mut cfg = match &cli.config {
        Some(path) => ExperimentConfig::from_file(path)
            .map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?,
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.initial_data.seed = seed;
    }
    Ok(cfg)
}

fn emit(
    cli: &Cli,
    cfg: &ExperimentConfig,
    report: &ExperimentReport,
    extra: &[(&str, String)],
) -> anyhow::Result<()> {
    report.print_console();
    let dir = out_dir(cli, cfg);
    std::fs::create_dir_all(&dir)?;
    write_text(&dir.join(format!("{}_report.csv", report.experiment)), &report.to_csv())?;
    if cli.json || cfg.output.json {
        write_text(&dir.join(format!("{}_report.json", report.experiment)), &report.to_json())?;
    }
    for (name, text) in extra {
        write_text(&dir.join(name), text)?;
    }
    Ok(())
}

fn inspect(path: &Path) -> anyhow::Result<()> {
    let field = gvlc_core::snapshot::read_snapshot_file(path)
        .map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
    let spec = field.spec;
    println!("snapshot  {}", path.display());
    println!("dim       {}", spec.dim);
    println!("n         {}", spec.n);
    println!("components {}", field.components());
    println!("modes     {}", spec.points() * field.components());
    println!("hermitian {}", field.is_real_symmetric());
    println!("max |coeff| {:.6e}", field.max_coeff_abs());
    let l2 = gvlc_core::norms::lp_norm(&field, 2.0);
    println!("L2 norm   {:.6e}", l2);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    match &cli.command {
        Command::GenConfig => {
            print!("{}", ExperimentConfig::default_toml());
            Ok(true)
        }
        Command::Inspect { snapshot } => {
            inspect(snapshot)?;
            Ok(true)
        }
        Command::Verify { suite } => {
            let cfg = load_config(cli)?;
            let seed = cfg.initial_data.seed;
            let mut report = ExperimentReport::new("verify", seed);
            let mut extra: Vec<(&str, String)> = Vec::new();
            let t0 = std::time::Instant::now();
            match suite {
                VerifySuite::Kernel => {
                    let (r, series) = suites::run_kernel_suite(seed)?;
                    extra.push(("kernel_series.csv", series.to_csv()));
                    report.merge(r);
                }
                VerifySuite::Bilinear => {
                    let (r, series) = suites::run_bilinear_suite(seed)?;
                    extra.push(("bilinear_series.csv", series.to_csv()));
                    report.merge(r);
                }
                VerifySuite::Toolkit => {
                    let (r, blocks) = suites::run_toolkit_suite(seed)?;
                    extra.push(("toolkit_blocks.csv", blocks.to_csv()));
                    report.merge(r);
                }
                VerifySuite::All => {
                    let (r1, s1) = suites::run_kernel_suite(seed)?;
                    let (r2, s2) = suites::run_bilinear_suite(seed)?;
                    let (r3, b3) = suites::run_toolkit_suite(seed)?;
                    extra.push(("kernel_series.csv", s1.to_csv()));
                    extra.push(("bilinear_series.csv", s2.to_csv()));
                    extra.push(("toolkit_blocks.csv", b3.to_csv()));
                    report.merge(r1);
                    report.merge(r2);
                    report.merge(r3);
                }
            }
            eprintln!("suite wall time: {:.1?}", t0.elapsed());
            emit(cli, &cfg, &report, &extra)?;
            Ok(report.all_passed)
        }
        Command::Run { experiment } => {
            let cfg = load_config(cli)?;
            let t0 = std::time::Instant::now();
            let (report, extra) = match experiment {
                RunExperiment::Gevrey | RunExperiment::Decay => {
                    let run = suites::tracked_run(&cfg)?;
                    let mut extra: Vec<(&str, String)> = Vec::new();
                    if cfg.output.snapshots {
                        let dir = out_dir(cli, &cfg).join("snapshots");
                        std::fs::create_dir_all(&dir)?;
                        for (i, (t, s)) in run.samples.iter().enumerate() {
                            let path = dir.join(format!("u_{i:03}_t{t:.6}.gvlc"));
                            gvlc_core::snapshot::write_snapshot_file(&path, &s.u)?;
                        }
                    }
                    match experiment {
                        RunExperiment::Gevrey => {
                            let (r, series, blocks) = suites::run_gevrey_tracking(&cfg, &run)?;
                            extra.push(("gevrey_series.csv", series.to_csv()));
                            extra.push(("gevrey_blocks.csv", blocks.to_csv()));
                            (r, extra)
                        }
                        _ => {
                            let (r, series) = suites::run_decay_experiment(&cfg, &run)?;
                            extra.push(("decay_series.csv", series.to_csv()));
                            (r, extra)
                        }
                    }
                }
                RunExperiment::Picard => {
                    let (r, series) = suites::run_picard_contraction(&cfg)?;
                    (r, vec![("picard_series.csv", series.to_csv())])
                }
            };
            eprintln!("experiment wall time: {:.1?}", t0.elapsed());
            emit(cli, &cfg, &report, &extra)?;
            Ok(report.all_passed)
        }
    }
}
