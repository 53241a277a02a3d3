use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use dsel_edit::data::{load_csv, write_csv};
use dsel_edit::harness::{read_records, report, run_experiment, write_records, ExperimentConfig};
use dsel_edit::ps::{select_prototypes, PsParams};
use dsel_edit::synth::{generate, SynthKind, SynthSpec};
use dsel_edit::PsMethod;

#[derive(Parser)]
#[command(name = "dsel-edit", version, about = "Prototype selection for dynamic-selection datasets")]
struct Cli {
    /// More log output (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a replicated experiment from a TOML config.
    Run {
        config: PathBuf,
        /// Overrides `master_seed`.
        #[arg(long)]
        seed: Option<u64>,
        /// Overrides `output_dir`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overrides `jobs`.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
    },
    /// Rebuild the reports from a records file.
    Report {
        records: PathBuf,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        /// Report directory; defaults to `report/` next to the records.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply one PS method to a dataset file.
    Edit {
        input: PathBuf,
        #[arg(short, long)]
        method: PsMethod,
        /// Where to write DSEL'; stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Where to write the mask line.
        #[arg(long)]
        mask: Option<PathBuf>,
        /// Per-evaluation trace of the search methods.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Results smaller than this fall back to the full set.
        #[arg(long, default_value_t = 7)]
        min_retained: usize,
    },
    /// Write a synthetic dataset as CSV.
    Gen {
        #[arg(short, long)]
        kind: SynthKind,
        #[arg(short, long, default_value_t = 1000)]
        n: usize,
        /// Kind-specific noise; the kind's default when absent.
        #[arg(long)]
        noise: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn writer(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn machine_metadata() -> String {
    format!(
        "os = {}\narch = {}\nthreads = {}\nversion = {}\n",
        std::env::consts::OS,
        std::env::consts::ARCH,
        std::thread::available_parallelism().map_or(1, |n| n.get()),
        env!("CARGO_PKG_VERSION"),
    )
}

fn write_report(records: &[dsel_edit::harness::RunRecord], alpha: f64, dir: &Path) -> Result<()> {
    let rep = report(records, alpha)?;
    rep.write_dir(dir)?;
    print!("{}", rep.summary());
    if rep.excluded_records > 0 {
        eprintln!("{} failed record(s) excluded from the statistics", rep.excluded_records);
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run {
            config,
            seed,
            out,
            jobs,
            alpha,
        } => {
            let mut cfg = ExperimentConfig::load(&config)?;
            if let Some(s) = seed {
                cfg.master_seed = s;
            }
            if let Some(o) = out {
                cfg.output_dir = o;
            }
            if jobs.is_some() {
                cfg.jobs = jobs;
            }
            if cfg.datasets.is_empty() {
                bail!("{} lists no datasets", config.display());
            }
            let dir = cfg.output_dir.clone();
            fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
            fs::write(dir.join("config.toml"), cfg.to_toml()?)?;
            fs::write(dir.join("machine.txt"), machine_metadata())?;

            let t = Instant::now();
            let records = run_experiment(&cfg)?;
            log::info!("{} records in {:.1}s", records.len(), t.elapsed().as_secs_f64());
            write_records(&records, writer(Some(&dir.join("records.csv")))?)?;
            write_report(&records, alpha, &dir.join("report"))
        }
        Command::Report { records, alpha, out } => {
            let file = File::open(&records).with_context(|| format!("opening {}", records.display()))?;
            let recs = read_records(file)?;
            let dir = out.unwrap_or_else(|| records.parent().unwrap_or(Path::new(".")).join("report"));
            write_report(&recs, alpha, &dir)
        }
        Command::Edit {
            input,
            method,
            output,
            mask,
            trace,
            seed,
            min_retained,
        } => {
            let data = load_csv(&input)?;
            let params = PsParams {
                min_retained,
                ..PsParams::default()
            };
            let t = Instant::now();
            let out = select_prototypes(method, &data, &params, seed)?;
            eprintln!(
                "{method}: kept {} of {} rows (technique kept {}{}) in {:.2}s",
                out.mask.retained_count(),
                data.len(),
                out.raw_retained,
                if out.guarded { "; below the size guard, full set kept" } else { "" },
                t.elapsed().as_secs_f64()
            );
            if let Some(p) = mask {
                fs::write(&p, format!("{}\n", out.mask)).with_context(|| format!("writing {}", p.display()))?;
            }
            if let (Some(p), Some(search)) = (trace, &out.search) {
                search.write_trace(&mut writer(Some(&p))?)?;
            }
            let mut w = writer(output.as_deref())?;
            write_csv(&out.mask.apply(&data)?, &mut w)?;
            w.flush()?;
            Ok(())
        }
        Command::Gen {
            kind,
            n,
            noise,
            seed,
            output,
        } => {
            let spec = SynthSpec::new(kind, n, noise.unwrap_or_else(|| kind.default_noise()), seed);
            let data = generate(&spec)?;
            let mut w = writer(output.as_deref())?;
            write_csv(&data, &mut w)?;
            w.flush()?;
            Ok(())
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    if let Err(e) = run(cli) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
