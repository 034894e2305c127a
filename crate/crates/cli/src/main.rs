//! `stabgeo`: run stabilizer-geometry experiments from the command line.
//!
//! Exit codes: 0 success, 1 failed check or runtime error, 2 usage error.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use stabgeo::experiments::{self, ExperimentConfig, Generator, OutputFormat, Report};
use stabgeo::facets::write_facet_file;
use stabgeo::samplers::DepolarizationMode;
use stabgeo::System;

#[derive(Parser, Debug)]
#[command(name = "stabgeo", version, about = "Stabilizer polytope geometry experiments")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct GlobalArgs {
    /// JSON config file with the same keys as the flags; flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Register as d,n: 2,1 / 3,1 / 2,2 / 2,3.
    #[arg(long, global = true)]
    system: Option<System>,
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Certified gap required of distance computations.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// csv or json.
    #[arg(long, global = true)]
    format: Option<OutputFormat>,
    /// haar, hs, biased or walk.
    #[arg(long, global = true)]
    generator: Option<Generator>,
    /// Depolarizing channel for `threshold`: global or local.
    #[arg(long, global = true)]
    mode: Option<DepolarizationMode>,
    /// Walk step in eps.
    #[arg(long, global = true)]
    step: Option<f64>,
    /// Largest 1 - eps for random walk samples.
    #[arg(long, global = true)]
    reach: Option<f64>,
    /// `threshold`: only resolve states above the running maximum.
    #[arg(long, global = true)]
    screen: bool,
    /// `threshold`: skip distance and robustness columns.
    #[arg(long, global = true)]
    no_measures: bool,
    #[arg(long, global = true)]
    bin_width: Option<f64>,
    /// `hull`: octahedron, chsh, two-body-xy or comma-separated Pauli words.
    #[arg(long, global = true)]
    projection: Option<String>,
    /// Do not write or resume from a checkpoint file.
    #[arg(long, global = true)]
    no_checkpoint: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Named states against their reference values.
    Catalog,
    /// Distance histograms over random states.
    Hist,
    /// Distance, robustness and stabilizer entropy on the same samples.
    Compare,
    /// Critical depolarizing noise.
    Threshold,
    /// Violated facets per sample and class.
    FacetAudit,
    /// Bell-type witnesses.
    Bell,
    /// Distance against entanglement entropy.
    Entanglement,
    /// Audit of the distance-to-vertex and entropy bounds.
    Concentration,
    /// Facets of a projected polytope.
    Hull,
    /// Amplitudes of all stabilizer states.
    ExportVertices,
    /// Facet files.
    Facets {
        #[command(subcommand)]
        action: FacetsAction,
    },
}

#[derive(Subcommand, Debug)]
enum FacetsAction {
    /// Write all facets of a one- or two-qubit polytope.
    Export,
    /// Read a facet file and check it against the stabilizer states.
    Import { path: PathBuf },
}

/// Errors in the invocation itself, reported with exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn build_config(g: &GlobalArgs) -> Result<ExperimentConfig> {
    let mut cfg = match &g.config {
        Some(path) => ExperimentConfig::from_file(path)
            .map_err(|e| UsageError(format!("config {}: {e}", path.display())))?,
        None => ExperimentConfig::default(),
    };
    if let Some(v) = g.system {
        cfg.system = v;
    }
    if g.samples.is_some() {
        cfg.samples = g.samples;
    }
    if let Some(v) = g.seed {
        cfg.seed = v;
    }
    if let Some(v) = g.workers {
        cfg.workers = v;
    }
    if let Some(v) = g.tol {
        cfg.tol = v;
    }
    if g.out.is_some() {
        cfg.out = g.out.clone();
    }
    if let Some(v) = g.format {
        cfg.format = v;
    }
    if let Some(v) = g.generator {
        cfg.generator = v;
    }
    if let Some(v) = g.mode {
        cfg.mode = v;
    }
    if let Some(v) = g.step {
        cfg.step = v;
    }
    if g.reach.is_some() {
        cfg.reach = g.reach;
    }
    if g.screen {
        cfg.screen = true;
    }
    if g.no_measures {
        cfg.with_measures = false;
    }
    if let Some(v) = g.bin_width {
        cfg.bin_width = v;
    }
    if g.projection.is_some() {
        cfg.projection = g.projection.clone();
    }
    if g.no_checkpoint {
        cfg.checkpoint = false;
    }
    cfg.validate().map_err(|e| UsageError(e.to_string()))?;
    Ok(cfg)
}

fn is_export(command: &Command) -> bool {
    matches!(command, Command::Hull | Command::ExportVertices | Command::Facets { .. })
}

/// Writes the report data to `--out` (or stdout for exports) and the
/// summary to stdout (or stderr when stdout carries data).
fn emit(report: &Report, cfg: &ExperimentConfig, export: bool) -> Result<()> {
    let write_data = |w: &mut dyn Write| -> Result<()> {
        match (&report.facet_file, cfg.format) {
            (Some(file), OutputFormat::Csv) => write_facet_file(w, file)?,
            _ => report.write(w, cfg.format)?,
        }
        Ok(())
    };
    let summary = report.summary_text();
    match &cfg.out {
        Some(path) => {
            let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = BufWriter::new(f);
            write_data(&mut w)?;
            w.flush()?;
            print!("{summary}");
        }
        None if export => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            write_data(&mut w)?;
            eprint!("{summary}");
        }
        None => print!("{summary}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    let cfg = build_config(&cli.global)?;
    let report = match &cli.command {
        Command::Catalog => experiments::cmd_catalog(&cfg),
        Command::Hist => experiments::cmd_hist(&cfg),
        Command::Compare => experiments::cmd_compare(&cfg),
        Command::Threshold => experiments::cmd_threshold(&cfg),
        Command::FacetAudit => experiments::cmd_facet_audit(&cfg),
        Command::Bell => experiments::cmd_bell(&cfg),
        Command::Entanglement => experiments::cmd_entanglement(&cfg),
        Command::Concentration => experiments::cmd_concentration(&cfg),
        Command::Hull => experiments::cmd_hull(&cfg),
        Command::ExportVertices => experiments::cmd_export_vertices(&cfg),
        Command::Facets { action: FacetsAction::Export } => experiments::cmd_facets_export(&cfg),
        Command::Facets { action: FacetsAction::Import { path } } => {
            let f = File::open(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
            experiments::cmd_facets_import(&cfg, BufReader::new(f))
        }
    };
    let report = report.map_err(|e| match e {
        stabgeo::Error::Config(_) | stabgeo::Error::Unsupported(_) | stabgeo::Error::InvalidLabel(_) => {
            anyhow::Error::new(UsageError(e.to_string()))
        }
        other => anyhow::Error::new(other),
    })?;
    emit(&report, &cfg, is_export(&cli.command))?;
    Ok(report.passed())
}

/// Output closed early by the reader, e.g. piping into `head`.
fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        let io = c.downcast_ref::<io::Error>().or_else(|| match c.downcast_ref::<stabgeo::Error>() {
            Some(stabgeo::Error::Io(io)) => Some(io),
            _ => None,
        });
        io.is_some_and(|io| io.kind() == io::ErrorKind::BrokenPipe)
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
