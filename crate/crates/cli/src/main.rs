//! `headerscore`: scan sites for security headers, run ranked batches,
//! summarize stored reports and size samples.

use std::fs::File;
use std::io::{self, BufWriter, IsTerminal, Write};
use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use headerscore::batch::{apply_categories, load_category_map, load_targets, read_run, run_batch, write_run, BatchConfig};
use headerscore::fetcher::{DEFAULT_BODY_CAP, DEFAULT_MAX_REDIRECTS, DEFAULT_USER_AGENT};
use headerscore::reporting::{
    aggregate_by_category, grade_distribution, header_matrix, render_report, sample_size, write_aggregates_csv,
    write_distribution_csv, write_matrix_csv, write_records,
};
use headerscore::{FetchConfig, ScanTarget, Scanner, ScoringConfig};

/// Exit status when strict mode sees an unreachable target.
const EXIT_UNREACHABLE: u8 = 1;
/// Exit status for runtime errors (unreadable files and the like).
const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "headerscore", version, about = "Audit HTTP security headers and grade websites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan one site and print its report.
    Scan(ScanArgs),
    /// Scan a ranked list of sites and write report records plus a manifest.
    Batch(BatchArgs),
    /// Summarize stored report records as a CSV table.
    Aggregate(AggregateArgs),
    /// Sample size for estimating a proportion.
    SampleSize(SampleSizeArgs),
}

#[derive(Args)]
struct FetchArgs {
    /// User-Agent header sent with every request.
    #[arg(long, env = "HEADERSCORE_USER_AGENT", default_value = DEFAULT_USER_AGENT, hide_default_value = true)]
    user_agent: String,
    /// Per-request timeout in seconds.
    #[arg(long, default_value_t = 15.0)]
    timeout: f64,
    /// Redirects followed before a chain counts as a loop.
    #[arg(long, default_value_t = DEFAULT_MAX_REDIRECTS)]
    max_redirects: usize,
    /// Landing-page bytes kept for analysis.
    #[arg(long, default_value_t = DEFAULT_BODY_CAP)]
    body_cap: usize,
    /// Send every connection to this address instead of resolving names.
    #[arg(long, value_name = "ADDR")]
    connect_to: Option<SocketAddr>,
    /// Additional trusted root certificate (PEM file).
    #[arg(long, value_name = "PEM")]
    ca_cert: Vec<PathBuf>,
    /// Do not scan again after a transient failure.
    #[arg(long)]
    no_retry: bool,
    /// Penalize a missing /contribute.json.
    #[arg(long)]
    strict_contribute: bool,
    /// Exit with status 1 if any target was unreachable.
    #[arg(long)]
    strict: bool,
}

impl FetchArgs {
    fn fetch_config(&self) -> Result<FetchConfig> {
        if !(self.timeout.is_finite() && self.timeout > 0.0) {
            bail!("--timeout must be a positive number of seconds");
        }
        let mut extra_root_certs = Vec::new();
        for path in &self.ca_cert {
            let pem = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            extra_root_certs.push(pem);
        }
        Ok(FetchConfig {
            timeout: Duration::from_secs_f64(self.timeout),
            max_redirects: self.max_redirects,
            user_agent: self.user_agent.clone(),
            body_cap: self.body_cap,
            connect_override: self.connect_to,
            extra_root_certs,
            ..FetchConfig::default()
        })
    }

    fn scoring(&self) -> ScoringConfig {
        ScoringConfig {
            strict_contribute: self.strict_contribute,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    /// Human-readable table.
    Table,
    /// One JSON record.
    Records,
}

#[derive(Args)]
struct ScanArgs {
    /// Host name, e.g. example.com
    domain: String,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[command(flatten)]
    fetch: FetchArgs,
}

#[derive(Args)]
struct BatchArgs {
    /// Target list, one `rank,domain[,category]` per line.
    #[arg(long)]
    input: PathBuf,
    /// Scan only the K best-ranked targets.
    #[arg(long, value_name = "K")]
    limit: Option<usize>,
    /// Directory for reports.jsonl and manifest.json.
    #[arg(long)]
    out: PathBuf,
    /// Scans in flight at once.
    #[arg(long, default_value_t = headerscore::batch::DEFAULT_CONCURRENCY)]
    concurrency: usize,
    /// `domain,category` file supplying labels missing from the list.
    #[arg(long, value_name = "FILE")]
    categories: Option<PathBuf>,
    #[command(flatten)]
    fetch: FetchArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupBy {
    /// Count, mean, max and min score per category label.
    Category,
    /// Grade counts and percentages, split by category label.
    Grade,
    /// Mean modifier per check and category label.
    Header,
}

#[derive(Args)]
struct AggregateArgs {
    /// Run directory or records file.
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,
    #[arg(long, value_enum)]
    by: GroupBy,
    /// Write the table here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Count unreachable targets (scored 0) instead of leaving them out.
    #[arg(long)]
    include_unreachable: bool,
}

#[derive(Args)]
struct SampleSizeArgs {
    /// Population size; omit for an unbounded population.
    #[arg(long, value_name = "N")]
    population: Option<u64>,
    #[arg(long, default_value_t = 0.95)]
    confidence: f64,
    #[arg(long, default_value_t = 0.05)]
    margin: f64,
}

fn runtime() -> Result<tokio::runtime::Runtime> {
    tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .context("starting runtime")
}

fn scan(args: ScanArgs) -> Result<u8> {
    let target = ScanTarget::new(&args.domain)?;
    let scanner = Scanner::new(args.fetch.fetch_config()?, args.fetch.scoring())?.retry_transient(!args.fetch.no_retry);
    let report = runtime()?.block_on(scanner.scan(&target));

    let stdout = io::stdout();
    match args.format {
        Format::Table => {
            let color = stdout.is_terminal();
            stdout.lock().write_all(render_report(&report, color).as_bytes())?;
        }
        Format::Records => write_records(stdout.lock(), std::slice::from_ref(&report))?,
    }
    Ok(if args.fetch.strict && report.unreachable { EXIT_UNREACHABLE } else { 0 })
}

fn batch(args: BatchArgs) -> Result<u8> {
    let mut targets = load_targets(&args.input, args.limit)?;
    if let Some(path) = &args.categories {
        apply_categories(&mut targets, &load_category_map(path)?);
    }
    let config = BatchConfig {
        concurrency: args.concurrency,
        fetch: args.fetch.fetch_config()?,
        scoring: args.fetch.scoring(),
        retry_transient: !args.fetch.no_retry,
    };
    let (reports, manifest) = runtime()?.block_on(run_batch(&targets, &config))?;
    write_run(&args.out, &reports, &manifest)?;
    let t = &manifest.totals;
    println!(
        "{} targets: {} scanned, {} unreachable; written to {}",
        t.requested,
        t.succeeded,
        t.unreachable,
        args.out.display()
    );
    Ok(if args.fetch.strict && t.unreachable > 0 { EXIT_UNREACHABLE } else { 0 })
}

fn aggregate(args: AggregateArgs) -> Result<u8> {
    let mut reports = read_run(&args.input)?;
    if !args.include_unreachable {
        let before = reports.len();
        reports.retain(|r| !r.unreachable);
        if reports.len() < before {
            log::info!("left out {} unreachable targets", before - reports.len());
        }
    }
    let out: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    };
    match args.by {
        GroupBy::Category => write_aggregates_csv(out, &aggregate_by_category(&reports))?,
        GroupBy::Grade => write_distribution_csv(out, &grade_distribution(&reports))?,
        GroupBy::Header => write_matrix_csv(out, &header_matrix(&reports))?,
    }
    Ok(0)
}

fn sample(args: SampleSizeArgs) -> Result<u8> {
    let n = sample_size(args.population, args.confidence, args.margin)?;
    println!("{n}");
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let result = match cli.command {
        Command::Scan(a) => scan(a),
        Command::Batch(a) => batch(a),
        Command::Aggregate(a) => aggregate(a),
        Command::SampleSize(a) => sample(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
