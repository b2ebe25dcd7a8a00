//! Ranked target lists in, report records and a run manifest out.

use std::collections::{HashMap, HashSet};
use std::fs::File;
use std::io::{BufReader, BufWriter, Read};
use std::path::Path;

use chrono::{DateTime, Utc};
use futures::stream::{self, StreamExt};
use serde::{Deserialize, Serialize};

use crate::fetcher::{FetchConfig, FetchError};
use crate::reporting::{read_records, write_records, ReportError};
use crate::scan::Scanner;
use crate::scoring::{ScanReport, ScoringConfig};
use crate::target::{normalize_domain, ScanTarget};

pub const DEFAULT_CONCURRENCY: usize = 8;
pub const REPORTS_FILE: &str = "reports.jsonl";
pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, thiserror::Error)]
pub enum BatchError {
    #[error("{path}: {source}")]
    Open {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {source}")]
    Csv {
        line: u64,
        #[source]
        source: csv::Error,
    },
    #[error("line {line}: rank {value:?} is not a positive integer")]
    Rank { line: u64, value: String },
    #[error("line {line}: expected rank,domain[,category]")]
    Shape { line: u64 },
    #[error(transparent)]
    Fetch(#[from] FetchError),
    #[error(transparent)]
    Report(#[from] ReportError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn csv_reader<R: Read>(r: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(r)
}

fn open(path: &Path) -> Result<BufReader<File>, BatchError> {
    File::open(path).map(BufReader::new).map_err(|source| BatchError::Open {
        path: path.display().to_string(),
        source,
    })
}

/// Parses `rank,domain[,category]` lines. The result is sorted by rank with
/// duplicate domains dropped (lowest rank wins), then cut to `limit`.
/// Lines whose domain is not a valid hostname are skipped with a warning.
pub fn parse_targets<R: Read>(reader: R, limit: Option<usize>) -> Result<Vec<ScanTarget>, BatchError> {
    let mut targets = Vec::new();
    for record in csv_reader(reader).records() {
        let record = record.map_err(|source| BatchError::Csv {
            line: source.position().map_or(0, |p| p.line()),
            source,
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() < 2 {
            return Err(BatchError::Shape { line });
        }
        let rank: u64 = match record[0].parse() {
            Ok(r) if r > 0 => r,
            _ => {
                return Err(BatchError::Rank {
                    line,
                    value: record[0].to_string(),
                })
            }
        };
        let target = match ScanTarget::new(&record[1]) {
            Ok(t) => t.with_rank(rank),
            Err(e) => {
                log::warn!("line {line}: skipping {:?}: {e}", &record[1]);
                continue;
            }
        };
        let target = match record.get(2) {
            Some(category) => target.with_category(category),
            None => target,
        };
        targets.push(target);
    }
    targets.sort_by_key(|t| t.rank);

    let mut seen = HashSet::new();
    targets.retain(|t| {
        let fresh = seen.insert(t.domain.clone());
        if !fresh {
            log::warn!("duplicate domain {} at rank {:?} dropped", t.domain, t.rank);
        }
        fresh
    });
    if let Some(k) = limit {
        targets.truncate(k);
    }
    Ok(targets)
}

pub fn load_targets(path: &Path, limit: Option<usize>) -> Result<Vec<ScanTarget>, BatchError> {
    parse_targets(open(path)?, limit)
}

/// Reads `domain,category` lines.
pub fn parse_category_map<R: Read>(reader: R) -> Result<HashMap<String, String>, BatchError> {
    let mut map = HashMap::new();
    for record in csv_reader(reader).records() {
        let record = record.map_err(|source| BatchError::Csv {
            line: source.position().map_or(0, |p| p.line()),
            source,
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() < 2 {
            return Err(BatchError::Shape { line });
        }
        match normalize_domain(&record[0]) {
            Ok(domain) => {
                map.entry(domain).or_insert_with(|| record[1].to_string());
            }
            Err(e) => log::warn!("line {line}: skipping {:?}: {e}", &record[0]),
        }
    }
    Ok(map)
}

pub fn load_category_map(path: &Path) -> Result<HashMap<String, String>, BatchError> {
    parse_category_map(open(path)?)
}

/// Fills in labels for targets that have none. Labels from the target list win.
pub fn apply_categories(targets: &mut [ScanTarget], map: &HashMap<String, String>) {
    for t in targets.iter_mut().filter(|t| t.category.is_none()) {
        if let Some(c) = map.get(&t.domain) {
            *t = t.clone().with_category(c.clone());
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchConfig {
    /// Scans in flight at once.
    pub concurrency: usize,
    pub fetch: FetchConfig,
    pub scoring: ScoringConfig,
    /// Scan a target again once after a transient failure.
    pub retry_transient: bool,
}

impl Default for BatchConfig {
    fn default() -> Self {
        Self {
            concurrency: DEFAULT_CONCURRENCY,
            fetch: FetchConfig::default(),
            scoring: ScoringConfig::default(),
            retry_transient: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunTotals {
    pub requested: usize,
    pub succeeded: usize,
    pub unreachable: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestConfig {
    pub concurrency: usize,
    pub timeout_secs: f64,
    pub max_redirects: usize,
    pub user_agent: String,
    pub body_cap: usize,
    pub per_host_limit: usize,
    pub strict_contribute: bool,
    pub retry_transient: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub started: DateTime<Utc>,
    pub finished: DateTime<Utc>,
    pub totals: RunTotals,
    pub config: ManifestConfig,
}

/// Scans every target with at most `config.concurrency` in flight. Reports
/// come back ordered by rank regardless of completion order; a failed target
/// yields an unreachable report rather than an error.
pub async fn run_batch(
    targets: &[ScanTarget],
    config: &BatchConfig,
) -> Result<(Vec<ScanReport>, RunManifest), BatchError> {
    let started = Utc::now();
    let scanner = Scanner::new(config.fetch.clone(), config.scoring)?.retry_transient(config.retry_transient);

    let mut order: Vec<usize> = (0..targets.len()).collect();
    order.sort_by_key(|i| (targets[*i].rank.unwrap_or(u64::MAX), *i));

    let scanner = &scanner;
    let reports: Vec<ScanReport> = stream::iter(order.iter().map(|i| &targets[*i]))
        .map(|t| async move { scanner.scan(t).await })
        .buffered(config.concurrency.max(1))
        .collect()
        .await;

    let unreachable = reports.iter().filter(|r| r.unreachable).count();
    let manifest = RunManifest {
        started,
        finished: Utc::now(),
        totals: RunTotals {
            requested: targets.len(),
            succeeded: reports.len() - unreachable,
            unreachable,
        },
        config: ManifestConfig {
            concurrency: config.concurrency,
            timeout_secs: config.fetch.timeout.as_secs_f64(),
            max_redirects: config.fetch.max_redirects,
            user_agent: config.fetch.user_agent.clone(),
            body_cap: config.fetch.body_cap,
            per_host_limit: config.fetch.per_host_limit,
            strict_contribute: config.scoring.strict_contribute,
            retry_transient: config.retry_transient,
        },
    };
    log::info!(
        "scanned {} targets: {} ok, {} unreachable",
        manifest.totals.requested,
        manifest.totals.succeeded,
        manifest.totals.unreachable
    );
    Ok((reports, manifest))
}

/// Writes `reports.jsonl` and `manifest.json` into `dir`, creating it.
pub fn write_run(dir: &Path, reports: &[ScanReport], manifest: &RunManifest) -> Result<(), BatchError> {
    std::fs::create_dir_all(dir)?;
    write_records(BufWriter::new(File::create(dir.join(REPORTS_FILE))?), reports)?;
    let mut m = serde_json::to_string_pretty(manifest)?;
    m.push('\n');
    std::fs::write(dir.join(MANIFEST_FILE), m)?;
    Ok(())
}

/// Reads reports from a run directory or a single records file.
pub fn read_run(path: &Path) -> Result<Vec<ScanReport>, BatchError> {
    let file = if path.is_dir() { path.join(REPORTS_FILE) } else { path.to_path_buf() };
    Ok(read_records(open(&file)?)?)
}
