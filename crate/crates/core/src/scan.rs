use crate::fetcher::{FetchConfig, FetchError, Fetcher};
use crate::scoring::{assess, ScanReport, ScoringConfig};
use crate::target::ScanTarget;

/// Fetch plus score. Share one scanner between concurrent scans so the
/// per-host limit applies across all of them.
pub struct Scanner {
    fetcher: Fetcher,
    scoring: ScoringConfig,
    retry_transient: bool,
}

impl Scanner {
    pub fn new(fetch: FetchConfig, scoring: ScoringConfig) -> Result<Self, FetchError> {
        Ok(Self {
            fetcher: Fetcher::new(fetch)?,
            scoring,
            retry_transient: true,
        })
    }

    /// Scan again once when nothing was reachable and a failure looked
    /// transient (connect error or timeout). On by default.
    pub fn retry_transient(mut self, on: bool) -> Self {
        self.retry_transient = on;
        self
    }

    pub fn fetcher(&self) -> &Fetcher {
        &self.fetcher
    }

    pub fn scoring(&self) -> &ScoringConfig {
        &self.scoring
    }

    pub async fn scan(&self, target: &ScanTarget) -> ScanReport {
        let mut exchange = self.fetcher.fetch(target).await;
        if self.retry_transient && !exchange.is_reachable() && exchange.failures().any(|f| f.is_transient()) {
            log::info!("{target}: retrying after {}", exchange.failure_summary().unwrap_or_default());
            exchange = self.fetcher.fetch(target).await;
        }
        let report = assess(target.clone(), &exchange, &self.scoring);
        log::debug!("{target}: {} ({})", report.final_score, report.grade);
        report
    }
}
