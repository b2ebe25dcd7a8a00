//! Rubric evaluation, score arithmetic and grading.

mod category;
mod evaluate;
mod grade;
mod outcome;

pub use category::Category;
pub use evaluate::{
    evaluate_cookies, evaluate_cors, evaluate_csp, evaluate_hsts, evaluate_redirection, evaluate_simple,
    evaluate_sri, ContributeEvidence, SimpleEvidence, HSTS_MIN_MAX_AGE,
};
pub use grade::{assign_grade, compute_score, Grade, BASE_SCORE, EXTRA_CREDIT_THRESHOLD, MAX_SCORE};
pub use outcome::Outcome;

use serde::{Deserialize, Serialize};
use url::Url;

use crate::fetcher::HttpExchange;
use crate::headers::Headers;
use crate::html::{extract_meta, inventory_subresources, PageMeta, SriInventory};
use crate::parsers::{
    parse_csp, parse_hpkp, parse_hsts, parse_set_cookie, parse_simple, CorsEvidence, HpkpEvidence,
    SimpleHeaderEvidence,
};
use crate::target::ScanTarget;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScoreError {
    #[error("score {0} is not a multiple of 5 in [0, 135]")]
    InvalidScore(i32),
    #[error("category {0} scored more than once")]
    DuplicateCategory(Category),
    #[error("category {0} missing")]
    MissingCategory(Category),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestResult {
    pub category: Category,
    pub outcome: Outcome,
    pub modifier: i32,
    pub reason: String,
}

impl TestResult {
    pub fn new(outcome: Outcome, reason: impl Into<String>) -> Self {
        Self {
            category: outcome.category(),
            outcome,
            modifier: outcome.modifier(),
            reason: reason.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScoringConfig {
    /// Score a missing contribute.json as -10 instead of 0.
    pub strict_contribute: bool,
}

/// Everything known about one target after a scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub target: ScanTarget,
    /// One per category, in [`Category::ALL`] order.
    pub results: Vec<TestResult>,
    pub baseline: i32,
    pub final_score: i32,
    pub grade: Grade,
    pub unreachable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub final_url: Option<Url>,
    /// URLs visited from `http://<domain>/`.
    #[serde(default)]
    pub redirects: Vec<Url>,
    #[serde(default)]
    pub body_truncated: bool,
    #[serde(default)]
    pub meta: PageMeta,
}

impl ScanReport {
    /// Scores `results` and checks the category set.
    pub fn from_results(target: ScanTarget, mut results: Vec<TestResult>) -> Result<Self, ScoreError> {
        let (baseline, final_score) = compute_score(&results)?;
        results.sort_by_key(|r| r.category);
        Ok(Self {
            target,
            results,
            baseline,
            final_score,
            grade: assign_grade(final_score)?,
            unreachable: false,
            failure: None,
            final_url: None,
            redirects: Vec::new(),
            body_truncated: false,
            meta: PageMeta::default(),
        })
    }

    pub fn result(&self, category: Category) -> Option<&TestResult> {
        self.results.iter().find(|r| r.category == category)
    }

    pub fn modifier(&self, category: Category) -> Option<i32> {
        self.result(category).map(|r| r.modifier)
    }
}

/// Parsed inputs for all twelve checks.
#[derive(Debug, Clone, Default)]
struct Evidence {
    headers: Headers,
    cookie_lines: Vec<String>,
    cors_probe: Option<Headers>,
    sri: SriInventory,
    reached_https: bool,
    contribute: Option<ContributeEvidence>,
}

/// Scores an exchange. Unreachable targets are scored on empty evidence,
/// which always lands on 0.
pub fn assess(target: ScanTarget, exchange: &HttpExchange, config: &ScoringConfig) -> ScanReport {
    let mut evidence = Evidence::default();
    if let Some(l) = &exchange.landing {
        evidence.headers = l.headers.clone();
        evidence.cookie_lines = l.set_cookie_lines.clone();
        evidence.sri = inventory_subresources(&l.body, &l.url);
        evidence.reached_https = exchange.reached_https();
        evidence.cors_probe = exchange.cors_probe.clone();
        evidence.contribute = Some(ContributeEvidence::from_probe(exchange.contribute_probe.as_ref()));
    }
    let h = &evidence.headers;

    let csp_policy = h.get("content-security-policy").map(parse_csp);
    let csp = evaluate_csp(csp_policy.as_ref());
    let hsts = evaluate_hsts(
        h.get("strict-transport-security").map(parse_hsts).as_ref(),
        evidence.reached_https,
    );
    let cookies: Vec<_> = evidence.cookie_lines.iter().map(|l| parse_set_cookie(l)).collect();
    let cors = CorsEvidence::from_responses(h, evidence.cors_probe.as_ref());

    let mut simple = SimpleEvidence {
        hpkp: h.get("public-key-pins").map_or_else(HpkpEvidence::absent, parse_hpkp),
        csp_restricts_framing: csp_policy.as_ref().is_some_and(|p| p.parse_ok() && p.restricts_framing()),
        strong_csp: csp.modifier > 0,
        contribute: evidence.contribute.unwrap_or(ContributeEvidence::Absent),
        strict_contribute: config.strict_contribute,
        ..SimpleEvidence::default()
    };
    for name in ["x-content-type-options", "x-frame-options", "referrer-policy", "x-xss-protection"] {
        match h.get(name).and_then(|v| parse_simple(name, v)) {
            Some(SimpleHeaderEvidence::ContentTypeOptions { nosniff }) => simple.content_type_options = Some(nosniff),
            Some(SimpleHeaderEvidence::FrameOptions(f)) => simple.frame_options = Some(f),
            Some(SimpleHeaderEvidence::ReferrerPolicy(r)) => simple.referrer = Some(r),
            Some(SimpleHeaderEvidence::XssProtection(x)) => simple.xss = Some(x),
            None => {}
        }
    }

    let redirection = if exchange.is_reachable() {
        evaluate_redirection(&exchange.chain, exchange.https_chain.as_ref())
    } else {
        TestResult::new(Outcome::RedirectionUnscorable, "target unreachable")
    };

    let mut results = vec![
        csp,
        evaluate_cookies(&cookies),
        evaluate_cors(&cors),
        redirection,
        hsts,
        evaluate_sri(&evidence.sri),
    ];
    results.extend(evaluate_simple(&simple));

    let mut report = ScanReport::from_results(target, results).expect("one result per category");
    report.unreachable = !exchange.is_reachable();
    report.failure = exchange.failure_summary();
    report.redirects = exchange.chain.hops.iter().map(|h| h.url.clone()).collect();
    if let Some(l) = &exchange.landing {
        report.final_url = Some(l.url.clone());
        report.body_truncated = l.body_truncated;
        report.meta = extract_meta(&l.body);
    }
    report
}
