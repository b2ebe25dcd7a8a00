//! Every corpus site scanned end to end against hand-computed results.

mod common;

use common::golden::{corpus_mismatches, CASES, REFERENCE};
use common::{config_for, fixture};
use headerscore::scoring::Outcome::{self, *};
use headerscore::{Category, Grade, Scanner, ScoringConfig};
use headerscore_fixtures::FixtureServer;

#[tokio::test]
async fn corpus_matches_hand_computed_results() {
    assert!(CASES.len() >= 20);
    let server = FixtureServer::start().unwrap();
    let mismatches = corpus_mismatches(&server).await;
    assert!(mismatches.is_empty(), "{}", mismatches.join("\n"));
}

#[test]
fn corpus_covers_two_branches_per_category() {
    // branches exercised end to end by the corpus
    let mut covered: Vec<Outcome> = REFERENCE.to_vec();
    for case in CASES {
        covered.extend(case.changes);
    }
    let per_category = |c: Category| covered.iter().filter(|o| o.category() == c).count();
    for c in Category::ALL {
        assert!(per_category(c) >= 2, "{c} has a single branch in the corpus");
    }
}

#[tokio::test]
async fn scan_reports_metadata() {
    let server = FixtureServer::start().unwrap();
    let scanner = Scanner::new(config_for(&server), ScoringConfig::default()).unwrap();
    let report = scanner.scan(&fixture("good")).await;
    assert_eq!(report.meta.title.as_deref(), Some("Fixture"));
    assert_eq!(report.meta.description.as_deref(), Some("canned page"));
    assert_eq!(report.final_url.unwrap().as_str(), "https://good.fixture.test/");
    assert_eq!(report.redirects.len(), 2);
    assert_eq!(report.baseline, 100);
}

#[tokio::test]
async fn strict_contribute_penalizes_absence() {
    let server = FixtureServer::start().unwrap();
    let strict = ScoringConfig { strict_contribute: true };
    let scanner = Scanner::new(config_for(&server), strict).unwrap();
    let good = scanner.scan(&fixture("good")).await;
    assert_eq!(good.result(Category::Contribute).unwrap().outcome, ContributeJsonMissingStrict);
    // 90 + 35
    assert_eq!(good.final_score, 125);
    let valid = scanner.scan(&fixture("contribute-valid")).await;
    assert_eq!(valid.final_score, 135);
}

#[tokio::test]
async fn unreachable_target_scores_zero() {
    let server = FixtureServer::start().unwrap();
    let scanner = Scanner::new(config_for(&server), ScoringConfig::default()).unwrap();
    let report = scanner.scan(&headerscore::ScanTarget::new("missing.fixture.test").unwrap()).await;
    assert!(report.unreachable);
    assert_eq!((report.final_score, report.grade), (0, Grade::F));
    assert_eq!(report.result(Category::Redirection).unwrap().outcome, RedirectionUnscorable);
    assert_eq!(report.results.len(), 12);
    assert!(report.failure.is_some());
}
