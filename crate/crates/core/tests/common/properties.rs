//! Property checks shared by the `properties` and `acceptance` targets. Each
//! takes a case count and reports the first counterexample as an error.

#![allow(dead_code)]

use headerscore::fetcher::{ContributeProbe, HttpExchange, Landing};
use headerscore::html::{extract_meta, inventory_subresources};
use headerscore::parsers::{parse_csp, parse_hpkp, parse_hsts, parse_set_cookie, parse_simple};
use headerscore::reporting::{aggregate_by_category, grade_distribution, header_matrix, sample_size};
use headerscore::scoring::{assign_grade, compute_score, evaluate_redirection, ContributeEvidence, Outcome};
use headerscore::target::normalize_domain;
use headerscore::{assess, Category, Headers, ScanReport, ScanTarget, ScoringConfig, TestResult};
use proptest::prelude::*;
use proptest::sample::select;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use url::Url;

use super::strategies::*;

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

fn check_result(r: &TestResult) -> Result<(), TestCaseError> {
    let (lo, hi) = r.category.bounds();
    prop_assert!(lo <= r.modifier && r.modifier <= hi, "{:?} outside {:?}", r, (lo, hi));
    prop_assert_eq!(r.modifier % 5, 0);
    prop_assert_eq!(r.outcome.category(), r.category);
    prop_assert_eq!(r.outcome.modifier(), r.modifier);
    Ok(())
}

fn check_report(r: &ScanReport) -> Result<(), TestCaseError> {
    let cats: Vec<Category> = r.results.iter().map(|t| t.category).collect();
    prop_assert_eq!(cats, Category::ALL.to_vec());
    for t in &r.results {
        check_result(t)?;
    }
    prop_assert!((0..=135).contains(&r.final_score));
    prop_assert_eq!(assign_grade(r.final_score).ok(), Some(r.grade));
    prop_assert_eq!(compute_score(&r.results).ok(), Some((r.baseline, r.final_score)));
    Ok(())
}

/// Arbitrary bytes or header-shaped text.
fn input_bytes() -> impl Strategy<Value = Vec<u8>> {
    prop_oneof![
        prop::collection::vec(any::<u8>(), 0..256),
        csp_header().prop_map(String::into_bytes),
        hsts_header().prop_map(String::into_bytes),
        cookie_line().prop_map(String::into_bytes),
        hpkp_header().prop_map(String::into_bytes),
        page_body().prop_map(String::into_bytes),
    ]
}

/// Every parser accepts every input without panicking.
pub fn parser_totality(cases: u32) -> Result<(), String> {
    let origin = Url::parse("https://www.site.test/").unwrap();
    run(cases, (input_bytes(), any::<u16>()), |(bytes, status)| {
        let text = String::from_utf8_lossy(&bytes);
        let _ = parse_csp(&text).to_string();
        let _ = parse_hsts(&text).to_string();
        let _ = parse_set_cookie(&text).to_string();
        let _ = parse_hpkp(&text);
        for name in ["x-content-type-options", "x-frame-options", "referrer-policy", "x-xss-protection", "x-other"] {
            let _ = parse_simple(name, &text);
        }
        let _ = inventory_subresources(&bytes, &origin);
        let _ = extract_meta(&bytes);
        let _ = normalize_domain(&text);
        let probe = ContributeProbe {
            status,
            content_type: Some(text.to_string()),
            body: bytes.clone(),
        };
        let _ = ContributeEvidence::from_probe(Some(&probe));
        Ok(())
    })
}

/// Serializing a parsed header and parsing it again gives the same value.
pub fn parser_round_trips(cases: u32) -> Result<(), String> {
    run(cases, (csp_header(), hsts_header(), cookie_line()), |(csp, hsts, cookie)| {
        let p = parse_csp(&csp);
        prop_assert_eq!(parse_csp(&p.to_string()), p.clone());

        let h = parse_hsts(&hsts);
        if h.parse_ok {
            prop_assert_eq!(parse_hsts(&h.to_string()), h);
        }

        let c = parse_set_cookie(&cookie);
        if !c.name.is_empty() {
            prop_assert_eq!(parse_set_cookie(&c.to_string()), c);
        }
        Ok(())
    })
}

fn landing() -> impl Strategy<Value = Landing> {
    (
        select(vec!["http://site.test/", "https://site.test/", "https://www.site.test/"]),
        landing_headers(),
        page_body(),
        any::<bool>(),
    )
        .prop_map(|(url, headers, body, truncated)| Landing {
            url: Url::parse(url).unwrap(),
            status: 200,
            set_cookie_lines: headers.get_all("set-cookie").map(str::to_string).collect(),
            headers,
            body: body.into_bytes(),
            body_truncated: truncated,
        })
}

fn exchange() -> impl Strategy<Value = HttpExchange> {
    let probe = prop::option::of(select(vec!["*", headerscore::parsers::PROBE_ORIGIN, "https://a.test"]).prop_map(
        |acao| {
            let mut h = Headers::new();
            h.push("access-control-allow-origin", acao);
            h
        },
    ));
    (
        redirect_chain(),
        prop::option::of(redirect_chain()),
        prop::option::weighted(0.9, landing()),
        probe,
        contribute_probe(),
    )
        .prop_map(|(chain, https_chain, landing, cors_probe, contribute_probe)| HttpExchange {
            chain,
            https_chain,
            landing,
            cors_probe,
            contribute_probe,
        })
}

/// Every evaluator stays inside its category bounds on multiples of 5, and
/// the assembled report is internally consistent.
pub fn evaluator_bounds(cases: u32) -> Result<(), String> {
    run(cases, (exchange(), any::<bool>()), |(exchange, strict)| {
        check_result(&evaluate_redirection(&exchange.chain, exchange.https_chain.as_ref()))?;
        let target = ScanTarget::new("site.test").unwrap();
        let report = assess(target, &exchange, &ScoringConfig { strict_contribute: strict });
        check_report(&report)?;
        if report.unreachable {
            prop_assert_eq!(report.final_score, 0);
        }
        Ok(())
    })
}

/// Raising one category's modifier never lowers the final score.
pub fn score_monotonicity(cases: u32) -> Result<(), String> {
    let strategy = (outcome_set(), 0..Category::ALL.len(), select(all_outcomes()));
    run(cases, strategy, |(mut outcomes, idx, replacement)| {
        let (_, before) = compute_score(&results_of(&outcomes)).unwrap();
        let cat = Category::ALL[idx];
        let Some(slot) = outcomes.iter_mut().find(|o| o.category() == cat) else {
            return Err(TestCaseError::fail("category missing"));
        };
        if replacement.category() != cat || replacement.modifier() <= slot.modifier() {
            return Ok(());
        }
        *slot = replacement;
        let (_, after) = compute_score(&results_of(&outcomes)).unwrap();
        prop_assert!(after >= before, "{} -> {}", before, after);
        Ok(())
    })
}

fn all_outcomes() -> Vec<Outcome> {
    Outcome::ALL.into_iter().chain([Outcome::ContributeJsonMissingStrict]).collect()
}

fn shuffled_reports() -> impl Strategy<Value = (Vec<ScanReport>, Vec<ScanReport>)> {
    reports().prop_flat_map(|r| (Just(r.clone()), Just(r).prop_shuffle()))
}

/// Aggregates do not depend on report order.
pub fn aggregation_permutation_invariance(cases: u32) -> Result<(), String> {
    run(cases, shuffled_reports(), |(a, b)| {
        prop_assert_eq!(aggregate_by_category(&a), aggregate_by_category(&b));
        prop_assert_eq!(grade_distribution(&a), grade_distribution(&b));
        prop_assert_eq!(header_matrix(&a), header_matrix(&b));
        Ok(())
    })
}

/// Counts add up, averages sit between extremes, percentages sum to 100.
pub fn aggregation_consistency(cases: u32) -> Result<(), String> {
    run(cases, reports(), |reports| {
        let rows = aggregate_by_category(&reports);
        prop_assert_eq!(rows.iter().map(|r| r.count).sum::<usize>(), reports.len());
        for r in &rows {
            prop_assert!(f64::from(r.min_score) <= r.avg_score && r.avg_score <= f64::from(r.max_score));
        }

        let d = grade_distribution(&reports);
        prop_assert_eq!(d.total, reports.len());
        prop_assert_eq!(d.rows.iter().map(|r| r.count).sum::<usize>(), reports.len());
        if !reports.is_empty() {
            let sum: f64 = d.rows.iter().map(|r| r.percent.as_f64()).sum();
            prop_assert!((sum - 100.0).abs() <= 0.05, "percentages sum to {}", sum);
        }
        Ok(())
    })
}

/// Non-increasing in margin, non-decreasing in confidence and population,
/// always within [1, N].
pub fn sample_size_monotonicity(cases: u32) -> Result<(), String> {
    let strategy = (
        1u64..10_000_000,
        1u64..10_000_000,
        0.005f64..0.5,
        0.005f64..0.5,
        0.5f64..0.999,
        0.5f64..0.999,
    );
    run(cases, strategy, |(n1, n2, e1, e2, c1, c2)| {
        let (n_lo, n_hi) = (n1.min(n2), n1.max(n2));
        let (e_lo, e_hi) = (e1.min(e2), e1.max(e2));
        let (c_lo, c_hi) = (c1.min(c2), c1.max(c2));
        let s = |n, c, e| sample_size(Some(n), c, e).unwrap();

        prop_assert!(s(n_lo, c_lo, e_lo) >= s(n_lo, c_lo, e_hi));
        prop_assert!(s(n_lo, c_lo, e_lo) <= s(n_hi, c_lo, e_lo));
        prop_assert!(s(n_lo, c_lo, e_lo) <= s(n_lo, c_hi, e_lo));
        prop_assert!(s(n_hi, c_lo, e_lo) <= sample_size(None, c_lo, e_lo).unwrap());
        let v = s(n_lo, c_hi, e_lo);
        prop_assert!(1 <= v && v <= n_lo);
        Ok(())
    })
}

fn element() -> impl Strategy<Value = Vec<String>> {
    let src = select(vec![
        "/app.js",
        "https://cdn.other.test/a.js",
        "http://cdn.other.test/a.js",
        "https://static.site.test/b.js",
        "//cdn.other.test/c.js",
    ]);
    (any::<bool>(), src, any::<bool>(), any::<bool>()).prop_map(|(script, src, sri, extra)| {
        let mut attrs = vec![format!("{}=\"{src}\"", if script { "src" } else { "href" })];
        attrs.push(if script { "data-kind=script".into() } else { "rel=stylesheet".into() });
        if sri {
            attrs.push("integrity=\"sha384-abc\"".into());
        }
        if extra {
            attrs.push("crossorigin=anonymous".into());
        }
        attrs
    })
}

fn render(elements: &[Vec<String>], comments: &[&str]) -> String {
    let mut html = String::from("<html><head>");
    for (i, attrs) in elements.iter().enumerate() {
        if let Some(c) = comments.get(i) {
            html.push_str(c);
        }
        let script = attrs.iter().any(|a| a.starts_with("src="));
        if script {
            html.push_str(&format!("<script {}></script>", attrs.join(" ")));
        } else {
            html.push_str(&format!("<link {}>", attrs.join(" ")));
        }
    }
    html.push_str("</head></html>");
    html
}

/// The inventory ignores comments and attribute order, and never lists one
/// element twice.
pub fn inventory_stability(cases: u32) -> Result<(), String> {
    let doc = prop::collection::vec(element(), 0..6).prop_flat_map(|els| {
        let shuffled: Vec<_> = els.iter().map(|a| Just(a.clone()).prop_shuffle()).collect();
        let comments = prop::collection::vec(
            select(vec![
                "",
                "<!-- x -->",
                "<!-- <script src=\"http://evil.test/x.js\"></script> -->",
                "<!---->",
            ]),
            els.len(),
        );
        (Just(els), shuffled, comments)
    });
    let origin = Url::parse("https://www.site.test/").unwrap();
    run(cases, doc, |(plain, shuffled, comments)| {
        let a = inventory_subresources(render(&plain, &[]).as_bytes(), &origin);
        let b = inventory_subresources(render(&shuffled, &comments).as_bytes(), &origin);
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.resources.len(), plain.len());
        Ok(())
    })
}
