use std::fmt::Write as _;

use crate::scoring::{Grade, ScanReport};

fn paint(grade: Grade) -> String {
    let code = match grade.as_str().as_bytes()[0] {
        b'A' => "32",
        b'B' | b'C' => "33",
        _ => "31",
    };
    format!("\x1b[1;{code}m{grade}\x1b[0m")
}

/// Human-readable report: a summary line, then one row per check.
pub fn render_report(report: &ScanReport, color: bool) -> String {
    let grade = if color { paint(report.grade) } else { report.grade.to_string() };
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}  score {}/135  baseline {}  grade {}",
        report.target.domain, report.final_score, report.baseline, grade
    );
    if report.unreachable {
        let _ = writeln!(out, "unreachable: {}", report.failure.as_deref().unwrap_or("no response"));
    }
    if let Some(url) = &report.final_url {
        let _ = writeln!(out, "landed on {url}");
    }
    if report.redirects.len() > 1 {
        let chain: Vec<&str> = report.redirects.iter().map(|u| u.as_str()).collect();
        let _ = writeln!(out, "redirects: {}", chain.join(" -> "));
    }
    if let Some(title) = &report.meta.title {
        let _ = writeln!(out, "title: {title}");
    }
    if report.body_truncated {
        let _ = writeln!(out, "note: landing page truncated");
    }
    out.push('\n');

    let title_w = report.results.iter().map(|r| r.category.title().len()).max().unwrap_or(0);
    let outcome_w = report.results.iter().map(|r| r.outcome.code().len()).max().unwrap_or(0);
    let _ = writeln!(out, "{:title_w$}  {:outcome_w$}  {:>4}  reason", "check", "outcome", "mod");
    for r in &report.results {
        let _ = writeln!(
            out,
            "{:title_w$}  {:outcome_w$}  {:>+4}  {}",
            r.category.title(),
            r.outcome.code(),
            r.modifier,
            r.reason
        );
    }
    out
}
