//! One JSON record per line for scans; CSV with a header row for tables.

use std::io::{BufRead, Write};

use super::{CategoryAggregate, GradeDistribution, HeaderCategoryMatrix};
use crate::scoring::ScanReport;

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {source}")]
    Record {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub fn write_records<W: Write>(mut w: W, reports: &[ScanReport]) -> Result<(), ReportError> {
    for r in reports {
        serde_json::to_writer(&mut w, r)?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

/// Blank lines are skipped.
pub fn read_records<R: BufRead>(r: R) -> Result<Vec<ScanReport>, ReportError> {
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let report = serde_json::from_str(&line).map_err(|source| ReportError::Record { line: i + 1, source })?;
        out.push(report);
    }
    Ok(out)
}

/// Columns: category, count, avg_score, max_score, min_score.
pub fn write_aggregates_csv<W: Write>(w: W, rows: &[CategoryAggregate]) -> Result<(), ReportError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["category", "count", "avg_score", "max_score", "min_score"])?;
    for r in rows {
        out.write_record([
            r.category.clone(),
            r.count.to_string(),
            format!("{:.2}", r.avg_score),
            r.max_score.to_string(),
            r.min_score.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// Columns: grade, count, percent, then one count column per category label.
/// A final `total` row holds the per-label totals.
pub fn write_distribution_csv<W: Write>(w: W, d: &GradeDistribution) -> Result<(), ReportError> {
    let mut out = csv::Writer::from_writer(w);
    let mut header = vec!["grade".to_string(), "count".into(), "percent".into()];
    header.extend(d.categories.iter().cloned());
    out.write_record(&header)?;
    for row in &d.rows {
        let mut rec = vec![row.grade.to_string(), row.count.to_string(), row.percent.to_string()];
        rec.extend(row.by_category.iter().map(usize::to_string));
        out.write_record(&rec)?;
    }
    let hundred = if d.total > 0 { "100.00" } else { "0.00" };
    let mut total = vec!["total".to_string(), d.total.to_string(), hundred.to_string()];
    total.extend(d.category_totals.iter().map(usize::to_string));
    out.write_record(&total)?;
    out.flush()?;
    Ok(())
}

/// Columns: check, then one mean-modifier column per category label. Empty
/// cells mean no data.
pub fn write_matrix_csv<W: Write>(w: W, m: &HeaderCategoryMatrix) -> Result<(), ReportError> {
    let mut out = csv::Writer::from_writer(w);
    let mut header = vec!["check".to_string()];
    header.extend(m.categories.iter().cloned());
    out.write_record(&header)?;
    for (check, cells) in &m.rows {
        let mut rec = vec![check.code().to_string()];
        rec.extend(cells.iter().map(|c| c.map(|v| format!("{v:.2}")).unwrap_or_default()));
        out.write_record(&rec)?;
    }
    out.flush()?;
    Ok(())
}
