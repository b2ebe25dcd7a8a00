//! Corpus-level summaries of scan reports, plus record and table I/O.

mod io;
mod render;
mod sample;

pub use io::{
    read_records, write_aggregates_csv, write_distribution_csv, write_matrix_csv, write_records, ReportError,
};
pub use render::render_report;
pub use sample::{normal_quantile, sample_size, z_score, SampleSizeError};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::scoring::{Category, Grade, ScanReport};

/// Label used for reports without a category.
pub const UNKNOWN_CATEGORY: &str = "Unknown";

pub fn category_label(report: &ScanReport) -> &str {
    report.target.category.as_deref().unwrap_or(UNKNOWN_CATEGORY)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryAggregate {
    pub category: String,
    pub count: usize,
    pub avg_score: f64,
    pub max_score: i32,
    pub min_score: i32,
}

/// One row per category label, most populous first, ties by label.
pub fn aggregate_by_category(reports: &[ScanReport]) -> Vec<CategoryAggregate> {
    let mut groups: BTreeMap<&str, Vec<i32>> = BTreeMap::new();
    for r in reports {
        groups.entry(category_label(r)).or_default().push(r.final_score);
    }
    let mut rows: Vec<CategoryAggregate> = groups
        .into_iter()
        .map(|(label, scores)| {
            let sum: i64 = scores.iter().map(|s| i64::from(*s)).sum();
            CategoryAggregate {
                category: label.to_string(),
                count: scores.len(),
                avg_score: sum as f64 / scores.len() as f64,
                max_score: *scores.iter().max().expect("groups are non-empty"),
                min_score: *scores.iter().min().expect("groups are non-empty"),
            }
        })
        .collect();
    rows.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.category.cmp(&b.category)));
    rows
}

/// A share in hundredths of a percent, e.g. 5562 is 55.62%.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Percent(pub u32);

impl Percent {
    /// `count / total`, rounded half up to two decimals.
    pub fn of(count: usize, total: usize) -> Self {
        if total == 0 {
            return Self(0);
        }
        let (count, total) = (count as u128, total as u128);
        Self(((count * 20_000 + total) / (2 * total)) as u32)
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.0) / 100.0
    }
}

impl std::fmt::Display for Percent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.pad(&format!("{}.{:02}", self.0 / 100, self.0 % 100))
    }
}

/// Shares of `total` that sum to exactly 100.00 (largest remainder). Each
/// share is its exact value rounded down or up to two decimals.
pub fn apportion(counts: &[usize], total: usize) -> Vec<Percent> {
    if total == 0 {
        return vec![Percent(0); counts.len()];
    }
    let total = total as u128;
    let mut shares: Vec<(u128, u128)> = counts
        .iter()
        .map(|c| {
            let scaled = *c as u128 * 10_000;
            (scaled / total, scaled % total)
        })
        .collect();
    let assigned: u128 = shares.iter().map(|(q, _)| q).sum();
    let mut order: Vec<usize> = (0..shares.len()).collect();
    order.sort_by(|a, b| shares[*b].1.cmp(&shares[*a].1).then(a.cmp(b)));
    let missing = 10_000u128.saturating_sub(assigned) as usize;
    order.retain(|i| shares[*i].1 > 0);
    for i in order.into_iter().take(missing) {
        shares[i].0 += 1;
    }
    shares.into_iter().map(|(q, _)| Percent(q as u32)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradeRow {
    pub grade: Grade,
    pub count: usize,
    pub percent: Percent,
    /// Counts per label, aligned with [`GradeDistribution::categories`].
    pub by_category: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradeDistribution {
    pub total: usize,
    /// Category labels, sorted.
    pub categories: Vec<String>,
    /// One row per grade, best first.
    pub rows: Vec<GradeRow>,
    /// Reports per label.
    pub category_totals: Vec<usize>,
    pub zero_scores: usize,
    pub zero_score_percent: Percent,
}

impl GradeDistribution {
    pub fn row(&self, grade: Grade) -> &GradeRow {
        self.rows.iter().find(|r| r.grade == grade).expect("every grade has a row")
    }
}

pub fn grade_distribution(reports: &[ScanReport]) -> GradeDistribution {
    let mut categories: Vec<String> = reports.iter().map(|r| category_label(r).to_string()).collect();
    categories.sort();
    categories.dedup();

    let mut rows: Vec<GradeRow> = Grade::ALL
        .into_iter()
        .map(|grade| GradeRow {
            grade,
            count: 0,
            percent: Percent(0),
            by_category: vec![0; categories.len()],
        })
        .collect();
    let mut category_totals = vec![0; categories.len()];
    for r in reports {
        let col = categories
            .binary_search_by(|c| c.as_str().cmp(category_label(r)))
            .expect("label collected above");
        let row = rows.iter_mut().find(|row| row.grade == r.grade).expect("every grade has a row");
        row.count += 1;
        row.by_category[col] += 1;
        category_totals[col] += 1;
    }
    let counts: Vec<usize> = rows.iter().map(|r| r.count).collect();
    for (row, pct) in rows.iter_mut().zip(apportion(&counts, reports.len())) {
        row.percent = pct;
    }
    let zero_scores = reports.iter().filter(|r| r.final_score == 0).count();
    GradeDistribution {
        total: reports.len(),
        categories,
        rows,
        category_totals,
        zero_scores,
        zero_score_percent: Percent::of(zero_scores, reports.len()),
    }
}

/// Mean modifier per check and category label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeaderCategoryMatrix {
    /// Category labels, sorted.
    pub categories: Vec<String>,
    /// One row per check in [`Category::ALL`] order; `None` where no report
    /// of that label carries the check.
    pub rows: Vec<(Category, Vec<Option<f64>>)>,
}

impl HeaderCategoryMatrix {
    pub fn cell(&self, check: Category, label: &str) -> Option<f64> {
        let col = self.categories.iter().position(|c| c == label)?;
        let (_, cells) = self.rows.iter().find(|(c, _)| *c == check)?;
        cells[col]
    }
}

pub fn header_matrix(reports: &[ScanReport]) -> HeaderCategoryMatrix {
    let mut sums: BTreeMap<&str, BTreeMap<Category, (i64, usize)>> = BTreeMap::new();
    for r in reports {
        let by_check = sums.entry(category_label(r)).or_default();
        for t in &r.results {
            let cell = by_check.entry(t.category).or_default();
            cell.0 += i64::from(t.modifier);
            cell.1 += 1;
        }
    }
    let categories: Vec<String> = sums.keys().map(|k| k.to_string()).collect();
    let rows = Category::ALL
        .into_iter()
        .map(|check| {
            let cells = sums
                .values()
                .map(|by_check| by_check.get(&check).map(|(s, n)| *s as f64 / *n as f64))
                .collect();
            (check, cells)
        })
        .collect();
    HeaderCategoryMatrix { categories, rows }
}
