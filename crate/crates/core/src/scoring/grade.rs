use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Category, ScoreError, TestResult};

pub const BASE_SCORE: i32 = 100;
/// Baseline needed before bonuses count.
pub const EXTRA_CREDIT_THRESHOLD: i32 = 90;
pub const MAX_SCORE: i32 = 135;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Grade {
    #[serde(rename = "A+")]
    APlus,
    A,
    #[serde(rename = "A-")]
    AMinus,
    #[serde(rename = "B+")]
    BPlus,
    B,
    #[serde(rename = "B-")]
    BMinus,
    #[serde(rename = "C+")]
    CPlus,
    C,
    #[serde(rename = "C-")]
    CMinus,
    #[serde(rename = "D+")]
    DPlus,
    D,
    #[serde(rename = "D-")]
    DMinus,
    F,
}

impl Grade {
    /// Best first.
    pub const ALL: [Grade; 13] = [
        Grade::APlus,
        Grade::A,
        Grade::AMinus,
        Grade::BPlus,
        Grade::B,
        Grade::BMinus,
        Grade::CPlus,
        Grade::C,
        Grade::CMinus,
        Grade::DPlus,
        Grade::D,
        Grade::DMinus,
        Grade::F,
    ];

    /// Inclusive score range of the band.
    pub const fn band(self) -> (i32, i32) {
        match self {
            Grade::APlus => (100, 135),
            Grade::A => (90, 95),
            Grade::AMinus => (85, 85),
            Grade::BPlus => (80, 80),
            Grade::B => (70, 75),
            Grade::BMinus => (65, 65),
            Grade::CPlus => (60, 60),
            Grade::C => (50, 55),
            Grade::CMinus => (45, 45),
            Grade::DPlus => (40, 40),
            Grade::D => (30, 35),
            Grade::DMinus => (25, 25),
            Grade::F => (0, 20),
        }
    }

    pub const fn as_str(self) -> &'static str {
        match self {
            Grade::APlus => "A+",
            Grade::A => "A",
            Grade::AMinus => "A-",
            Grade::BPlus => "B+",
            Grade::B => "B",
            Grade::BMinus => "B-",
            Grade::CPlus => "C+",
            Grade::C => "C",
            Grade::CMinus => "C-",
            Grade::DPlus => "D+",
            Grade::D => "D",
            Grade::DMinus => "D-",
            Grade::F => "F",
        }
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for Grade {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().replace('\u{2212}', "-");
        Grade::ALL
            .into_iter()
            .find(|g| g.as_str() == s)
            .ok_or_else(|| format!("unknown grade {s:?}"))
    }
}

/// Maps a final score to its band.
pub fn assign_grade(score: i32) -> Result<Grade, ScoreError> {
    if !(0..=MAX_SCORE).contains(&score) || score % 5 != 0 {
        return Err(ScoreError::InvalidScore(score));
    }
    Ok(Grade::ALL
        .into_iter()
        .find(|g| {
            let (lo, hi) = g.band();
            lo <= score && score <= hi
        })
        .expect("bands cover every multiple of five in range"))
}

/// Returns `(baseline, final)`. The baseline is 100 plus every penalty;
/// bonuses are added only when the baseline is at least 90. The final score
/// is clamped to `[0, 135]`.
pub fn compute_score(results: &[TestResult]) -> Result<(i32, i32), ScoreError> {
    let mut seen = [false; Category::ALL.len()];
    for r in results {
        let i = Category::ALL
            .iter()
            .position(|c| *c == r.category)
            .expect("ALL lists every category");
        if seen[i] {
            return Err(ScoreError::DuplicateCategory(r.category));
        }
        seen[i] = true;
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(ScoreError::MissingCategory(Category::ALL[i]));
    }

    let penalties: i32 = results.iter().map(|r| r.modifier.min(0)).sum();
    let bonuses: i32 = results.iter().map(|r| r.modifier.max(0)).sum();
    let baseline = BASE_SCORE + penalties;
    let total = if baseline >= EXTRA_CREDIT_THRESHOLD {
        baseline + bonuses
    } else {
        baseline
    };
    Ok((baseline, total.clamp(0, MAX_SCORE)))
}
