use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TargetError {
    #[error("domain is empty")]
    Empty,
    #[error("domain must not carry a scheme: {0}")]
    HasScheme(String),
    #[error("invalid domain name {domain:?}: {reason}")]
    Invalid { domain: String, reason: &'static str },
}

/// A website to scan, as listed in a ranked domain list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanTarget {
    pub domain: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category: Option<String>,
}

impl ScanTarget {
    /// Validates and normalizes `domain` (lowercased, trailing dot removed).
    pub fn new(domain: &str) -> Result<Self, TargetError> {
        Ok(Self {
            domain: normalize_domain(domain)?,
            rank: None,
            category: None,
        })
    }

    pub fn with_rank(mut self, rank: u64) -> Self {
        self.rank = Some(rank);
        self
    }

    pub fn with_category(mut self, category: impl Into<String>) -> Self {
        let category = category.into();
        let category = category.trim();
        self.category = (!category.is_empty()).then(|| category.to_string());
        self
    }
}

impl fmt::Display for ScanTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.domain)
    }
}

pub fn normalize_domain(raw: &str) -> Result<String, TargetError> {
    let trimmed = raw.trim();
    if trimmed.is_empty() {
        return Err(TargetError::Empty);
    }
    if trimmed.contains("://") {
        return Err(TargetError::HasScheme(trimmed.to_string()));
    }
    let domain = trimmed.strip_suffix('.').unwrap_or(trimmed).to_ascii_lowercase();
    let invalid = |reason| TargetError::Invalid {
        domain: trimmed.to_string(),
        reason,
    };
    if domain.is_empty() {
        return Err(TargetError::Empty);
    }
    if domain.len() > 253 {
        return Err(invalid("longer than 253 characters"));
    }
    for label in domain.split('.') {
        if label.is_empty() {
            return Err(invalid("empty label"));
        }
        if label.len() > 63 {
            return Err(invalid("label longer than 63 characters"));
        }
        if !label.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'-') {
            return Err(invalid("labels may only contain letters, digits and '-'"));
        }
        if label.starts_with('-') || label.ends_with('-') {
            return Err(invalid("labels may not start or end with '-'"));
        }
    }
    Ok(domain)
}
