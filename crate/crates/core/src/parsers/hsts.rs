//! `Strict-Transport-Security` parsing.

use std::fmt;

/// Parsed HSTS header. When `parse_ok` is false every other field is default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct HstsDirective {
    pub max_age: u64,
    pub include_subdomains: bool,
    pub preload: bool,
    pub parse_ok: bool,
}

pub(crate) fn unquote(v: &str) -> &str {
    v.strip_prefix('"')
        .and_then(|v| v.strip_suffix('"'))
        .unwrap_or(v)
}

pub fn parse_hsts(raw: &str) -> HstsDirective {
    let invalid = HstsDirective::default();
    let mut max_age = None;
    let mut include_subdomains = false;
    let mut preload = false;

    for part in raw.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (name, value) = match part.split_once('=') {
            Some((n, v)) => (n.trim(), Some(unquote(v.trim()))),
            None => (part, None),
        };
        if name.eq_ignore_ascii_case("max-age") {
            if max_age.is_some() {
                return invalid;
            }
            let Some(v) = value.filter(|v| !v.is_empty() && v.bytes().all(|b| b.is_ascii_digit())) else {
                return invalid;
            };
            // absurdly long values saturate rather than fail
            max_age = Some(v.parse::<u64>().unwrap_or(u64::MAX));
        } else if name.eq_ignore_ascii_case("includesubdomains") {
            if include_subdomains {
                return invalid;
            }
            include_subdomains = true;
        } else if name.eq_ignore_ascii_case("preload") {
            if preload {
                return invalid;
            }
            preload = true;
        }
    }

    match max_age {
        Some(max_age) => HstsDirective {
            max_age,
            include_subdomains,
            preload,
            parse_ok: true,
        },
        None => invalid,
    }
}

impl fmt::Display for HstsDirective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.parse_ok {
            return Ok(());
        }
        write!(f, "max-age={}", self.max_age)?;
        if self.include_subdomains {
            f.write_str("; includeSubDomains")?;
        }
        if self.preload {
            f.write_str("; preload")?;
        }
        Ok(())
    }
}
