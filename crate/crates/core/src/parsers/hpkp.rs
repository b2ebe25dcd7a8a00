//! `Public-Key-Pins` parsing.

use super::hsts::unquote;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HpkpEvidence {
    pub present: bool,
    pub pin_count: usize,
    pub max_age: Option<u64>,
    pub include_subdomains: bool,
    pub parse_ok: bool,
}

impl HpkpEvidence {
    pub fn absent() -> Self {
        Self::default()
    }

    /// Well-formed, at least two pins (one backup) and a max-age.
    pub fn is_valid(&self) -> bool {
        self.present && self.parse_ok && self.pin_count >= 2 && self.max_age.is_some()
    }
}

pub fn parse_hpkp(raw: &str) -> HpkpEvidence {
    let invalid = HpkpEvidence {
        present: true,
        ..HpkpEvidence::default()
    };
    let mut ev = HpkpEvidence {
        present: true,
        parse_ok: true,
        ..HpkpEvidence::default()
    };
    let mut seen_any = false;

    for part in raw.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        seen_any = true;
        let (name, value) = match part.split_once('=') {
            Some((n, v)) => (n.trim().to_ascii_lowercase(), Some(v.trim())),
            None => (part.to_ascii_lowercase(), None),
        };
        match name.as_str() {
            "pin-sha256" => {
                let Some(v) = value else { return invalid };
                if !(v.len() >= 2 && v.starts_with('"') && v.ends_with('"')) || unquote(v).is_empty() {
                    return invalid;
                }
                ev.pin_count += 1;
            }
            "max-age" => {
                if ev.max_age.is_some() {
                    return invalid;
                }
                match value.map(unquote).and_then(|v| v.parse::<u64>().ok()) {
                    Some(age) => ev.max_age = Some(age),
                    None => return invalid,
                }
            }
            "includesubdomains" => ev.include_subdomains = true,
            "report-uri" => {}
            _ if name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'-') => {}
            _ => return invalid,
        }
    }
    if !seen_any {
        return invalid;
    }
    ev
}
