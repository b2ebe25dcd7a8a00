//! Single-token headers: X-Content-Type-Options, X-Frame-Options,
//! Referrer-Policy and X-XSS-Protection.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FrameOptions {
    Deny,
    SameOrigin,
    AllowFrom(String),
    Invalid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReferrerClass {
    Restrictive,
    Neutral,
    Leaky,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferrerPolicy {
    /// The policy browsers would apply, `None` when no token was recognized.
    pub policy: Option<String>,
    pub class: ReferrerClass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XssProtection {
    Disabled,
    Enabled,
    Block,
    Invalid,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimpleHeaderEvidence {
    ContentTypeOptions { nosniff: bool },
    FrameOptions(FrameOptions),
    ReferrerPolicy(ReferrerPolicy),
    XssProtection(XssProtection),
}

impl SimpleHeaderEvidence {
    pub fn is_valid(&self) -> bool {
        match self {
            Self::ContentTypeOptions { nosniff } => *nosniff,
            Self::FrameOptions(f) => *f != FrameOptions::Invalid,
            Self::ReferrerPolicy(r) => r.policy.is_some(),
            Self::XssProtection(x) => *x != XssProtection::Invalid,
        }
    }
}

const RESTRICTIVE: &[&str] = &[
    "no-referrer",
    "same-origin",
    "strict-origin",
    "strict-origin-when-cross-origin",
];
const NEUTRAL: &[&str] = &["origin", "origin-when-cross-origin", "no-referrer-when-downgrade"];

/// Classifies a header value. Returns `None` for header names this parser
/// does not handle.
pub fn parse_simple(name: &str, raw: &str) -> Option<SimpleHeaderEvidence> {
    let value = raw.trim();
    let evidence = match name.trim().to_ascii_lowercase().as_str() {
        "x-content-type-options" => SimpleHeaderEvidence::ContentTypeOptions {
            nosniff: value.eq_ignore_ascii_case("nosniff"),
        },
        "x-frame-options" => SimpleHeaderEvidence::FrameOptions(parse_frame_options(value)),
        "referrer-policy" => SimpleHeaderEvidence::ReferrerPolicy(parse_referrer_policy(value)),
        "x-xss-protection" => SimpleHeaderEvidence::XssProtection(parse_xss_protection(value)),
        _ => return None,
    };
    Some(evidence)
}

fn parse_frame_options(value: &str) -> FrameOptions {
    let mut tokens = value.split_ascii_whitespace();
    let first = tokens.next().unwrap_or_default().to_ascii_uppercase();
    let rest: Vec<&str> = tokens.collect();
    match (first.as_str(), rest.as_slice()) {
        ("DENY", []) => FrameOptions::Deny,
        ("SAMEORIGIN", []) => FrameOptions::SameOrigin,
        ("ALLOW-FROM", [uri]) => FrameOptions::AllowFrom(uri.to_string()),
        _ => FrameOptions::Invalid,
    }
}

fn parse_referrer_policy(value: &str) -> ReferrerPolicy {
    if value.is_empty() {
        return ReferrerPolicy {
            policy: None,
            class: ReferrerClass::Neutral,
        };
    }
    // browsers apply the last token they understand
    let policy = value
        .rsplit(',')
        .map(|t| t.trim().to_ascii_lowercase())
        .find(|t| RESTRICTIVE.contains(&t.as_str()) || NEUTRAL.contains(&t.as_str()) || t == "unsafe-url");
    let class = match policy.as_deref() {
        Some(p) if RESTRICTIVE.contains(&p) => ReferrerClass::Restrictive,
        Some(p) if NEUTRAL.contains(&p) => ReferrerClass::Neutral,
        _ => ReferrerClass::Leaky,
    };
    ReferrerPolicy { policy, class }
}

fn parse_xss_protection(value: &str) -> XssProtection {
    let mut parts = value.split(';').map(str::trim);
    let head = parts.next().unwrap_or_default();
    let rest: Vec<String> = parts
        .filter(|p| !p.is_empty())
        .map(|p| p.split_ascii_whitespace().collect::<String>().to_ascii_lowercase())
        .collect();
    match (head, rest.as_slice()) {
        ("0", []) => XssProtection::Disabled,
        ("1", []) => XssProtection::Enabled,
        ("1", [mode]) if mode == "mode=block" => XssProtection::Block,
        _ => XssProtection::Invalid,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn referrer(raw: &str) -> ReferrerPolicy {
        match parse_simple("Referrer-Policy", raw) {
            Some(SimpleHeaderEvidence::ReferrerPolicy(r)) => r,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn nosniff() {
        assert!(parse_simple("x-content-type-options", "nosniff").unwrap().is_valid());
        assert!(parse_simple("X-Content-Type-Options", " NoSniff ").unwrap().is_valid());
        assert!(!parse_simple("x-content-type-options", "sniff").unwrap().is_valid());
    }

    #[test]
    fn frame_options() {
        let xfo = |v| parse_simple("x-frame-options", v).unwrap();
        assert!(!xfo("ALLOWALL").is_valid());
        assert_eq!(xfo("deny"), SimpleHeaderEvidence::FrameOptions(FrameOptions::Deny));
        assert_eq!(xfo("SameOrigin"), SimpleHeaderEvidence::FrameOptions(FrameOptions::SameOrigin));
        assert_eq!(
            xfo("ALLOW-FROM https://a.test/"),
            SimpleHeaderEvidence::FrameOptions(FrameOptions::AllowFrom("https://a.test/".into()))
        );
        assert!(!xfo("ALLOW-FROM").is_valid());
        assert!(!xfo("DENY, SAMEORIGIN").is_valid());
    }

    #[test]
    fn referrer_classes() {
        assert_eq!(referrer("no-referrer").class, ReferrerClass::Restrictive);
        assert_eq!(referrer("strict-origin-when-cross-origin").class, ReferrerClass::Restrictive);
        assert_eq!(referrer("origin").class, ReferrerClass::Neutral);
        assert_eq!(referrer("").class, ReferrerClass::Neutral);
        assert_eq!(referrer("unsafe-url").class, ReferrerClass::Leaky);
        let bogus = referrer("everything-goes");
        assert_eq!(bogus.class, ReferrerClass::Leaky);
        assert_eq!(bogus.policy, None);
    }

    #[test]
    fn referrer_fallback_list_uses_last_known_token() {
        let r = referrer("unsafe-url, no-referrer, brand-new-policy");
        assert_eq!(r.policy.as_deref(), Some("no-referrer"));
        assert_eq!(r.class, ReferrerClass::Restrictive);
    }

    #[test]
    fn xss_protection_forms() {
        let x = |v| match parse_simple("x-xss-protection", v).unwrap() {
            SimpleHeaderEvidence::XssProtection(x) => x,
            _ => unreachable!(),
        };
        assert_eq!(x("0"), XssProtection::Disabled);
        assert_eq!(x("1"), XssProtection::Enabled);
        assert_eq!(x("1; mode=block"), XssProtection::Block);
        assert_eq!(x("1;MODE = block"), XssProtection::Block);
        assert_eq!(x("1; report=https://r.test"), XssProtection::Invalid);
        assert_eq!(x("yes"), XssProtection::Invalid);
    }

    #[test]
    fn unknown_header_name() {
        assert_eq!(parse_simple("server", "nginx"), None);
    }
}
