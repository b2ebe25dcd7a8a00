//! `Content-Security-Policy` parsing.

use std::fmt;

use indexmap::IndexMap;

/// A parsed policy and the flags the rubric reads from it.
///
/// The flags are derived from `directives` at construction time. A policy that
/// failed to parse carries no directives and no flags.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CspPolicy {
    directives: IndexMap<String, Vec<String>>,
    has_unsafe_inline: bool,
    has_unsafe_eval: bool,
    has_wildcard_script_or_default: bool,
    default_src_none: bool,
    parse_ok: bool,
}

impl CspPolicy {
    fn invalid() -> Self {
        Self::default()
    }

    fn from_directives(directives: IndexMap<String, Vec<String>>) -> Self {
        let default_src = directives.get("default-src");
        let script = directives.get("script-src").or(default_src);

        let has = |list: Option<&Vec<String>>, pred: &dyn Fn(&str) -> bool| {
            list.is_some_and(|l| l.iter().any(|s| pred(&s.to_ascii_lowercase())))
        };

        // nonces and hashes make browsers ignore 'unsafe-inline'
        let neutralized = has(script, &|s| {
            s.starts_with("'nonce-")
                || s.starts_with("'sha256-")
                || s.starts_with("'sha384-")
                || s.starts_with("'sha512-")
        });
        let has_unsafe_inline = !neutralized && has(script, &|s| s == "'unsafe-inline'");
        let has_unsafe_eval = has(script, &|s| s == "'unsafe-eval'");
        let has_wildcard_script_or_default = has(directives.get("script-src"), &is_wildcard_source)
            || has(default_src, &is_wildcard_source);
        let default_src_none = default_src.is_some_and(|l| {
            l.len() == 1 && l[0].eq_ignore_ascii_case("'none'")
        });

        Self {
            directives,
            has_unsafe_inline,
            has_unsafe_eval,
            has_wildcard_script_or_default,
            default_src_none,
            parse_ok: true,
        }
    }

    pub fn directives(&self) -> &IndexMap<String, Vec<String>> {
        &self.directives
    }

    pub fn directive(&self, name: &str) -> Option<&[String]> {
        self.directives
            .get(&name.to_ascii_lowercase())
            .map(Vec::as_slice)
    }

    pub fn has_unsafe_inline(&self) -> bool {
        self.has_unsafe_inline
    }

    pub fn has_unsafe_eval(&self) -> bool {
        self.has_unsafe_eval
    }

    pub fn has_wildcard_script_or_default(&self) -> bool {
        self.has_wildcard_script_or_default
    }

    pub fn default_src_none(&self) -> bool {
        self.default_src_none
    }

    pub fn parse_ok(&self) -> bool {
        self.parse_ok
    }

    /// True when `frame-ancestors` is declared and does not allow every origin.
    pub fn restricts_framing(&self) -> bool {
        self.directive("frame-ancestors")
            .is_some_and(|l| !l.iter().any(|s| is_wildcard_source(&s.to_ascii_lowercase())))
    }
}

fn is_wildcard_source(lower: &str) -> bool {
    matches!(lower, "*" | "http:" | "https:" | "data:")
}

fn valid_directive_name(name: &str) -> bool {
    !name.is_empty() && name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'-')
}

/// Parses one header value. Never fails; malformed input yields a policy with
/// `parse_ok() == false`.
pub fn parse_csp(raw: &str) -> CspPolicy {
    if raw.chars().any(|c| !c.is_ascii() || (c.is_ascii_control() && c != '\t')) {
        return CspPolicy::invalid();
    }
    let mut directives: IndexMap<String, Vec<String>> = IndexMap::new();
    for part in raw.split(';') {
        let mut tokens = part.split_ascii_whitespace();
        let Some(name) = tokens.next() else {
            continue;
        };
        if !valid_directive_name(name) {
            return CspPolicy::invalid();
        }
        let name = name.to_ascii_lowercase();
        if directives.contains_key(&name) {
            continue;
        }
        directives.insert(name, tokens.map(str::to_string).collect());
    }
    if directives.is_empty() {
        return CspPolicy::invalid();
    }
    CspPolicy::from_directives(directives)
}

impl fmt::Display for CspPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, sources)) in self.directives.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            f.write_str(name)?;
            for s in sources {
                write!(f, " {s}")?;
            }
        }
        Ok(())
    }
}
