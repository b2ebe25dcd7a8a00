//! `Set-Cookie` parsing, one header line per cookie.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SameSite {
    Strict,
    Lax,
    None,
}

impl SameSite {
    fn parse(v: &str) -> Option<Self> {
        match v.trim().to_ascii_lowercase().as_str() {
            "strict" => Some(Self::Strict),
            "lax" => Some(Self::Lax),
            "none" => Some(Self::None),
            _ => None,
        }
    }
}

impl fmt::Display for SameSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Strict => "Strict",
            Self::Lax => "Lax",
            Self::None => "None",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CookieRecord {
    pub name: String,
    pub value: String,
    pub secure: bool,
    pub http_only: bool,
    pub same_site: Option<SameSite>,
    pub expires: Option<String>,
    pub max_age: Option<i64>,
    pub domain: Option<String>,
    pub path: Option<String>,
}

impl CookieRecord {
    /// A session cookie has neither `Expires` nor `Max-Age`.
    pub fn is_session(&self) -> bool {
        self.expires.is_none() && self.max_age.is_none()
    }
}

/// Parses one `Set-Cookie` line. A pair without `=` is read as a nameless
/// cookie, the way browsers do. Unknown or malformed attributes are ignored.
pub fn parse_set_cookie(raw: &str) -> CookieRecord {
    let mut parts = raw.split(';');
    let pair = parts.next().unwrap_or_default();
    let (name, value) = match pair.split_once('=') {
        Some((n, v)) => (n.trim(), v.trim()),
        None => ("", pair.trim()),
    };
    let mut cookie = CookieRecord {
        name: name.to_string(),
        value: value.to_string(),
        ..CookieRecord::default()
    };

    for attr in parts {
        let (key, val) = match attr.split_once('=') {
            Some((k, v)) => (k.trim(), Some(v.trim())),
            None => (attr.trim(), None),
        };
        match key.to_ascii_lowercase().as_str() {
            "secure" => cookie.secure = true,
            "httponly" => cookie.http_only = true,
            "samesite" => cookie.same_site = val.and_then(SameSite::parse),
            "expires" => {
                if let Some(v) = val.filter(|v| !v.is_empty()) {
                    cookie.expires = Some(v.to_string());
                }
            }
            "max-age" => {
                if let Some(v) = val.and_then(|v| v.parse::<i64>().ok()) {
                    cookie.max_age = Some(v);
                }
            }
            "domain" => cookie.domain = val.filter(|v| !v.is_empty()).map(str::to_string),
            "path" => cookie.path = val.filter(|v| !v.is_empty()).map(str::to_string),
            _ => {}
        }
    }
    cookie
}

impl fmt::Display for CookieRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.name, self.value)?;
        if let Some(e) = &self.expires {
            write!(f, "; Expires={e}")?;
        }
        if let Some(m) = self.max_age {
            write!(f, "; Max-Age={m}")?;
        }
        if let Some(d) = &self.domain {
            write!(f, "; Domain={d}")?;
        }
        if let Some(p) = &self.path {
            write!(f, "; Path={p}")?;
        }
        if self.secure {
            f.write_str("; Secure")?;
        }
        if self.http_only {
            f.write_str("; HttpOnly")?;
        }
        if let Some(s) = self.same_site {
            write!(f, "; SameSite={s}")?;
        }
        Ok(())
    }
}
