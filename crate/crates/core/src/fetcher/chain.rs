use std::fmt;

use serde::{Deserialize, Serialize};
use url::Url;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Http,
    Https,
}

impl Scheme {
    pub fn of(url: &Url) -> Option<Self> {
        match url.scheme() {
            "http" => Some(Self::Http),
            "https" => Some(Self::Https),
            _ => None,
        }
    }
}

/// One request in a redirect chain. `status` is `None` when the request
/// produced no response at all.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hop {
    pub url: Url,
    pub scheme: Scheme,
    pub host: String,
    pub status: Option<u16>,
    pub location: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub set_cookies: Vec<String>,
}

impl Hop {
    /// `url` must be http or https.
    pub fn new(url: Url, status: Option<u16>, location: Option<String>) -> Self {
        let scheme = Scheme::of(&url).expect("hop URLs are http or https");
        let host = url.host_str().unwrap_or_default().to_ascii_lowercase();
        Self {
            url,
            scheme,
            host,
            status,
            location,
            set_cookies: Vec::new(),
        }
    }

    pub fn is_redirect(&self) -> bool {
        self.status.is_some_and(|s| (300..400).contains(&s)) && self.location.is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureReason {
    Dns,
    Connect,
    Timeout,
    Tls,
    RedirectLoop,
    InvalidRedirect,
    Other,
}

impl FailureReason {
    /// Failures worth one retry.
    pub fn is_transient(self) -> bool {
        matches!(self, Self::Connect | Self::Timeout)
    }
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Dns => "dns",
            Self::Connect => "connect",
            Self::Timeout => "timeout",
            Self::Tls => "tls",
            Self::RedirectLoop => "redirect-loop",
            Self::InvalidRedirect => "invalid-redirect",
            Self::Other => "other",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "state", rename_all = "lowercase")]
pub enum Terminal {
    Ok,
    Failed { reason: FailureReason, detail: String },
}

/// Every request made from the first URL to the final response, in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RedirectChain {
    pub hops: Vec<Hop>,
    pub terminal: Terminal,
}

impl RedirectChain {
    pub fn is_ok(&self) -> bool {
        self.terminal == Terminal::Ok
    }

    pub fn failure(&self) -> Option<FailureReason> {
        match &self.terminal {
            Terminal::Ok => None,
            Terminal::Failed { reason, .. } => Some(*reason),
        }
    }

    pub fn first(&self) -> &Hop {
        &self.hops[0]
    }

    pub fn last(&self) -> &Hop {
        self.hops.last().expect("a chain has at least one hop")
    }

    /// Landed successfully on an https URL.
    pub fn reached_https(&self) -> bool {
        self.is_ok() && self.last().scheme == Scheme::Https
    }

    /// The very first request got no response (nothing listening, TLS
    /// refused, DNS failure).
    pub fn failed_before_response(&self) -> bool {
        !self.is_ok() && self.hops.len() == 1 && self.hops[0].status.is_none()
    }

    pub fn redirect_count(&self) -> usize {
        self.hops.iter().filter(|h| h.is_redirect()).count()
    }

    pub fn set_cookie_lines(&self) -> impl Iterator<Item = &str> {
        self.hops.iter().flat_map(|h| h.set_cookies.iter().map(String::as_str))
    }
}
