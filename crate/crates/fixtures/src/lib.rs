//! Loopback fixture web server.
//!
//! A single TCP listener serves both plain HTTP and TLS: the first byte of each
//! connection decides (`0x16` is a TLS handshake record). Sites are selected by
//! SNI for TLS and by the `Host` header for both, so a client that routes every
//! hostname to [`FixtureServer::addr`] sees an ordinary multi-site web.
//!
//! Connections are one request each and always answered with
//! `Connection: close`.

mod corpus;
mod server;

pub use corpus::{corpus, CDN_HOST, FIXTURE_DOMAIN};
pub use server::{FixtureServer, RecordedRequest};

/// How a site answers on one scheme.
#[derive(Debug, Clone)]
pub enum Endpoint {
    /// Drop the connection without answering (TLS: before the handshake completes).
    Refuse,
    /// Answer every path with a redirect.
    Redirect { status: u16, location: String },
    /// Redirect forever: `/` goes to `/loop/1`, `/loop/n` goes to `/loop/n+1`.
    Loop,
    /// Serve a page with status 200.
    Page(Page),
}

#[derive(Debug, Clone, Default)]
pub struct Page {
    pub headers: Vec<(String, String)>,
    pub body: String,
}

impl Page {
    pub fn new(body: impl Into<String>) -> Self {
        Self {
            headers: Vec::new(),
            body: body.into(),
        }
    }

    pub fn header(mut self, name: &str, value: &str) -> Self {
        self.headers.push((name.to_string(), value.to_string()));
        self
    }

    /// Drops every header with this name (case-insensitive).
    pub fn without(mut self, name: &str) -> Self {
        self.headers.retain(|(n, _)| !n.eq_ignore_ascii_case(name));
        self
    }

    /// Replaces all headers with this name by a single value.
    pub fn set(self, name: &str, value: &str) -> Self {
        self.without(name).header(name, value)
    }
}

/// How a site reacts to a request carrying an `Origin` header.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum CorsMode {
    #[default]
    Ignore,
    Reflect,
    ReflectWithCredentials,
}

/// Response for `GET /contribute.json`.
#[derive(Debug, Clone)]
pub struct Contribute {
    pub status: u16,
    pub content_type: String,
    pub body: String,
}

#[derive(Debug, Clone)]
pub struct Site {
    pub host: String,
    pub http: Endpoint,
    pub https: Endpoint,
    pub contribute: Option<Contribute>,
    pub cors: CorsMode,
}

impl Site {
    pub fn new(host: impl Into<String>, http: Endpoint, https: Endpoint) -> Self {
        Self {
            host: host.into(),
            http,
            https,
            contribute: None,
            cors: CorsMode::Ignore,
        }
    }

    pub fn with_contribute(mut self, status: u16, content_type: &str, body: &str) -> Self {
        self.contribute = Some(Contribute {
            status,
            content_type: content_type.to_string(),
            body: body.to_string(),
        });
        self
    }

    pub fn with_cors(mut self, cors: CorsMode) -> Self {
        self.cors = cors;
        self
    }
}
