//! Landing-page retrieval.
//!
//! A scan starts with `GET http://<domain>/` and follows redirects by hand so
//! every hop is recorded. When that chain never lands on https, a second
//! chain starting at `https://<domain>/` is tried. From the landing origin two
//! more requests are made: the same URL with a foreign `Origin` header (CORS
//! reflection probe) and `GET /contribute.json`.

mod chain;

pub use chain::{FailureReason, Hop, RedirectChain, Scheme, Terminal};

use std::collections::HashMap;
use std::error::Error as _;
use std::net::SocketAddr;
use std::sync::{Arc, Mutex};
use std::time::Duration;

use reqwest::dns::{Addrs, Name, Resolve, Resolving};
use reqwest::header::{HeaderValue, ORIGIN};
use serde::{Deserialize, Serialize};
use tokio::sync::{OwnedSemaphorePermit, Semaphore};
use url::Url;

use crate::headers::Headers;
use crate::parsers::PROBE_ORIGIN;
use crate::target::ScanTarget;

pub const DEFAULT_USER_AGENT: &str = "Mozilla/5.0 (Windows NT 10.0; Win64; x64) AppleWebKit/537.36 (KHTML, like Gecko) Chrome/110.0.0.0 Safari/537.36";
pub const DEFAULT_MAX_REDIRECTS: usize = 20;
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(15);
pub const DEFAULT_BODY_CAP: usize = 1024 * 1024;

#[derive(Debug, thiserror::Error)]
pub enum FetchError {
    #[error("invalid CA certificate: {0}")]
    Certificate(#[source] reqwest::Error),
    #[error("failed to build HTTP client: {0}")]
    Client(#[source] reqwest::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FetchConfig {
    /// Per request, body included.
    #[serde(with = "duration_secs")]
    pub timeout: Duration,
    /// Redirects followed per chain before failing with `redirect-loop`.
    pub max_redirects: usize,
    pub user_agent: String,
    /// Landing-page bytes kept; the rest is dropped and flagged.
    pub body_cap: usize,
    /// Concurrent requests allowed per host across all scans sharing a fetcher.
    pub per_host_limit: usize,
    /// Send every connection to this address instead of resolving names.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connect_override: Option<SocketAddr>,
    /// Extra trusted roots, PEM.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extra_root_certs: Vec<String>,
}

impl Default for FetchConfig {
    fn default() -> Self {
        Self {
            timeout: DEFAULT_TIMEOUT,
            max_redirects: DEFAULT_MAX_REDIRECTS,
            user_agent: DEFAULT_USER_AGENT.to_string(),
            body_cap: DEFAULT_BODY_CAP,
            per_host_limit: 1,
            connect_override: None,
            extra_root_certs: Vec::new(),
        }
    }
}

mod duration_secs {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        let secs = f64::deserialize(d)?;
        Duration::try_from_secs_f64(secs).map_err(serde::de::Error::custom)
    }
}

/// The response a scan is scored on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Landing {
    pub url: Url,
    pub status: u16,
    pub headers: Headers,
    /// Every `Set-Cookie` line seen along the chain that produced this response.
    pub set_cookie_lines: Vec<String>,
    pub body: Vec<u8>,
    pub body_truncated: bool,
}

impl Landing {
    pub fn scheme(&self) -> Scheme {
        Scheme::of(&self.url).unwrap_or(Scheme::Http)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContributeProbe {
    pub status: u16,
    pub content_type: Option<String>,
    pub body: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HttpExchange {
    /// Chain that starts at `http://<domain>/`.
    pub chain: RedirectChain,
    /// Direct `https://<domain>/` attempt, made only when `chain` did not land on https.
    pub https_chain: Option<RedirectChain>,
    pub landing: Option<Landing>,
    /// Headers of the landing URL requested again with `Origin: PROBE_ORIGIN`.
    pub cors_probe: Option<Headers>,
    pub contribute_probe: Option<ContributeProbe>,
}

impl HttpExchange {
    pub fn is_reachable(&self) -> bool {
        self.landing.is_some()
    }

    pub fn reached_https(&self) -> bool {
        self.landing.as_ref().is_some_and(|l| l.scheme() == Scheme::Https)
    }

    /// Failure reasons of both chains, http first.
    pub fn failures(&self) -> impl Iterator<Item = FailureReason> + '_ {
        std::iter::once(&self.chain)
            .chain(self.https_chain.as_ref())
            .filter_map(RedirectChain::failure)
    }

    /// One-line account of why nothing was reachable.
    pub fn failure_summary(&self) -> Option<String> {
        if self.is_reachable() {
            return None;
        }
        let describe = |label: &str, chain: &RedirectChain| match &chain.terminal {
            Terminal::Failed { reason, detail } => format!("{label}: {reason} ({detail})"),
            Terminal::Ok => format!("{label}: ok"),
        };
        let mut parts = vec![describe("http", &self.chain)];
        if let Some(c) = &self.https_chain {
            parts.push(describe("https", c));
        }
        Some(parts.join("; "))
    }
}

struct FixedResolver(SocketAddr);

impl Resolve for FixedResolver {
    fn resolve(&self, _name: Name) -> Resolving {
        let addr = self.0;
        Box::pin(async move { Ok(Box::new(std::iter::once(addr)) as Addrs) })
    }
}

/// Limits concurrent requests per host.
struct HostGate {
    limit: usize,
    hosts: Mutex<HashMap<String, Arc<Semaphore>>>,
}

impl HostGate {
    async fn acquire(&self, host: &str) -> OwnedSemaphorePermit {
        let sem = {
            let mut hosts = self.hosts.lock().unwrap_or_else(|e| e.into_inner());
            Arc::clone(
                hosts
                    .entry(host.to_string())
                    .or_insert_with(|| Arc::new(Semaphore::new(self.limit.max(1)))),
            )
        };
        sem.acquire_owned().await.expect("host semaphores are never closed")
    }
}

struct Response {
    status: u16,
    headers: Headers,
    body: Vec<u8>,
    truncated: bool,
}

type RequestFailure = (FailureReason, String);

/// Shared HTTP client. Cheap to share between concurrent scans.
pub struct Fetcher {
    client: reqwest::Client,
    config: FetchConfig,
    gate: HostGate,
}

impl Fetcher {
    pub fn new(config: FetchConfig) -> Result<Self, FetchError> {
        let mut builder = reqwest::Client::builder()
            .redirect(reqwest::redirect::Policy::none())
            .user_agent(config.user_agent.clone())
            .connect_timeout(config.timeout)
            .timeout(config.timeout);
        if let Some(addr) = config.connect_override {
            builder = builder.dns_resolver(FixedResolver(addr));
        }
        let mut certs = Vec::new();
        for pem in &config.extra_root_certs {
            certs.extend(
                reqwest::Certificate::from_pem_bundle(pem.as_bytes()).map_err(FetchError::Certificate)?,
            );
        }
        if !certs.is_empty() {
            builder = builder.tls_certs_merge(certs);
        }
        let client = builder.build().map_err(FetchError::Client)?;
        Ok(Self {
            client,
            gate: HostGate {
                limit: config.per_host_limit,
                hosts: Mutex::new(HashMap::new()),
            },
            config,
        })
    }

    pub fn config(&self) -> &FetchConfig {
        &self.config
    }

    /// Fetches the landing page of `target` plus the two auxiliary probes.
    pub async fn fetch(&self, target: &ScanTarget) -> HttpExchange {
        let http_start = Url::parse(&format!("http://{}/", target.domain))
            .expect("validated domains form valid URLs");
        let (chain, http_landing) = self.follow(http_start).await;

        let (https_chain, https_landing) = if chain.reached_https() {
            (None, None)
        } else {
            let start = Url::parse(&format!("https://{}/", target.domain))
                .expect("validated domains form valid URLs");
            let (c, l) = self.follow(start).await;
            (Some(c), l)
        };

        // prefer whichever chain landed on https
        let landing = match (http_landing, https_landing) {
            (Some(h), _) if h.scheme() == Scheme::Https => Some(h),
            (_, Some(s)) if s.scheme() == Scheme::Https => Some(s),
            (Some(h), _) => Some(h),
            (None, s) => s,
        };

        let (cors_probe, contribute_probe) = match &landing {
            Some(l) => {
                let cors = self
                    .request(&l.url, Some(PROBE_ORIGIN), 0)
                    .await
                    .ok()
                    .map(|r| r.headers);
                (cors, self.probe_contribute(&l.url).await)
            }
            None => (None, None),
        };

        HttpExchange {
            chain,
            https_chain,
            landing,
            cors_probe,
            contribute_probe,
        }
    }

    /// `GET /contribute.json` at the origin of `landed`. Absent on 404 or
    /// network failure.
    pub async fn probe_contribute(&self, landed: &Url) -> Option<ContributeProbe> {
        let url = landed.join("/contribute.json").ok()?;
        let resp = self.request(&url, None, self.config.body_cap).await.ok()?;
        if resp.status == 404 {
            return None;
        }
        Some(ContributeProbe {
            status: resp.status,
            content_type: resp.headers.get("content-type").map(str::to_string),
            body: resp.body,
        })
    }

    async fn follow(&self, start: Url) -> (RedirectChain, Option<Landing>) {
        let mut hops: Vec<Hop> = Vec::new();
        let mut url = start;
        loop {
            let resp = match self.request(&url, None, self.config.body_cap).await {
                Ok(r) => r,
                Err((reason, detail)) => {
                    hops.push(Hop::new(url, None, None));
                    return (
                        RedirectChain {
                            hops,
                            terminal: Terminal::Failed { reason, detail },
                        },
                        None,
                    );
                }
            };
            let location = resp.headers.get("location").map(str::to_string);
            let mut hop = Hop::new(url.clone(), Some(resp.status), location.clone());
            hop.set_cookies = resp.headers.get_all("set-cookie").map(str::to_string).collect();
            let is_redirect = hop.is_redirect();
            hops.push(hop);

            if !is_redirect {
                let set_cookie_lines = hops.iter().flat_map(|h| h.set_cookies.iter().cloned()).collect();
                let landing = Landing {
                    url,
                    status: resp.status,
                    headers: resp.headers,
                    set_cookie_lines,
                    body: resp.body,
                    body_truncated: resp.truncated,
                };
                return (
                    RedirectChain {
                        hops,
                        terminal: Terminal::Ok,
                    },
                    Some(landing),
                );
            }

            let fail = |hops, reason, detail: String| {
                (
                    RedirectChain {
                        hops,
                        terminal: Terminal::Failed { reason, detail },
                    },
                    None,
                )
            };
            if hops.len() > self.config.max_redirects {
                let detail = format!("more than {} redirects", self.config.max_redirects);
                return fail(hops, FailureReason::RedirectLoop, detail);
            }
            let location = location.unwrap_or_default();
            match url.join(location.trim()) {
                Ok(next) if Scheme::of(&next).is_some() && next.host_str().is_some() => url = next,
                _ => {
                    let detail = format!("unusable Location {location:?}");
                    return fail(hops, FailureReason::InvalidRedirect, detail);
                }
            }
        }
    }

    async fn request(&self, url: &Url, origin: Option<&str>, body_cap: usize) -> Result<Response, RequestFailure> {
        let host = url.host_str().unwrap_or_default().to_ascii_lowercase();
        let _permit = self.gate.acquire(&host).await;

        let mut req = self.client.get(url.clone());
        if let Some(origin) = origin {
            req = req.header(ORIGIN, origin);
        }
        let mut resp = req.send().await.map_err(|e| (classify(&e), error_chain(&e)))?;

        let status = resp.status().as_u16();
        let headers: Headers = resp
            .headers()
            .iter()
            .map(|(n, v)| (n.as_str().to_string(), lossy(v)))
            .collect();

        let mut body = Vec::new();
        let mut truncated = false;
        if body_cap > 0 {
            loop {
                match resp.chunk().await {
                    Ok(Some(chunk)) => {
                        let room = body_cap - body.len();
                        if chunk.len() > room {
                            body.extend_from_slice(&chunk[..room]);
                            truncated = true;
                            break;
                        }
                        body.extend_from_slice(&chunk);
                    }
                    Ok(None) => break,
                    // headers arrived; keep what we have
                    Err(e) if e.is_timeout() || e.is_body() || e.is_decode() => {
                        truncated = true;
                        break;
                    }
                    Err(e) => return Err((classify(&e), error_chain(&e))),
                }
            }
        }
        Ok(Response {
            status,
            headers,
            body,
            truncated,
        })
    }
}

fn lossy(v: &HeaderValue) -> String {
    String::from_utf8_lossy(v.as_bytes()).into_owned()
}

fn error_chain(e: &reqwest::Error) -> String {
    let mut parts = vec![e.to_string()];
    let mut source = e.source();
    while let Some(s) = source {
        parts.push(s.to_string());
        source = s.source();
    }
    parts.join(": ")
}

fn classify(e: &reqwest::Error) -> FailureReason {
    if e.is_timeout() {
        return FailureReason::Timeout;
    }
    let mut source = e.source();
    while let Some(s) = source {
        if let Some(io) = s.downcast_ref::<std::io::Error>() {
            if io.kind() == std::io::ErrorKind::TimedOut {
                return FailureReason::Timeout;
            }
        }
        source = s.source();
    }
    let text = error_chain(e).to_ascii_lowercase();
    if text.contains("dns error") || text.contains("failed to lookup address") {
        FailureReason::Dns
    } else if text.contains("certificate") || text.contains("tls") || text.contains("handshake") {
        FailureReason::Tls
    } else if e.is_connect() || e.is_request() || text.contains("connection") {
        FailureReason::Connect
    } else {
        FailureReason::Other
    }
}
