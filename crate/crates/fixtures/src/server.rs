use std::collections::HashMap;
use std::io;
use std::net::SocketAddr;
use std::sync::{Arc, Mutex};
use std::thread::JoinHandle;

use rcgen::{BasicConstraints, CertificateParams, CertifiedIssuer, DnType, IsCa, KeyPair};
use rustls::pki_types::{PrivateKeyDer, PrivatePkcs8KeyDer};
use rustls::ServerConfig;
use tokio::io::{AsyncRead, AsyncReadExt, AsyncWrite, AsyncWriteExt};
use tokio::net::{TcpListener, TcpStream};
use tokio::sync::oneshot;
use tokio_rustls::LazyConfigAcceptor;

use crate::{corpus, CorsMode, Endpoint, Site};

const MAX_REQUEST_HEAD: usize = 16 * 1024;

/// A request as the server saw it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecordedRequest {
    pub https: bool,
    pub host: String,
    pub path: String,
    pub user_agent: Option<String>,
    pub origin: Option<String>,
}

type RequestLog = Arc<Mutex<Vec<RecordedRequest>>>;

/// A running fixture server. Stops when dropped.
pub struct FixtureServer {
    addr: SocketAddr,
    ca_pem: String,
    log: RequestLog,
    shutdown: Option<oneshot::Sender<()>>,
    thread: Option<JoinHandle<()>>,
}

impl FixtureServer {
    /// Starts a server with the built-in [`corpus`].
    pub fn start() -> io::Result<Self> {
        Self::with_sites(corpus())
    }

    pub fn with_sites(sites: Vec<Site>) -> io::Result<Self> {
        let hosts: Vec<String> = sites.iter().map(|s| s.host.clone()).collect();
        let (tls, ca_pem) = tls_config(hosts).map_err(io::Error::other)?;
        let sites: Arc<HashMap<String, Site>> = Arc::new(
            sites
                .into_iter()
                .map(|s| (s.host.to_ascii_lowercase(), s))
                .collect(),
        );

        let listener = std::net::TcpListener::bind("127.0.0.1:0")?;
        listener.set_nonblocking(true)?;
        let addr = listener.local_addr()?;
        let runtime = tokio::runtime::Builder::new_multi_thread()
            .worker_threads(2)
            .enable_all()
            .build()?;

        let log = RequestLog::default();
        let loop_log = Arc::clone(&log);
        let (tx, rx) = oneshot::channel();
        let thread = std::thread::spawn(move || {
            runtime.block_on(async move {
                let listener = match TcpListener::from_std(listener) {
                    Ok(l) => l,
                    Err(_) => return,
                };
                tokio::select! {
                    _ = rx => {}
                    _ = accept_loop(listener, sites, tls, loop_log) => {}
                }
            });
        });

        Ok(Self {
            addr,
            ca_pem,
            log,
            shutdown: Some(tx),
            thread: Some(thread),
        })
    }

    /// Loopback address every hostname should be routed to.
    pub fn addr(&self) -> SocketAddr {
        self.addr
    }

    /// PEM of the CA that signed the server certificate.
    pub fn ca_pem(&self) -> &str {
        &self.ca_pem
    }

    /// Every request served so far, in arrival order.
    pub fn requests(&self) -> Vec<RecordedRequest> {
        self.log.lock().expect("request log poisoned").clone()
    }
}

impl Drop for FixtureServer {
    fn drop(&mut self) {
        if let Some(tx) = self.shutdown.take() {
            let _ = tx.send(());
        }
        if let Some(thread) = self.thread.take() {
            let _ = thread.join();
        }
    }
}

fn tls_config(hosts: Vec<String>) -> Result<(Arc<ServerConfig>, String), Box<dyn std::error::Error + Send + Sync>> {
    let ca_key = KeyPair::generate()?;
    let mut ca_params = CertificateParams::new(Vec::<String>::new())?;
    ca_params.is_ca = IsCa::Ca(BasicConstraints::Unconstrained);
    ca_params
        .distinguished_name
        .push(DnType::CommonName, "headerscore fixture CA");
    let ca = CertifiedIssuer::self_signed(ca_params, ca_key)?;

    let leaf_key = KeyPair::generate()?;
    let mut leaf_params = CertificateParams::new(hosts)?;
    leaf_params
        .distinguished_name
        .push(DnType::CommonName, "fixture.test");
    let leaf = leaf_params.signed_by(&leaf_key, &ca)?;

    let provider = Arc::new(rustls::crypto::aws_lc_rs::default_provider());
    let config = ServerConfig::builder_with_provider(provider)
        .with_safe_default_protocol_versions()?
        .with_no_client_auth()
        .with_single_cert(
            vec![leaf.der().clone(), ca.der().clone()],
            PrivateKeyDer::Pkcs8(PrivatePkcs8KeyDer::from(leaf_key.serialize_der())),
        )?;
    Ok((Arc::new(config), ca.pem()))
}

async fn accept_loop(listener: TcpListener, sites: Arc<HashMap<String, Site>>, tls: Arc<ServerConfig>, log: RequestLog) {
    loop {
        let Ok((stream, _)) = listener.accept().await else {
            continue;
        };
        let sites = Arc::clone(&sites);
        let tls = Arc::clone(&tls);
        let log = Arc::clone(&log);
        tokio::spawn(async move {
            let _ = handle(stream, sites, tls, log).await;
        });
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Scheme {
    Http,
    Https,
}

async fn handle(
    stream: TcpStream,
    sites: Arc<HashMap<String, Site>>,
    tls: Arc<ServerConfig>,
    log: RequestLog,
) -> io::Result<()> {
    let mut first = [0u8; 1];
    if stream.peek(&mut first).await? == 0 {
        return Ok(());
    }
    if first[0] != 0x16 {
        return serve(stream, Scheme::Http, &sites, &log).await;
    }

    let start = LazyConfigAcceptor::new(rustls::server::Acceptor::default(), stream).await?;
    let sni = start
        .client_hello()
        .server_name()
        .map(|s| s.to_ascii_lowercase());
    let refused = match sni.as_deref().and_then(|h| sites.get(h)) {
        Some(site) => matches!(site.https, Endpoint::Refuse),
        None => true,
    };
    if refused {
        return Ok(());
    }
    let stream = start.into_stream(tls).await?;
    serve(stream, Scheme::Https, &sites, &log).await
}

struct Request {
    path: String,
    host: String,
    origin: Option<String>,
    user_agent: Option<String>,
}

async fn read_request<S: AsyncRead + Unpin>(stream: &mut S) -> io::Result<Option<Request>> {
    let mut buf = Vec::with_capacity(1024);
    let mut chunk = [0u8; 1024];
    loop {
        let n = stream.read(&mut chunk).await?;
        if n == 0 {
            return Ok(None);
        }
        buf.extend_from_slice(&chunk[..n]);
        let mut headers = [httparse::EMPTY_HEADER; 64];
        let mut req = httparse::Request::new(&mut headers);
        match req.parse(&buf) {
            Ok(httparse::Status::Complete(_)) => {
                let find = |name: &str| {
                    req.headers
                        .iter()
                        .find(|h| h.name.eq_ignore_ascii_case(name))
                        .map(|h| String::from_utf8_lossy(h.value).into_owned())
                };
                let host = find("host").unwrap_or_default();
                let host = host
                    .rsplit_once(':')
                    .filter(|(_, port)| port.chars().all(|c| c.is_ascii_digit()))
                    .map(|(h, _)| h.to_string())
                    .unwrap_or(host)
                    .to_ascii_lowercase();
                return Ok(Some(Request {
                    path: req.path.unwrap_or("/").to_string(),
                    host,
                    origin: find("origin"),
                    user_agent: find("user-agent"),
                }));
            }
            Ok(httparse::Status::Partial) if buf.len() < MAX_REQUEST_HEAD => continue,
            _ => return Ok(None),
        }
    }
}

async fn serve<S: AsyncRead + AsyncWrite + Unpin>(
    mut stream: S,
    scheme: Scheme,
    sites: &HashMap<String, Site>,
    log: &RequestLog,
) -> io::Result<()> {
    let Some(req) = read_request(&mut stream).await? else {
        return Ok(());
    };
    log.lock().expect("request log poisoned").push(RecordedRequest {
        https: scheme == Scheme::Https,
        host: req.host.clone(),
        path: req.path.clone(),
        user_agent: req.user_agent.clone(),
        origin: req.origin.clone(),
    });
    let Some(site) = sites.get(&req.host) else {
        return Ok(());
    };
    let endpoint = match scheme {
        Scheme::Http => &site.http,
        Scheme::Https => &site.https,
    };

    let mut headers: Vec<(String, String)> = Vec::new();
    let (status, body) = if matches!(endpoint, Endpoint::Refuse) {
        return Ok(());
    } else if req.path == "/contribute.json" {
        match &site.contribute {
            Some(c) => {
                headers.push(("Content-Type".into(), c.content_type.clone()));
                (c.status, c.body.clone())
            }
            None => (404, "not found".to_string()),
        }
    } else {
        match endpoint {
            Endpoint::Refuse => unreachable!(),
            Endpoint::Redirect { status, location } => {
                headers.push(("Location".into(), location.clone()));
                (*status, String::new())
            }
            Endpoint::Loop => {
                let n = req
                    .path
                    .strip_prefix("/loop/")
                    .and_then(|n| n.parse::<u64>().ok())
                    .unwrap_or(0);
                headers.push(("Location".into(), format!("/loop/{}", n + 1)));
                (301, String::new())
            }
            Endpoint::Page(page) => {
                headers.extend(page.headers.iter().cloned());
                if let Some(origin) = &req.origin {
                    match site.cors {
                        CorsMode::Ignore => {}
                        CorsMode::Reflect => {
                            headers.push(("Access-Control-Allow-Origin".into(), origin.clone()));
                        }
                        CorsMode::ReflectWithCredentials => {
                            headers.push(("Access-Control-Allow-Origin".into(), origin.clone()));
                            headers.push(("Access-Control-Allow-Credentials".into(), "true".into()));
                        }
                    }
                }
                (200, page.body.clone())
            }
        }
    };

    let mut out = format!("HTTP/1.1 {} {}\r\n", status, reason(status));
    for (name, value) in &headers {
        out.push_str(&format!("{name}: {value}\r\n"));
    }
    out.push_str(&format!(
        "Content-Length: {}\r\nConnection: close\r\n\r\n",
        body.len()
    ));
    out.push_str(&body);
    stream.write_all(out.as_bytes()).await?;
    stream.flush().await?;
    stream.shutdown().await
}

fn reason(status: u16) -> &'static str {
    match status {
        200 => "OK",
        301 => "Moved Permanently",
        302 => "Found",
        307 => "Temporary Redirect",
        308 => "Permanent Redirect",
        404 => "Not Found",
        _ => "Status",
    }
}
