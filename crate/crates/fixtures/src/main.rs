//! Runs the fixture corpus until interrupted.
//!
//! Usage: `headerscore-fixtures [CA_PEM_PATH]`

use std::io::Write;

use headerscore_fixtures::{corpus, FixtureServer};

fn main() -> std::io::Result<()> {
    let server = FixtureServer::start()?;
    let ca_path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "fixture-ca.pem".to_string());
    std::fs::write(&ca_path, server.ca_pem())?;

    let mut out = std::io::stdout().lock();
    writeln!(out, "listening on {}", server.addr())?;
    writeln!(out, "CA certificate written to {ca_path}")?;
    for site in corpus() {
        writeln!(out, "  {}", site.host)?;
    }
    out.flush()?;
    drop(out);

    loop {
        std::thread::park();
    }
}
