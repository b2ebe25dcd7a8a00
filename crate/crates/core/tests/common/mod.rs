#![allow(dead_code)]

use std::time::Duration;

use headerscore::{FetchConfig, Fetcher, ScanTarget};
use headerscore_fixtures::{FixtureServer, FIXTURE_DOMAIN};

pub fn config_for(server: &FixtureServer) -> FetchConfig {
    FetchConfig {
        timeout: Duration::from_secs(5),
        connect_override: Some(server.addr()),
        extra_root_certs: vec![server.ca_pem().to_string()],
        ..FetchConfig::default()
    }
}

pub fn fetcher_for(server: &FixtureServer) -> Fetcher {
    Fetcher::new(config_for(server)).expect("fixture client builds")
}

pub fn fixture(name: &str) -> ScanTarget {
    ScanTarget::new(&format!("{name}.{FIXTURE_DOMAIN}")).unwrap()
}
pub mod golden;
pub mod properties;
pub mod strategies;
