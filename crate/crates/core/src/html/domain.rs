use url::{Host, Url};

/// Registrable domain (public suffix plus one label) of a hostname, from the
/// public-suffix snapshot compiled into the `psl` crate. Hosts that have no
/// registrable part (IP literals, bare suffixes) are returned as-is.
pub fn registrable_domain(host: &str) -> String {
    let host = host.trim_end_matches('.').to_ascii_lowercase();
    psl::domain_str(&host)
        .map(str::to_string)
        .unwrap_or(host)
}

/// True when both URLs belong to the same site, i.e. share a registrable
/// domain. `cdn.site.test` and `www.site.test` are the same site.
pub fn same_site(a: &Url, b: &Url) -> bool {
    match (a.host(), b.host()) {
        (Some(Host::Domain(x)), Some(Host::Domain(y))) => {
            registrable_domain(x) == registrable_domain(y)
        }
        (Some(x), Some(y)) => x == y,
        _ => false,
    }
}
