//! Landing-page analysis: the script/stylesheet inventory behind the
//! subresource integrity check, and title/description metadata.

mod domain;
mod tags;

pub use domain::{registrable_domain, same_site};
pub use tags::{tags, Tag};

use serde::{Deserialize, Serialize};
use url::Url;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ResourceKind {
    Script,
    Stylesheet,
}

/// Scheme as written in the markup. Protocol-relative and path-relative
/// references are both `Relative`; the resolved URL carries the effective scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ResourceScheme {
    Http,
    Https,
    Relative,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subresource {
    pub kind: ResourceKind,
    pub url: Url,
    pub is_external: bool,
    pub scheme: ResourceScheme,
    pub has_integrity: bool,
    pub integrity_value: Option<String>,
}

impl Subresource {
    /// Loaded over TLS once resolved against the page.
    pub fn is_secure(&self) -> bool {
        self.url.scheme() == "https"
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SriInventory {
    pub resources: Vec<Subresource>,
}

impl SriInventory {
    pub fn external_scripts(&self) -> impl Iterator<Item = &Subresource> {
        self.resources
            .iter()
            .filter(|r| r.kind == ResourceKind::Script && r.is_external)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageMeta {
    pub title: Option<String>,
    pub description: Option<String>,
}

fn written_scheme(reference: &str) -> ResourceScheme {
    let lower = reference.trim_start().to_ascii_lowercase();
    if lower.starts_with("https:") {
        ResourceScheme::Https
    } else if lower.starts_with("http:") {
        ResourceScheme::Http
    } else {
        ResourceScheme::Relative
    }
}

/// Lists `<script src>` and `<link rel=stylesheet href>` references, resolved
/// against `origin`. References that do not resolve to an http(s) URL are
/// left out.
pub fn inventory_subresources(body: &[u8], origin: &Url) -> SriInventory {
    let html = String::from_utf8_lossy(body);
    let mut resources = Vec::new();
    for tag in tags(&html) {
        let (kind, reference) = match tag.name.as_str() {
            "script" => match tag.attr("src") {
                Some(src) => (ResourceKind::Script, src),
                None => continue,
            },
            "link" => {
                let is_stylesheet = tag.attr("rel").is_some_and(|rel| {
                    rel.split_ascii_whitespace()
                        .any(|t| t.eq_ignore_ascii_case("stylesheet"))
                });
                match tag.attr("href") {
                    Some(href) if is_stylesheet => (ResourceKind::Stylesheet, href),
                    _ => continue,
                }
            }
            _ => continue,
        };
        let reference = reference.trim();
        if reference.is_empty() {
            continue;
        }
        let Ok(url) = origin.join(reference) else {
            continue;
        };
        if !matches!(url.scheme(), "http" | "https") {
            continue;
        }
        let integrity_value = tag
            .attr("integrity")
            .map(str::trim)
            .filter(|v| !v.is_empty())
            .map(str::to_string);
        resources.push(Subresource {
            kind,
            is_external: !same_site(&url, origin),
            scheme: written_scheme(reference),
            has_integrity: integrity_value.is_some(),
            integrity_value,
            url,
        });
    }
    SriInventory { resources }
}

/// First `<title>` text and first `<meta name=description>` content.
pub fn extract_meta(body: &[u8]) -> PageMeta {
    let html = String::from_utf8_lossy(body);
    let mut meta = PageMeta::default();
    for tag in tags(&html) {
        match tag.name.as_str() {
            "title" if meta.title.is_none() => {
                meta.title = tag
                    .text
                    .as_deref()
                    .map(|t| t.split_whitespace().collect::<Vec<_>>().join(" "))
                    .filter(|t| !t.is_empty());
            }
            "meta" if meta.description.is_none() => {
                let is_description = tag
                    .attr("name")
                    .is_some_and(|n| n.trim().eq_ignore_ascii_case("description"));
                if is_description {
                    meta.description = tag
                        .attr("content")
                        .map(str::trim)
                        .filter(|c| !c.is_empty())
                        .map(str::to_string);
                }
            }
            _ => {}
        }
        if meta.title.is_some() && meta.description.is_some() {
            break;
        }
    }
    meta
}
