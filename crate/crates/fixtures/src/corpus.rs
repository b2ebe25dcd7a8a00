use crate::{CorsMode, Endpoint, Page, Site};

/// Every corpus host is a subdomain of this.
pub const FIXTURE_DOMAIN: &str = "fixture.test";

/// Third-party script host used by the corpus pages.
pub const CDN_HOST: &str = "cdn.cdnprovider.test";

fn host(name: &str) -> String {
    format!("{name}.{FIXTURE_DOMAIN}")
}

fn to_https(name: &str) -> Endpoint {
    Endpoint::Redirect {
        status: 301,
        location: format!("https://{}/", host(name)),
    }
}

fn body_with(scripts: &str) -> String {
    format!(
        "<!doctype html>\n<html><head><title>Fixture</title>\
         <meta name=\"description\" content=\"canned page\">{scripts}</head>\
         <body><p>hello</p></body></html>\n"
    )
}

fn sri_script() -> String {
    format!(
        "<script src=\"https://{CDN_HOST}/lib.js\" integrity=\"sha384-oqVuAfXRKap7fdgcCY5uykM6+R9GqQ8K/uxy9rx7HNQlGYl1kPzQho1wx4JwY8wC\" crossorigin=\"anonymous\"></script>"
    )
}

/// The reference page: every bonus earned, no penalties.
pub fn good_page() -> Page {
    Page::new(body_with(&sri_script()))
        .header(
            "Strict-Transport-Security",
            "max-age=63072000; includeSubDomains; preload",
        )
        .header(
            "Content-Security-Policy",
            "default-src 'none'; script-src 'self' https://cdn.cdnprovider.test; frame-ancestors 'none'",
        )
        .header("X-Content-Type-Options", "nosniff")
        .header("Referrer-Policy", "no-referrer")
        .header("X-XSS-Protection", "1; mode=block")
        .header("Set-Cookie", "sid=abc123; Path=/; Secure; HttpOnly; SameSite=Strict")
        .header("Content-Type", "text/html; charset=utf-8")
}

/// A well-behaved site (http redirects to https on the same host) serving `page`.
fn variant(name: &str, page: Page) -> Site {
    Site::new(host(name), to_https(name), Endpoint::Page(page))
}

/// The canned corpus. Each site isolates one rubric branch against the
/// reference page.
pub fn corpus() -> Vec<Site> {
    let good = good_page;
    let weak_csp = "default-src 'self'; script-src 'self' 'unsafe-eval'; frame-ancestors 'none'";
    vec![
        variant("good", good()),
        Site::new(
            host("no-headers"),
            Endpoint::Page(Page::new(
                "<html><head><title>No headers</title></head><body>plain</body></html>",
            )),
            Endpoint::Refuse,
        ),
        // redirection
        Site::new(
            host("redirect-offhost"),
            Endpoint::Redirect {
                status: 301,
                location: format!("https://{}/", host("offhost-hop")),
            },
            Endpoint::Page(good()),
        ),
        Site::new(
            host("offhost-hop"),
            Endpoint::Refuse,
            Endpoint::Redirect {
                status: 302,
                location: format!("https://{}/", host("redirect-offhost")),
            },
        ),
        Site::new(host("https-only"), Endpoint::Refuse, Endpoint::Page(good())),
        Site::new(
            host("no-redirect"),
            Endpoint::Page(Page::new(body_with(""))),
            Endpoint::Page(good()),
        ),
        Site::new(host("redirect-loop"), Endpoint::Loop, Endpoint::Page(good())),
        // strict transport security
        variant("hsts-short", good().set("Strict-Transport-Security", "max-age=3600")),
        variant(
            "hsts-invalid",
            good().set("Strict-Transport-Security", "includeSubDomains"),
        ),
        variant(
            "hsts-six-months",
            good().set("Strict-Transport-Security", "max-age=15552000"),
        ),
        // content security policy
        variant(
            "csp-unsafe-inline",
            good().set(
                "Content-Security-Policy",
                "default-src 'self'; script-src 'self' 'unsafe-inline'; frame-ancestors 'none'",
            ),
        ),
        variant("csp-unsafe-eval", good().set("Content-Security-Policy", weak_csp)),
        variant(
            "csp-self",
            good().set(
                "Content-Security-Policy",
                "default-src 'self'; frame-ancestors 'none'",
            ),
        ),
        variant(
            "csp-absent",
            good()
                .without("Content-Security-Policy")
                .header("X-Frame-Options", "DENY"),
        ),
        // cookies
        variant("cookie-bare-session", good().set("Set-Cookie", "sid=x")),
        variant(
            "cookie-session-no-httponly",
            good().set("Set-Cookie", "sid=x; Secure; SameSite=Lax"),
        ),
        variant(
            "cookie-persistent-insecure",
            good()
                .header("Set-Cookie", "theme=dark; Max-Age=86400; HttpOnly; SameSite=Lax"),
        ),
        variant(
            "cookie-no-samesite",
            good().set("Set-Cookie", "sid=x; Secure; HttpOnly"),
        ),
        variant("cookie-none", good().without("Set-Cookie")),
        // cross-origin resource sharing
        variant("cors-star", good().header("Access-Control-Allow-Origin", "*")),
        variant("cors-reflect-credentials", good())
            .with_cors(CorsMode::ReflectWithCredentials),
        variant("cors-reflect", good()).with_cors(CorsMode::Reflect),
        // subresource integrity
        variant(
            "sri-http-script",
            good().with_body(body_with(&format!(
                "<script src=\"http://{CDN_HOST}/x.js\"></script>"
            ))),
        ),
        variant(
            "sri-https-no-integrity",
            good().with_body(body_with(&format!(
                "<script src=\"https://{CDN_HOST}/x.js\"></script>"
            ))),
        ),
        variant(
            "sri-internal-only",
            good().with_body(body_with(&format!(
                "<script src=\"/app.js\"></script><script src=\"https://static.{FIXTURE_DOMAIN}/v.js\"></script>"
            ))),
        ),
        // public key pinning
        variant(
            "hpkp-invalid",
            good().header("Public-Key-Pins", "pin-sha256=\"cUPcTAZWKaASuYWhhneDttWpY3oBAkE3h2+soZS7sWs=\"; max-age=5184000"),
        ),
        variant(
            "hpkp-valid",
            good().header(
                "Public-Key-Pins",
                "pin-sha256=\"cUPcTAZWKaASuYWhhneDttWpY3oBAkE3h2+soZS7sWs=\"; pin-sha256=\"M8HztCzM3elUxkcjR2S5P4hhyBNf6lHkmjAHKhpGPWE=\"; max-age=5184000; includeSubDomains",
            ),
        ),
        // referrer policy
        variant("referrer-unsafe-url", good().set("Referrer-Policy", "unsafe-url")),
        variant("referrer-origin", good().set("Referrer-Policy", "origin")),
        // x-content-type-options
        variant("xcto-missing", good().without("X-Content-Type-Options")),
        // x-frame-options
        variant(
            "xfo-header-only",
            good()
                .set(
                    "Content-Security-Policy",
                    "default-src 'none'; script-src 'self' https://cdn.cdnprovider.test",
                )
                .header("X-Frame-Options", "SAMEORIGIN"),
        ),
        variant(
            "xfo-invalid",
            good()
                .set(
                    "Content-Security-Policy",
                    "default-src 'none'; script-src 'self' https://cdn.cdnprovider.test",
                )
                .header("X-Frame-Options", "ALLOWALL"),
        ),
        // x-xss-protection
        variant("xxss-disabled", good().set("X-XSS-Protection", "0")),
        variant("xxss-absent-strong-csp", good().without("X-XSS-Protection")),
        variant(
            "xxss-absent-weak-csp",
            good()
                .without("X-XSS-Protection")
                .set("Content-Security-Policy", weak_csp),
        ),
        // contribute.json
        variant("contribute-valid", good()).with_contribute(
            200,
            "application/json",
            r#"{"name": "Fixture", "description": "A canned project", "repository": {"url": "https://example.invalid/repo"}}"#,
        ),
        variant("contribute-invalid", good()).with_contribute(
            200,
            "application/json",
            "{not json",
        ),
    ]
}

impl Page {
    fn with_body(mut self, body: String) -> Self {
        self.body = body;
        self
    }
}
