//! Random evidence for property tests: header values drawn from the tokens
//! the parsers care about, mixed with arbitrary noise.

#![allow(dead_code)]

use headerscore::fetcher::{ContributeProbe, FailureReason, Hop, RedirectChain, Terminal};
use headerscore::parsers::PROBE_ORIGIN;
use headerscore::scoring::{Outcome, TestResult};
use headerscore::{Category, Headers, ScanReport, ScanTarget};
use proptest::prelude::*;
use proptest::sample::select;
use url::Url;

fn noise() -> impl Strategy<Value = String> {
    prop_oneof![any::<String>(), "[ -~]{0,40}"]
}

fn joined(parts: impl Strategy<Value = Vec<String>>, sep: &'static str) -> impl Strategy<Value = String> {
    parts.prop_map(move |p| p.join(sep))
}

pub fn csp_header() -> impl Strategy<Value = String> {
    let name = select(vec![
        "default-src",
        "script-src",
        "style-src",
        "img-src",
        "frame-ancestors",
        "object-src",
        "base-uri",
        "DEFAULT-SRC",
        "upgrade-insecure-requests",
    ]);
    let source = select(vec![
        "'self'",
        "'none'",
        "'unsafe-inline'",
        "'unsafe-eval'",
        "*",
        "https:",
        "http:",
        "data:",
        "https://cdn.test",
        "'nonce-abc'",
        "'sha256-xyz'",
        "'strict-dynamic'",
        "example.test",
    ]);
    let directive = (name, prop::collection::vec(source, 0..4)).prop_map(|(n, s)| {
        let mut d = n.to_string();
        for src in s {
            d.push(' ');
            d.push_str(src);
        }
        d
    });
    prop_oneof![
        4 => joined(prop::collection::vec(directive, 0..5), "; "),
        1 => noise(),
    ]
}

pub fn hsts_header() -> impl Strategy<Value = String> {
    let part = prop_oneof![
        (0u64..100_000_000).prop_map(|n| format!("max-age={n}")),
        Just("max-age=15552000".to_string()),
        Just("max-age=\"31536000\"".to_string()),
        Just("max-age=abc".to_string()),
        Just("includeSubDomains".to_string()),
        Just("preload".to_string()),
        Just("foo=bar".to_string()),
        Just(String::new()),
    ];
    prop_oneof![
        4 => joined(prop::collection::vec(part, 0..4), "; "),
        1 => noise(),
    ]
}

pub fn cookie_line() -> impl Strategy<Value = String> {
    let attr = select(vec![
        "Secure",
        "HttpOnly",
        "SameSite=Lax",
        "SameSite=Strict",
        "SameSite=None",
        "SameSite=bogus",
        "Max-Age=3600",
        "Max-Age=x",
        "Expires=Wed, 21 Oct 2037 07:28:00 GMT",
        "Path=/",
        "Domain=a.test",
    ]);
    prop_oneof![
        4 => ("[a-z]{1,6}", "[a-z0-9]{0,6}", prop::collection::vec(attr, 0..6))
            .prop_map(|(n, v, attrs)| {
                let mut line = format!("{n}={v}");
                for a in attrs {
                    line.push_str("; ");
                    line.push_str(a);
                }
                line
            }),
        1 => noise(),
    ]
}

pub fn hpkp_header() -> impl Strategy<Value = String> {
    let part = select(vec![
        "pin-sha256=\"AAAA\"",
        "pin-sha256=\"BBBB\"",
        "pin-sha256=\"\"",
        "pin-sha256=CCCC",
        "max-age=5184000",
        "max-age=x",
        "includeSubDomains",
        "report-uri=\"https://r.test\"",
    ]);
    prop_oneof![
        4 => joined(prop::collection::vec(part.prop_map(str::to_string), 0..5), "; "),
        1 => noise(),
    ]
}

fn simple_value(pool: Vec<&'static str>) -> impl Strategy<Value = String> {
    prop_oneof![4 => select(pool).prop_map(str::to_string), 1 => noise()]
}

/// A random landing response; each security header may be absent.
pub fn landing_headers() -> impl Strategy<Value = Headers> {
    let opt = |s: BoxedStrategy<String>| prop::option::of(s);
    (
        opt(csp_header().boxed()),
        opt(hsts_header().boxed()),
        prop::collection::vec(cookie_line(), 0..4),
        opt(hpkp_header().boxed()),
        opt(simple_value(vec!["nosniff", "NOSNIFF", "sniff", ""]).boxed()),
        opt(simple_value(vec!["DENY", "SAMEORIGIN", "ALLOW-FROM https://a.test", "ALLOWALL"]).boxed()),
        opt(simple_value(vec![
            "no-referrer",
            "same-origin",
            "origin",
            "unsafe-url",
            "no-referrer, unsafe-url",
            "bogus",
            "",
        ])
        .boxed()),
        opt(simple_value(vec!["0", "1", "1; mode=block", "1;mode=BLOCK", "2"]).boxed()),
        prop::option::of(select(vec!["*", "https://a.test", PROBE_ORIGIN, "null"])),
        any::<bool>(),
    )
        .prop_map(|(csp, hsts, cookies, hpkp, xcto, xfo, referrer, xxss, acao, creds)| {
            let mut h = Headers::new();
            let mut put = |name: &str, v: Option<String>| {
                if let Some(v) = v {
                    h.push(name, v);
                }
            };
            put("content-security-policy", csp);
            put("strict-transport-security", hsts);
            put("public-key-pins", hpkp);
            put("x-content-type-options", xcto);
            put("x-frame-options", xfo);
            put("referrer-policy", referrer);
            put("x-xss-protection", xxss);
            put("access-control-allow-origin", acao.map(str::to_string));
            if creds {
                put("access-control-allow-credentials", Some("true".into()));
            }
            for c in cookies {
                put("set-cookie", Some(c));
            }
            h
        })
}

/// Landing-page markup with a mix of internal, external, http and https
/// scripts and stylesheets.
pub fn page_body() -> impl Strategy<Value = String> {
    let src = select(vec![
        "/app.js",
        "app.js",
        "//cdn.other.test/a.js",
        "https://cdn.other.test/a.js",
        "http://cdn.other.test/a.js",
        "https://static.site.test/b.js",
        "http://static.site.test/b.js",
        "data:text/javascript,1",
        "",
    ]);
    let element = (any::<bool>(), src, any::<bool>()).prop_map(|(script, src, sri)| {
        let integrity = if sri { " integrity=\"sha384-abc\"" } else { "" };
        if script {
            format!("<script src=\"{src}\"{integrity}></script>")
        } else {
            format!("<link rel=stylesheet href=\"{src}\"{integrity}>")
        }
    });
    prop_oneof![
        4 => prop::collection::vec(element, 0..6).prop_map(|e| format!("<html><head>{}</head></html>", e.concat())),
        1 => noise(),
    ]
}

pub fn contribute_probe() -> impl Strategy<Value = Option<ContributeProbe>> {
    let body = select(vec![
        r#"{"name":"x","description":"y"}"#,
        r#"{"name":"x"}"#,
        "[]",
        "{not json",
        "",
    ]);
    prop::option::of(
        (
            select(vec![200u16, 200, 301, 500]),
            prop::option::of(select(vec!["application/json", "text/html"])),
            body,
        )
            .prop_map(|(status, ct, body)| ContributeProbe {
                status,
                content_type: ct.map(str::to_string),
                body: body.as_bytes().to_vec(),
            }),
    )
}

fn hop() -> impl Strategy<Value = Hop> {
    (
        select(vec!["http", "https"]),
        select(vec!["site.test", "www.site.test", "other.test"]),
        prop::option::of(select(vec![200u16, 301, 302, 404])),
    )
        .prop_map(|(scheme, host, status)| {
            let url = Url::parse(&format!("{scheme}://{host}/")).unwrap();
            let location = status.filter(|s| (300..400).contains(s)).map(|_| "/next".to_string());
            Hop::new(url, status, location)
        })
}

fn terminal() -> impl Strategy<Value = Terminal> {
    prop_oneof![
        Just(Terminal::Ok),
        select(vec![
            FailureReason::Dns,
            FailureReason::Connect,
            FailureReason::Timeout,
            FailureReason::Tls,
            FailureReason::RedirectLoop,
            FailureReason::InvalidRedirect,
            FailureReason::Other,
        ])
        .prop_map(|reason| Terminal::Failed {
            reason,
            detail: String::new(),
        }),
    ]
}

/// Chains that need not be internally consistent; the evaluator must stay
/// in bounds regardless.
pub fn redirect_chain() -> impl Strategy<Value = RedirectChain> {
    (prop::collection::vec(hop(), 1..5), terminal()).prop_map(|(hops, terminal)| RedirectChain { hops, terminal })
}

/// One outcome per category.
pub fn outcome_set() -> impl Strategy<Value = Vec<Outcome>> {
    let per_category: Vec<_> = Category::ALL
        .iter()
        .map(|c| {
            let options: Vec<Outcome> = Outcome::ALL
                .into_iter()
                .chain([Outcome::ContributeJsonMissingStrict])
                .filter(|o| o.category() == *c)
                .collect();
            select(options)
        })
        .collect();
    per_category
}

pub fn results_of(outcomes: &[Outcome]) -> Vec<TestResult> {
    outcomes.iter().map(|o| TestResult::new(*o, "")).collect()
}

/// Scored reports with random labels.
pub fn reports() -> impl Strategy<Value = Vec<ScanReport>> {
    let label = prop::option::of(select(vec!["News", "Finance", "Sports", "Adult", "Health"]));
    let report = (outcome_set(), label, 0u32..1000).prop_map(|(outcomes, label, n)| {
        let mut target = ScanTarget::new(&format!("site{n}.test")).unwrap();
        if let Some(l) = label {
            target = target.with_category(l);
        }
        ScanReport::from_results(target, results_of(&outcomes)).unwrap()
    });
    prop::collection::vec(report, 0..40)
}
