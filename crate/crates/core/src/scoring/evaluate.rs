//! One evaluator per check. Each maps parsed evidence to exactly one outcome;
//! when several violations apply, the worst one is reported.

use serde::{Deserialize, Serialize};

use super::{Outcome, TestResult};
use crate::fetcher::{ContributeProbe, RedirectChain};
use crate::html::SriInventory;
use crate::parsers::{
    CookieRecord, CorsEvidence, CspPolicy, FrameOptions, HpkpEvidence, HstsDirective, ReferrerClass,
    ReferrerPolicy, SameSite, XssProtection,
};

/// 180 days.
pub const HSTS_MIN_MAX_AGE: u64 = 15_552_000;

/// `http_chain` starts at `http://<domain>/`; `https_chain` is the direct
/// https attempt, when one was made.
pub fn evaluate_redirection(http_chain: &RedirectChain, https_chain: Option<&RedirectChain>) -> TestResult {
    let https_ok = https_chain.is_some_and(RedirectChain::is_ok);
    if http_chain.is_ok() {
        let hops = &http_chain.hops;
        if http_chain.reached_https() {
            let from = &hops[0].host;
            let to = &hops.get(1).unwrap_or(&hops[0]).host;
            return if from == to {
                TestResult::new(Outcome::RedirectionToHttps, format!("redirects to https on {to}"))
            } else {
                TestResult::new(
                    Outcome::RedirectionOffHostFromHttp,
                    format!("first redirect leaves {from} for {to}"),
                )
            };
        }
        return if hops.len() > 1 {
            TestResult::new(
                Outcome::RedirectionNotToHttps,
                format!("redirects end on {}", http_chain.last().url),
            )
        } else {
            TestResult::new(Outcome::RedirectionMissing, "served over http without a redirect")
        };
    }
    if !https_ok {
        return TestResult::new(Outcome::RedirectionUnscorable, "neither http nor https could be retrieved");
    }
    if http_chain.failed_before_response() {
        return TestResult::new(Outcome::RedirectionNotNeededNoHttp, "no http listener, https only");
    }
    let reason = http_chain.failure().map_or_else(String::new, |r| r.to_string());
    TestResult::new(Outcome::RedirectionInvalid, format!("http redirect chain broken: {reason}"))
}

pub fn evaluate_hsts(h: Option<&HstsDirective>, reached_https: bool) -> TestResult {
    if !reached_https {
        return TestResult::new(Outcome::HstsNotImplementedNoHttps, "site is not served over https");
    }
    let Some(h) = h else {
        return TestResult::new(Outcome::HstsNotImplemented, "header absent");
    };
    if !h.parse_ok {
        return TestResult::new(Outcome::HstsHeaderInvalid, "header could not be parsed");
    }
    let reason = format!("max-age={}", h.max_age);
    if h.max_age < HSTS_MIN_MAX_AGE {
        TestResult::new(Outcome::HstsImplementedMaxAgeLessThanSixMonths, reason)
    } else if h.include_subdomains && h.preload {
        TestResult::new(Outcome::HstsPreloaded, format!("{reason} with includeSubDomains and preload"))
    } else {
        TestResult::new(Outcome::HstsImplementedMaxAgeAtLeastSixMonths, reason)
    }
}

pub fn evaluate_csp(p: Option<&CspPolicy>) -> TestResult {
    let Some(p) = p else {
        return TestResult::new(Outcome::CspNotImplemented, "header absent");
    };
    if !p.parse_ok() {
        return TestResult::new(Outcome::CspHeaderInvalid, "header could not be parsed");
    }
    if p.has_unsafe_inline() {
        TestResult::new(Outcome::CspImplementedWithUnsafeInline, "script policy allows 'unsafe-inline'")
    } else if p.has_wildcard_script_or_default() {
        TestResult::new(Outcome::CspImplementedWithWildcardSource, "script policy allows any source")
    } else if p.has_unsafe_eval() {
        TestResult::new(Outcome::CspImplementedWithUnsafeEval, "script policy allows 'unsafe-eval'")
    } else if p.default_src_none() {
        TestResult::new(Outcome::CspImplementedWithNoUnsafeDefaultSrcNone, "default-src 'none'")
    } else {
        TestResult::new(Outcome::CspImplementedWithNoUnsafe, "no unsafe sources")
    }
}

pub fn evaluate_cookies(cookies: &[CookieRecord]) -> TestResult {
    if cookies.is_empty() {
        return TestResult::new(Outcome::CookiesNotFound, "no cookies set");
    }
    let names = |pred: &dyn Fn(&CookieRecord) -> bool| {
        cookies
            .iter()
            .filter(|c| pred(c))
            .map(|c| c.name.as_str())
            .collect::<Vec<_>>()
            .join(", ")
    };
    let flagged = |pred: &dyn Fn(&CookieRecord) -> bool| cookies.iter().any(pred);

    let session_insecure = |c: &CookieRecord| c.is_session() && !c.secure;
    let session_script = |c: &CookieRecord| c.is_session() && !c.http_only;
    let insecure = |c: &CookieRecord| !c.secure;
    let not_locked = |c: &CookieRecord| !c.http_only || !matches!(c.same_site, Some(SameSite::Strict | SameSite::Lax));

    if flagged(&session_insecure) {
        TestResult::new(
            Outcome::CookiesSessionWithoutSecureFlag,
            format!("session cookies without Secure: {}", names(&session_insecure)),
        )
    } else if flagged(&session_script) {
        TestResult::new(
            Outcome::CookiesSessionWithoutHttponlyFlag,
            format!("session cookies without HttpOnly: {}", names(&session_script)),
        )
    } else if flagged(&insecure) {
        TestResult::new(
            Outcome::CookiesWithoutSecureFlag,
            format!("cookies without Secure: {}", names(&insecure)),
        )
    } else if flagged(&not_locked) {
        TestResult::new(
            Outcome::CookiesSecureWithHttponlySessions,
            format!("cookies without HttpOnly or SameSite: {}", names(&not_locked)),
        )
    } else {
        TestResult::new(
            Outcome::CookiesSecureWithHttponlySessionsAndSamesite,
            "all cookies Secure, HttpOnly and SameSite",
        )
    }
}

pub fn evaluate_cors(e: &CorsEvidence) -> TestResult {
    if e.reflects_arbitrary_origin {
        return if e.allow_credentials {
            TestResult::new(
                Outcome::CorsReflectsArbitraryOriginWithCredentials,
                "any origin is echoed back with credentials allowed",
            )
        } else {
            TestResult::new(Outcome::CorsReflectsArbitraryOrigin, "any origin is echoed back")
        };
    }
    match e.acao.as_deref() {
        None => TestResult::new(Outcome::CorsNotImplemented, "header absent"),
        Some("*") => TestResult::new(Outcome::CorsImplementedWithPublicAccess, "Access-Control-Allow-Origin: *"),
        Some(origin) => TestResult::new(
            Outcome::CorsImplementedWithRestrictedAccess,
            format!("Access-Control-Allow-Origin: {origin}"),
        ),
    }
}

/// Scores external scripts only; stylesheets stay in the inventory for reporting.
pub fn evaluate_sri(inv: &SriInventory) -> TestResult {
    let scripts: Vec<_> = inv.external_scripts().collect();
    if scripts.is_empty() {
        return TestResult::new(Outcome::SriNotNeededNoExternalScripts, "no external scripts");
    }
    let count = |pred: &dyn Fn(bool, bool) -> bool| {
        scripts.iter().filter(|s| pred(s.is_secure(), s.has_integrity)).count()
    };
    let insecure_bare = count(&|secure, sri| !secure && !sri);
    let insecure = count(&|secure, _| !secure);
    let bare = count(&|_, sri| !sri);
    let n = scripts.len();
    if insecure_bare > 0 {
        TestResult::new(
            Outcome::SriNotImplementedAndExternalScriptsNotLoadedSecurely,
            format!("{insecure_bare} of {n} external scripts over http without integrity"),
        )
    } else if insecure > 0 {
        TestResult::new(
            Outcome::SriImplementedButExternalScriptsNotLoadedSecurely,
            format!("{insecure} of {n} external scripts over http"),
        )
    } else if bare > 0 {
        TestResult::new(
            Outcome::SriNotImplementedButExternalScriptsLoadedSecurely,
            format!("{bare} of {n} external scripts without integrity"),
        )
    } else {
        TestResult::new(
            Outcome::SriImplementedAndExternalScriptsLoadedSecurely,
            format!("all {n} external scripts use integrity over https"),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ContributeEvidence {
    Absent,
    Valid,
    Invalid,
}

impl ContributeEvidence {
    /// A 2xx JSON object with string `name` and `description` is valid. An
    /// html 200 is a soft 404 and counts as absent.
    pub fn from_probe(probe: Option<&ContributeProbe>) -> Self {
        let Some(p) = probe else {
            return Self::Absent;
        };
        let is_html = p
            .content_type
            .as_deref()
            .is_some_and(|ct| ct.to_ascii_lowercase().contains("text/html"));
        if is_html || p.status == 404 {
            return Self::Absent;
        }
        if !(200..300).contains(&p.status) {
            return Self::Invalid;
        }
        match serde_json::from_slice::<serde_json::Value>(&p.body) {
            Ok(serde_json::Value::Object(m))
                if m.get("name").is_some_and(serde_json::Value::is_string)
                    && m.get("description").is_some_and(serde_json::Value::is_string) =>
            {
                Self::Valid
            }
            _ => Self::Invalid,
        }
    }
}

/// Inputs for the six single-header checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleEvidence {
    pub hpkp: HpkpEvidence,
    pub referrer: Option<ReferrerPolicy>,
    /// `Some(true)` for `nosniff`, `Some(false)` for any other value.
    pub content_type_options: Option<bool>,
    pub frame_options: Option<FrameOptions>,
    /// CSP `frame-ancestors` restricts framing.
    pub csp_restricts_framing: bool,
    pub xss: Option<XssProtection>,
    /// The CSP check earned a bonus.
    pub strong_csp: bool,
    pub contribute: ContributeEvidence,
    pub strict_contribute: bool,
}

impl Default for SimpleEvidence {
    fn default() -> Self {
        Self {
            hpkp: HpkpEvidence::absent(),
            referrer: None,
            content_type_options: None,
            frame_options: None,
            csp_restricts_framing: false,
            xss: None,
            strong_csp: false,
            contribute: ContributeEvidence::Absent,
            strict_contribute: false,
        }
    }
}

/// HPKP, Referrer Policy, X-Content-Type-Options, X-Frame-Options,
/// X-XSS-Protection and contribute.json, in that order.
pub fn evaluate_simple(e: &SimpleEvidence) -> [TestResult; 6] {
    [
        evaluate_hpkp(&e.hpkp),
        evaluate_referrer(e.referrer.as_ref()),
        evaluate_xcto(e.content_type_options),
        evaluate_xfo(e.frame_options.as_ref(), e.csp_restricts_framing),
        evaluate_xxss(e.xss, e.strong_csp),
        evaluate_contribute(e.contribute, e.strict_contribute),
    ]
}

fn evaluate_hpkp(h: &HpkpEvidence) -> TestResult {
    if !h.present {
        TestResult::new(Outcome::HpkpNotImplemented, "header absent")
    } else if h.is_valid() {
        TestResult::new(Outcome::HpkpImplemented, format!("{} pins", h.pin_count))
    } else {
        TestResult::new(
            Outcome::HpkpHeaderInvalid,
            format!("{} pins, max-age {}", h.pin_count, if h.max_age.is_some() { "set" } else { "missing" }),
        )
    }
}

fn evaluate_referrer(r: Option<&ReferrerPolicy>) -> TestResult {
    let Some(r) = r else {
        return TestResult::new(Outcome::ReferrerPolicyNotImplemented, "header absent");
    };
    match (&r.policy, r.class) {
        (Some(p), ReferrerClass::Restrictive) => TestResult::new(Outcome::ReferrerPolicyPrivate, p.clone()),
        (Some(p), ReferrerClass::Neutral) => TestResult::new(Outcome::ReferrerPolicyNeutral, p.clone()),
        (None, ReferrerClass::Neutral) => TestResult::new(Outcome::ReferrerPolicyNotImplemented, "empty header"),
        (Some(p), ReferrerClass::Leaky) => TestResult::new(Outcome::ReferrerPolicyUnsafe, p.clone()),
        (None, _) => TestResult::new(Outcome::ReferrerPolicyHeaderInvalid, "no recognized policy"),
    }
}

fn evaluate_xcto(nosniff: Option<bool>) -> TestResult {
    match nosniff {
        Some(true) => TestResult::new(Outcome::XContentTypeOptionsNosniff, "nosniff"),
        Some(false) => TestResult::new(Outcome::XContentTypeOptionsHeaderInvalid, "value is not nosniff"),
        None => TestResult::new(Outcome::XContentTypeOptionsNotImplemented, "header absent"),
    }
}

fn evaluate_xfo(f: Option<&FrameOptions>, csp_restricts_framing: bool) -> TestResult {
    if csp_restricts_framing {
        return TestResult::new(Outcome::XFrameOptionsImplementedViaCsp, "CSP frame-ancestors");
    }
    match f {
        None => TestResult::new(Outcome::XFrameOptionsNotImplemented, "header absent"),
        Some(FrameOptions::Invalid) => TestResult::new(Outcome::XFrameOptionsHeaderInvalid, "unrecognized value"),
        Some(FrameOptions::Deny) => TestResult::new(Outcome::XFrameOptionsImplemented, "DENY"),
        Some(FrameOptions::SameOrigin) => TestResult::new(Outcome::XFrameOptionsImplemented, "SAMEORIGIN"),
        Some(FrameOptions::AllowFrom(uri)) => {
            TestResult::new(Outcome::XFrameOptionsImplemented, format!("ALLOW-FROM {uri}"))
        }
    }
}

fn evaluate_xxss(x: Option<XssProtection>, strong_csp: bool) -> TestResult {
    match x {
        Some(XssProtection::Block) => TestResult::new(Outcome::XXssProtectionEnabledModeBlock, "1; mode=block"),
        Some(XssProtection::Enabled) => TestResult::new(Outcome::XXssProtectionEnabled, "1"),
        Some(XssProtection::Disabled) => TestResult::new(Outcome::XXssProtectionDisabled, "0"),
        Some(XssProtection::Invalid) => TestResult::new(Outcome::XXssProtectionHeaderInvalid, "unrecognized value"),
        None if strong_csp => TestResult::new(Outcome::XXssProtectionNotNeededDueToCsp, "header absent, CSP is strong"),
        None => TestResult::new(Outcome::XXssProtectionNotImplemented, "header absent"),
    }
}

fn evaluate_contribute(c: ContributeEvidence, strict: bool) -> TestResult {
    match c {
        ContributeEvidence::Valid => TestResult::new(Outcome::ContributeJsonValid, "valid contribute.json"),
        ContributeEvidence::Invalid => TestResult::new(Outcome::ContributeJsonInvalid, "contribute.json is malformed"),
        ContributeEvidence::Absent if strict => {
            TestResult::new(Outcome::ContributeJsonMissingStrict, "no contribute.json")
        }
        ContributeEvidence::Absent => TestResult::new(Outcome::ContributeJsonNotImplemented, "no contribute.json"),
    }
}
