//! The fixture corpus with hand-computed outcomes, scores and grades.

#![allow(dead_code)]

use headerscore::scoring::Outcome::{self, *};
use headerscore::{Grade, Scanner, ScoringConfig};
use headerscore_fixtures::FixtureServer;

use super::{config_for, fixture};

/// Outcomes of the reference page, which earns every bonus.
pub const REFERENCE: [Outcome; 12] = [
    CspImplementedWithNoUnsafeDefaultSrcNone,
    CookiesSecureWithHttponlySessionsAndSamesite,
    CorsNotImplemented,
    HpkpNotImplemented,
    RedirectionToHttps,
    ReferrerPolicyPrivate,
    HstsPreloaded,
    SriImplementedAndExternalScriptsLoadedSecurely,
    XContentTypeOptionsNosniff,
    XFrameOptionsImplementedViaCsp,
    XXssProtectionEnabledModeBlock,
    ContributeJsonNotImplemented,
];

pub struct Case {
    pub site: &'static str,
    /// Outcomes that differ from [`REFERENCE`].
    pub changes: &'static [Outcome],
    /// Worked by hand: 100 + penalties, then bonuses only when that is at least 90.
    pub score: i32,
    pub grade: Grade,
}

pub const CASES: &[Case] = &[
    // 100 + 35
    Case { site: "good", changes: &[], score: 135, grade: Grade::APlus },
    // 100 -25 -20 -20 -5 -20 -10 = 0
    Case {
        site: "no-headers",
        changes: &[
            CspNotImplemented,
            CookiesNotFound,
            RedirectionMissing,
            ReferrerPolicyNotImplemented,
            HstsNotImplementedNoHttps,
            SriNotNeededNoExternalScripts,
            XContentTypeOptionsNotImplemented,
            XFrameOptionsNotImplemented,
            XXssProtectionNotImplemented,
        ],
        score: 0,
        grade: Grade::F,
    },
    // 95 + 35
    Case { site: "redirect-offhost", changes: &[RedirectionOffHostFromHttp], score: 130, grade: Grade::APlus },
    Case { site: "https-only", changes: &[RedirectionNotNeededNoHttp], score: 135, grade: Grade::APlus },
    // 80, gate shut
    Case { site: "no-redirect", changes: &[RedirectionMissing], score: 80, grade: Grade::BPlus },
    Case { site: "redirect-loop", changes: &[RedirectionInvalid], score: 80, grade: Grade::BPlus },
    // 90 + 30
    Case { site: "hsts-short", changes: &[HstsImplementedMaxAgeLessThanSixMonths], score: 120, grade: Grade::APlus },
    Case { site: "hsts-invalid", changes: &[HstsHeaderInvalid], score: 80, grade: Grade::BPlus },
    // 100 + 30
    Case { site: "hsts-six-months", changes: &[HstsImplementedMaxAgeAtLeastSixMonths], score: 130, grade: Grade::APlus },
    Case { site: "csp-unsafe-inline", changes: &[CspImplementedWithUnsafeInline], score: 80, grade: Grade::BPlus },
    // 90 + 25
    Case { site: "csp-unsafe-eval", changes: &[CspImplementedWithUnsafeEval], score: 115, grade: Grade::APlus },
    // 100 + 5 + 25
    Case { site: "csp-self", changes: &[CspImplementedWithNoUnsafe], score: 130, grade: Grade::APlus },
    // 75, gate shut
    Case {
        site: "csp-absent",
        changes: &[CspNotImplemented, XFrameOptionsImplemented],
        score: 75,
        grade: Grade::B,
    },
    Case { site: "cookie-bare-session", changes: &[CookiesSessionWithoutSecureFlag], score: 60, grade: Grade::CPlus },
    Case {
        site: "cookie-session-no-httponly",
        changes: &[CookiesSessionWithoutHttponlyFlag],
        score: 70,
        grade: Grade::B,
    },
    Case { site: "cookie-persistent-insecure", changes: &[CookiesWithoutSecureFlag], score: 80, grade: Grade::BPlus },
    Case { site: "cookie-no-samesite", changes: &[CookiesSecureWithHttponlySessions], score: 130, grade: Grade::APlus },
    Case { site: "cookie-none", changes: &[CookiesNotFound], score: 130, grade: Grade::APlus },
    Case { site: "cors-star", changes: &[CorsImplementedWithPublicAccess], score: 135, grade: Grade::APlus },
    Case {
        site: "cors-reflect-credentials",
        changes: &[CorsReflectsArbitraryOriginWithCredentials],
        score: 50,
        grade: Grade::C,
    },
    Case { site: "cors-reflect", changes: &[CorsReflectsArbitraryOrigin], score: 75, grade: Grade::B },
    Case {
        site: "sri-http-script",
        changes: &[SriNotImplementedAndExternalScriptsNotLoadedSecurely],
        score: 50,
        grade: Grade::C,
    },
    // 95 + 30
    Case {
        site: "sri-https-no-integrity",
        changes: &[SriNotImplementedButExternalScriptsLoadedSecurely],
        score: 125,
        grade: Grade::APlus,
    },
    Case { site: "sri-internal-only", changes: &[SriNotNeededNoExternalScripts], score: 130, grade: Grade::APlus },
    Case { site: "hpkp-invalid", changes: &[HpkpHeaderInvalid], score: 130, grade: Grade::APlus },
    Case { site: "hpkp-valid", changes: &[HpkpImplemented], score: 135, grade: Grade::APlus },
    Case { site: "referrer-unsafe-url", changes: &[ReferrerPolicyUnsafe], score: 125, grade: Grade::APlus },
    Case { site: "referrer-origin", changes: &[ReferrerPolicyNeutral], score: 130, grade: Grade::APlus },
    Case { site: "xcto-missing", changes: &[XContentTypeOptionsNotImplemented], score: 130, grade: Grade::APlus },
    Case { site: "xfo-header-only", changes: &[XFrameOptionsImplemented], score: 130, grade: Grade::APlus },
    Case { site: "xfo-invalid", changes: &[XFrameOptionsHeaderInvalid], score: 80, grade: Grade::BPlus },
    Case { site: "xxss-disabled", changes: &[XXssProtectionDisabled], score: 125, grade: Grade::APlus },
    Case { site: "xxss-absent-strong-csp", changes: &[XXssProtectionNotNeededDueToCsp], score: 135, grade: Grade::APlus },
    // 100 -10 -10 = 80, gate shut
    Case {
        site: "xxss-absent-weak-csp",
        changes: &[CspImplementedWithUnsafeEval, XXssProtectionNotImplemented],
        score: 80,
        grade: Grade::BPlus,
    },
    Case { site: "contribute-valid", changes: &[ContributeJsonValid], score: 135, grade: Grade::APlus },
    Case { site: "contribute-invalid", changes: &[ContributeJsonInvalid], score: 125, grade: Grade::APlus },
];

pub fn expected_outcomes(case: &Case) -> Vec<Outcome> {
    REFERENCE
        .iter()
        .map(|r| {
            case.changes
                .iter()
                .copied()
                .find(|c| c.category() == r.category())
                .unwrap_or(*r)
        })
        .collect()
}

/// Scans every case; returns one line per case that differs from the table.
pub async fn corpus_mismatches(server: &FixtureServer) -> Vec<String> {
    let scanner = Scanner::new(config_for(server), ScoringConfig::default()).unwrap();
    let mut mismatches = Vec::new();
    for case in CASES {
        let report = scanner.scan(&fixture(case.site)).await;
        let got: Vec<Outcome> = report.results.iter().map(|r| r.outcome).collect();
        let want = expected_outcomes(case);
        if report.unreachable {
            mismatches.push(format!("{}: unreachable", case.site));
        } else if got != want || report.final_score != case.score || report.grade != case.grade {
            let diff: Vec<_> = got
                .iter()
                .zip(&want)
                .filter(|(g, w)| g != w)
                .map(|(g, w)| format!("{} got {g} want {w}", g.category()))
                .collect();
            mismatches.push(format!(
                "{}: score {} ({}) want {} ({}); {diff:?}",
                case.site, report.final_score, report.grade, case.score, case.grade
            ));
        }
    }
    mismatches
}
