use std::fmt;

use serde::{Deserialize, Serialize};

use super::Category;

/// Every rubric outcome. Each belongs to exactly one category and carries a
/// fixed score modifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    CspImplementedWithNoUnsafeDefaultSrcNone,
    CspImplementedWithNoUnsafe,
    CspImplementedWithUnsafeEval,
    CspImplementedWithUnsafeInline,
    CspImplementedWithWildcardSource,
    CspHeaderInvalid,
    CspNotImplemented,

    CookiesSecureWithHttponlySessionsAndSamesite,
    CookiesSecureWithHttponlySessions,
    CookiesNotFound,
    CookiesWithoutSecureFlag,
    CookiesSessionWithoutHttponlyFlag,
    CookiesSessionWithoutSecureFlag,

    CorsNotImplemented,
    CorsImplementedWithPublicAccess,
    CorsImplementedWithRestrictedAccess,
    CorsReflectsArbitraryOrigin,
    CorsReflectsArbitraryOriginWithCredentials,

    HpkpNotImplemented,
    HpkpImplemented,
    HpkpHeaderInvalid,

    RedirectionToHttps,
    RedirectionNotNeededNoHttp,
    RedirectionOffHostFromHttp,
    RedirectionNotToHttps,
    RedirectionMissing,
    RedirectionInvalid,
    #[serde(rename = "unscorable")]
    RedirectionUnscorable,

    ReferrerPolicyPrivate,
    ReferrerPolicyNeutral,
    ReferrerPolicyNotImplemented,
    ReferrerPolicyUnsafe,
    ReferrerPolicyHeaderInvalid,

    HstsPreloaded,
    HstsImplementedMaxAgeAtLeastSixMonths,
    HstsImplementedMaxAgeLessThanSixMonths,
    HstsHeaderInvalid,
    HstsNotImplemented,
    HstsNotImplementedNoHttps,

    SriImplementedAndExternalScriptsLoadedSecurely,
    SriNotNeededNoExternalScripts,
    SriNotImplementedButExternalScriptsLoadedSecurely,
    SriImplementedButExternalScriptsNotLoadedSecurely,
    SriNotImplementedAndExternalScriptsNotLoadedSecurely,

    XContentTypeOptionsNosniff,
    XContentTypeOptionsHeaderInvalid,
    XContentTypeOptionsNotImplemented,

    XFrameOptionsImplementedViaCsp,
    XFrameOptionsImplemented,
    XFrameOptionsHeaderInvalid,
    XFrameOptionsNotImplemented,

    XXssProtectionEnabledModeBlock,
    XXssProtectionEnabled,
    XXssProtectionNotNeededDueToCsp,
    XXssProtectionDisabled,
    XXssProtectionHeaderInvalid,
    XXssProtectionNotImplemented,

    ContributeJsonValid,
    ContributeJsonNotImplemented,
    ContributeJsonInvalid,
    ContributeJsonMissingStrict,
}

impl Outcome {
    pub const ALL: [Outcome; 60] = {
        use Outcome::*;
        [
            CspImplementedWithNoUnsafeDefaultSrcNone,
            CspImplementedWithNoUnsafe,
            CspImplementedWithUnsafeEval,
            CspImplementedWithUnsafeInline,
            CspImplementedWithWildcardSource,
            CspHeaderInvalid,
            CspNotImplemented,
            CookiesSecureWithHttponlySessionsAndSamesite,
            CookiesSecureWithHttponlySessions,
            CookiesNotFound,
            CookiesWithoutSecureFlag,
            CookiesSessionWithoutHttponlyFlag,
            CookiesSessionWithoutSecureFlag,
            CorsNotImplemented,
            CorsImplementedWithPublicAccess,
            CorsImplementedWithRestrictedAccess,
            CorsReflectsArbitraryOrigin,
            CorsReflectsArbitraryOriginWithCredentials,
            HpkpNotImplemented,
            HpkpImplemented,
            HpkpHeaderInvalid,
            RedirectionToHttps,
            RedirectionNotNeededNoHttp,
            RedirectionOffHostFromHttp,
            RedirectionNotToHttps,
            RedirectionMissing,
            RedirectionInvalid,
            RedirectionUnscorable,
            ReferrerPolicyPrivate,
            ReferrerPolicyNeutral,
            ReferrerPolicyNotImplemented,
            ReferrerPolicyUnsafe,
            ReferrerPolicyHeaderInvalid,
            HstsPreloaded,
            HstsImplementedMaxAgeAtLeastSixMonths,
            HstsImplementedMaxAgeLessThanSixMonths,
            HstsHeaderInvalid,
            HstsNotImplemented,
            HstsNotImplementedNoHttps,
            SriImplementedAndExternalScriptsLoadedSecurely,
            SriNotNeededNoExternalScripts,
            SriNotImplementedButExternalScriptsLoadedSecurely,
            SriImplementedButExternalScriptsNotLoadedSecurely,
            SriNotImplementedAndExternalScriptsNotLoadedSecurely,
            XContentTypeOptionsNosniff,
            XContentTypeOptionsHeaderInvalid,
            XContentTypeOptionsNotImplemented,
            XFrameOptionsImplementedViaCsp,
            XFrameOptionsImplemented,
            XFrameOptionsHeaderInvalid,
            XFrameOptionsNotImplemented,
            XXssProtectionEnabledModeBlock,
            XXssProtectionEnabled,
            XXssProtectionNotNeededDueToCsp,
            XXssProtectionDisabled,
            XXssProtectionHeaderInvalid,
            XXssProtectionNotImplemented,
            ContributeJsonValid,
            ContributeJsonNotImplemented,
            ContributeJsonInvalid,
        ]
    };

    pub const fn category(self) -> Category {
        use Outcome::*;
        match self {
            CspImplementedWithNoUnsafeDefaultSrcNone
            | CspImplementedWithNoUnsafe
            | CspImplementedWithUnsafeEval
            | CspImplementedWithUnsafeInline
            | CspImplementedWithWildcardSource
            | CspHeaderInvalid
            | CspNotImplemented => Category::ContentSecurityPolicy,
            CookiesSecureWithHttponlySessionsAndSamesite
            | CookiesSecureWithHttponlySessions
            | CookiesNotFound
            | CookiesWithoutSecureFlag
            | CookiesSessionWithoutHttponlyFlag
            | CookiesSessionWithoutSecureFlag => Category::Cookies,
            CorsNotImplemented
            | CorsImplementedWithPublicAccess
            | CorsImplementedWithRestrictedAccess
            | CorsReflectsArbitraryOrigin
            | CorsReflectsArbitraryOriginWithCredentials => Category::CrossOriginResourceSharing,
            HpkpNotImplemented | HpkpImplemented | HpkpHeaderInvalid => Category::PublicKeyPinning,
            RedirectionToHttps
            | RedirectionNotNeededNoHttp
            | RedirectionOffHostFromHttp
            | RedirectionNotToHttps
            | RedirectionMissing
            | RedirectionInvalid
            | RedirectionUnscorable => Category::Redirection,
            ReferrerPolicyPrivate
            | ReferrerPolicyNeutral
            | ReferrerPolicyNotImplemented
            | ReferrerPolicyUnsafe
            | ReferrerPolicyHeaderInvalid => Category::ReferrerPolicy,
            HstsPreloaded
            | HstsImplementedMaxAgeAtLeastSixMonths
            | HstsImplementedMaxAgeLessThanSixMonths
            | HstsHeaderInvalid
            | HstsNotImplemented
            | HstsNotImplementedNoHttps => Category::StrictTransportSecurity,
            SriImplementedAndExternalScriptsLoadedSecurely
            | SriNotNeededNoExternalScripts
            | SriNotImplementedButExternalScriptsLoadedSecurely
            | SriImplementedButExternalScriptsNotLoadedSecurely
            | SriNotImplementedAndExternalScriptsNotLoadedSecurely => Category::SubresourceIntegrity,
            XContentTypeOptionsNosniff
            | XContentTypeOptionsHeaderInvalid
            | XContentTypeOptionsNotImplemented => Category::XContentTypeOptions,
            XFrameOptionsImplementedViaCsp
            | XFrameOptionsImplemented
            | XFrameOptionsHeaderInvalid
            | XFrameOptionsNotImplemented => Category::XFrameOptions,
            XXssProtectionEnabledModeBlock
            | XXssProtectionEnabled
            | XXssProtectionNotNeededDueToCsp
            | XXssProtectionDisabled
            | XXssProtectionHeaderInvalid
            | XXssProtectionNotImplemented => Category::XXssProtection,
            ContributeJsonValid
            | ContributeJsonNotImplemented
            | ContributeJsonInvalid
            | ContributeJsonMissingStrict => Category::Contribute,
        }
    }

    pub const fn modifier(self) -> i32 {
        use Outcome::*;
        match self {
            CspImplementedWithNoUnsafeDefaultSrcNone => 10,
            CspImplementedWithNoUnsafe => 5,
            CspImplementedWithUnsafeEval => -10,
            CspImplementedWithUnsafeInline | CspImplementedWithWildcardSource => -20,
            CspHeaderInvalid | CspNotImplemented => -25,

            CookiesSecureWithHttponlySessionsAndSamesite => 5,
            CookiesSecureWithHttponlySessions | CookiesNotFound => 0,
            CookiesWithoutSecureFlag => -20,
            CookiesSessionWithoutHttponlyFlag => -30,
            CookiesSessionWithoutSecureFlag => -40,

            CorsNotImplemented | CorsImplementedWithPublicAccess | CorsImplementedWithRestrictedAccess => 0,
            CorsReflectsArbitraryOrigin => -25,
            CorsReflectsArbitraryOriginWithCredentials => -50,

            HpkpNotImplemented | HpkpImplemented => 0,
            HpkpHeaderInvalid => -5,

            RedirectionToHttps | RedirectionNotNeededNoHttp => 0,
            RedirectionOffHostFromHttp => -5,
            RedirectionNotToHttps | RedirectionMissing | RedirectionInvalid | RedirectionUnscorable => -20,

            ReferrerPolicyPrivate => 5,
            ReferrerPolicyNeutral | ReferrerPolicyNotImplemented => 0,
            ReferrerPolicyUnsafe | ReferrerPolicyHeaderInvalid => -5,

            HstsPreloaded => 5,
            HstsImplementedMaxAgeAtLeastSixMonths => 0,
            HstsImplementedMaxAgeLessThanSixMonths => -10,
            HstsHeaderInvalid | HstsNotImplemented | HstsNotImplementedNoHttps => -20,

            SriImplementedAndExternalScriptsLoadedSecurely => 5,
            SriNotNeededNoExternalScripts => 0,
            SriNotImplementedButExternalScriptsLoadedSecurely => -5,
            SriImplementedButExternalScriptsNotLoadedSecurely => -20,
            SriNotImplementedAndExternalScriptsNotLoadedSecurely => -50,

            XContentTypeOptionsNosniff => 0,
            XContentTypeOptionsHeaderInvalid | XContentTypeOptionsNotImplemented => -5,

            XFrameOptionsImplementedViaCsp => 5,
            XFrameOptionsImplemented => 0,
            XFrameOptionsHeaderInvalid | XFrameOptionsNotImplemented => -20,

            XXssProtectionEnabledModeBlock | XXssProtectionEnabled | XXssProtectionNotNeededDueToCsp => 0,
            XXssProtectionDisabled | XXssProtectionHeaderInvalid | XXssProtectionNotImplemented => -10,

            ContributeJsonValid | ContributeJsonNotImplemented => 0,
            ContributeJsonInvalid | ContributeJsonMissingStrict => -10,
        }
    }

    /// The kebab-case code used in report files.
    pub fn code(self) -> String {
        match serde_json::to_value(self) {
            Ok(serde_json::Value::String(s)) => s,
            _ => unreachable!("outcomes serialize as strings"),
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code())
    }
}
