use std::fmt;

use serde::{Deserialize, Serialize};

/// The twelve checks every scan reports on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Category {
    ContentSecurityPolicy,
    Cookies,
    CrossOriginResourceSharing,
    PublicKeyPinning,
    Redirection,
    ReferrerPolicy,
    StrictTransportSecurity,
    SubresourceIntegrity,
    XContentTypeOptions,
    XFrameOptions,
    XXssProtection,
    Contribute,
}

impl Category {
    pub const ALL: [Category; 12] = [
        Category::ContentSecurityPolicy,
        Category::Cookies,
        Category::CrossOriginResourceSharing,
        Category::PublicKeyPinning,
        Category::Redirection,
        Category::ReferrerPolicy,
        Category::StrictTransportSecurity,
        Category::SubresourceIntegrity,
        Category::XContentTypeOptions,
        Category::XFrameOptions,
        Category::XXssProtection,
        Category::Contribute,
    ];

    /// Lowest and highest modifier the category can contribute.
    pub const fn bounds(self) -> (i32, i32) {
        match self {
            Category::ContentSecurityPolicy => (-25, 10),
            Category::Cookies => (-40, 5),
            Category::CrossOriginResourceSharing => (-50, 0),
            Category::PublicKeyPinning => (-5, 0),
            Category::Redirection => (-20, 0),
            Category::ReferrerPolicy => (-5, 5),
            Category::StrictTransportSecurity => (-20, 5),
            Category::SubresourceIntegrity => (-50, 5),
            Category::XContentTypeOptions => (-5, 0),
            Category::XFrameOptions => (-20, 5),
            Category::XXssProtection => (-10, 0),
            Category::Contribute => (-10, 0),
        }
    }

    /// Stable machine name, as used in report files.
    pub const fn code(self) -> &'static str {
        match self {
            Category::ContentSecurityPolicy => "content-security-policy",
            Category::Cookies => "cookies",
            Category::CrossOriginResourceSharing => "cross-origin-resource-sharing",
            Category::PublicKeyPinning => "public-key-pinning",
            Category::Redirection => "redirection",
            Category::ReferrerPolicy => "referrer-policy",
            Category::StrictTransportSecurity => "strict-transport-security",
            Category::SubresourceIntegrity => "subresource-integrity",
            Category::XContentTypeOptions => "x-content-type-options",
            Category::XFrameOptions => "x-frame-options",
            Category::XXssProtection => "x-xss-protection",
            Category::Contribute => "contribute",
        }
    }

    pub const fn title(self) -> &'static str {
        match self {
            Category::ContentSecurityPolicy => "Content Security Policy",
            Category::Cookies => "Cookies",
            Category::CrossOriginResourceSharing => "Cross-origin Resource Sharing",
            Category::PublicKeyPinning => "HTTP Public Key Pinning",
            Category::Redirection => "Redirection",
            Category::ReferrerPolicy => "Referrer Policy",
            Category::StrictTransportSecurity => "HTTP Strict Transport Security",
            Category::SubresourceIntegrity => "Subresource Integrity",
            Category::XContentTypeOptions => "X-Content-Type-Options",
            Category::XFrameOptions => "X-Frame-Options",
            Category::XXssProtection => "X-XSS-Protection",
            Category::Contribute => "Contribute.json",
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.code() == code)
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}
