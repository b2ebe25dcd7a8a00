//! Header value parsers. All of them are total: any input yields a value.

mod cookie;
mod cors;
mod csp;
mod hpkp;
mod hsts;
mod simple;

pub use cookie::{parse_set_cookie, CookieRecord, SameSite};
pub use cors::{CorsEvidence, PROBE_ORIGIN};
pub use csp::{parse_csp, CspPolicy};
pub use hpkp::{parse_hpkp, HpkpEvidence};
pub use hsts::{parse_hsts, HstsDirective};
pub use simple::{
    parse_simple, FrameOptions, ReferrerClass, ReferrerPolicy, SimpleHeaderEvidence, XssProtection,
};
